#include "kproj/hom.hpp"

namespace kproj {

HomSource source_of(const Complex& x) {
  HomSource s{x.ring(), x.side(), std::nullopt, std::nullopt, {}, {}};
  Span sp = x.span();
  if (sp.empty()) {
    s.lower = 0;
    s.upper = -1;
  } else {
    if (!sp.lower_period) s.lower = sp.lo;
    if (!sp.upper_period) s.upper = sp.hi;
  }
  s.term = [x](int i) { return FPModule::free(x.ring(), x.rank(i), x.side()); };
  s.diff = [x](int i) { return x.diff(i); };
  return s;
}

HomSource source_of(const FPModule& m, int degree) {
  HomSource s{m.ring(), m.side(), degree, degree, {}, {}};
  s.term = [m, degree](int i) { return i == degree ? m : FPModule::zero(m.ring(), m.side()); };
  s.diff = [m, degree](int i) {
    return Matrix(m.ring(), i + 1 == degree ? m.rank0() : 0, i == degree ? m.rank0() : 0);
  };
  return s;
}

HomSource module_cone(const FPModule& m, const Complex& y, const Matrix& c) {
  if (c.rows() != y.rank(0) || c.cols() != m.rank0()) throw DimensionError("module_cone: comparison has wrong shape");
  HomSource s{m.ring(), y.side(), -1, -1, {}, {}};
  Span sp = y.span();
  if (!sp.empty()) {
    s.lower = sp.lower_period ? std::nullopt : std::optional<int>(std::min(-1, sp.lo));
    s.upper = sp.upper_period ? std::nullopt : std::optional<int>(std::max(-1, sp.hi));
  }
  const Ring ring = m.ring();
  s.term = [m, y, ring](int i) {
    if (i != -1) return FPModule::free(ring, y.rank(i), y.side());
    return FPModule(vconcat(m.presentation(), Matrix(ring, y.rank(-1), m.rank1())), y.side());
  };
  s.diff = [m, y, c, ring](int i) {
    if (i == -2) return vconcat(Matrix(ring, m.rank0(), y.rank(-2)), y.diff(-2));
    if (i == -1) return hconcat(c, y.diff(-1));
    return y.diff(i);
  };
  return s;
}

HomComplex::HomComplex(const HomSource& x, const Complex& q, const Window& w) : ring_(x.ring), window_(w) {
  require_same_ring(x.ring, q.ring(), "hom");
  const Span qs = q.span();
  auto range = [&](int n) -> std::pair<int, int> {
    if (qs.empty()) return {0, -1};
    std::optional<int> lo = x.lower, hi = x.upper;
    if (!qs.lower_period) lo = lo ? std::max(*lo, qs.lo - n) : qs.lo - n;
    if (!qs.upper_period) hi = hi ? std::min(*hi, qs.hi - n) : qs.hi - n;
    if (!lo || !hi) throw WindowError("hom: infinitely many terms contribute to degree " + std::to_string(n));
    return {*lo, *hi};
  };

  std::map<int, FPModule> terms;
  auto term = [&](int i) -> const FPModule& {
    auto it = terms.find(i);
    if (it == terms.end()) it = terms.emplace(i, x.term(i)).first;
    return it->second;
  };

  for (int n = w.lo - 1; n <= w.hi + 1; ++n) {
    auto [lo, hi] = range(n);
    std::vector<HomBlock> blocks;
    std::vector<Matrix> gens;
    std::size_t offset = 0;
    for (int i = lo; i <= hi; ++i) {
      const FPModule& xi = term(i);
      const std::size_t rows = q.rank(i + n), cols = xi.rank0();
      if (rows * cols == 0) continue;
      blocks.push_back({i, offset, rows, cols});
      offset += rows * cols;
      // f: X^i -> Q^{i+n} must kill the relations: f R = 0.
      if (xi.rank1() == 0)
        gens.push_back(Matrix::identity(ring_, rows * cols));
      else
        gens.push_back(kernel(kron(Matrix::identity(ring_, rows), xi.presentation().transpose())));
    }
    std::size_t total_cols = 0;
    for (const auto& g : gens) total_cols += g.cols();
    Matrix g(ring_, offset, total_cols);
    std::size_t col = 0;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      g.set_block(blocks[k].offset, col, gens[k]);
      col += gens[k].cols();
    }
    layout_[n] = std::move(blocks);
    ambient_[n] = offset;
    generators_.emplace(n, std::move(g));
  }

  auto find = [&](int n, int i) -> const HomBlock* {
    for (const auto& b : layout_[n])
      if (b.i == i) return &b;
    return nullptr;
  };
  for (int n = w.lo - 1; n <= w.hi; ++n) {
    Matrix d(ring_, ambient_[n + 1], ambient_[n]);
    const Integer sign = (n % 2 == 0) ? -1 : 1;  // -(-1)^n
    for (const auto& out : layout_[n + 1]) {
      const int i = out.i;
      if (const HomBlock* same = find(n, i))
        d.set_block(out.offset, same->offset, kron(q.diff(i + n), Matrix::identity(ring_, out.cols)));
      if (const HomBlock* next = find(n, i + 1)) {
        Matrix dx = x.diff(i);
        Matrix blk = kron(Matrix::identity(ring_, out.rows), dx.transpose()).scaled(sign);
        d.set_block(out.offset, next->offset, d.block(out.offset, next->offset, blk.rows(), blk.cols()) + blk);
      }
    }
    diffs_.emplace(n, std::move(d));
  }
}

void HomComplex::require(int n) const {
  if (!ambient_.count(n)) throw WindowError("hom: degree " + std::to_string(n) + " outside the computed window");
}

std::size_t HomComplex::ambient_rank(int n) const {
  require(n);
  return ambient_.at(n);
}

Matrix HomComplex::generators(int n) const {
  require(n);
  return generators_.at(n);
}

Matrix HomComplex::diff(int n) const {
  require(n);
  auto it = diffs_.find(n);
  if (it == diffs_.end()) throw WindowError("hom: differential out of degree " + std::to_string(n) + " not computed");
  return it->second;
}

const std::vector<HomBlock>& HomComplex::layout(int n) const {
  require(n);
  return layout_.at(n);
}

Subquotient HomComplex::homology(int n) const {
  Matrix g = generators(n);
  Matrix z = g * kernel(diff(n) * g);
  Matrix b = diff(n - 1) * generators(n - 1);
  return subquotient(z, b, Side::Left);
}

bool HomComplex::exact_at(int n) const {
  Matrix g = generators(n);
  Matrix z = g * kernel(diff(n) * g);
  return in_column_span(diff(n - 1) * generators(n - 1), z);
}

std::optional<int> HomComplex::first_non_exact() const {
  for (int n = window_.lo; n <= window_.hi; ++n)
    if (!exact_at(n)) return n;
  return std::nullopt;
}

Matrix HomComplex::element(int n, const std::function<Matrix(int)>& component) const {
  Matrix v(ring_, ambient_rank(n), 1);
  for (const auto& b : layout(n)) {
    Matrix f = component(b.i);
    if (f.rows() != b.rows || f.cols() != b.cols) throw DimensionError("hom: component has the wrong shape");
    v.set_block(b.offset, 0, f.vec());
  }
  return v;
}

std::map<int, Matrix> HomComplex::components(int n, const Matrix& v) const {
  std::map<int, Matrix> out;
  for (const auto& b : layout(n)) out.emplace(b.i, Matrix::unvec(v.block(b.offset, 0, b.rows * b.cols, 1), b.rows, b.cols));
  return out;
}

Complex hom_complex(const Complex& x, const Complex& q, const Window& w) {
  HomComplex h(source_of(x), q, w);
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int n = w.lo - 1; n <= w.hi + 1; ++n) ranks.push_back(h.ambient_rank(n));
  for (int n = w.lo - 1; n <= w.hi; ++n) diffs.push_back(h.diff(n));
  return Complex(x.ring(), Side::Left, w.lo - 1, std::move(ranks), std::move(diffs));
}

namespace {
const HomBlock* find_block(const HomComplex& h, int n, int i) {
  for (const auto& b : h.layout(n))
    if (b.i == i) return &b;
  return nullptr;
}
}  // namespace

Matrix precompose(const HomComplex& from, const HomComplex& to, int n, const std::function<Matrix(int)>& phi) {
  Matrix a(from.ring(), to.ambient_rank(n), from.ambient_rank(n));
  for (const auto& bt : to.layout(n))
    if (const HomBlock* bf = find_block(from, n, bt.i))
      a.set_block(bt.offset, bf->offset, kron(Matrix::identity(from.ring(), bt.rows), phi(bt.i).transpose()));
  return a;
}

Matrix postcompose(const HomComplex& from, const HomComplex& to, int n, const std::function<Matrix(int)>& g) {
  Matrix a(from.ring(), to.ambient_rank(n), from.ambient_rank(n));
  for (const auto& bt : to.layout(n))
    if (const HomBlock* bf = find_block(from, n, bt.i))
      a.set_block(bt.offset, bf->offset, kron(g(bt.i + n), Matrix::identity(from.ring(), bt.cols)));
  return a;
}

InducedMap induced_on_homology(const HomComplex& from, const HomComplex& to, int n, const Matrix& ambient) {
  Subquotient hs = from.homology(n);
  Subquotient ht = to.homology(n);
  auto x = solve(ht.generators, ambient * hs.generators);
  if (!x) throw std::logic_error("induced_on_homology: map does not carry cycles to cycles");
  ModuleMap m{hs.module, ht.module, *x};
  return {std::move(hs), std::move(ht), std::move(m)};
}

}  // namespace kproj

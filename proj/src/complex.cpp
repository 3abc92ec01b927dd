#include "kproj/complex.hpp"

#include <numeric>
#include <sstream>

namespace kproj {

namespace {

int lcm_or(int a, int b) {
  if (!a) return b;
  if (!b) return a;
  return std::lcm(a, b);
}

// new(j) = old(j + offset)
Span shifted(const Span& s, int offset) {
  if (s.empty()) return s;
  return {s.lo - offset, s.hi - offset, s.lower_period, s.upper_period};
}

Span mirrored(const Span& s) {
  if (s.empty()) return s;
  return {-s.hi, -s.lo, s.upper_period, s.lower_period};
}

Matrix zero_matrix(const Ring& r, std::size_t rows, std::size_t cols) { return Matrix(r, rows, cols); }

std::string degree_note(int j) { return " at degree " + std::to_string(j); }

}  // namespace

Span combine_spans(const std::vector<Span>& spans) {
  Span out;
  bool any = false;
  for (const auto& s : spans) {
    if (s.empty()) continue;
    if (!any) {
      out.lo = s.lo;
      out.hi = s.hi;
      any = true;
    } else {
      out.lo = std::min(out.lo, s.lo);
      out.hi = std::max(out.hi, s.hi);
    }
    out.lower_period = lcm_or(out.lower_period, s.lower_period);
    out.upper_period = lcm_or(out.upper_period, s.upper_period);
  }
  if (!any) return {};
  // Pad so that every tail degree of the result sits strictly inside the
  // tails of all inputs (one extra degree covers diff lookups at j + 1).
  if (out.lower_period) out.lo -= out.lower_period + 1;
  if (out.upper_period) out.hi += out.upper_period + 1;
  if (out.lower_period) out.hi = std::max(out.hi, out.lo + out.lower_period + 1);
  if (out.upper_period) out.lo = std::min(out.lo, out.hi - out.upper_period - 1);
  return out;
}

// ---------------------------------------------------------------------------
// Complex

Complex::Complex(Ring ring, Side side, int lo, std::vector<std::size_t> ranks, std::vector<Matrix> diffs,
                 int lower_period, int upper_period)
    : ring_(ring), side_(side) {
  if (!ranks.empty() && diffs.size() + 1 != ranks.size())
    throw ComplexError("complex: need exactly one differential between consecutive terms");
  if (ranks.empty() && (lower_period || upper_period)) throw ComplexError("complex: tail on empty region");
  if (lower_period < 0 || upper_period < 0) throw ComplexError("complex: negative period");
  const int hi = lo + static_cast<int>(ranks.size()) - 1;
  if (lower_period && hi < lo + lower_period)
    throw ComplexError("complex: explicit region shorter than the lower period");
  if (upper_period && hi - upper_period < lo)
    throw ComplexError("complex: explicit region shorter than the upper period");
  for (const auto& d : diffs) require_same_ring(ring, d.ring(), "complex");
  ranks_ = Graded<std::size_t>(lo, std::move(ranks), lower_period, upper_period);
  diffs_ = Graded<Matrix>(lo, std::move(diffs), lower_period, upper_period);
  validate(certifying_window());
}

Complex Complex::from_function(Ring ring, Side side, const Span& span, const RankFn& rank, const DiffFn& diff) {
  if (span.empty()) return Complex(ring, side);
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int j = span.lo; j <= span.hi; ++j) ranks.push_back(rank(j));
  for (int j = span.lo; j < span.hi; ++j) diffs.push_back(diff(j));
  return Complex(ring, side, span.lo, std::move(ranks), std::move(diffs), span.lower_period, span.upper_period);
}

Complex Complex::single(Ring ring, Side side, std::size_t rank, int degree) {
  return Complex(ring, side, degree, {rank}, {});
}

Complex Complex::two_term(const Matrix& d, int degree, Side side) {
  return Complex(d.ring(), side, degree, {d.cols(), d.rows()}, {d});
}

Span Complex::span() const {
  if (ranks_.empty()) return {};
  return {ranks_.lo(), ranks_.hi(), ranks_.lower_period(), ranks_.upper_period()};
}

std::size_t Complex::rank(int j) const {
  const std::size_t* r = ranks_.at(j);
  return r ? *r : 0;
}

Matrix Complex::diff(int j) const {
  const Matrix* d = diffs_.at(j);
  if (d) return *d;
  return zero_matrix(ring_, rank(j + 1), rank(j));
}

Window Complex::certifying_window() const {
  if (ranks_.empty()) return {0, 0};
  return {lo() - 2 * lower_period() - 1, hi() + 2 * upper_period() + 1};
}

void Complex::validate(const Window& w) const {
  for (int j = w.lo - 1; j <= w.hi; ++j) {
    Matrix d = diff(j);
    if (d.rows() != rank(j + 1) || d.cols() != rank(j)) {
      std::ostringstream os;
      os << "differential d^" << j << " has shape " << d.rows() << "x" << d.cols() << ", expected " << rank(j + 1)
         << "x" << rank(j);
      throw ComplexError(os.str());
    }
  }
  for (int j = w.lo - 1; j < w.hi; ++j) {
    Matrix prod = diff(j + 1) * diff(j);
    if (!prod.is_zero())
      throw ComplexError("d^" + std::to_string(j + 1) + " d^" + std::to_string(j) + " = " + prod.to_string() +
                         " is not zero");
  }
}

bool operator==(const Complex& a, const Complex& b) {
  auto same = [](const auto& x, const auto& y) {
    return x.lo() == y.lo() && x.values() == y.values() && x.lower_period() == y.lower_period() &&
           x.upper_period() == y.upper_period();
  };
  if (!(a.ring_ == b.ring_) || a.side_ != b.side_) return false;
  if (a.ranks_.empty() && b.ranks_.empty()) return true;
  return same(a.ranks_, b.ranks_) && same(a.diffs_, b.diffs_);
}

// ---------------------------------------------------------------------------
// ChainMap / Homotopy

ChainMap::ChainMap(Complex source, Complex target, Graded<Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  require_same_ring(source_.ring(), target_.ring(), "chain map");
  for (const auto& m : components_.values()) require_same_ring(source_.ring(), m.ring(), "chain map");
  for (int j = components_.lo(); j <= components_.hi(); ++j) {
    Matrix m = at(j);
    if (m.rows() != target_.rank(j) || m.cols() != source_.rank(j))
      throw ComplexError("chain map component" + degree_note(j) + " has the wrong shape");
  }
}

ChainMap ChainMap::from_function(const Complex& source, const Complex& target, const Span& span,
                                 const ComponentFn& component) {
  if (span.empty()) return ChainMap(source, target);
  std::vector<Matrix> comps;
  for (int j = span.lo; j <= span.hi; ++j) comps.push_back(component(j));
  return ChainMap(source, target, Graded<Matrix>(span.lo, std::move(comps), span.lower_period, span.upper_period));
}

ChainMap ChainMap::identity(const Complex& c) {
  return from_function(c, c, c.span(), [&](int j) { return Matrix::identity(c.ring(), c.rank(j)); });
}

ChainMap ChainMap::zero(const Complex& source, const Complex& target) { return ChainMap(source, target); }

Span ChainMap::span() const {
  if (components_.empty()) return {};
  return {components_.lo(), components_.hi(), components_.lower_period(), components_.upper_period()};
}

Matrix ChainMap::at(int j) const {
  const Matrix* m = components_.at(j);
  if (m) return *m;
  return zero_matrix(source_.ring(), target_.rank(j), source_.rank(j));
}

std::optional<int> ChainMap::commutation_failure(const Window& w) const {
  for (int j = w.lo; j <= w.hi; ++j)
    if (!(target_.diff(j) * at(j) == at(j + 1) * source_.diff(j))) return j;
  return std::nullopt;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(f.target() == g.source())) throw ComplexError("compose: chain maps do not chain");
  return ChainMap::from_function(f.source(), g.target(), combine_spans({f.span(), g.span()}),
                                 [&](int j) { return g.at(j) * f.at(j); });
}

ChainMap operator-(const ChainMap& f, const ChainMap& g) {
  return ChainMap::from_function(f.source(), f.target(), combine_spans({f.span(), g.span()}),
                                 [&](int j) { return f.at(j) - g.at(j); });
}

ChainMap operator+(const ChainMap& f, const ChainMap& g) {
  return ChainMap::from_function(f.source(), f.target(), combine_spans({f.span(), g.span()}),
                                 [&](int j) { return f.at(j) + g.at(j); });
}

Homotopy::Homotopy(Complex source, Complex target, Graded<Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {}

Matrix Homotopy::at(int j) const {
  const Matrix* m = components_.at(j);
  if (m) return *m;
  return zero_matrix(source_.ring(), target_.rank(j - 1), source_.rank(j));
}

Span Homotopy::span() const {
  if (components_.empty()) return {};
  return {components_.lo(), components_.hi(), components_.lower_period(), components_.upper_period()};
}

Matrix Homotopy::defect(const ChainMap& f, const ChainMap& g, int j) const {
  return f.at(j) - g.at(j) - (target_.diff(j - 1) * at(j) + at(j + 1) * source_.diff(j));
}

std::optional<int> Homotopy::failure(const ChainMap& f, const ChainMap& g, const Window& w) const {
  for (int j = w.lo; j <= w.hi; ++j)
    if (!defect(f, g, j).is_zero()) return j;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructions

Complex suspend(const Complex& c, int i) {
  const Integer sign = (i % 2 == 0) ? 1 : -1;
  return Complex::from_function(
      c.ring(), c.side(), shifted(c.span(), i), [&](int j) { return c.rank(j + i); },
      [&](int j) { return c.diff(j + i).scaled(sign); });
}

ChainMap suspend(const ChainMap& f, int i) {
  return ChainMap::from_function(suspend(f.source(), i), suspend(f.target(), i), shifted(f.span(), i),
                                 [&](int j) { return f.at(j + i); });
}

ConeTriangle cone(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  const Ring& ring = x.ring();
  Span span = combine_spans({shifted(x.span(), 1), y.span(), shifted(f.span(), 1)});
  auto rank = [&](int j) { return x.rank(j + 1) + y.rank(j); };
  auto diff = [&](int j) {
    Matrix d(ring, x.rank(j + 2) + y.rank(j + 1), x.rank(j + 1) + y.rank(j));
    d.set_block(0, 0, -x.diff(j + 1));
    d.set_block(x.rank(j + 2), 0, f.at(j + 1));
    d.set_block(x.rank(j + 2), x.rank(j + 1), y.diff(j));
    return d;
  };
  Complex c = Complex::from_function(ring, y.side(), span, rank, diff);
  ChainMap inc = ChainMap::from_function(y, c, span, [&](int j) {
    Matrix m(ring, c.rank(j), y.rank(j));
    m.set_block(x.rank(j + 1), 0, Matrix::identity(ring, y.rank(j)));
    return m;
  });
  Complex sx = suspend(x, 1);
  ChainMap proj = ChainMap::from_function(c, sx, span, [&](int j) {
    Matrix m(ring, x.rank(j + 1), c.rank(j));
    m.set_block(0, 0, Matrix::identity(ring, x.rank(j + 1)));
    return m;
  });
  return {c, inc, proj};
}

Coproduct finite_coproduct(const std::vector<Complex>& parts) {
  if (parts.empty()) throw std::invalid_argument("finite_coproduct: empty family");
  const Ring& ring = parts.front().ring();
  std::vector<Span> spans;
  for (const auto& p : parts) {
    require_same_ring(ring, p.ring(), "finite_coproduct");
    spans.push_back(p.span());
  }
  Span span = combine_spans(spans);
  auto offset = [&](std::size_t k, int j) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < k; ++i) o += parts[i].rank(j);
    return o;
  };
  auto rank = [&](int j) { return offset(parts.size(), j); };
  auto diff = [&](int j) {
    Matrix d(ring, rank(j + 1), rank(j));
    for (std::size_t k = 0; k < parts.size(); ++k) d.set_block(offset(k, j + 1), offset(k, j), parts[k].diff(j));
    return d;
  };
  Coproduct out{Complex::from_function(ring, parts.front().side(), span, rank, diff), {}, {}};
  for (std::size_t k = 0; k < parts.size(); ++k) {
    out.inclusions.push_back(ChainMap::from_function(parts[k], out.sum, span, [&](int j) {
      Matrix m(ring, rank(j), parts[k].rank(j));
      m.set_block(offset(k, j), 0, Matrix::identity(ring, parts[k].rank(j)));
      return m;
    }));
    out.projections.push_back(ChainMap::from_function(out.sum, parts[k], span, [&](int j) {
      Matrix m(ring, parts[k].rank(j), rank(j));
      m.set_block(0, offset(k, j), Matrix::identity(ring, parts[k].rank(j)));
      return m;
    }));
  }
  return out;
}

Complex dualize(const Complex& c) {
  return Complex::from_function(
      c.ring(), opposite(c.side()), combine_spans({mirrored(c.span())}), [&](int j) { return c.rank(-j); },
      [&](int j) { return c.diff(-j - 1).transpose(); });
}

ChainMap dualize(const ChainMap& f) {
  return ChainMap::from_function(dualize(f.target()), dualize(f.source()), combine_spans({mirrored(f.span())}),
                                 [&](int j) { return f.at(-j).transpose(); });
}

Complex truncate(const Complex& c, const Window& w) {
  return Complex::from_function(
      c.ring(), c.side(), Span{w.lo, w.hi, 0, 0}, [&](int j) { return c.rank(j); },
      [&](int j) { return c.diff(j); });
}

// ---------------------------------------------------------------------------
// Homology

Subquotient homology(const Complex& c, int j) { return subquotient(kernel(c.diff(j)), c.diff(j - 1), c.side()); }

namespace {
bool exact_at(const Complex& c, int j) { return in_column_span(c.diff(j - 1), kernel(c.diff(j))); }
}  // namespace

CycleModule cycle_module(const Complex& c, int j) {
  Matrix k = kernel(c.diff(j));
  CycleModule out{FPModule(kernel(k), c.side()), k, std::nullopt};
  if (exact_at(c, j)) out.sigma = solve(k, c.diff(j - 1));
  return out;
}

std::optional<int> first_non_exact_degree(const Complex& c, const Window& w) {
  for (int j = w.lo; j <= w.hi; ++j)
    if (!exact_at(c, j)) return j;
  return std::nullopt;
}

std::optional<Homotopy> null_homotopy_witness(const ChainMap& f, const Window& w) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  const Ring& ring = x.ring();
  Span s = combine_spans({x.span(), y.span(), f.span()});
  if (s.empty()) return Homotopy(x, y);
  if (s.bounded() && (s.lo < w.lo || s.hi > w.hi))
    throw WindowError("null_homotopy_witness: bounded input extends past the window");

  // Unknowns s^j for j in [lo, hi + 1]; other degrees resolve periodically
  // into this region or carry zero-size blocks.
  Graded<int> region(s.lo, std::vector<int>(static_cast<std::size_t>(s.hi - s.lo + 2), 0), s.lower_period,
                     s.upper_period);
  auto block_rows = [&](int j) { return y.rank(j - 1); };
  auto block_cols = [&](int j) { return x.rank(j); };
  std::map<int, std::size_t> offset;
  std::size_t unknowns = 0;
  for (int j = s.lo; j <= s.hi + 1; ++j) {
    offset[j] = unknowns;
    unknowns += block_rows(j) * block_cols(j);
  }
  std::size_t equations = 0;
  for (int j = s.lo - 1; j <= s.hi + 1; ++j) equations += y.rank(j) * x.rank(j);

  Matrix a(ring, equations, unknowns), b(ring, equations, 1);
  std::size_t row = 0;
  for (int j = s.lo - 1; j <= s.hi + 1; ++j) {
    const std::size_t n = y.rank(j) * x.rank(j);
    if (n == 0) continue;
    b.set_block(row, 0, f.at(j).vec());
    auto place = [&](int deg, const Matrix& coeff) {
      auto r = region.resolve(deg);
      if (!r || coeff.cols() == 0) return;
      a.set_block(row, offset[*r], a.block(row, offset[*r], coeff.rows(), coeff.cols()) + coeff);
    };
    place(j, kron(y.diff(j - 1), Matrix::identity(ring, x.rank(j))));
    place(j + 1, kron(Matrix::identity(ring, y.rank(j)), x.diff(j).transpose()));
    row += n;
  }
  auto sol = solve(a, b);
  if (!sol) return std::nullopt;
  std::vector<Matrix> comps;
  for (int j = s.lo; j <= s.hi + 1; ++j)
    comps.push_back(Matrix::unvec(sol->block(offset[j], 0, block_rows(j) * block_cols(j), 1), block_rows(j),
                                  block_cols(j)));
  return Homotopy(x, y, Graded<Matrix>(s.lo, std::move(comps), s.lower_period, s.upper_period));
}

std::optional<Homotopy> contraction(const Complex& c, const Window& w) {
  return null_homotopy_witness(ChainMap::identity(c), w);
}

std::string to_string(SplitKind k) {
  switch (k) {
    case SplitKind::SplitExact:
      return "split_exact";
    case SplitKind::ExactNotSplit:
      return "exact_not_split";
    case SplitKind::NotExact:
      return "not_exact";
  }
  return "?";
}

SplitVerdict split_exactness_check(const Complex& c, const Window& w) {
  const Ring& ring = c.ring();
  const Span span = c.span();
  SplitVerdict v{SplitKind::SplitExact, w, !(span.empty() || (span.bounded() && span.lo >= w.lo && span.hi <= w.hi)),
                 std::nullopt, std::nullopt, {}, std::nullopt};
  const Window examined{w.lo, w.hi + 2};
  if (auto bad = first_non_exact_degree(c, examined)) {
    v.kind = SplitKind::NotExact;
    v.degree = bad;
    return v;
  }
  std::map<int, CycleModule> cycles;
  std::map<int, Matrix> splittings;  // E_j
  for (int j = examined.lo; j <= examined.hi; ++j) {
    CycleModule cm = cycle_module(c, j);
    auto section = is_projective(cm.module);
    if (!section) {
      v.kind = SplitKind::ExactNotSplit;
      v.degree = j;
      v.cycle = cm.module;
      return v;
    }
    splittings.emplace(j, section->matrix);
    cycles.emplace(j, std::move(cm));
  }
  // t_{j-1} = L E_j with d^{j-1} L = K_j: a section of sigma over Z^j.
  for (int j = examined.lo; j <= examined.hi; ++j) {
    auto lift = solve(c.diff(j - 1), cycles.at(j).inclusion);
    if (!lift) throw std::logic_error("split_exactness_check: exact complex has an unliftable cycle");
    v.sections.emplace(j - 1, *lift * splittings.at(j));
  }
  // s^j = t_{j-1} r_j with r_j = 1 - t_j sigma_j written in Z^j coordinates.
  std::vector<Matrix> comps;
  for (int j = w.lo; j <= w.hi + 1; ++j) {
    const Matrix& k = cycles.at(j).inclusion;
    Matrix r = Matrix::identity(ring, c.rank(j)) - v.sections.at(j) * *cycles.at(j + 1).sigma;
    auto coords = solve(k, r);
    if (!coords) throw std::logic_error("split_exactness_check: retraction leaves the cycles");
    comps.push_back(v.sections.at(j - 1) * *coords);
  }
  Homotopy h(c, c, Graded<Matrix>(w.lo, std::move(comps)));
  ChainMap id = ChainMap::identity(c);
  if (auto bad = h.failure(id, ChainMap::zero(c, c), w))
    throw std::logic_error("split_exactness_check: assembled contraction fails" + degree_note(*bad));
  v.contraction = std::move(h);
  return v;
}

}  // namespace kproj

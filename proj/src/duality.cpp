#include "kproj/duality.hpp"

#include <sstream>

namespace kproj {

DualityVerdict duality_roundtrip_check(const Complex& g, const Window& w, const std::optional<ChainMap>& f,
                                       const std::optional<ChainMap>& next) {
  DualityVerdict v;
  ChainMap p = double_dual_comparison(g);
  v.components_invertible = true;
  for (int j = w.lo; j <= w.hi; ++j)
    if (!inverse(p.at(j))) {
      v.components_invertible = false;
      v.degree = j;
      v.detail = "G -> G** is not invertible in degree " + std::to_string(j);
      break;
    }
  auto bad = p.commutation_failure(w);
  v.chain_map = !bad;
  if (bad && !v.degree) {
    v.degree = bad;
    v.detail = "G -> G** does not commute with d in degree " + std::to_string(*bad);
  }

  if (f) {
    ChainMap px = double_dual_comparison(f->source());
    ChainMap py = double_dual_comparison(f->target());
    ChainMap fss = dualize(dualize(*f));
    for (int j = w.lo; j <= w.hi && v.natural; ++j)
      if (!(py.at(j) * f->at(j) == fss.at(j) * px.at(j))) {
        v.natural = false;
        v.detail += "canonical map is not natural in degree " + std::to_string(j) + "; ";
      }
  }
  if (f && next) {
    if (!(f->target() == next->source())) throw ComplexError("duality_roundtrip_check: test maps do not chain");
    ChainMap lhs = dualize(compose(*next, *f));
    ChainMap rhs = compose(dualize(*f), dualize(*next));
    for (int j = -w.hi; j <= -w.lo && v.functorial; ++j)
      if (!(lhs.at(j) == rhs.at(j))) {
        v.functorial = false;
        v.detail += "(g f)* differs from f* g* in degree " + std::to_string(j) + "; ";
      }
  }
  v.pass = v.components_invertible && v.chain_map && v.natural && v.functorial;
  return v;
}

KernelAsDual kernel_as_dual(const Complex& q) {
  Matrix d = q.diff(-1);
  FPModule m(d.transpose(), opposite(q.side()));
  DualModule md = dualize_module(m);
  CycleModule z = cycle_module(q, -1);
  auto x = solve(z.inclusion, md.generators);
  if (!x) throw std::logic_error("kernel_as_dual: M* does not land in the cycles");
  ModuleMap iso{md.module, z.module, *x};
  if (!is_isomorphism(iso)) throw std::logic_error("kernel_as_dual: M* -> Z^{-1} Q is not an isomorphism");
  return {std::move(m), std::move(md), std::move(z), std::move(iso)};
}

std::string to_string(BuildNode::Kind k) {
  switch (k) {
    case BuildNode::Kind::FreeLeaf:
      return "free";
    case BuildNode::Kind::TailLeaf:
      return "tail";
    case BuildNode::Kind::Suspension:
      return "suspension";
    case BuildNode::Kind::Cone:
      return "cone";
  }
  return "?";
}

namespace {

BuildPtr leaf(BuildNode::Kind kind, Complex value) {
  return std::make_shared<const BuildNode>(BuildNode{kind, std::move(value), 0, {}, {}, nullptr});
}

BuildPtr cone_node(BuildPtr source, BuildPtr target, Graded<Matrix> map, std::shared_ptr<const LevelData> level) {
  ChainMap f(source->value, target->value, map);
  Complex value = cone(f).cone;
  return std::make_shared<const BuildNode>(
      BuildNode{BuildNode::Kind::Cone, std::move(value), 0, {std::move(source), std::move(target)}, std::move(map),
                std::move(level)});
}

BuildPtr build(const Complex& q, int depth) {
  const Ring& ring = q.ring();
  const std::size_t r0 = q.rank(0), r1 = q.rank(-1);
  if (r1 == 0) return leaf(BuildNode::Kind::FreeLeaf, Complex::single(ring, q.side(), r0, 0));
  if (depth <= 0) return leaf(BuildNode::Kind::TailLeaf, q);

  KernelAsDual kad = kernel_as_dual(q);
  BuildPtr l1 = leaf(BuildNode::Kind::FreeLeaf, Complex::single(ring, q.side(), r1, 0));
  BuildPtr l0 = leaf(BuildNode::Kind::FreeLeaf, Complex::single(ring, q.side(), r0, 0));
  Graded<Matrix> d(0, {q.diff(-1)});
  const bool dual_zero = kad.mdual.module.rank0() == 0;
  Complex child_res = dual_zero ? Complex(ring, q.side()) : build_generator(kad.m).p.complex;
  Matrix k = kad.mdual.generators;
  auto level = std::make_shared<const LevelData>(LevelData{q, std::move(kad), child_res});
  if (dual_zero) return cone_node(l1, l0, d, level);

  BuildPtr truncation = cone_node(l1, l0, d, nullptr);
  BuildPtr child = build(child_res, depth - 1);
  BuildPtr susp = std::make_shared<const BuildNode>(
      BuildNode{BuildNode::Kind::Suspension, suspend(child->value, 1), 1, {child}, {}, nullptr});
  // h^{-1} = K: (Sigma E)^{-1} = E^0 = P'^0 -> Q^{-1}, the generators of Z^{-1} Q.
  return cone_node(susp, truncation, Graded<Matrix>(-1, {k}), level);
}

void count(const BuildPtr& n, std::size_t& free, std::size_t& tail) {
  if (n->kind == BuildNode::Kind::FreeLeaf) {
    const Span s = n->value.span();
    if (!s.empty() && n->value.rank(s.lo) > 0) ++free;
  } else if (n->kind == BuildNode::Kind::TailLeaf) {
    ++tail;
  }
  for (const auto& c : n->children) count(c, free, tail);
}

}  // namespace

std::size_t BuildTree::free_leaves() const {
  std::size_t f = 0, t = 0;
  count(root, f, t);
  return f;
}

std::size_t BuildTree::tail_leaves() const {
  std::size_t f = 0, t = 0;
  count(root, f, t);
  return t;
}

BuildTree decompose_resolution(const Complex& q, int depth) {
  if (depth < 0) throw std::invalid_argument("decompose_resolution: depth must be >= 0");
  Span s = q.span();
  if (!s.empty() && (s.upper_period || s.hi > 0)) throw ComplexError("decompose_resolution: Q must vanish above 0");
  BuildTree t{build(q, depth), q, depth, false};
  t.truncated = t.tail_leaves() > 0;
  return t;
}

std::optional<ChainMap> lift_downward(const Complex& x, const Complex& y, const Matrix& f0, int lowest,
                                      const std::optional<Matrix>& seed) {
  if (lowest > 0) throw std::invalid_argument("lift_downward: lowest must be <= 0");
  std::vector<Matrix> comps(static_cast<std::size_t>(1 - lowest), Matrix(x.ring()));
  comps.back() = f0;
  for (int j = 0; j > lowest; --j) {
    Matrix rhs = comps[static_cast<std::size_t>(j - lowest)] * x.diff(j - 1);
    std::optional<Matrix> next;
    if (j == 0 && seed && seed->rows() == y.rank(-1) && seed->cols() == x.rank(-1) && y.diff(-1) * *seed == rhs)
      next = *seed;
    else
      next = solve(y.diff(j - 1), rhs);
    if (!next) return std::nullopt;
    comps[static_cast<std::size_t>(j - 1 - lowest)] = *next;
  }
  return ChainMap(x, y, Graded<Matrix>(lowest, std::move(comps)));
}

std::optional<Homotopy> homotopy_downward(const ChainMap& f, const ChainMap& g, int lowest) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  std::vector<Matrix> comps(static_cast<std::size_t>(2 - lowest), Matrix(x.ring()));
  comps.back() = Matrix(x.ring(), y.rank(0), x.rank(1));
  for (int j = 0; j >= lowest; --j) {
    const Matrix& above = comps[static_cast<std::size_t>(j + 1 - lowest)];
    Matrix rhs = f.at(j) - g.at(j) - above * x.diff(j);
    auto s = solve(y.diff(j - 1), rhs);
    if (!s) return std::nullopt;
    comps[static_cast<std::size_t>(j - lowest)] = *s;
  }
  return Homotopy(x, y, Graded<Matrix>(lowest, std::move(comps)));
}

RebuildVerdict rebuild_verify(const BuildTree& tree, const Window& w) {
  RebuildVerdict v;
  v.window = w;
  const Complex& e = tree.root->value;
  const Complex& q = tree.target;
  const Span qs = q.span();
  v.window_relative = tree.truncated || (!qs.empty() && (!qs.bounded() || qs.lo < w.lo));
  const int lowest = std::min(w.lo, 0) - 1;
  const Ring& ring = q.ring();
  if (e.rank(0) != q.rank(0) || e.rank(-1) != q.rank(-1)) {
    v.degree = 0;
    v.detail = "built complex does not start with Q^0 and Q^{-1}";
    return v;
  }
  Matrix id0 = Matrix::identity(ring, q.rank(0));
  Matrix id1 = Matrix::identity(ring, q.rank(-1));
  auto to = lift_downward(e, q, id0, lowest, id1);
  auto from = lift_downward(q, e, id0, lowest, id1);
  if (!to || !from) {
    v.detail = "comparison maps do not lift (a complex is not exact below 0 in the window)";
    return v;
  }
  ChainMap idq = ChainMap::identity(q), ide = ChainMap::identity(e);
  auto hq = homotopy_downward(idq, compose(*to, *from), lowest);
  auto he = homotopy_downward(ide, compose(*from, *to), lowest);
  if (!hq || !he) {
    v.detail = "no homotopy found for a composite";
    return v;
  }
  const Window check{std::max(w.lo, lowest + 1), std::min(w.hi, 0)};
  std::optional<int> bad;
  if ((bad = to->commutation_failure(check)) || (bad = from->commutation_failure(check)) ||
      (bad = hq->failure(idq, compose(*to, *from), check)) || (bad = he->failure(ide, compose(*from, *to), check))) {
    v.degree = bad;
    v.detail = "witness identity fails in degree " + std::to_string(*bad);
    return v;
  }
  v.equivalence = Equivalence{e, q, *to, *from, *hq, *he};
  v.pass = true;
  return v;
}

ChainMap sample_chain_map(const Complex& x, const Complex& y, std::mt19937& rng, int bound) {
  HomComplex h(source_of(x), y, {0, 0});
  Matrix g = h.generators(0);
  Matrix z = g * kernel(h.diff(0) * g);
  Matrix v = z * sample_matrix(x.ring(), rng, z.cols(), 1, bound);
  std::map<int, Matrix> comps = h.components(0, v);
  Span span = combine_spans({x.span(), y.span()});
  return ChainMap::from_function(x, y, span, [&](int j) {
    auto it = comps.find(j);
    if (it != comps.end()) return it->second;
    return Matrix(x.ring(), y.rank(j), x.rank(j));
  });
}

}  // namespace kproj

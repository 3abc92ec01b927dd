#include "kproj/module.hpp"

#include <sstream>

namespace kproj {

FPModule FPModule::cyclic(Ring ring, const Integer& d, Side side) {
  Matrix r(ring, 1, 1);
  r.set(0, 0, d);
  return FPModule(r, side);
}

bool FPModule::is_zero(const Matrix& v) const {
  if (v.is_zero()) return true;
  return in_column_span(presentation_, v);
}

bool ModuleMap::is_well_defined() const {
  if (matrix.rows() != target.rank0() || matrix.cols() != source.rank0()) return false;
  return target.is_zero(matrix * source.presentation());
}

ModuleMap identity_map(const FPModule& m) { return {m, m, Matrix::identity(m.ring(), m.rank0())}; }

ModuleMap zero_map(const FPModule& source, const FPModule& target) {
  return {source, target, Matrix(source.ring(), target.rank0(), source.rank0())};
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (g.source.rank0() != f.target.rank0()) throw DimensionError("compose: maps do not chain");
  return {f.source, g.target, g.matrix * f.matrix};
}

bool maps_equal(const ModuleMap& f, const ModuleMap& g) {
  return f.target.is_zero(f.matrix - g.matrix);
}

FPModule submodule(const Matrix& generators, Side side) { return FPModule(kernel(generators), side); }

Subquotient subquotient(const Matrix& z, const Matrix& b, Side side) {
  auto y = solve(z, b);
  if (!y) throw std::logic_error("subquotient: boundaries are not contained in cycles");
  return {FPModule(hconcat(*y, kernel(z)), side), z};
}

DualModule dualize_module(const FPModule& m) {
  Matrix k = kernel(m.presentation().transpose());
  return {FPModule(kernel(k), opposite(m.side())), k};
}

ModuleMap dualize_map(const ModuleMap& f) {
  DualModule dm = dualize_module(f.source);
  DualModule dn = dualize_module(f.target);
  auto x = solve(dm.generators, f.matrix.transpose() * dn.generators);
  if (!x) throw std::logic_error("dualize_map: pulled-back functional left M*");
  return {dn.module, dm.module, *x};
}

ModuleMap canonical_double_dual_map(const FPModule& m) {
  DualModule d1 = dualize_module(m);
  DualModule d2 = dualize_module(d1.module);
  // Generator e_i evaluates the j-th functional of M* to K(i, j).
  auto c = solve(d2.generators, d1.generators.transpose());
  if (!c) throw std::logic_error("canonical_double_dual_map: evaluation is not in M**");
  return {m, d2.module, *c};
}

std::optional<ModuleMap> is_projective(const FPModule& m) {
  const Matrix& r = m.presentation();
  FPModule q0 = FPModule::free(m.ring(), m.rank0(), m.side());
  if (r.cols() == 0) return ModuleMap{m, q0, Matrix::identity(m.ring(), m.rank0())};
  // Section E = I + R W with E R = 0, i.e. R W R = -R.
  auto w = solve(kron(r, r.transpose()), (-r).vec());
  if (!w) return std::nullopt;
  Matrix e = Matrix::identity(m.ring(), m.rank0()) + r * Matrix::unvec(*w, r.cols(), r.rows());
  return ModuleMap{m, q0, e};
}

ProjectiveDimension projective_dimension(const FPModule& m, int bound) {
  if (bound < 0) throw std::invalid_argument("projective_dimension: bound must be >= 0");
  Matrix current = m.presentation();
  for (int k = 0; k <= bound; ++k) {
    if (is_projective(FPModule(current, m.side()))) return {k, bound};
    current = kernel(current);
  }
  return {std::nullopt, bound};
}

std::optional<ModuleMap> is_isomorphism(const ModuleMap& f) {
  if (!f.is_well_defined()) return std::nullopt;
  const Ring& ring = f.source.ring();
  auto x = solve(hconcat(f.matrix, f.target.presentation()), Matrix::identity(ring, f.target.rank0()));
  if (!x) return std::nullopt;
  ModuleMap g{f.target, f.source, x->rows_range(0, f.source.rank0())};
  if (!g.is_well_defined()) return std::nullopt;
  if (!f.source.is_zero(g.matrix * f.matrix - Matrix::identity(ring, f.source.rank0()))) return std::nullopt;
  return g;
}

namespace {

struct SmithData {
  SmithForm smith;
  std::vector<std::size_t> kept;  // indices with non-unit invariant factor
};

SmithData smith_of(const FPModule& m) {
  const Ring& ring = m.ring();
  const std::size_t r0 = m.rank0(), r1 = m.rank1();
  const std::size_t extra = ring.is_integers() ? 0 : r0;
  std::vector<std::vector<Integer>> lat(r0, std::vector<Integer>(r1 + extra, 0));
  for (std::size_t i = 0; i < r0; ++i) {
    for (std::size_t j = 0; j < r1; ++j) lat[i][j] = m.presentation()(i, j);
    if (extra) lat[i][r1 + i] = ring.modulus();
  }
  SmithData out{smith_form(lat, r1 + extra), {}};
  for (std::size_t i = 0; i < r0; ++i)
    if (out.smith.diagonal[i] != 1) out.kept.push_back(i);
  return out;
}

}  // namespace

ModuleStructure structure(const FPModule& m) {
  SmithData s = smith_of(m);
  ModuleStructure out;
  for (std::size_t i : s.kept) {
    const Integer& d = s.smith.diagonal[i];
    if (d == 0 || (!m.ring().is_integers() && d == m.ring().modulus()))
      ++out.free_rank;
    else
      out.torsion.push_back(d);
  }
  return out;
}

std::string ModuleStructure::to_string(const Ring& ring) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& d : torsion) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (free_rank) os << (first ? "" : " + ") << "(" << ring.name() << ")^" << free_rank;
  return os.str();
}

CanonicalForm canonical_form(const FPModule& m) {
  const Ring& ring = m.ring();
  const Ring zz = Ring::integers();
  SmithData s = smith_of(m);
  const std::size_t r0 = m.rank0(), c = s.kept.size();

  Matrix p(zz, r0, r0);
  for (std::size_t i = 0; i < r0; ++i)
    for (std::size_t j = 0; j < r0; ++j) p.set(i, j, s.smith.left[i][j]);
  auto pinv = inverse(p);
  if (!pinv) throw std::logic_error("canonical_form: Smith transform not unimodular");

  Matrix diag(ring, c, c), to(ring, c, r0), from(ring, r0, c);
  for (std::size_t k = 0; k < c; ++k) {
    const std::size_t i = s.kept[k];
    diag.set(k, k, s.smith.diagonal[i]);
    for (std::size_t j = 0; j < r0; ++j) {
      to.set(k, j, p(i, j));
      from.set(j, k, (*pinv)(j, i));
    }
  }
  FPModule canon(diag, m.side());
  return {canon, {m, canon, to}, {canon, m, from}};
}

std::optional<std::pair<ModuleMap, ModuleMap>> find_isomorphism(const FPModule& m, const FPModule& n) {
  require_same_ring(m.ring(), n.ring(), "find_isomorphism");
  CanonicalForm cm = canonical_form(m), cn = canonical_form(n);
  if (!(cm.canonical.presentation() == cn.canonical.presentation())) return std::nullopt;
  ModuleMap f{m, n, cn.from.matrix * cm.to.matrix};
  auto g = is_isomorphism(f);
  if (!g) return std::nullopt;
  return std::make_pair(f, *g);
}

}  // namespace kproj

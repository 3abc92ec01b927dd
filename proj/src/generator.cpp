#include "kproj/generator.hpp"

#include <sstream>

namespace kproj {

std::string to_string(ResolutionKind k) {
  switch (k) {
    case ResolutionKind::Finite:
      return "finite";
    case ResolutionKind::Periodic:
      return "periodic";
    case ResolutionKind::Truncated:
      return "truncated";
  }
  return "?";
}

namespace {

// P^0 = rows of ds[0], P^{-i} = cols of ds[i-1]; region [-count, 0].
Complex assemble(const FPModule& m, const std::vector<Matrix>& ds, std::size_t count, int lower_period) {
  std::vector<std::size_t> ranks(count + 1);
  std::vector<Matrix> diffs;
  ranks[count] = m.rank0();
  for (std::size_t i = 1; i <= count; ++i) ranks[count - i] = ds[i - 1].cols();
  for (std::size_t i = count; i >= 1; --i) diffs.push_back(ds[i - 1]);
  return Complex(m.ring(), m.side(), -static_cast<int>(count), std::move(ranks), std::move(diffs), lower_period, 0);
}

FPModule module_sum(const Ring& ring, const std::vector<FPModule>& parts, Side side) {
  Matrix r(ring);
  for (const auto& p : parts) r = direct_sum(r, p.presentation());
  return FPModule(r, side);
}

}  // namespace

Resolution resolve(const FPModule& m, int max_depth) {
  if (m.rank0() == 0) return {Complex(m.ring(), m.side()), ResolutionKind::Finite, 0};
  std::vector<Matrix> ds{m.presentation()};
  for (std::size_t k = 1;; ++k) {
    const Matrix& dk = ds[k - 1];
    if (dk.cols() == 0) return {assemble(m, ds, k - 1, 0), ResolutionKind::Finite, static_cast<int>(k - 1)};
    for (std::size_t j = 1; j < k; ++j)
      if (ds[j - 1] == dk)
        return {assemble(m, ds, k, static_cast<int>(k - j)), ResolutionKind::Periodic, static_cast<int>(k)};
    if (static_cast<int>(k) >= max_depth)
      return {assemble(m, ds, k, 0), ResolutionKind::Truncated, static_cast<int>(k)};
    ds.push_back(kernel(dk));
  }
}

GeneratorPackage build_generator(const FPModule& m, int max_depth) {
  DualModule mdual = dualize_module(m);
  Resolution p = resolve(mdual.module, max_depth);
  const std::size_t g = mdual.generators.cols();
  ModuleMap pi0{FPModule::free(m.ring(), g, mdual.module.side()), mdual.module, Matrix::identity(m.ring(), g)};
  ModuleMap mu = canonical_double_dual_map(m);
  Complex pstar = dualize(p.complex);
  Matrix comparison = mdual.generators.transpose();
  return {m, std::move(mdual), std::move(p), std::move(pi0), std::move(mu), std::move(pstar), std::move(comparison)};
}

ChainMap double_dual_comparison(const Complex& p) {
  Complex pss = dualize(dualize(p));
  return ChainMap::from_function(p, pss, p.span(), [&](int j) {
    return canonical_double_dual_map(FPModule::free(p.ring(), p.rank(j), p.side())).matrix;
  });
}

QuasiIsoVerdict verify_resolution(const GeneratorPackage& pkg, const Window& w) {
  QuasiIsoVerdict v;
  v.window = w;
  v.window_relative = pkg.window_relative();
  std::ostringstream detail;
  const Complex& p = pkg.p.complex;

  // pi: H^{<0} P = 0 and H^0 P = coker d^{-1} -> M* iso.
  int lo = w.lo;
  if (pkg.p.kind == ResolutionKind::Truncated) lo = std::max(lo, -pkg.p.depth + 1);
  Window checked{lo, std::min(w.hi, -1)};
  if (pkg.p.kind == ResolutionKind::Periodic) {
    Window cert = p.certifying_window();
    checked.lo = std::min(checked.lo, cert.lo);
  }
  auto bad = first_non_exact_degree(p, checked);
  FPModule h0(p.diff(-1), p.side());
  bool pi_iso = is_isomorphism(ModuleMap{h0, pkg.mdual.module, pkg.pi0.matrix}).has_value();
  v.resolution_exact = !bad && pi_iso;
  if (bad) detail << "P has homology in degree " << *bad << "; ";
  if (!pi_iso) detail << "H^0 P -> M* is not an isomorphism; ";

  // p: P -> P** invertible in each degree and a chain map.
  ChainMap pmap = double_dual_comparison(p);
  Window span_w{std::min(checked.lo, w.lo) - 1, std::max(w.hi, 0) + 1};
  v.p_isomorphism = !pmap.commutation_failure(span_w);
  for (int j = span_w.lo; j <= span_w.hi && v.p_isomorphism; ++j)
    if (!inverse(pmap.at(j))) v.p_isomorphism = false;
  if (!v.p_isomorphism) detail << "p: P -> P** is not an isomorphism; ";

  // mu* pi**: P** -> M*, checked on H^0 together with exactness of P**.
  ModuleMap pi_star = dualize_map(pkg.pi0);
  ModuleMap pi_ss = dualize_map(pi_star);
  ModuleMap mu_star = dualize_map(pkg.mu);
  ModuleMap composite = compose(mu_star, pi_ss);
  Complex pss = pmap.target();
  FPModule h0ss(pss.diff(-1), pss.side());
  bool composite_iso = is_isomorphism(ModuleMap{h0ss, pkg.mdual.module, composite.matrix}).has_value();
  v.double_dual_quasi_iso = composite_iso && !first_non_exact_degree(pss, checked);
  if (!v.double_dual_quasi_iso) detail << "mu* pi** is not a quasi-isomorphism; ";

  v.pass = v.resolution_exact && v.p_isomorphism && v.double_dual_quasi_iso;
  v.detail = detail.str();
  return v;
}

QuasiIsoVerdict verify_generator_quasi_iso(const GeneratorPackage& pkg, const Complex& q, const Window& w) {
  QuasiIsoVerdict v = verify_resolution(pkg, Window{std::min(w.lo, -1), 0});
  v.window = w;
  HomComplex h(module_cone(pkg.m, pkg.pstar, pkg.comparison), q, w);
  for (int n = w.lo; n <= w.hi; ++n)
    if (!h.exact_at(n)) v.non_exact.push_back(n);
  if (!v.non_exact.empty()) {
    std::ostringstream os;
    os << "Hom(cone, Q) has homology in degree";
    for (int n : v.non_exact) os << " " << n;
    os << "; ";
    v.detail += os.str();
  }
  v.pass = v.pass && v.non_exact.empty();
  return v;
}

std::optional<ModuleMap> suspension_identification(const GeneratorPackage& pkg, const Complex& q, int i) {
  HomComplex h(source_of(suspend(pkg.pstar, i)), q, {0, 0});
  Subquotient hh = h.homology(0);
  Subquotient hq = homology(q, -i);
  // Hom^0(A[-i], Q) has Q^{-i} as its ambient module, coordinate for coordinate.
  if (h.ambient_rank(0) != q.rank(-i)) return std::nullopt;
  auto x = solve(hq.generators, hh.generators);
  if (!x) return std::nullopt;
  ModuleMap f{hh.module, hq.module, *x};
  if (!is_isomorphism(f)) return std::nullopt;
  return f;
}

HomEquivalence h0_hom_equivalence(const GeneratorPackage& pkg, const Complex& q, const Window& w) {
  HomComplex hp(source_of(pkg.pstar), q, {0, 0});
  HomComplex hm(source_of(pkg.m, 0), q, {0, 0});
  const Ring& ring = pkg.m.ring();
  Matrix a = precompose(hp, hm, 0, [&](int i) {
    if (i == 0) return pkg.comparison;
    return Matrix(ring, pkg.pstar.rank(i), 0);
  });
  InducedMap ind = induced_on_homology(hp, hm, 0, a);
  HomEquivalence out{false, ind.source, ind.target, ind.map, {}, {}};
  out.pass = is_isomorphism(ind.map).has_value();
  if (!out.pass) out.detail = "comparison does not induce an isomorphism on H^0";

  const Span ps = pkg.pstar.span();
  const bool is_a = ps.bounded() && !ps.empty() && pkg.pstar.rank(0) == 1 && ps.lo == 0 && ps.hi == 0;
  if (is_a) {
    for (int i = w.lo; i <= w.hi; ++i) {
      bool ok = suspension_identification(pkg, q, i).has_value();
      out.suspension_checks[i] = ok;
      if (!ok) {
        out.pass = false;
        out.detail += "H^0 Hom(Sigma^" + std::to_string(i) + " P*, Q) is not H^" + std::to_string(-i) + " Q; ";
      }
    }
  }
  return out;
}

CompactnessVerdict compactness_probe(const GeneratorPackage& pkg, const std::vector<Complex>& qs) {
  CompactnessVerdict v;
  const Ring& ring = pkg.m.ring();
  if (qs.empty()) {
    v.pass = true;
    return v;
  }
  Coproduct sum = finite_coproduct(qs);
  HomComplex hs(source_of(pkg.pstar), sum.sum, {0, 0});
  std::vector<FPModule> parts;
  std::vector<Matrix> columns;
  std::optional<Subquotient> target;
  for (std::size_t k = 0; k < qs.size(); ++k) {
    HomComplex hk(source_of(pkg.pstar), qs[k], {0, 0});
    const ChainMap& inc = sum.inclusions[k];
    InducedMap ind = induced_on_homology(hk, hs, 0, postcompose(hk, hs, 0, [&](int j) { return inc.at(j); }));
    parts.push_back(ind.source.module);
    v.parts.push_back(structure(ind.source.module));
    columns.push_back(ind.map.matrix);
    if (!target) target = ind.target;
  }
  Matrix m = columns.front();
  for (std::size_t k = 1; k < columns.size(); ++k) m = hconcat(m, columns[k]);
  v.total = structure(target->module);
  v.pass = is_isomorphism(ModuleMap{module_sum(ring, parts, Side::Left), target->module, m}).has_value();
  if (!v.pass) v.detail = "canonical map from the sum of Hom groups is not an isomorphism";
  return v;
}

Matrix sample_matrix(const Ring& ring, std::mt19937& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> e(-bound, bound);
  Matrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, e(rng));
  return m;
}

FPModule sample_module(const Ring& ring, std::mt19937& rng, std::size_t max_rank, int bound, Side side) {
  std::uniform_int_distribution<std::size_t> rk(0, max_rank);
  std::size_t r0 = rk(rng), r1 = rk(rng);
  return FPModule(sample_matrix(ring, rng, r0, r1, bound), side);
}

Complex sample_complex(const Ring& ring, std::mt19937& rng, int lo, int length, std::size_t max_rank, int bound,
                       Side side) {
  std::uniform_int_distribution<std::size_t> rk(0, max_rank);
  std::vector<std::size_t> ranks;
  for (int k = 0; k < length; ++k) ranks.push_back(rk(rng));
  std::vector<Matrix> diffs;
  for (int k = 0; k + 1 < length; ++k) {
    Matrix prev = k ? diffs.back() : Matrix(ring, ranks[0], 0);
    Matrix left = kernel(prev, Side::Left);
    diffs.push_back(sample_matrix(ring, rng, ranks[k + 1], left.rows(), bound) * left);
  }
  if (length <= 0) return Complex(ring, side);
  return Complex(ring, side, lo, std::move(ranks), std::move(diffs));
}

}  // namespace kproj

#include <catch_amalgamated.hpp>

#include <random>

#include "kproj/flatness.hpp"

using namespace kproj;

namespace {
Ring zz = Ring::integers();
Ring z4 = Ring::integers_mod(4);

Complex exact3() {
  return Complex(zz, Side::Left, -1, {1, 2, 1},
                 {Matrix::from_rows(zz, {{1}, {2}}), Matrix::from_rows(zz, {{-2, 1}})});
}

// Multiplication-only recheck, written separately from check_certificate.
bool recheck(const FlatRelation& rel, const FlatCertificate& c) {
  for (std::size_t t = 0; t < c.ast.cols(); ++t) {
    Integer acc = 0;
    for (std::size_t s = 0; s < rel.a.cols(); ++s) acc += rel.a(0, s) * c.ast(s, t);
    if (rel.a.ring().normalize(acc) != 0) return false;
  }
  Matrix lhs = c.sigma * c.q * c.ast.transpose() + rel.target.presentation() * c.witness;
  return lhs == rel.z;
}
}  // namespace

TEST_CASE("flat certificates in free modules") {
  auto c0 = flat_certificate(FlatRelation(Matrix::from_rows(zz, {{0}}), Matrix::from_rows(zz, {{7}})));
  REQUIRE(c0);
  CHECK(c0->ast == Matrix::from_rows(zz, {{1}}));
  CHECK(c0->q == Matrix::from_rows(zz, {{7}}));

  auto c1 = flat_certificate(FlatRelation(Matrix::from_rows(zz, {{1}}), Matrix::from_rows(zz, {{0}})));
  REQUIRE(c1);
  CHECK(c1->ast.cols() == 0);
  CHECK(c1->q.cols() == 0);

  FlatRelation r(Matrix::from_rows(zz, {{2, 3}}), Matrix::from_rows(zz, {{3, -2}}));
  auto c = flat_certificate(r);
  REQUIRE(c);
  CHECK(c->ast == Matrix::from_rows(zz, {{3}, {-2}}));
  CHECK(c->q == Matrix::from_rows(zz, {{1}}));
  // Box search: every (x, y) in [-10, 10]^2 with 2x + 3y = 0 is a multiple of (3, -2).
  for (int x = -10; x <= 10; ++x)
    for (int y = -10; y <= 10; ++y)
      if (2 * x + 3 * y == 0) CHECK((x % 3 == 0 && y == -2 * (x / 3)));
}

TEST_CASE("random free relations certify") {
  std::mt19937 rng(41);
  for (const Ring& ring : {zz, z4, Ring::prime_field(5)}) {
    for (int t = 0; t < 50; ++t) {
      FlatRelation rel = sample_relation(ring, rng, 1 + t % 4, 1 + t % 3);
      REQUIRE(rel.holds());
      auto c = flat_certificate(rel);
      REQUIRE(c);
      CHECK(recheck(rel, *c));
    }
  }
}

TEST_CASE("over F_p every module certifies") {
  Ring f5 = Ring::prime_field(5);
  std::mt19937 rng(43);
  for (int t = 0; t < 30; ++t) {
    FPModule m = sample_module(f5, rng);
    if (m.rank0() == 0) continue;
    // relation: a random, z with z a^T in the relations of m
    Matrix a = sample_matrix(f5, rng, 1, 3, 4);
    Matrix k = kernel(a);
    Matrix z = (k * sample_matrix(f5, rng, k.cols(), m.rank0(), 4)).transpose();
    z = z + m.presentation() * sample_matrix(f5, rng, m.rank1(), 3, 4);
    FlatRelation rel(a, z, m);
    auto c = flat_certificate(rel);
    REQUIRE(c);
    CHECK(recheck(rel, *c));
  }
}

TEST_CASE("non-projective target gives no certificate") {
  FPModule t = FPModule::cyclic(zz, 2);
  FlatRelation rel(Matrix::from_rows(zz, {{2}}), Matrix::from_rows(zz, {{1}}), t);
  REQUIRE(rel.holds());
  CHECK_FALSE(flat_certificate(rel));
}

TEST_CASE("cycle probes") {
  Complex c = exact3();
  // Z^0 is spanned by (1, 2); z_1 = 3 (1, 2), z_2 = -2 (1, 2).
  FlatRelation rel(Matrix::from_rows(zz, {{2, 3}}), Matrix::from_rows(zz, {{3, -2}, {6, -4}}));
  CycleProbe p = cycle_flatness_probe(c, 0, rel);
  INFO(p.failure);
  REQUIRE(p.ok);
  CHECK(check_certificate(rel, *p.certificate));
  CHECK(recheck(rel, *p.certificate));
  CHECK(p.certificate->sigma == c.diff(-1));
  CHECK(c.diff(-1) * *p.lift == rel.z);

  ConeTriangle tri = cone(ChainMap::identity(Complex::single(zz, Side::Left, 1, 0)));
  FlatRelation r2(Matrix::from_rows(zz, {{2}}), Matrix(zz, tri.cone.rank(0), 1));
  CycleProbe p2 = cycle_flatness_probe(tri.cone, 0, r2);
  REQUIRE(p2.ok);
  CHECK(p2.certificate->ast.cols() == 0);

  std::mt19937 rng(47);
  for (int t = 0; t < 10; ++t) {
    std::vector<Complex> parts;
    for (int k = 0; k < 3; ++k) parts.push_back(Complex::two_term(Matrix::identity(zz, 1 + t % 2), k - 2));
    Complex q = finite_coproduct(parts).sum;
    Matrix gens = kernel(q.diff(0));
    Matrix a = sample_matrix(zz, rng, 1, 2, 4);
    Matrix coeff = kernel(a) * sample_matrix(zz, rng, kernel(a).cols(), gens.cols(), 3);
    FlatRelation rr(a, gens * coeff.transpose());
    CycleProbe pp = cycle_flatness_probe(q, 0, rr);
    REQUIRE(pp.ok);
    CHECK(recheck(rr, *pp.certificate));
  }
}

TEST_CASE("periodic Z/4 complex fails the Hom vanishing hypothesis") {
  Complex p(z4, Side::Left, 0, {1, 1}, {Matrix::from_rows(z4, {{2}})}, 1, 1);
  FlatRelation rel(Matrix::from_rows(z4, {{2}}), Matrix::from_rows(z4, {{2}}));
  CycleProbe probe = cycle_flatness_probe(p, 0, rel);
  CHECK_FALSE(probe.ok);
  REQUIRE(probe.obstruction);
  CHECK(structure(probe.obstruction->module) == ModuleStructure{0, {2}});
  CHECK(probe.obstruction_class);

  CollapseVerdict v = pd_bound_collapse(p, EngineConfig::for_ring(z4), {-3, 2});
  CHECK(v.kind == CollapseKind::NotFlat);
}

TEST_CASE("pd bound collapse") {
  std::vector<Complex> parts{Complex::two_term(Matrix::identity(zz, 2), -1),
                             Complex::two_term(Matrix::identity(zz, 1), 0)};
  Complex c = finite_coproduct(parts).sum;
  CollapseVerdict v = pd_bound_collapse(c, EngineConfig{0}, {-3, 3});
  CHECK(v.kind == CollapseKind::Collapsed);
  REQUIRE(v.split);
  REQUIRE(v.split->contraction);
  CHECK_FALSE(v.split->contraction->failure(ChainMap::identity(c), ChainMap::zero(c, c), {-3, 3}));

  Complex bad = Complex::two_term(Matrix::from_rows(zz, {{2}}), -1);
  CHECK(pd_bound_collapse(bad, EngineConfig::for_ring(zz), {-3, 3}).kind == CollapseKind::NotExact);

  CollapseVerdict e = pd_bound_collapse(exact3(), EngineConfig::for_ring(zz), {-2, 2});
  CHECK(e.kind == CollapseKind::Collapsed);
  CHECK(structure(cycle_module(exact3(), 0).module) == ModuleStructure{1, {}});

  CHECK(pd_bound_collapse(exact3(), EngineConfig{16}, {-2, 2}).kind == CollapseKind::WindowTooNarrow);
  CHECK(EngineConfig{}.n == 16);
  CHECK(EngineConfig::for_ring(zz).n == 1);
  CHECK(EngineConfig::for_ring(z4).n == 0);
}

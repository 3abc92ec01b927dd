#include <catch_amalgamated.hpp>

#include <random>

#include "kproj/duality.hpp"
#include "oracle.hpp"

using namespace kproj;

namespace {
Ring zz = Ring::integers();
Ring z4 = Ring::integers_mod(4);
}  // namespace

TEST_CASE("G -> G** on small complexes") {
  CHECK(duality_roundtrip_check(Complex::single(zz, Side::Left, 1, 0), {-2, 2}).pass);
  Complex two = Complex::two_term(Matrix::from_rows(zz, {{2}}), -1);
  CHECK(duality_roundtrip_check(two, {-3, 3}).pass);
  std::mt19937 rng(7);
  for (int k = 0; k < 10; ++k) {
    Complex g = sample_complex(z4, rng, -1, 3);
    Complex h = sample_complex(z4, rng, -1, 3);
    Complex e = sample_complex(z4, rng, -1, 3);
    ChainMap f = sample_chain_map(g, h, rng);
    ChainMap n = sample_chain_map(h, e, rng);
    CHECK(!f.commutation_failure({-3, 3}));
    DualityVerdict v = duality_roundtrip_check(g, {-3, 3}, f, n);
    CHECK(v.pass);
    CHECK(v.natural);
    CHECK(v.functorial);
  }
}

TEST_CASE("kernel of Q^0 -> Q^{-1} is M*") {
  Complex a = Complex::single(zz, Side::Right, 1, 0);
  KernelAsDual k0 = kernel_as_dual(a);
  CHECK(k0.m.rank0() == 0);

  Complex two = Complex::two_term(Matrix::from_rows(zz, {{2}}), -1, Side::Right);
  KernelAsDual k1 = kernel_as_dual(two);
  CHECK(structure(k1.m).to_string(zz) == structure(FPModule::cyclic(zz, 2)).to_string(zz));
  CHECK(k1.mdual.module.rank0() == 0);

  Complex q = Complex::two_term(Matrix::from_rows(zz, {{1, 0}, {2, 0}}), -1, Side::Right);
  KernelAsDual k2 = kernel_as_dual(q);
  CHECK(is_isomorphism(ModuleMap{k2.cycles.module, FPModule::free(zz, 1, Side::Right),
                                 Matrix::identity(zz, 1)}));
  CHECK(k2.cycles.inclusion * k2.iso.matrix == k2.mdual.generators);
}

TEST_CASE("decomposition of small resolutions") {
  BuildTree t0 = decompose_resolution(Complex::single(zz, Side::Right, 2, 0), 3);
  CHECK(t0.root->kind == BuildNode::Kind::FreeLeaf);
  CHECK(t0.free_leaves() == 1);
  CHECK(rebuild_verify(t0, {-3, 0}).pass);

  Complex two = Complex::two_term(Matrix::from_rows(zz, {{2}}), -1, Side::Right);
  BuildTree t1 = decompose_resolution(two, 1);
  CHECK(t1.free_leaves() == 2);
  CHECK(!t1.truncated);
  RebuildVerdict v1 = rebuild_verify(t1, {-3, 0});
  CHECK(v1.pass);
  CHECK(!v1.window_relative);

  Resolution r = resolve(FPModule::cyclic(z4, 2, Side::Right));
  BuildTree t2 = decompose_resolution(r.complex, 3);
  CHECK(t2.truncated);
  RebuildVerdict v2 = rebuild_verify(t2, {-5, 0});
  CHECK(v2.pass);
  CHECK(v2.window_relative);
}

TEST_CASE("L+1 free leaves over Z") {
  std::mt19937 rng(11);
  for (int k = 0; k < 40; ++k) {
    FPModule m = sample_module(zz, rng, 3, 5, Side::Right);
    Resolution r = resolve(m);
    REQUIRE(r.kind == ResolutionKind::Finite);
    BuildTree t = decompose_resolution(r.complex, 4);
    CHECK(!t.truncated);
    // length L of the resolution; the zero module has the empty one, L = -1
    int l = -1;
    for (int j = 0; j >= -r.depth; --j)
      if (r.complex.rank(j) > 0) l = -j;
    INFO("L=" << l << " leaves=" << t.free_leaves());
    CHECK(static_cast<int>(t.free_leaves()) == l + 1);
    CHECK(rebuild_verify(t, {-6, 0}).pass);
  }
}

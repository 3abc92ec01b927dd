#include <catch_amalgamated.hpp>

#include <random>

#include "kproj/hom.hpp"
#include "oracle.hpp"

using namespace kproj;

namespace {

Ring zz = Ring::integers();
Ring z4 = Ring::integers_mod(4);

Matrix random_matrix(const Ring& r, std::mt19937& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> e(-bound, bound);
  Matrix m(r, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, e(rng));
  return m;
}

// Bounded complex with d^j = B L where the rows of L kill im d^{j-1}.
Complex random_complex(const Ring& r, std::mt19937& rng, int lo, int len) {
  std::uniform_int_distribution<int> rk(0, 2);
  std::vector<std::size_t> ranks;
  for (int k = 0; k < len; ++k) ranks.push_back(rk(rng));
  std::vector<Matrix> diffs;
  for (int k = 0; k + 1 < len; ++k) {
    Matrix prev = k ? diffs.back() : Matrix(r, ranks[0], 0);
    Matrix left = kernel(prev, Side::Left);
    diffs.push_back(random_matrix(r, rng, ranks[k + 1], left.rows(), 2) * left);
  }
  return Complex(r, Side::Left, lo, ranks, diffs);
}

}  // namespace

TEST_CASE("Hom out of A in degree 0 is Q") {
  std::mt19937 rng(1);
  for (int t = 0; t < 10; ++t) {
    Complex q = random_complex(zz, rng, -2, 4);
    Complex h = hom_complex(Complex::single(zz, Side::Left, 1, 0), q, {-3, 3});
    for (int n = -3; n <= 3; ++n) {
      CHECK(h.rank(n) == q.rank(n));
      CHECK(h.diff(n - 1) == q.diff(n - 1));
    }
  }
}

TEST_CASE("Hom out of the zero complex vanishes") {
  Complex x(zz, Side::Right);
  Complex q = Complex::two_term(Matrix::from_rows(zz, {{2}}), -1);
  Complex h = hom_complex(x, q, {-2, 2});
  for (int n = -3; n <= 3; ++n) CHECK(h.rank(n) == 0);
}

TEST_CASE("Hom differential squares to zero") {
  std::mt19937 rng(2);
  for (const Ring& r : {zz, z4, Ring::prime_field(5)}) {
    for (int t = 0; t < 10; ++t) {
      Complex x = random_complex(r, rng, -1, 3);
      Complex q = random_complex(r, rng, -2, 4);
      CHECK_NOTHROW(hom_complex(x, q, {-4, 4}));
    }
  }
}

TEST_CASE("H0 of Hom from truncated dual resolution over Z/4") {
  Matrix two = Matrix::from_rows(z4, {{2}});
  Complex pstar(z4, Side::Right, 0, {1, 1, 1, 1}, {two, two, two});
  Complex q = Complex::single(z4, Side::Right, 1, 0);
  HomComplex h(source_of(pstar), q, {-1, 3});
  Subquotient h0 = h.homology(0);
  CHECK(structure(h0.module) == ModuleStructure{0, {2}});
  // Enumeration: chain maps P* -> Q are f0 in Z/4; null-homotopic ones are
  // f0 = s d^0 = 2 s.  Classes = 4 / |{2 s}|.
  std::set<long long> null;
  for (long long s = 0; s < 4; ++s) null.insert(oracle::mod(2 * s, 4));
  CHECK(4 / null.size() == 2);
}

TEST_CASE("H0 of Hom classifies chain maps up to homotopy over F_2") {
  // Small instance: X = (F2^1 -> F2^1) identity-free random, Q random.
  Ring f2 = Ring::prime_field(2);
  std::mt19937 rng(9);
  for (int t = 0; t < 10; ++t) {
    Complex x = random_complex(f2, rng, -1, 2);
    Complex q = random_complex(f2, rng, -1, 2);
    HomComplex h(source_of(x), q, {0, 0});
    // Enumerate all degree-0 families (f^{-1}, f^0), keep chain maps, and
    // count classes modulo s^0: X^0 -> Q^{-1}.
    std::size_t a = q.rank(-1) * x.rank(-1), b = q.rank(0) * x.rank(0);
    std::size_t s = q.rank(-1) * x.rank(0);
    std::set<oracle::Vec> maps, nulls;
    oracle::for_each_vector(a + b, 2, [&](const oracle::Vec& v) {
      Matrix f1(f2, q.rank(-1), x.rank(-1)), f0(f2, q.rank(0), x.rank(0));
      for (std::size_t k = 0; k < a; ++k) f1.set(k / x.rank(-1), k % x.rank(-1), v[k]);
      for (std::size_t k = 0; k < b; ++k) f0.set(k / x.rank(0), k % x.rank(0), v[a + k]);
      if (q.diff(-1) * f1 == f0 * x.diff(-1)) maps.insert(v);
    });
    oracle::for_each_vector(s, 2, [&](const oracle::Vec& v) {
      Matrix s0(f2, q.rank(-1), x.rank(0));
      for (std::size_t k = 0; k < s; ++k) s0.set(k / x.rank(0), k % x.rank(0), v[k]);
      Matrix f1 = s0 * x.diff(-1), f0 = q.diff(-1) * s0;
      oracle::Vec w;
      for (auto& e : f1.data()) w.push_back(static_cast<long long>(e));
      for (auto& e : f0.data()) w.push_back(static_cast<long long>(e));
      nulls.insert(w);
    });
    for (const auto& n : nulls) CHECK(maps.count(n));
    auto st = structure(h.homology(0).module);
    std::size_t order = 1;
    for (std::size_t k = 0; k < st.free_rank; ++k) order *= 2;
    CHECK(st.torsion.empty());
    CHECK(order == maps.size() / nulls.size());
  }
}

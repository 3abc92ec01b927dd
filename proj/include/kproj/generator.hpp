#pragma once

#include <random>
#include <string>
#include <vector>

#include "kproj/hom.hpp"

namespace kproj {

enum class ResolutionKind { Finite, Periodic, Truncated };
std::string to_string(ResolutionKind k);

/// Free resolution of a module M, in degrees <= 0: P^0 = A^rank0,
/// d^{-1} = presentation, d^{-k-1} = kernel(d^{-k}).  Kernels are
/// deterministic, so a repeated differential certifies a periodic tail.
struct Resolution {
  Complex complex;
  ResolutionKind kind;
  int depth;  // differentials computed
};
Resolution resolve(const FPModule& m, int max_depth = 12);

/// M, M*, a resolution P of M* with pi: P -> M*, mu: M -> M**, P* and the
/// comparison pi* mu: M -> P* (degree 0 component).
struct GeneratorPackage {
  FPModule m;
  DualModule mdual;
  Resolution p;
  ModuleMap pi0;  // P^0 -> M*
  ModuleMap mu;   // M -> M**
  Complex pstar;
  Matrix comparison;  // rank P*^0 x rank0(M)
  /// True when verdicts beyond the computed depth are only window-relative.
  bool window_relative() const { return p.kind == ResolutionKind::Truncated; }
};
GeneratorPackage build_generator(const FPModule& m, int max_depth = 12);

/// Components of the canonical p: P -> P** (identity matrices on free terms,
/// computed through the double-dual map of each term).
ChainMap double_dual_comparison(const Complex& p);

struct QuasiIsoVerdict {
  bool pass = false;
  Window window;
  bool window_relative = false;
  std::vector<int> non_exact;     // degrees where Hom(cone(pi* mu), Q) has homology
  bool resolution_exact = false;  // H^{<0} P = 0 and H^0 P -> M* iso, in window
  bool p_isomorphism = false;
  bool double_dual_quasi_iso = false;  // mu* pi** : P** -> M*
  std::string detail;
};

/// Checks of the comparison map and of the resolution itself.
QuasiIsoVerdict verify_generator_quasi_iso(const GeneratorPackage& pkg, const Complex& q, const Window& w);
/// Only the resolution-side checks (pi, p, mu* pi**).
QuasiIsoVerdict verify_resolution(const GeneratorPackage& pkg, const Window& w);

struct HomEquivalence {
  bool pass = false;
  Subquotient classes;    // H^0 Hom(P*, Q)
  Subquotient module_side;  // H^0 Hom(M, Q)
  ModuleMap map;          // induced by the comparison
  /// For M = A: i -> (H^0 Hom(Sigma^i P*, Q) ~ H^{-i} Q verified).
  std::map<int, bool> suspension_checks;
  std::string detail;
};
HomEquivalence h0_hom_equivalence(const GeneratorPackage& pkg, const Complex& q, const Window& w);

/// H^0 Hom(Sigma^i P*, Q) -> H^{-i} Q for P* = A in degree 0, as a verified
/// isomorphism (nullopt if it fails).
std::optional<ModuleMap> suspension_identification(const GeneratorPackage& pkg, const Complex& q, int i);

/// Finite probe of compactness: the canonical map
/// (+)_k H^0 Hom(P*, Q_k) -> H^0 Hom(P*, (+)_k Q_k) is an isomorphism for
/// the given family.  Says nothing about infinite families.
struct CompactnessVerdict {
  bool pass = false;
  std::vector<ModuleStructure> parts;
  ModuleStructure total;
  std::string detail;
};
CompactnessVerdict compactness_probe(const GeneratorPackage& pkg, const std::vector<Complex>& qs);

// Samplers: generators are produced on demand from random or given M.
FPModule sample_module(const Ring& ring, std::mt19937& rng, std::size_t max_rank = 3, int bound = 5,
                       Side side = Side::Left);
/// Random bounded complex of frees on [lo, lo + length - 1], ranks <= max_rank.
Complex sample_complex(const Ring& ring, std::mt19937& rng, int lo, int length, std::size_t max_rank = 2,
                       int bound = 3, Side side = Side::Left);
Matrix sample_matrix(const Ring& ring, std::mt19937& rng, std::size_t rows, std::size_t cols, int bound);

}  // namespace kproj

#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kproj/generator.hpp"

namespace kproj {

/// Uniform projective-dimension bound for flat modules.
struct EngineConfig {
  int n = 16;
  /// 1 over Z, 0 over Z/n and F_p.
  static EngineConfig for_ring(const Ring& ring);
};

/// sum_s a_s z_s = 0 in `target`.  a is 1 x m; z has one column per z_s in
/// target generator coordinates.
struct FlatRelation {
  Matrix a;
  Matrix z;
  FPModule target;

  FlatRelation(Matrix a, Matrix z);  // free target
  FlatRelation(Matrix a, Matrix z, FPModule target);
  bool holds() const;
};

/// z_s = sum_t a_st sigma(q_t) (+ relations of the target), a a_st = 0.
struct FlatCertificate {
  Matrix ast;      // m x n
  Matrix q;        // columns q_t
  Matrix sigma;    // map from the module of q into the target (identity if direct)
  Matrix witness;  // z - sigma q ast^T = R witness, R the target presentation
};

/// Checks both certificate equations by matrix multiplication only.
bool check_certificate(const FlatRelation& rel, const FlatCertificate& cert);

/// Always succeeds for free (and more generally projective) targets; nullopt
/// when the target is not projective.  Throws std::logic_error if a produced
/// certificate fails its own check.
std::optional<FlatCertificate> flat_certificate(const FlatRelation& rel);

/// Relation with random a and z chosen in the kernel of a.
FlatRelation sample_relation(const Ring& ring, std::mt19937& rng, std::size_t m, std::size_t rank, int bound = 5);

struct CycleProbe {
  bool ok = false;
  std::optional<FlatCertificate> certificate;
  std::optional<Matrix> lift;  // f: M -> Q^{j-1}, one column per z_s
  FPModule span_module{Matrix(Ring::integers())};  // M = A z_1 + ... + A z_m
  std::optional<Subquotient> obstruction;  // nonzero H^0 Hom(M, Sigma^j Q)
  std::optional<Matrix> obstruction_class;  // ambient representative
  std::string failure;
};

/// Certificate for a relation among cycles z_s in Z^j Q (z in Q^j
/// coordinates).  Confirms H^0 Hom(M, Sigma^j Q) = 0 for the generator
/// package of M first, then lifts through sigma = d^{j-1}.
CycleProbe cycle_flatness_probe(const Complex& q, int j, const FlatRelation& rel);

enum class CollapseKind { Collapsed, WindowTooNarrow, NotExact, NotFlat, NotProjective };
std::string to_string(CollapseKind k);

struct CollapseVerdict {
  CollapseKind kind;
  std::optional<int> degree;
  std::vector<FlatCertificate> certificates;
  std::optional<FPModule> counterexample;
  std::optional<SplitVerdict> split;
  std::string detail;
};

/// Dimension shifting along 0 -> Z^j -> Q^j -> ... -> Z^{j+N} -> 0 in the
/// window, then projectivity of each cycle and the contraction.
CollapseVerdict pd_bound_collapse(const Complex& q, const EngineConfig& config, const Window& w);

}  // namespace kproj

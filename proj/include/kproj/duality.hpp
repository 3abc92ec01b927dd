#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kproj/generator.hpp"

namespace kproj {

struct DualityVerdict {
  bool pass = false;
  bool components_invertible = false;
  bool chain_map = false;
  bool natural = true;      // p_Y f = f** p_X for the supplied map
  bool functorial = true;   // (g f)* = f* g* for the supplied pair
  std::optional<int> degree;  // first failing degree
  std::string detail;
};

/// G -> G** is an isomorphism of complexes in the window; with test maps,
/// also naturality of the canonical map and (g f)* = f* g*.
DualityVerdict duality_roundtrip_check(const Complex& g, const Window& w,
                                       const std::optional<ChainMap>& f = std::nullopt,
                                       const std::optional<ChainMap>& next = std::nullopt);

/// M = coker(Q^{0*} -> Q^{-1*}) and M* -> Z^{-1} Q.  Both sides are generated
/// by ker d^{-1}; iso is found by solving against the inclusion.
struct KernelAsDual {
  FPModule m;
  DualModule mdual;
  CycleModule cycles;  // Z^{-1} Q
  ModuleMap iso;       // M* -> Z^{-1} Q
};
KernelAsDual kernel_as_dual(const Complex& q);

/// Finite-build grammar.  Every node carries the complex it evaluates to.
struct BuildNode;
using BuildPtr = std::shared_ptr<const BuildNode>;

/// Data of one peeling step Q = cone(Sigma^1 E_child -> sigma_{>=-1} Q).
struct LevelData {
  Complex target;   // the resolution Q decomposed here
  KernelAsDual dual;
  Complex child_resolution;  // resolution of M* (generator form), empty if M* = 0
};

struct BuildNode {
  enum class Kind { FreeLeaf, TailLeaf, Suspension, Cone };
  Kind kind;
  Complex value;
  int shift = 0;                 // Suspension
  std::vector<BuildPtr> children;  // Suspension: {child}; Cone: {source, target}
  Graded<Matrix> map;            // Cone: components source -> target
  std::shared_ptr<const LevelData> level;  // set on the cone closing a level
};

std::string to_string(BuildNode::Kind k);

struct BuildTree {
  BuildPtr root;
  Complex target;
  int depth;
  bool truncated;  // a tail leaf stands in for the rest of the resolution
  std::size_t free_leaves() const;
  std::size_t tail_leaves() const;
};

/// Resolution Q of a right module, degrees <= 0.  Each level peels Q^0 and
/// Q^{-1} as leaves and recurses into a resolution of Z^{-1} Q, identified
/// with M* by kernel_as_dual.  At depth 0 the remaining resolution becomes a
/// tail leaf.
BuildTree decompose_resolution(const Complex& q, int depth);

struct Equivalence {
  Complex built;
  Complex target;
  ChainMap to_target;    // built -> target
  ChainMap from_target;  // target -> built
  Homotopy on_target;    // id - to from = d s + s d
  Homotopy on_built;     // id - from to = d s + s d
};

struct RebuildVerdict {
  bool pass = false;
  Window window;
  bool window_relative = false;
  std::optional<Equivalence> equivalence;
  std::optional<int> degree;
  std::string detail;
};

/// Evaluates the tree and certifies built ~ target on the window by explicit
/// maps and homotopies.
RebuildVerdict rebuild_verify(const BuildTree& tree, const Window& w);

/// Chain map f: X -> Y on degrees [lowest, 0] with f^j obtained downward
/// from f^0, for Y exact below degree 0.  f^{-1} is taken from `seed` when it
/// fits.  nullopt when a lift fails.
std::optional<ChainMap> lift_downward(const Complex& x, const Complex& y, const Matrix& f0, int lowest,
                                      const std::optional<Matrix>& seed = std::nullopt);
/// s with f - g = d s + s d on degrees [lowest, 0], solved from the top.
std::optional<Homotopy> homotopy_downward(const ChainMap& f, const ChainMap& g, int lowest);

/// Random chain map X -> Y between bounded complexes: a combination of
/// generators of the degree-0 cycles of Hom(X, Y).
ChainMap sample_chain_map(const Complex& x, const Complex& y, std::mt19937& rng, int bound = 3);

}  // namespace kproj

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kproj/linalg.hpp"
#include "kproj/matrix.hpp"

namespace kproj {

/// A finitely presented module: the cokernel of a presentation matrix
/// Q1 = A^rank1 -> Q0 = A^rank0.  Elements are columns of length rank0; the
/// same column orientation is used for left and right modules.
class FPModule {
 public:
  explicit FPModule(Matrix presentation, Side side = Side::Left)
      : presentation_(std::move(presentation)), side_(side) {}

  static FPModule free(Ring ring, std::size_t rank, Side side = Side::Left) {
    return FPModule(Matrix(ring, rank, 0), side);
  }
  static FPModule zero(Ring ring, Side side = Side::Left) { return free(ring, 0, side); }
  /// A / (d).
  static FPModule cyclic(Ring ring, const Integer& d, Side side = Side::Left);

  const Ring& ring() const { return presentation_.ring(); }
  Side side() const { return side_; }
  const Matrix& presentation() const { return presentation_; }
  std::size_t rank0() const { return presentation_.rows(); }
  std::size_t rank1() const { return presentation_.cols(); }

  /// True when every column of v is zero in the module.
  bool is_zero(const Matrix& v) const;

  friend bool operator==(const FPModule&, const FPModule&) = default;

 private:
  Matrix presentation_;
  Side side_;
};

/// Homomorphism given by its action on generators: matrix is
/// target.rank0() x source.rank0().
struct ModuleMap {
  FPModule source;
  FPModule target;
  Matrix matrix;

  /// Relations of the source are carried into relations of the target.
  bool is_well_defined() const;
};

ModuleMap identity_map(const FPModule& m);
ModuleMap zero_map(const FPModule& source, const FPModule& target);
/// g after f.
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
/// Equal as homomorphisms (matrices agree modulo target relations).
bool maps_equal(const ModuleMap& f, const ModuleMap& g);

/// Span of the columns of `generators` inside a free module, presented by
/// their syzygies.
FPModule submodule(const Matrix& generators, Side side);

/// span(Z) / span(B) for B inside span(Z), with the chosen generators.
struct Subquotient {
  FPModule module;
  Matrix generators;  // ambient columns: generator k of the module
};
Subquotient subquotient(const Matrix& z, const Matrix& b, Side side);

/// M* = Hom(M, A) as a submodule of Q0* = A^rank0, on the opposite side.
struct DualModule {
  FPModule module;
  Matrix generators;  // rank0 x g: functionals y with y^T R = 0
};
DualModule dualize_module(const FPModule& m);

/// f: M -> N gives f*: N* -> M*.
ModuleMap dualize_map(const ModuleMap& f);

/// Evaluation map M -> M**.
ModuleMap canonical_double_dual_map(const FPModule& m);

/// A section s of the projection Q0 -> M (so M is a summand of Q0), or
/// nullopt when M is not projective.  Over these rings a finitely presented
/// flat module is projective, so this also decides flatness.
std::optional<ModuleMap> is_projective(const FPModule& m);

struct ProjectiveDimension {
  std::optional<int> value;  // nullopt: exceeds bound
  int bound;
};
ProjectiveDimension projective_dimension(const FPModule& m, int bound = 16);

/// Inverse of f when f is an isomorphism.
std::optional<ModuleMap> is_isomorphism(const ModuleMap& f);

/// Invariant-factor description, for reporting and test assertions only;
/// isomorphisms are always exhibited as verified maps.
struct ModuleStructure {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // d_1 | d_2 | ..., units and free parts removed
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string(const Ring& ring) const;
  friend bool operator==(const ModuleStructure&, const ModuleStructure&) = default;
};
ModuleStructure structure(const FPModule& m);

/// Isomorphism onto the diagonal module of its invariant factors.
struct CanonicalForm {
  FPModule canonical;
  ModuleMap to;    // M -> canonical
  ModuleMap from;  // canonical -> M
};
CanonicalForm canonical_form(const FPModule& m);

/// Mutually inverse maps M -> N, N -> M, both verified, or nullopt.
std::optional<std::pair<ModuleMap, ModuleMap>> find_isomorphism(const FPModule& m, const FPModule& n);

}  // namespace kproj

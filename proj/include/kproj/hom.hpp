#pragma once

#include <functional>
#include <map>
#include <vector>

#include "kproj/complex.hpp"

namespace kproj {

/// Source of a Hom complex: a complex whose terms may be finitely presented
/// rather than free.  term(i) presents X^i, diff(i) acts on generators.
struct HomSource {
  Ring ring;
  Side side;
  std::optional<int> lower;  // terms vanish below this degree
  std::optional<int> upper;  // terms vanish above this degree
  std::function<FPModule(int)> term;
  std::function<Matrix(int)> diff;
};

HomSource source_of(const Complex& x);
/// M concentrated in one degree.
HomSource source_of(const FPModule& m, int degree = 0);
/// cone(M[0] -c-> Y): cone^j = M^{j+1} (+) Y^j, so M joins degree -1 and
/// d^{-1} = [[0, 0], [c, d_Y^{-1}]].
HomSource module_cone(const FPModule& m, const Complex& y, const Matrix& c);

/// Block of Hom^n: maps X^i -> Q^{i+n}, stored row-major at `offset`.
struct HomBlock {
  int i;
  std::size_t offset;
  std::size_t rows;  // rank Q^{i+n}
  std::size_t cols;  // generators of X^i
};

/// Hom^n(X, Q) = prod_i Hom(X^i, Q^{i+n}) as a submodule of a free ambient
/// module, with (D f)_i = d_Q f_i - (-1)^n f_{i+1} d_X^i.  Terms are built
/// for n in [w.lo - 1, w.hi + 1], so homology is exact on w.  Each degree
/// must get finitely many blocks: X and Q bounded on opposite sides (or one
/// of them bounded on both), else WindowError.
class HomComplex {
 public:
  HomComplex(const HomSource& x, const Complex& q, const Window& w);

  const Ring& ring() const { return ring_; }
  const Window& window() const { return window_; }
  std::size_t ambient_rank(int n) const;
  /// Columns spanning Hom^n inside the ambient module.
  Matrix generators(int n) const;
  /// Ambient differential Hom^n -> Hom^{n+1}.
  Matrix diff(int n) const;
  const std::vector<HomBlock>& layout(int n) const;

  Subquotient homology(int n) const;
  bool exact_at(int n) const;
  std::optional<int> first_non_exact() const;

  /// Ambient vector of the degree-n element with the given components.
  Matrix element(int n, const std::function<Matrix(int)>& component) const;
  /// Components f_i of an ambient column.
  std::map<int, Matrix> components(int n, const Matrix& v) const;

 private:
  void require(int n) const;
  Ring ring_;
  Window window_;
  std::map<int, std::vector<HomBlock>> layout_;
  std::map<int, std::size_t> ambient_;
  std::map<int, Matrix> generators_;
  std::map<int, Matrix> diffs_;
};

/// Hom complex of a complex of frees into Q, as an ordinary complex bounded
/// on [w.lo - 1, w.hi + 1].
Complex hom_complex(const Complex& x, const Complex& q, const Window& w);

/// Ambient matrix of f |-> f phi from Hom^n(X, Q) to Hom^n(X', Q), where
/// phi(i): X'^i -> X^i.
Matrix precompose(const HomComplex& from, const HomComplex& to, int n, const std::function<Matrix(int)>& phi);
/// Ambient matrix of f |-> g f from Hom^n(X, Q) to Hom^n(X, Q'), g(j): Q^j -> Q'^j.
Matrix postcompose(const HomComplex& from, const HomComplex& to, int n, const std::function<Matrix(int)>& g);

struct InducedMap {
  Subquotient source;
  Subquotient target;
  ModuleMap map;
};
/// Map on H^n induced by an ambient chain map.
InducedMap induced_on_homology(const HomComplex& from, const HomComplex& to, int n, const Matrix& ambient);

}  // namespace kproj

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kproj/module.hpp"

namespace kproj {

/// A closed degree interval [lo, hi].
struct Window {
  int lo = 0;
  int hi = 0;
  bool contains(int j) const { return lo <= j && j <= hi; }
  friend bool operator==(const Window&, const Window&) = default;
};

class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invariant violation in a complex or chain map (e.g. d^{j+1} d^j != 0).
class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Values on an explicit degree region [lo, hi], extended below lo with
/// period `lower_period` and above hi with period `upper_period` (0 = the
/// value is absent there).  For j < lo the value at j equals the value at
/// j + k * lower_period for the least k landing in the region; dually above.
template <class T>
class Graded {
 public:
  Graded() = default;
  Graded(int lo, std::vector<T> values, int lower_period = 0, int upper_period = 0)
      : lo_(lo), values_(std::move(values)), lower_(lower_period), upper_(upper_period) {}

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(values_.size()) - 1; }
  int lower_period() const { return lower_; }
  int upper_period() const { return upper_; }
  bool empty() const { return values_.empty(); }
  const std::vector<T>& values() const { return values_; }

  std::optional<int> resolve(int j) const {
    if (values_.empty()) return std::nullopt;
    if (j < lo_) {
      if (!lower_) return std::nullopt;
      int k = (lo_ - j + lower_ - 1) / lower_;
      return j + k * lower_;
    }
    if (j > hi()) {
      if (!upper_) return std::nullopt;
      int k = (j - hi() + upper_ - 1) / upper_;
      return j - k * upper_;
    }
    return j;
  }
  const T* at(int j) const {
    auto r = resolve(j);
    return r ? &values_[static_cast<std::size_t>(*r - lo_)] : nullptr;
  }

 private:
  int lo_ = 0;
  std::vector<T> values_;
  int lower_ = 0;
  int upper_ = 0;
};

/// Extent of graded data: explicit region plus tail periods.
struct Span {
  int lo = 0;
  int hi = -1;
  int lower_period = 0;
  int upper_period = 0;
  bool empty() const { return hi < lo && !lower_period && !upper_period; }
  bool bounded() const { return !lower_period && !upper_period; }
};

/// Smallest span on which data assembled pointwise from the inputs is
/// explicit, with tails of period lcm(...) wherever an input has a tail.
Span combine_spans(const std::vector<Span>& spans);

/// Cochain complex of finite-rank free modules, cohomologically indexed:
/// d^j maps term j to term j+1 and is a rank(j+1) x rank(j) matrix.
///
/// Bounded complexes keep an explicit degree region; infinite complexes are
/// eventually periodic, which is the only lazy tail supported.  Lookups are
/// pure functions of immutable data, so concurrent readers always observe the
/// same matrices.
class Complex {
 public:
  Complex(Ring ring, Side side) : ring_(ring), side_(side) {}

  /// Terms in degrees lo .. lo + ranks.size() - 1; diffs[k] is d^{lo+k} and
  /// there must be ranks.size() - 1 of them.  Validated on construction.
  Complex(Ring ring, Side side, int lo, std::vector<std::size_t> ranks, std::vector<Matrix> diffs,
          int lower_period = 0, int upper_period = 0);

  using RankFn = std::function<std::size_t(int)>;
  using DiffFn = std::function<Matrix(int)>;
  static Complex from_function(Ring ring, Side side, const Span& span, const RankFn& rank, const DiffFn& diff);

  /// Free module of the given rank concentrated in one degree.
  static Complex single(Ring ring, Side side, std::size_t rank, int degree = 0);
  /// Two-term complex: d placed as the differential out of `degree`.
  static Complex two_term(const Matrix& d, int degree, Side side = Side::Left);

  const Ring& ring() const { return ring_; }
  Side side() const { return side_; }
  Span span() const;
  bool is_bounded() const { return span().bounded(); }
  int lo() const { return ranks_.lo(); }
  int hi() const { return ranks_.hi(); }
  int lower_period() const { return ranks_.lower_period(); }
  int upper_period() const { return ranks_.upper_period(); }

  std::size_t rank(int j) const;
  Matrix diff(int j) const;

  /// Degrees that certify all of the complex: the explicit region widened by
  /// two periods on each tail side.
  Window certifying_window() const;

  /// Checks shapes and d^{j+1} d^j = 0 in the window; throws ComplexError
  /// naming the offending product.
  void validate(const Window& w) const;

  friend bool operator==(const Complex& a, const Complex& b);

 private:
  Ring ring_;
  Side side_;
  Graded<std::size_t> ranks_;
  Graded<Matrix> diffs_;  // region [lo, hi-1]
};

/// Degreewise maps; components outside the explicit region are zero unless a
/// tail repeats them.
class ChainMap {
 public:
  ChainMap(Complex source, Complex target, Graded<Matrix> components = {});
  using ComponentFn = std::function<Matrix(int)>;
  static ChainMap from_function(const Complex& source, const Complex& target, const Span& span,
                                const ComponentFn& component);
  static ChainMap identity(const Complex& c);
  static ChainMap zero(const Complex& source, const Complex& target);

  const Complex& source() const { return source_; }
  const Complex& target() const { return target_; }
  Span span() const;
  Matrix at(int j) const;

  /// First degree in the window where d f != f d, if any.
  std::optional<int> commutation_failure(const Window& w) const;

 private:
  Complex source_;
  Complex target_;
  Graded<Matrix> components_;
};

ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap operator-(const ChainMap& f, const ChainMap& g);
ChainMap operator+(const ChainMap& f, const ChainMap& g);

/// s^j: source^j -> target^{j-1} witnessing f - g = d s + s d.
class Homotopy {
 public:
  Homotopy(Complex source, Complex target, Graded<Matrix> components = {});
  const Complex& source() const { return source_; }
  const Complex& target() const { return target_; }
  Matrix at(int j) const;
  Span span() const;
  /// f - g - (d s + s d) at degree j.
  Matrix defect(const ChainMap& f, const ChainMap& g, int j) const;
  /// First degree in the window where the homotopy identity fails.
  std::optional<int> failure(const ChainMap& f, const ChainMap& g, const Window& w) const;

 private:
  Complex source_;
  Complex target_;
  Graded<Matrix> components_;
};

// ---------------------------------------------------------------------------
// Elementary constructions.  Sign conventions (fixed once, used everywhere):
//   (Sigma^i C)^j = C^{j+i}, d_{Sigma^i C} = (-1)^i d_C, (Sigma^i f)^j = f^{j+i};
//   cone(f: X -> Y)^j = X^{j+1} (+) Y^j with d = [[-d_X, 0], [f, d_Y]];
//   (C*)^j = (C^{-j})*, d_{C*}^j = (d_C^{-j-1})^T, (f*)^j = (f^{-j})^T.
// ---------------------------------------------------------------------------

Complex suspend(const Complex& c, int i);
ChainMap suspend(const ChainMap& f, int i);

struct ConeTriangle {
  Complex cone;
  ChainMap inclusion;   // Y -> cone(f)
  ChainMap projection;  // cone(f) -> Sigma X
};
ConeTriangle cone(const ChainMap& f);

struct Coproduct {
  Complex sum;
  std::vector<ChainMap> inclusions;
  std::vector<ChainMap> projections;
};
Coproduct finite_coproduct(const std::vector<Complex>& parts);

Complex dualize(const Complex& c);
ChainMap dualize(const ChainMap& f);

/// Brutal truncation to the window (terms outside set to zero); always bounded.
Complex truncate(const Complex& c, const Window& w);

// ---------------------------------------------------------------------------
// Homology and cycles.
// ---------------------------------------------------------------------------

/// H^j = ker d^j / im d^{j-1}, with cycle representatives as generators.
Subquotient homology(const Complex& c, int j);

struct CycleModule {
  FPModule module;              // Z^j presented by the syzygies of its generators
  Matrix inclusion;             // rank(j) x g, generators of ker d^j
  std::optional<Matrix> sigma;  // g x rank(j-1) with inclusion * sigma = d^{j-1}, when exact at j
};
CycleModule cycle_module(const Complex& c, int j);

/// Every H^j in the window vanishes; returns the first degree where it fails.
std::optional<int> first_non_exact_degree(const Complex& c, const Window& w);

/// s with f = d s + s d.  Bounded inputs are solved as one linear system over
/// the window (which must contain their support); eventually periodic inputs
/// are solved for a periodic s, which certifies every degree.
std::optional<Homotopy> null_homotopy_witness(const ChainMap& f, const Window& w);
/// Null-homotopy of the identity of c.
std::optional<Homotopy> contraction(const Complex& c, const Window& w);

enum class SplitKind { SplitExact, ExactNotSplit, NotExact };
std::string to_string(SplitKind k);

struct SplitVerdict {
  SplitKind kind;
  Window window;            // degrees where id = d s + s d is certified
  bool window_relative;     // true when the complex extends past the window
  std::optional<int> degree;              // failure degree
  std::optional<FPModule> cycle;          // non-projective cycle module
  std::map<int, Matrix> sections;         // t_{j}: Z^{j+1} -> C^j, rank(j) x g_{j+1}
  std::optional<Homotopy> contraction;    // s with id = d s + s d on the window
};

/// Exactness, then projectivity of each cycle module, then a contraction
/// assembled from the splittings.  Exactness and cycles are examined on
/// [w.lo, w.hi + 2], the range the identity on w depends on.
SplitVerdict split_exactness_check(const Complex& c, const Window& w);

}  // namespace kproj

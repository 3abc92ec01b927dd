#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace kproj {

using Integer = boost::multiprecision::cpp_int;

/// Thrown when operands live over different rings.
class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when matrix shapes do not compose.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class RingKind { Integers, IntegersModulo, PrimeField };

/// Which side a module (or a linear system) lives on.  All supported rings
/// are commutative, so the tag is bookkeeping that keeps dualization typed.
enum class Side { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
std::string to_string(Side s);

/// One of the supported coherent rings: Z, Z/n (n >= 2) or F_p (p prime).
///
/// Elements are Integers held in canonical form: any integer over Z, and a
/// residue in [0, n) over Z/n and F_p.  Every ring here is coherent and has
/// flat modules of finite projective dimension (Z is hereditary, Z/n and F_p
/// are perfect).
class Ring {
 public:
  static Ring integers() { return Ring(RingKind::Integers, 0); }
  static Ring integers_mod(std::int64_t n);
  static Ring prime_field(std::int64_t p);

  RingKind kind() const { return kind_; }
  /// 0 over Z.
  std::int64_t modulus() const { return modulus_; }
  bool is_integers() const { return kind_ == RingKind::Integers; }
  bool is_field() const { return kind_ == RingKind::PrimeField; }

  Integer normalize(const Integer& a) const;
  Integer add(const Integer& a, const Integer& b) const { return normalize(a + b); }
  Integer sub(const Integer& a, const Integer& b) const { return normalize(a - b); }
  Integer mul(const Integer& a, const Integer& b) const { return normalize(a * b); }
  Integer neg(const Integer& a) const { return normalize(-a); }
  bool is_unit(const Integer& a) const;

  /// "Z", "Z/4", "F_5".
  std::string name() const;

  /// Known bound on the projective dimension of flat modules (0 over the
  /// perfect rings, 1 over Z).
  int flat_dimension_bound() const { return is_integers() ? 1 : 0; }

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  Ring(RingKind kind, std::int64_t modulus) : kind_(kind), modulus_(modulus) {}
  RingKind kind_;
  std::int64_t modulus_;
};

void require_same_ring(const Ring& a, const Ring& b, const char* where);

/// Extended Euclid over Z: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
Integer extended_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t);

/// Floor division for Integers (cpp_int truncates toward zero).
Integer floor_div(const Integer& a, const Integer& b);

}  // namespace kproj

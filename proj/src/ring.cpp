#include "kproj/ring.hpp"

namespace kproj {

std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

namespace {
bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}
}  // namespace

Ring Ring::integers_mod(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("Z/n requires n >= 2, got " + std::to_string(n));
  return Ring(RingKind::IntegersModulo, n);
}

Ring Ring::prime_field(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("F_p requires p prime, got " + std::to_string(p));
  return Ring(RingKind::PrimeField, p);
}

Integer Ring::normalize(const Integer& a) const {
  if (kind_ == RingKind::Integers) return a;
  Integer r = a % modulus_;
  if (r < 0) r += modulus_;
  return r;
}

bool Ring::is_unit(const Integer& a) const {
  if (kind_ == RingKind::Integers) return a == 1 || a == -1;
  Integer s, t;
  return extended_gcd(normalize(a), Integer(modulus_), s, t) == 1;
}

std::string Ring::name() const {
  switch (kind_) {
    case RingKind::Integers:
      return "Z";
    case RingKind::IntegersModulo:
      return "Z/" + std::to_string(modulus_);
    case RingKind::PrimeField:
      return "F_" + std::to_string(modulus_);
  }
  return "?";
}

void require_same_ring(const Ring& a, const Ring& b, const char* where) {
  if (!(a == b)) throw RingMismatch(std::string(where) + ": ring mismatch (" + a.name() + " vs " + b.name() + ")");
}

Integer extended_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

}  // namespace kproj

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace twa {

/// Deterministic trial-division primality test; enough for machine-word moduli.
inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t q = 3; q * q <= p; q += 2)
    if (p % q == 0) return false;
  return true;
}

/// GF(p) with elements stored as canonical residues in [0, p).
///
/// The modulus is a runtime value carried by the field object so the same
/// templated linear algebra serves every characteristic.  p is restricted to
/// 31 bits so that products of residues fit into uint64_t without overflow.
class GFp {
public:
  using Element = std::uint64_t;

  explicit GFp(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("GFp: modulus " + std::to_string(p) + " is not prime");
    if (p >> 31) throw std::invalid_argument("GFp: modulus does not fit in 31 bits");
  }

  std::uint64_t characteristic() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1 % p_; }

  /// Canonical image of an integer (the "bar" map).
  Element from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<Element>(r);
  }

  Element add(Element a, Element b) const {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return (a * b) % p_; }

  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("GFp: division by zero");
    // Fermat: a^(p-2) mod p.
    Element r = one(), base = a;
    std::uint64_t e = p_ - 2;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  bool is_zero(Element a) const { return a == 0; }
  bool equal(Element a, Element b) const { return a == b; }
  std::string str(Element a) const { return std::to_string(a); }

private:
  std::uint64_t p_;
};

/// The rationals with arbitrary-precision arithmetic (characteristic 0).
/// mpq_class keeps values canonicalised, so equality is exact comparison.
class Rationals {
public:
  using Element = mpq_class;

  std::uint64_t characteristic() const { return 0; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long long v) const { return Element(static_cast<long>(v)); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw std::domain_error("Rationals: division by zero");
    return 1 / a;
  }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool equal(const Element& a, const Element& b) const { return cmp(a, b) == 0; }
  std::string str(const Element& a) const { return a.get_str(); }
};

}  // namespace twa

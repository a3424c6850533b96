#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "exh/errors.hpp"

namespace exh {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Largest prime below 2^31; the default sampling modulus.
inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

namespace detail {

inline std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  // mod < 2^32, so 64-bit products never overflow.
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = r * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for p < 2^32 (witnesses 2, 7, 61).
inline bool is_prime_u32(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 32)) throw ConstraintError("modulus must be below 2^32");
  if (p < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 61ULL})
    if (p % q == 0) return p == q;
  std::uint64_t d = p - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2ULL, 7ULL, 61ULL}) {
    std::uint64_t x = detail::pow_mod_u64(a, d, p);
    if (x == 1 || x == p - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = x * x % p;
      if (x == p - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// The prime field F_p for an odd prime p < 2^32. Elements are raw residues;
/// the field object owns the modulus and performs all arithmetic. Charac-
/// teristic 2 is rejected: the skew-rank parity argument needs odd p.
class PrimeField {
 public:
  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime_u32(p) || p == 2) throw ConstraintError("modulus must be an odd prime below 2^32");
  }

  std::uint64_t modulus() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem add(Elem a, Elem b) const { return (a + b) % p_; }
  Elem sub(Elem a, Elem b) const { return (a + p_ - b) % p_; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return a * b % p_; }

  Elem inv(Elem a) const {
    if (a == 0) throw ConstraintError("inversion of zero");
    return detail::pow_mod_u64(a, p_ - 2, p_);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem from_integer(const BigInt& z) const {
    BigInt r = z % p_;
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }

  Elem from_int(long long z) const { return from_integer(BigInt(z)); }

  std::string str(Elem a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// Arbitrary-precision rationals; no rounding anywhere.
class RationalField {
 public:
  using Elem = BigRational;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  bool is_zero(const Elem& a) const { return a == 0; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }

  Elem inv(const Elem& a) const {
    if (a == 0) throw ConstraintError("inversion of zero");
    return 1 / a;
  }

  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  Elem from_integer(const BigInt& z) const { return Elem(z); }
  Elem from_int(long long z) const { return Elem(z); }

  std::string str(const Elem& a) const { return a.str(); }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

template <class F>
void require_same_field(const F& a, const F& b) {
  if (!(a == b)) throw ConstraintError("field mismatch");
}

}  // namespace exh

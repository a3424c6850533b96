#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "exh/errors.hpp"

namespace exh {

/// Monomials are bit masks in one machine word, which caps the ambient
/// variable count.
inline constexpr int kMaxVars = 62;

namespace detail {

struct BinomTable {
  // C(n,k) for 0 <= k <= n <= kMaxVars; every entry fits in 64 bits.
  std::uint64_t c[kMaxVars + 1][kMaxVars + 1] = {};
  constexpr BinomTable() {
    for (int n = 0; n <= kMaxVars; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k)
        c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};

inline constexpr BinomTable kBinom{};

}  // namespace detail

/// C(n,k) as a 64-bit integer; zero outside 0 <= k <= n <= kMaxVars.
inline constexpr std::uint64_t binom_u64(int n, int k) {
  if (n < 0 || k < 0 || k > n || n > kMaxVars) return 0;
  return detail::kBinom.c[n][k];
}

/// A square-free exterior monomial x_{i_1} ∧ ... ∧ x_{i_m} over x_1..x_n,
/// stored as a bit mask (bit i-1 set iff x_i occurs). Immutable value type.
class Monomial {
 public:
  Monomial() = default;

  Monomial(std::uint64_t mask, int n) : mask_(mask), n_(n) {
    if (n < 0 || n > kMaxVars) throw ConstraintError("ambient variable count out of range");
    if (n < 64 && (mask >> n) != 0) throw ConstraintError("monomial index exceeds ambient n");
  }

  static Monomial empty(int n) { return Monomial(0, n); }

  static Monomial full(int n) {
    return Monomial(n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n)), n);
  }

  /// Build from 1-based variable indices; repeated indices are rejected.
  static Monomial from_indices(const std::vector<int>& idx, int n) {
    std::uint64_t m = 0;
    for (int i : idx) {
      if (i < 1 || i > n) throw ConstraintError("variable index out of range");
      std::uint64_t bit = std::uint64_t{1} << (i - 1);
      if (m & bit) throw ConstraintError("repeated variable index");
      m |= bit;
    }
    return Monomial(m, n);
  }

  std::uint64_t mask() const { return mask_; }
  int n() const { return n_; }
  int degree() const { return std::popcount(mask_); }

  bool contains(int i) const { return (mask_ >> (i - 1)) & 1; }
  bool disjoint_with(const Monomial& o) const { return (mask_ & o.mask_) == 0; }

  Monomial unite(const Monomial& o) const { return Monomial(mask_ | o.mask_, n_); }

  /// 1-based indices in increasing order.
  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(degree()));
    for (std::uint64_t m = mask_; m; m &= m - 1)
      out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  std::string str() const {
    if (mask_ == 0) return "1";
    std::string s;
    for (int i : indices()) s += "x" + std::to_string(i);
    return s;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    return a.mask_ <=> b.mask_;  // numeric mask order == colex order
  }

 private:
  std::uint64_t mask_ = 0;
  int n_ = 0;
};

inline void require_same_ambient(const Monomial& a, const Monomial& b) {
  if (a.n() != b.n()) throw ConstraintError("monomials over different ambient n");
}

/// Sign of x_I ∧ x_J relative to the sorted monomial x_{I∪J}: zero when the
/// index sets meet, otherwise the parity of the merge that sorts the
/// concatenated index sequence. For each index of J we count the indices of
/// I above it.
inline int wedge_sign(const Monomial& I, const Monomial& J) {
  require_same_ambient(I, J);
  if ((I.mask() & J.mask()) != 0) return 0;
  int parity = 0;
  for (std::uint64_t m = J.mask(); m; m &= m - 1) {
    int pos = std::countr_zero(m);
    parity ^= std::popcount(I.mask() >> (pos + 1)) & 1;
  }
  return parity ? -1 : +1;
}

/// The monomial on {1..n} \ I.
inline Monomial complement(const Monomial& I) {
  return Monomial(Monomial::full(I.n()).mask() & ~I.mask(), I.n());
}

/// σ(I), defined by σ(I) · x̂_I · x_I = x_1 ⋯ x_n.
inline int complement_sign(const Monomial& I) {
  return wedge_sign(complement(I), I);
}

/// σ(I,J,K): zero when any pair of index sets meets, otherwise the sign
/// sorting the concatenation I·J·K.
inline int triple_sign(const Monomial& I, const Monomial& J, const Monomial& K) {
  int s1 = wedge_sign(I, J);
  if (s1 == 0) return 0;
  int s2 = wedge_sign(I.unite(J), K);
  return s1 * s2;
}

/// Position of a k-subset in the colexicographic enumeration of all
/// k-subsets of {1..n}.
struct SubsetRank {
  int k = 0;
  std::uint64_t index = 0;

  friend bool operator==(const SubsetRank&, const SubsetRank&) = default;
};

inline SubsetRank subset_rank(const Monomial& I) {
  std::uint64_t r = 0;
  int i = 0;
  for (std::uint64_t m = I.mask(); m; m &= m - 1) {
    ++i;
    r += binom_u64(std::countr_zero(m), i);
  }
  return SubsetRank{I.degree(), r};
}

inline Monomial subset_unrank(int k, std::uint64_t index, int n) {
  if (k < 0 || k > n || n > kMaxVars) throw ConstraintError("subset size out of range");
  if (index >= binom_u64(n, k)) throw ConstraintError("subset rank index out of range");
  std::uint64_t mask = 0;
  std::uint64_t r = index;
  for (int i = k; i >= 1; --i) {
    int b = i - 1;  // smallest candidate 0-based element; C(i-1,i) = 0 <= r
    while (b + 1 <= n - 1 && binom_u64(b + 1, i) <= r) ++b;
    mask |= std::uint64_t{1} << b;
    r -= binom_u64(b, i);
  }
  return Monomial(mask, n);
}

/// Visit all k-subsets of {1..n} in colexicographic order.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(Monomial::empty(n));
    return;
  }
  std::uint64_t count = binom_u64(n, k);
  std::uint64_t m = (std::uint64_t{1} << k) - 1;
  for (std::uint64_t i = 0; i < count; ++i) {
    fn(Monomial(m, n));
    // Gosper's hack: next mask with the same popcount (numeric == colex order).
    std::uint64_t c = m & (~m + 1);
    std::uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

}  // namespace exh

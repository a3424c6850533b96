#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "exh/combinatorics.hpp"
#include "exh/errors.hpp"
#include "exh/form.hpp"
#include "exh/linalg.hpp"

namespace exh {

enum class MapBasis { Standard, Hat };
enum class MiddleMapClass { Symmetric, SkewSymmetric, NotApplicable };

inline std::int64_t matrix_rank(const SparseColMatrix<std::uint64_t>& M, const PrimeField& field) {
  return rank_mod_p(M, field);
}
inline std::int64_t matrix_rank(const SparseColMatrix<BigRational>& M, const RationalField&) {
  return rank_rational(M);
}
inline std::vector<std::vector<std::uint64_t>> matrix_kernel(const SparseColMatrix<std::uint64_t>& M,
                                                             const PrimeField& field) {
  return kernel_mod_p(M, field);
}
inline std::vector<std::vector<BigRational>> matrix_kernel(const SparseColMatrix<BigRational>& M,
                                                           const RationalField&) {
  return kernel_rational(M);
}

/// The matrix of ·f : E_m -> E_{m+d}. Columns are indexed by the colex rank
/// of the source monomials x_J. Rows are indexed by the colex rank of the
/// target monomials x_R (Standard basis) or of the complementing set I of
/// the signed basis element σ(I)x̂_I (Hat basis). In the Hat basis the entry
/// at (I, J) is σ(K,J,I)·α_K with K = {1..n} \ (I ∪ J).
///
/// A matrix is single-owner while rank() runs (the cache is unsynchronized);
/// distinct matrices can be built and eliminated concurrently.
template <class F>
class MultMapMatrix {
 public:
  using Elem = typename F::Elem;

  MultMapMatrix(const Form<F>& f, int m, MapBasis basis)
      : field_(f.field()), n_(f.n()), d_(f.degree()), m_(m), basis_(basis) {
    if (m < 0 || m + d_ > n_) throw ConstraintError("source degree out of range");
    mat_.rows = binom_u64(n_, m + d_);
    mat_.cols = binom_u64(n_, m);
    mat_.columns.assign(mat_.cols, {});
    const F& field = field_;
    std::size_t j = 0;
    for_each_subset(n_, m, [&](const Monomial& J) {
      auto& col = mat_.columns[j];
      for (const auto& [kmask, alpha] : f.terms()) {
        Monomial K(kmask, n_);
        if (!K.disjoint_with(J)) continue;
        int sign;
        std::uint64_t row;
        if (basis_ == MapBasis::Standard) {
          sign = wedge_sign(K, J);
          row = subset_rank(K.unite(J)).index;
        } else {
          Monomial I = complement(K.unite(J));
          sign = triple_sign(K, J, I);
          row = subset_rank(I).index;
        }
        col.emplace_back(static_cast<std::uint32_t>(row),
                         sign < 0 ? field.neg(alpha) : alpha);
      }
      std::sort(col.begin(), col.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      ++j;
    });
  }

  const F& field() const { return field_; }
  int n() const { return n_; }
  int form_degree() const { return d_; }
  int source_degree() const { return m_; }
  MapBasis basis() const { return basis_; }
  std::size_t rows() const { return mat_.rows; }
  std::size_t cols() const { return mat_.cols; }
  const SparseColMatrix<Elem>& matrix() const { return mat_; }

  Elem entry(std::size_t r, std::size_t c) const {
    for (const auto& [row, v] : mat_.columns[c])
      if (row == r) return v;
    return field_.zero();
  }

  /// Exact rank over the form's field; cached after the first call.
  std::int64_t rank() const {
    if (!rank_) rank_ = matrix_rank(mat_, field_);
    return *rank_;
  }

 private:
  F field_;
  int n_, d_, m_;
  MapBasis basis_;
  SparseColMatrix<Elem> mat_;
  mutable std::optional<std::int64_t> rank_;
};

/// Rank of ·f : E_m -> E_{m+d}; zero when either side is the zero space.
template <class F>
std::int64_t mult_map_rank(const Form<F>& f, int m) {
  if (m < 0 || m > f.n() || m + f.degree() > f.n() || f.is_zero()) return 0;
  return MultMapMatrix<F>(f, m, MapBasis::Standard).rank();
}

/// A basis of ker(·f : E_m -> E_{m+d}) as degree-m forms. When the target
/// space is zero the full monomial basis of E_m is returned.
template <class F>
std::vector<Form<F>> kernel_basis(const Form<F>& f, int m) {
  const F& field = f.field();
  const int n = f.n();
  if (m < 0 || m > n) return {};
  std::vector<Form<F>> out;
  if (m + f.degree() > n || f.is_zero()) {
    for_each_subset(n, m, [&](const Monomial& J) {
      out.push_back(Form<F>::monomial_form(field, J, field.one()));
    });
    return out;
  }
  MultMapMatrix<F> M(f, m, MapBasis::Standard);
  for (const auto& vec : matrix_kernel(M.matrix(), field)) {
    Form<F> g(field, n, m);
    for (std::size_t j = 0; j < vec.size(); ++j) {
      if (field.is_zero(vec[j])) continue;
      g.add_term(subset_unrank(m, j, n), vec[j]);
    }
    out.push_back(std::move(g));
  }
  return out;
}

/// Classification of the middle map ·f : E_{(n-d)/2} -> E_{(n+d)/2} in the
/// Hat basis: symmetric when (n-d)/2 is even, skew-symmetric (hence of even
/// rank) when (n-d)/2 is odd, not applicable when n-d is odd. With `verify`
/// the Hat matrix is built and M = (-1)^{((n-d)/2)^2} M^t checked entrywise.
template <class F>
MiddleMapClass middle_map_class(const Form<F>& f, bool verify = false) {
  const int n = f.n(), d = f.degree();
  if ((n - d) % 2 != 0 || n - d < 0) return MiddleMapClass::NotApplicable;
  const int m = (n - d) / 2;
  const bool even = m % 2 == 0;
  if (verify) {
    const F& field = f.field();
    MultMapMatrix<F> M(f, m, MapBasis::Hat);
    for (std::size_t c = 0; c < M.cols(); ++c)
      for (const auto& [r, v] : M.matrix().columns[c]) {
        auto t = M.entry(c, r);
        if (!even) t = field.neg(t);
        if (!(v == t)) throw ConstraintError("middle map symmetry verification failed");
      }
  }
  return even ? MiddleMapClass::Symmetric : MiddleMapClass::SkewSymmetric;
}

/// Ranks of ·f : E_m -> E_{m+d} for m = 0..n-d. Only the cheap half
/// m <= (n-d)/2 is eliminated; the rest is filled in by the rank symmetry
/// rank(m) = rank(n-m-d).
template <class F>
std::vector<std::int64_t> rank_profile(const Form<F>& f) {
  const int n = f.n(), d = f.degree();
  if (d > n) return {};
  std::vector<std::int64_t> ranks(static_cast<std::size_t>(n - d) + 1, 0);
  if (f.is_zero()) return ranks;
  const int half = (n - d) / 2;
  for (int m = 0; m <= half; ++m) ranks[m] = mult_map_rank(f, m);
  for (int m = half + 1; m <= n - d; ++m) ranks[m] = ranks[n - d - m];
  return ranks;
}

}  // namespace exh

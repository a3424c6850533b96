#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "exh/errors.hpp"
#include "exh/fields.hpp"

namespace exh {

/// Column-major sparse matrix; each column holds (row, value) pairs sorted
/// by row index.
template <class V>
struct SparseColMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::uint32_t, V>>> columns;

  V entry(std::size_t r, std::size_t c) const {
    for (const auto& [row, v] : columns[c])
      if (row == r) return v;
    return V{};
  }
};

/// Matrices with max(rows, cols) at or below this bound are eliminated
/// densely over F_p; larger ones go through the sparse Markowitz path.
inline constexpr std::size_t kDenseLimit = 4096;

/// Rational elimination (Bareiss) is restricted to this dimension.
inline constexpr std::size_t kBareissLimit = 1000;

namespace detail {

/// Barrett reduction of 64-bit values modulo p < 2^32.
struct Barrett {
  std::uint64_t p;
  std::uint64_t m;  // floor(2^64 / p); exact since p never divides 2^64

  explicit Barrett(std::uint64_t p_) : p(p_), m(~std::uint64_t{0} / p_) {}

  std::uint64_t reduce(std::uint64_t x) const {
    std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * m) >> 64);
    std::uint64_t r = x - q * p;
    return r >= p ? r - p : r;
  }
};

/// In-place Gauss(-Jordan) elimination over F_p on a dense row-major matrix
/// with normalized pivots. Columns are processed left to right; the pivot is
/// the smallest remaining row with a nonzero entry. Returns pivot columns.
inline std::vector<std::size_t> dense_eliminate_mod_p(std::vector<std::uint64_t>& a,
                                                      std::size_t rows, std::size_t cols,
                                                      const PrimeField& field, bool jordan) {
  const Barrett bar(field.modulus());
  const std::uint64_t p = field.modulus();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && a[pr * cols + c] == 0) ++pr;
    if (pr == rows) continue;
    if (pr != r)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(r * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(pr * cols));
    std::uint64_t inv = field.inv(a[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j)
      a[r * cols + j] = bar.reduce(a[r * cols + j] * inv);
    const std::size_t lo = jordan ? 0 : r + 1;
    for (std::size_t i = lo; i < rows; ++i) {
      if (i == r) continue;
      std::uint64_t f = a[i * cols + c];
      if (f == 0) continue;
      const std::uint64_t* src = &a[r * cols];
      std::uint64_t* dst = &a[i * cols];
      for (std::size_t j = c; j < cols; ++j)
        dst[j] = bar.reduce(dst[j] + f * (p - src[j]));
      dst[c] = 0;
    }
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

inline std::vector<std::uint64_t> to_dense(const SparseColMatrix<std::uint64_t>& M) {
  std::vector<std::uint64_t> a(M.rows * M.cols, 0);
  for (std::size_t c = 0; c < M.cols; ++c)
    for (const auto& [r, v] : M.columns[c]) a[static_cast<std::size_t>(r) * M.cols + c] = v;
  return a;
}

}  // namespace detail

inline std::int64_t dense_rank_mod_p(const SparseColMatrix<std::uint64_t>& M, const PrimeField& field) {
  if (M.rows == 0 || M.cols == 0) return 0;
  auto a = detail::to_dense(M);
  return static_cast<std::int64_t>(detail::dense_eliminate_mod_p(a, M.rows, M.cols, field, false).size());
}

/// Kernel basis over F_p, one vector (length cols) per free column, ordered
/// by free column index. Deterministic for a fixed input.
inline std::vector<std::vector<std::uint64_t>> dense_kernel_mod_p(const SparseColMatrix<std::uint64_t>& M,
                                                                  const PrimeField& field) {
  std::vector<std::vector<std::uint64_t>> kernel;
  if (M.cols == 0) return kernel;
  if (M.rows == 0) {
    for (std::size_t j = 0; j < M.cols; ++j) {
      std::vector<std::uint64_t> v(M.cols, 0);
      v[j] = 1;
      kernel.push_back(std::move(v));
    }
    return kernel;
  }
  auto a = detail::to_dense(M);
  auto pivots = detail::dense_eliminate_mod_p(a, M.rows, M.cols, field, true);
  std::vector<std::int64_t> pivot_row_of(M.cols, -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) pivot_row_of[pivots[r]] = static_cast<std::int64_t>(r);
  for (std::size_t j = 0; j < M.cols; ++j) {
    if (pivot_row_of[j] >= 0) continue;
    std::vector<std::uint64_t> v(M.cols, 0);
    v[j] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = field.neg(a[r * M.cols + j]);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

/// Sparse elimination over F_p with Markowitz pivoting: at every step pick
/// the nonzero minimizing (row_count-1)*(col_count-1), ties broken by
/// smallest row index then smallest column index.
inline std::int64_t sparse_rank_mod_p(const SparseColMatrix<std::uint64_t>& M, const PrimeField& field) {
  using Entry = std::pair<std::uint32_t, std::uint64_t>;  // (col, value)
  const std::uint64_t p = field.modulus();
  const detail::Barrett bar(p);

  std::vector<std::vector<Entry>> row(M.rows);
  std::vector<std::uint32_t> row_count(M.rows, 0), col_count(M.cols, 0);
  std::vector<std::vector<std::uint32_t>> col_rows(M.cols);  // may hold stale ids
  for (std::size_t c = 0; c < M.cols; ++c)
    for (const auto& [r, v] : M.columns[c]) {
      row[r].emplace_back(static_cast<std::uint32_t>(c), v);
      ++row_count[r];
      ++col_count[c];
      col_rows[c].push_back(r);
    }
  for (auto& r : row) std::sort(r.begin(), r.end());

  std::vector<char> row_active(M.rows, 1), col_active(M.cols, 1);

  auto value_at = [&](std::uint32_t r, std::uint32_t c) -> std::uint64_t {
    auto it = std::lower_bound(row[r].begin(), row[r].end(), Entry{c, 0},
                               [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return (it != row[r].end() && it->first == c) ? it->second : 0;
  };

  std::int64_t rank = 0;
  for (;;) {
    // Candidate columns: all active ones of minimal count.
    std::uint32_t cmin = UINT32_MAX;
    for (std::size_t c = 0; c < M.cols; ++c)
      if (col_active[c] && col_count[c] > 0) cmin = std::min(cmin, col_count[c]);
    if (cmin == UINT32_MAX) break;

    std::uint64_t best_score = ~std::uint64_t{0};
    std::uint32_t best_r = UINT32_MAX, best_c = UINT32_MAX;
    for (std::size_t c = 0; c < M.cols; ++c) {
      if (!col_active[c] || col_count[c] != cmin) continue;
      auto& cr = col_rows[c];
      std::sort(cr.begin(), cr.end());
      cr.erase(std::unique(cr.begin(), cr.end()), cr.end());
      cr.erase(std::remove_if(cr.begin(), cr.end(),
                              [&](std::uint32_t r) {
                                return !row_active[r] || value_at(r, static_cast<std::uint32_t>(c)) == 0;
                              }),
               cr.end());
      for (std::uint32_t r : cr) {
        std::uint64_t score = static_cast<std::uint64_t>(row_count[r] - 1) * (cmin - 1);
        if (score < best_score || (score == best_score && (r < best_r || (r == best_r && c < best_c)))) {
          best_score = score;
          best_r = r;
          best_c = static_cast<std::uint32_t>(c);
        }
      }
    }
    if (best_r == UINT32_MAX) break;

    const std::uint32_t pr = best_r, pc = best_c;
    const std::uint64_t inv = field.inv(value_at(pr, pc));
    for (auto& [c, v] : row[pr]) v = bar.reduce(v * inv);

    for (std::uint32_t r : col_rows[pc]) {
      if (r == pr || !row_active[r]) continue;
      std::uint64_t f = value_at(r, pc);
      if (f == 0) continue;
      // row_r -= f * row_pr, merging sorted sparse rows.
      std::vector<Entry> merged;
      merged.reserve(row[r].size() + row[pr].size());
      auto it_a = row[r].begin(), it_b = row[pr].begin();
      while (it_a != row[r].end() || it_b != row[pr].end()) {
        if (it_b == row[pr].end() || (it_a != row[r].end() && it_a->first < it_b->first)) {
          merged.push_back(*it_a++);
        } else if (it_a == row[r].end() || it_b->first < it_a->first) {
          std::uint64_t nv = bar.reduce(f * (p - it_b->second));
          if (nv != 0) {
            merged.emplace_back(it_b->first, nv);
            if (col_active[it_b->first]) {
              ++col_count[it_b->first];
              col_rows[it_b->first].push_back(r);
            }
          }
          ++it_b;
        } else {
          std::uint64_t nv = bar.reduce(it_a->second + f * (p - it_b->second));
          if (nv != 0) {
            merged.emplace_back(it_a->first, nv);
          } else if (col_active[it_a->first]) {
            --col_count[it_a->first];
          }
          ++it_a;
          ++it_b;
        }
      }
      row[r] = std::move(merged);
      row_count[r] = static_cast<std::uint32_t>(row[r].size());
    }

    // Retire the pivot row and column from the active submatrix.
    row_active[pr] = 0;
    col_active[pc] = 0;
    for (const auto& [c, v] : row[pr])
      if (col_active[c]) --col_count[c];
    ++rank;
  }
  return rank;
}

inline std::int64_t rank_mod_p(const SparseColMatrix<std::uint64_t>& M, const PrimeField& field,
                               std::size_t dense_limit = kDenseLimit) {
  if (std::max(M.rows, M.cols) <= dense_limit) return dense_rank_mod_p(M, field);
  return sparse_rank_mod_p(M, field);
}

inline std::vector<std::vector<std::uint64_t>> kernel_mod_p(const SparseColMatrix<std::uint64_t>& M,
                                                            const PrimeField& field,
                                                            std::size_t dense_limit = kDenseLimit) {
  if (std::max(M.rows, M.cols) > dense_limit)
    throw ConstraintError("kernel basis above the dense elimination limit");
  return dense_kernel_mod_p(M, field);
}

namespace detail {

/// Fraction-free Bareiss forward elimination; returns pivot (row, col) pairs.
/// Rows are swapped so pivot rows stack from the top; all divisions are
/// exact.
inline std::vector<std::pair<std::size_t, std::size_t>> bareiss_eliminate(
    std::vector<std::vector<BigInt>>& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && a[pr][c] == 0) ++pr;
    if (pr == rows) continue;
    if (pr != r) std::swap(a[r], a[pr]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        a[i][j] = t / prev;  // exact by Sylvester's identity
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivots.emplace_back(r, c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

inline std::int64_t bareiss_rank(std::vector<std::vector<BigInt>> a) {
  return static_cast<std::int64_t>(detail::bareiss_eliminate(a).size());
}

/// Kernel basis over the rationals from the fraction-free echelon form, one
/// vector per free column.
inline std::vector<std::vector<BigRational>> bareiss_kernel(std::vector<std::vector<BigInt>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  auto pivots = detail::bareiss_eliminate(a);
  std::vector<std::int64_t> pivot_row_of(cols, -1);
  for (const auto& [r, c] : pivots) pivot_row_of[c] = static_cast<std::int64_t>(r);
  std::vector<std::vector<BigRational>> kernel;
  for (std::size_t jf = 0; jf < cols; ++jf) {
    if (pivot_row_of[jf] >= 0) continue;
    std::vector<BigRational> x(cols, BigRational(0));
    x[jf] = 1;
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      const auto [r, c] = *it;
      BigRational s(0);
      for (std::size_t j = c + 1; j < cols; ++j)
        if (x[j] != 0 && a[r][j] != 0) s += BigRational(a[r][j]) * x[j];
      x[c] = -s / BigRational(a[r][c]);
    }
    kernel.push_back(std::move(x));
  }
  return kernel;
}

namespace detail {

/// Clear denominators row by row; row scaling preserves rank and kernel.
inline std::vector<std::vector<BigInt>> to_integer_rows(const SparseColMatrix<BigRational>& M) {
  std::vector<std::vector<BigRational>> rows(M.rows, std::vector<BigRational>(M.cols, BigRational(0)));
  for (std::size_t c = 0; c < M.cols; ++c)
    for (const auto& [r, v] : M.columns[c]) rows[r][c] = v;
  std::vector<std::vector<BigInt>> out(M.rows, std::vector<BigInt>(M.cols, BigInt(0)));
  for (std::size_t r = 0; r < M.rows; ++r) {
    BigInt l = 1;
    for (const auto& v : rows[r])
      l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(v)));
    for (std::size_t c = 0; c < M.cols; ++c) {
      BigRational scaled = rows[r][c] * BigRational(l);
      out[r][c] = BigInt(boost::multiprecision::numerator(scaled));
    }
  }
  return out;
}

}  // namespace detail

inline std::int64_t rank_rational(const SparseColMatrix<BigRational>& M) {
  if (M.rows == 0 || M.cols == 0) return 0;
  if (std::max(M.rows, M.cols) > kBareissLimit)
    throw ConstraintError("rational elimination above the Bareiss dimension limit");
  return bareiss_rank(detail::to_integer_rows(M));
}

inline std::vector<std::vector<BigRational>> kernel_rational(const SparseColMatrix<BigRational>& M) {
  if (M.cols == 0) return {};
  if (M.rows == 0) {
    std::vector<std::vector<BigRational>> kernel;
    for (std::size_t j = 0; j < M.cols; ++j) {
      std::vector<BigRational> v(M.cols, BigRational(0));
      v[j] = 1;
      kernel.push_back(std::move(v));
    }
    return kernel;
  }
  if (std::max(M.rows, M.cols) > kBareissLimit)
    throw ConstraintError("rational elimination above the Bareiss dimension limit");
  return bareiss_kernel(detail::to_integer_rows(M));
}

}  // namespace exh

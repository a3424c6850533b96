#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exh/errors.hpp"
#include "exh/fields.hpp"
#include "exh/form.hpp"
#include "exh/mult_map.hpp"

namespace exh {

/// C(n,k) as an exact big integer (n is not capped here).
inline BigInt binomial_big(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// Integer-coefficient polynomial in t with exact coefficients. Trailing
/// zeros are permitted and ignored by comparisons.
class IntSeries {
 public:
  IntSeries() = default;
  explicit IntSeries(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {}

  static IntSeries zeros(std::size_t len) { return IntSeries(std::vector<BigInt>(len, BigInt(0))); }

  /// (1+t)^n.
  static IntSeries binomial_row(int n) {
    std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = binomial_big(n, i);
    return IntSeries(std::move(c));
  }

  std::size_t size() const { return c_.size(); }

  const BigInt& coeff(std::size_t i) const {
    static const BigInt kZero{0};
    return i < c_.size() ? c_[i] : kZero;
  }

  void set(std::size_t i, BigInt v) {
    if (i >= c_.size()) c_.resize(i + 1, BigInt(0));
    c_[i] = std::move(v);
  }

  /// Index of the highest nonzero coefficient; -1 for the zero polynomial.
  int degree() const {
    for (std::size_t i = c_.size(); i-- > 0;)
      if (c_[i] != 0) return static_cast<int>(i);
    return -1;
  }

  bool is_zero() const { return degree() < 0; }

  IntSeries resized(std::size_t len) const {
    std::vector<BigInt> c(c_);
    c.resize(len, BigInt(0));
    return IntSeries(std::move(c));
  }

  IntSeries shifted(int k) const {  // multiply by t^k
    std::vector<BigInt> c(c_.size() + static_cast<std::size_t>(k), BigInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i + static_cast<std::size_t>(k)] = c_[i];
    return IntSeries(std::move(c));
  }

  IntSeries scaled(const BigInt& s) const {
    std::vector<BigInt> c(c_);
    for (auto& x : c) x *= s;
    return IntSeries(std::move(c));
  }

  friend IntSeries operator+(const IntSeries& a, const IntSeries& b) {
    std::vector<BigInt> c(std::max(a.size(), b.size()), BigInt(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return IntSeries(std::move(c));
  }

  friend IntSeries operator-(const IntSeries& a, const IntSeries& b) {
    std::vector<BigInt> c(std::max(a.size(), b.size()), BigInt(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return IntSeries(std::move(c));
  }

  friend IntSeries operator*(const IntSeries& a, const IntSeries& b) {
    int da = a.degree(), db = b.degree();
    if (da < 0 || db < 0) return IntSeries();
    std::vector<BigInt> c(static_cast<std::size_t>(da + db) + 1, BigInt(0));
    for (int i = 0; i <= da; ++i) {
      if (a.coeff(static_cast<std::size_t>(i)) == 0) continue;
      for (int j = 0; j <= db; ++j)
        c[static_cast<std::size_t>(i + j)] +=
            a.coeff(static_cast<std::size_t>(i)) * b.coeff(static_cast<std::size_t>(j));
    }
    return IntSeries(std::move(c));
  }

  friend bool operator==(const IntSeries& a, const IntSeries& b) {
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i)
      if (a.coeff(i) != b.coeff(i)) return false;
    return true;
  }

  BigInt eval(const BigInt& x) const {  // Horner
    BigInt r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  std::vector<std::int64_t> to_int64(std::size_t len) const {
    std::vector<std::int64_t> out(len);
    for (std::size_t i = 0; i < len; ++i) {
      const BigInt& v = coeff(i);
      if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw ConstraintError("series coefficient exceeds 64 bits");
      out[i] = static_cast<std::int64_t>(v);
    }
    return out;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += c_[i].str();
      if (i >= 1) s += "t";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  std::vector<BigInt> c_;
};

/// Lexicographic comparison from degree 0: -1, 0 or +1.
inline int lex_compare(const IntSeries& a, const IntSeries& b) {
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    if (a.coeff(i) < b.coeff(i)) return -1;
    if (a.coeff(i) > b.coeff(i)) return +1;
  }
  return 0;
}

/// Exact polynomial quotient num / div; throws when the division leaves a
/// remainder. div must have constant term ±1 or be handled by general long
/// division from the top; we verify q * div == num in all cases.
inline IntSeries exact_divide(const IntSeries& num, const IntSeries& div) {
  int dn = num.degree(), dd = div.degree();
  if (dd < 0) throw ConstraintError("division by zero polynomial");
  if (dn < 0) return IntSeries();
  if (dn < dd) throw ConstraintError("non-exact polynomial division");
  std::vector<BigInt> q(static_cast<std::size_t>(dn - dd) + 1, BigInt(0));
  std::vector<BigInt> rem(static_cast<std::size_t>(dn) + 1);
  for (int i = 0; i <= dn; ++i) rem[static_cast<std::size_t>(i)] = num.coeff(static_cast<std::size_t>(i));
  const BigInt& lead = div.coeff(static_cast<std::size_t>(dd));
  for (int i = dn - dd; i >= 0; --i) {
    BigInt top = rem[static_cast<std::size_t>(i + dd)];
    if (top % lead != 0) throw ConstraintError("non-exact polynomial division");
    BigInt f = top / lead;
    q[static_cast<std::size_t>(i)] = f;
    if (f != 0)
      for (int j = 0; j <= dd; ++j)
        rem[static_cast<std::size_t>(i + j)] -= f * div.coeff(static_cast<std::size_t>(j));
  }
  for (const auto& r : rem)
    if (r != 0) throw ConstraintError("non-exact polynomial division");
  return IntSeries(std::move(q));
}

/// Keep the longest strictly-positive prefix, zero afterwards ("truncate
/// before the first non-positive term").
inline IntSeries truncate_positive(const IntSeries& p) {
  if (p.coeff(0) <= 0) throw ConstraintError("truncation requires a positive constant term");
  IntSeries out = IntSeries::zeros(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.coeff(i) <= 0) break;
    out.set(i, p.coeff(i));
  }
  return out;
}

/// Minimal Hilbert series for even degree: [(1-t^d)(1+t)^n].
inline IntSeries even_minimal_series(int n, int d) {
  if (d % 2 != 0) throw ConstraintError("even_minimal_series requires even d");
  if (d < 1 || d > n) throw ConstraintError("degree out of range");
  IntSeries pow = IntSeries::binomial_row(n);
  return truncate_positive((pow - pow.shifted(d)).resized(static_cast<std::size_t>(n) + 1));
}

template <class F>
void require_series_form(const Form<F>& f) {
  if (f.is_zero()) throw ConstraintError("zero form has no quotient series");
  if (f.degree() < 1) throw ConstraintError("form degree must be at least 1");
}

struct QuotientSeries {
  IntSeries series;                 // HF(E/(f), i) for i = 0..n
  std::vector<std::int64_t> ranks;  // rank of ·f at source degree m = 0..n-d
};

/// Hilbert series of E/(f). Ranks are eliminated only for source degrees
/// m <= (n-d)/2; everything else follows from the rank symmetry, which is
/// the reflection formula HF(i) = C(n,i) - C(n,i-d) + HF(n+d-i).
template <class F>
QuotientSeries hilbert_series_quotient(const Form<F>& f) {
  require_series_form(f);
  const int n = f.n(), d = f.degree();
  QuotientSeries out;
  out.ranks = rank_profile(f);
  out.series = IntSeries::zeros(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    std::int64_t r = (i >= d && i - d <= n - d) ? out.ranks[static_cast<std::size_t>(i - d)] : 0;
    out.series.set(static_cast<std::size_t>(i), binomial_big(n, i) - r);
  }
  return out;
}

/// HF(E/ann(f), i) = rank(·f : E_i -> E_{i+d}); zero beyond n-d.
template <class F>
IntSeries hilbert_series_ann_quotient(const Form<F>& f) {
  require_series_form(f);
  const int n = f.n(), d = f.degree();
  auto ranks = rank_profile(f);
  IntSeries out = IntSeries::zeros(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n - d; ++i) out.set(static_cast<std::size_t>(i), ranks[static_cast<std::size_t>(i)]);
  return out;
}

/// HF(ann(f)/(f), i) = C(n,i) - rank(·f at i) - rank(·f at i-d); defined for
/// odd degree, where (f) ⊆ ann(f). Symmetric about n/2.
template <class F>
IntSeries ann_mod_ideal_hf(const Form<F>& f) {
  require_series_form(f);
  if (f.degree() % 2 == 0) throw ConstraintError("ann/(f) series requires odd degree");
  const int n = f.n(), d = f.degree();
  auto ranks = rank_profile(f);
  auto rank_at = [&](int m) -> std::int64_t {
    return (m >= 0 && m <= n - d) ? ranks[static_cast<std::size_t>(m)] : 0;
  };
  IntSeries out = IntSeries::zeros(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    out.set(static_cast<std::size_t>(i), binomial_big(n, i) - rank_at(i) - rank_at(i - d));
  return out;
}

/// The lower-bound data for odd degree: a = b + c, the polynomial p of the
/// rational form B(t) = (t^{floor((n+d)/2+1)} p(t) + (1+t)^n) / (1+t^d), and
/// the checked defining identity.
struct BoundReport {
  int n = 0;
  int d = 0;
  IntSeries b, c, a;
  IntSeries p;  // degree <= d-1
  bool b_identity_checked = false;
};

inline BoundReport lower_bound(int n, int d) {
  if (d % 2 == 0) throw ConstraintError("lower_bound requires odd d");
  if (d < 1 || d > n) throw ConstraintError("degree out of range");
  BoundReport rep;
  rep.n = n;
  rep.d = d;
  rep.b = IntSeries::zeros(static_cast<std::size_t>(n) + 1);
  rep.c = IntSeries::zeros(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    BigInt v = 0;
    if (2 * i <= n + d) {
      for (int k = 0; k * d <= i; ++k)
        v += (k % 2 == 0 ? 1 : -1) * binomial_big(n, i - k * d);
    } else {
      for (int k = 1; i + k * d <= n; ++k)
        v += (k % 2 == 1 ? 1 : -1) * binomial_big(n, i + k * d);
    }
    rep.b.set(static_cast<std::size_t>(i), v);
  }
  if ((n - d) % 2 == 0) {
    const int mid = (n - d) / 2;
    if (mid % 2 == 1 && rep.b.coeff(static_cast<std::size_t>(mid)) % 2 != 0)
      rep.c.set(static_cast<std::size_t>((n + d) / 2), BigInt(1));
  }
  rep.a = (rep.b + rep.c).resized(static_cast<std::size_t>(n) + 1);

  // p(t) from its defining coefficient sums, then the identity
  // B(t)(1+t^d) = t^{floor((n+d)/2+1)} p(t) + (1+t)^n is asserted.
  const int t0 = (n + d) / 2 + 1;
  rep.p = IntSeries::zeros(static_cast<std::size_t>(d));
  for (int i = t0; i <= t0 + d - 1; ++i) {
    BigInt v = 0;
    int k_lo = -(i / d);
    for (int k = k_lo; i + k * d <= n; ++k) {
      if (i + k * d < 0) continue;
      int parity = ((k % 2) + 2) % 2;
      v += (parity == 1 ? 1 : -1) * binomial_big(n, i + k * d);
    }
    rep.p.set(static_cast<std::size_t>(i - t0), v);
  }
  IntSeries one_plus_td = IntSeries::zeros(static_cast<std::size_t>(d) + 1);
  one_plus_td.set(0, BigInt(1));
  one_plus_td.set(static_cast<std::size_t>(d), BigInt(1));
  IntSeries lhs = rep.b * one_plus_td;
  IntSeries rhs = rep.p.shifted(t0) + IntSeries::binomial_row(n);
  if (!(lhs == rhs)) throw std::logic_error("lower bound B(t) identity failed");
  rep.b_identity_checked = true;
  return rep;
}

/// Per-degree comparison dim ann(f)_i - dim (f)_i - c_i for i <= (n-d)/2;
/// the bound of lower_bound is attained exactly when every entry vanishes.
struct EqualityDegreeRow {
  int i = 0;
  std::int64_t dim_ann = 0;
  std::int64_t dim_ideal = 0;
  int c_i = 0;
  std::int64_t excess = 0;  // dim_ann - dim_ideal - c_i
};

struct EqualityDiagnostic {
  int n = 0;
  int d = 0;
  std::vector<EqualityDegreeRow> rows;
  bool equals_bound = false;
  std::optional<int> first_failure;
};

template <class F>
EqualityDiagnostic equality_diagnostic(const Form<F>& f) {
  require_series_form(f);
  if (f.degree() % 2 == 0) throw ConstraintError("equality diagnostic requires odd degree");
  const int n = f.n(), d = f.degree();
  EqualityDiagnostic diag;
  diag.n = n;
  diag.d = d;
  diag.equals_bound = true;
  const int half = (n - d) / 2;
  std::vector<std::int64_t> ranks(static_cast<std::size_t>(half) + 1, 0);
  for (int m = 0; m <= half; ++m) ranks[static_cast<std::size_t>(m)] = mult_map_rank(f, m);
  for (int i = 0; i <= half; ++i) {
    EqualityDegreeRow row;
    row.i = i;
    row.dim_ann = static_cast<std::int64_t>(binom_u64(n, i)) - ranks[static_cast<std::size_t>(i)];
    row.dim_ideal = i >= d ? ranks[static_cast<std::size_t>(i - d)] : 0;
    const bool at_mid = (n - d) % 2 == 0 && i == half;
    if (at_mid && i % 2 == 1 && (row.dim_ideal % 2) != static_cast<std::int64_t>(binom_u64(n, i) % 2))
      row.c_i = 1;
    row.excess = row.dim_ann - row.dim_ideal - row.c_i;
    if (row.excess != 0 && !diag.first_failure) diag.first_failure = i;
    if (row.excess != 0) diag.equals_bound = false;
    diag.rows.push_back(row);
  }
  return diag;
}

/// Moreno-Socías–Snellman conjectured minimal series for d = 3:
/// p_n(t) = (t^3 L_n(t) + (1+t)^n) / (1+t^3), with exact division enforced.
inline IntSeries mss_series(int n, int c1, int c2) {
  if (n < 3) throw ConstraintError("mss_series requires n >= 3");
  const int ell = n / 4;
  IntSeries L;
  auto three_t_pow = [](int e) {  // (3t)^e
    IntSeries s = IntSeries::zeros(static_cast<std::size_t>(e) + 1);
    BigInt v = 1;
    for (int i = 0; i < e; ++i) v *= 3;
    s.set(static_cast<std::size_t>(e), v);
    return s;
  };
  IntSeries one_plus_t(std::vector<BigInt>{BigInt(1), BigInt(1)});
  switch (n % 4) {
    case 0:
      L = three_t_pow(2 * ell - 1) * one_plus_t * one_plus_t;
      break;
    case 1: {
      if (c1 < 1 || c2 < 1) throw ConstraintError("c1 and c2 must be positive");
      BigInt mid = 1;
      for (int i = 0; i < c2; ++i) mid *= 3;
      mid -= 1;
      IntSeries quad(std::vector<BigInt>{BigInt(1), mid, BigInt(1)});
      IntSeries tpow = IntSeries::zeros(static_cast<std::size_t>(2 * ell - 1) + 1);
      tpow.set(static_cast<std::size_t>(2 * ell - 1), BigInt(c1));
      L = tpow * one_plus_t * quad;
      break;
    }
    case 2:
      L = three_t_pow(2 * ell) * one_plus_t * one_plus_t;
      break;
    default:
      L = three_t_pow(2 * ell + 1) * one_plus_t;
      break;
  }
  IntSeries numerator = L.shifted(3) + IntSeries::binomial_row(n);
  IntSeries div(std::vector<BigInt>{BigInt(1), BigInt(0), BigInt(0), BigInt(1)});
  return exact_divide(numerator, div).resized(static_cast<std::size_t>(n) + 1);
}

/// The constant c of the refuted conjecture for odd d >= 5: 1 iff integers
/// s >= 0, v > 0 exist with i = v(v+1)/2, n-d = v^2/2 + 5v/2 - 1, d = 5+2vs.
inline int conjecture61_c(int n, int d, std::int64_t i) {
  if (d % 2 == 0 || d < 5) throw ConstraintError("conjecture applies to odd d >= 5");
  for (std::int64_t v = 1; v <= n + 3; ++v) {
    if (v * (v + 1) / 2 != i) continue;
    if (v * v + 5 * v - 2 != 2 * static_cast<std::int64_t>(n - d)) continue;
    if ((d - 5) % (2 * v) != 0) continue;
    return 1;  // s = (d-5)/(2v) >= 0 since d >= 5
  }
  return 0;
}

/// Pure-arithmetic refutation check at the middle degree (n-d)/2: when that
/// degree is an odd integer below d and C(n,(n-d)/2) is odd, the skew middle
/// map has a forced kernel, so a conjectured c = 0 cannot hold.
struct RefutationReport {
  int n = 0;
  int d = 0;
  bool applicable = false;
  int mid = -1;                      // (n-d)/2 when n-d is even
  BigInt mid_binomial;               // C(n, mid)
  bool binomial_odd = false;
  int parity_min_kernel = 0;         // forced kernel dimension lower bound (0 or 1)
  int conjecture_c = 0;              // conjecture61_c(n, d, mid)
  std::optional<int> bound_c_index;  // position of the single 1 in lower_bound c
  std::string verdict;               // REFUTED | NO_CONFLICT
};

inline RefutationReport refute_conjecture61(int n = 21, int d = 11) {
  if (d % 2 == 0 || d < 5) throw ConstraintError("conjecture applies to odd d >= 5");
  if (d > n) throw ConstraintError("degree out of range");
  RefutationReport rep;
  rep.n = n;
  rep.d = d;
  auto bound = lower_bound(n, d);
  for (int i = 0; i <= n; ++i)
    if (bound.c.coeff(static_cast<std::size_t>(i)) != 0) rep.bound_c_index = i;
  if ((n - d) % 2 != 0) {
    rep.verdict = "NO_CONFLICT";
    return rep;
  }
  rep.mid = (n - d) / 2;
  rep.mid_binomial = binomial_big(n, rep.mid);
  rep.binomial_odd = rep.mid_binomial % 2 != 0;
  rep.parity_min_kernel = (rep.mid % 2 == 1 && rep.binomial_odd) ? 1 : 0;
  rep.conjecture_c = conjecture61_c(n, d, rep.mid);
  rep.applicable = rep.mid % 2 == 1 && rep.mid < d;
  rep.verdict = (rep.applicable && rep.parity_min_kernel == 1 && rep.conjecture_c == 0)
                    ? "REFUTED"
                    : "NO_CONFLICT";
  return rep;
}

/// Closed form of the d = 3 multisection block: 3^{m-1} t^{m+2} (1+t)^2 for
/// n = 2m, and 3^m t^{m+3} (1+t) for n = 2m+1.
inline IntSeries multisection_closed(int n) {
  if (n < 4) throw ConstraintError("multisection_closed requires n >= 4");
  const int m = n / 2;
  BigInt pw = 1;
  IntSeries out;
  if (n % 2 == 0) {
    for (int i = 0; i < m - 1; ++i) pw *= 3;
    out = IntSeries::zeros(static_cast<std::size_t>(m + 4) + 1);
    out.set(static_cast<std::size_t>(m + 2), pw);
    out.set(static_cast<std::size_t>(m + 3), 2 * pw);
    out.set(static_cast<std::size_t>(m + 4), pw);
  } else {
    for (int i = 0; i < m; ++i) pw *= 3;
    out = IntSeries::zeros(static_cast<std::size_t>(m + 4) + 1);
    out.set(static_cast<std::size_t>(m + 3), pw);
    out.set(static_cast<std::size_t>(m + 4), pw);
  }
  return out;
}

/// Direct alternating sum over one congruence class mod 3 — the brute-force
/// oracle behind multisection_closed. Valid for (n+3)/2 <= i <= (n+9)/2,
/// which covers i = m+2 .. m+4 of the closed form for both parities of n.
inline BigInt multisection_direct(int n, int i) {
  if (!(2 * i >= n + 3 && 2 * i <= n + 9)) throw ConstraintError("multisection index out of range");
  BigInt v = 0;
  for (int k = -(i / 3) - 1; i + 3 * k <= n; ++k) {
    if (i + 3 * k < 0) continue;
    int parity = ((k % 2) + 2) % 2;
    v += (parity == 1 ? 1 : -1) * binomial_big(n, i + 3 * k);
  }
  return v;
}

struct ParityLemmaResult {
  BigInt value;         // the alternating sum
  bool odd = false;     // must be true
  BigInt unsigned_sum;  // A
  bool identity_ok = false;  // 3A == 2^{4l} - 1
};

inline ParityLemmaResult parity_lemma(int ell) {
  if (ell < 1) throw ConstraintError("parity_lemma requires a positive integer");
  ParityLemmaResult r;
  r.value = 0;
  r.unsigned_sum = 0;
  for (int k = 0; 3 * k + 1 <= 2 * ell; ++k) {
    BigInt term = binomial_big(4 * ell + 1, 2 * ell - 1 - 3 * k);
    r.value += (k % 2 == 0 ? term : -term);
    r.unsigned_sum += term;
  }
  r.odd = r.value % 2 != 0;
  BigInt pw = BigInt(1) << (4 * ell);
  r.identity_ok = 3 * r.unsigned_sum == pw - 1;
  return r;
}

}  // namespace exh

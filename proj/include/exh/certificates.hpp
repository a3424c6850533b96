#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exh/errors.hpp"
#include "exh/form.hpp"
#include "exh/series.hpp"

namespace exh {

/// h_d: the sum of all C(n,d) square-free monomials of degree d.
template <class F>
Form<F> h_form(const F& field, int n, int d) {
  if (d < 1 || d > n) throw ConstraintError("degree out of range");
  Form<F> f(field, n, d);
  for_each_subset(n, d, [&](const Monomial& m) { f.add_term(m, field.one()); });
  return f;
}

/// The n cyclic products of n-3 consecutive variables (indices mod n), each
/// normalized to increasing index order. Degree n-3; n must be even.
template <class F>
Form<F> cyclic_form(const F& field, int n) {
  if (n % 2 != 0) throw ConstraintError("cyclic form requires even n");
  if (n < 6) throw ConstraintError("cyclic form requires n >= 6");
  Form<F> f(field, n, n - 3);
  for (int j = 0; j < n; ++j) {
    std::vector<int> idx(static_cast<std::size_t>(n - 3));
    for (int t = 0; t < n - 3; ++t) idx[static_cast<std::size_t>(t)] = (j + t) % n + 1;
    int sign = detail::sort_sign_and_check(idx);
    auto c = field.one();
    if (sign < 0) c = field.neg(c);
    f.add_term(Monomial::from_indices(idx, n), c);
  }
  return f;
}

template <class F>
struct VinbergForms {
  Form<F> p1, p2, p3, p4, f;
};

/// The four n = 9 trivectors of the Vinberg–Elašvili normal form and the
/// specific combination f = 2p1 + 2p2 + p3 + p4.
template <class F>
VinbergForms<F> vinberg_forms(const F& field) {
  auto build = [&](std::initializer_list<std::initializer_list<int>> monos) {
    Form<F> f(field, 9, 3);
    for (const auto& m : monos) f.add_term(Monomial::from_indices(std::vector<int>(m), 9), field.one());
    return f;
  };
  VinbergForms<F> v{
      build({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}),
      build({{1, 4, 7}, {2, 5, 8}, {3, 6, 9}}),
      build({{1, 5, 9}, {2, 6, 7}, {3, 4, 8}}),
      build({{1, 6, 8}, {2, 4, 9}, {3, 5, 7}}),
      Form<F>(field, 9, 3)};
  auto two = field.add(field.one(), field.one());
  v.f = v.p1.scaled(two) + v.p2.scaled(two) + v.p3 + v.p4;
  return v;
}

namespace detail {

inline void require_factorial_invertible(const PrimeField& field, int d) {
  if (field.modulus() <= static_cast<std::uint64_t>(d))
    throw ConstraintError("d! is not invertible modulo p <= d");
}
inline void require_factorial_invertible(const RationalField&, int) {}

}  // namespace detail

/// Checks h_{2d} = (1/d!) (sum_{i<j} x_i x_j)^d by direct wedge powers.
template <class F>
bool h2d_power_identity(const F& field, int n, int d) {
  if (d < 1 || 2 * d > n) throw ConstraintError("need 2d <= n");
  detail::require_factorial_invertible(field, d);
  Form<F> h2 = h_form(field, n, 2);
  Form<F> power = h2;
  auto fact = field.one();
  for (int i = 2; i <= d; ++i) {
    power = wedge(power, h2);
    fact = field.mul(fact, field.from_int(i));
  }
  return power.scaled(field.inv(fact)) == h_form(field, n, 2 * d);
}

enum class CertificateName { HForm, NMinus2, CyclicNMinus3, Vinberg9, H2dPower };

struct CertificateSpec {
  CertificateName name = CertificateName::NMinus2;
  int n = 0;
  int d = 0;  // used by HForm and H2dPower
};

struct CertificateReport {
  std::string name;
  int n = 0;
  int d = 0;
  bool pass = false;
  IntSeries expected, actual;
  std::optional<int> first_mismatch;
  std::string mode;  // "rational" or "prime(p)"
};

namespace detail {

template <class F>
CertificateReport run_series_certificate(const Form<F>& f, IntSeries expected,
                                         CertificateReport rep) {
  rep.actual = hilbert_series_quotient(f).series;
  rep.expected = std::move(expected);
  rep.pass = rep.actual == rep.expected;
  if (!rep.pass)
    for (std::size_t i = 0; i < std::max(rep.actual.size(), rep.expected.size()); ++i)
      if (rep.actual.coeff(i) != rep.expected.coeff(i)) {
        rep.first_mismatch = static_cast<int>(i);
        break;
      }
  return rep;
}

template <class F>
CertificateReport verify_certificate_in(const F& field, const CertificateSpec& spec,
                                        CertificateReport rep) {
  const int n = spec.n;
  switch (spec.name) {
    case CertificateName::HForm: {
      if (spec.d % 2 != 0)
        throw ConstraintError("h_form certificate applies to even degree (odd h_d has a linear factor)");
      rep.d = spec.d;
      return run_series_certificate(h_form(field, n, spec.d), even_minimal_series(n, spec.d),
                                    std::move(rep));
    }
    case CertificateName::NMinus2: {
      if (n % 2 == 0 || n < 3) throw ConstraintError("n_minus_2 certificate requires odd n >= 3");
      rep.d = n - 2;
      IntSeries expected = IntSeries::zeros(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n - 3; ++i) expected.set(static_cast<std::size_t>(i), binomial_big(n, i));
      expected.set(static_cast<std::size_t>(n - 2), binomial_big(n, n - 2) - 1);
      expected.set(static_cast<std::size_t>(n - 1), BigInt(1));
      return run_series_certificate(h_form(field, n, n - 2), std::move(expected), std::move(rep));
    }
    case CertificateName::CyclicNMinus3: {
      rep.d = n - 3;
      IntSeries expected = IntSeries::zeros(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n - 4; ++i) expected.set(static_cast<std::size_t>(i), binomial_big(n, i));
      expected.set(static_cast<std::size_t>(n - 3), binomial_big(n, n - 3) - 1);
      expected.set(static_cast<std::size_t>(n - 2), binomial_big(n, n - 2) - n);
      return run_series_certificate(cyclic_form(field, n), std::move(expected), std::move(rep));
    }
    case CertificateName::Vinberg9: {
      if (n != 9) throw ConstraintError("vinberg9 certificate is specific to n = 9");
      rep.d = 3;
      IntSeries expected(std::vector<BigInt>{BigInt(1), BigInt(9), BigInt(36), BigInt(83),
                                             BigInt(117), BigInt(90), BigInt(4), BigInt(0), BigInt(0),
                                             BigInt(0)});
      return run_series_certificate(vinberg_forms(field).f, std::move(expected), std::move(rep));
    }
    case CertificateName::H2dPower: {
      rep.d = spec.d;
      rep.pass = h2d_power_identity(field, n, spec.d);
      return rep;
    }
  }
  throw ConstraintError("unknown certificate");
}

}  // namespace detail

/// Runs a certificate in rational mode up to n = 11 and prime mode beyond;
/// a prime-mode PASS still certifies minimality since rank mod p bounds the
/// rational rank from below while the lower bound caps from the other side.
inline CertificateReport verify_certificate(const CertificateSpec& spec,
                                            std::uint64_t prime = kDefaultPrime) {
  CertificateReport rep;
  rep.n = spec.n;
  switch (spec.name) {
    case CertificateName::HForm: rep.name = "h_form"; break;
    case CertificateName::NMinus2: rep.name = "n_minus_2"; break;
    case CertificateName::CyclicNMinus3: rep.name = "cyclic_n_minus_3"; break;
    case CertificateName::Vinberg9: rep.name = "vinberg9"; break;
    case CertificateName::H2dPower: rep.name = "h2d_power"; break;
  }
  if (spec.n <= 11) {
    rep.mode = "rational";
    return detail::verify_certificate_in(RationalField{}, spec, std::move(rep));
  }
  rep.mode = "prime(" + std::to_string(prime) + ")";
  return detail::verify_certificate_in(PrimeField(prime), spec, std::move(rep));
}

}  // namespace exh

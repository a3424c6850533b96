#include <catch2/catch_amalgamated.hpp>

#include "exh/certificates.hpp"
#include "exh/sampler.hpp"
#include "exh/series.hpp"
#include "oracles.hpp"

using namespace exh;

namespace {

const RationalField Q;

IntSeries series_of(std::vector<long long> v) {
  std::vector<BigInt> c(v.begin(), v.end());
  return IntSeries(std::move(c));
}

template <class F>
Form<F> nonzero_random_form(const F& field, int n, int d, std::mt19937_64& rng) {
  for (;;) {
    auto f = oracles::random_test_form(field, n, d, rng);
    if (!f.is_zero()) return f;
  }
}

}  // namespace

TEST_CASE("truncate_positive") {
  IntSeries p = IntSeries::binomial_row(7) - IntSeries::binomial_row(7).shifted(3);
  CHECK(truncate_positive(p) == series_of({1, 7, 21, 34, 28}));

  IntSeries p5 = IntSeries::binomial_row(7) - IntSeries::binomial_row(7).shifted(5);
  CHECK(truncate_positive(p5) == series_of({1, 7, 21, 35, 35, 20}));

  IntSeries allpos = series_of({3, 1, 4, 1, 5});
  CHECK(truncate_positive(allpos) == allpos);

  CHECK_THROWS_AS(truncate_positive(series_of({0, 1})), ConstraintError);
  CHECK_THROWS_AS(truncate_positive(series_of({-2, 1})), ConstraintError);
}

TEST_CASE("even minimal series") {
  CHECK(even_minimal_series(4, 2) == series_of({1, 4, 5}));
  CHECK(even_minimal_series(6, 2) == series_of({1, 6, 14, 14}));
  // d = n: the t^n coefficient of (1-t^n)(1+t)^n is 0, ending the prefix
  CHECK(even_minimal_series(4, 4) == series_of({1, 4, 6, 4}));
  CHECK_THROWS_AS(even_minimal_series(6, 3), ConstraintError);

  SECTION("matches a direct expansion oracle") {
    for (int n = 2; n <= 12; ++n)
      for (int d = 2; d <= n; d += 2) {
        IntSeries expect = IntSeries::zeros(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
          BigInt c = binomial_big(n, i) - binomial_big(n, i - d);
          if (c <= 0) break;
          expect.set(static_cast<std::size_t>(i), c);
        }
        CHECK(even_minimal_series(n, d) == expect);
      }
  }
}

TEST_CASE("hilbert series of E/(f)") {
  SECTION("vinberg form, rational and prime mode") {
    IntSeries expect = series_of({1, 9, 36, 83, 117, 90, 4, 0, 0, 0});
    CHECK(hilbert_series_quotient(vinberg_forms(Q).f).series == expect);
    PrimeField fp(kDefaultPrime);
    CHECK(hilbert_series_quotient(vinberg_forms(fp).f).series == expect);
  }

  SECTION("random (7,5) over a large prime") {
    PrimeField fp(kDefaultPrime);
    auto f = random_form(7, 5, fp, 1);
    CHECK(hilbert_series_quotient(f).series == series_of({1, 7, 21, 35, 35, 20, 1, 0}));
  }

  SECTION("f = x1 gives (1+t)^{n-1}") {
    for (int n : {2, 5, 9}) {
      auto f = Form<RationalField>::monomial_form(Q, Monomial::from_indices({1}, n), Q.one());
      auto qs = hilbert_series_quotient(f);
      CHECK(qs.series == IntSeries::binomial_row(n - 1));
    }
  }

  SECTION("zero and degree-0 forms are rejected") {
    CHECK_THROWS_AS(hilbert_series_quotient(Form<RationalField>(Q, 5, 3)), ConstraintError);
    auto scalar = Form<RationalField>::monomial_form(Q, Monomial::empty(4), Q.one());
    CHECK_THROWS_AS(hilbert_series_quotient(scalar), ConstraintError);
  }

  SECTION("rank log covers source degrees 0..n-d") {
    PrimeField fp(kDefaultPrime);
    auto f = random_form(8, 3, fp, 4);
    auto qs = hilbert_series_quotient(f);
    REQUIRE(qs.ranks.size() == 6);
    for (int m = 0; m <= 5; ++m)
      CHECK(qs.ranks[static_cast<std::size_t>(m)] == mult_map_rank(f, m));
  }
}

TEST_CASE("reflection consistency and parity at the middle") {
  std::mt19937_64 rng(101);
  PrimeField fp(kDefaultPrime);
  for (int iter = 0; iter < 30; ++iter) {
    int n = 2 + static_cast<int>(rng() % 9);  // n <= 10
    int d = 1 + static_cast<int>(rng() % n);
    auto f = nonzero_random_form(fp, n, d, rng);
    auto s = hilbert_series_quotient(f).series;
    for (int i = d; i <= n; ++i)
      CHECK(s.coeff(static_cast<std::size_t>(i)) ==
            binomial_big(n, i) - binomial_big(n, i - d) +
                s.coeff(static_cast<std::size_t>(n + d - i)));
    if ((n - d) % 2 == 0 && ((n - d) / 2) % 2 == 1) {
      BigInt mid = s.coeff(static_cast<std::size_t>((n + d) / 2));
      CHECK(mid % 2 == binomial_big(n, (n + d) / 2) % 2);
    }
  }
}

TEST_CASE("hilbert series of E/ann(f)") {
  SECTION("entries are the ranks; symmetric about (n-d)/2") {
    std::mt19937_64 rng(103);
    PrimeField fp(kDefaultPrime);
    for (int iter = 0; iter < 20; ++iter) {
      int n = 2 + static_cast<int>(rng() % 8);
      int d = 1 + static_cast<int>(rng() % n);
      auto f = nonzero_random_form(fp, n, d, rng);
      auto s = hilbert_series_ann_quotient(f);
      for (int i = 0; i <= n - d; ++i) {
        CHECK(s.coeff(static_cast<std::size_t>(i)) == mult_map_rank(f, i));
        CHECK(s.coeff(static_cast<std::size_t>(i)) ==
              s.coeff(static_cast<std::size_t>(n - d - i)));
      }
      for (int i = n - d + 1; i <= n; ++i) CHECK(s.coeff(static_cast<std::size_t>(i)) == 0);
    }
  }

  SECTION("f = x1x2x3 at n = 3 leaves only degree zero") {
    auto f = Form<RationalField>::monomial_form(Q, Monomial::full(3), Q.one());
    CHECK(hilbert_series_ann_quotient(f) == series_of({1, 0, 0, 0}));
  }

  SECTION("n=5 h_3 has rank 4 at i=1") {
    CHECK(hilbert_series_ann_quotient(h_form(Q, 5, 3)).coeff(1) == 4);
  }
}

TEST_CASE("ann(f)/(f) Hilbert function") {
  SECTION("vinberg values and symmetry about n/2") {
    auto s = ann_mod_ideal_hf(vinberg_forms(Q).f);
    CHECK(s == series_of({0, 0, 0, 3, 81, 81, 3, 0, 0, 0}));
  }

  SECTION("symmetry for random odd-degree forms") {
    std::mt19937_64 rng(107);
    PrimeField fp(kDefaultPrime);
    for (int iter = 0; iter < 15; ++iter) {
      int n = 3 + static_cast<int>(rng() % 8);  // n <= 10
      int d = 1 + 2 * static_cast<int>(rng() % ((n + 1) / 2));  // odd d <= n
      auto f = nonzero_random_form(fp, n, d, rng);
      auto s = ann_mod_ideal_hf(f);
      for (int i = 0; i <= n; ++i)
        CHECK(s.coeff(static_cast<std::size_t>(i)) == s.coeff(static_cast<std::size_t>(n - i)));
    }
  }

  SECTION("even degree is rejected") {
    auto f = Form<RationalField>::monomial_form(Q, Monomial::from_indices({1, 2}, 4), Q.one());
    CHECK_THROWS_AS(ann_mod_ideal_hf(f), ConstraintError);
  }

  SECTION("zero below (n-d)/2 when the bound is attained") {
    PrimeField fp(kDefaultPrime);
    auto f = random_form(7, 3, fp, 1);
    auto s = ann_mod_ideal_hf(f);
    for (int i = 0; i < 2; ++i) CHECK(s.coeff(static_cast<std::size_t>(i)) == 0);
  }
}

TEST_CASE("lower bound report") {
  CHECK(lower_bound(7, 3).a == series_of({1, 7, 21, 34, 28, 0, 0, 0}));
  CHECK(lower_bound(7, 5).a == series_of({1, 7, 21, 35, 35, 20, 1, 0}));
  CHECK(lower_bound(11, 5).a == series_of({1, 11, 55, 165, 330, 461, 451, 275, 1, 0, 0, 0}));
  CHECK(lower_bound(9, 3).a.coeff(6) == 2);  // the true generic value is 4

  SECTION("b t^6 and c t^6 split for (7,5)") {
    auto rep = lower_bound(7, 5);
    CHECK(rep.b.coeff(6) == 0);
    CHECK(rep.c.coeff(6) == 1);
    CHECK(rep.b_identity_checked);
  }

  SECTION("(11,5): b_8 = 0 and c_8 = 1 since b_3 = 165 is odd") {
    auto rep = lower_bound(11, 5);
    CHECK(rep.b.coeff(8) == 0);
    CHECK(rep.c.coeff(8) == 1);
    CHECK(rep.b.coeff(3) == 165);
  }

  SECTION("structure for all odd d <= n <= 30") {
    for (int n = 1; n <= 30; ++n)
      for (int d = 1; d <= n; d += 2) {
        auto rep = lower_bound(n, d);
        CHECK(rep.a == rep.b + rep.c);
        CHECK(rep.b_identity_checked);

        // at most one nonzero c entry, at (n+d)/2 with value 1
        int nonzero = 0;
        for (std::size_t i = 0; i < rep.c.size(); ++i)
          if (rep.c.coeff(i) != 0) {
            ++nonzero;
            CHECK(rep.c.coeff(i) == 1);
            CHECK(static_cast<int>(i) == (n + d) / 2);
          }
        CHECK(nonzero <= 1);

        // p has degree <= d-1 and is divisible by (1+t)
        CHECK(rep.p.degree() <= d - 1);
        CHECK(rep.p.eval(BigInt(-1)) == 0);

        // the defining identity, re-checked externally
        IntSeries lhs = IntSeries::zeros(static_cast<std::size_t>(n + d) + 1);
        for (int i = 0; i <= n + d; ++i)
          lhs.set(static_cast<std::size_t>(i),
                  rep.b.coeff(static_cast<std::size_t>(i)) +
                      rep.b.coeff(static_cast<std::size_t>(i - d >= 0 ? i - d : n + 1)));
        IntSeries rhs = rep.p.shifted((n + d) / 2 + 1) + IntSeries::binomial_row(n);
        CHECK(lhs == rhs);

        // B(t)(1+t^d) - (1+t)^n supported only in ((n+d)/2, (n+d)/2 + d]
        IntSeries diff = lhs - IntSeries::binomial_row(n);
        for (int i = 0; i <= n + d; ++i)
          if (2 * i <= n + d || i > (n + d) / 2 + d)
            CHECK(diff.coeff(static_cast<std::size_t>(i)) == 0);
      }
  }

  SECTION("errors") {
    CHECK_THROWS_AS(lower_bound(7, 2), ConstraintError);
    CHECK_THROWS_AS(lower_bound(3, 5), ConstraintError);
  }
}

TEST_CASE("equality diagnostic") {
  SECTION("random (7,3) over a large prime attains the bound") {
    PrimeField fp(kDefaultPrime);
    auto diag = equality_diagnostic(random_form(7, 3, fp, 1));
    CHECK(diag.equals_bound);
    CHECK(!diag.first_failure);
    for (const auto& row : diag.rows) CHECK(row.excess == 0);
  }

  SECTION("vinberg form fails first at i = 3") {
    auto diag = equality_diagnostic(vinberg_forms(Q).f);
    CHECK(!diag.equals_bound);
    REQUIRE(diag.first_failure);
    CHECK(*diag.first_failure == 3);
    const auto& row = diag.rows.back();
    CHECK(row.i == 3);
    CHECK(row.dim_ann == 4);
    CHECK(row.dim_ideal == 1);
    CHECK(row.c_i == 1);
    CHECK(row.excess == 2);
  }

  SECTION("a form with linear factor fails at i = 1") {
    PrimeField fp(kDefaultPrime);
    std::mt19937_64 rng(5);
    auto g = nonzero_random_form(fp, 11, 2, rng);
    auto x1 = Form<PrimeField>::monomial_form(fp, Monomial::from_indices({1}, 11), fp.one());
    auto f = wedge(x1, g);
    REQUIRE(!f.is_zero());
    auto diag = equality_diagnostic(f);
    REQUIRE(diag.first_failure);
    CHECK(*diag.first_failure == 1);
  }

  SECTION("even degree rejected") {
    auto f = Form<RationalField>::monomial_form(Q, Monomial::from_indices({1, 2}, 5), Q.one());
    CHECK_THROWS_AS(equality_diagnostic(f), ConstraintError);
  }
}

TEST_CASE("conjecture 6.2 series") {
  CHECK(mss_series(9, 3, 3) == series_of({1, 9, 36, 83, 117, 90, 4, 0, 0, 0}));

  SECTION("n = 8 closed form (3t)^3 (1+t)^2 route") {
    // p_8 = (27 t^6 (1+t)^2 + (1+t)^8) / (1+t^3)
    IntSeries numerator =
        series_of({27, 54, 27}).shifted(6) + IntSeries::binomial_row(8);
    IntSeries expect = exact_divide(numerator, series_of({1, 0, 0, 1}));
    CHECK(mss_series(8, 1, 1) == expect);
  }

  SECTION("coincides with the lower bound for c1 = 1, c2 = floor(n/2)") {
    for (int n = 4; n <= 30; ++n)
      CHECK(mss_series(n, 1, n / 2) == lower_bound(n, 3).a);
  }

  SECTION("non-exact division is a loud error") {
    CHECK_THROWS_AS(mss_series(9, 2, 2), ConstraintError);
    CHECK_THROWS_AS(mss_series(9, 1, 1), ConstraintError);
  }
}

TEST_CASE("conjecture 6.1 constant") {
  CHECK(conjecture61_c(21, 11, 5) == 0);
  CHECK(conjecture61_c(9, 7, 1) == 1);   // v = 1, s = 1
  CHECK(conjecture61_c(7, 5, 1) == 1);   // v = 1, s = 0

  SECTION("exhaustive search oracle") {
    for (int n = 5; n <= 25; ++n)
      for (int d = 5; d <= n; d += 2)
        for (int i = 0; i <= n; ++i) {
          int expect = 0;
          for (int v = 1; v <= 2 * n; ++v)
            for (int s = 0; 5 + 2 * v * s <= d + 2 * v; ++s)
              if (i == v * (v + 1) / 2 && 2 * (n - d) == v * v + 5 * v - 2 && d == 5 + 2 * v * s)
                expect = 1;
          CHECK(conjecture61_c(n, d, i) == expect);
        }
  }

  SECTION("non-triangular i is always 0") {
    for (int i : {2, 4, 5, 7, 8, 9, 11})
      CHECK(conjecture61_c(30, 7, i) == 0);
  }
}

TEST_CASE("refutation of conjecture 6.1") {
  auto rep = refute_conjecture61(21, 11);
  CHECK(rep.verdict == "REFUTED");
  CHECK(rep.mid == 5);
  CHECK(rep.mid_binomial == 20349);
  CHECK(rep.binomial_odd);
  CHECK(rep.parity_min_kernel == 1);
  CHECK(rep.conjecture_c == 0);
  REQUIRE(rep.bound_c_index);
  CHECK(*rep.bound_c_index == 16);

  CHECK(refute_conjecture61(7, 5).verdict == "NO_CONFLICT");
  CHECK(refute_conjecture61(9, 7).verdict == "NO_CONFLICT");
}

TEST_CASE("multisection") {
  CHECK(multisection_closed(8) == series_of({27, 54, 27}).shifted(6));
  CHECK(multisection_closed(7) == series_of({27, 27}).shifted(6));
  CHECK(multisection_direct(8, 6) == 27);
  CHECK(multisection_direct(8, 7) == 54);
  CHECK(multisection_direct(7, 5) == 0);

  SECTION("closed form equals direct summation for 4 <= n <= 40") {
    for (int n = 4; n <= 40; ++n) {
      auto closed = multisection_closed(n);
      for (int i = (n + 3 + 1) / 2; 2 * i <= n + 9; ++i)
        CHECK(closed.coeff(static_cast<std::size_t>(i)) == multisection_direct(n, i));
    }
  }

  SECTION("trisection identity at n = 12") {
    BigInt sum = 0;
    for (int k = 0; 3 * k <= 12; ++k)
      sum += (k % 2 == 0 ? 1 : -1) * binomial_big(12, 3 * k);
    CHECK(sum == 486);  // 2 * 3^5
  }

  SECTION("out of range") {
    CHECK_THROWS_AS(multisection_direct(8, 5), ConstraintError);
    CHECK_THROWS_AS(multisection_direct(8, 9), ConstraintError);
    CHECK_THROWS_AS(multisection_closed(3), ConstraintError);
  }
}

TEST_CASE("parity lemma") {
  auto l1 = parity_lemma(1);
  CHECK(l1.value == 5);
  CHECK(l1.odd);

  auto l2 = parity_lemma(2);
  CHECK(l2.value == 83);
  CHECK(l2.odd);
  CHECK(l2.unsigned_sum == 85);
  CHECK(3 * l2.unsigned_sum == 255);

  for (int ell = 1; ell <= 20; ++ell) {
    auto r = parity_lemma(ell);
    CHECK(r.odd);
    CHECK(r.identity_ok);
  }

  CHECK_THROWS_AS(parity_lemma(0), ConstraintError);
}

TEST_CASE("lex dominance of sampled series over the bound") {
  std::mt19937_64 rng(113);
  PrimeField fp(kDefaultPrime);
  for (int iter = 0; iter < 25; ++iter) {
    int n = 3 + static_cast<int>(rng() % 8);  // n <= 10
    int d = 1 + 2 * static_cast<int>(rng() % ((n + 1) / 2));
    auto f = nonzero_random_form(fp, n, d, rng);
    auto s = hilbert_series_quotient(f).series;
    CHECK(lex_compare(s, lower_bound(n, d).a) >= 0);
  }
}

TEST_CASE("exact division") {
  IntSeries prod = series_of({1, 2, 1}) * series_of({1, 0, 3});
  CHECK(exact_divide(prod, series_of({1, 2, 1})) == series_of({1, 0, 3}));
  CHECK_THROWS_AS(exact_divide(series_of({1, 1, 1}), series_of({1, 1})), ConstraintError);
}

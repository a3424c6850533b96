#include <catch2/catch_amalgamated.hpp>

#include "exh/certificates.hpp"
#include "oracles.hpp"

using namespace exh;

namespace {

const RationalField Q;

IntSeries series_of(std::vector<long long> v) {
  std::vector<BigInt> c(v.begin(), v.end());
  return IntSeries(std::move(c));
}

template <class F>
Form<F> var(const F& field, int i, int n) {
  return Form<F>::monomial_form(field, Monomial::from_indices({i}, n), field.one());
}

}  // namespace

TEST_CASE("h_form") {
  CHECK(h_form(Q, 3, 3) ==
        Form<RationalField>::monomial_form(Q, Monomial::full(3), Q.one()));
  CHECK(h_form(Q, 5, 3).term_count() == 10);

  auto h2 = h_form(Q, 4, 2);
  CHECK(h2.term_count() == 6);
  for (const auto& [mask, c] : h2.terms()) CHECK(c == BigRational(1));
}

TEST_CASE("cyclic form") {
  auto f = cyclic_form(Q, 6);
  CHECK(f.degree() == 3);
  CHECK(f.term_count() == 6);
  // the six normalized cubic terms, all with coefficient +1
  for (auto idx : std::vector<std::vector<int>>{
           {1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {4, 5, 6}, {1, 5, 6}, {1, 2, 6}})
    CHECK(f.coeff(Monomial::from_indices(idx, 6)) == BigRational(1));

  SECTION("term count and variable incidence for n = 8, 10") {
    for (int n : {8, 10}) {
      auto g = cyclic_form(Q, n);
      CHECK(g.term_count() == static_cast<std::size_t>(n));
      for (int v = 1; v <= n; ++v) {
        int count = 0;
        for (const auto& [mask, c] : g.terms())
          if (Monomial(mask, n).contains(v)) ++count;
        CHECK(count == n - 3);
      }
    }
  }

  CHECK_THROWS_AS(cyclic_form(Q, 7), ConstraintError);
  CHECK_THROWS_AS(cyclic_form(Q, 4), ConstraintError);
}

TEST_CASE("vinberg forms") {
  auto v = vinberg_forms(Q);
  auto expect_p1 = Form<RationalField>(Q, 9, 3);
  for (auto idx : std::vector<std::vector<int>>{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})
    expect_p1.add_term(Monomial::from_indices(idx, 9), Q.one());
  CHECK(v.p1 == expect_p1);

  CHECK(wedge(v.p1, v.f).is_zero());
  CHECK(wedge(v.p2, v.f).is_zero());
  CHECK(wedge(v.p3, v.f).is_zero());
  CHECK(wedge(v.p4, v.f).is_zero());

  SECTION("twelve terms, six coefficients 2 and six coefficients 1") {
    CHECK(v.f.term_count() == 12);
    int twos = 0, ones = 0;
    for (const auto& [mask, c] : v.f.terms()) {
      if (c == BigRational(2)) ++twos;
      if (c == BigRational(1)) ++ones;
    }
    CHECK(twos == 6);
    CHECK(ones == 6);
  }

  SECTION("every combination of the p_i is annihilated by each p_j") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 10; ++iter) {
      auto comb = v.p1.scaled(Q.from_int(static_cast<long long>(rng() % 7) - 3)) +
                  v.p2.scaled(Q.from_int(static_cast<long long>(rng() % 7) - 3)) +
                  v.p3.scaled(Q.from_int(static_cast<long long>(rng() % 7) - 3)) +
                  v.p4.scaled(Q.from_int(static_cast<long long>(rng() % 7) - 3));
      CHECK(wedge(v.p1, comb).is_zero());
      CHECK(wedge(comb, comb).is_zero());
    }
  }
}

TEST_CASE("verify_certificate series routes") {
  SECTION("n_minus_2 at n=5: 1+5t+10t^2+9t^3+t^4") {
    auto rep = verify_certificate({CertificateName::NMinus2, 5, 0});
    CHECK(rep.pass);
    CHECK(rep.mode == "rational");
    CHECK(rep.actual == series_of({1, 5, 10, 9, 1, 0}));
  }

  SECTION("cyclic at n=6: 1+6t+15t^2+19t^3+9t^4") {
    auto rep = verify_certificate({CertificateName::CyclicNMinus3, 6, 0});
    CHECK(rep.pass);
    CHECK(rep.actual == series_of({1, 6, 15, 19, 9, 0, 0}));
  }

  SECTION("vinberg9") {
    auto rep = verify_certificate({CertificateName::Vinberg9, 9, 0});
    CHECK(rep.pass);
    CHECK(rep.actual == series_of({1, 9, 36, 83, 117, 90, 4, 0, 0, 0}));
  }

  SECTION("h_form even-degree minimal series") {
    auto rep = verify_certificate({CertificateName::HForm, 6, 2});
    CHECK(rep.pass);
    CHECK(rep.actual == even_minimal_series(6, 2).resized(7));
    CHECK_THROWS_AS(verify_certificate({CertificateName::HForm, 6, 3}), ConstraintError);
  }

  SECTION("prime mode beyond n = 11") {
    auto rep = verify_certificate({CertificateName::NMinus2, 13, 0});
    CHECK(rep.pass);
    CHECK(rep.mode.substr(0, 6) == "prime(");
  }

  SECTION("constraint violations") {
    CHECK_THROWS_AS(verify_certificate({CertificateName::NMinus2, 6, 0}), ConstraintError);
    CHECK_THROWS_AS(verify_certificate({CertificateName::Vinberg9, 8, 0}), ConstraintError);
  }
}

TEST_CASE("h_{n-2} kernel route: rank n-1 for odd n") {
  for (int n : {5, 7, 9, 11}) {
    auto f = h_form(Q, n, n - 2);
    CHECK(mult_map_rank(f, 1) == n - 1);
    auto kernel = kernel_basis(f, 1);
    REQUIRE(kernel.size() == 1);
    CHECK(wedge(kernel[0], f).is_zero());
  }
}

TEST_CASE("cyclic form surjectivity route for n in {6, 8, 10}") {
  for (int n : {6, 8, 10}) {
    auto f = cyclic_form(Q, n);
    auto at = [&](int i) { return (i - 1 + n) % n + 1; };
    for (int j = 1; j <= n; ++j) {
      auto prod = wedge(wedge(var(Q, at(j), n), var(Q, at(j - 2), n)), f);
      REQUIRE(prod.term_count() == 1);
      auto expect = complement(Monomial::from_indices({at(j - 1)}, n));
      auto it = prod.terms().begin();
      CHECK(Monomial(it->first, n) == expect);
      CHECK((it->second == BigRational(1) || it->second == BigRational(-1)));
    }
    CHECK(mult_map_rank(f, 1) == n);  // injective on E_1
  }
}

TEST_CASE("h2d power identity") {
  CHECK(h2d_power_identity(Q, 4, 1));
  CHECK(h2d_power_identity(Q, 4, 2));
  CHECK(h2d_power_identity(Q, 8, 3));

  SECTION("prime mode") {
    CHECK(h2d_power_identity(PrimeField(kDefaultPrime), 8, 3));
    CHECK_THROWS_AS(h2d_power_identity(PrimeField(3), 8, 3), ConstraintError);
  }

  SECTION("via verify_certificate") {
    auto rep = verify_certificate({CertificateName::H2dPower, 8, 3});
    CHECK(rep.pass);
  }

  CHECK_THROWS_AS(h2d_power_identity(Q, 5, 3), ConstraintError);  // 2d > n
}

TEST_CASE("odd h_d is annihilated by x1 + ... + xn") {
  for (auto [n, d] : {std::pair{4, 3}, {6, 3}, {7, 5}, {8, 5}, {5, 1}}) {
    Form<RationalField> e1(Q, n, 1);
    for (int i = 1; i <= n; ++i) e1.add_term(Monomial::from_indices({i}, n), Q.one());
    CHECK(wedge(e1, h_form(Q, n, d)).is_zero());
  }
}

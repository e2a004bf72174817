#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qplane/bargmann.hpp"
#include "support/generators.hpp"

using namespace qplane;
using namespace qplane::testing;

namespace {

using C = std::complex<double>;
const GaussianRational kQ{Rational(1, 2), Rational(0)};

Element<GaussianRational> mono(std::uint32_t j, std::uint32_t k,
                               GaussianRational c = GaussianRational(1)) {
  return Element<GaussianRational>::monomial(Monomial{j, k}, std::move(c), kQ);
}

}  // namespace

TEST_CASE("normalized monomials") {
  auto w = WeightSequence<double>::factorial();
  SECTION("index 0 with w0 = 1 is the unit") {
    auto p0 = normalized_monomial(0, w);
    REQUIRE(p0.term_count() == 1);
    CHECK(std::abs(p0.coeff(Monomial{0, 0}) - C{1.0, 0.0}) < 1e-15);
  }
  SECTION("index 2 under factorial weights has coefficient 1/sqrt(2)") {
    auto p2 = normalized_monomial(2, w);
    CHECK(std::abs(p2.coeff(Monomial{2, 0}) - C{1.0 / std::sqrt(2.0), 0.0}) < 1e-14);
  }
  SECTION("orthonormality up to index 6") {
    for (std::uint32_t j = 0; j <= 6; ++j)
      for (std::uint32_t k = 0; k <= 6; ++k) {
        C value = inner(normalized_monomial(j, w), normalized_monomial(k, w), w);
        CHECK(std::abs(value - (j == k ? C{1.0, 0.0} : C{0.0, 0.0})) < 1e-12);
      }
  }
  SECTION("the exact variant hands back the unsquare-rooted pair") {
    auto wq = WeightSequence<Rational>::factorial();
    auto [norm_sq, m] = normalized_monomial_exact(2, wq);
    CHECK(norm_sq == 2);
    CHECK(m == Monomial{2, 0});
    // and the pair certifies orthonormality exactly: <theta^j, theta^j> = w_j
    CHECK(inner(mono(2, 0), mono(2, 0), wq) == GaussianRational(norm_sq));
  }
}

TEST_CASE("functional calculus on finite coefficient lists") {
  SECTION("unit coordinates map to plain powers") {
    std::vector<GaussianRational> coords(4, GaussianRational(0));
    coords[3] = GaussianRational(1);
    CHECK(theta_polynomial(coords, kQ) == mono(3, 0));
  }
  SECTION("the zero list maps to the zero element") {
    CHECK(theta_polynomial(std::vector<GaussianRational>{}, kQ).is_zero());
    CHECK(theta_polynomial(std::vector<GaussianRational>(3, GaussianRational(0)), kQ).is_zero());
  }
  SECTION("norm: coefficients (1,1) under factorial weights give w0 + w1 = 2") {
    auto f = theta_polynomial(std::vector<GaussianRational>{GaussianRational(1), GaussianRational(1)}, kQ);
    CHECK(inner(f, f, WeightSequence<Rational>::factorial()) == GaussianRational(2));
  }
  SECTION("norm identity ||f||^2 = sum |f_j|^2 w_j on random coefficients") {
    auto w = WeightSequence<Rational>::q_factorial(Rational(1, 2), Rational(1));
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<GaussianRational> coords;
      for (int j = 0; j < 5; ++j) coords.push_back(random_scalar());
      Rational expected = 0;
      for (std::size_t j = 0; j < coords.size(); ++j)
        expected += coords[j].norm_sq() * w.at(static_cast<long>(j));
      CHECK(inner(theta_polynomial(coords, kQ), theta_polynomial(coords, kQ), w) ==
            GaussianRational(expected));
    }
  }
}

TEST_CASE("holomorphic projection") {
  auto w = WeightSequence<Rational>::factorial();
  SECTION("identity on powers of theta") {
    for (std::uint32_t a = 0; a <= 5; ++a) CHECK(project_holomorphic(mono(a, 0), w) == mono(a, 0));
  }
  SECTION("kills pure thetabar powers") {
    CHECK(project_holomorphic(mono(0, 1), w).is_zero());
    CHECK(project_holomorphic(mono(0, 3), w).is_zero());
    CHECK(project_holomorphic(mono(2, 5), w).is_zero());
  }
  SECTION("t^2 tb maps to (w2/w1) t = 2t") {
    CHECK(project_holomorphic(mono(2, 1), w) == mono(1, 0, GaussianRational(2)));
  }
  SECTION("idempotent on random elements") {
    auto wq = WeightSequence<Rational>::q_factorial(Rational(1, 2), Rational(1));
    for (int trial = 0; trial < 25; ++trial) {
      auto f = random_element(kQ, 5, 5);
      auto once = project_holomorphic(f, wq);
      CHECK(project_holomorphic(once, wq) == once);
    }
  }
  SECTION("symmetric for the pairing on random elements") {
    auto wq = WeightSequence<Rational>::q_factorial(Rational(2), Rational(1));
    for (int trial = 0; trial < 25; ++trial) {
      auto f = random_element(kQ, 5, 5), g = random_element(kQ, 5, 5);
      CHECK(inner(f, project_holomorphic(g, wq), wq) == inner(project_holomorphic(f, wq), g, wq));
    }
  }
  SECTION("range contains no thetabar powers") {
    for (int trial = 0; trial < 25; ++trial) {
      auto out = project_holomorphic(random_element(kQ, 6, 6), w);
      for (const auto& [m, c] : out.terms()) CHECK(m.k == 0);
    }
  }
  SECTION("reproduces finite functional-calculus images") {
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<GaussianRational> coords;
      for (int j = 0; j < 6; ++j) coords.push_back(random_scalar());
      auto f = theta_polynomial(coords, kQ);
      CHECK(project_holomorphic(f, w) == f);
    }
  }
  SECTION("restricted to the truncated orthonormal basis it is the identity matrix") {
    auto wd = WeightSequence<double>::factorial();
    const std::size_t n = 8;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        C value = inner(normalized_monomial(static_cast<std::uint32_t>(i), wd),
                        project_holomorphic(normalized_monomial(static_cast<std::uint32_t>(j), wd), wd),
                        wd);
        CHECK(std::abs(value - (i == j ? C{1.0, 0.0} : C{0.0, 0.0})) < 1e-12);
      }
  }
}

TEST_CASE("fock vectors") {
  auto w = WeightSequence<double>::factorial();
  SECTION("basis vectors round-trip to normalized monomials") {
    for (std::size_t a = 0; a < 5; ++a) {
      auto v = FockVector<C>::basis_vector(a, 6, w);
      auto e = fock_to_element(v);
      auto expected = normalized_monomial(static_cast<std::uint32_t>(a), w);
      for (const auto& [m, c] : expected.terms())
        CHECK(std::abs(e.coeff(m) - c) < 1e-14);
    }
  }
  SECTION("construction validates") {
    CHECK_THROWS_AS(FockVector<C>(std::vector<C>{}, w), domain_error);
    CHECK_THROWS_AS(FockVector<C>::basis_vector(6, 6, w), domain_error);
  }
}

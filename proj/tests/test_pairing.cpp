#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qplane/pairing.hpp"
#include "support/generators.hpp"

using namespace qplane;
using namespace qplane::testing;

namespace {

const GaussianRational kQ{Rational(1, 2), Rational(0)};

Element<GaussianRational> mono(std::uint32_t j, std::uint32_t k,
                               GaussianRational c = GaussianRational(1)) {
  return Element<GaussianRational>::monomial(Monomial{j, k}, std::move(c), kQ);
}

WeightSequence<Rational> one_two_one() {
  return WeightSequence<Rational>::table({Rational(1), Rational(2), Rational(1)},
                                         TableExtension::repeat_last);
}

}  // namespace

TEST_CASE("inner product tables") {
  auto one = mono(0, 0);
  auto ttb = mono(1, 1);
  SECTION("<1,1> = w0, <t tb, 1> = w1, <t tb, t tb> = w2 across families") {
    std::vector<WeightSequence<Rational>> families = {
        WeightSequence<Rational>::factorial(), WeightSequence<Rational>::constant(Rational(3)),
        WeightSequence<Rational>::q_factorial(Rational(1, 2), Rational(1))};
    for (const auto& w : families) {
      CHECK(inner(one, one, w) == GaussianRational(w.at(0)));
      CHECK(inner(ttb, one, w) == GaussianRational(w.at(1)));
      CHECK(inner(one, ttb, w) == GaussianRational(w.at(1)));
      CHECK(inner(ttb, ttb, w) == GaussianRational(w.at(2)));
    }
  }
  SECTION("<t^j, t^k> = delta_{jk} w_j") {
    auto w = WeightSequence<Rational>::factorial();
    for (std::uint32_t j = 0; j <= 5; ++j)
      for (std::uint32_t k = 0; k <= 5; ++k) {
        auto value = inner(mono(j, 0), mono(k, 0), w);
        if (j == k)
          CHECK(value == GaussianRational(w.at(j)));
        else
          CHECK(value.is_zero());
      }
  }
  SECTION("the (1,2,1,...) table makes <1 - t tb, 1 - t tb> = -2") {
    auto f = sub(mono(0, 0), mono(1, 1));
    CHECK(inner(f, f, one_two_one()) == GaussianRational(Rational(-2)));
  }
}

TEST_CASE("inner product symmetries") {
  auto w = WeightSequence<Rational>::q_factorial(Rational(1, 2), Rational(1));
  SECTION("Hermitian: <f,g>* = <g,f>") {
    for (int trial = 0; trial < 25; ++trial) {
      auto f = random_element(kQ), g = random_element(kQ);
      CHECK(inner(f, g, w).conj() == inner(g, f, w));
    }
  }
  SECTION("star compatibility: <f,g>* = <f*, g*>") {
    for (int trial = 0; trial < 25; ++trial) {
      auto f = random_element(kQ), g = random_element(kQ);
      CHECK(inner(f, g, w).conj() == inner(star(f), star(g), w));
    }
  }
  SECTION("distinct sectors are orthogonal") {
    for (int trial = 0; trial < 50; ++trial) {
      Monomial a = random_monomial(5), b = random_monomial(5);
      if (sector_of(a) == sector_of(b)) continue;
      CHECK(inner(mono(a.j, a.k), mono(b.j, b.k), w).is_zero());
    }
  }
}

TEST_CASE("sectors and their canonical elements") {
  SECTION("sector and max-degree of monomials") {
    CHECK(sector_of(Monomial{1, 1}) == 0);
    CHECK(maxdeg(Monomial{1, 1}) == 1);
    CHECK(sector_of(Monomial{3, 0}) == 3);
    CHECK(maxdeg(Monomial{3, 0}) == 3);
    CHECK(sector_of(Monomial{0, 2}) == -2);
    CHECK(maxdeg(Monomial{0, 2}) == 2);
  }
  SECTION("sector_element formula") {
    CHECK(sector_element(0, 1) == Monomial{1, 1});
    CHECK(sector_element(2, 3) == Monomial{3, 1});
    CHECK(sector_element(-2, 2) == Monomial{0, 2});
    CHECK_THROWS_AS(sector_element(3, 2), domain_error);
  }
  SECTION("<eps_r, eps_s> = w_{r+s-|n|}") {
    auto w = WeightSequence<Rational>::q_factorial(Rational(2), Rational(1));
    for (long n = -3; n <= 3; ++n) {
      std::uint32_t abs_n = static_cast<std::uint32_t>(n < 0 ? -n : n);
      for (std::uint32_t r = abs_n; r <= abs_n + 5; ++r)
        for (std::uint32_t s = abs_n; s <= abs_n + 5; ++s) {
          Monomial er = sector_element(n, r), es = sector_element(n, s);
          auto value = inner(mono(er.j, er.k), mono(es.j, es.k), w);
          CHECK(value == GaussianRational(w.at(static_cast<long>(r) + s - abs_n)));
        }
    }
    // The worked case n = -1, r = s = 2 gives w_3.
    Monomial e2 = sector_element(-1, 2);
    CHECK(inner(mono(e2.j, e2.k), mono(e2.j, e2.k), w) == GaussianRational(w.at(3)));
  }
}

TEST_CASE("gram matrices") {
  auto w = WeightSequence<Rational>::factorial();
  SECTION("singleton basis") {
    auto g = gram<GaussianRational>({mono(0, 0)}, w);
    REQUIRE(g.rows() == 1);
    CHECK(g(0, 0) == GaussianRational(1));
  }
  SECTION("maxdeg <= 1 monomial Gram, factorial weights") {
    std::vector<Element<GaussianRational>> basis;
    for (const Monomial& m : monomials_up_to_maxdeg(1)) basis.push_back(mono(m.j, m.k));
    auto g = gram(basis, w);
    REQUIRE(g.rows() == 4);
    // order: 1, tb, t, t tb
    CHECK(g(0, 0) == GaussianRational(1));   // w0
    CHECK(g(0, 3) == GaussianRational(1));   // <1, t tb> = w1
    CHECK(g(3, 3) == GaussianRational(2));   // w2
    CHECK(g(1, 1) == GaussianRational(1));   // <tb, tb> = w1
    CHECK(g(0, 1).is_zero());
  }
  SECTION("Gram equals its conjugate transpose for random bases") {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Element<GaussianRational>> basis;
      for (int i = 0; i < 4; ++i) basis.push_back(random_element(kQ));
      auto g = gram(basis, w);  // would throw if the self-check failed
      for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) CHECK(g(i, j).conj() == g(j, i));
    }
  }
}

TEST_CASE("hankel slices") {
  auto w = WeightSequence<Rational>::factorial();
  auto slice = hankel_slice(w, 2, 3, 5);
  REQUIRE(slice.mat.rows() == 3);
  REQUIRE(slice.mat.cols() == 6);
  for (std::size_t rp = 0; rp < 3; ++rp)
    for (long sp = 0; sp <= 5; ++sp)
      CHECK(slice.mat(rp, static_cast<std::size_t>(sp)) == w.at(static_cast<long>(rp) + sp + 2));
}

TEST_CASE("exact rank and left null vectors") {
  DenseMatrix<Rational> m(2, 3);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;  // row 1 = 2 * row 0
  CHECK(exact_rank(m) == 1);
  auto null_vec = exact_left_null_vector(m);
  REQUIRE(null_vec.has_value());
  // x^T m = 0 for the returned x.
  for (std::size_t col = 0; col < 3; ++col) {
    Rational dot = 0;
    for (std::size_t row = 0; row < 2; ++row) dot += (*null_vec)[row] * m(row, col);
    CHECK(sgn(dot) == 0);
  }
  DenseMatrix<Rational> full(2, 2);
  full(0, 0) = 1; full(0, 1) = 0; full(1, 0) = 0; full(1, 1) = 1;
  CHECK(exact_rank(full) == 2);
  CHECK_FALSE(exact_left_null_vector(full).has_value());
}

TEST_CASE("nondegeneracy scan") {
  SECTION("constant weights: candidates for every order >= 2, verified") {
    auto w = WeightSequence<Rational>::constant(Rational(1));
    auto report = nondegeneracy_scan(w, 2, 3, 10);
    for (const auto& entry : report.entries) {
      if (entry.order == 1) {
        CHECK(entry.verdict == ScanVerdict::certified_nondegenerate);
        continue;
      }
      REQUIRE(entry.verdict == ScanVerdict::candidate_witness);
      REQUIRE(entry.witness.size() == entry.order);
      // Re-verify orthogonality against every scanned column.
      auto slice = hankel_slice(w, entry.m, entry.order, entry.horizon);
      for (std::size_t col = 0; col < slice.mat.cols(); ++col) {
        Rational dot = 0;
        for (std::size_t row = 0; row < entry.order; ++row)
          dot += entry.witness[row] * slice.mat(row, col);
        CHECK(sgn(dot) == 0);
      }
      // And through the pairing itself, via the witness element.
      auto f = witness_element(entry, GaussianRational(1));
      std::uint32_t abs_m = static_cast<std::uint32_t>(entry.m);
      for (std::uint32_t sp = 0; sp <= static_cast<std::uint32_t>(entry.horizon); ++sp) {
        Monomial eps = sector_element(entry.m, abs_m + sp);
        auto g = Element<GaussianRational>::monomial(eps, GaussianRational(1), GaussianRational(1));
        CHECK(inner(g, f, w).is_zero());
      }
    }
  }
  SECTION("the order-2 constant-weight witness is (1, -1)") {
    auto w = WeightSequence<Rational>::constant(Rational(1));
    auto report = nondegeneracy_scan(w, 0, 2, 6);
    const auto& entry = report.entries.back();
    REQUIRE(entry.order == 2);
    REQUIRE(entry.verdict == ScanVerdict::candidate_witness);
    REQUIRE(entry.witness.size() == 2);
    CHECK(entry.witness[0] == 1);
    CHECK(entry.witness[1] == -1);
  }
  SECTION("factorial weights: certified everywhere in scope") {
    auto w = WeightSequence<Rational>::factorial();
    auto report = nondegeneracy_scan(w, 3, 4, 8);
    CHECK(report.entries.size() == 4 * 4);
    for (const auto& entry : report.entries)
      CHECK(entry.verdict == ScanVerdict::certified_nondegenerate);
  }
  SECTION("order 1 with positive weights is always certified") {
    auto w = WeightSequence<Rational>::q_factorial(Rational(1, 3), Rational(2));
    auto report = nondegeneracy_scan(w, 1, 1, 3);
    for (const auto& entry : report.entries)
      CHECK(entry.verdict == ScanVerdict::certified_nondegenerate);
  }
  SECTION("floating path finds the same constant-weight degeneracy") {
    auto w = WeightSequence<double>::constant(1.0);
    auto report = nondegeneracy_scan(w, 1, 3, 8);
    for (const auto& entry : report.entries) {
      if (entry.order == 1) continue;
      REQUIRE(entry.verdict == ScanVerdict::candidate_witness);
      auto slice = hankel_slice(w, entry.m, entry.order, entry.horizon);
      for (std::size_t col = 0; col < slice.mat.cols(); ++col) {
        double dot = 0;
        for (std::size_t row = 0; row < entry.order; ++row)
          dot += entry.witness[row] * slice.mat(row, col);
        CHECK(std::abs(dot) < 1e-10);
      }
    }
  }
}

TEST_CASE("definiteness probe") {
  SECTION("factorial weights look positive definite") {
    auto report = definiteness_probe(WeightSequence<double>::factorial(), 3);
    CHECK(report.basis.size() == 16);
    CHECK(report.min_eigenvalue > 1e-9);
    CHECK_FALSE(report.witness.has_value());
  }
  SECTION("(1,2,1,...) is indefinite at maxdeg 1 with witness on {1, t tb}") {
    auto w = WeightSequence<double>::table({1.0, 2.0, 1.0}, TableExtension::repeat_last);
    auto report = definiteness_probe(w, 1);
    CHECK(report.min_eigenvalue == Catch::Approx(-1.0).margin(1e-12));
    REQUIRE(report.witness.has_value());
    const auto& witness = *report.witness;
    for (const auto& [m, c] : witness.terms()) {
      bool on_support = (m == Monomial{0, 0}) || (m == Monomial{1, 1});
      if (!on_support) CHECK(std::abs(c) < 1e-12);
    }
    // Rayleigh quotient of the normalized witness equals the eigenvalue.
    auto value = inner(witness, witness, w);
    CHECK(value.real() == Catch::Approx(report.min_eigenvalue).margin(1e-10));
  }
  SECTION("maxdeg 0 reduces to w0") {
    auto report = definiteness_probe(WeightSequence<double>::constant(3.0), 0);
    CHECK(report.min_eigenvalue == Catch::Approx(3.0));
  }
  SECTION("positive probe implies the discriminant condition") {
    std::vector<WeightSequence<double>> families = {
        WeightSequence<double>::factorial(), WeightSequence<double>::constant(1.0),
        WeightSequence<double>::q_factorial(0.5, 1.0), WeightSequence<double>::q_factorial(0.75, 1.0),
        WeightSequence<double>::table({1.0, 2.0, 1.0}, TableExtension::repeat_last)};
    for (const auto& w : families) {
      auto report = definiteness_probe(w, 1);
      if (report.min_eigenvalue > 0.0)
        CHECK(w.at(1) * w.at(1) - w.at(0) * w.at(2) < 0.0);
    }
  }
}

TEST_CASE("monomial enumeration order") {
  auto list = monomials_up_to_maxdeg(1);
  REQUIRE(list.size() == 4);
  CHECK(list[0] == Monomial{0, 0});
  CHECK(list[1] == Monomial{0, 1});
  CHECK(list[2] == Monomial{1, 0});
  CHECK(list[3] == Monomial{1, 1});
  CHECK(monomials_up_to_maxdeg(3).size() == 16);
}

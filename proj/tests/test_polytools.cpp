#include <random>

#include "doctest.h"

#include "chronos/errors.hpp"
#include "chronos/polytools.hpp"

using namespace chronos;

TEST_CASE("poly_eval uses ascending coefficients") {
  CHECK(poly_eval(Polynomial{2, -1}, 0.0) == 2.0);
  CHECK(poly_eval(Polynomial{1, 0, 0, 0}, 7.5) == 1.0);
  CHECK(poly_eval(Polynomial{1, 0, 0, 0}, Complex(3.0, -2.0)) == Complex(1.0, 0.0));

  const Polynomial pl{75.9375, 23.6250, 5.2969};
  const double x = 3.7821;
  const double direct = 75.9375 + 23.6250 * x + 5.2969 * x * x;
  CHECK(poly_eval(pl, x) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(poly_eval(pl, x) == doctest::Approx(241.06).epsilon(1e-4));
}

TEST_CASE("Polynomial rejects empty coefficient lists") {
  CHECK_THROWS_AS(Polynomial(std::vector<double>{}), InvalidArgument);
}

TEST_CASE("poly_roots on the M=3 mixed Pade denominator") {
  const RootSet rs = poly_roots(Polynomial{67.5, -39, 9.375, -1});
  REQUIRE(rs.roots.size() == 2);
  CHECK(rs.real_count == 1);
  CHECK(rs.is_real(0));
  CHECK(rs.roots[0].imag() == 0.0);
  CHECK(rs.roots[0].real() == doctest::Approx(3.7821).epsilon(1e-4));
  CHECK(rs.roots[1].real() == doctest::Approx(2.7964).epsilon(1e-4));
  CHECK(rs.roots[1].imag() == doctest::Approx(3.1665).epsilon(1e-4));
  CHECK(rs.implied_degree() == 3);
}

TEST_CASE("poly_roots on small hand examples") {
  const RootSet one = poly_roots(Polynomial{-1, 1});
  REQUIRE(one.roots.size() == 1);
  CHECK(one.roots[0].real() == doctest::Approx(1.0));

  const RootSet two = poly_roots(Polynomial{2, -3, 1});
  REQUIRE(two.roots.size() == 2);
  CHECK(two.real_count == 2);
  CHECK(two.roots[0].real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(two.roots[1].real() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("poly_roots rejects degenerate input") {
  CHECK_THROWS_AS(poly_roots(Polynomial{3.0}), InvalidArgument);
  CHECK_THROWS_AS(poly_roots(Polynomial{1.0, 2.0, 0.0}), InvalidArgument);
}

TEST_CASE("poly_roots recovers roots of polynomials built from them") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> re(0.5, 6.0), im(0.5, 4.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int degree = 1 + trial % 6;
    std::vector<Complex> truth;
    const int pairs = degree / 2 > 0 ? (trial % 2) * (degree / 2) : 0;
    for (int i = 0; i < pairs; ++i) {
      const Complex r(re(gen), im(gen));
      truth.push_back(r);
      truth.push_back(std::conj(r));
    }
    while (static_cast<int>(truth.size()) < degree) truth.emplace_back(re(gen) + 2.0 * truth.size(), 0.0);
    const RootSet rs = poly_roots(poly_from_roots(truth));
    const std::vector<Complex> found = rs.expanded();
    REQUIRE(found.size() == truth.size());
    for (const Complex& t : truth) {
      double best = 1e300;
      for (const Complex& f : found) best = std::min(best, std::abs(f - t));
      CHECK(best <= 1e-8 * std::max(1.0, std::abs(t)));
    }
  }
}

TEST_CASE("shift_poly reproduces the multiroot numerator shift") {
  const Polynomial pr = shift_poly(Polynomial{13.6802, -3.4798, -3.1449, -0.125}, 2.3917);
  const double expected[] = {-14.3410, 20.6678, -4.0418, 0.125};
  for (int i = 0; i < 4; ++i) CHECK(pr[i] == doctest::Approx(expected[i]).epsilon(5e-4));
}

TEST_CASE("shift_poly trivial cases") {
  CHECK(shift_poly(Polynomial{4.5}, 3.0)[0] == 4.5);
  const Polynomial x = shift_poly(Polynomial{0, 1}, 1.75);
  CHECK(x[0] == 1.75);
  CHECK(x[1] == -1.0);
}

TEST_CASE("shift_poly satisfies p_r(r - x) == p(x) and round-trips") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c(1 + trial % 7);
    for (double& v : c) v = u(gen);
    const Polynomial p(c);
    const double r = 1.0 + std::abs(u(gen));
    const Polynomial pr = shift_poly(p, r);
    for (int k = 0; k < 5; ++k) {
      const double x = u(gen);
      CHECK(poly_eval(pr, r - x) == doctest::Approx(poly_eval(p, x)).epsilon(1e-12).scale(1.0));
    }
    const Polynomial back = shift_poly(pr, r);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(back[i] == doctest::Approx(c[i]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("shift_poly_rows shifts every row") {
  Eigen::MatrixXd rows(2, 3);
  rows << 1, 2, 3, -1, 0, 4;
  const Eigen::MatrixXd shifted = shift_poly_rows(rows, 0.7);
  for (int i = 0; i < 2; ++i) {
    const Polynomial single = shift_poly(Polynomial{rows(i, 0), rows(i, 1), rows(i, 2)}, 0.7);
    for (int j = 0; j < 3; ++j) CHECK(shifted(i, j) == doctest::Approx(single[j]));
  }
}

TEST_CASE("partial_fraction_residues hand examples") {
  const std::vector<Complex> one{{3.0, 0.0}};
  CHECK(partial_fraction_residues(one)[0] == Complex(1.0, 0.0));

  const std::vector<Complex> two{{1.0, 0.0}, {2.0, 0.0}};
  const auto a = partial_fraction_residues(two);
  CHECK(a[0].real() == doctest::Approx(1.0));
  CHECK(a[1].real() == doctest::Approx(-1.0));
}

TEST_CASE("partial_fraction_residues for the M=3 example") {
  const RootSet rs = poly_roots(Polynomial{67.5, -39, 9.375, -1});
  const auto a = partial_fraction_residues(rs.expanded());
  REQUIRE(a.size() == 3);
  // Real root first; the third entry belongs to the implied conjugate.
  CHECK(a[0].real() == doctest::Approx(0.0909).epsilon(1e-3));
  CHECK(std::abs(a[0].imag()) < 1e-14);
  CHECK(a[1].real() == doctest::Approx(-0.0455).epsilon(1e-3));
  CHECK(a[1].imag() == doctest::Approx(0.0142).epsilon(5e-3));
  CHECK(std::abs(a[2] - std::conj(a[1])) < 1e-14);
}

TEST_CASE("partial fractions reconstruct 1") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int degree = 1; degree <= 6; ++degree) {
    std::vector<Complex> roots;
    for (int i = 0; i < degree; ++i) roots.emplace_back(1.5 * i + 1.0 + 0.1 * u(gen), u(gen));
    const auto a = partial_fraction_residues(roots);
    for (int k = 0; k < 10; ++k) {
      const Complex x(u(gen), u(gen));
      Complex sum = 0.0;
      for (int i = 0; i < degree; ++i) {
        Complex prod = a[i];
        for (int j = 0; j < degree; ++j)
          if (j != i) prod *= roots[j] - x;
        sum += prod;
      }
      CHECK(std::abs(sum - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("partial_fraction_residues rejects coincident roots") {
  const std::vector<Complex> roots{{2.0, 0.0}, {2.0 + 1e-12, 0.0}};
  CHECK_THROWS_AS(partial_fraction_residues(roots), NumericalError);
}

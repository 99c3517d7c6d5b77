#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "na/symbols.hpp"
#include "oracles.hpp"

using na::Complex;
using na::TolerancePolicy;
namespace sym = na::symbols;

namespace {

sym::BlaschkeProduct product_of(std::vector<Complex> zeros) {
  return sym::BlaschkeProduct(std::move(zeros));
}

}  // namespace

TEST_CASE("blaschke_eval") {
  const auto b05 = product_of({Complex{0.5, 0.0}});
  CHECK(sym::blaschke_eval(b05, {0.0, 0.0}) == Complex{-0.5, 0.0});

  CHECK(std::abs(sym::blaschke_eval(b05, {1.0, 0.0})) == doctest::Approx(1.0).epsilon(1e-12));

  const auto pm = product_of({Complex{0.5, 0.0}, Complex{-0.5, 0.0}});
  CHECK(sym::blaschke_eval(pm, {0.0, 0.0}).real() == doctest::Approx(-0.25).epsilon(1e-14));

  CHECK_THROWS_AS((void)sym::blaschke_eval(b05, {1.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(product_of({Complex{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("blaschke boundary values are unimodular") {
  std::mt19937_64 rng(31);
  const auto zeros = oracles::random_distinct_zeros(4, rng);
  const auto b = product_of(zeros);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 100; ++i) {
    const Complex z = std::polar(1.0, angle(rng));
    CHECK(std::abs(std::abs(sym::blaschke_eval(b, z)) - 1.0) <= 1e-10);
  }
}

TEST_CASE("singular_inner_eval") {
  const sym::SingularInnerAtom atom{1.0, Complex{1.0, 0.0}};
  CHECK(sym::singular_inner_eval(atom, {0.0, 0.0}).real() ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  const sym::SingularInnerAtom small{1e-12, Complex{1.0, 0.0}};
  CHECK(std::abs(sym::singular_inner_eval(small, {0.0, 0.0}) - Complex{1.0, 0.0}) <= 1e-11);

  const Complex v = sym::singular_inner_eval(atom, {0.9, 0.0});
  CHECK(std::abs(v) == doctest::Approx(std::exp(-19.0)).epsilon(1e-12));

  CHECK(std::abs(sym::singular_inner_eval(atom, {0.0, 0.5})) < 1.0);
  CHECK_THROWS_AS((void)sym::singular_inner_eval(atom, {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(sym::SingularInnerAtom(0.0, Complex{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("blaschke_fourier single factor") {
  const auto b05 = product_of({Complex{0.5, 0.0}});
  const auto series = sym::blaschke_fourier(b05, 16);
  CHECK(series.coefficient(0).real() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(series.coefficient(1).real() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(series.coefficient(2).real() == doctest::Approx(0.375).epsilon(1e-14));

  for (long k = 0; k < 8; ++k) {
    const Complex oracle = oracles::fourier_coefficient(
        [&](Complex z) { return sym::blaschke_eval(b05, z); }, k);
    CHECK(std::abs(series.coefficient(k) - oracle) <= 1e-10);
  }

  const auto z_only = sym::blaschke_fourier(product_of({Complex{0.0, 0.0}}), 8);
  CHECK(std::abs(z_only.coefficient(1) - Complex{1.0, 0.0}) <= 1e-15);
  for (long k = 0; k < 8; ++k) {
    if (k == 1) continue;
    CHECK(std::abs(z_only.coefficient(k)) <= 1e-15);
  }
  CHECK(z_only.tail().bound == 0.0);
}

TEST_CASE("blaschke_fourier single-factor coefficient law") {
  for (const Complex lambda : {Complex{0.3, 0.0}, Complex{0.0, 0.5}, Complex{-0.7, 0.0}}) {
    const auto b = product_of({lambda});
    const auto series = sym::blaschke_fourier(b, 12);
    CHECK(std::abs(series.coefficient(0) + lambda) <= 1e-14);
    Complex pw{1.0, 0.0};
    for (long k = 1; k < 12; ++k) {
      const Complex expected = (1.0 - std::norm(lambda)) * pw;
      CHECK(std::abs(series.coefficient(k) - expected) <= 1e-14);
      const Complex oracle = oracles::fourier_coefficient(
          [&](Complex z) { return sym::blaschke_eval(b, z); }, k);
      CHECK(std::abs(series.coefficient(k) - oracle) <= 1e-10);
      pw *= std::conj(lambda);
    }
  }
}

TEST_CASE("blaschke_fourier product vs quadrature, tail certificate honored") {
  std::mt19937_64 rng(77);
  const auto zeros = oracles::random_distinct_zeros(3, rng);
  const auto b = product_of(zeros);
  const auto series = sym::blaschke_fourier(b, 48);
  for (long k = 0; k < 32; ++k) {
    const Complex oracle = oracles::fourier_coefficient(
        [&](Complex z) { return sym::blaschke_eval(b, z); }, k);
    CHECK(std::abs(series.coefficient(k) - oracle) <= 1e-10);
    // The certificate must dominate the true coefficients.
    CHECK(std::abs(oracle) <=
          series.tail().bound * std::pow(series.tail().ratio, static_cast<double>(k)) + 1e-10);
  }
}

TEST_CASE("series summation reproduces evaluation inside the disk") {
  const auto b = product_of({Complex{0.5, 0.0}, Complex{-0.3, 0.2}});
  const auto series = sym::blaschke_fourier(b, 64);
  const double tail = series.tail().ell1_beyond(series.analytic_coeffs().size() - 1);
  for (const Complex z : {Complex{0.0, 0.0}, Complex{0.5, 0.5}, Complex{-0.9, 0.0},
                          Complex{0.3, -0.6}}) {
    Complex sum{0.0, 0.0};
    Complex pw{1.0, 0.0};
    for (const Complex& c : series.analytic_coeffs()) {
      sum += c * pw;
      pw *= z;
    }
    CHECK(std::abs(sum - sym::blaschke_eval(b, z)) <= tail + 1e-12);
  }
}

TEST_CASE("quotient_fourier") {
  const sym::BlaschkeProduct psi = product_of({Complex{0.5, 0.0}});
  const sym::BlaschkeProduct one({});

  SUBCASE("theta = 1 gives the conjugate-reflected psi series") {
    const auto phi = sym::quotient_fourier({psi, one}, 24);
    const auto psis = sym::blaschke_fourier(psi, 24);
    for (long k = 0; k < 24; ++k) {
      CHECK(std::abs(phi.coefficient(-k) - std::conj(psis.coefficient(k))) <= 1e-14);
    }
    for (long k = 1; k < 24; ++k) CHECK(std::abs(phi.coefficient(k)) <= 1e-14);
  }

  SUBCASE("psi = theta = z telescopes to the constant 1") {
    const auto z = product_of({Complex{0.0, 0.0}});
    const auto phi = sym::quotient_fourier({z, z}, 8);
    CHECK(std::abs(phi.coefficient(0) - Complex{1.0, 0.0}) <= 1e-12);
    for (long k = 1; k < 8; ++k) {
      CHECK(std::abs(phi.coefficient(k)) <= 1e-12);
      CHECK(std::abs(phi.coefficient(-k)) <= 1e-12);
    }
  }

  SUBCASE("quotient of inner factors is unimodular on the boundary") {
    const auto theta = product_of({Complex{0.3, 0.0}});
    const auto phi = sym::quotient_fourier({psi, theta}, 64);
    for (std::size_t j = 0; j < 512; ++j) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / 512.0;
      CHECK(std::abs(std::abs(phi.eval_boundary(t)) - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("quotient times psi reproduces theta at coefficient level") {
  const sym::BlaschkeProduct psi = product_of({Complex{0.5, 0.0}});
  const sym::BlaschkeProduct theta = product_of({Complex{0.3, 0.0}, Complex{-0.2, 0.1}});
  const std::size_t n = 48;
  const auto phi = sym::quotient_fourier({psi, theta}, n);
  const auto psis = sym::blaschke_fourier(psi, n);
  const auto thetas = sym::blaschke_fourier(theta, n);
  for (long k = 0; k < 16; ++k) {
    Complex conv{0.0, 0.0};
    for (long j = 0; j < static_cast<long>(n); ++j) {
      conv += phi.coefficient(k - j) * psis.coefficient(j);
    }
    CHECK(std::abs(conv - thetas.coefficient(k)) <= 1e-9);
  }
}

TEST_CASE("sup_norm_certified") {
  SUBCASE("constant") {
    const auto c = sym::SymbolSeries::constant({2.0, 0.0});
    const auto enc = sym::sup_norm_certified(c, 64);
    CHECK(enc.lower == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(enc.upper == doctest::Approx(2.0).epsilon(1e-14));
  }

  SUBCASE("cosine") {
    const sym::TrigPolynomial cos_t(1, {Complex{0.5, 0.0}, Complex{0.0, 0.0}, Complex{0.5, 0.0}});
    const auto enc = sym::sup_norm_certified(sym::SymbolSeries::from_trig(cos_t), 4096);
    CHECK(enc.lower >= 1.0 - 1e-6);
    CHECK(enc.upper <= 1.0 + 1e-4);
    CHECK(enc.lower <= 1.0);
    CHECK(enc.upper >= 1.0);
  }

  SUBCASE("unimodular quotient brackets 1") {
    const auto phi = sym::quotient_fourier(
        {product_of({Complex{0.5, 0.0}}), product_of({Complex{0.3, 0.0}})}, 64);
    const auto enc = sym::sup_norm_certified(phi, 16384);
    CHECK(enc.lower >= 1.0 - 1e-6);
    CHECK(enc.upper <= 1.0 + 1e-6);
  }

  CHECK_THROWS_AS((void)sym::sup_norm_certified(sym::SymbolSeries::constant({1.0, 0.0}), 8),
                  std::invalid_argument);
}

TEST_CASE("sup_norm enclosure survives grid refinement") {
  const auto phi = sym::quotient_fourier(
      {product_of({Complex{0.5, 0.0}}), product_of({Complex{0.3, 0.0}})}, 48);
  const auto coarse = sym::sup_norm_certified(phi, 256);
  double fine_max = 0.0;
  for (std::size_t j = 0; j < 2560; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / 2560.0;
    fine_max = std::max(fine_max, std::abs(phi.eval_boundary(t)));
  }
  CHECK(coarse.lower <= fine_max + 1e-12);
  CHECK(fine_max <= coarse.upper + 1e-12);
}

TEST_CASE("is_inner") {
  const TolerancePolicy tol;

  const auto b = product_of({Complex{0.5, 0.0}, Complex{-0.3, 0.0}});
  CHECK(sym::is_inner(b, tol).inner);
  CHECK(sym::is_inner(sym::blaschke_fourier(b, 96), tol).inner);

  // (z + 1) / 2 vanishes at z = -1.
  const auto affine =
      sym::SymbolSeries::analytic({Complex{0.5, 0.0}, Complex{0.5, 0.0}}, {0.0, 0.0});
  const auto ev = sym::is_inner(affine, tol);
  CHECK_FALSE(ev.inner);
  CHECK(ev.max_deviation > 0.5);

  // 0.999 z^2: inner shape, wrong modulus.
  const auto scaled = sym::SymbolSeries::analytic(
      {Complex{0.0, 0.0}, Complex{0.0, 0.0}, Complex{0.999, 0.0}}, {0.0, 0.0});
  CHECK_FALSE(sym::is_inner(scaled, tol).inner);

  const auto two_sided = sym::SymbolSeries::two_sided({Complex{1.0, 0.0}}, {Complex{1.0, 0.0}},
                                                      {0.0, 0.0});
  CHECK_THROWS_AS((void)sym::is_inner(two_sided, tol), std::invalid_argument);
}

TEST_CASE("trig polynomial shape checks") {
  CHECK_THROWS_AS(sym::TrigPolynomial(1, {Complex{1.0, 0.0}}), std::invalid_argument);
  const sym::TrigPolynomial p(1, {Complex{0.0, 1.0}, Complex{2.0, 0.0}, Complex{0.0, -1.0}});
  CHECK(p.coefficient(-1) == Complex{0.0, 1.0});
  CHECK(p.coefficient(0) == Complex{2.0, 0.0});
  CHECK(p.coefficient(5) == Complex{0.0, 0.0});
}

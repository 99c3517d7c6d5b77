#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "na/linalg.hpp"
#include "na/model_space.hpp"
#include "oracles.hpp"

using na::Complex;
using na::ComplexMatrix;
using na::TolerancePolicy;
namespace ms = na::modelspace;
namespace sym = na::symbols;

namespace {

ms::ModelSpace space_of(std::vector<Complex> zeros) {
  return ms::ModelSpace(sym::BlaschkeProduct(std::move(zeros)));
}

}  // namespace

TEST_CASE("model space construction and Gram matrix") {
  const auto m = space_of({Complex{0.5, 0.0}, Complex{-0.5, 0.0}});
  CHECK(m.dimension() == 2);
  CHECK(m.gram()(0, 0).real() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(m.gram()(0, 1).real() == doctest::Approx(4.0 / 5.0).epsilon(1e-14));
  CHECK(m.gram()(1, 0).real() == doctest::Approx(4.0 / 5.0).epsilon(1e-14));
  CHECK(m.gram()(1, 1).real() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

  // Reproducing-property oracle: <c(., l_j), c(., l_i)> by quadrature of the
  // boundary pairing equals the closed form.
  const Complex li{0.5, 0.0}, lj{-0.5, 0.0};
  const Complex pairing = oracles::fourier_coefficient(
      [&](Complex z) {
        return (1.0 / (1.0 - z * std::conj(lj))) * std::conj(1.0 / (1.0 - z * std::conj(li)));
      },
      0);
  CHECK(std::abs(pairing - m.gram()(0, 1)) <= 1e-10);

  const auto trivial = space_of({Complex{0.0, 0.0}});
  CHECK(trivial.gram()(0, 0) == Complex{1.0, 0.0});

  CHECK_THROWS_AS(space_of({Complex{0.3, 0.0}, Complex{0.3 + 1e-9, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(space_of({}), std::invalid_argument);
}

TEST_CASE("adjoint shift is the conjugated zero diagonal") {
  const auto single = space_of({Complex{0.5, 0.0}});
  CHECK(single.adjoint_shift_matrix()(0, 0) == Complex{0.5, 0.0});

  const auto pm = space_of({Complex{0.5, 0.0}, Complex{-0.5, 0.0}});
  const auto d = pm.adjoint_shift_matrix();
  CHECK(d(0, 0) == Complex{0.5, 0.0});
  CHECK(d(1, 1) == Complex{-0.5, 0.0});
  CHECK(d(0, 1) == Complex{0.0, 0.0});

  const auto imag = space_of({Complex{0.0, 0.4}});
  CHECK(imag.adjoint_shift_matrix()(0, 0) == Complex{0.0, -0.4});
}

TEST_CASE("shift matrix satisfies Gram adjointness") {
  const auto m = space_of({Complex{0.5, 0.0}});
  CHECK(std::abs(m.shift_matrix()(0, 0) - Complex{0.5, 0.0}) <= 1e-14);

  const auto pm = space_of({Complex{0.3, 0.2}, Complex{-0.4, 0.1}});
  const ComplexMatrix s = pm.shift_matrix();
  const ComplexMatrix d = pm.adjoint_shift_matrix();
  // (M a)* G b == a* G (D b) as matrices: M* G == G D.
  const ComplexMatrix lhs = na::matmul(na::adjoint(s), pm.gram());
  const ComplexMatrix rhs = na::matmul(pm.gram(), d);
  CHECK(na::sub(lhs, rhs).max_abs() <= 1e-12);
}

TEST_CASE("kernel_at_zero") {
  const auto pm = space_of({Complex{0.5, 0.0}, Complex{-0.5, 0.0}});
  const auto k0 = pm.kernel_at_zero();
  CHECK(k0.coords[0].real() == doctest::Approx(15.0 / 32.0).epsilon(1e-12));
  CHECK(k0.coords[1].real() == doctest::Approx(15.0 / 32.0).epsilon(1e-12));
  const double nsq = pm.gram_norm(k0.coords) * pm.gram_norm(k0.coords);
  CHECK(nsq == doctest::Approx(0.9375).epsilon(1e-12));

  const auto trivial = space_of({Complex{0.0, 0.0}});
  CHECK(std::abs(trivial.kernel_at_zero().coords[0] - Complex{1.0, 0.0}) <= 1e-14);
  CHECK(trivial.gram_norm(trivial.kernel_at_zero().coords) == doctest::Approx(1.0));

  const auto three = space_of({Complex{0.3, 0.0}, Complex{-0.4, 0.0}, Complex{0.0, 0.2}});
  const auto k3 = three.kernel_at_zero();
  const double nsq3 = three.gram_norm(k3.coords) * three.gram_norm(k3.coords);
  const double theta0_sq = std::norm(sym::blaschke_eval(three.theta(), {0.0, 0.0}));
  CHECK(std::abs(nsq3 - (1.0 - theta0_sq)) <= 1e-10);
}

TEST_CASE("defect identity S S* = I - c0 (x) c0") {
  CHECK(space_of({Complex{0.5, 0.0}}).defect_identity_residual() <= 1e-12);
  CHECK(space_of({Complex{0.5, 0.0}, Complex{-0.5, 0.0}}).defect_identity_residual() <= 1e-10);
  CHECK(space_of({Complex{0.1, 0.0}, Complex{0.2, 0.0}, Complex{0.3, 0.0},
                  Complex{0.4, 0.0}})
            .defect_identity_residual() <= 1e-9);
}

TEST_CASE("model norm dichotomy") {
  CHECK(space_of({Complex{0.5, 0.0}}).norm() == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(space_of({Complex{0.3, 0.0}, Complex{-0.4, 0.0}}).norm() ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(space_of({Complex{0.9, 0.0}, Complex{0.95, 0.0}, Complex{0.99, 0.0}}).norm() ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("model norm dichotomy on a random corpus") {
  std::mt19937_64 rng(2718);
  for (int round = 0; round < 10; ++round) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 4);
    const auto zeros = oracles::random_distinct_zeros(n, rng);
    const auto m = ms::ModelSpace(sym::BlaschkeProduct(zeros));
    if (n == 1) {
      CHECK(m.norm() == doctest::Approx(std::abs(zeros[0])).epsilon(1e-10));
    } else {
      CHECK(m.norm() == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("na_witness") {
  SUBCASE("two symmetric zeros, hand-checkable data") {
    const auto pm = space_of({Complex{0.5, 0.0}, Complex{-0.5, 0.0}});
    const auto report = pm.witness_report();
    CHECK(report.f.coords[0] == Complex{1.0, 0.0});
    CHECK(report.f.coords[1] == Complex{-1.0, 0.0});
    CHECK(report.f_at_zero == 0.0);
    CHECK(std::abs(report.g.coords[0] - Complex{0.5, 0.0}) <= 1e-14);
    CHECK(std::abs(report.g.coords[1] - Complex{0.5, 0.0}) <= 1e-14);
    CHECK(report.ratio == doctest::Approx(1.0).epsilon(1e-10));

    const auto verdict = pm.na_witness();
    CHECK(verdict.attained());
    CHECK(verdict.norm == doctest::Approx(1.0).epsilon(1e-8));
  }

  SUBCASE("dimension one attains at norm |theta(0)| < 1") {
    const auto single = space_of({Complex{0.5, 0.0}});
    const auto verdict = single.na_witness();
    CHECK(verdict.attained());
    CHECK(verdict.norm == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(verdict.certificate().ratio == doctest::Approx(0.5).epsilon(1e-10));
  }

  SUBCASE("three zeros") {
    const auto three = space_of({Complex{0.3, 0.0}, Complex{-0.4, 0.0}, Complex{0.0, 0.2}});
    const auto report = three.witness_report();
    CHECK(report.ratio == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(report.f_at_zero <= 1e-12);
    CHECK(three.na_witness().attained());
  }
}

TEST_CASE("witness stays in the space operationally") {
  std::mt19937_64 rng(555);
  for (int round = 0; round < 6; ++round) {
    const auto zeros = oracles::random_distinct_zeros(3, rng);
    const auto m = ms::ModelSpace(sym::BlaschkeProduct(zeros));
    const auto report = m.witness_report();
    const double g_norm = m.gram_norm(report.g.coords);
    const auto sg = na::matvec(m.shift_matrix(), report.g.coords);
    CHECK(m.gram_norm(sg) == doctest::Approx(g_norm).epsilon(1e-8));
  }
}

TEST_CASE("singular witness evaluates to zero at the origin") {
  const sym::SingularInnerAtom atom{1.0, Complex{1.0, 0.0}};
  CHECK(ms::singular_witness_check(atom, {0.3, 0.0}, {-0.3, 0.0}) <= 1e-12);
  CHECK(ms::singular_witness_check(atom, {0.0, 0.5}, {0.2, 0.0}) <= 1e-12);
  CHECK_THROWS_AS((void)ms::singular_witness_check(atom, {0.2, 0.0}, {0.2, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)ms::singular_witness_check(atom, {1.2, 0.0}, {0.2, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("coefficient-space model") {
  const TolerancePolicy tol;

  SUBCASE("theta = z compresses to zero") {
    const ms::CoefficientSpaceModel cm(sym::BlaschkeProduct({Complex{0.0, 0.0}}), 8);
    // Projector is the rank-one e_0 (x) e_0.
    CHECK(std::abs(cm.projector()(0, 0) - Complex{1.0, 0.0}) <= 1e-14);
    for (std::size_t i = 1; i < 8; ++i) {
      CHECK(std::abs(cm.projector()(i, i)) <= 1e-14);
    }
    CHECK(cm.norm() <= 1e-12);
  }

  SUBCASE("cross-route agreement for distinct zeros") {
    const std::vector<Complex> zeros{Complex{0.5, 0.0}, Complex{-0.5, 0.0}};
    const ms::CoefficientSpaceModel cm(sym::BlaschkeProduct(zeros), 256);
    const auto kernel_route = ms::ModelSpace(sym::BlaschkeProduct(zeros));
    CHECK(std::abs(cm.norm() - kernel_route.norm()) <= 1e-6);
    CHECK(cm.idempotency_residual() <= 1e-8);
    CHECK(cm.hermitian_residual() <= 1e-12);
  }

  SUBCASE("repeated zero falls back to the coefficient route") {
    const ms::CoefficientSpaceModel cm(
        sym::BlaschkeProduct({Complex{0.5, 0.0}, Complex{0.5, 0.0}}), 256);
    CHECK(cm.norm() == doctest::Approx(1.0).epsilon(1e-6));
  }

  CHECK_THROWS_AS(ms::CoefficientSpaceModel(sym::BlaschkeProduct({Complex{0.5, 0.0}}), 2),
                  std::invalid_argument);
}

TEST_CASE("cross-route matrix elements agree on kernel functionals") {
  const std::vector<Complex> zeros{Complex{0.3, 0.0}, Complex{-0.4, 0.0}};
  const std::size_t order = 256;
  const auto kernel_route = ms::ModelSpace(sym::BlaschkeProduct(zeros));
  const ms::CoefficientSpaceModel coeff_route(sym::BlaschkeProduct(zeros), order);
  CHECK(std::abs(coeff_route.norm() - kernel_route.norm()) <= 1e-6);

  // <S k_j, k_i> in kernel coordinates is (G M)_{ij}; in coefficient space it
  // is the plain l2 pairing of the truncated kernel coefficient vectors.
  const ComplexMatrix gm = na::matmul(kernel_route.gram(), kernel_route.shift_matrix());
  for (std::size_t j = 0; j < zeros.size(); ++j) {
    std::vector<Complex> kj(order), ki(order);
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      Complex pw_j{1.0, 0.0}, pw_i{1.0, 0.0};
      for (std::size_t m = 0; m < order; ++m) {
        kj[m] = pw_j;
        ki[m] = pw_i;
        pw_j *= std::conj(zeros[j]);
        pw_i *= std::conj(zeros[i]);
      }
      const auto image = na::matvec(coeff_route.compressed_shift(), kj);
      const Complex pairing = na::dot(image, ki);
      CHECK(std::abs(pairing - gm(i, j)) <= 1e-6);
    }
  }
}

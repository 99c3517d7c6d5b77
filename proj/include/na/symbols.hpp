#pragma once

#include <cstddef>
#include <vector>

#include "na/matrix.hpp"

namespace na::symbols {

/// Finite Blaschke product: unimodular constant times the product of factors
/// (z - lambda) / (1 - conj(lambda) z). Multiplicities are repetitions in
/// `zeros`; an empty zero list is the constant itself. Zeros must stay a
/// margin of 1e-8 inside the disk.
class BlaschkeProduct {
 public:
  static constexpr double kZeroMargin = 1e-8;

  explicit BlaschkeProduct(std::vector<Complex> zeros, Complex unimodular_constant = {1.0, 0.0});

  [[nodiscard]] const std::vector<Complex>& zeros() const noexcept { return zeros_; }
  [[nodiscard]] Complex unimodular_constant() const noexcept { return constant_; }
  [[nodiscard]] std::size_t degree() const noexcept { return zeros_.size(); }

 private:
  std::vector<Complex> zeros_;
  Complex constant_;
};

/// Single-atom singular inner function exp(-t (zeta + z) / (zeta - z)),
/// evaluation-only: its Fourier coefficients decay too slowly to certify.
struct SingularInnerAtom {
  double mass;
  Complex boundary_point;

  SingularInnerAtom(double mass, Complex boundary_point);
};

/// Trigonometric polynomial sum c_k e^{ikt}, k = -degree..degree.
class TrigPolynomial {
 public:
  TrigPolynomial(int degree, std::vector<Complex> coefficients);

  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
  [[nodiscard]] Complex coefficient(int k) const;

 private:
  int degree_;
  std::vector<Complex> coeffs_;  // c_{-m} .. c_{m}
};

/// Geometric envelope for the unstored coefficients of a SymbolSeries:
/// |c(+-k)| <= bound * ratio^k for every k beyond the stored range.
struct TailCertificate {
  double bound = 0.0;
  double ratio = 0.0;

  /// sum_{k > m} bound * ratio^k
  [[nodiscard]] double ell1_beyond(std::size_t m) const;
  /// sum_{k > m} k * bound * ratio^k
  [[nodiscard]] double deriv_ell1_beyond(std::size_t m) const;
  /// sum_{k > m} k^2 * bound * ratio^k
  [[nodiscard]] double second_deriv_ell1_beyond(std::size_t m) const;
};

/// Two-sided Fourier series with stored coefficients and a carried tail
/// certificate. Certificates are propagated, never recomputed, so truncation
/// error stays auditable through every downstream operation.
class SymbolSeries {
 public:
  static SymbolSeries analytic(std::vector<Complex> coeffs, TailCertificate tail);
  static SymbolSeries two_sided(std::vector<Complex> analytic_coeffs,
                                std::vector<Complex> coanalytic_coeffs, TailCertificate tail);
  static SymbolSeries constant(Complex c);
  static SymbolSeries from_trig(const TrigPolynomial& p);

  [[nodiscard]] bool is_analytic() const noexcept { return !two_sided_; }
  [[nodiscard]] const std::vector<Complex>& analytic_coeffs() const noexcept { return analytic_; }
  [[nodiscard]] const std::vector<Complex>& coanalytic_coeffs() const noexcept {
    return coanalytic_;
  }
  [[nodiscard]] const TailCertificate& tail() const noexcept { return tail_; }

  /// c(k) for any integer k; zero beyond the stored window.
  [[nodiscard]] Complex coefficient(long k) const;

  /// Partial sum over the stored window at z = e^{it}.
  [[nodiscard]] Complex eval_boundary(double t) const;

  /// l1 mass of the unstored coefficients: bounds |true - eval_boundary|.
  [[nodiscard]] double eval_tail_ell1() const;

  /// l1 coefficient mass including the tail: bounds ||phi||_inf outright.
  [[nodiscard]] double ell1_bound() const;

  /// Bound on the derivative d/dt of the boundary function.
  [[nodiscard]] double derivative_bound() const;

  /// Bound on the second derivative; drives the curvature term of the
  /// sup-norm enclosure.
  [[nodiscard]] double second_derivative_bound() const;

  [[nodiscard]] SymbolSeries scaled(Complex factor) const;

 private:
  SymbolSeries(std::vector<Complex> a, std::vector<Complex> c, TailCertificate tail,
               bool two_sided);

  std::vector<Complex> analytic_;    // c(0), c(1), ...
  std::vector<Complex> coanalytic_;  // c(-1), c(-2), ...
  TailCertificate tail_;
  bool two_sided_;
};

/// The boundary function conj(psi) * theta, so that theta = phi * psi.
struct QuotientSymbol {
  BlaschkeProduct psi;
  BlaschkeProduct theta;
};

Complex blaschke_eval(const BlaschkeProduct& b, Complex z);
Complex singular_inner_eval(const SingularInnerAtom& s, Complex z);

/// Analytic coefficients of the product, exact on the stored window, with a
/// certified geometric tail.
SymbolSeries blaschke_fourier(const BlaschkeProduct& b, std::size_t n_terms);

/// Two-sided coefficients of conj(psi) * theta with a certified tail.
SymbolSeries quotient_fourier(const QuotientSymbol& q, std::size_t n_terms);

struct SupNormEnclosure {
  double lower = 0.0;
  double upper = 0.0;
};

/// Certified bracket lower <= ||phi||_inf <= upper from a boundary grid, a
/// Lipschitz slack, and the carried tail.
SupNormEnclosure sup_norm_certified(const SymbolSeries& s, std::size_t grid_size);

struct InnerTestEvidence {
  bool inner = false;
  double max_deviation = 0.0;  // worst | |phi| - 1 | seen on the grid
  double tolerance = 0.0;
  double lipschitz_slack = 0.0;  // grid-resolution + tail allowance, reported
  std::size_t grid_size = 0;
};

InnerTestEvidence is_inner(const SymbolSeries& s, const TolerancePolicy& tol);
InnerTestEvidence is_inner(const BlaschkeProduct& b, const TolerancePolicy& tol);

}  // namespace na::symbols

#pragma once

#include <cstddef>
#include <vector>

#include "na/linalg.hpp"
#include "na/matrix.hpp"
#include "na/symbols.hpp"
#include "na/verdict.hpp"

namespace na::modelspace {

/// Coordinates in the kernel basis { c(., lambda_i) } of a model space.
struct KernelVector {
  std::vector<Complex> coords;
};

/// Witness data behind a model-operator attainment verdict: f with f(0) = 0
/// and g with z g = f, so that the compressed shift attains on g.
struct WitnessReport {
  KernelVector f;
  KernelVector g;
  double f_at_zero = 0.0;  // |f(0)|, zero up to roundoff by construction
  double ratio = 0.0;      // ||S g||_G / ||g||_G
  double norm = 0.0;
};

/// Model space of a finite Blaschke product with distinct zeros, carried in
/// the (non-orthogonal) kernel basis with its Gram matrix. The backward shift
/// is exactly diagonal here, which keeps every identity directly checkable.
class ModelSpace {
 public:
  explicit ModelSpace(symbols::BlaschkeProduct theta, TolerancePolicy tol = {});

  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] const symbols::BlaschkeProduct& theta() const noexcept { return theta_; }
  [[nodiscard]] const ComplexMatrix& gram() const noexcept { return gram_; }
  [[nodiscard]] const TolerancePolicy& tolerance() const noexcept { return tol_; }

  /// diag(conj(lambda_1) .. conj(lambda_n)); the compressed shift's adjoint.
  [[nodiscard]] ComplexMatrix adjoint_shift_matrix() const;

  /// Coordinate matrix of the compressed shift: the Gram-adjoint of the
  /// diagonal above, obtained by one Gram solve.
  [[nodiscard]] ComplexMatrix shift_matrix() const;

  /// Coordinates of the reproducing kernel at 0; verified against
  /// ||c_theta(., 0)||^2 = 1 - |theta(0)|^2.
  [[nodiscard]] KernelVector kernel_at_zero() const;

  /// Gram-weighted norm of S S* - (I - c0 (x) c0); zero in exact arithmetic.
  [[nodiscard]] double defect_identity_residual() const;

  /// ||S_theta||: |lambda| in dimension one, 1 otherwise.
  [[nodiscard]] double norm() const;

  [[nodiscard]] WitnessReport witness_report() const;

  /// Always attained; the value is the verified certificate.
  [[nodiscard]] Verdict na_witness() const;

  /// ||a||_G for kernel-basis coordinates.
  [[nodiscard]] double gram_norm(std::span<const Complex> coords) const;

 private:
  symbols::BlaschkeProduct theta_;
  TolerancePolicy tol_;
  std::size_t dimension_;
  ComplexMatrix gram_;
};

/// |f(0)| for the cancellation combination of two kernel functions of a
/// single-atom singular inner function; zero by construction.
double singular_witness_check(const symbols::SingularInnerAtom& s, Complex lambda1,
                              Complex lambda2);

/// Second, independent realization of the compressed shift on truncated
/// monomial coefficients: P_N = I - T_theta T_theta* and P_N M_z P_N. Serves
/// as the cross-check oracle for the kernel route and as the only route for
/// repeated zeros.
class CoefficientSpaceModel {
 public:
  CoefficientSpaceModel(const symbols::BlaschkeProduct& theta, std::size_t truncation_order,
                        TolerancePolicy tol = {});

  [[nodiscard]] std::size_t truncation_order() const noexcept { return order_; }
  [[nodiscard]] const ComplexMatrix& projector() const noexcept { return projector_; }
  [[nodiscard]] const ComplexMatrix& compressed_shift() const noexcept { return shift_; }
  [[nodiscard]] double idempotency_residual() const noexcept { return idempotency_residual_; }
  [[nodiscard]] double hermitian_residual() const noexcept { return hermitian_residual_; }
  /// 10 * q^N from the carried tail certificate.
  [[nodiscard]] double truncation_certificate() const noexcept { return certificate_; }

  [[nodiscard]] double norm() const;

 private:
  std::size_t order_;
  TolerancePolicy tol_;
  ComplexMatrix projector_;
  ComplexMatrix shift_;
  double idempotency_residual_ = 0.0;
  double hermitian_residual_ = 0.0;
  double certificate_ = 0.0;
};

}  // namespace na::modelspace

#include "na/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace na::modelspace {

namespace {

constexpr double kDistinctness = 1e-6;

}  // namespace

ModelSpace::ModelSpace(symbols::BlaschkeProduct theta, TolerancePolicy tol)
    : theta_(std::move(theta)), tol_(tol), dimension_(theta_.zeros().size()), gram_(1, 1) {
  tol_.validate();
  const auto& zeros = theta_.zeros();
  if (zeros.empty()) throw std::invalid_argument("ModelSpace: at least one zero required");
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    for (std::size_t j = i + 1; j < zeros.size(); ++j) {
      if (std::abs(zeros[i] - zeros[j]) <= kDistinctness) {
        throw std::invalid_argument(
            "ModelSpace: zeros must be pairwise distinct (distance > 1e-6); use the "
            "coefficient-space model for repeated or clustered zeros");
      }
    }
  }

  gram_ = ComplexMatrix(dimension_, dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) {
    for (std::size_t j = 0; j < dimension_; ++j) {
      gram_(i, j) = 1.0 / (1.0 - zeros[i] * std::conj(zeros[j]));
    }
  }

  const EigDecomposition spec = hermitian_eig(gram_, tol_);
  if (spec.eigenvalues.front() <= tol_.abs_eps) {
    throw std::invalid_argument(
        "ModelSpace: Gram matrix is not positive definite (clustered zeros); use the "
        "coefficient-space model");
  }
}

ComplexMatrix ModelSpace::adjoint_shift_matrix() const {
  ComplexMatrix d(dimension_, dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) d(i, i) = std::conj(theta_.zeros()[i]);
  return d;
}

ComplexMatrix ModelSpace::shift_matrix() const {
  // Gram-adjointness (M a)* G b = a* G (D b) pins M = G^{-1} D* G.
  ComplexMatrix dstar(dimension_, dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) dstar(i, i) = theta_.zeros()[i];
  return solve(gram_, matmul(dstar, gram_), tol_);
}

KernelVector ModelSpace::kernel_at_zero() const {
  // theta vanishes on every zero, so <c_theta(.,0), k_i> = 1 for all i.
  ComplexMatrix rhs(dimension_, 1);
  for (std::size_t i = 0; i < dimension_; ++i) rhs(i, 0) = 1.0;
  const ComplexMatrix x = solve(gram_, rhs, tol_);

  KernelVector out;
  out.coords.resize(dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) out.coords[i] = x(i, 0);

  const double norm_sq = gram_norm(out.coords) * gram_norm(out.coords);
  const double theta0_sq = std::norm(symbols::blaschke_eval(theta_, {0.0, 0.0}));
  if (std::abs(norm_sq - (1.0 - theta0_sq)) > tol_.gate(1.0)) {
    throw std::runtime_error("kernel_at_zero: ||c_theta(.,0)||^2 failed the defect-norm identity");
  }
  return out;
}

double ModelSpace::defect_identity_residual() const {
  const ComplexMatrix m = shift_matrix();
  const ComplexMatrix d = adjoint_shift_matrix();
  const KernelVector x = kernel_at_zero();

  // Coordinate matrix of f -> <f, c0> c0 in the kernel basis: x (x* G).
  ComplexMatrix rank_one(dimension_, dimension_);
  std::vector<Complex> xg(dimension_, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < dimension_; ++j) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < dimension_; ++k) acc += std::conj(x.coords[k]) * gram_(k, j);
    xg[j] = acc;
  }
  for (std::size_t i = 0; i < dimension_; ++i)
    for (std::size_t j = 0; j < dimension_; ++j) rank_one(i, j) = x.coords[i] * xg[j];

  const ComplexMatrix lhs = matmul(m, d);
  const ComplexMatrix expected = sub(ComplexMatrix::identity(dimension_), rank_one);
  return gram_weighted_norm(sub(lhs, expected), gram_, tol_);
}

double ModelSpace::norm() const {
  // ||S|| = ||S*||, and S* is diagonal here, so the Gram-weighted quadratic
  // form of the adjoint gives the norm directly: max of a* D*GD a / a* G a.
  const auto& zeros = theta_.zeros();
  ComplexMatrix quad(dimension_, dimension_);
  for (std::size_t i = 0; i < dimension_; ++i)
    for (std::size_t j = 0; j < dimension_; ++j)
      quad(i, j) = zeros[i] * gram_(i, j) * std::conj(zeros[j]);
  const double lambda = generalized_eig_max(quad, gram_, tol_).first;
  return std::sqrt(std::max(0.0, lambda));
}

double ModelSpace::gram_norm(std::span<const Complex> coords) const {
  if (coords.size() != dimension_) throw std::invalid_argument("gram_norm: length mismatch");
  const std::vector<Complex> ga = matvec(gram_, coords);
  return std::sqrt(std::max(0.0, dot(ga, coords).real()));
}

WitnessReport ModelSpace::witness_report() const {
  WitnessReport report;
  report.norm = norm();

  if (dimension_ == 1) {
    // One-dimensional branch: the kernel function itself attains, at norm
    // |theta(0)| < 1.
    report.f.coords = {Complex{1.0, 0.0}};
    report.g.coords = {Complex{1.0, 0.0}};
    report.f_at_zero = 1.0;  // no vanishing witness exists in dimension one
    const ComplexMatrix m = shift_matrix();
    report.ratio = gram_norm(matvec(m, report.g.coords)) / gram_norm(report.g.coords);
    return report;
  }

  // First pair of distinct zeros in input order; construction guarantees the
  // very first pair qualifies.
  const auto& zeros = theta_.zeros();
  std::size_t p = 0, q = 1;
  bool found = false;
  for (std::size_t i = 0; i < dimension_ && !found; ++i) {
    for (std::size_t j = i + 1; j < dimension_ && !found; ++j) {
      if (std::abs(zeros[i] - zeros[j]) > kDistinctness) {
        p = i;
        q = j;
        found = true;
      }
    }
  }

  report.f.coords.assign(dimension_, Complex{0.0, 0.0});
  report.f.coords[p] = 1.0;
  report.f.coords[q] = -1.0;

  // f(0) = sum of coordinates, since every kernel function equals 1 at 0.
  Complex f0{0.0, 0.0};
  for (const Complex& c : report.f.coords) f0 += c;
  report.f_at_zero = std::abs(f0);

  // g = S* f has z g = f, so the shift attains on g.
  report.g.coords.assign(dimension_, Complex{0.0, 0.0});
  report.g.coords[p] = std::conj(zeros[p]);
  report.g.coords[q] = -std::conj(zeros[q]);

  const ComplexMatrix m = shift_matrix();
  report.ratio = gram_norm(matvec(m, report.g.coords)) / gram_norm(report.g.coords);

  if (report.f_at_zero > tol_.abs_eps) {
    throw std::runtime_error("na_witness: witness failed f(0) = 0");
  }
  if (std::abs(report.ratio - 1.0) > tol_.rel_eps) {
    throw std::runtime_error("na_witness: witness ratio " + std::to_string(report.ratio) +
                             " is not 1 within tolerance");
  }
  return report;
}

Verdict ModelSpace::na_witness() const {
  const WitnessReport report = witness_report();
  AttainedCertificate cert;
  cert.witness = report.g.coords;
  cert.ratio = report.ratio;
  cert.residual = std::abs(report.ratio - report.norm);
  cert.detail = dimension_ == 1
                    ? "kernel function attains at norm |theta(0)| < 1"
                    : "g = S* (k_p - k_q); z g stays in the space, |f(0)| = " +
                          std::to_string(report.f_at_zero);
  return Verdict{report.norm, cert};
}

double singular_witness_check(const symbols::SingularInnerAtom& s, Complex lambda1,
                              Complex lambda2) {
  if (std::abs(lambda1) >= 1.0 || std::abs(lambda2) >= 1.0) {
    throw std::invalid_argument("singular_witness_check: both points must lie inside the disk");
  }
  if (std::abs(lambda1 - lambda2) <= 1e-12) {
    throw std::invalid_argument("singular_witness_check: points must be distinct");
  }
  const Complex theta0 = singular_inner_eval(s, {0.0, 0.0});
  const Complex t1 = singular_inner_eval(s, lambda1);
  const Complex t2 = singular_inner_eval(s, lambda2);
  // c_theta(0, w) = 1 - theta(0) conj(theta(w)); the cross combination of the
  // two kernel functions cancels at the origin identically.
  const Complex f0 = (1.0 - std::conj(t2) * theta0) * (1.0 - theta0 * std::conj(t1)) -
                     (1.0 - std::conj(t1) * theta0) * (1.0 - theta0 * std::conj(t2));
  return std::abs(f0);
}

CoefficientSpaceModel::CoefficientSpaceModel(const symbols::BlaschkeProduct& theta,
                                             std::size_t truncation_order, TolerancePolicy tol)
    : order_(truncation_order), tol_(tol), projector_(1, 1), shift_(1, 1) {
  tol_.validate();
  if (order_ < 4 * std::max<std::size_t>(theta.degree(), 1)) {
    throw std::invalid_argument("CoefficientSpaceModel: truncation order must be >= 4 * degree");
  }
  const symbols::SymbolSeries series = symbols::blaschke_fourier(theta, order_);
  const double q = series.tail().ratio;
  certificate_ = 10.0 * std::pow(q, static_cast<double>(order_));
  if (std::pow(q, static_cast<double>(order_)) > 0.1) {
    throw std::invalid_argument(
        "CoefficientSpaceModel: truncation order too small for tail ratio " + std::to_string(q));
  }

  const auto& coeffs = series.analytic_coeffs();
  ComplexMatrix t_theta(order_, order_);
  for (std::size_t j = 0; j < order_; ++j)
    for (std::size_t k = 0; k <= j; ++k) t_theta(j, k) = coeffs[j - k];

  projector_ = sub(ComplexMatrix::identity(order_), matmul(t_theta, adjoint(t_theta)));

  ComplexMatrix shift_raw(order_, order_);
  for (std::size_t j = 1; j < order_; ++j) shift_raw(j, j - 1) = 1.0;
  shift_ = matmul(projector_, matmul(shift_raw, projector_));

  idempotency_residual_ = operator_norm(sub(matmul(projector_, projector_), projector_), tol_);
  hermitian_residual_ = sub(projector_, adjoint(projector_)).max_abs();
  const double floor = tol_.gate(1.0) * static_cast<double>(order_);
  if (idempotency_residual_ > std::max(certificate_, floor) ||
      hermitian_residual_ > std::max(certificate_, floor)) {
    throw std::runtime_error("CoefficientSpaceModel: projector residuals exceed the certificate");
  }
}

double CoefficientSpaceModel::norm() const { return operator_norm(shift_, tol_); }

}  // namespace na::modelspace

#include "na/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace na {

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return out;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return out;
}

double hermitian_defect(const ComplexMatrix& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

void require_hermitian(const ComplexMatrix& a, const TolerancePolicy& tol, const char* who) {
  if (!a.is_square()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
  if (hermitian_defect(a) > tol.gate(a.max_abs())) {
    throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian within tolerance");
  }
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                                std::to_string(b.rows()) + " do not match");
  }
  return from_eigen(to_eigen(a) * to_eigen(b));
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("add: shape mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("sub: shape mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

ComplexMatrix scale(Complex c, const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = c * a(i, j);
  return out;
}

EigDecomposition hermitian_eig(const ComplexMatrix& a, const TolerancePolicy& tol) {
  tol.validate();
  require_hermitian(a, tol, "hermitian_eig");
  Eigen::MatrixXcd m = to_eigen(a);
  // Symmetrize so roundoff asymmetry cannot leak into the solver.
  m = (m + m.adjoint().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: solver failed to converge within " +
                             std::to_string(tol.max_iter) + " iterations");
  }
  EigDecomposition out{std::vector<double>(static_cast<std::size_t>(m.rows())),
                       from_eigen(solver.eigenvectors())};
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    out.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

std::pair<double, std::vector<Complex>> generalized_eig_max(const ComplexMatrix& a,
                                                            const ComplexMatrix& g,
                                                            const TolerancePolicy& tol) {
  tol.validate();
  require_hermitian(a, tol, "generalized_eig_max(a)");
  require_hermitian(g, tol, "generalized_eig_max(g)");
  if (a.rows() != g.rows()) throw std::invalid_argument("generalized_eig_max: shape mismatch");

  Eigen::MatrixXcd ge = to_eigen(g);
  ge = (ge + ge.adjoint().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gspec(ge);
  if (gspec.info() != Eigen::Success)
    throw std::runtime_error("generalized_eig_max: eigensolver failed on G");
  if (gspec.eigenvalues()(0) <= tol.abs_eps) {
    throw std::invalid_argument(
        "generalized_eig_max: G is not positive definite (min eigenvalue " +
        std::to_string(gspec.eigenvalues()(0)) +
        "); for model spaces this signals clustered Blaschke zeros");
  }

  Eigen::MatrixXcd ae = to_eigen(a);
  ae = (ae + ae.adjoint().eval()) / 2.0;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> solver(ae, ge,
                                                                    Eigen::ComputeEigenvectors |
                                                                        Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("generalized_eig_max: generalized eigensolver failed");

  const Eigen::Index last = ae.rows() - 1;
  const double lambda = solver.eigenvalues()(last);
  Eigen::VectorXcd x = solver.eigenvectors().col(last);
  x /= x.norm();

  const double residual = (ae * x - lambda * (ge * x)).norm();
  const double scale = ae.cwiseAbs().maxCoeff() + std::abs(lambda) * ge.cwiseAbs().maxCoeff();
  if (residual > tol.gate(scale) * 1e3) {
    throw std::runtime_error("generalized_eig_max: residual " + std::to_string(residual) +
                             " exceeds contract");
  }

  std::vector<Complex> coords(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) coords[static_cast<std::size_t>(i)] = x(i);
  return {lambda, canonical_phase(std::move(coords))};
}

double operator_norm(const ComplexMatrix& a, const TolerancePolicy& tol) {
  tol.validate();
  Eigen::MatrixXcd m = to_eigen(a);
  Eigen::MatrixXcd gram = m.adjoint() * m;
  gram = (gram + gram.adjoint().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("operator_norm: eigensolver failed to converge");
  return std::sqrt(std::max(0.0, solver.eigenvalues()(gram.rows() - 1)));
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b, const TolerancePolicy& tol) {
  tol.validate();
  if (!a.is_square()) throw std::invalid_argument("solve: matrix must be square");
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: right-hand side shape mismatch");

  Eigen::MatrixXcd ae = to_eigen(a);
  Eigen::MatrixXcd be = to_eigen(b);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(ae);
  if (!lu.isInvertible()) throw std::runtime_error("solve: matrix is singular");
  Eigen::MatrixXcd x = lu.solve(be);

  const double norm_a = operator_norm(a, tol);
  const double residual = (ae * x - be).norm();
  if (residual > tol.gate(norm_a * x.norm())) {
    throw std::runtime_error("solve: matrix too ill-conditioned; residual " +
                             std::to_string(residual));
  }
  return from_eigen(x);
}

std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw std::invalid_argument("apply: vector length mismatch");
  std::vector<Complex> out(m.rows(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
  return acc;
}

double norm2(std::span<const Complex> v) {
  double sum = 0.0;
  for (const Complex& z : v) sum += std::norm(z);
  return std::sqrt(sum);
}

std::vector<Complex> canonical_phase(std::vector<Complex> v) {
  std::size_t arg_max = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > best) {
      best = std::abs(v[i]);
      arg_max = i;
    }
  }
  if (best <= 0.0) return v;
  const Complex rot = std::conj(v[arg_max]) / best;
  for (Complex& z : v) z *= rot;
  v[arg_max] = Complex{std::abs(v[arg_max]), 0.0};
  return v;
}

double gram_weighted_norm(const ComplexMatrix& e, const ComplexMatrix& g,
                          const TolerancePolicy& tol) {
  const ComplexMatrix quad = matmul(adjoint(e), matmul(g, e));
  return std::sqrt(std::max(0.0, generalized_eig_max(quad, g, tol).first));
}

}  // namespace na

#include "na/idempotent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "na/linalg.hpp"

namespace na::idempotent {

namespace {

ComplexMatrix assemble_block_form(const ComplexMatrix& x) {
  const std::size_t m = x.rows();
  const std::size_t k = x.cols();
  ComplexMatrix t(m + k, m + k);
  for (std::size_t i = 0; i < m; ++i) t(i, i) = 1.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) t(i, m + j) = x(i, j);
  return t;
}

/// Orthogonal projection onto the column space of a, with singular values
/// above threshold * sigma_max counted toward the range.
ComplexMatrix range_projection(const ComplexMatrix& a, double threshold,
                               const TolerancePolicy& tol) {
  const ComplexMatrix gram = matmul(a, adjoint(a));
  const EigDecomposition spec = hermitian_eig(gram, tol);
  const double sigma_max = std::sqrt(std::max(0.0, spec.eigenvalues.back()));
  ComplexMatrix p(a.rows(), a.rows());
  for (std::size_t c = 0; c < spec.eigenvalues.size(); ++c) {
    const double sigma = std::sqrt(std::max(0.0, spec.eigenvalues[c]));
    if (sigma <= threshold * std::max(sigma_max, 1.0)) continue;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.rows(); ++j)
        p(i, j) += spec.eigenvectors(i, c) * std::conj(spec.eigenvectors(j, c));
  }
  return p;
}

double x_profile(std::size_t n) { return 1.0 - 1.0 / (2.0 * static_cast<double>(n) + 1.0); }

/// Blocks of the running example: position 1 is the orthogonal projection
/// [[1,0],[0,0]]; position p >= 2 carries the idempotent [[1,0],[x_{p-1},0]].
ComplexMatrix example21_block(std::size_t position) {
  ComplexMatrix block(2, 2);
  block(0, 0) = 1.0;
  if (position >= 2) block(1, 0) = x_profile(position - 1);
  return block;
}

}  // namespace

IdempotentBlockForm::IdempotentBlockForm(ComplexMatrix x)
    : x_(std::move(x)), t_(assemble_block_form(x_)) {}

IdempotentBlockForm IdempotentBlockForm::from_idempotent_matrix(const ComplexMatrix& t,
                                                                const TolerancePolicy& tol) {
  if (!t.is_square()) throw std::invalid_argument("from_idempotent_matrix: matrix must be square");
  const double norm_t = operator_norm(t, tol);
  const double idem_residual = operator_norm(sub(matmul(t, t), t), tol);
  if (idem_residual > tol.gate(norm_t * norm_t)) {
    throw std::invalid_argument("from_idempotent_matrix: T^2 != T (residual " +
                                std::to_string(idem_residual) + ")");
  }

  // Split along ran T: eigenvectors of T T* with singular value above abs_eps
  // span the range, the rest its complement.
  const ComplexMatrix gram = matmul(t, adjoint(t));
  const EigDecomposition spec = hermitian_eig(gram, tol);
  std::vector<std::size_t> range_cols, kernel_cols;
  for (std::size_t c = 0; c < spec.eigenvalues.size(); ++c) {
    const double sigma = std::sqrt(std::max(0.0, spec.eigenvalues[c]));
    (sigma > tol.abs_eps ? range_cols : kernel_cols).push_back(c);
  }
  if (range_cols.empty() || kernel_cols.empty()) {
    throw std::invalid_argument(
        "from_idempotent_matrix: block form needs both a range and a complement");
  }

  const std::size_t n = t.rows();
  ComplexMatrix u(n, n);
  std::size_t col = 0;
  for (std::size_t c : range_cols) {
    for (std::size_t i = 0; i < n; ++i) u(i, col) = spec.eigenvectors(i, c);
    ++col;
  }
  for (std::size_t c : kernel_cols) {
    for (std::size_t i = 0; i < n; ++i) u(i, col) = spec.eigenvectors(i, c);
    ++col;
  }

  const ComplexMatrix canonical = matmul(adjoint(u), matmul(t, u));
  const std::size_t m = range_cols.size();
  const std::size_t k = kernel_cols.size();
  ComplexMatrix x(m, k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) x(i, j) = canonical(i, m + j);
  return IdempotentBlockForm(std::move(x));
}

BuckholtzOperator buckholtz(const IdempotentBlockForm& t) {
  const ComplexMatrix& m = t.matrix();
  return BuckholtzOperator{
      sub(add(m, adjoint(m)), ComplexMatrix::identity(m.rows()))};
}

Verdict na_check_buckholtz(const IdempotentBlockForm& t, const TolerancePolicy& tol) {
  const double norm = operator_norm(t.matrix(), tol);
  const BuckholtzOperator w = buckholtz(t);
  const EigDecomposition spec = hermitian_eig(w.matrix, tol);

  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
    const double dist = std::min(std::abs(spec.eigenvalues[i] - norm),
                                 std::abs(spec.eigenvalues[i] + norm));
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  if (best_dist > tol.gate(norm)) {
    throw std::runtime_error(
        "na_check_buckholtz: +-||T|| missing from the Buckholtz spectrum; closest distance " +
        std::to_string(best_dist));
  }

  std::vector<Complex> v(w.matrix.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = spec.eigenvectors(i, best);
  v = canonical_phase(std::move(v));
  std::vector<Complex> res = matvec(w.matrix, v);
  for (std::size_t i = 0; i < res.size(); ++i) res[i] -= spec.eigenvalues[best] * v[i];

  AttainedCertificate cert;
  cert.witness = std::move(v);
  cert.ratio = std::abs(spec.eigenvalues[best]);
  cert.residual = norm2(res);
  cert.detail = "Buckholtz eigenvalue " + std::to_string(spec.eigenvalues[best]);
  return Verdict{norm, cert};
}

Verdict na_check_compression(const IdempotentBlockForm& t, const TolerancePolicy& tol) {
  const ComplexMatrix& m = t.matrix();
  const std::size_t n = m.rows();
  const double norm = operator_norm(m, tol);
  const double norm_sq = norm * norm;

  const ComplexMatrix tt = matmul(m, adjoint(m));
  const EigDecomposition spec = hermitian_eig(tt, tol);
  std::vector<Complex> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = spec.eigenvectors(i, n - 1);
  h = canonical_phase(std::move(h));

  const ComplexMatrix p_ran = range_projection(adjoint(m), tol.rel_eps, tol);
  const ComplexMatrix p_perp = sub(ComplexMatrix::identity(n), p_ran);

  const std::vector<Complex> f = matvec(p_ran, h);
  const std::vector<Complex> tf = matvec(m, f);
  if (norm2(tf) <= tol.abs_eps) {
    throw std::runtime_error("na_check_compression: T f vanishes; T is degenerate on its range");
  }

  std::vector<Complex> r1 = matvec(p_ran, tf);
  for (std::size_t i = 0; i < n; ++i) r1[i] -= f[i];

  std::vector<Complex> r2 = matvec(adjoint(m), matvec(p_perp, tf));
  for (std::size_t i = 0; i < n; ++i) r2[i] -= (norm_sq - 1.0) * f[i];

  const double scale = std::max(1.0, norm_sq) * std::max(norm2(f), 1e-300);
  const double res1 = norm2(r1);
  const double res2 = norm2(r2);
  if (res1 > tol.gate(scale) || res2 > tol.gate(scale)) {
    throw std::runtime_error("na_check_compression: identity residuals " + std::to_string(res1) +
                             ", " + std::to_string(res2) + " exceed the contract");
  }

  AttainedCertificate cert;
  cert.witness = f;
  cert.ratio = norm2(tf) / norm2(f);
  cert.residual = std::max(res1, res2);
  cert.detail = "P_{ran T*} T f = f and T* P_perp T f = (||T||^2 - 1) f";
  return Verdict{norm, cert};
}

structured::StructuredOperator example21_operator(std::size_t prefix_blocks) {
  if (prefix_blocks < 1) throw std::invalid_argument("example21_operator: prefix must be >= 1");
  structured::NormProfileMetadata meta;
  meta.declared_sup = std::numbers::sqrt2;
  meta.monotone = structured::Monotone::Increasing;
  meta.strictly_below_sup = true;
  meta.validation_prefix = prefix_blocks;
  return structured::StructuredOperator::block_diagonal(
      [](std::size_t position) { return example21_block(position); }, meta);
}

double example21_block_norm(std::size_t n, const TolerancePolicy& tol) {
  if (n < 1) throw std::invalid_argument("example21_block_norm: n must be >= 1");
  return operator_norm(example21_block(n + 1), tol);
}

Verdict example21_buckholtz_check(std::size_t prefix_blocks, const TolerancePolicy& tol) {
  if (prefix_blocks < 1)
    throw std::invalid_argument("example21_buckholtz_check: prefix must be >= 1");
  const double sup = std::numbers::sqrt2;

  double min_gap = std::numeric_limits<double>::infinity();
  double previous_gap = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= prefix_blocks; ++n) {
    const double x = x_profile(n);
    ComplexMatrix block{{Complex{1.0, 0.0}, Complex{x, 0.0}},
                        {Complex{x, 0.0}, Complex{-1.0, 0.0}}};
    const EigDecomposition spec = hermitian_eig(block, tol);
    const double top = std::max(std::abs(spec.eigenvalues.front()),
                                std::abs(spec.eigenvalues.back()));
    const double gap = sup - top;
    if (!(gap > 0.0)) {
      throw std::runtime_error("example21_buckholtz_check: block " + std::to_string(n) +
                               " reaches sqrt(2)");
    }
    if (!(gap < previous_gap)) {
      throw std::runtime_error("example21_buckholtz_check: gaps stopped decreasing at block " +
                               std::to_string(n));
    }
    previous_gap = gap;
    min_gap = std::min(min_gap, gap);
  }

  NotAttainedCertificate cert;
  cert.sup = sup;
  cert.min_gap = min_gap;
  cert.prefix = prefix_blocks;
  cert.detail =
      "per-block spectra +-sqrt(1 + x_n^2) increase strictly toward sqrt(2) and never reach it";
  return Verdict{sup, cert};
}

}  // namespace na::idempotent

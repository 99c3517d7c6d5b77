#pragma once

#include <cstddef>

#include "na/matrix.hpp"
#include "na/structured.hpp"
#include "na/verdict.hpp"

namespace na::idempotent {

/// Idempotent in block normal form relative to ran T (+) its complement:
/// T = [[I, X], [0, 0]]. Every idempotent is unitarily equivalent to one of
/// these, and the block form makes ||T||^2 = 1 + ||X||^2 immediate.
class IdempotentBlockForm {
 public:
  explicit IdempotentBlockForm(ComplexMatrix x);

  /// Canonicalizes an arbitrary idempotent matrix (T^2 = T checked) into the
  /// block form via a rank-revealing decomposition of its range.
  static IdempotentBlockForm from_idempotent_matrix(const ComplexMatrix& t,
                                                    const TolerancePolicy& tol = {});

  [[nodiscard]] const ComplexMatrix& x() const noexcept { return x_; }
  [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return t_; }
  [[nodiscard]] std::size_t range_dim() const noexcept { return x_.rows(); }
  [[nodiscard]] std::size_t kernel_dim() const noexcept { return x_.cols(); }

 private:
  ComplexMatrix x_;
  ComplexMatrix t_;
};

/// T + T* - I; self-adjoint by construction, with
/// (T + T* - I)^2 = blockdiag(I + XX*, I + X*X).
struct BuckholtzOperator {
  ComplexMatrix matrix;
};

BuckholtzOperator buckholtz(const IdempotentBlockForm& t);

/// Attainment via the Buckholtz criterion: +-||T|| must be an eigenvalue of
/// T + T* - I. Finite idempotents always pass; the value is the verified
/// eigenpair certificate.
Verdict na_check_buckholtz(const IdempotentBlockForm& t, const TolerancePolicy& tol = {});

/// Attainment via the compression identities: a vector f with Tf != 0,
/// P_{ran T*} T f = f and T* P_perp T f = (||T||^2 - 1) f, with residuals.
Verdict na_check_compression(const IdempotentBlockForm& t, const TolerancePolicy& tol = {});

/// The block-diagonal idempotent with blocks [[1,0],[x_n,0]], x_n = 1 - 1/(2n+1);
/// supremum sqrt(2), strictly below on every block.
structured::StructuredOperator example21_operator(std::size_t prefix_blocks);

/// Norm of the n-th profile block, sqrt(1 + x_n^2); tends to sqrt(2).
double example21_block_norm(std::size_t n, const TolerancePolicy& tol = {});

/// Independent route to the same verdict: every per-block Buckholtz spectrum
/// +-sqrt(1 + x_n^2) stays strictly below sqrt(2), with decreasing gaps.
Verdict example21_buckholtz_check(std::size_t prefix_blocks, const TolerancePolicy& tol = {});

}  // namespace na::idempotent

#pragma once

#include <utility>
#include <vector>

#include "na/matrix.hpp"

namespace na {

/// Full spectrum of a Hermitian matrix. Eigenvalues ascending, eigenvector
/// columns orthonormal; each pair satisfies ||A v - lambda v|| <= rel_eps*||A||.
struct EigDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(Complex c, const ComplexMatrix& a);

EigDecomposition hermitian_eig(const ComplexMatrix& a, const TolerancePolicy& tol);

/// Largest lambda of A x = lambda G x with A Hermitian and G Hermitian
/// positive definite, plus its eigenvector (unit 2-norm, canonical phase).
std::pair<double, std::vector<Complex>> generalized_eig_max(const ComplexMatrix& a,
                                                            const ComplexMatrix& g,
                                                            const TolerancePolicy& tol);

/// Largest singular value, i.e. sqrt of the top eigenvalue of A*A.
double operator_norm(const ComplexMatrix& a, const TolerancePolicy& tol = {});

/// Solves A X = B for square well-conditioned A; verifies the residual.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b,
                    const TolerancePolicy& tol = {});

// Vector helpers shared by the operator modules. Vectors are coordinate
// columns; dot(a, b) realizes the inner product <a, b> (conjugate-linear in b).
std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v);
Complex dot(std::span<const Complex> a, std::span<const Complex> b);
double norm2(std::span<const Complex> v);

/// Rotates v by a unimodular scalar so its largest-modulus entry is real and
/// nonnegative. Fixes the phase ambiguity of computed eigenvectors.
std::vector<Complex> canonical_phase(std::vector<Complex> v);

/// sup ||E x||_G / ||x||_G over x != 0, for Hermitian positive definite G.
double gram_weighted_norm(const ComplexMatrix& e, const ComplexMatrix& g,
                          const TolerancePolicy& tol);

}  // namespace na

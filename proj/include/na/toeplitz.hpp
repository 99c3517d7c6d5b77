#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "na/matrix.hpp"
#include "na/structured.hpp"
#include "na/symbols.hpp"
#include "na/verdict.hpp"

namespace na::toeplitz {

/// Finite section of a Toeplitz operator: entry (j, k) is the symbol
/// coefficient at j - k. Carries the l1 truncation error of the discarded
/// coefficients, derived from the symbol's tail certificate.
struct ToeplitzTruncation {
  symbols::SymbolSeries symbol;
  std::size_t order;
  ComplexMatrix matrix;
  double truncation_error;
};

ToeplitzTruncation toeplitz_truncation(const symbols::SymbolSeries& s, std::size_t n);

/// Attainment certificate for a unimodular quotient symbol phi = conj(psi)
/// theta: the analytic factor's coefficient prefix is the witness, and the
/// factorization T_theta = T_phi T_psi is re-verified on the window.
struct NAWitnessReport {
  std::vector<Complex> witness_coeffs;  // normalized prefix of psi
  double ratio = 0.0;                   // ||T_phi h|| / ||h||
  double bound_gap = 0.0;               // sup-norm enclosure + tail - ratio
  double truncation_error = 0.0;
  double factorization_residual = 0.0;  // max entry defect of T_phi T_psi vs T_theta
  std::size_t window = 0;               // leading block the factorization is compared on
  Verdict verdict;
};

NAWitnessReport brown_douglas_na(const symbols::QuotientSymbol& q, std::size_t n,
                                 const TolerancePolicy& tol = {});

/// Analytic symbols attain exactly when the modulus is constant at the sup on
/// the boundary; provably non-constant modulus refutes attainment, anything
/// between stays inconclusive.
Verdict analytic_na_check(const symbols::SymbolSeries& s, const TolerancePolicy& tol = {});
Verdict analytic_na_check(const symbols::BlaschkeProduct& b, const TolerancePolicy& tol = {});

/// Laurent (multiplication) operator of a trig polynomial: attains iff the
/// modulus is constant, since a non-constant trig polynomial meets its sup on
/// a finite, hence null, set.
Verdict laurent_na_check(const symbols::TrigPolynomial& p, const TolerancePolicy& tol = {});

/// Step function on the circle: arcs with constant values. The sup level set
/// always contains a full arc, so these always attain (indicator witness).
struct PiecewiseConstantSymbol {
  struct Arc {
    double length;  // fraction of the circle, > 0; lengths sum to 1
    Complex value;
  };
  std::vector<Arc> arcs;
};

Verdict laurent_na_check(const PiecewiseConstantSymbol& p, const TolerancePolicy& tol = {});

/// Multiplication by a constant operator symbol delegates to the operator
/// itself: an attaining vector lifts to a constant function, and a
/// non-attaining operator blocks attainment pointwise a.e.
Verdict constant_symbol_na(const structured::StructuredOperator& op,
                           const TolerancePolicy& tol = {});

struct ScanRow {
  std::size_t order;
  double truncation_norm;
  double gap_to_enclosure;
};

/// Truncation-trend evidence for symbols no theorem covers. Never decides:
/// the verdict is always inconclusive.
struct ScanEvidence {
  std::vector<ScanRow> rows;
  symbols::SupNormEnclosure enclosure;
  Verdict verdict;
};

ScanEvidence na_criterion_scan(const symbols::SymbolSeries& s,
                               std::span<const std::size_t> n_list,
                               const TolerancePolicy& tol = {});

}  // namespace na::toeplitz

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <variant>

#include "na/matrix.hpp"
#include "na/verdict.hpp"

namespace na::structured {

enum class Monotone { Increasing, Decreasing, None };

/// Declared norm profile that makes an infinite diagonal or block-diagonal
/// operator decidable at desk scale. The declaration is validated against a
/// finite prefix before any verdict is issued; every certificate is relative
/// to the declared limit and carries the prefix it was checked on.
struct NormProfileMetadata {
  double declared_sup = 0.0;
  Monotone monotone = Monotone::None;
  std::optional<std::size_t> attained_at;
  bool strictly_below_sup = false;
  std::size_t validation_prefix = 10'000;
};

/// Infinite operators with enough structure to decide norm attainment:
/// finite matrices, (block-)diagonals with declared profiles, the backward
/// shift, and direct sums of these. Providers are pure functions of a
/// 1-based index.
class StructuredOperator {
 public:
  using EntryProvider = std::function<Complex(std::size_t)>;
  using BlockProvider = std::function<ComplexMatrix(std::size_t)>;

  struct Finite {
    ComplexMatrix matrix;
  };
  struct Diagonal {
    EntryProvider entries;
    NormProfileMetadata meta;
  };
  struct BlockDiagonal {
    BlockProvider blocks;
    NormProfileMetadata meta;
  };
  struct BackwardShift {};
  struct DirectSum {
    std::shared_ptr<const StructuredOperator> left;
    std::shared_ptr<const StructuredOperator> right;
  };

  using Variant = std::variant<Finite, Diagonal, BlockDiagonal, BackwardShift, DirectSum>;

  static StructuredOperator finite(ComplexMatrix m);
  static StructuredOperator diagonal(EntryProvider entries, NormProfileMetadata meta);
  static StructuredOperator block_diagonal(BlockProvider blocks, NormProfileMetadata meta);
  static StructuredOperator backward_shift();

  [[nodiscard]] const Variant& variant() const noexcept { return v_; }

 private:
  explicit StructuredOperator(Variant v) : v_(std::move(v)) {}
  friend StructuredOperator direct_sum(const StructuredOperator&, const StructuredOperator&);
  Variant v_;
};

/// Validates declared metadata against the prefix and returns the norm:
/// finite -> largest singular value, declared variants -> declared_sup,
/// backward shift -> 1.
double structured_norm(const StructuredOperator& op, const TolerancePolicy& tol = {});

/// Norm-attainment decision with certificate; metadata contradictions raise.
Verdict structured_na(const StructuredOperator& op, const TolerancePolicy& tol = {});

/// Orthogonal direct sum: norm is the max of the two norms; the sum attains
/// iff the dominating side does (either side, on a tie).
StructuredOperator direct_sum(const StructuredOperator& a, const StructuredOperator& b);

/// Diagonal with entries 1 - 1/n: supremum 1, approached but never attained.
StructuredOperator one_minus_inv_n_diagonal(std::size_t validation_prefix = 10'000);

}  // namespace na::structured

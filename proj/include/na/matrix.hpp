#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace na {

using Complex = std::complex<double>;

/// Uniform comparison policy threaded through every module. A quantity that
/// lives at magnitude `scale` counts as zero below max(abs_eps, rel_eps*scale).
struct TolerancePolicy {
  double abs_eps = 1e-10;
  double rel_eps = 1e-8;
  std::size_t max_iter = 10'000;

  [[nodiscard]] double gate(double scale) const;
  void validate() const;
};

/// Dense complex matrix with row-major storage and value semantics.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  [[nodiscard]] std::span<const Complex> entries() const noexcept { return entries_; }

  [[nodiscard]] double max_abs() const;
  [[nodiscard]] double frobenius_norm() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

[[nodiscard]] bool is_finite(Complex z);

}  // namespace na

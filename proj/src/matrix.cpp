#include "na/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace na {

double TolerancePolicy::gate(double scale) const {
  return std::max(abs_eps, rel_eps * std::abs(scale));
}

void TolerancePolicy::validate() const {
  if (!(abs_eps > 0.0)) throw std::invalid_argument("TolerancePolicy: abs_eps must be > 0");
  if (!(rel_eps > 0.0)) throw std::invalid_argument("TolerancePolicy: rel_eps must be > 0");
  if (max_iter < 1) throw std::invalid_argument("TolerancePolicy: max_iter must be >= 1");
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("ComplexMatrix: dimensions must be >= 1");
}

void check_entries_finite(const std::vector<Complex>& entries) {
  for (const Complex& z : entries) {
    if (!is_finite(z)) throw std::invalid_argument("ComplexMatrix: non-finite entry");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {
  check_dims(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_dims(rows, cols);
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("ComplexMatrix: entry count " + std::to_string(entries_.size()) +
                                " does not match " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
  }
  check_entries_finite(entries_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  check_dims(rows_, cols_);
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  check_entries_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const Complex& z : entries_) best = std::max(best, std::abs(z));
  return best;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const Complex& z : entries_) sum += std::norm(z);
  return std::sqrt(sum);
}

}  // namespace na

#pragma once

#include "jetcr/gaussian.hpp"

#include <string>
#include <vector>

namespace jetcr {

// Dense matrix of Gaussian rationals, row major.
class GaussianMatrix {
public:
  GaussianMatrix() = default;
  GaussianMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static GaussianMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Gaussian& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Gaussian& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  int rank() const;
  // Throws PreconditionError when singular.
  GaussianMatrix inverse() const;
  GaussianMatrix transpose() const;
  GaussianMatrix adjoint() const;
  bool is_hermitian() const;
  bool is_real_symmetric() const;

  friend GaussianMatrix operator*(const GaussianMatrix& a, const GaussianMatrix& b);
  friend bool operator==(const GaussianMatrix& a, const GaussianMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Gaussian> data_;
};

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool definite() const { return zero == 0 && (positive == 0 || negative == 0); }
};

// Real congruence P^T S P = diag(d) of a real symmetric matrix.
struct Congruence {
  GaussianMatrix p;
  std::vector<Rational> diagonal;
};
Congruence diagonalize_symmetric(const GaussianMatrix& s);

// Sylvester inertia of a Hermitian matrix, by congruence on its realification.
Inertia hermitian_inertia(const GaussianMatrix& h);

} // namespace jetcr

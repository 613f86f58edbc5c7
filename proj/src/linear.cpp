#include "jetcr/linear.hpp"

#include "jetcr/errors.hpp"

#include <sstream>

namespace jetcr {

GaussianMatrix GaussianMatrix::identity(std::size_t n) {
  GaussianMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = Gaussian(1);
  return m;
}

int GaussianMatrix::rank() const {
  GaussianMatrix a = *this;
  int r = 0;
  for (std::size_t col = 0; col < cols_ && std::size_t(r) < rows_; ++col) {
    std::size_t pivot = rows_;
    for (std::size_t i = r; i < rows_; ++i)
      if (!a(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot == rows_)
      continue;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap(a(r, j), a(pivot, j));
    Gaussian inv = a(r, col).inverse();
    for (std::size_t i = r + 1; i < rows_; ++i) {
      if (a(i, col).is_zero())
        continue;
      Gaussian f = a(i, col) * inv;
      for (std::size_t j = col; j < cols_; ++j)
        a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

GaussianMatrix GaussianMatrix::inverse() const {
  if (rows_ != cols_)
    throw PreconditionError("inverse: matrix is not square");
  const std::size_t n = rows_;
  GaussianMatrix a = *this;
  GaussianMatrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t i = col; i < n; ++i)
      if (!a(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot == n)
      throw PreconditionError("inverse: matrix is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(col, j), a(pivot, j));
      std::swap(inv(col, j), inv(pivot, j));
    }
    Gaussian p = a(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= p;
      inv(col, j) *= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero())
        continue;
      Gaussian f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

GaussianMatrix GaussianMatrix::transpose() const {
  GaussianMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

GaussianMatrix GaussianMatrix::adjoint() const {
  GaussianMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j).conj();
  return t;
}

bool GaussianMatrix::is_hermitian() const { return rows_ == cols_ && *this == adjoint(); }

bool GaussianMatrix::is_real_symmetric() const {
  if (rows_ != cols_ || !(*this == transpose()))
    return false;
  for (const auto& x : data_)
    if (!x.is_real())
      return false;
  return true;
}

GaussianMatrix operator*(const GaussianMatrix& a, const GaussianMatrix& b) {
  if (a.cols_ != b.rows_)
    throw PreconditionError("matrix product: shape mismatch");
  GaussianMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero())
        continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        c(i, j).add_product(a(i, k), b(k, j));
    }
  return c;
}

std::string GaussianMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i)
      os << "; ";
    for (std::size_t j = 0; j < cols_; ++j)
      os << (j ? ", " : "") << (*this)(i, j).to_string();
  }
  os << ']';
  return os.str();
}

Congruence diagonalize_symmetric(const GaussianMatrix& s) {
  if (!s.is_real_symmetric())
    throw PreconditionError("diagonalize_symmetric: matrix is not real symmetric");
  const std::size_t n = s.rows();
  GaussianMatrix m = s;
  GaussianMatrix p = GaussianMatrix::identity(n);

  // Basis change e_a <- e_a + f * e_b, applied to rows, columns and P.
  auto add_basis = [&](std::size_t a, std::size_t b, const Gaussian& f) {
    for (std::size_t j = 0; j < n; ++j)
      m(j, a) += f * m(j, b);
    for (std::size_t j = 0; j < n; ++j)
      m(a, j) += f * m(b, j);
    for (std::size_t j = 0; j < n; ++j)
      p(j, a) += f * p(j, b);
  };
  auto swap_basis = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < n; ++j)
      std::swap(m(j, a), m(j, b));
    for (std::size_t j = 0; j < n; ++j)
      std::swap(m(a, j), m(b, j));
    for (std::size_t j = 0; j < n; ++j)
      std::swap(p(j, a), p(j, b));
  };

  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t j = k + 1;
      while (j < n && m(j, j).is_zero())
        ++j;
      if (j < n) {
        swap_basis(k, j);
      } else {
        j = k + 1;
        while (j < n && m(k, j).is_zero())
          ++j;
        if (j == n)
          continue;
        add_basis(k, j, Gaussian(1));
      }
    }
    Gaussian inv = m(k, k).inverse();
    for (std::size_t j = k + 1; j < n; ++j)
      if (!m(k, j).is_zero())
        add_basis(j, k, -(m(k, j) * inv));
  }
  Congruence c{p, {}};
  for (std::size_t k = 0; k < n; ++k)
    c.diagonal.push_back(m(k, k).re());
  return c;
}

Inertia hermitian_inertia(const GaussianMatrix& h) {
  if (!h.is_hermitian())
    throw PreconditionError("hermitian_inertia: matrix is not Hermitian");
  const std::size_t n = h.rows();
  GaussianMatrix r(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Gaussian a(h(i, j).re()), b(h(i, j).im());
      r(i, j) = a;
      r(i + n, j + n) = a;
      r(i, j + n) = -b;
      r(i + n, j) = b;
    }
  Inertia in;
  for (const auto& d : diagonalize_symmetric(r).diagonal) {
    int s = sgn(d);
    (s > 0 ? in.positive : s < 0 ? in.negative : in.zero) += 1;
  }
  in.positive /= 2;
  in.negative /= 2;
  in.zero /= 2;
  return in;
}

} // namespace jetcr

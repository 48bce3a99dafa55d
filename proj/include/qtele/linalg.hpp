// Copyright 2026 The qtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QTELE_LINALG_HPP
#define QTELE_LINALG_HPP

// Dense complex linear algebra for the tiny dimensions (2, 4, 8) that show up
// in single-qubit teleportation. Everything is a free function templated on
// the Eigen expression type so callers can pass blocks, maps and products
// without materializing them first.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace qtele {

template <typename T>
using Complex = std::complex<T>;

template <typename T>
using CMatrixT =
    Eigen::Matrix<Complex<T>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename T>
using CVectorT = Eigen::Matrix<Complex<T>, Eigen::Dynamic, 1>;

using Real = double;
using ComplexScalar = Complex<Real>;
using CMatrix = CMatrixT<Real>;
using CVector = CVectorT<Real>;

/// Default absolute tolerance for numerical comparisons.
inline constexpr Real kTolerance = 1e-12;
/// Looser tolerance for Hermiticity validation of computed products.
inline constexpr Real kHermitianTolerance = 1e-10;

/// Thrown when operand shapes do not satisfy an operation's precondition.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a value violates a domain invariant (non-finite entries,
/// non-Hermitian input, out-of-range parameters).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string shape_string(Eigen::Index rows, Eigen::Index cols) {
  std::ostringstream os;
  os << rows << "x" << cols;
  return os.str();
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const auto z = m(i, j);
      if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z))) {
        throw DomainError(std::string(what) + ": non-finite entry at (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         shape_string(m.rows(), m.cols()));
  }
}

template <typename Derived>
using ScalarOf = typename Derived::Scalar;

template <typename Derived>
using RealOf = typename Eigen::NumTraits<ScalarOf<Derived>>::Real;

template <typename Derived>
using PlainMatrixOf =
    Eigen::Matrix<ScalarOf<Derived>, Eigen::Dynamic, Eigen::Dynamic,
                  Eigen::RowMajor>;

}  // namespace detail

template <typename T>
CMatrixT<T> identity(Eigen::Index n) {
  return CMatrixT<T>::Identity(n, n);
}

inline CMatrix identity(Eigen::Index n) { return identity<Real>(n); }

template <typename DerivedA, typename DerivedB>
detail::PlainMatrixOf<DerivedA> matmul(const Eigen::MatrixBase<DerivedA>& a,
                                      const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: cannot multiply " +
                         detail::shape_string(a.rows(), a.cols()) + " by " +
                         detail::shape_string(b.rows(), b.cols()));
  }
  detail::require_finite(a, "matmul");
  detail::require_finite(b, "matmul");
  return a * b;
}

template <typename Derived>
detail::PlainMatrixOf<Derived> adjoint(const Eigen::MatrixBase<Derived>& a) {
  detail::require_finite(a, "adjoint");
  return a.adjoint();
}

template <typename Derived>
detail::ScalarOf<Derived> trace(const Eigen::MatrixBase<Derived>& a) {
  detail::require_square(a, "trace");
  detail::require_finite(a, "trace");
  return a.trace();
}

/// Kronecker product with `a` as the slow (outer) index:
/// out(i*b.rows()+k, j*b.cols()+l) = a(i,j) * b(k,l).
/// Column vectors work through the same layout.
template <typename DerivedA, typename DerivedB>
detail::PlainMatrixOf<DerivedA> tensor_product(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  detail::require_finite(a, "tensor_product");
  detail::require_finite(b, "tensor_product");
  detail::PlainMatrixOf<DerivedA> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

enum class Keep { A, B };

/// Traces out one factor of a bipartite operator on C^dimA (x) C^dimB.
/// The layout is the tensor_product one: row index = iA*dimB + iB.
template <typename Derived>
detail::PlainMatrixOf<Derived> partial_trace(const Eigen::MatrixBase<Derived>& rho,
                                            Eigen::Index dim_a, Eigen::Index dim_b,
                                            Keep keep) {
  detail::require_square(rho, "partial_trace");
  if (dim_a <= 0 || dim_b <= 0 || rho.rows() != dim_a * dim_b) {
    throw DimensionError("partial_trace: " +
                         detail::shape_string(rho.rows(), rho.cols()) +
                         " does not factor as " + std::to_string(dim_a) + "*" +
                         std::to_string(dim_b));
  }
  detail::require_finite(rho, "partial_trace");

  using Matrix = detail::PlainMatrixOf<Derived>;
  if (keep == Keep::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
      for (Eigen::Index j = 0; j < dim_a; ++j)
        for (Eigen::Index k = 0; k < dim_b; ++k)
          out(i, j) += rho(i * dim_b + k, j * dim_b + k);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Eigen::Index i = 0; i < dim_b; ++i)
    for (Eigen::Index j = 0; j < dim_b; ++j)
      for (Eigen::Index k = 0; k < dim_a; ++k)
        out(i, j) += rho(k * dim_b + i, k * dim_b + j);
  return out;
}

template <typename DerivedA, typename DerivedB>
detail::RealOf<DerivedA> frobenius_distance(const Eigen::MatrixBase<DerivedA>& a,
                                           const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("frobenius_distance: shapes differ (" +
                         detail::shape_string(a.rows(), a.cols()) + " vs " +
                         detail::shape_string(b.rows(), b.cols()) + ")");
  }
  detail::require_finite(a, "frobenius_distance");
  detail::require_finite(b, "frobenius_distance");
  return (a - b).norm();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a,
                  detail::RealOf<Derived> tol = kHermitianTolerance) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Both eigenvalues of a 2x2 Hermitian matrix, ascending.
template <typename Derived>
std::pair<detail::RealOf<Derived>, detail::RealOf<Derived>> eig2_hermitian(
    const Eigen::MatrixBase<Derived>& a) {
  using R = detail::RealOf<Derived>;
  if (a.rows() != 2 || a.cols() != 2) {
    throw DimensionError("eig2_hermitian: expected 2x2, got " +
                         detail::shape_string(a.rows(), a.cols()));
  }
  detail::require_finite(a, "eig2_hermitian");
  if (!is_hermitian(a, R(kHermitianTolerance))) {
    throw DomainError("eig2_hermitian: matrix is not Hermitian");
  }
  const R p = std::real(a(0, 0));
  const R q = std::real(a(1, 1));
  const R mean = (p + q) / 2;
  // mean^2 - det rewritten as ((p-q)/2)^2 + |a01|^2 so it stays nonnegative.
  const R half_gap = (p - q) / 2;
  const R radius = std::hypot(half_gap, std::abs(a(0, 1)));
  return {mean - radius, mean + radius};
}

}  // namespace qtele

#endif  // QTELE_LINALG_HPP

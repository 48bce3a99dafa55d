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

#include "test_util.hpp"

#include <doctest.h>

#include <limits>

using namespace qtele;
using namespace qtele::testing;
using namespace std::complex_literals;

namespace {

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace

TEST_CASE("matmul") {
  Engine rng(11);
  const CMatrix m = random_matrix(rng, 2, 3);
  CHECK(max_abs_diff(matmul(identity(2), m), m) == 0.0);
  CHECK(max_abs_diff(matmul(pauli_x(), pauli_x()), identity(2)) == 0.0);

  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_matrix(rng, 4, 4);
    const CMatrix b = random_matrix(rng, 4, 4);
    CHECK(max_abs_diff(matmul(a, b), naive_matmul(a, b)) <= 1e-12);
  }
}

TEST_CASE("matmul rejects mismatched shapes and names both") {
  const CMatrix a = CMatrix::Zero(2, 3);
  const CMatrix b = CMatrix::Zero(2, 2);
  try {
    (void)matmul(a, b);
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2x3") != std::string::npos);
    CHECK(msg.find("2x2") != std::string::npos);
  }
}

TEST_CASE("non-finite entries are rejected") {
  CMatrix a = identity(2);
  a(0, 1) = std::numeric_limits<Real>::quiet_NaN();
  CHECK_THROWS_AS((void)matmul(a, identity(2)), DomainError);
  CHECK_THROWS_AS((void)trace(a), DomainError);
  a(0, 1) = ComplexScalar(0.0, std::numeric_limits<Real>::infinity());
  CHECK_THROWS_AS((void)adjoint(a), DomainError);
}

TEST_CASE("adjoint") {
  CHECK(max_abs_diff(adjoint(identity(2)), identity(2)) == 0.0);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1i;
  d(1, 1) = -1i;
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(0, 0) = -1i;
  expected(1, 1) = 1i;
  CHECK(max_abs_diff(adjoint(d), expected) == 0.0);

  Engine rng(12);
  const CMatrix a = random_matrix(rng, 3, 2);
  CHECK(adjoint(a).rows() == 2);
  CHECK(max_abs_diff(adjoint(adjoint(a)), a) == 0.0);
}

TEST_CASE("trace") {
  CHECK(trace(identity(4)) == ComplexScalar(4.0));
  CHECK_THROWS_AS((void)trace(CMatrix::Zero(2, 3)), DimensionError);

  Engine rng(13);
  const CMatrix a = random_matrix(rng, 4, 4);
  ComplexScalar s = 0.0;
  for (int i = 0; i < 4; ++i) s += a(i, i);
  CHECK(std::abs(trace(a) - s) <= 1e-12);
}

TEST_CASE("tensor_product") {
  CHECK(max_abs_diff(tensor_product(identity(2), identity(2)), identity(4)) == 0.0);

  CVector zero(2), one(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  const CMatrix ket01 = tensor_product(zero, one);
  REQUIRE(ket01.rows() == 4);
  REQUIRE(ket01.cols() == 1);
  CHECK(ket01(1, 0) == ComplexScalar(1.0));
  CHECK(ket01.cwiseAbs().sum() == 1.0);

  Engine rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = random_matrix(rng, 2, 2);
    const CMatrix b = random_matrix(rng, 2, 2);
    const CMatrix k = tensor_product(a, b);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q)
            CHECK(std::abs(k(i * 2 + p, j * 2 + q) - a(i, j) * b(p, q)) <= 1e-15);
  }
}

TEST_CASE("tensor_product is associative") {
  Engine rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = random_matrix(rng, 2, 1 + trial % 2);
    const CMatrix b = random_matrix(rng, 2, 2);
    const CMatrix c = random_matrix(rng, 1 + trial % 3, 2);
    const CMatrix left = tensor_product(tensor_product(a, b), c);
    const CMatrix right = tensor_product(a, tensor_product(b, c));
    REQUIRE(left.rows() == right.rows());
    REQUIRE(left.cols() == right.cols());
    CHECK(max_abs_diff(left, right) <= 1e-12);
    CHECK(max_abs_diff(left, naive_kron(naive_kron(a, b), c)) <= 1e-12);
  }
}

TEST_CASE("partial_trace of a product state") {
  Engine rng(16);
  const CMatrix rho_e = random_density(rng, 2);
  const CMatrix rho_3 = random_density(rng, 2);
  const CMatrix joint = tensor_product(rho_e, rho_3);
  CHECK(max_abs_diff(partial_trace(joint, 2, 2, Keep::B), rho_3) <= 1e-12);
  CHECK(max_abs_diff(partial_trace(joint, 2, 2, Keep::A), rho_e) <= 1e-12);
}

TEST_CASE("partial_trace of a Bell state is maximally mixed") {
  const Real h = 1.0 / std::sqrt(2.0);
  CVector phi(4);
  phi << h, 0.0, 0.0, h;
  const CMatrix rho = phi * phi.adjoint();
  const CMatrix half = identity(2) / 2.0;
  CHECK(max_abs_diff(partial_trace(rho, 2, 2, Keep::A), half) <= 1e-12);
  CHECK(max_abs_diff(partial_trace(rho, 2, 2, Keep::B), half) <= 1e-12);
}

TEST_CASE("partial_trace matches the index-summation oracle") {
  Engine rng(17);
  for (auto [de, ds] : {std::pair<Eigen::Index, Eigen::Index>{2, 2}, {2, 4}, {4, 2}}) {
    for (int trial = 0; trial < 10; ++trial) {
      const CVector psi = random_unit_vector(rng, de * ds);
      const CMatrix rho = psi * psi.adjoint();
      CHECK(max_abs_diff(partial_trace(rho, de, ds, Keep::B),
                         trace_first_factor_oracle(rho, de, ds)) <= 1e-12);
    }
  }
}

TEST_CASE("partial_trace preserves trace and Hermiticity") {
  Engine rng(18);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index da = 1 + trial % 4;
    const Eigen::Index db = 1 + (trial / 4) % 4;
    const CMatrix rho = random_hermitian(rng, da * db);
    for (Keep keep : {Keep::A, Keep::B}) {
      const CMatrix out = partial_trace(rho, da, db, keep);
      CHECK(std::abs(trace(out) - trace(rho)) <= 1e-12);
      CHECK(is_hermitian(out, 1e-12));
    }
  }
}

TEST_CASE("partial_trace rejects bad factorizations") {
  CHECK_THROWS_AS((void)partial_trace(identity(4), 2, 3, Keep::A), DimensionError);
  CHECK_THROWS_AS((void)partial_trace(CMatrix::Zero(4, 2), 2, 2, Keep::A), DimensionError);
}

TEST_CASE("frobenius_distance") {
  Engine rng(19);
  const CMatrix a = random_matrix(rng, 2, 2);
  CHECK(frobenius_distance(a, a) == 0.0);

  CMatrix coherent(2, 2);
  coherent << 0.5, 0.5, 0.5, 0.5;
  const CMatrix mixed = identity(2) / 2.0;
  CHECK(frobenius_distance(coherent, mixed) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix x = random_matrix(rng, 3, 2);
    const CMatrix y = random_matrix(rng, 3, 2);
    CHECK(std::abs(frobenius_distance(x, y) - naive_frobenius(x, y)) <= 1e-12);
    CHECK(frobenius_distance(x, y) == frobenius_distance(y, x));
  }
  CHECK_THROWS_AS((void)frobenius_distance(identity(2), identity(4)), DimensionError);
}

TEST_CASE("frobenius_distance satisfies the triangle inequality") {
  Engine rng(20);
  for (int trial = 0; trial < 200; ++trial) {
    const CMatrix x = random_matrix(rng, 2, 2);
    const CMatrix y = random_matrix(rng, 2, 2);
    const CMatrix z = random_matrix(rng, 2, 2);
    CHECK(frobenius_distance(x, z) <=
          frobenius_distance(x, y) + frobenius_distance(y, z) + 1e-10);
  }
}

TEST_CASE("eig2_hermitian") {
  auto [l0, l1] = eig2_hermitian(identity(2));
  CHECK(l0 == 1.0);
  CHECK(l1 == 1.0);
  std::tie(l0, l1) = eig2_hermitian(pauli_z());
  CHECK(l0 == -1.0);
  CHECK(l1 == 1.0);

  CMatrix skew(2, 2);
  skew << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS((void)eig2_hermitian(skew), DomainError);
  CHECK_THROWS_AS((void)eig2_hermitian(identity(4)), DimensionError);
}

TEST_CASE("eig2_hermitian roots annihilate the characteristic polynomial") {
  Engine rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const CMatrix a = random_hermitian(rng, 2) * (1.0 + trial);
    const auto [lo, hi] = eig2_hermitian(a);
    CHECK(lo <= hi);
    const Real scale = 1e-9 * (1.0 + a.norm());
    for (Real lambda : {lo, hi}) {
      const ComplexScalar det = (a(0, 0) - lambda) * (a(1, 1) - lambda) - a(0, 1) * a(1, 0);
      CHECK(std::abs(det) <= scale);
    }
  }
}

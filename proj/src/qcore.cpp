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

#include "qtele/qcore.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>

namespace qtele {

namespace {

Eigen::Index product_of_dims(const std::vector<Subsystem>& subsystems) {
  Eigen::Index n = 1;
  for (const auto& s : subsystems) {
    if (s.dim <= 0) throw DimensionError("subsystem '" + s.label + "' has dim <= 0");
    n *= s.dim;
  }
  return n;
}

// Mixed-radix digits of `index`, most significant first.
std::vector<Eigen::Index> digits_of(Eigen::Index index,
                                    std::span<const Eigen::Index> dims) {
  std::vector<Eigen::Index> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = index % dims[k];
    index /= dims[k];
  }
  return d;
}

void require_targets(std::span<const Eigen::Index> dims,
                     std::span<const Eigen::Index> targets, const char* what) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto t = targets[i];
    if (t < 0 || static_cast<std::size_t>(t) >= dims.size()) {
      throw DimensionError(std::string(what) + ": subsystem index " +
                           std::to_string(t) + " out of range for " +
                           std::to_string(dims.size()) + " subsystems");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[j] == t) {
        throw DimensionError(std::string(what) + ": repeated subsystem index " +
                             std::to_string(t));
      }
    }
  }
}

CMatrix lift(const Ket& psi, const CMatrix& op,
             std::span<const Eigen::Index> targets, const char* what) {
  const auto dims = psi.dims();
  require_targets(dims, targets, what);
  return embed_operator(op, dims, targets);
}

}  // namespace

Ket::Ket(CVector amplitudes, std::vector<Subsystem> subsystems)
    : amplitudes_(std::move(amplitudes)), subsystems_(std::move(subsystems)) {
  if (subsystems_.empty()) throw DimensionError("Ket: no subsystems");
  if (product_of_dims(subsystems_) != amplitudes_.size()) {
    throw DimensionError("Ket: " + std::to_string(amplitudes_.size()) +
                         " amplitudes do not match the subsystem dimensions");
  }
  detail::require_finite(amplitudes_, "Ket");
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kTolerance) {
    throw DomainError("Ket: amplitudes are not normalized");
  }
}

Ket Ket::normalized(CVector amplitudes, std::vector<Subsystem> subsystems) {
  detail::require_finite(amplitudes, "Ket::normalized");
  const Real norm = amplitudes.norm();
  if (norm < kTolerance) throw DomainError("Ket::normalized: zero vector");
  return Ket(amplitudes / norm, std::move(subsystems));
}

Ket Ket::qubit(CVector amplitudes, std::string label) {
  return Ket::normalized(std::move(amplitudes), {{std::move(label), 2}});
}

std::vector<Eigen::Index> Ket::dims() const {
  std::vector<Eigen::Index> d;
  d.reserve(subsystems_.size());
  for (const auto& s : subsystems_) d.push_back(s.dim);
  return d;
}

Ket tensor(const Ket& lhs, const Ket& rhs) {
  std::vector<Subsystem> subs = lhs.subsystems();
  subs.insert(subs.end(), rhs.subsystems().begin(), rhs.subsystems().end());
  CVector amps = tensor_product(lhs.amplitudes(), rhs.amplitudes());
  return Ket::normalized(std::move(amps), std::move(subs));
}

ComplexScalar inner(const Ket& lhs, const Ket& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw DimensionError("inner: dimensions " + std::to_string(lhs.dim()) +
                         " and " + std::to_string(rhs.dim()) + " differ");
  }
  return lhs.amplitudes().dot(rhs.amplitudes());
}

Real overlap_magnitude(const Ket& lhs, const Ket& rhs) {
  return std::abs(inner(lhs, rhs));
}

DensityMatrix::DensityMatrix(CMatrix mat) : mat_(std::move(mat)) {
  detail::require_square(mat_, "DensityMatrix");
  detail::require_finite(mat_, "DensityMatrix");
  if (!is_hermitian(mat_, kHermitianTolerance)) {
    throw DomainError("DensityMatrix: not Hermitian");
  }
  if (std::abs(mat_.trace() - ComplexScalar(1.0)) > kHermitianTolerance) {
    throw DomainError("DensityMatrix: trace is not 1");
  }
  Real smallest;
  if (mat_.rows() == 2) {
    smallest = eig2_hermitian(mat_).first;
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(mat_, Eigen::EigenvaluesOnly);
    smallest = solver.eigenvalues().minCoeff();
  }
  if (smallest < -kHermitianTolerance) {
    throw DomainError("DensityMatrix: negative eigenvalue");
  }
}

Real DensityMatrix::purity() const {
  // trace(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return mat_.squaredNorm();
}

Gate make_gate(GateName name) {
  CMatrix m(2, 2);
  switch (name) {
    case GateName::I:
      m << 1.0, 0.0, 0.0, 1.0;
      break;
    case GateName::X:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case GateName::Z:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
    case GateName::ZX:
      m = make_gate(GateName::Z).mat * make_gate(GateName::X).mat;
      break;
  }
  return {name, std::move(m)};
}

const char* to_string(GateName name) {
  switch (name) {
    case GateName::I:
      return "I";
    case GateName::X:
      return "X";
    case GateName::Z:
      return "Z";
    case GateName::ZX:
      return "ZX";
  }
  return "?";
}

Ket ket_from_amplitudes(ComplexScalar a, ComplexScalar b) {
  CVector v(2);
  v << a, b;
  return Ket::qubit(std::move(v));
}

DensityMatrix to_density(const Ket& psi) {
  const CVector& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint());
}

CMatrix embed_operator(const CMatrix& op, std::span<const Eigen::Index> dims,
                       std::span<const Eigen::Index> targets) {
  require_targets(dims, targets, "embed_operator");
  Eigen::Index target_dim = 1;
  for (auto t : targets) target_dim *= dims[t];
  if (op.rows() != target_dim || op.cols() != target_dim) {
    throw DimensionError("embed_operator: operator is " +
                         detail::shape_string(op.rows(), op.cols()) +
                         " but the targeted factor has dimension " +
                         std::to_string(target_dim));
  }
  const Eigen::Index full = std::accumulate(dims.begin(), dims.end(),
                                            Eigen::Index{1}, std::multiplies<>());
  std::vector<bool> is_target(dims.size(), false);
  for (auto t : targets) is_target[t] = true;

  // Index into `op` built from the target digits in `targets` order.
  auto sub_index = [&](const std::vector<Eigen::Index>& d) {
    Eigen::Index s = 0;
    for (auto t : targets) s = s * dims[t] + d[t];
    return s;
  };

  std::vector<std::vector<Eigen::Index>> digits;
  digits.reserve(static_cast<std::size_t>(full));
  for (Eigen::Index i = 0; i < full; ++i) digits.push_back(digits_of(i, dims));

  CMatrix out = CMatrix::Zero(full, full);
  for (Eigen::Index i = 0; i < full; ++i) {
    const auto& di = digits[i];
    for (Eigen::Index j = 0; j < full; ++j) {
      const auto& dj = digits[j];
      bool spectators_match = true;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (!is_target[k] && di[k] != dj[k]) {
          spectators_match = false;
          break;
        }
      }
      if (spectators_match) out(i, j) = op(sub_index(di), sub_index(dj));
    }
  }
  return out;
}

Ket apply_gate(const Ket& psi, const Gate& g, Eigen::Index target) {
  const Eigen::Index targets[] = {target};
  const CMatrix full = lift(psi, g.mat, targets, "apply_gate");
  return Ket::normalized(full * psi.amplitudes(), psi.subsystems());
}

std::vector<BellState> bell_states() {
  const Real h = 1.0 / std::sqrt(2.0);
  auto make = [h](std::string label, Real c00, Real c01, Real c10, Real c11) {
    CVector v(4);
    v << c00 * h, c01 * h, c10 * h, c11 * h;
    return BellState{std::move(label), std::move(v)};
  };
  return {make("Phi+", 1, 0, 0, 1), make("Phi-", 1, 0, 0, -1),
          make("Psi+", 0, 1, 1, 0), make("Psi-", 0, 1, -1, 0)};
}

std::vector<Projector> bell_basis() {
  std::vector<Projector> out;
  for (const auto& b : bell_states()) {
    out.push_back({b.amplitudes * b.amplitudes.adjoint(), b.label});
  }
  return out;
}

std::vector<Projector> computational_basis() {
  CMatrix p0 = CMatrix::Zero(2, 2);
  CMatrix p1 = CMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  return {{std::move(p0), "0"}, {std::move(p1), "1"}};
}

namespace {

// Lifted projectors after validating completeness on the targeted factor.
std::vector<CMatrix> lift_projectors(const Ket& psi, std::span<const Projector> projectors,
                                     std::span<const Eigen::Index> targets) {
  if (projectors.empty()) throw DomainError("born_measure: empty projector set");
  const Eigen::Index n = projectors.front().mat.rows();
  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& p : projectors) {
    if (p.mat.rows() != n || p.mat.cols() != n) {
      throw DimensionError("born_measure: projector '" + p.label +
                           "' has inconsistent shape");
    }
    sum += p.mat;
  }
  if ((sum - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw DomainError("born_measure: projectors do not sum to the identity");
  }
  std::vector<CMatrix> lifted;
  lifted.reserve(projectors.size());
  for (const auto& p : projectors) lifted.push_back(lift(psi, p.mat, targets, "born_measure"));
  return lifted;
}

std::vector<Real> probabilities_of(const Ket& psi, const std::vector<CMatrix>& lifted) {
  std::vector<Real> probs;
  probs.reserve(lifted.size());
  for (const auto& full : lifted) {
    const ComplexScalar e = psi.amplitudes().dot(full * psi.amplitudes());
    probs.push_back(std::max(std::real(e), 0.0));
  }
  if (*std::max_element(probs.begin(), probs.end()) < kTolerance) {
    throw DomainError("born_measure: every outcome has vanishing probability");
  }
  return probs;
}

}  // namespace

std::vector<Real> born_probabilities(const Ket& psi,
                                     std::span<const Projector> projectors,
                                     std::span<const Eigen::Index> targets) {
  return probabilities_of(psi, lift_projectors(psi, projectors, targets));
}

MeasurementResult born_measure(const Ket& psi,
                               std::span<const Projector> projectors,
                               std::span<const Eigen::Index> targets,
                               RngStream& rng) {
  const auto lifted = lift_projectors(psi, projectors, targets);
  const auto probs = probabilities_of(psi, lifted);
  const Real total = std::accumulate(probs.begin(), probs.end(), 0.0);
  const Real u = rng.uniform() * total;

  std::size_t chosen = probs.size();
  Real cumulative = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] < kTolerance) continue;
    chosen = k;
    cumulative += probs[k];
    if (u < cumulative) break;
  }

  CVector post = lifted[chosen] * psi.amplitudes();
  return {chosen, Ket::normalized(std::move(post), psi.subsystems()),
          probs[chosen]};
}

Real fidelity(const Ket& pure, const DensityMatrix& rho) {
  if (pure.dim() != rho.dim()) {
    throw DimensionError("fidelity: ket has dimension " +
                         std::to_string(pure.dim()) + ", density matrix " +
                         std::to_string(rho.dim()));
  }
  return std::real(pure.amplitudes().dot(rho.matrix() * pure.amplitudes()));
}

}  // namespace qtele

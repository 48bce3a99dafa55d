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

#ifndef QTELE_QCORE_HPP
#define QTELE_QCORE_HPP

// Kets, density matrices, gates and projective measurement.
//
// Tensor order is big-endian: the first subsystem listed is the slowest
// index of the amplitude vector. A ket over subsystems (q1, q2, q3) stores
// the amplitude of |x1 x2 x3> at index x1*4 + x2*2 + x3.

#include "qtele/linalg.hpp"
#include "qtele/rng.hpp"

#include <span>
#include <string>
#include <vector>

namespace qtele {

struct Subsystem {
  std::string label;
  Eigen::Index dim = 2;

  bool operator==(const Subsystem&) const = default;
};

/// Normalized state vector over an ordered list of labelled subsystems.
class Ket {
 public:
  /// Validates that `amplitudes` has unit norm and matches the subsystems.
  Ket(CVector amplitudes, std::vector<Subsystem> subsystems);

  /// Rescales `amplitudes` to unit norm. Throws DomainError on a zero vector.
  static Ket normalized(CVector amplitudes, std::vector<Subsystem> subsystems);

  /// A single qubit with the default label.
  static Ket qubit(CVector amplitudes, std::string label = "q");

  const CVector& amplitudes() const { return amplitudes_; }
  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  std::vector<Eigen::Index> dims() const;
  ComplexScalar operator[](Eigen::Index i) const { return amplitudes_(i); }

 private:
  CVector amplitudes_;
  std::vector<Subsystem> subsystems_;
};

Ket tensor(const Ket& lhs, const Ket& rhs);

/// <lhs|rhs>.
ComplexScalar inner(const Ket& lhs, const Ket& rhs);

/// |<lhs|rhs>|, the global-phase-blind overlap.
Real overlap_magnitude(const Ket& lhs, const Ket& rhs);

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity (all within 1e-10).
  explicit DensityMatrix(CMatrix mat);

  const CMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  Real purity() const;

 private:
  CMatrix mat_;
};

enum class GateName { I, X, Z, ZX };

struct Gate {
  GateName name;
  CMatrix mat;
};

/// The named 2x2 correction gates. ZX means X first, then Z (matrix Z*X).
Gate make_gate(GateName name);
const char* to_string(GateName name);
inline constexpr GateName kAllGates[] = {GateName::I, GateName::X, GateName::Z,
                                         GateName::ZX};

struct Projector {
  CMatrix mat;
  std::string label;
};

Ket ket_from_amplitudes(ComplexScalar a, ComplexScalar b);

DensityMatrix to_density(const Ket& psi);

/// The operator `op`, acting on the subsystems listed in `targets` (in that
/// order), lifted to the full space with identities elsewhere.
CMatrix embed_operator(const CMatrix& op, std::span<const Eigen::Index> dims,
                       std::span<const Eigen::Index> targets);

Ket apply_gate(const Ket& psi, const Gate& g, Eigen::Index target);

struct BellState {
  std::string label;
  CVector amplitudes;
};

/// Phi+, Phi-, Psi+, Psi- with Phi(+/-) = (|00> +/- |11>)/sqrt2 and
/// Psi(+/-) = (|01> +/- |10>)/sqrt2.
std::vector<BellState> bell_states();

/// Rank-one projectors onto bell_states(), same order.
std::vector<Projector> bell_basis();

/// Computational-basis projectors on one qubit.
std::vector<Projector> computational_basis();

struct MeasurementResult {
  std::size_t outcome;
  Ket post_state;
  Real probability;  // exact Born probability of `outcome`
};

/// Projective measurement of the subsystems listed in `targets`.
/// Consumes exactly one draw from `rng`.
MeasurementResult born_measure(const Ket& psi,
                               std::span<const Projector> projectors,
                               std::span<const Eigen::Index> targets,
                               RngStream& rng);

/// Exact Born probabilities without sampling.
std::vector<Real> born_probabilities(const Ket& psi,
                                     std::span<const Projector> projectors,
                                     std::span<const Eigen::Index> targets);

/// <psi|rho|psi>.
Real fidelity(const Ket& pure, const DensityMatrix& rho);

}  // namespace qtele

#endif  // QTELE_QCORE_HPP

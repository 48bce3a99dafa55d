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

#ifndef QTELE_TELEPORT_HPP
#define QTELE_TELEPORT_HPP

// Ideal single-qubit teleportation through a singlet pair.
//
// Particle 1 carries the input state, particles 2 and 3 share
// (|01> - |10>)/sqrt2. Alice measures (1, 2) in the Bell basis and sends two
// classical bits; Bob applies the matching correction to particle 3.

#include "qtele/qcore.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace qtele {

enum class BellOutcome : std::uint8_t { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

inline constexpr std::array<BellOutcome, 4> kAllOutcomes = {
    BellOutcome::PsiMinus, BellOutcome::PsiPlus, BellOutcome::PhiMinus,
    BellOutcome::PhiPlus};

/// Two-bit classical message; PsiMinus=00, PsiPlus=01, PhiMinus=10, PhiPlus=11.
std::uint8_t to_bits(BellOutcome outcome);
BellOutcome outcome_from_bits(std::uint8_t bits);
std::string_view to_string(BellOutcome outcome);

/// Particle-1/2 Bell state for an outcome, as a 4-vector.
CVector bell_vector(BellOutcome outcome);

/// The state particle 3 is left in, unnormalized sign convention included:
/// PsiMinus: -a|0> - b|1>, PsiPlus: -a|0> + b|1>,
/// PhiMinus:  b|0> + a|1>, PhiPlus: -b|0> + a|1>.
Ket listed_conditional_state(ComplexScalar a, ComplexScalar b, BellOutcome outcome);

/// Outcome -> correction gate. Found by exhaustive search over {I, X, Z, ZX}
/// against listed_conditional_state; frozen here and regression-tested.
class CorrectionMap {
 public:
  static const CorrectionMap& standard();

  GateName operator[](BellOutcome outcome) const {
    return table_[static_cast<std::size_t>(outcome)];
  }

  /// Rebuilds the table from scratch by trying every gate on every listed
  /// conditional state of a generic (a, b). Returns nullopt if some outcome
  /// has zero or several matching gates.
  static std::optional<CorrectionMap> derive(ComplexScalar a, ComplexScalar b);

  bool operator==(const CorrectionMap&) const = default;

 private:
  explicit constexpr CorrectionMap(std::array<GateName, 4> table) : table_(table) {}
  std::array<GateName, 4> table_;
};

Gate correction_for(BellOutcome outcome);

struct TeleportRecord {
  Ket input;
  BellOutcome outcome;
  Ket conditional_state;
  Ket corrected_state;
  Real fidelity;
  Real probability;
};

/// psi (x) (|01> - |10>)/sqrt2 with subsystems q1, q2, q3.
Ket prepare_joint(const Ket& psi);

struct AliceResult {
  BellOutcome outcome;
  Ket bob_state;
  Real probability;
};

/// Bell measurement on particles 1 and 2 of a prepare_joint state.
/// bob_state keeps the sign picked up from the projection.
AliceResult alice_measure(const Ket& joint, RngStream& rng);

/// Bob's (normalized) particle-3 state conditioned on `outcome`, computed by
/// contracting the joint state with the Bell vector.
Ket conditional_bob_state(const Ket& joint, BellOutcome outcome);

TeleportRecord run_ideal(const Ket& psi, RngStream& rng);
TeleportRecord run_ideal(const Ket& psi, std::uint64_t seed);

/// One record per outcome, in kAllOutcomes order, without sampling.
std::vector<TeleportRecord> enumerate_branches(const Ket& psi);

}  // namespace qtele

#endif  // QTELE_TELEPORT_HPP

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

#include "qtele/teleport.hpp"

namespace qtele {

namespace {

void require_single_qubit(const Ket& psi, const char* what) {
  if (psi.subsystems().size() != 1 || psi.dim() != 2) {
    throw DimensionError(std::string(what) + ": expected a single-qubit ket, got dimension " +
                         std::to_string(psi.dim()));
  }
}

// Position of each outcome in bell_basis() order (Phi+, Phi-, Psi+, Psi-).
std::size_t bell_basis_index(BellOutcome outcome) {
  switch (outcome) {
    case BellOutcome::PhiPlus:
      return 0;
    case BellOutcome::PhiMinus:
      return 1;
    case BellOutcome::PsiPlus:
      return 2;
    case BellOutcome::PsiMinus:
      return 3;
  }
  throw DomainError("unknown Bell outcome");
}

BellOutcome outcome_from_basis_index(std::size_t index) {
  for (auto o : kAllOutcomes)
    if (bell_basis_index(o) == index) return o;
  throw DomainError("Bell basis index out of range");
}

}  // namespace

std::uint8_t to_bits(BellOutcome outcome) { return static_cast<std::uint8_t>(outcome); }

BellOutcome outcome_from_bits(std::uint8_t bits) {
  if (bits > 3) throw DomainError("Bell message must fit in two bits");
  return static_cast<BellOutcome>(bits);
}

std::string_view to_string(BellOutcome outcome) {
  switch (outcome) {
    case BellOutcome::PsiMinus:
      return "PsiMinus";
    case BellOutcome::PsiPlus:
      return "PsiPlus";
    case BellOutcome::PhiMinus:
      return "PhiMinus";
    case BellOutcome::PhiPlus:
      return "PhiPlus";
  }
  return "?";
}

CVector bell_vector(BellOutcome outcome) {
  return bell_states()[bell_basis_index(outcome)].amplitudes;
}

Ket listed_conditional_state(ComplexScalar a, ComplexScalar b, BellOutcome outcome) {
  CVector v(2);
  switch (outcome) {
    case BellOutcome::PsiMinus:
      v << -a, -b;
      break;
    case BellOutcome::PsiPlus:
      v << -a, b;
      break;
    case BellOutcome::PhiMinus:
      v << b, a;
      break;
    case BellOutcome::PhiPlus:
      v << -b, a;
      break;
  }
  return Ket::qubit(std::move(v), "q3");
}

const CorrectionMap& CorrectionMap::standard() {
  static const CorrectionMap map(
      {GateName::I, GateName::Z, GateName::X, GateName::ZX});
  return map;
}

std::optional<CorrectionMap> CorrectionMap::derive(ComplexScalar a, ComplexScalar b) {
  const Ket psi = ket_from_amplitudes(a, b);
  std::array<GateName, 4> table{};
  for (auto outcome : kAllOutcomes) {
    const Ket listed = listed_conditional_state(a, b, outcome);
    int matches = 0;
    for (auto name : kAllGates) {
      const Ket out = apply_gate(listed, make_gate(name), 0);
      if (std::abs(overlap_magnitude(psi, out) - 1.0) <= kTolerance) {
        table[static_cast<std::size_t>(outcome)] = name;
        ++matches;
      }
    }
    if (matches != 1) return std::nullopt;
  }
  return CorrectionMap(table);
}

Gate correction_for(BellOutcome outcome) {
  return make_gate(CorrectionMap::standard()[outcome]);
}

Ket prepare_joint(const Ket& psi) {
  require_single_qubit(psi, "prepare_joint");
  const Real h = 1.0 / std::sqrt(2.0);
  CVector singlet(4);
  singlet << 0.0, h, -h, 0.0;
  const Ket particle1(psi.amplitudes(), {{"q1", 2}});
  const Ket pair(std::move(singlet), {{"q2", 2}, {"q3", 2}});
  return tensor(particle1, pair);
}

Ket conditional_bob_state(const Ket& joint, BellOutcome outcome) {
  if (joint.dim() != 8 || joint.subsystems().size() != 3) {
    throw DimensionError("conditional_bob_state: expected a 3-qubit joint state");
  }
  const CVector bell = bell_vector(outcome);
  CVector bob = CVector::Zero(2);
  for (Eigen::Index m = 0; m < 4; ++m)
    for (Eigen::Index j = 0; j < 2; ++j)
      bob(j) += std::conj(bell(m)) * joint[m * 2 + j];
  return Ket::qubit(std::move(bob), joint.subsystems()[2].label);
}

AliceResult alice_measure(const Ket& joint, RngStream& rng) {
  if (joint.dim() != 8 || joint.subsystems().size() != 3) {
    throw DimensionError("alice_measure: expected a 3-qubit joint state");
  }
  const auto projectors = bell_basis();
  const Eigen::Index targets[] = {0, 1};
  auto measured = born_measure(joint, projectors, targets, rng);
  const BellOutcome outcome = outcome_from_basis_index(measured.outcome);
  return {outcome, conditional_bob_state(measured.post_state, outcome),
          measured.probability};
}

namespace {

TeleportRecord finish(const Ket& psi, BellOutcome outcome, Ket bob, Real probability) {
  // Bob consults only the two classical bits.
  const BellOutcome received = outcome_from_bits(to_bits(outcome));
  Ket corrected = apply_gate(bob, correction_for(received), 0);
  const Ket target(psi.amplitudes(), corrected.subsystems());
  const Real f = fidelity(target, to_density(corrected));
  return {psi, outcome, std::move(bob), std::move(corrected), f, probability};
}

}  // namespace

TeleportRecord run_ideal(const Ket& psi, RngStream& rng) {
  require_single_qubit(psi, "run_ideal");
  const Ket joint = prepare_joint(psi);
  auto alice = alice_measure(joint, rng);
  return finish(psi, alice.outcome, std::move(alice.bob_state), alice.probability);
}

TeleportRecord run_ideal(const Ket& psi, std::uint64_t seed) {
  RngStream rng(seed);
  return run_ideal(psi, rng);
}

std::vector<TeleportRecord> enumerate_branches(const Ket& psi) {
  require_single_qubit(psi, "enumerate_branches");
  const Ket joint = prepare_joint(psi);
  const auto projectors = bell_basis();
  const Eigen::Index targets[] = {0, 1};
  const auto probs = born_probabilities(joint, projectors, targets);

  std::vector<TeleportRecord> out;
  out.reserve(4);
  for (auto outcome : kAllOutcomes) {
    out.push_back(finish(psi, outcome, conditional_bob_state(joint, outcome),
                         probs[bell_basis_index(outcome)]));
  }
  return out;
}

}  // namespace qtele

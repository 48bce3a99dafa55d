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

#ifndef QTELE_ENVMODEL_HPP
#define QTELE_ENVMODEL_HPP

// Environment coupling of Bob's correction.
//
// Physically realizing the correction entangles particle 3 with the
// apparatus that performs it:
//
//   |E0> (x) (a|0> + b|1>)  ->  c0 a |E0>|0> + c1 b |E1>|1>
//
// Only the overlap gamma = <E1|E0> survives the trace over the environment,
// so the environment is modelled as a qubit. The joint vector is stored
// environment-first (environment is the slow index).
//
// Two versions of the reduced state are provided. reduced_state is the
// partial trace of the renormalized joint state and is always a valid
// density matrix. reduced_state_paper_literal evaluates the historical
// closed form, which carries a factor 2 on the coherences and an extra
// |gamma|^2 weight on the populations; it is unit-trace only when
// |gamma| = 1 and |c0| = |c1| = 1/sqrt2, and is kept for comparison.

#include "qtele/teleport.hpp"

#include <optional>
#include <utility>

namespace qtele {

class EnvironmentModel {
 public:
  /// Throws DomainError if |gamma| > 1 (+1e-12), if c0 = c1 = 0, or on
  /// non-finite input.
  EnvironmentModel(ComplexScalar gamma, ComplexScalar c0, ComplexScalar c1);

  /// <E1|E0>. Its conjugate is <E0|E1>.
  ComplexScalar gamma() const { return gamma_; }
  ComplexScalar c0() const { return c0_; }
  ComplexScalar c1() const { return c1_; }

 private:
  ComplexScalar gamma_;
  ComplexScalar c0_;
  ComplexScalar c1_;
};

/// Two normalized environment kets with <e1|e0> = gamma:
/// e0 = (1, 0), e1 = (conj(gamma), sqrt(1 - |gamma|^2)).
std::pair<Ket, Ket> embed_environment(const EnvironmentModel& env);

/// c0 a e0(x)|0> + c1 b e1(x)|1>, renormalized. Subsystems (E, q3).
/// (a, b) must be normalized. Throws DomainError when the result vanishes.
Ket evolve(ComplexScalar a, ComplexScalar b, const EnvironmentModel& env);

/// Tr_E of |evolve><evolve|, written out in closed form:
///   [ |c0 a|^2                 c0 conj(c1) a conj(b) gamma ]
///   [ c1 conj(c0) b conj(a) conj(gamma)       |c1 b|^2     ]  / (|c0 a|^2 + |c1 b|^2)
DensityMatrix reduced_state(ComplexScalar a, ComplexScalar b,
                            const EnvironmentModel& env);

/// The historical closed form, unnormalized:
///   [ |c0 a|^2 (1 + |gamma|^2)                 2 c0 conj(c1) a conj(b) gamma ]
///   [ 2 c1 conj(c0) b conj(a) conj(gamma)      |c1 b|^2 (1 + |gamma|^2)      ]
CMatrix reduced_state_paper_literal(ComplexScalar a, ComplexScalar b,
                                    const EnvironmentModel& env);

/// diag(|c0 a|^2, |c1 b|^2), the orthogonal-environment closed form.
CMatrix dephased_limit(ComplexScalar a, ComplexScalar b, ComplexScalar c0,
                       ComplexScalar c1);

/// Entrywise (Frobenius) distance between two 2x2 matrices.
Real deviation(const CMatrix& rho3, const DensityMatrix& rho1);

/// Square root of the four-term expansion of
/// deviation(reduced_state_paper_literal(a, b, env), |psi><psi|),
/// evaluated term by term.
Real deviation_closed_form_paper(ComplexScalar a, ComplexScalar b,
                                 const EnvironmentModel& env);

/// <psi|reduced_state|psi> with psi = a|0> + b|1>.
Real replica_fidelity(ComplexScalar a, ComplexScalar b, const EnvironmentModel& env);

struct DeviationReport {
  DensityMatrix rho3;
  Real delta;
  Real fidelity;
  Real purity;
  /// Teleportation branch that produced the replica; empty for a direct
  /// evaluation on (a, b).
  std::optional<BellOutcome> branch;
};

/// Canonical reduced state, delta, fidelity and purity at one point.
DeviationReport evaluate(ComplexScalar a, ComplexScalar b, const EnvironmentModel& env);

/// Ideal teleportation followed by an environment-coupled correction: the
/// corrected amplitudes of the sampled branch are fed to reduced_state and
/// compared against psi.
DeviationReport noisy_teleport(const Ket& psi, const EnvironmentModel& env,
                               std::uint64_t seed);

}  // namespace qtele

#endif  // QTELE_ENVMODEL_HPP

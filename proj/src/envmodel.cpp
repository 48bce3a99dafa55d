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

#include "qtele/envmodel.hpp"

namespace qtele {

namespace {

bool finite(ComplexScalar z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_amplitudes(ComplexScalar a, ComplexScalar b, const char* what) {
  if (!finite(a) || !finite(b)) {
    throw DomainError(std::string(what) + ": non-finite amplitude");
  }
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kHermitianTolerance) {
    throw DomainError(std::string(what) + ": amplitudes must satisfy |a|^2+|b|^2 = 1");
  }
}

CMatrix pure_density(ComplexScalar a, ComplexScalar b) {
  CMatrix rho(2, 2);
  rho << std::norm(a), a * std::conj(b), b * std::conj(a), std::norm(b);
  return rho;
}

}  // namespace

EnvironmentModel::EnvironmentModel(ComplexScalar gamma, ComplexScalar c0,
                                   ComplexScalar c1)
    : gamma_(gamma), c0_(c0), c1_(c1) {
  if (!finite(gamma) || !finite(c0) || !finite(c1)) {
    throw DomainError("EnvironmentModel: non-finite parameter");
  }
  if (std::abs(gamma) > 1.0 + kTolerance) {
    throw DomainError("EnvironmentModel: |gamma| exceeds 1");
  }
  if (c0 == ComplexScalar(0.0) && c1 == ComplexScalar(0.0)) {
    throw DomainError("EnvironmentModel: c0 and c1 are both zero");
  }
}

std::pair<Ket, Ket> embed_environment(const EnvironmentModel& env) {
  const ComplexScalar g = env.gamma();
  const Real tail = std::sqrt(std::max(0.0, 1.0 - std::norm(g)));
  CVector e0(2);
  CVector e1(2);
  e0 << 1.0, 0.0;
  e1 << std::conj(g), tail;
  // Absorb the up-to-1e-12 slack allowed on |gamma| so e1 stays a unit vector.
  return {Ket::normalized(std::move(e0), {{"E", 2}}),
          Ket::normalized(std::move(e1), {{"E", 2}})};
}

Ket evolve(ComplexScalar a, ComplexScalar b, const EnvironmentModel& env) {
  require_amplitudes(a, b, "evolve");
  const auto [e0, e1] = embed_environment(env);
  CVector zero(2), one(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  CVector joint = (env.c0() * a) * tensor_product(e0.amplitudes(), zero) +
                  (env.c1() * b) * tensor_product(e1.amplitudes(), one);
  if (joint.norm() < kTolerance) {
    throw DomainError("evolve: degenerate model, coupled state vanishes");
  }
  return Ket::normalized(std::move(joint), {{"E", 2}, {"q3", 2}});
}

DensityMatrix reduced_state(ComplexScalar a, ComplexScalar b,
                            const EnvironmentModel& env) {
  require_amplitudes(a, b, "reduced_state");
  const ComplexScalar u = env.c0() * a;
  const ComplexScalar v = env.c1() * b;
  const Real weight = std::norm(u) + std::norm(v);
  if (std::sqrt(weight) < kTolerance) {
    throw DomainError("reduced_state: degenerate model, coupled state vanishes");
  }
  CMatrix rho(2, 2);
  rho << std::norm(u), u * std::conj(v) * env.gamma(),
      v * std::conj(u) * std::conj(env.gamma()), std::norm(v);
  return DensityMatrix(rho / weight);
}

CMatrix reduced_state_paper_literal(ComplexScalar a, ComplexScalar b,
                                    const EnvironmentModel& env) {
  const ComplexScalar c0 = env.c0();
  const ComplexScalar c1 = env.c1();
  const ComplexScalar e1e0 = env.gamma();             // <E1|E0>
  const ComplexScalar e0e1 = std::conj(env.gamma());  // <E0|E1>
  CMatrix rho(2, 2);
  rho(0, 0) = std::norm(c0 * a) + std::norm(c0 * a) * std::norm(e1e0);
  rho(0, 1) = 2.0 * c0 * std::conj(c1) * a * std::conj(b) * e1e0;
  rho(1, 0) = 2.0 * c1 * std::conj(c0) * b * std::conj(a) * e0e1;
  rho(1, 1) = std::norm(c1 * b) + std::norm(c1 * b) * std::norm(e0e1);
  return rho;
}

CMatrix dephased_limit(ComplexScalar a, ComplexScalar b, ComplexScalar c0,
                       ComplexScalar c1) {
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = std::norm(c0 * a);
  rho(1, 1) = std::norm(c1 * b);
  return rho;
}

Real deviation(const CMatrix& rho3, const DensityMatrix& rho1) {
  if (rho3.rows() != 2 || rho3.cols() != 2 || rho1.dim() != 2) {
    throw DimensionError("deviation: both operands must be 2x2");
  }
  return frobenius_distance(rho3, rho1.matrix());
}

Real deviation_closed_form_paper(ComplexScalar a, ComplexScalar b,
                                 const EnvironmentModel& env) {
  const ComplexScalar c0 = env.c0();
  const ComplexScalar c1 = env.c1();
  const ComplexScalar e1e0 = env.gamma();
  const ComplexScalar e0e1 = std::conj(env.gamma());
  const Real pop0 = std::norm(c0 * a) + std::norm(c0 * a) * std::norm(e0e1) - std::norm(a);
  const ComplexScalar coh01 =
      2.0 * c0 * std::conj(c1) * a * std::conj(b) * e1e0 - a * std::conj(b);
  const ComplexScalar coh10 =
      2.0 * c1 * std::conj(c0) * b * std::conj(a) * e0e1 - b * std::conj(a);
  const Real pop1 = std::norm(c1 * b) + std::norm(c1 * b) * std::norm(e1e0) - std::norm(b);
  return std::sqrt(pop0 * pop0 + std::norm(coh01) + std::norm(coh10) + pop1 * pop1);
}

Real replica_fidelity(ComplexScalar a, ComplexScalar b, const EnvironmentModel& env) {
  return fidelity(ket_from_amplitudes(a, b), reduced_state(a, b, env));
}

DeviationReport evaluate(ComplexScalar a, ComplexScalar b, const EnvironmentModel& env) {
  DensityMatrix rho3 = reduced_state(a, b, env);
  const DensityMatrix rho1(pure_density(a, b));
  const Real delta = deviation(rho3.matrix(), rho1);
  const Real f = fidelity(ket_from_amplitudes(a, b), rho3);
  const Real p = rho3.purity();
  return {std::move(rho3), delta, f, p, std::nullopt};
}

DeviationReport noisy_teleport(const Ket& psi, const EnvironmentModel& env,
                               std::uint64_t seed) {
  const TeleportRecord ideal = run_ideal(psi, seed);
  const ComplexScalar a = ideal.corrected_state[0];
  const ComplexScalar b = ideal.corrected_state[1];
  DensityMatrix rho3 = reduced_state(a, b, env);
  const Real delta = deviation(rho3.matrix(), to_density(psi));
  const Real f = fidelity(psi, rho3);
  const Real p = rho3.purity();
  return {std::move(rho3), delta, f, p, ideal.outcome};
}

}  // namespace qtele

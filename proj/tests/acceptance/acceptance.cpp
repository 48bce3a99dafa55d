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

// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line with
// its measured worst-case error and runtime; the exit status is nonzero if
// any criterion fails.

#include "qtele/cli.hpp"
#include "../test_util.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace qtele;
using namespace qtele::testing;

namespace {

constexpr Real kTol = 1e-12;
const Real kHalfRoot = 1.0 / std::sqrt(2.0);

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome ideal_protocol_exactness() {
  Engine rng(1001);
  Real worst_fid = 0.0, worst_prob = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Ket psi(random_unit_vector(rng, 2), {{"q", 2}});
    for (const auto& r : enumerate_branches(psi)) {
      worst_fid = std::max(worst_fid, 1.0 - r.fidelity);
      worst_prob = std::max(worst_prob, std::abs(r.probability - 0.25));
    }
  }
  return {worst_fid <= kTol && worst_prob <= kTol,
          fmt("max(1-F)=%.3g", worst_fid) + fmt(" max|p-1/4|=%.3g", worst_prob)};
}

Outcome conditional_state_table() {
  Engine gen(1002);
  Real worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    auto [a, b] = random_amplitudes(gen);
    const Ket joint = prepare_joint(ket_from_amplitudes(a, b));
    // Sampled measurement must land on the listed state...
    RngStream rng(static_cast<std::uint64_t>(i));
    const AliceResult sampled = alice_measure(joint, rng);
    worst = std::max(worst, std::abs(overlap_magnitude(
                                sampled.bob_state,
                                listed_conditional_state(a, b, sampled.outcome)) - 1.0));
    // ...and every branch must match its listed state.
    for (auto o : kAllOutcomes) {
      const Ket computed = conditional_bob_state(joint, o);
      worst = std::max(worst, std::abs(overlap_magnitude(
                                  computed, listed_conditional_state(a, b, o)) - 1.0));
    }
  }
  return {worst <= kTol, fmt("max| |<listed|computed>| - 1 |=%.3g", worst)};
}

Outcome vanishing_deviation() {
  Engine gen(1003);
  const EnvironmentModel env(1.0, kHalfRoot, kHalfRoot);
  Real worst_c = 0.0, worst_p = 0.0;
  for (int i = 0; i < 100; ++i) {
    auto [a, b] = random_amplitudes(gen);
    const DensityMatrix rho1 = to_density(ket_from_amplitudes(a, b));
    worst_c = std::max(worst_c, deviation(reduced_state(a, b, env).matrix(), rho1));
    worst_p = std::max(worst_p, deviation_closed_form_paper(a, b, env));
  }
  return {worst_c <= kTol && worst_p <= kTol,
          fmt("max delta_canonical=%.3g", worst_c) + fmt(" max delta_paper=%.3g", worst_p)};
}

Outcome dephased_limit_check() {
  Engine gen(1004);
  Real worst_off = 0.0, worst_diag = 0.0, worst_lit = 0.0;
  for (int i = 0; i < 100; ++i) {
    auto [a, b] = random_amplitudes(gen);
    const ComplexScalar c0 = random_complex(gen), c1 = random_complex(gen);
    const EnvironmentModel env(0.0, c0, c1);
    const CMatrix rho = reduced_state(a, b, env).matrix();
    worst_off = std::max({worst_off, std::abs(rho(0, 1)), std::abs(rho(1, 0))});
    const Real w0 = std::norm(c0 * a), w1 = std::norm(c1 * b);
    worst_diag = std::max({worst_diag, std::abs(rho(0, 0) - w0 / (w0 + w1)),
                           std::abs(rho(1, 1) - w1 / (w0 + w1))});
    // Literal form against the orthogonal-environment closed form, entrywise.
    const CMatrix lit = reduced_state_paper_literal(a, b, env);
    CMatrix eq3 = CMatrix::Zero(2, 2);
    eq3(0, 0) = w0;
    eq3(1, 1) = w1;
    worst_lit = std::max(worst_lit, max_abs_diff(lit, eq3));
    worst_lit = std::max(worst_lit, max_abs_diff(lit, dephased_limit(a, b, c0, c1)));
  }
  return {worst_off < kTol && worst_diag <= kTol && worst_lit == 0.0,
          fmt("max|offdiag|=%.3g", worst_off) + fmt(" max|diag err|=%.3g", worst_diag) +
              fmt(" literal-vs-dephased=%.3g", worst_lit)};
}

Outcome oracle_equivalence() {
  Engine gen(1005);
  Real worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    auto [a, b] = random_amplitudes(gen);
    const EnvironmentModel env = random_env(gen);
    const CMatrix fast = reduced_state(a, b, env).matrix();
    const CMatrix brute = partial_trace(to_density(evolve(a, b, env)).matrix(), 2, 2, Keep::B);
    worst = std::max(worst, max_abs_diff(fast, brute));
  }
  return {worst <= kTol, fmt("max entry diff=%.3g", worst)};
}

Outcome closed_form_consistency() {
  Engine gen(1006);
  Real worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    auto [a, b] = random_amplitudes(gen);
    const EnvironmentModel env = random_env(gen);
    const DensityMatrix rho1 = to_density(ket_from_amplitudes(a, b));
    worst = std::max(worst, std::abs(deviation_closed_form_paper(a, b, env) -
                                     deviation(reduced_state_paper_literal(a, b, env), rho1)));
  }
  return {worst <= kTol, fmt("max|closed - entrywise|=%.3g", worst)};
}

Outcome documented_inconsistency() {
  Engine gen(1007);
  const EnvironmentModel env(0.0, kHalfRoot, kHalfRoot);
  Real worst_lit = 0.0, worst_can = 0.0;
  for (int i = 0; i < 100; ++i) {
    auto [a, b] = random_amplitudes(gen);
    worst_lit = std::max(worst_lit, std::abs(trace(reduced_state_paper_literal(a, b, env)) - 0.5));
    worst_can = std::max(worst_can, std::abs(trace(reduced_state(a, b, env).matrix()) - 1.0));
  }
  std::ostringstream out, err;
  const int code = cli::run({"paper-check", "--gamma", "0", "--c0-re", "0.7071067811865476",
                             "--c1-re", "0.7071067811865476", "--a-re", "0.6", "--b-im", "0.8"},
                            out, err);
  const std::string report = out.str();
  const bool printed = code == 0 &&
                       report.find("trace_paper = (0.5, 0)") != std::string::npos &&
                       report.find("trace_canonical = (1, 0)") != std::string::npos;
  return {worst_lit <= kTol && worst_can <= kTol && printed,
          fmt("max|tr_paper-1/2|=%.3g", worst_lit) + fmt(" max|tr_canon-1|=%.3g", worst_can) +
              (printed ? " paper-check prints both" : " paper-check output missing")};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome monotone_sweep() {
  const auto dir = std::filesystem::temp_directory_path();
  const auto p1 = dir / "qtele_acceptance_sweep1.csv";
  const auto p2 = dir / "qtele_acceptance_sweep2.csv";
  std::ostringstream out, err;
  const int c1 = cli::run({"sweep", "--out", p1.string()}, out, err);
  const int c2 = cli::run({"sweep", "--out", p2.string()}, out, err);
  if (c1 != 0 || c2 != 0) return {false, "sweep exited with an error: " + err.str()};
  const std::string csv = read_file(p1);
  const bool identical = csv == read_file(p2);
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  const bool header_ok = line == cli::csv_header();
  std::vector<double> deltas;
  double ab = 0.0;
  while (std::getline(in, line)) {
    std::vector<double> fields;
    std::istringstream row(line);
    std::string f;
    while (std::getline(row, f, ',')) fields.push_back(std::stod(f));
    if (fields.size() != 14) return {false, "malformed row: " + line};
    ab = std::abs(ComplexScalar(fields[6], fields[7]) * ComplexScalar(fields[8], fields[9]));
    deltas.push_back(fields[10]);
  }
  if (deltas.size() != 101) return {false, "expected 101 rows, got " + std::to_string(deltas.size())};
  bool monotone = true;
  for (std::size_t i = 1; i < deltas.size(); ++i) monotone = monotone && deltas[i] <= deltas[i - 1];
  const Real first_err = std::abs(deltas.front() - std::sqrt(2.0) * ab);
  const Real last_err = std::abs(deltas.back());
  return {header_ok && identical && monotone && first_err <= kTol && last_err <= kTol,
          std::string(monotone ? "non-increasing" : "NOT monotone") +
              fmt(" |d(0)-sqrt2|ab||=%.3g", first_err) + fmt(" |d(1)|=%.3g", last_err) +
              (identical ? " byte-identical" : " reruns differ")};
}

Outcome sampling_sanity() {
  std::ostringstream out, err;
  const int code = cli::run({"teleport", "--shots", "40000", "--seed", "1"}, out, err);
  if (code != 0) return {false, "teleport exited with " + std::to_string(code)};
  std::istringstream in(out.str());
  std::string line;
  const Real sigma = std::sqrt(40000 * 0.25 * 0.75);
  Real worst = 0.0;
  int found = 0;
  while (std::getline(in, line)) {
    const auto pos = line.find(" count ");
    if (line.rfind("outcome ", 0) != 0 || pos == std::string::npos) continue;
    const long long count = std::stoll(line.substr(pos + 7));
    worst = std::max(worst, std::abs(static_cast<Real>(count) - 10000.0) / sigma);
    ++found;
  }
  return {found == 4 && worst <= 3.0, fmt("max |count-10000|/sigma=%.3f", worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "ideal-protocol exactness", 1.0, ideal_protocol_exactness},
      {2, "conditional-state table", 1.0, conditional_state_table},
      {3, "vanishing-deviation special case", 1.0, vanishing_deviation},
      {4, "dephased limit", 1.0, dephased_limit_check},
      {5, "oracle equivalence", 1.0, oracle_equivalence},
      {6, "closed-form vs entrywise deviation", 1.0, closed_form_consistency},
      {7, "documented trace inconsistency", 1.0, documented_inconsistency},
      {8, "monotone decoherence curve", 1.0, monotone_sweep},
      {9, "sampling sanity", 5.0, sampling_sanity},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %d %s: %s; %.3f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), o.detail.c_str(), secs, c.time_limit_s,
                in_time ? "" : " TOO SLOW");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

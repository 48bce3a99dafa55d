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

#ifndef QTELE_CLI_HPP
#define QTELE_CLI_HPP

#include "qtele/envmodel.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtele::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Error carrying the process exit code it should map to.
class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

struct SweepConfig {
  Real a_re = 0.70710678118654752;
  Real a_im = 0.0;
  Real b_re = 0.70710678118654752;
  Real b_im = 0.0;
  Real c0_re = 0.70710678118654752;
  Real c0_im = 0.0;
  Real c1_re = 0.70710678118654752;
  Real c1_im = 0.0;
  Real gamma_start = 0.0;
  Real gamma_end = 1.0;
  long long steps = 101;
  Real gamma_phase = 0.0;
  std::uint64_t seed = 0;
  std::string output_path;

  ComplexScalar a() const { return {a_re, a_im}; }
  ComplexScalar b() const { return {b_re, b_im}; }
  ComplexScalar c0() const { return {c0_re, c0_im}; }
  ComplexScalar c1() const { return {c1_re, c1_im}; }
};

/// Checks ranges and rescales (a, b) to unit norm. Throws CliError(2).
void validate_and_normalize(SweepConfig& config);

/// Parses `key = value` lines over the defaults. `#` starts a comment.
/// Unknown keys and malformed values throw CliError(2) naming the line;
/// an unreadable file throws CliError(3).
SweepConfig load_config(const std::string& path);
SweepConfig parse_config(std::istream& in, SweepConfig base = {});

struct CsvRow {
  Real gamma_re, gamma_im;
  Real c0_re, c0_im;
  Real c1_re, c1_im;
  Real a_re, a_im;
  Real b_re, b_im;
  Real delta_canonical;
  Real delta_paper;
  Real fidelity;
  Real purity;
};

/// Header line (no trailing newline) in CsvRow field order.
std::string csv_header();
/// One data line (no trailing newline), 17 significant digits per field.
std::string format_csv_row(const CsvRow& row);

/// The |gamma| grid, linearly spaced, at fixed phase. Expects a validated config.
std::vector<CsvRow> sweep_rows(const SweepConfig& config);

/// Full CSV document for a validated config.
std::string sweep_csv(const SweepConfig& config);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtele::cli

#endif  // QTELE_CLI_HPP

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

#include "qtele/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

namespace qtele::cli {

namespace {

std::string format_number(Real x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x + 0.0);  // + 0.0 folds -0
  return buf;
}

std::string format_complex(ComplexScalar z, int digits = 12) {
  return "(" + format_number(z.real(), digits) + ", " +
         format_number(z.imag(), digits) + ")";
}

void print_matrix(std::ostream& out, const std::string& name, const CMatrix& m) {
  out << name << ":\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << " " << format_complex(m(i, j));
    out << " ]\n";
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
bool parse_number(const std::string& text, T& value) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if constexpr (std::is_floating_point_v<T>) {
    if (*begin == '+') ++begin;
  }
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end;
}

using KeySetter = std::function<bool(SweepConfig&, const std::string&)>;

template <typename T>
KeySetter numeric_key(T SweepConfig::*field) {
  return [field](SweepConfig& c, const std::string& v) {
    return parse_number(v, c.*field);
  };
}

const std::map<std::string, KeySetter>& config_keys() {
  static const std::map<std::string, KeySetter> keys = {
      {"a_re", numeric_key(&SweepConfig::a_re)},
      {"a_im", numeric_key(&SweepConfig::a_im)},
      {"b_re", numeric_key(&SweepConfig::b_re)},
      {"b_im", numeric_key(&SweepConfig::b_im)},
      {"c0_re", numeric_key(&SweepConfig::c0_re)},
      {"c0_im", numeric_key(&SweepConfig::c0_im)},
      {"c1_re", numeric_key(&SweepConfig::c1_re)},
      {"c1_im", numeric_key(&SweepConfig::c1_im)},
      {"gamma_start", numeric_key(&SweepConfig::gamma_start)},
      {"gamma_end", numeric_key(&SweepConfig::gamma_end)},
      {"steps", numeric_key(&SweepConfig::steps)},
      {"gamma_phase", numeric_key(&SweepConfig::gamma_phase)},
      {"seed", numeric_key(&SweepConfig::seed)},
      {"output_path",
       [](SweepConfig& c, const std::string& v) {
         c.output_path = v;
         return true;
       }},
  };
  return keys;
}

void require_finite_field(Real x, const char* name) {
  if (!std::isfinite(x)) {
    throw CliError(kExitUsage, std::string(name) + " must be finite");
  }
}

// Normalizes (a, b) in place. Zero or non-finite amplitudes are usage errors.
void normalize_amplitudes(Real& a_re, Real& a_im, Real& b_re, Real& b_im) {
  for (Real x : {a_re, a_im, b_re, b_im}) require_finite_field(x, "amplitudes");
  const Real norm = std::sqrt(a_re * a_re + a_im * a_im + b_re * b_re + b_im * b_im);
  if (!(norm > kTolerance)) {
    throw CliError(kExitUsage, "amplitudes (a, b) must not both be zero");
  }
  a_re /= norm;
  a_im /= norm;
  b_re /= norm;
  b_im /= norm;
}

EnvironmentModel make_model(ComplexScalar gamma, ComplexScalar c0, ComplexScalar c1) {
  try {
    return EnvironmentModel(gamma, c0, c1);
  } catch (const DomainError& e) {
    throw CliError(kExitUsage, e.what());
  }
}

// ---------------------------------------------------------------------------
// Flag plumbing: options write into a scratch config; only the flags the user
// actually passed are copied over the defaults (or the config file).

struct Binding {
  CLI::Option* option;
  std::function<void(SweepConfig&, const SweepConfig&)> copy;
};

struct FlagSet {
  SweepConfig given;
  Real gamma = 1.0;
  long long shots = 1000;
  std::string config_path;
  std::vector<Binding> bindings;

  template <typename T>
  CLI::Option* bind(CLI::App* app, const std::string& names, T SweepConfig::*field,
                    const std::string& help) {
    auto* opt = app->add_option(names, given.*field, help);
    bindings.push_back({opt, [field](SweepConfig& dst, const SweepConfig& src) {
                          dst.*field = src.*field;
                        }});
    return opt;
  }

  void overlay(SweepConfig& dst) const {
    for (const auto& b : bindings)
      if (b.option->count() > 0) b.copy(dst, given);
  }
};

void add_psi_flags(CLI::App* app, FlagSet& f) {
  f.bind(app, "--a,--a-re", &SweepConfig::a_re, "Re(a), amplitude of |0>");
  f.bind(app, "--a-im", &SweepConfig::a_im, "Im(a)");
  f.bind(app, "--b,--b-re", &SweepConfig::b_re, "Re(b), amplitude of |1>");
  f.bind(app, "--b-im", &SweepConfig::b_im, "Im(b)");
}

void add_coupling_flags(CLI::App* app, FlagSet& f) {
  f.bind(app, "--c0-re", &SweepConfig::c0_re, "Re(c0)");
  f.bind(app, "--c0-im", &SweepConfig::c0_im, "Im(c0)");
  f.bind(app, "--c1-re", &SweepConfig::c1_re, "Re(c1)");
  f.bind(app, "--c1-im", &SweepConfig::c1_im, "Im(c1)");
}

void add_point_env_flags(CLI::App* app, FlagSet& f) {
  add_coupling_flags(app, f);
  app->add_option("--gamma", f.gamma, "overlap <E1|E0> magnitude (signed real)")
      ->capture_default_str();
  f.bind(app, "--gamma-phase", &SweepConfig::gamma_phase, "phase of gamma in radians");
}

struct Point {
  ComplexScalar a, b;
  EnvironmentModel env;
};

Point resolve_point(const FlagSet& f) {
  SweepConfig c;
  f.overlay(c);
  normalize_amplitudes(c.a_re, c.a_im, c.b_re, c.b_im);
  require_finite_field(f.gamma, "gamma");
  require_finite_field(c.gamma_phase, "gamma_phase");
  for (Real x : {c.c0_re, c.c0_im, c.c1_re, c.c1_im}) require_finite_field(x, "coupling");
  const ComplexScalar gamma = f.gamma * std::polar(1.0, c.gamma_phase);
  return {c.a(), c.b(), make_model(gamma, c.c0(), c.c1())};
}

DensityMatrix canonical_or_usage_error(const Point& p) {
  try {
    return reduced_state(p.a, p.b, p.env);
  } catch (const DomainError& e) {
    throw CliError(kExitUsage, e.what());
  }
}

// ---------------------------------------------------------------------------

int cmd_teleport(const FlagSet& f, std::ostream& out) {
  if (f.shots < 1) throw CliError(kExitUsage, "--shots must be at least 1");
  SweepConfig c;
  f.overlay(c);
  normalize_amplitudes(c.a_re, c.a_im, c.b_re, c.b_im);
  const Ket psi = ket_from_amplitudes(c.a(), c.b());

  RngStream rng(c.seed);
  std::array<long long, 4> counts{};
  Real fidelity_sum = 0.0;
  Real fidelity_min = 1.0;
  for (long long shot = 0; shot < f.shots; ++shot) {
    const TeleportRecord r = run_ideal(psi, rng);
    ++counts[static_cast<std::size_t>(r.outcome)];
    fidelity_sum += r.fidelity;
    fidelity_min = std::min(fidelity_min, r.fidelity);
  }

  out << "shots " << f.shots << " seed " << c.seed << "\n";
  for (auto o : kAllOutcomes) {
    const auto bits = to_bits(o);
    out << "outcome " << to_string(o) << " bits " << ((bits >> 1) & 1) << (bits & 1)
        << " correction " << to_string(CorrectionMap::standard()[o]) << " count "
        << counts[static_cast<std::size_t>(o)] << "\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", fidelity_sum / static_cast<Real>(f.shots));
  out << "mean fidelity " << buf << "\n";
  out << "min fidelity " << format_number(fidelity_min, 17) << "\n";
  return kExitOk;
}

int cmd_deviation(const FlagSet& f, std::ostream& out) {
  const Point p = resolve_point(f);
  const DensityMatrix canonical = canonical_or_usage_error(p);
  const DensityMatrix rho1 = to_density(ket_from_amplitudes(p.a, p.b));
  const CMatrix literal = reduced_state_paper_literal(p.a, p.b, p.env);

  out << "a = " << format_complex(p.a) << "\n";
  out << "b = " << format_complex(p.b) << "\n";
  out << "gamma = " << format_complex(p.env.gamma()) << "\n";
  out << "c0 = " << format_complex(p.env.c0()) << "\n";
  out << "c1 = " << format_complex(p.env.c1()) << "\n";
  out << "delta_canonical = " << format_number(deviation(canonical.matrix(), rho1), 12) << "\n";
  out << "delta_paper = "
      << format_number(deviation_closed_form_paper(p.a, p.b, p.env), 12) << "\n";
  out << "fidelity = " << format_number(fidelity(ket_from_amplitudes(p.a, p.b), canonical), 12)
      << "\n";
  out << "purity = " << format_number(canonical.purity(), 12) << "\n";
  print_matrix(out, "rho3_canonical", canonical.matrix());
  print_matrix(out, "rho3_paper", literal);
  return kExitOk;
}

int cmd_paper_check(const FlagSet& f, std::ostream& out) {
  const Point p = resolve_point(f);
  const DensityMatrix canonical = canonical_or_usage_error(p);
  const DensityMatrix rho1 = to_density(ket_from_amplitudes(p.a, p.b));
  const CMatrix literal = reduced_state_paper_literal(p.a, p.b, p.env);

  out << "a = " << format_complex(p.a) << "\n";
  out << "b = " << format_complex(p.b) << "\n";
  out << "gamma = " << format_complex(p.env.gamma()) << "\n";
  out << "c0 = " << format_complex(p.env.c0()) << "\n";
  out << "c1 = " << format_complex(p.env.c1()) << "\n";
  print_matrix(out, "rho3_canonical", canonical.matrix());
  print_matrix(out, "rho3_paper", literal);
  out << "trace_canonical = " << format_complex(trace(canonical.matrix())) << "\n";
  out << "trace_paper = " << format_complex(trace(literal)) << "\n";
  print_matrix(out, "difference (paper - canonical)", literal - canonical.matrix());
  out << "max_abs_difference = "
      << format_number((literal - canonical.matrix()).cwiseAbs().maxCoeff(), 12) << "\n";
  out << "delta_canonical = " << format_number(deviation(canonical.matrix(), rho1), 12) << "\n";
  out << "delta_paper = " << format_number(deviation(literal, rho1), 12) << "\n";
  out << "delta_paper_closed_form = "
      << format_number(deviation_closed_form_paper(p.a, p.b, p.env), 12) << "\n";
  return kExitOk;
}

int cmd_sweep(const FlagSet& f, std::ostream& out) {
  SweepConfig c = f.config_path.empty() ? SweepConfig{} : load_config(f.config_path);
  f.overlay(c);
  validate_and_normalize(c);
  std::string csv;
  try {
    csv = sweep_csv(c);
  } catch (const DomainError& e) {
    throw CliError(kExitUsage, e.what());
  }
  if (c.output_path.empty()) {
    out << csv;
    return kExitOk;
  }
  std::ofstream file(c.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw CliError(kExitIo, "cannot open '" + c.output_path + "' for writing");
  file << csv;
  file.flush();
  if (!file) throw CliError(kExitIo, "failed writing '" + c.output_path + "'");
  out << "wrote " << c.steps << " rows to " << c.output_path << "\n";
  return kExitOk;
}

}  // namespace

void validate_and_normalize(SweepConfig& c) {
  normalize_amplitudes(c.a_re, c.a_im, c.b_re, c.b_im);
  for (Real x : {c.c0_re, c.c0_im, c.c1_re, c.c1_im, c.gamma_phase})
    require_finite_field(x, "coupling and phase parameters");
  if (c.steps < 2) throw CliError(kExitUsage, "steps must be at least 2");
  for (Real g : {c.gamma_start, c.gamma_end}) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw CliError(kExitUsage, "gamma_start and gamma_end must lie in [0, 1]");
    }
  }
  if (c.c0() == ComplexScalar(0.0) && c.c1() == ComplexScalar(0.0)) {
    throw CliError(kExitUsage, "c0 and c1 must not both be zero");
  }
}

SweepConfig parse_config(std::istream& in, SweepConfig base) {
  const auto& keys = config_keys();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw CliError(kExitUsage, "expected 'key = value' (line " + std::to_string(line_no) + ")");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) {
      throw CliError(kExitUsage,
                     "unknown key '" + key + "' (line " + std::to_string(line_no) + ")");
    }
    if (!it->second(base, value)) {
      throw CliError(kExitUsage, "malformed value '" + value + "' for key '" + key +
                                     "' (line " + std::to_string(line_no) + ")");
    }
  }
  return base;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitIo, "cannot read config file '" + path + "'");
  return parse_config(in);
}

std::string csv_header() {
  return "gamma_re,gamma_im,c0_re,c0_im,c1_re,c1_im,a_re,a_im,b_re,b_im,"
         "delta_canonical,delta_paper,fidelity,purity";
}

std::string format_csv_row(const CsvRow& r) {
  const Real fields[] = {r.gamma_re, r.gamma_im, r.c0_re, r.c0_im, r.c1_re,
                         r.c1_im,    r.a_re,     r.a_im,  r.b_re,  r.b_im,
                         r.delta_canonical, r.delta_paper, r.fidelity, r.purity};
  std::string line;
  for (std::size_t i = 0; i < std::size(fields); ++i) {
    if (i > 0) line += ',';
    line += format_number(fields[i], 17);
  }
  return line;
}

std::vector<CsvRow> sweep_rows(const SweepConfig& c) {
  std::vector<CsvRow> rows;
  rows.reserve(static_cast<std::size_t>(c.steps));
  const ComplexScalar a = c.a();
  const ComplexScalar b = c.b();
  for (long long i = 0; i < c.steps; ++i) {
    const Real magnitude =
        (i == c.steps - 1)
            ? c.gamma_end
            : c.gamma_start + (c.gamma_end - c.gamma_start) * static_cast<Real>(i) /
                                  static_cast<Real>(c.steps - 1);
    const ComplexScalar gamma = std::polar(magnitude, c.gamma_phase);
    const EnvironmentModel env(gamma, c.c0(), c.c1());
    const DeviationReport report = evaluate(a, b, env);
    rows.push_back({gamma.real(), gamma.imag(), c.c0_re, c.c0_im, c.c1_re, c.c1_im,
                    c.a_re, c.a_im, c.b_re, c.b_im, report.delta,
                    deviation_closed_form_paper(a, b, env), report.fidelity,
                    report.purity});
  }
  return rows;
}

std::string sweep_csv(const SweepConfig& c) {
  std::string csv = csv_header() + "\n";
  for (const auto& row : sweep_rows(c)) csv += format_csv_row(row) + "\n";
  return csv;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Teleportation with an environment-coupled correction"};
  app.require_subcommand(1);

  FlagSet teleport_flags, deviation_flags, sweep_flags, check_flags;

  auto* teleport = app.add_subcommand("teleport", "ideal protocol shot statistics");
  add_psi_flags(teleport, teleport_flags);
  teleport->add_option("--shots", teleport_flags.shots, "number of runs")
      ->capture_default_str();
  teleport_flags.bind(teleport, "--seed", &SweepConfig::seed, "stream seed");

  auto* dev = app.add_subcommand("deviation", "reduced state and deviation at one point");
  add_psi_flags(dev, deviation_flags);
  add_point_env_flags(dev, deviation_flags);

  auto* sweep = app.add_subcommand("sweep", "deviation versus |gamma| as CSV");
  add_psi_flags(sweep, sweep_flags);
  add_coupling_flags(sweep, sweep_flags);
  sweep_flags.bind(sweep, "--gamma-start", &SweepConfig::gamma_start, "first |gamma|");
  sweep_flags.bind(sweep, "--gamma-end", &SweepConfig::gamma_end, "last |gamma|");
  sweep_flags.bind(sweep, "--steps", &SweepConfig::steps, "grid points (>= 2)");
  sweep_flags.bind(sweep, "--gamma-phase", &SweepConfig::gamma_phase, "fixed phase of gamma");
  sweep_flags.bind(sweep, "--seed", &SweepConfig::seed, "recorded seed");
  sweep_flags.bind(sweep, "--out", &SweepConfig::output_path, "CSV path (stdout if unset)");
  sweep->add_option("--config", sweep_flags.config_path, "key = value config file");

  auto* check = app.add_subcommand("paper-check",
                                   "compare the partial-trace and literal reduced states");
  add_psi_flags(check, check_flags);
  add_point_env_flags(check, check_flags);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (teleport->parsed()) return cmd_teleport(teleport_flags, out);
    if (dev->parsed()) return cmd_deviation(deviation_flags, out);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, out);
    if (check->parsed()) return cmd_paper_check(check_flags, out);
  } catch (const CliError& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qtele::cli

// Copyright 2026 The Dephasim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "csv.hpp"
#include "dephasim/approx.hpp"
#include "dephasim/average.hpp"
#include "dephasim/dynamics.hpp"
#include "dephasim/errors.hpp"
#include "dephasim/kernels.hpp"
#include "dephasim/rng.hpp"
#include "dephasim/scanner.hpp"
#include "dephasim/version.hpp"

namespace dephasim::cli {
namespace {

class Manifest {
 public:
  void add(std::string key, std::string value) {
    entries_.emplace_back(std::move(key), std::move(value));
  }
  void add(std::string key, double value) { add(std::move(key), format_double(value)); }

  void write(std::ostream& os) const {
    for (const auto& [k, v] : entries_) os << k << '=' << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string iso8601_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

unsigned resolve_threads(int flag) {
  if (flag > 0) return static_cast<unsigned>(flag);
  if (const char* env = std::getenv("DEPHASIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    throw ParameterError(std::string("DEPHASIM_THREADS must be a positive integer, got '") +
                         env + "'");
  }
  return 1;
}

std::optional<KernelKind> parse_kernel(const std::string& name, bool allow_none) {
  if (name == "ou" || name == "ornstein-uhlenbeck") return KernelKind::OrnsteinUhlenbeck;
  if (name == "g" || name == "gaussian") return KernelKind::Gaussian;
  if (name == "pl" || name == "power-law") return KernelKind::PowerLaw;
  if (allow_none && name == "none") return std::nullopt;
  throw ParameterError("unknown kernel '" + name + "' (expected ou, gaussian, pl" +
                       (allow_none ? ", none)" : ")"));
}

// Kernel in rescaled units (γ = 1), so beta(kernel, τ, R_Γ) is all that is needed.
NoiseKernel rescaled_kernel(KernelKind kind, double r_gamma, double alpha) {
  return NoiseKernel::make(kind, 1.0, r_gamma, alpha);
}

struct Common {
  std::string out_path;
  int threads = 0;
  std::uint64_t seed = 1;
};

void add_output(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out_path, "Write CSV to this file (plus a .manifest.txt sidecar)");
}

void add_threads(CLI::App* sub, Common& c) {
  sub->add_option("--threads", c.threads,
                  "Worker threads (default: DEPHASIM_THREADS or 1)")
      ->check(CLI::NonNegativeNumber);
}

struct TimeFlags {
  std::vector<double> tau;
  std::vector<double> tau_range;
  std::vector<double> time;
};

void add_time_flags(CLI::App* sub, TimeFlags& t) {
  sub->add_option("--tau", t.tau, "Rescaled times γt (comma separated)")->delimiter(',');
  sub->add_option("--tau-range", t.tau_range, "start,stop,count (inclusive, linear)")
      ->delimiter(',');
  sub->add_option("--time", t.time, "Physical times (requires --gamma)")->delimiter(',');
}

std::vector<double> resolve_taus(const TimeFlags& t, std::optional<double> gamma,
                                 Manifest& manifest) {
  std::vector<double> taus = t.tau;
  if (!t.tau_range.empty()) {
    if (t.tau_range.size() != 3) throw ParameterError("--tau-range expects start,stop,count");
    const double start = t.tau_range[0];
    const double stop = t.tau_range[1];
    const double count = t.tau_range[2];
    if (!(count >= 1.0) || count != std::floor(count)) {
      throw ParameterError("--tau-range count must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(count);
    for (std::size_t i = 0; i < n; ++i) {
      taus.push_back(n == 1 ? start
                            : start + (stop - start) * static_cast<double>(i) /
                                          static_cast<double>(n - 1));
    }
  }
  if (!t.time.empty()) {
    if (!gamma) throw ParameterError("--time requires --gamma for the conversion tau = gamma*t");
    for (const double v : t.time) taus.push_back(*gamma * v);
    manifest.add("conversion.tau", "gamma*time with gamma=" + format_double(*gamma));
  }
  if (taus.empty()) throw ParameterError("no times given (use --tau, --tau-range or --time)");
  for (const double v : taus) ScaledTime{v};
  return taus;
}

// --r-gamma xor (--Gamma with --gamma).
double resolve_ratio(std::optional<double> ratio, std::optional<double> physical,
                     std::optional<double> gamma, const char* name, Manifest& manifest) {
  if (physical) {
    if (ratio) throw ParameterError(std::string("give either --r-") + name + " or the physical rate, not both");
    if (!gamma) throw ParameterError("physical rates require --gamma");
    if (!(*gamma > 0.0)) throw ParameterError("--gamma must be > 0");
    const double r = *physical / *gamma;
    manifest.add(std::string("conversion.r_") + name,
                 format_double(*physical) + "/" + format_double(*gamma) + "=" + format_double(r));
    return r;
  }
  if (!ratio) throw ParameterError(std::string("missing --r-") + name);
  return *ratio;
}

QuadratureSettings quadrature_from(std::size_t initial, std::size_t max_nodes, double tol) {
  QuadratureSettings q;
  q.initial_nodes = initial;
  q.max_nodes = max_nodes;
  q.rel_tol = tol;
  q.validate();
  return q;
}

struct QuadFlags {
  std::size_t initial = QuadratureSettings{}.initial_nodes;
  std::size_t max_nodes = QuadratureSettings{}.max_nodes;
  double tol = QuadratureSettings{}.rel_tol;
};

void add_quad_flags(CLI::App* sub, QuadFlags& q) {
  sub->add_option("--nodes-initial", q.initial, "Initial Gauss-Hermite nodes per axis");
  sub->add_option("--nodes-max", q.max_nodes, "Maximum Gauss-Hermite nodes per axis");
  sub->add_option("--quad-tol", q.tol, "Quadrature convergence tolerance");
}

// ---------------------------------------------------------------- beta

struct BetaFlags {
  Common common;
  std::string kernel;
  double alpha = 4.0;
  std::optional<double> r_gamma;
  std::optional<double> gamma;
  std::optional<double> damping;
  TimeFlags times;
};

void cmd_beta(const BetaFlags& f, std::ostream& out, Manifest& manifest) {
  const KernelKind kind = *parse_kernel(f.kernel, false);
  const double r_gamma = resolve_ratio(f.r_gamma, f.damping, f.gamma, "gamma", manifest);
  const NoiseKernel k = rescaled_kernel(kind, r_gamma, f.alpha);
  const std::vector<double> taus = resolve_taus(f.times, f.gamma, manifest);

  CsvWriter csv(out);
  csv.header({"tau", "beta_closed", "beta_numeric", "abs_diff"});
  for (const double tau : taus) {
    const double closed = beta(k, ScaledTime(tau), r_gamma);
    const double numeric = beta_numeric(k, ScaledTime(tau), r_gamma);
    csv << tau << closed << numeric << std::abs(closed - numeric);
    csv.end_row();
  }
}

// ---------------------------------------------------------------- coeffs / mc

struct CoeffFlags {
  Common common;
  double beta_x = 0.0;
  double beta_z = 0.0;
  double omega0_t = 0.0;
  std::string method = "quad";
  std::size_t samples = 1000000;
  QuadFlags quad;
};

void add_coeff_flags(CLI::App* sub, CoeffFlags& f, bool with_method) {
  sub->add_option("--beta-x", f.beta_x, "Transverse phase variance")->required();
  sub->add_option("--beta-z", f.beta_z, "Longitudinal phase variance");
  sub->add_option("--omega0-t", f.omega0_t, "Deterministic phase omega0*t")->required();
  if (with_method) {
    sub->add_option("--method", f.method, "quad | mc | approx")
        ->check(CLI::IsMember({"quad", "mc", "approx"}));
  }
  sub->add_option("--samples", f.samples, "Monte Carlo samples");
  sub->add_option("--seed", f.common.seed, "Monte Carlo seed");
  add_threads(sub, f.common);
  add_quad_flags(sub, f.quad);
  add_output(sub, f.common);
}

void cmd_coeffs(const CoeffFlags& f, std::ostream& out) {
  const AverageProblem p{f.beta_x, f.beta_z, f.omega0_t};
  p.validate();
  CsvWriter csv(out);
  auto write_common = [&](const MapCoefficients& c) {
    const Complex k = offdiag_coefficient(c);
    csv << c.a_i << c.a_x << c.a_z << c.a_iz << k.real() << k.imag();
  };
  if (f.method == "mc") {
    const MonteCarloEstimate e = coefficients_montecarlo(p, f.samples, f.common.seed,
                                                         resolve_threads(f.common.threads));
    csv.header({"a_i", "a_x", "a_z", "a_iz", "offdiag_re", "offdiag_im", "se_a_i", "se_a_x",
                "se_a_z", "se_a_iz"});
    write_common(e.mean);
    const MapCoefficients& se = e.standard_error;
    csv << se.a_i << se.a_x << se.a_z << se.a_iz;
  } else {
    const MapCoefficients c =
        f.method == "approx"
            ? approx_coefficients_general(f.beta_x, f.beta_z, f.omega0_t)
            : coefficients_quadrature(p, quadrature_from(f.quad.initial, f.quad.max_nodes,
                                                         f.quad.tol));
    csv.header({"a_i", "a_x", "a_z", "a_iz", "offdiag_re", "offdiag_im"});
    write_common(c);
  }
  csv.end_row();
}

// ---------------------------------------------------------------- evolve

struct EvolveFlags {
  Common common;
  std::string state = "plus";
  double rho11 = 1.0;
  double rho12_re = 0.0;
  double rho12_im = 0.0;
  std::string kernel_x = "ou";
  std::string kernel_z = "none";
  double alpha_x = 4.0;
  double alpha_z = 4.0;
  std::optional<double> r_omega;
  std::optional<double> r_gamma_x;
  std::optional<double> r_gamma_z;
  std::optional<double> omega0;
  std::optional<double> gamma;
  std::optional<double> damping_x;
  std::optional<double> damping_z;
  TimeFlags times;
  std::string method = "quad";
  std::size_t samples = 1000000;
  double threshold = 1e-3;
  QuadFlags quad;
};

DensityMatrix initial_state(const EvolveFlags& f) {
  if (f.state == "plus") return DensityMatrix::plus();
  if (f.state == "excited") return DensityMatrix::excited();
  if (f.state == "ground") return DensityMatrix::ground();
  if (f.state == "explicit") {
    return DensityMatrix::from_entries(f.rho11, Complex(f.rho12_re, f.rho12_im), 1.0 - f.rho11);
  }
  throw ParameterError("unknown state preset '" + f.state + "'");
}

void cmd_evolve(const EvolveFlags& f, std::ostream& out, Manifest& manifest) {
  const DensityMatrix rho0 = initial_state(f);
  const auto kind_x = parse_kernel(f.kernel_x, true);
  const auto kind_z = parse_kernel(f.kernel_z, true);

  const double r_omega = resolve_ratio(f.r_omega, f.omega0, f.gamma, "omega", manifest);
  if (!(r_omega >= 0.0)) throw ParameterError("r_omega must be >= 0");
  std::optional<NoiseKernel> kx, kz;
  double rgx = 0.0, rgz = 0.0;
  if (kind_x) {
    rgx = resolve_ratio(f.r_gamma_x, f.damping_x, f.gamma, "gamma_x", manifest);
    kx = rescaled_kernel(*kind_x, rgx, f.alpha_x);
  }
  if (kind_z) {
    rgz = resolve_ratio(f.r_gamma_z, f.damping_z, f.gamma, "gamma_z", manifest);
    kz = rescaled_kernel(*kind_z, rgz, f.alpha_z);
  }
  const std::vector<double> taus = resolve_taus(f.times, f.gamma, manifest);
  const QuadratureSettings q = quadrature_from(f.quad.initial, f.quad.max_nodes, f.quad.tol);
  const unsigned threads = resolve_threads(f.common.threads);

  CsvWriter csv(out);
  csv.header({"tau", "rho11", "re_rho12", "im_rho12", "a_x", "dephasing_flag"});
  for (std::size_t row = 0; row < taus.size(); ++row) {
    const double tau = taus[row];
    const AverageProblem p{kx ? beta(*kx, ScaledTime(tau), rgx) : 0.0,
                           kz ? beta(*kz, ScaledTime(tau), rgz) : 0.0, r_omega * tau};
    MapCoefficients c;
    if (tau == 0.0) {
      c = MapCoefficients{};  // no elapsed time: identity map
    } else if (f.method == "mc") {
      c = coefficients_montecarlo(p, f.samples, derive_seed(f.common.seed, row), threads).mean;
    } else if (f.method == "approx") {
      c = approx_coefficients_general(p.beta_x, p.beta_z, p.omega0_t);
    } else {
      c = coefficients_quadrature(p, q);
    }
    const DensityMatrix rho = evolve_state(rho0, c);
    csv << tau << rho.rho11().real() << rho.rho12().real() << rho.rho12().imag() << c.a_x
        << is_effective_dephasing(c, f.threshold);
    csv.end_row();
  }
}

// ---------------------------------------------------------------- scan

struct ScanFlags {
  Common common;
  std::string kernel = "ou";
  double alpha = 4.0;
  std::size_t omega_count = 40;
  double omega_min = 1e-2;
  double omega_max = 1e2;
  std::size_t gamma_count = 40;
  double gamma_min = 1e-2;
  double gamma_max = 1e2;
  double tau_max = 50.0;
  double tau_density = 20.0;
  double threshold = 1e-3;
  bool no_refine = false;
  QuadFlags quad;
};

void cmd_scan(const ScanFlags& f, std::ostream& out, std::ostream& err) {
  ScanConfig cfg;
  cfg.kernel = rescaled_kernel(*parse_kernel(f.kernel, false), 1.0, f.alpha);
  cfg.r_omega = {f.omega_count, f.omega_min, f.omega_max};
  cfg.r_gamma = {f.gamma_count, f.gamma_min, f.gamma_max};
  cfg.tau_max = f.tau_max;
  cfg.tau_density = f.tau_density;
  cfg.threshold = f.threshold;
  cfg.refine = !f.no_refine;
  cfg.quadrature = quadrature_from(f.quad.initial, f.quad.max_nodes, f.quad.tol);
  cfg.threads = resolve_threads(f.common.threads);

  const RegionGrid grid = scan_plane(cfg);
  CsvWriter csv(out);
  csv.header({"r_omega", "r_gamma", "max_ax", "argmax_tau", "boundary_flag", "below_threshold"});
  std::size_t failures = 0;
  for (const RegionPoint& pt : grid.points) {
    csv << pt.r_omega << pt.r_gamma << pt.maximum.max_ax << pt.maximum.argmax_tau
        << pt.maximum.boundary << pt.below_threshold;
    csv.end_row();
    if (pt.failed()) {
      ++failures;
      err << "scan point (" << format_double(pt.r_omega) << ", " << format_double(pt.r_gamma)
          << ") failed: " << pt.error << '\n';
    }
  }
  if (failures > 0) err << failures << " scan point(s) failed and are reported as nan\n";
}

// ---------------------------------------------------------------- compare

struct CompareFlags {
  Common common;
  std::vector<double> beta_x;
  std::vector<double> beta_z{0.0};
  std::vector<double> omega0_t;
  std::size_t samples = 1000000;
  QuadFlags quad;
};

void cmd_compare(const CompareFlags& f, std::ostream& out) {
  const QuadratureSettings q = quadrature_from(f.quad.initial, f.quad.max_nodes, f.quad.tol);
  const unsigned threads = resolve_threads(f.common.threads);
  CsvWriter csv(out);
  csv.header({"beta_x", "beta_z", "omega0_t", "a_x_quad", "a_x_mc", "a_x_approx",
              "quad_mc_sigma_distance", "quad_approx_abs_err"});
  std::uint64_t row = 0;
  for (const double bx : f.beta_x) {
    for (const double bz : f.beta_z) {
      for (const double t : f.omega0_t) {
        const AverageProblem p{bx, bz, t};
        const double quad = coefficients_quadrature(p, q).a_x;
        const MonteCarloEstimate mc =
            coefficients_montecarlo(p, f.samples, derive_seed(f.common.seed, row++), threads);
        const double approx = t > 0.0 ? approx_ax_general(bx, bz, t) : std::nan("");
        const double diff = std::abs(quad - mc.mean.a_x);
        const double se = mc.standard_error.a_x;
        const double sigma = se > 0.0 ? diff / se
                             : diff == 0.0 ? 0.0
                                           : std::numeric_limits<double>::infinity();
        csv << bx << bz << t << quad << mc.mean.a_x << approx << sigma
            << std::abs(quad - approx);
        csv.end_row();
      }
    }
  }
}

void emit(const std::string& csv, const Common& c, const Manifest& manifest, std::ostream& out) {
  if (c.out_path.empty()) {
    out << csv;
    return;
  }
  const std::filesystem::path path(c.out_path);
  {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ParameterError("cannot open output file " + c.out_path);
    file << csv;
  }
  std::filesystem::path sidecar = path;
  sidecar.replace_extension(".manifest.txt");
  std::ofstream file(sidecar, std::ios::binary);
  if (!file) throw ParameterError("cannot open manifest file " + sidecar.string());
  manifest.write(file);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dephasim: qubit dephasing under quasi-static Gaussian fields", "dephasim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  BetaFlags beta_f;
  auto* beta_cmd = app.add_subcommand("beta", "Closed-form and numerical phase variance");
  beta_cmd->add_option("--kernel", beta_f.kernel, "ou | gaussian | pl")->required();
  beta_cmd->add_option("--alpha", beta_f.alpha, "Power-law exponent (> 2)");
  beta_cmd->add_option("--r-gamma", beta_f.r_gamma, "R_Gamma = Gamma/gamma");
  beta_cmd->add_option("--gamma", beta_f.gamma, "Physical memory rate gamma");
  beta_cmd->add_option("--Gamma", beta_f.damping, "Physical damping Gamma");
  add_time_flags(beta_cmd, beta_f.times);
  add_output(beta_cmd, beta_f.common);

  CoeffFlags coeff_f;
  auto* coeffs_cmd = app.add_subcommand("coeffs", "Map coefficients A_I, A_x, A_z, A_Iz");
  add_coeff_flags(coeffs_cmd, coeff_f, true);

  CoeffFlags mc_f;
  mc_f.method = "mc";
  auto* mc_cmd = app.add_subcommand("mc", "Alias of coeffs --method mc");
  add_coeff_flags(mc_cmd, mc_f, false);

  EvolveFlags ev;
  auto* evolve_cmd = app.add_subcommand("evolve", "Averaged qubit state over time");
  evolve_cmd->add_option("--state", ev.state, "plus | excited | ground | explicit")
      ->check(CLI::IsMember({"plus", "excited", "ground", "explicit"}));
  evolve_cmd->add_option("--rho11", ev.rho11, "Explicit state: population of |1>");
  evolve_cmd->add_option("--rho12-re", ev.rho12_re, "Explicit state: Re rho12");
  evolve_cmd->add_option("--rho12-im", ev.rho12_im, "Explicit state: Im rho12");
  evolve_cmd->add_option("--kernel-x", ev.kernel_x, "Transverse kernel: ou | gaussian | pl | none");
  evolve_cmd->add_option("--kernel-z", ev.kernel_z, "Longitudinal kernel: ou | gaussian | pl | none");
  evolve_cmd->add_option("--alpha-x", ev.alpha_x, "Transverse power-law exponent");
  evolve_cmd->add_option("--alpha-z", ev.alpha_z, "Longitudinal power-law exponent");
  evolve_cmd->add_option("--r-omega", ev.r_omega, "R_omega = omega0/gamma");
  evolve_cmd->add_option("--r-gamma-x,--r-gamma", ev.r_gamma_x, "Transverse R_Gamma");
  evolve_cmd->add_option("--r-gamma-z", ev.r_gamma_z, "Longitudinal R_Gamma");
  evolve_cmd->add_option("--omega0", ev.omega0, "Physical qubit frequency");
  evolve_cmd->add_option("--gamma", ev.gamma, "Physical memory rate (shared by both axes)");
  evolve_cmd->add_option("--Gamma", ev.damping_x, "Physical transverse damping");
  evolve_cmd->add_option("--Gamma-z", ev.damping_z, "Physical longitudinal damping");
  add_time_flags(evolve_cmd, ev.times);
  evolve_cmd->add_option("--method", ev.method, "quad | mc | approx")
      ->check(CLI::IsMember({"quad", "mc", "approx"}));
  evolve_cmd->add_option("--samples", ev.samples, "Monte Carlo samples per time");
  evolve_cmd->add_option("--seed", ev.common.seed, "Monte Carlo seed");
  evolve_cmd->add_option("--threshold", ev.threshold, "Effective-dephasing threshold on |A_x|");
  add_threads(evolve_cmd, ev.common);
  add_quad_flags(evolve_cmd, ev.quad);
  add_output(evolve_cmd, ev.common);

  ScanFlags sc;
  auto* scan_cmd = app.add_subcommand("scan", "Map max_tau |A_x| over the (R_omega, R_Gamma) plane");
  scan_cmd->add_option("--kernel", sc.kernel, "ou | gaussian | pl");
  scan_cmd->add_option("--alpha", sc.alpha, "Power-law exponent (> 2)");
  scan_cmd->add_option("--r-omega-count", sc.omega_count);
  scan_cmd->add_option("--r-omega-min", sc.omega_min);
  scan_cmd->add_option("--r-omega-max", sc.omega_max);
  scan_cmd->add_option("--r-gamma-count", sc.gamma_count);
  scan_cmd->add_option("--r-gamma-min", sc.gamma_min);
  scan_cmd->add_option("--r-gamma-max", sc.gamma_max);
  scan_cmd->add_option("--tau-max", sc.tau_max, "Maximization horizon in rescaled time");
  scan_cmd->add_option("--tau-density", sc.tau_density, "Coarse samples per unit tau");
  scan_cmd->add_option("--threshold", sc.threshold);
  scan_cmd->add_flag("--no-refine", sc.no_refine, "Skip golden-section refinement");
  add_threads(scan_cmd, sc.common);
  add_quad_flags(scan_cmd, sc.quad);
  add_output(scan_cmd, sc.common);

  CompareFlags cmp;
  auto* compare_cmd = app.add_subcommand("compare", "Quadrature vs Monte Carlo vs expansion for A_x");
  compare_cmd->add_option("--beta-x", cmp.beta_x)->delimiter(',')->required();
  compare_cmd->add_option("--beta-z", cmp.beta_z)->delimiter(',');
  compare_cmd->add_option("--omega0-t", cmp.omega0_t)->delimiter(',')->required();
  compare_cmd->add_option("--samples", cmp.samples);
  compare_cmd->add_option("--seed", cmp.common.seed);
  add_threads(compare_cmd, cmp.common);
  add_quad_flags(compare_cmd, cmp.quad);
  add_output(compare_cmd, cmp.common);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  CLI::App* sub = app.get_subcommands().front();
  Manifest manifest;
  manifest.add("subcommand", sub->get_name());
  manifest.add("version", std::string(kVersion));
  manifest.add("timestamp", iso8601_now());

  try {
    std::ostringstream csv;
    const Common* common = nullptr;
    if (sub == beta_cmd) {
      cmd_beta(beta_f, csv, manifest);
      common = &beta_f.common;
    } else if (sub == coeffs_cmd || sub == mc_cmd) {
      const CoeffFlags& f = sub == mc_cmd ? mc_f : coeff_f;
      cmd_coeffs(f, csv);
      common = &f.common;
    } else if (sub == evolve_cmd) {
      cmd_evolve(ev, csv, manifest);
      common = &ev.common;
    } else if (sub == scan_cmd) {
      cmd_scan(sc, csv, err);
      common = &sc.common;
    } else {
      cmd_compare(cmp, csv);
      common = &cmp.common;
    }
    manifest.add("seed", std::to_string(common->seed));
    manifest.add("threads", std::to_string(resolve_threads(common->threads)));
    std::istringstream params(sub->config_to_str(true, false));
    for (std::string line; std::getline(params, line);) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      manifest.add("param." + line.substr(0, eq), line.substr(eq + 1));
    }
    emit(csv.str(), *common, manifest, out);
    return kSuccess;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const ConvergenceError& e) {
    err << "numeric non-convergence: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const ParameterError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kUsageError;
  } catch (const StateError& e) {
    err << "invalid state: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace dephasim::cli

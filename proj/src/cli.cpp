#include "abgup/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "abgup/classical.hpp"
#include "abgup/core.hpp"
#include "abgup/io.hpp"
#include "abgup/radial.hpp"
#include "abgup/scattering.hpp"
#include "abgup/selftest.hpp"

namespace abgup::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIntegerMargin = 1e-4;
constexpr double kOracleTol = 1e-5;

struct ScanConfig {
  std::string mode;
  PhysicalParams params;
  double alpha = 2.5;
  double phi = kPi / 4;
  double alpha_min = 0.01, alpha_max = 1.99;
  double phi_min = 0.05, phi_max = 6.23;
  double z_min = 0.5, z_max = 10.0;
  int steps = 0;
  int m = 0;
  long n = 1;
  int m_max = 2000;
  double margin = 1e-3;
  bool oracle = false;
  std::string out_path;
  std::string format = "csv";
  unsigned threads = 1;

  std::string field = "ab";
  double field_strength = 1.0;
  double flux = 0.5;
  std::vector<double> x0{2.0, 0.0, 0.0};
  std::vector<double> p0;
  double dt = 1e-3;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  return v;
}

// Fills slots [0, n) with fn(i) on `threads` workers. Each slot is written by
// exactly one worker so the result does not depend on the worker count.
template <typename T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += threads) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

double integer_distance(double a) { return std::abs(a - std::round(a)); }

struct ScanPoint {
  io::ScanEntry entry;
  double oracle_error = 0.0;
  bool oracle_checked = false;
};

ScanPoint scan_point(double alpha, double phi, const ScanConfig& cfg) {
  ScanPoint sp;
  io::ScanEntry& e = sp.entry;
  e.alpha_prime = alpha;
  e.phi = phi;
  e.beta = cfg.params.beta;
  if (scattering::forward_distance(phi) < cfg.margin) {
    e.skip_reason = "within margin of phi = pi";
    return sp;
  }
  if (cfg.params.beta != 0.0 && integer_distance(alpha) < kIntegerMargin) {
    e.skip_reason = "within 1e-4 of integer alpha_prime";
    return sp;
  }
  e.dsigma = scattering::dsigma(phi, alpha, cfg.params);
  if (cfg.oracle && cfg.params.beta != 0.0 && scattering::forward_distance(phi + kPi) >= 1e-3) {
    scattering::AbelOptions opts;
    opts.m_max = cfg.m_max;
    opts.rel_tol = kOracleTol;
    sp.oracle_checked = true;
    try {
      const auto series = scattering::f1_series(phi, alpha, cfg.params, opts);
      sp.oracle_error = std::abs(scattering::f1_amp(phi, alpha, cfg.params) - series) / std::abs(series);
    } catch (const AccuracyError&) {
      // the series itself did not settle; counts as a disagreement
      sp.oracle_error = std::numeric_limits<double>::infinity();
    }
  }
  return sp;
}

void emit(const ScanConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& csv,
          const std::function<nlohmann::json()>& json) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open " + cfg.out_path + " for writing");
    os = &file;
  }
  if (cfg.format == "json")
    *os << json().dump(2) << '\n';
  else
    csv(*os);
  os->flush();
  if (!*os) throw std::ios_base::failure("write failed for " + (cfg.out_path.empty() ? "output" : cfg.out_path));
}

int run_scan(const ScanConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.steps >= 2, "--steps must be at least 2 for scans");
  std::vector<double> grid;
  if (cfg.mode == "alpha-scan") {
    require(std::isfinite(cfg.alpha_min) && std::isfinite(cfg.alpha_max) && cfg.alpha_min < cfg.alpha_max,
            "--alpha-min must be below --alpha-max");
    require(std::isfinite(cfg.phi), "--phi must be finite");
    grid = linspace(cfg.alpha_min, cfg.alpha_max, cfg.steps);
  } else {
    require(std::isfinite(cfg.phi_min) && std::isfinite(cfg.phi_max) && cfg.phi_min < cfg.phi_max,
            "--phi-min must be below --phi-max");
    require(std::isfinite(cfg.alpha), "--alpha must be finite");
    grid = linspace(cfg.phi_min, cfg.phi_max, cfg.steps);
  }
  const bool alpha_mode = cfg.mode == "alpha-scan";
  const auto points = parallel_map<ScanPoint>(grid.size(), cfg.threads, [&](std::size_t i) {
    return alpha_mode ? scan_point(grid[i], cfg.phi, cfg) : scan_point(cfg.alpha, grid[i], cfg);
  });

  std::vector<io::ScanEntry> entries;
  entries.reserve(points.size());
  double worst = 0.0;
  for (const auto& p : points) {
    entries.push_back(p.entry);
    if (p.oracle_checked) worst = std::max(worst, p.oracle_error);
  }
  emit(
      cfg, out, [&](std::ostream& os) { io::write_scan_csv(os, entries); },
      [&] { return io::scan_to_json(entries); });
  if (cfg.oracle && worst >= kOracleTol) {
    err << "oracle disagreement: max relative |f1_amp - f1_series| = " << io::format_double(worst) << '\n';
    return kAccuracy;
  }
  return kOk;
}

int run_radial(const ScanConfig& cfg, std::ostream& out) {
  require(cfg.steps >= 2, "--steps must be at least 2");
  require(std::isfinite(cfg.z_min) && std::isfinite(cfg.z_max) && cfg.z_min > 0.0 && cfg.z_min < cfg.z_max,
          "need 0 < --z-min < --z-max");
  const radial::RadialMode mode = radial::make_mode(cfg.m, cfg.alpha, 0.0, cfg.params);
  const auto grid = linspace(cfg.z_min, cfg.z_max, cfg.steps);
  const auto rows = parallel_map<io::RadialRow>(grid.size(), cfg.threads, [&](std::size_t i) {
    return io::RadialRow{grid[i], cfg.m, cfg.alpha, mode.f0(grid[i]), mode.f1(grid[i])};
  });
  emit(
      cfg, out, [&](std::ostream& os) { io::write_radial_csv(os, rows); }, [&] { return io::radial_to_json(rows); });
  return kOk;
}

int run_width(const ScanConfig& cfg, std::ostream& out) {
  require(std::isfinite(cfg.phi), "--phi must be finite");
  const auto lim = scattering::dsigma_integer_limits(cfg.n, cfg.phi, cfg.params);
  const std::vector<io::WidthRow> rows{
      {cfg.n, cfg.phi, cfg.params.beta, lim.upper, lim.lower, scattering::width(cfg.n, cfg.phi, cfg.params)}};
  emit(
      cfg, out, [&](std::ostream& os) { io::write_width_csv(os, rows); }, [&] { return io::width_to_json(rows); });
  return kOk;
}

int run_trajectory(const ScanConfig& cfg, std::ostream& out, std::ostream& err) {
  using V3 = classical::Vec3<double>;
  require(cfg.steps >= 1, "--steps must be at least 1");
  require(cfg.dt > 0.0 && std::isfinite(cfg.dt), "--dt must be positive");
  require(cfg.x0.size() == 3, "--x0 takes three comma-separated numbers");
  require(cfg.p0.empty() || cfg.p0.size() == 3, "--p0 takes three comma-separated numbers");

  classical::FieldSpec<double> f;
  if (cfg.field == "ab")
    f = classical::aharonov_bohm<double>(cfg.flux, cfg.params.charge);
  else if (cfg.field == "magnetic")
    f = classical::uniform_magnetic<double>(cfg.field_strength);
  else if (cfg.field == "electric")
    f = classical::uniform_electric<double>(V3(cfg.field_strength, 0.0, 0.0));
  else
    f = classical::free_field<double>();

  classical::ClassicalState<double> st;
  st.x = V3(cfg.x0[0], cfg.x0[1], cfg.x0[2]);
  st.p = cfg.p0.empty() ? V3(0.1, 0.8, 0.0) : V3(cfg.p0[0], cfg.p0[1], cfg.p0[2]);
  const auto traj = classical::integrate(st, f, cfg.params, cfg.dt, cfg.steps);
  emit(
      cfg, out, [&](std::ostream& os) { classical::write_trajectory_csv(os, traj); },
      [&] {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < traj.size(); ++i) {
          nlohmann::json r{{"t", traj.t[i]}, {"energy", traj.energy[i]}};
          r["x"] = std::vector<double>(traj.x[i].data(), traj.x[i].data() + traj.dimension);
          r["v"] = std::vector<double>(traj.v[i].data(), traj.v[i].data() + traj.dimension);
          rows.push_back(r);
        }
        return nlohmann::json{{"dimension", traj.dimension}, {"dt", traj.dt}, {"aborted", traj.aborted},
                              {"abort_reason", traj.abort_reason}, {"samples", rows}};
      });
  if (traj.aborted) err << "trajectory stopped early: " << traj.abort_reason << '\n';
  return kOk;
}

int run_selftest(const ScanConfig& cfg, std::ostream& out) {
  const auto results = selftest::run_all();
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  emit(
      cfg, out,
      [&](std::ostream& os) {
        for (const auto& r : results)
          os << (r.passed ? "PASS " : "FAIL ") << r.module << '.' << r.name << " value=" << io::format_double(r.value)
             << " threshold=" << io::format_double(r.threshold) << "  " << r.detail << '\n';
        os << results.size() - static_cast<std::size_t>(failed) << '/' << results.size() << " checks passed\n";
      },
      [&] {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results)
          arr.push_back({{"module", r.module},
                         {"name", r.name},
                         {"passed", r.passed},
                         {"value", r.value},
                         {"threshold", r.threshold},
                         {"detail", r.detail}});
        return nlohmann::json{{"checks", arr}, {"failed", failed}};
      });
  return failed == 0 ? kOk : kAccuracy;
}

void add_common(CLI::App* sub, ScanConfig& cfg) {
  sub->add_option("--hbar", cfg.params.hbar, "reduced Planck constant")->capture_default_str();
  sub->add_option("--k", cfg.params.k, "wave number")->capture_default_str();
  sub->add_option("--beta", cfg.params.beta, "GUP parameter")->capture_default_str();
  sub->add_option("--mass", cfg.params.mass, "particle mass")->capture_default_str();
  sub->add_option("--charge", cfg.params.charge, "particle charge")->capture_default_str();
  sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
  sub->add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ScanConfig cfg;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());

  CLI::App app{"Aharonov-Bohm scattering with a minimal-length correction", "abgup"};
  app.require_subcommand(1);

  auto* alpha = app.add_subcommand("alpha-scan", "dsigma over an alpha' grid at fixed phi");
  add_common(alpha, cfg);
  alpha->add_option("--phi", cfg.phi)->capture_default_str();
  alpha->add_option("--alpha-min", cfg.alpha_min)->capture_default_str();
  alpha->add_option("--alpha-max", cfg.alpha_max)->capture_default_str();
  alpha->add_option("--steps", cfg.steps)->default_val(400);

  auto* phi = app.add_subcommand("phi-scan", "dsigma over a phi grid at fixed alpha'");
  add_common(phi, cfg);
  phi->add_option("--alpha", cfg.alpha)->capture_default_str();
  phi->add_option("--phi-min", cfg.phi_min)->capture_default_str();
  phi->add_option("--phi-max", cfg.phi_max)->capture_default_str();
  phi->add_option("--steps", cfg.steps)->default_val(500);

  for (auto* sub : {alpha, phi}) {
    sub->add_option("--margin", cfg.margin, "skip points this close to phi = pi")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_flag("--oracle", cfg.oracle, "cross-check f1 against the partial-wave series (exit 2 on disagreement)");
    sub->add_option("--m-max", cfg.m_max, "partial waves per Abel rung for --oracle")
        ->check(CLI::Range(10, 10000000))
        ->capture_default_str();
  }

  auto* rad = app.add_subcommand("radial", "f0 and f1 of one partial wave on a z grid");
  add_common(rad, cfg);
  rad->add_option("--m", cfg.m)->capture_default_str();
  rad->add_option("--alpha", cfg.alpha)->capture_default_str();
  rad->add_option("--z-min", cfg.z_min)->capture_default_str();
  rad->add_option("--z-max", cfg.z_max)->capture_default_str();
  rad->add_option("--steps", cfg.steps)->default_val(200);

  auto* traj = app.add_subcommand("trajectory", "classical orbit with the O(beta) force");
  add_common(traj, cfg);
  traj->add_option("--field", cfg.field)
      ->check(CLI::IsMember({"ab", "magnetic", "electric", "free"}))
      ->capture_default_str();
  traj->add_option("--field-strength", cfg.field_strength, "B or E for uniform fields")->capture_default_str();
  traj->add_option("--flux", cfg.flux, "flux of the ab field")->capture_default_str();
  traj->add_option("--x0", cfg.x0, "initial position x,y,z")->delimiter(',');
  traj->add_option("--p0", cfg.p0, "initial canonical momentum x,y,z")->delimiter(',');
  traj->add_option("--dt", cfg.dt)->capture_default_str();
  traj->add_option("--steps", cfg.steps)->default_val(1000);

  auto* wid = app.add_subcommand("width", "jump of dsigma across integer alpha'");
  add_common(wid, cfg);
  wid->add_option("--n", cfg.n)->capture_default_str();
  wid->add_option("--phi", cfg.phi)->capture_default_str();

  auto* self = app.add_subcommand("selftest", "run the invariant suite");
  add_common(self, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'abgup --help' for usage\n";
    return kValidation;
  }

  cfg.mode = app.get_subcommands().front()->get_name();
  try {
    cfg.params.validate();
    if (cfg.mode == "alpha-scan" || cfg.mode == "phi-scan") return run_scan(cfg, out, err);
    if (cfg.mode == "radial") return run_radial(cfg, out);
    if (cfg.mode == "trajectory") return run_trajectory(cfg, out, err);
    if (cfg.mode == "width") return run_width(cfg, out);
    return run_selftest(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kValidation;
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kValidation;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << '\n';
    return kValidation;
  } catch (const AccuracyError& e) {
    err << "accuracy failure: " << e.what() << '\n';
    return kAccuracy;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kAccuracy;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace abgup::cli

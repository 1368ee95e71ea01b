#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "efv/curve.hpp"
#include "efv/errors.hpp"
#include "efv/finite_field.hpp"
#include "efv/report.hpp"
#include "efv/riemann.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct RunConfig {
  std::string command;
  json curve;                     // {p, r, modulus?, a1..a6}
  std::optional<std::int64_t> a;  // direct (a, q) alternative
  std::optional<std::uint64_t> q;
  std::vector<efv::BumpTerm> alpha;
  int random_bumps = 0;
  double epsilon = 1e-6;
  int n_max = 4;
  std::string zeros_file;
  std::optional<int> k_zeros;
  std::vector<int> k_list;
  std::vector<std::string> identities{"eq2", "cor34", "thm41"};
  std::uint64_t seed = 1;
  std::string out;
  double riemann_budget = 1e-2;

  json echo;  // effective config as parsed, embedded in reports
};

std::vector<std::int64_t> parse_coeff(const json& j, const char* name) {
  std::vector<std::int64_t> out;
  if (!j.contains(name)) return out;
  const json& v = j.at(name);
  if (v.is_number_integer()) {
    out.push_back(v.get<std::int64_t>());
  } else if (v.is_array()) {
    for (const auto& c : v) out.push_back(c.get<std::int64_t>());
  } else {
    efv::fail(efv::errc::invalid_config, std::string(name) + " must be an integer or a list");
  }
  return out;
}

efv::CurveData build_curve(const json& curve) {
  if (!curve.contains("p") || !curve.contains("r"))
    efv::fail(efv::errc::invalid_config, "curve needs p and r");
  const auto p = curve.at("p").get<std::uint64_t>();
  const auto r = curve.at("r").get<unsigned>();
  efv::Field field = [&] {
    if (curve.contains("modulus")) {
      std::vector<std::uint32_t> m;
      for (const auto& c : curve.at("modulus")) m.push_back(c.get<std::uint32_t>());
      return efv::Field::make(p, r, std::move(m));
    }
    return efv::Field::make(p, r);
  }();
  auto coeff = [&](const char* name) { return field.element(parse_coeff(curve, name)); };
  return efv::curve_make(field, coeff("a1"), coeff("a2"), coeff("a3"), coeff("a4"),
                         coeff("a6"));
}

/// Trace/size pair for the configured curve, from either {a,q} or a curve record.
std::pair<std::int64_t, std::uint64_t> resolve_trace(const RunConfig& cfg) {
  if (cfg.a && cfg.q) return {*cfg.a, *cfg.q};
  if (!cfg.curve.is_null()) {
    efv::CurveData curve = build_curve(cfg.curve);
    return {efv::frobenius_trace(curve), curve.field.q()};
  }
  efv::fail(efv::errc::invalid_config, "provide either {a, q} or a curve record");
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

std::vector<efv::TestFunction> resolve_alphas(const RunConfig& cfg, double log_q) {
  std::vector<efv::TestFunction> alphas;
  if (!cfg.alpha.empty()) alphas.emplace_back(cfg.alpha);
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < cfg.random_bumps; ++i) {
    // support strictly inside (-3 log q, 3 log q)
    double h = uniform(rng, 0.15, 0.9 * log_q);
    double c = uniform(rng, -2.9 * log_q + h, 2.9 * log_q - h);
    double amp = uniform(rng, 0.25, 2.0) * (rng() % 2 == 0 ? 1.0 : -1.0);
    alphas.emplace_back(std::vector<efv::BumpTerm>{{amp, c, h}});
  }
  if (alphas.empty())
    efv::fail(efv::errc::invalid_config, "no test function: give alpha or random_bumps");
  return alphas;
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) efv::fail(efv::errc::invalid_config, "cannot open output file " + cfg.out);
  out << text;
}

int run_verify_ff(const RunConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) efv::fail(efv::errc::invalid_config, "epsilon must be positive");
  auto [a, q] = resolve_trace(cfg);
  auto alphas = resolve_alphas(cfg, std::log(static_cast<double>(q)));
  json out;
  out["version"] = efv::kArtifactVersion;
  out["config"] = cfg.echo;
  json reports = json::array();
  bool all_pass = true;
  for (const auto& alpha : alphas) {
    for (const auto& name : cfg.identities) {
      efv::Identity id;
      if (name == "eq2") id = efv::Identity::eq2;
      else if (name == "cor34") id = efv::Identity::cor34;
      else if (name == "thm41") id = efv::Identity::thm41;
      else efv::fail(efv::errc::invalid_config, "unknown identity " + name);
      efv::VerificationReport rep = efv::verify_identity(id, a, q, alpha, cfg.epsilon);
      all_pass = all_pass && rep.pass;
      reports.push_back(efv::report_to_json(rep));
    }
  }
  out["reports"] = reports;
  out["pass"] = all_pass;
  write_output(cfg, out.dump(2));
  return all_pass ? kExitPass : kExitFail;
}

int run_verify_riemann(const RunConfig& cfg) {
  if (cfg.zeros_file.empty())
    efv::fail(efv::errc::invalid_config, "verify-riemann needs --zeros-file");
  if (cfg.alpha.empty())
    efv::fail(efv::errc::invalid_config, "verify-riemann needs an explicit alpha");
  efv::ZeroTable zeros = efv::load_zeros(cfg.zeros_file);
  efv::TestFunction alpha(cfg.alpha);
  const int k = cfg.k_zeros.value_or(static_cast<int>(zeros.size()));
  efv::SideValue spectral = efv::spectral_side_riemann(alpha, zeros, k);
  efv::SideValue geometric = efv::geometric_side_riemann(alpha);
  const double residual = std::abs(spectral.value.real() - geometric.value.real());
  const bool pass = residual <= cfg.riemann_budget;
  json out;
  out["version"] = efv::kArtifactVersion;
  out["config"] = cfg.echo;
  out["zeros_used"] = k;
  out["zeros_available"] = zeros.size();
  out["first_zero_in_range"] = zeros.first_zero_in_range;
  out["spectral"] = {{"re", spectral.value.real()},
                     {"tail_indicator", spectral.truncation_error},
                     {"quad_err", spectral.quadrature_error}};
  out["geometric"] = {{"re", geometric.value.real()}};
  out["residual"] = residual;
  out["budget"] = cfg.riemann_budget;
  out["pass"] = pass;
  write_output(cfg, out.dump(2));
  return pass ? kExitPass : kExitFail;
}

int run_orbits(const RunConfig& cfg) {
  if (cfg.n_max < 1) efv::fail(efv::errc::invalid_config, "n_max must be >= 1");
  auto [a, q] = resolve_trace(cfg);
  efv::ClosedPointTable table = efv::closed_points(a, q, cfg.n_max);
  efv::OrbitSpectrum spectrum = efv::orbit_spectrum(table);
  std::ostringstream csv;
  csv << "n,length,multiplicity\n";
  csv.precision(17);
  for (const auto& e : spectrum.entries)
    csv << e.n << ',' << e.length << ',' << e.multiplicity.get_str() << '\n';
  write_output(cfg, csv.str());
  return kExitPass;
}

int run_residual_curve(const RunConfig& cfg) {
  if (cfg.zeros_file.empty())
    efv::fail(efv::errc::invalid_config, "residual-curve needs --zeros-file");
  if (cfg.k_list.empty())
    efv::fail(efv::errc::invalid_config, "residual-curve needs k_list");
  if (cfg.alpha.empty())
    efv::fail(efv::errc::invalid_config, "residual-curve needs an explicit alpha");
  efv::ZeroTable zeros = efv::load_zeros(cfg.zeros_file);
  efv::TestFunction alpha(cfg.alpha);
  auto curve = efv::residual_curve(alpha, zeros, cfg.k_list);
  std::ostringstream csv;
  csv << "K,residual\n";
  csv.precision(17);
  for (auto [k, res] : curve) csv << k << ',' << res << '\n';
  write_output(cfg, csv.str());
  return kExitPass;
}

int run_oracle_check(const RunConfig& cfg) {
  // closed_points (Moebius inversion of the trace recurrence) against the
  // Frobenius-orbit enumeration, over the standard sweep
  int checked = 0, mismatched = 0;
  json cases = json::array();
  auto compare = [&](const efv::CurveData& curve, int n_max) {
    const std::int64_t a = efv::frobenius_trace(curve);
    efv::ClosedPointTable lhs = efv::closed_points(a, curve.field.q(), n_max);
    efv::ClosedPointTable rhs = efv::closed_points_oracle(curve, n_max);
    ++checked;
    if (lhs.a_d != rhs.a_d) {
      ++mismatched;
      cases.push_back({{"q", curve.field.q()}, {"a", a}, {"n_max", n_max}});
    }
  };
  for (std::uint64_t p : {std::uint64_t(5), std::uint64_t(7)}) {
    efv::Field field = efv::Field::make(p, 1);
    for (std::int64_t a4 = 0; a4 < static_cast<std::int64_t>(p); ++a4)
      for (std::int64_t a6 = 0; a6 < static_cast<std::int64_t>(p); ++a6) {
        try {
          compare(efv::curve_make_short(field, a4, a6), 2);
        } catch (const efv::Error& e) {
          if (e.code() != efv::errc::singular_curve) throw;
        }
      }
  }
  {
    efv::Field f2 = efv::Field::make(2, 1);
    efv::CurveData curve = efv::curve_make(f2, f2.zero(), f2.zero(), f2.one(), f2.zero(),
                                           f2.zero());  // y^2 + y = x^3
    compare(curve, 4);
  }
  json out;
  out["version"] = efv::kArtifactVersion;
  out["config"] = cfg.echo;
  out["curves_checked"] = checked;
  out["mismatches"] = mismatched;
  out["mismatch_cases"] = cases;
  out["pass"] = mismatched == 0;
  write_output(cfg, out.dump(2));
  return mismatched == 0 ? kExitPass : kExitFail;
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) efv::fail(efv::errc::invalid_config, "cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    efv::fail(efv::errc::parse_error, std::string("config: ") + e.what());
  }
  if (j.contains("command")) cfg.command = j.at("command").get<std::string>();
  if (j.contains("curve")) cfg.curve = j.at("curve");
  if (j.contains("a")) cfg.a = j.at("a").get<std::int64_t>();
  if (j.contains("q")) cfg.q = j.at("q").get<std::uint64_t>();
  if (j.contains("alpha")) {
    for (const auto& t : j.at("alpha")) {
      if (!t.is_array() || t.size() != 3)
        efv::fail(efv::errc::invalid_config, "alpha entries must be [A, c, h] triples");
      cfg.alpha.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
    }
  }
  if (j.contains("random_bumps")) cfg.random_bumps = j.at("random_bumps").get<int>();
  if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
  if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<int>();
  if (j.contains("zeros_file")) cfg.zeros_file = j.at("zeros_file").get<std::string>();
  if (j.contains("k_zeros")) cfg.k_zeros = j.at("k_zeros").get<int>();
  if (j.contains("k_list")) cfg.k_list = j.at("k_list").get<std::vector<int>>();
  if (j.contains("identities")) cfg.identities = j.at("identities").get<std::vector<std::string>>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  if (j.contains("riemann_budget")) cfg.riemann_budget = j.at("riemann_budget").get<double>();
}

json config_echo(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  if (!cfg.curve.is_null()) j["curve"] = cfg.curve;
  if (cfg.a) j["a"] = *cfg.a;
  if (cfg.q) j["q"] = *cfg.q;
  json alpha = json::array();
  for (const auto& b : cfg.alpha) alpha.push_back({b.amplitude, b.center, b.half_width});
  j["alpha"] = alpha;
  if (cfg.random_bumps > 0) j["random_bumps"] = cfg.random_bumps;
  j["epsilon"] = cfg.epsilon;
  j["n_max"] = cfg.n_max;
  if (!cfg.zeros_file.empty()) j["zeros_file"] = cfg.zeros_file;
  if (cfg.k_zeros) j["k_zeros"] = *cfg.k_zeros;
  if (!cfg.k_list.empty()) j["k_list"] = cfg.k_list;
  j["identities"] = cfg.identities;
  j["seed"] = cfg.seed;
  j["riemann_budget"] = cfg.riemann_budget;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit-formula verification for elliptic function fields and zeta(s)"};
  app.require_subcommand(0, 1);

  std::string config_path, zeros_file, out_path;
  double epsilon = -1.0;
  std::int64_t n_max = -1;
  std::int64_t seed = -1;
  std::int64_t k_zeros = -1;
  std::optional<std::int64_t> opt_a;
  std::optional<std::uint64_t> opt_q;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--zeros-file", zeros_file, "zeros table (one ordinate per line)");
  app.add_option("--epsilon", epsilon, "error budget");
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--seed", seed, "seed for randomized sweeps");
  app.add_option("--n-max", n_max, "table depth for orbits");
  app.add_option("--k-zeros", k_zeros, "number of zeros to use");
  app.add_option("--a", opt_a, "Frobenius trace (with --q)");
  app.add_option("--q", opt_q, "field size (with --a)");

  app.add_subcommand("verify-ff", "check the function-field identities on one curve")
      ->fallthrough();
  app.add_subcommand("verify-riemann", "check the zeta explicit formula against a zero table")
      ->fallthrough();
  app.add_subcommand("orbits", "emit the compact-orbit spectrum as CSV")->fallthrough();
  app.add_subcommand("residual-curve", "emit |spectral(K) - geometric| as CSV")->fallthrough();
  app.add_subcommand("oracle-check", "closed-point counts vs. the orbit-enumeration oracle")
      ->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) load_config_file(cfg, config_path);
    for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (!zeros_file.empty()) cfg.zeros_file = zeros_file;
    if (!out_path.empty()) cfg.out = out_path;
    if (app.count("--epsilon") > 0) cfg.epsilon = epsilon;  // validated downstream
    if (n_max >= 0) cfg.n_max = static_cast<int>(n_max);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (k_zeros >= 0) cfg.k_zeros = static_cast<int>(k_zeros);
    if (opt_a) cfg.a = *opt_a;
    if (opt_q) cfg.q = *opt_q;
    if (cfg.command.empty())
      efv::fail(efv::errc::invalid_config, "no command given (config or subcommand)");
    cfg.echo = config_echo(cfg);

    if (cfg.command == "verify-ff") return run_verify_ff(cfg);
    if (cfg.command == "verify-riemann") return run_verify_riemann(cfg);
    if (cfg.command == "orbits") return run_orbits(cfg);
    if (cfg.command == "residual-curve") return run_residual_curve(cfg);
    if (cfg.command == "oracle-check") return run_oracle_check(cfg);
    efv::fail(efv::errc::invalid_config, "unknown command " + cfg.command);
  } catch (const efv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

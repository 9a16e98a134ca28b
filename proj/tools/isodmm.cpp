// Command-line front end: identity verification, stencil/tau/rule tables,
// dispersion curves, matrix export and convergence studies.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

#include "isodmm/dispersion.hpp"
#include "isodmm/dmm.hpp"
#include "isodmm/quadrature.hpp"
#include "isodmm/study.hpp"

using namespace isodmm;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;

std::string fraction_of(double x) {
  Rational r;
  if (recover_fraction(x, 1000000000L, 1e-9, r)) return to_string(r);
  return "-";
}

void print_row(int k, const Rational& v) {
  std::printf("%d\t%s\t%s\n", k, to_string(v).c_str(), format_decimal(to_double(v), 17).c_str());
}

int cmd_verify(int p_max, int m_max, bool quiet) {
  if (p_max < 1) throw ConfigError("p-max must be at least 1");
  if (m_max <= 0) m_max = p_max;
  IdentityReport all;
  std::vector<SignFlag> flags;
  for (int p = 1; p <= p_max; ++p) {
    const auto f = sign_pattern_flags(p);
    flags.insert(flags.end(), f.begin(), f.end());
    all.append(verify_base_identities(p));
    if (p >= 2) all.append(verify_ab_identity(p));
    all.append(verify_dmm_identity(p));
  }
  if (p_max >= 2) all.append(fg_verify(p_max, m_max));
  if (!quiet) {
    std::printf("%-26s %3s %3s  %-4s  %s\n", "identity", "p", "m", "", "residual");
    for (const auto& c : all.checks) {
      std::printf("%-26s %3d %3d  %-4s  %s\n", c.identity.c_str(), c.p, c.m,
                  c.passed() ? "PASS" : "FAIL", to_string(c.residual).c_str());
    }
  }
  for (const auto& f : flags) {
    std::printf("flag: %s entry p=%d k=%d is %s (sign pattern)\n",
                f.kind == StencilKind::mass ? "mass" : "stiffness", f.p, f.k,
                to_string(f.value).c_str());
  }
  std::printf("%zu checks, %zu failed\n", all.checks.size(), all.failures());
  return all.all_passed() ? kOk : kVerifyFailed;
}

int cmd_stencil(int p, bool dmm, bool stiffness, const std::string& rule) {
  if (p < 1) throw ConfigError("p must be at least 1");
  if (!rule.empty()) {
    const MassChoice choice = parse_mass_choice(rule);
    if (auto exact = choice.exact_row(p)) {
      for (int k = 0; k <= p; ++k) print_row(k, exact->values[k]);
      return kOk;
    }
    const RealStencil s = choice.row(p);
    for (int k = 0; k <= p; ++k) {
      std::printf("%d\t%s\t%s\n", k, fraction_of(s.values[k]).c_str(),
                  format_decimal(s.values[k], 17).c_str());
    }
    return kOk;
  }
  const Stencil s = dmm ? dmm_stencil(p) : stiffness ? stiffness_stencil(p) : mass_stencil(p);
  for (int k = 0; k <= p; ++k) print_row(k, s.values[k]);
  return kOk;
}

int cmd_tau(int p, const std::string& pair_label, bool all) {
  if (p < 1) throw ConfigError("p must be at least 1");
  if (all) {
    std::printf("p");
    for (const char* l : {"gg", "gl", "gr", "pl", "pr", "lr"}) std::printf("\t%s", l);
    std::printf("\n");
    for (int q = 1; q <= p; ++q) {
      std::printf("%d", q);
      for (const char* l : {"gg", "gl", "gr", "pl", "pr", "lr"}) {
        try {
          std::printf("\t%s", fraction_of(pair_tau(q, parse_blend_pair(l))).c_str());
        } catch (const DegenerateBlendError&) {
          std::printf("\t--");
        }
      }
      std::printf("\n");
    }
    return kOk;
  }
  BlendPair pair;
  try {
    pair = parse_blend_pair(pair_label);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  double tau = 0;
  try {
    tau = pair_tau(p, pair);
  } catch (const DegenerateBlendError& e) {
    std::fprintf(stderr, "error: degenerate blend %s at p=%d: %s\n", pair_label.c_str(), p,
                 e.what());
    return kConfigError;
  }
  std::printf("%s\t%s\n", fraction_of(tau).c_str(), format_decimal(tau, 16).c_str());
  return kOk;
}

int cmd_rules(int p) {
  if (p < 1) throw ConfigError("p must be at least 1");
  std::vector<QuadratureRule> rules{gauss_legendre(p), gauss_legendre(p + 1), gauss_lobatto(p + 1),
                                    gauss_radau(p)};
  if (p <= 3) {
    rules.push_back(dmm_rule(p, 1));
    rules.push_back(dmm_rule(p, -1));
  }
  std::printf("rule,index,node,weight\n");
  for (const auto& r : rules) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::printf("%s,%zu,%.17g,%.17g\n", r.label.c_str(), i, static_cast<double>(r.nodes[i]),
                  static_cast<double>(r.weights[i]));
    }
  }
  return kOk;
}

int cmd_dispersion(int p, const std::string& mass, double lo, double hi, int count, bool summary) {
  if (p < 1) throw ConfigError("p must be at least 1");
  if (!(lo > 0) || !(hi > lo) || hi > std::numbers::pi || count < 2) {
    throw ConfigError("need 0 < min < max <= pi and count >= 2");
  }
  const MassChoice choice = parse_mass_choice(mass);
  const Stencil a = stiffness_stencil(p);
  const auto exact = choice.exact_row(p);
  const RealStencil real_row = choice.row(p);
  const auto grid = log_grid(lo, hi, count);
  const DispersionCurve curve = exact ? sample_curve(p, a, *exact, grid, choice.display(p))
                                      : sample_curve(p, a, real_row, grid, choice.display(p));
  if (summary) {
    const DispersionCurve fit_curve =
        exact ? sample_curve(p, a, *exact, log_grid(1e-2, 1e-1, 41))
              : sample_curve(p, a, real_row, log_grid(1e-2, 1e-1, 41));
    std::printf("p=%d mass=%s fitted_order=%.4f\n", p, choice.display(p).c_str(),
                fit_order(fit_curve));
    const auto checks = exact ? coefficient_check(p, a, *exact) : coefficient_check(p, a, real_row);
    for (const auto& c : checks) {
      std::printf("order %d predicted %s measured %s %s\n", c.order,
                  format_scientific(c.predicted, 8).c_str(), format_scientific(c.measured, 8).c_str(),
                  c.passed ? "PASS" : "FAIL");
      if (c.predicted != 0.0) break;
    }
    return kOk;
  }
  std::printf("lambda,ratio,error\n");
  for (const auto& s : curve.samples) {
    std::printf("%s,%s,%s\n", format_scientific(s.lambda, 10).c_str(),
                format_scientific(s.ratio, 10).c_str(), format_scientific(s.error, 10).c_str());
  }
  return kOk;
}

int cmd_export(int p, int N, const std::string& mass, int dimension, const std::string& prefix) {
  const BSplineSpace space(p, N);
  MatrixPair pair = parse_mass_choice(mass).assemble(space);
  if (dimension == 2) {
    pair = assemble_2d(pair);
  } else if (dimension != 1) {
    throw ConfigError("dimension must be 1 or 2");
  }
  for (const auto& [name, m] : {std::pair{"K", &pair.K}, std::pair{"M", &pair.M}}) {
    const std::string path = prefix + "_" + name + ".mtx";
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    m->write_matrix_market(out);
    std::printf("%s\n", path.c_str());
  }
  return kOk;
}

int cmd_study(int dimension, const std::string& config_path, const std::vector<std::string>& sets) {
  StudyConfig cfg = config_path.empty() ? StudyConfig{} : StudyConfig::load(config_path);
  cfg.dimension = dimension;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
    cfg.set(s.substr(0, eq), s.substr(eq + 1));
  }
  if (cfg.dimension != dimension) throw ConfigError("dimension is fixed by the subcommand");
  const StudyReport report = run_study(cfg);
  if (cfg.csv_path.empty()) {
    report.write_csv(std::cout);
  } else {
    std::ofstream out(cfg.csv_path);
    if (!out) throw ConfigError("cannot write '" + cfg.csv_path + "'");
    report.write_csv(out);
  }
  if (!cfg.json_path.empty()) {
    std::ofstream out(cfg.json_path);
    if (!out) throw ConfigError("cannot write '" + cfg.json_path + "'");
    out << report.to_json();
  }
  for (const auto& c : report.cells) {
    if (!c.error.empty()) {
      std::fprintf(stderr, "warning: p=%d N=%d %s: %s\n", c.p, c.N, c.rule.c_str(), c.error.c_str());
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dispersion-minimized mass and blended quadratures for B-spline eigenproblems"};
  app.require_subcommand(1);

  int p_max = 4, m_max = 0;
  bool quiet = false;
  auto* verify = app.add_subcommand("verify", "exact identity suite");
  verify->add_option("--p-max", p_max, "largest degree")->capture_default_str();
  verify->add_option("--m-max", m_max, "largest order index (default: p-max)");
  verify->add_flag("-q,--quiet", quiet, "print the summary line only");

  int p = 2;
  bool dmm = false, stiff = false;
  std::string rule;
  auto* stencil = app.add_subcommand("stencil", "interior stencil as fractions");
  stencil->add_option("-p", p, "degree")->required();
  auto* dmm_flag = stencil->add_flag("--dmm", dmm, "dispersion-minimized mass");
  auto* stiff_flag = stencil->add_flag("--stiffness", stiff, "stiffness instead of mass");
  auto* rule_opt = stencil->add_option("--rule", rule, "mass rule label (exact, G, L, R, dmm, ...)");
  dmm_flag->excludes(stiff_flag)->excludes(rule_opt);
  stiff_flag->excludes(rule_opt);

  std::string pair_label;
  bool all_pairs = false;
  auto* tau = app.add_subcommand("tau", "optimal blending parameter");
  tau->add_option("-p", p, "degree")->required();
  auto* pair_opt = tau->add_option("--pair", pair_label, "gg|gl|gr|pl|pr|lr");
  tau->add_flag("--all", all_pairs, "table for degrees 1..p")->excludes(pair_opt);

  auto* rules = app.add_subcommand("rules", "quadrature nodes and weights as CSV");
  rules->add_option("-p", p, "degree")->required();

  std::string mass = "exact";
  double lo = 1e-3, hi = std::numbers::pi;
  int count = 200;
  bool summary = false;
  auto* disp = app.add_subcommand("dispersion", "dispersion error curve as CSV");
  disp->add_option("-p", p, "degree")->required();
  disp->add_option("--mass", mass, "mass rule label")->capture_default_str();
  disp->add_option("--min", lo, "smallest lambda = mu h")->capture_default_str();
  disp->add_option("--max", hi, "largest lambda")->capture_default_str();
  disp->add_option("--count", count, "number of samples")->capture_default_str();
  disp->add_flag("--summary", summary, "fitted order and coefficient check instead of samples");

  int N = 8, dimension = 1;
  std::string prefix = "matrix";
  auto* exp = app.add_subcommand("export", "write K and M in MatrixMarket coordinate format");
  exp->add_option("-p", p, "degree")->required();
  exp->add_option("-N", N, "elements per direction")->required();
  exp->add_option("--mass", mass, "mass rule label")->capture_default_str();
  exp->add_option("--dimension", dimension, "1 or 2")->capture_default_str();
  exp->add_option("--prefix", prefix, "output path prefix")->capture_default_str();

  std::string config_path;
  std::vector<std::string> sets;
  auto add_study = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("-c,--config", config_path, "key = value configuration file");
    s->add_option("--set", sets, "override a configuration key (key=value)");
    // Shorthands for the common keys; each becomes a --set override.
    for (const auto& [flag, key] : std::vector<std::pair<std::string, std::string>>{
             {"-p,--degrees", "degrees"}, {"-N,--meshes", "meshes"}, {"--rules", "rules"},
             {"--modes", "modes"}, {"--csv", "csv"}, {"--json", "json"},
             {"--threads", "threads"}, {"--solver2d", "solver2d"}}) {
      s->add_option_function<std::string>(
          flag, [&sets, key](const std::string& v) { sets.push_back(key + "=" + v); },
          "sets '" + key + "'");
    }
    return s;
  };
  auto* study1 = add_study("study-1d", "1D eigenvalue/eigenfunction convergence study");
  auto* study2 = add_study("study-2d", "2D eigenvalue convergence study");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*verify) return cmd_verify(p_max, m_max, quiet);
    if (*stencil) return cmd_stencil(p, dmm, stiff, rule);
    if (*tau) {
      if (pair_label.empty() && !all_pairs) throw ConfigError("tau needs --pair or --all");
      return cmd_tau(p, pair_label, all_pairs);
    }
    if (*rules) return cmd_rules(p);
    if (*disp) return cmd_dispersion(p, mass, lo, hi, count, summary);
    if (*exp) return cmd_export(p, N, mass, dimension, prefix);
    if (*study1) return cmd_study(1, config_path, sets);
    if (*study2) return cmd_study(2, config_path, sets);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kVerifyFailed;
  }
  return kOk;
}

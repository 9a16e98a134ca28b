#include "isodmm/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "isodmm/dmm.hpp"
#include "isodmm/eigensolve.hpp"
#include "json.hpp"

namespace isodmm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
  }
}

std::vector<int> to_ints(const std::string& key, const std::string& v) {
  std::vector<int> out;
  for (const auto& item : split(v, ',')) out.push_back(to_int(key, item));
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + v + "'");
}

std::string fixed3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

MassChoice parse_mass_choice(const std::string& label) {
  MassChoice c;
  c.key = label;
  const auto parts = split(label, ':');
  if (parts.empty()) throw ConfigError("empty mass rule label");
  const std::string& head = parts[0];
  if (head == "exact" && parts.size() == 1) {
    c.kind = MassChoice::Kind::exact;
  } else if (head == "G" && parts.size() == 1) {
    c.kind = MassChoice::Kind::gauss;
  } else if (head == "L" && parts.size() == 1) {
    c.kind = MassChoice::Kind::lobatto;
  } else if (head == "R" && parts.size() == 1) {
    c.kind = MassChoice::Kind::radau;
  } else if (head == "dmm" && parts.size() == 1) {
    c.kind = MassChoice::Kind::dmm;
  } else if (head == "dmm-rule" && parts.size() <= 2) {
    c.kind = MassChoice::Kind::dmm_rule;
    if (parts.size() == 2) {
      if (parts[1] == "+") {
        c.branch = 1;
      } else if (parts[1] == "-") {
        c.branch = -1;
      } else {
        throw ConfigError("dmm-rule branch must be + or -");
      }
    }
  } else if (head == "blend" && (parts.size() == 2 || parts.size() == 3)) {
    c.kind = MassChoice::Kind::blend;
    try {
      c.pair = parse_blend_pair(parts[1]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (parts.size() == 3) {
      try {
        c.tau = std::stod(parts[2]);
      } catch (const std::exception&) {
        throw ConfigError("blend tau must be a number, got '" + parts[2] + "'");
      }
    }
  } else {
    throw ConfigError("unknown mass rule '" + label + "'");
  }
  return c;
}

std::string MassChoice::display(int p) const {
  switch (kind) {
    case Kind::exact: return "G" + std::to_string(p + 1);
    case Kind::gauss: return "G" + std::to_string(p);
    case Kind::lobatto: return "L" + std::to_string(p + 1);
    case Kind::radau: return "R" + std::to_string(p);
    case Kind::dmm: return "DMM";
    case Kind::dmm_rule: return std::string("DMMrule") + (branch > 0 ? "+" : "-");
    case Kind::blend: return "blend-" + to_string(pair) + (tau ? "-" + format_decimal(*tau, 8) : "");
  }
  return key;
}

void MassChoice::check(int p) const {
  if (p < 1) throw ConfigError("degree must be at least 1");
  if (kind == Kind::dmm_rule && p > 3) {
    throw ConfigError("dmm-rule is available for p <= 3 only");
  }
  if (kind == Kind::blend && !tau) {
    try {
      (void)pair_tau(p, pair);
    } catch (const DegenerateBlendError& e) {
      throw ConfigError("blend " + to_string(pair) + " at p=" + std::to_string(p) + ": " +
                        e.what());
    }
  }
}

QuadratureRule MassChoice::rule(int p) const {
  check(p);
  switch (kind) {
    case Kind::exact: return gauss_legendre(p + 1);
    case Kind::gauss: return gauss_legendre(p);
    case Kind::lobatto: return gauss_lobatto(p + 1);
    case Kind::radau: return gauss_radau(p);
    case Kind::dmm: return optimal_blend(p, BlendPair::gl).combined();
    case Kind::dmm_rule: return dmm_rule(p, branch);
    case Kind::blend: {
      const auto [q1, q2] = pair_rules(p, pair);
      return blend(q1, q2, tau ? *tau : pair_tau(p, pair)).combined();
    }
  }
  throw ConfigError("unhandled mass rule");
}

MatrixPair MassChoice::assemble(const BSplineSpace& space) const {
  const int p = space.degree();
  MatrixPair pair = kind == Kind::dmm ? assemble_1d_dmm(space)
                                      : assemble_1d(space, gauss_legendre(p + 1), rule(p));
  pair.mass_label = display(p);
  return pair;
}

std::optional<Stencil> MassChoice::exact_row(int p) const {
  if (kind == Kind::exact) return mass_stencil(p);
  if (kind == Kind::dmm) return dmm_stencil(p);
  return std::nullopt;
}

RealStencil MassChoice::row(int p) const {
  if (auto r = exact_row(p)) return to_real(*r);
  return quadrature_mass_stencil(p, rule(p));
}

void StudyConfig::set(const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  if (key == "degrees" || key == "p") {
    degrees = to_ints(key, value);
  } else if (key == "meshes" || key == "N") {
    meshes = to_ints(key, value);
  } else if (key == "rules" || key == "mass") {
    rules = split(value, ',');
  } else if (key == "dimension") {
    dimension = to_int(key, value);
  } else if (key == "modes") {
    modes = to_ints(key, value);
  } else if (key == "eigenfunctions") {
    eigenfunctions = to_bool(key, value);
  } else if (key == "solver2d") {
    solver2d = value;
  } else if (key == "max_dofs") {
    const int v = to_int(key, value);
    if (v < 1) throw ConfigError("max_dofs must be positive");
    max_dofs = static_cast<std::size_t>(v);
  } else if (key == "threads") {
    threads = to_int(key, value);
  } else if (key == "csv") {
    csv_path = value;
  } else if (key == "json") {
    json_path = value;
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

StudyConfig StudyConfig::parse(std::istream& in) {
  StudyConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    cfg.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

StudyConfig StudyConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  return parse(in);
}

void StudyConfig::validate() const {
  if (degrees.empty()) throw ConfigError("degree list is empty");
  if (meshes.empty()) throw ConfigError("mesh list is empty");
  if (rules.empty()) throw ConfigError("rule list is empty");
  if (modes.empty()) throw ConfigError("mode list is empty");
  if (dimension != 1 && dimension != 2) throw ConfigError("dimension must be 1 or 2");
  if (solver2d != "tensor" && solver2d != "kronecker") {
    throw ConfigError("solver2d must be tensor or kronecker");
  }
  if (threads < 0) throw ConfigError("threads must be nonnegative");
  for (int p : degrees) {
    if (p < 1 || p > 12) throw ConfigError("degrees must lie in 1..12");
  }
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    if (meshes[i] < 2) throw ConfigError("meshes need at least 2 elements");
    if (i > 0 && meshes[i] <= meshes[i - 1]) {
      throw ConfigError("mesh list must be strictly increasing");
    }
  }
  for (int m : modes) {
    if (m < 1) throw ConfigError("mode indices start at 1");
  }
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const MassChoice c = parse_mass_choice(rules[i]);
    for (int p : degrees) c.check(p);
    for (std::size_t j = 0; j < i; ++j) {
      if (parse_mass_choice(rules[j]).display(degrees[0]) == c.display(degrees[0])) {
        throw ConfigError("rule '" + rules[i] + "' duplicates '" + rules[j] + "'");
      }
    }
  }
}

std::optional<double> fitted_rate(const std::vector<int>& meshes,
                                  const std::vector<double>& errors) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < meshes.size() && i < errors.size(); ++i) {
    if (!std::isfinite(errors[i]) || errors[i] == 0.0) continue;
    const double x = std::log(static_cast<double>(meshes[i]));
    const double y = std::log(std::abs(errors[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::nullopt;
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

StudyCell run_cell(const StudyConfig& cfg, int p, int N, const MassChoice& choice) {
  StudyCell cell;
  cell.p = p;
  cell.N = N;
  cell.rule = choice.display(p);
  try {
    const int top = *std::max_element(cfg.modes.begin(), cfg.modes.end());
    const BSplineSpace space(p, N);
    const MatrixPair pair = choice.assemble(space);
    const bool want_ef = cfg.dimension == 1 && cfg.eigenfunctions;
    std::vector<double> discrete;
    Spectrum spec;
    if (cfg.dimension == 1) {
      spec = generalized_eig(pair, want_ef);
      discrete = spec.eigenvalues;
    } else if (cfg.solver2d == "tensor") {
      discrete = tensor_spectrum_2d(generalized_eig(pair, false)).eigenvalues;
    } else {
      discrete = generalized_eig(assemble_2d(pair, cfg.max_dofs), false).eigenvalues;
    }
    if (top > static_cast<int>(discrete.size())) {
      throw std::out_of_range("mode " + std::to_string(top) + " exceeds the " +
                              std::to_string(discrete.size()) + " discrete eigenvalues");
    }
    const auto exact = exact_spectrum(cfg.dimension, top);
    discrete.resize(top);
    const auto rel = relative_ev_errors(discrete, exact);
    for (int m : cfg.modes) {
      cell.rel_ev_error.push_back(rel[m - 1]);
      if (want_ef) cell.ef_energy_error.push_back(energy_error(pair, spec, m));
    }
  } catch (const std::exception& e) {
    cell.error = e.what();
    cell.rel_ev_error.clear();
    cell.ef_energy_error.clear();
  }
  return cell;
}

}  // namespace

StudyReport run_study(const StudyConfig& config) {
  config.validate();
  StudyReport report;
  report.config = config;

  struct Task {
    int p, N;
    MassChoice choice;
  };
  std::vector<Task> tasks;
  for (int p : config.degrees) {
    for (int N : config.meshes) {
      for (const auto& r : config.rules) tasks.push_back({p, N, parse_mass_choice(r)});
    }
  }
  report.cells.resize(tasks.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      report.cells[i] = run_cell(config, tasks[i].p, tasks[i].N, tasks[i].choice);
    }
  };
  int nthreads = config.threads > 0 ? config.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::clamp(nthreads, 1, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (int p : config.degrees) {
    for (const auto& r : config.rules) {
      const std::string name = parse_mass_choice(r).display(p);
      for (std::size_t mi = 0; mi < config.modes.size(); ++mi) {
        std::vector<double> ev, ef;
        bool have_ef = false;
        for (const auto& c : report.cells) {
          if (c.p != p || c.rule != name) continue;
          ev.push_back(c.error.empty() ? c.rel_ev_error[mi] : NAN);
          if (!c.ef_energy_error.empty()) {
            have_ef = true;
            ef.push_back(c.ef_energy_error[mi]);
          } else {
            ef.push_back(NAN);
          }
        }
        StudyRate rate{p, name, config.modes[mi], fitted_rate(config.meshes, ev), std::nullopt};
        if (have_ef) rate.ef_rate = fitted_rate(config.meshes, ef);
        report.rates.push_back(rate);
      }
    }
  }
  return report;
}

void StudyReport::write_csv(std::ostream& os) const {
  write_csv_header(os);
  for (const auto& c : cells) {
    for (std::size_t i = 0; i < config.modes.size(); ++i) {
      os << c.p << ',' << c.N << ',' << c.rule << ',' << config.modes[i] << ',';
      if (!c.error.empty()) {
        os << "nan,\n";
        continue;
      }
      os << format_scientific(c.rel_ev_error[i]) << ',';
      if (i < c.ef_energy_error.size()) os << format_scientific(c.ef_energy_error[i]);
      os << '\n';
    }
  }
  for (const auto& r : rates) {
    os << r.p << ",rate," << r.rule << ',' << r.mode << ',' << (r.ev_rate ? fixed3(*r.ev_rate) : "")
       << ',' << (r.ef_rate ? fixed3(*r.ef_rate) : "") << '\n';
  }
}

std::string StudyReport::to_json() const {
  using nlohmann::json;
  json j;
  j["dimension"] = config.dimension;
  j["degrees"] = config.degrees;
  j["meshes"] = config.meshes;
  j["rules"] = config.rules;
  j["modes"] = config.modes;
  j["cells"] = json::array();
  for (const auto& c : cells) {
    json cell{{"p", c.p}, {"N", c.N}, {"rule", c.rule}};
    cell["rel_ev_error"] = c.rel_ev_error;
    cell["ef_energy_error"] =
        c.ef_energy_error.empty() ? json(nullptr) : json(c.ef_energy_error);
    cell["error"] = c.error.empty() ? json(nullptr) : json(c.error);
    j["cells"].push_back(cell);
  }
  j["rates"] = json::array();
  for (const auto& r : rates) {
    j["rates"].push_back({{"p", r.p},
                          {"rule", r.rule},
                          {"mode", r.mode},
                          {"ev_rate", r.ev_rate ? json(*r.ev_rate) : json(nullptr)},
                          {"ef_rate", r.ef_rate ? json(*r.ef_rate) : json(nullptr)}});
  }
  return j.dump(2) + "\n";
}

}  // namespace isodmm

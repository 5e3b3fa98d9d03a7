#include "nshyp/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include "nshyp/cli/csv.hpp"
#include "nshyp/cli/expression.hpp"
#include "nshyp/core/blowup.hpp"
#include "nshyp/core/criteria.hpp"
#include "nshyp/core/grid_solution.hpp"
#include "nshyp/fd/parabolic_fd.hpp"
#include "nshyp/models/models.hpp"
#include "nshyp/stochastic/ensemble.hpp"
#include "nshyp/waves/bloodflow.hpp"
#include "nshyp/waves/waves.hpp"

namespace nshyp::cli {

using nlohmann::json;

namespace {

// Section accessor that rejects unknown keys and mistyped values.
class Section {
 public:
  Section(const json& j, std::string name, std::set<std::string> allowed)
      : j_(j), name_(std::move(name)) {
    if (j_.is_null()) return;
    if (!j_.is_object()) throw ConfigError("'" + name_ + "' must be an object");
    for (const auto& [key, value] : j_.items())
      if (!allowed.count(key))
        throw ConfigError("'" + name_ + "': unknown key '" + key + "'");
  }

  bool has(const std::string& key) const {
    return j_.is_object() && j_.contains(key) && !j_.at(key).is_null();
  }

  double number(const std::string& key, std::optional<double> fallback = {}) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError("'" + name_ + "." + key + "' is required");
    }
    return to_number(j_.at(key), key);
  }

  long integer(const std::string& key, std::optional<long> fallback = {}) const {
    const double v = number(key, fallback ? std::optional<double>(*fallback)
                                          : std::nullopt);
    if (v != std::floor(v) || std::abs(v) > 9e15)
      throw ConfigError("'" + name_ + "." + key + "' must be an integer");
    return static_cast<long>(v);
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean())
      throw ConfigError("'" + name_ + "." + key + "' must be true or false");
    return j_.at(key).get<bool>();
  }

  std::string string(const std::string& key,
                     std::optional<std::string> fallback = {}) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError("'" + name_ + "." + key + "' is required");
    }
    if (!j_.at(key).is_string())
      throw ConfigError("'" + name_ + "." + key + "' must be a string");
    return j_.at(key).get<std::string>();
  }

  std::vector<double> numbers(const std::string& key,
                              std::optional<std::vector<double>> fallback = {}) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError("'" + name_ + "." + key + "' is required");
    }
    const json& arr = j_.at(key);
    if (!arr.is_array())
      throw ConfigError("'" + name_ + "." + key + "' must be an array");
    std::vector<double> out;
    for (const auto& v : arr) out.push_back(to_number(v, key));
    return out;
  }

  const json& raw(const std::string& key) const { return j_.at(key); }

 private:
  // Numbers, or strings holding a constant expression such as "2*pi".
  double to_number(const json& v, const std::string& key) const {
    double x;
    if (v.is_number()) {
      x = v.get<double>();
    } else if (v.is_string()) {
      const auto e = Expression::parse(v.get<std::string>());
      if (!e.is_constant())
        throw ConfigError("'" + name_ + "." + key + "' must not depend on x");
      x = e(0.0);
    } else {
      throw ConfigError("'" + name_ + "." + key + "' must be a number");
    }
    if (!std::isfinite(x))
      throw ConfigError("'" + name_ + "." + key + "' is not finite");
    return x;
  }

  json j_;
  std::string name_;
};

std::string resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

std::string hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json nullable(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json complex_list(const std::vector<std::complex<double>>& zs) {
  json arr = json::array();
  for (const auto& z : zs) arr.push_back({z.real(), z.imag()});
  return arr;
}

json classification(const EquilibriumClass& c) {
  return {{"kind", to_string(c.kind)},
          {"periodic", c.periodic()},
          {"eigenvalues", complex_list(c.eigenvalues)}};
}

// Shared state of one run.
struct Run {
  const json& config;
  std::ostream& out;
  std::ostream& err;
  std::string base_dir;
  std::string config_hash;
  Section output;

  std::vector<std::pair<std::string, std::string>> metadata(
      const std::string& command, const std::string& seed) const {
    return {{"command", command},
            {"seed", seed},
            {"version", kVersion},
            {"config_hash", config_hash}};
  }

  void emit_json(const json& report) const {
    const std::string text = report.dump(2) + "\n";
    if (output.has("report")) {
      const std::string path = resolve(base_dir, output.string("report"));
      std::ofstream os(path, std::ios::binary);
      if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
      os << text;
    } else {
      out << text;
    }
  }

  void emit_csv(const CsvTable& table, bool to_stdout_if_missing) const {
    if (output.has("csv"))
      write_csv(resolve(base_dir, output.string("csv")), table);
    else if (to_stdout_if_missing)
      write_csv(out, table);
  }
};

ModelEntry model_from(const json& config) {
  if (!config.contains("model")) throw ConfigError("'model' is required");
  if (!config.at("model").is_string())
    throw ConfigError("'model' must be a string");
  ParamMap params;
  if (config.contains("params")) {
    const json& p = config.at("params");
    if (!p.is_object()) throw ConfigError("'params' must be an object");
    for (const auto& [key, value] : p.items()) {
      if (!value.is_number())
        throw ConfigError("'params." + key + "' must be a number");
      params[key] = value.get<double>();
    }
  }
  try {
    return build(config.at("model").get<std::string>(), params);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

InitialProfile profile_of(const Run& run, int n) {
  if (!run.config.contains("profile")) throw ConfigError("'profile' is required");
  return profile_from_json(run.config.at("profile"), n, run.base_dir);
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const Run& run) {
  const ModelEntry model = model_from(run.config);
  const Section grid(run.config.value("grid", json()), "grid",
                     {"points", "horizon", "scan_step", "tol"});
  const InitialProfile prof = profile_of(run, model.spec.dim());
  ScanSettings scan;
  scan.horizon = grid.number("horizon", 100.0);
  scan.scan_step = grid.number("scan_step", 0.0);
  scan.tol = grid.number("tol", 1e-10);
  const long points = grid.integer("points", 512);
  if (points < 1) throw ConfigError("'grid.points' must be positive");
  const auto x = uniform_grid(prof, static_cast<int>(points));

  const BlowupReport report = blowup_report(model.spec.inviscid(), prof, x, scan);
  json j = {{"command", "analyze"},
            {"version", kVersion},
            {"config_hash", run.config_hash},
            {"model", to_string(model.name)},
            {"verdict", to_string(report.verdict)},
            {"t_star", nullable(report.t_star)},
            {"x_star", nullable(report.x_star)},
            {"horizon", report.horizon}};
  json table = json::array();
  for (const auto& p : report.per_point) {
    json row = {{"x0", p.x0}};
    row["t_root"] = p.root ? json(p.root->t) : json(nullptr);
    row["kind"] = p.root ? json(to_string(p.root->kind)) : json(nullptr);
    table.push_back(row);
  }
  j["per_point"] = table;

  std::optional<CriterionResult> crit;
  std::string crit_name;
  for (const auto& c : model.criteria) {
    if (c == "cold_plasma" && model.spec.dim() == 2) {
      crit = criterion_cold_plasma(prof, x);
      crit_name = c;
    } else if (c == "davidson") {
      crit = criterion_davidson(prof, model.params.at("B0"), x);
      crit_name = c;
    }
  }
  int code = exit_ok;
  if (crit) {
    bool agree = crit->verdict == report.verdict;
    for (std::size_t i = 0; i < x.size(); ++i)
      agree = agree && ((crit->values[i] >= 0) == report.per_point[i].root.has_value());
    j["criterion"] = {{"name", crit_name},
                      {"verdict", to_string(crit->verdict)},
                      {"max_value", crit->max_value},
                      {"violating_x", nullable(crit->violating_x)}};
    j["agreement"] = agree;
    if (!agree) {
      run.err << "analyze: closed-form criterion and q scan disagree\n";
      code = exit_disagreement;
    }
  }
  run.emit_json(j);
  return code;
}

// --------------------------------------------------------------- simulate

int cmd_simulate(const Run& run) {
  const ModelEntry model = model_from(run.config);
  const Section grid(run.config.value("grid", json()), "grid",
                     {"method", "times", "points", "refine", "dx", "dt", "safety"});
  const InitialProfile prof = profile_of(run, model.spec.dim());
  const std::string method = grid.string("method", "characteristics");
  if (method != "characteristics" && method != "fd" && method != "crosscheck")
    throw ConfigError("'grid.method' must be characteristics, fd or crosscheck");
  std::vector<double> times = grid.numbers("times");
  if (times.empty()) throw ConfigError("'grid.times' must not be empty");
  for (double t : times)
    if (!(t >= 0)) throw ConfigError("'grid.times' must be non-negative");
  std::sort(times.begin(), times.end());
  const int n = model.spec.dim();
  const bool viscous = model.spec.B().has_value();

  if (method != "fd" && viscous)
    throw ConfigError("simulate: the characteristics path needs B = 0; use method fd");

  // Characteristic solutions exist only before the blow-up time.
  if (method != "fd" && times.back() > 0) {
    ScanSettings scan;
    scan.horizon = times.back();
    const auto report = blowup_report(model.spec, prof, uniform_grid(prof, 1024), scan);
    if (report.verdict == Verdict::blows_up) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "simulate: requested t=" << times.back()
          << " is not before the blow-up time T*=" << *report.t_star;
      throw NumericalError(msg.str());
    }
  }

  CsvTable table;
  table.metadata = run.metadata("simulate", "none");
  table.metadata.emplace_back("method", method);
  table.columns = {"t", "x"};
  for (int i = 1; i <= n; ++i) table.columns.push_back("V" + std::to_string(i));

  if (method == "characteristics") {
    table.columns.push_back("q");
    const long points = grid.integer("points", 256);
    const long refine = grid.integer("refine", 4);
    if (points < 2) throw ConfigError("'grid.points' must be at least 2");
    const auto x = uniform_grid(prof, static_cast<int>(points));
    for (double t : times) {
      const auto sol = grid_solution(model.spec, prof, t, x, static_cast<int>(refine));
      for (std::size_t j = 0; j < x.size(); ++j) {
        std::vector<double> row = {t, x[j]};
        for (int i = 0; i < n; ++i) row.push_back(sol.values(i, j));
        row.push_back(sol.jacobian[j]);
        table.rows.push_back(std::move(row));
      }
    }
    run.emit_csv(table, true);
    return exit_ok;
  }

  FdSettings fd;
  fd.dx = grid.number("dx", 0.01);
  fd.dt = grid.number("dt", 0.005);
  fd.safety = grid.number("safety", 0.9);
  const auto states = fd_solve(model.spec, prof, fd, times);
  if (method == "crosscheck") {
    for (int i = 1; i <= n; ++i) table.columns.push_back("V" + std::to_string(i) + "_fd");
    table.columns.push_back("error");
  }
  for (const auto& s : states) {
    std::optional<GridSolution> exact;
    if (method == "crosscheck") exact = grid_solution(model.spec, prof, s.t, s.x);
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      const auto col = static_cast<Eigen::Index>(j);
      std::vector<double> row = {s.t, s.x[j]};
      if (exact) {
        for (int i = 0; i < n; ++i) row.push_back(exact->values(i, col));
        for (int i = 0; i < n; ++i) row.push_back(s.fields(i, col));
        row.push_back((exact->values.col(col) - s.fields.col(col)).lpNorm<Eigen::Infinity>());
      } else {
        for (int i = 0; i < n; ++i) row.push_back(s.fields(i, col));
      }
      table.rows.push_back(std::move(row));
    }
  }
  run.emit_csv(table, true);
  return exit_ok;
}

// ---------------------------------------------------------- travelingwave

int cmd_travelingwave(const Run& run) {
  const ModelEntry model = model_from(run.config);
  const Section grid(run.config.value("grid", json()), "grid",
                     {"mode", "w", "start", "xi_max", "output_step", "full_span",
                      "rtol", "atol"});
  if (run.config.contains("profile"))
    throw ConfigError("travelingwave: 'profile' is not used; give 'grid.start'");
  const bool blood = model.name == ModelName::blood_flow;
  const std::string mode = grid.string("mode", blood ? "phase_plane" : "inviscid");
  const double w = grid.number("w");
  const std::vector<double> start = grid.numbers("start");
  const double xi_max = grid.number("xi_max", 100.0);
  const double step = grid.number("output_step", 0.01);
  const bool full_span = grid.boolean("full_span", false);
  if (!(xi_max > 0) || !(step > 0))
    throw ConfigError("'grid.xi_max' and 'grid.output_step' must be positive");
  IntegrationOptions opts;
  opts.rtol = grid.number("rtol", 1e-10);
  opts.atol = grid.number("atol", 1e-12);
  const Vector y0 = Eigen::Map<const Vector>(start.data(), static_cast<Eigen::Index>(start.size()));

  json summary = {{"command", "travelingwave"},
                  {"version", kVersion},
                  {"config_hash", run.config_hash},
                  {"model", to_string(model.name)},
                  {"mode", mode},
                  {"w", w}};
  const double nu = model.params.count("nu") ? model.params.at("nu") : 0.0;
  if (model.name == ModelName::cold_plasma) {
    summary["linearized"] =
        classification(linearized_tw_roots(LinearizedModel::cold_plasma_viscous, nu, 0.0, w));
  } else if (model.name == ModelName::rayleigh_benard ||
             model.name == ModelName::stratified_fluid) {
    summary["linearized"] = classification(linearized_tw_roots(
        LinearizedModel::stratified, nu, model.params.at("kappa"), w));
  }

  Trajectory traj;
  std::vector<std::string> columns = {"xi"};
  if (mode == "viscous") {
    if (model.name != ModelName::cold_plasma)
      throw ConfigError("travelingwave: viscous mode is available for cold_plasma only");
    if (!(nu > 0))
      throw ConfigError("travelingwave: viscous mode needs nu > 0; use mode inviscid");
    if (start.size() != 3)
      throw ConfigError("'grid.start' must be (V, V', V'') in viscous mode");
    traj = tw_viscous_coldplasma(nu, w, start[0], start[1], start[2], {0.0, xi_max}, opts);
    columns.insert(columns.end(), {"V", "dV", "ddV"});
  } else if (mode == "inviscid") {
    if (static_cast<int>(start.size()) != model.spec.dim())
      throw ConfigError("'grid.start' must have one entry per component");
    traj = tw_inviscid(model.spec.inviscid(), w, y0, {0.0, xi_max}, opts);
    for (int i = 1; i <= model.spec.dim(); ++i) columns.push_back("V" + std::to_string(i));
    if (traj.termination == Termination::reached_end && model.spec.dim() == 2) {
      const Matrix Q = model.spec.Q();
      VectorField rhs = [Q, w](double, const Vector& y) -> Vector {
        return Q * y / (y[0] - w);
      };
      const Vector d0 = rhs(0.0, y0);
      const int section = std::abs(d0[0]) >= std::abs(d0[1]) ? 0 : 1;
      const auto orbit = first_return(rhs, y0, section, xi_max, opts);
      summary["orbit"] = {{"closed", orbit.closed},
                          {"period", orbit.closed ? json(orbit.period) : json(nullptr)},
                          {"closure_error", orbit.closure_error}};
    }
  } else if (mode == "phase_plane") {
    if (!blood) throw ConfigError("travelingwave: phase_plane mode is for blood_flow");
    if (start.size() != 2) throw ConfigError("'grid.start' must be (E, V)");
    const BloodFlowWave p{model.params.at("mu"), model.params.at("S0"), w};
    const PhasePoint p0{start[0], start[1]};
    const auto cls = bloodflow_classify(p);
    summary["classification"] = classification(cls);
    summary["psi0"] = bloodflow_psi(p, p0);
    if (w > 0) summary["band"] = bloodflow_band(p);
    try {
      summary["period_quadrature"] = bloodflow_period(p, p0);
    } catch (const DomainError& e) {
      summary["period_quadrature"] = nullptr;
      summary["period_note"] = e.what();
    }
    VectorField rhs = [p](double, const Vector& y) -> Vector {
      const PhasePoint d = bloodflow_rhs(p, {y[0], y[1]});
      Vector v(2);
      v << d.E, d.V;
      return v;
    };
    const PhasePoint d0 = bloodflow_rhs(p, p0);
    const int section = std::abs(d0.V) >= std::abs(d0.E) ? 1 : 0;
    opts.guard = [p](double, const Vector& y) {
      const double s = y[1] - p.w;
      return std::abs(s) < 1e-9 * std::max(1.0, std::abs(p.w)) ||
             std::abs(s * s * s + p.mu * p.w * p.S0) < 1e-9 * std::max(1.0, p.mu * p.w * p.S0);
    };
    const auto orbit = first_return(rhs, y0, section, xi_max, opts);
    summary["orbit"] = {{"closed", orbit.closed},
                        {"period", orbit.closed ? json(orbit.period) : json(nullptr)},
                        {"closure_error", orbit.closure_error}};
    traj = orbit.trajectory;
    double drift = 0.0;
    const double psi0 = bloodflow_psi(p, p0);
    for (const auto& s : traj.states)
      drift = std::max(drift, std::abs(bloodflow_psi(p, {s[0], s[1]}) - psi0));
    summary["psi_drift"] = drift;
    columns.insert(columns.end(), {"E", "V"});
  } else {
    throw ConfigError("'grid.mode' must be inviscid, viscous or phase_plane");
  }

  summary["termination"] = to_string(traj.termination);
  summary["xi_end"] = traj.end_param();

  CsvTable table;
  table.metadata = run.metadata("travelingwave", "none");
  table.columns = columns;
  for (const auto& [xi, state] : sample_uniform(traj, step)) {
    std::vector<double> row = {xi};
    for (Eigen::Index i = 0; i < state.size(); ++i) row.push_back(state[i]);
    table.rows.push_back(std::move(row));
  }
  run.emit_csv(table, false);
  run.emit_json(summary);

  if (full_span && mode != "phase_plane" && traj.stopped_early()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "travelingwave: integration stopped (" << to_string(traj.termination)
        << ") at xi=" << traj.end_param() << " before xi_max=" << xi_max;
    throw NumericalError(msg.str());
  }
  return exit_ok;
}

// ------------------------------------------------------------- montecarlo

int cmd_montecarlo(const Run& run) {
  const ModelEntry model = model_from(run.config);
  const Section grid(run.config.value("grid", json()), "grid",
                     {"sigmas", "particles", "t_end", "dt", "points", "bandwidth", "seed"});
  const InitialProfile prof = profile_of(run, model.spec.dim());
  ConvergenceSettings cfg;
  cfg.sigmas = grid.numbers("sigmas");
  if (cfg.sigmas.empty()) throw ConfigError("'grid.sigmas' must not be empty");
  for (double s : cfg.sigmas)
    if (!(s >= 0)) throw ConfigError("'grid.sigmas' must be non-negative");
  const long N = grid.integer("particles", 100000);
  if (N < 1) throw ConfigError("'grid.particles' must be at least 1");
  cfg.particles = static_cast<std::size_t>(N);
  cfg.t_end = grid.number("t_end", 1.0);
  cfg.dt = grid.number("dt", 0.005);
  cfg.bandwidth = grid.number("bandwidth", 0.0);
  const long seed = grid.integer("seed", 0);
  if (seed < 0) throw ConfigError("'grid.seed' must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  const long points = grid.integer("points", 128);
  if (points < 2) throw ConfigError("'grid.points' must be at least 2");
  if (!(cfg.t_end > 0) || !(cfg.dt > 0) || cfg.bandwidth < 0)
    throw ConfigError("'grid.t_end' and 'grid.dt' must be positive, 'grid.bandwidth' >= 0");
  cfg.x_grid = uniform_grid(prof, static_cast<int>(points));

  ScanSettings scan;
  scan.horizon = cfg.t_end;
  const auto report = blowup_report(model.spec.inviscid(), prof, uniform_grid(prof), scan);
  if (report.verdict == Verdict::blows_up) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "montecarlo: the deterministic solution blows up at T*=" << *report.t_star
        << " <= t_end; convergence is only claimed for continuous solutions";
    throw NumericalError(msg.str());
  }

  const auto rows = convergence_study(model.spec, prof, cfg);
  const std::string seed_text = std::to_string(cfg.seed);
  CsvTable table;
  table.metadata = run.metadata("montecarlo", seed_text);
  table.metadata.emplace_back("seed_policy", "every sigma row uses the same seed");
  table.metadata.emplace_back("particles", std::to_string(cfg.particles));
  table.columns = {"sigma", "error", "bandwidth"};
  for (const auto& r : rows) table.rows.push_back({r.sigma, r.error, r.fields.bandwidth});
  run.emit_csv(table, true);

  if (run.output.has("fields_prefix")) {
    const std::string prefix = resolve(run.base_dir, run.output.string("fields_prefix"));
    const int n = model.spec.dim();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      CsvTable f;
      f.metadata = run.metadata("montecarlo", seed_text);
      f.metadata.emplace_back("sigma", format_double(rows[k].sigma));
      f.metadata.emplace_back("bandwidth", format_double(rows[k].fields.bandwidth));
      f.columns = {"x", "rho"};
      for (int i = 1; i <= n; ++i) f.columns.push_back("V" + std::to_string(i) + "_hat");
      const auto& fe = rows[k].fields;
      for (std::size_t j = 0; j < fe.x_grid.size(); ++j) {
        std::vector<double> row = {fe.x_grid[j], fe.rho[j]};
        for (int i = 0; i < n; ++i) row.push_back(fe.v_hat(i, static_cast<Eigen::Index>(j)));
        f.rows.push_back(std::move(row));
      }
      write_csv(prefix + "_" + std::to_string(k) + ".csv", f);
    }
  }
  return exit_ok;
}

// ----------------------------------------------------------------- models

int cmd_models(const Run& run) {
  for (const char* key : {"model", "params", "profile", "grid"})
    if (run.config.contains(key))
      throw ConfigError(std::string("models: '") + key + "' is not used");
  json j = models_catalog();
  j["version"] = kVersion;
  run.emit_json(j);
  return exit_ok;
}

}  // namespace

InitialProfile profile_from_json(const json& section, int n,
                                 const std::string& base_dir) {
  const Section s(section, "profile", {"components", "domain", "periodic", "file"});
  const bool periodic = s.boolean("periodic", false);
  if (s.has("components") == s.has("file"))
    throw ConfigError("'profile' needs exactly one of 'components' and 'file'");

  if (s.has("file")) {
    if (s.has("domain"))
      throw ConfigError("'profile.domain' is taken from the table; remove it");
    const CsvTable t = read_csv(resolve(base_dir, s.string("file")));
    const auto cols = t.columns.size();
    if (cols != static_cast<std::size_t>(1 + n) && cols != static_cast<std::size_t>(1 + 2 * n))
      throw ConfigError("profile table needs columns x, V_1..V_n [, V_1'..V_n']");
    std::vector<double> x;
    Matrix values(n, static_cast<Eigen::Index>(t.rows.size()));
    std::optional<Matrix> derivs;
    if (cols == static_cast<std::size_t>(1 + 2 * n))
      derivs = Matrix(n, static_cast<Eigen::Index>(t.rows.size()));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      x.push_back(t.rows[r][0]);
      for (int i = 0; i < n; ++i) {
        values(i, static_cast<Eigen::Index>(r)) = t.rows[r][1 + i];
        if (derivs) (*derivs)(i, static_cast<Eigen::Index>(r)) = t.rows[r][1 + n + i];
      }
    }
    return InitialProfile::sampled(std::move(x), std::move(values), std::move(derivs), periodic);
  }

  const json& comps = s.raw("components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != n)
    throw ConfigError("'profile.components' must list " + std::to_string(n) + " expressions");
  std::vector<Expression> f, df;
  for (const auto& c : comps) {
    if (!c.is_string()) throw ConfigError("'profile.components' entries must be strings");
    f.push_back(Expression::parse(c.get<std::string>()));
    df.push_back(f.back().derivative());
  }
  const auto dom = s.numbers("domain");
  if (dom.size() != 2 || !(dom[0] < dom[1]))
    throw ConfigError("'profile.domain' must be [lo, hi] with lo < hi");
  auto eval = [n](const std::vector<Expression>& e) {
    return [e, n](double x) {
      Vector v(n);
      for (int i = 0; i < n; ++i) v[i] = e[i](x);
      return v;
    };
  };
  return InitialProfile::analytic(n, eval(f), eval(df), {dom[0], dom[1]}, periodic);
}

json models_catalog() {
  json list = json::array();
  for (ModelName m : all_models()) {
    const ModelEntry e = build(m);
    json params = json::array();
    for (const auto& p : param_schema(m))
      params.push_back({{"key", p.key},
                        {"default", nullable(p.default_value)},
                        {"min", nullable(p.min)},
                        {"meaning", p.meaning}});
    list.push_back({{"name", to_string(m)},
                    {"n", e.spec.dim()},
                    {"params", params},
                    {"criteria", e.criteria},
                    {"notes", e.notes}});
  }
  return {{"models", list}};
}

int run_config(const json& config, std::ostream& out, std::ostream& err,
               const std::string& base_dir) {
  try {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    const Section top(config, "config",
                      {"command", "model", "params", "profile", "grid", "output"});
    const Section output(config.value("output", json()), "output",
                         {"report", "csv", "fields_prefix"});
    const Run run{config, out, err, base_dir, hex(fnv1a(config.dump())), output};
    const std::string command = top.string("command");
    if (command == "analyze") return cmd_analyze(run);
    if (command == "simulate") return cmd_simulate(run);
    if (command == "travelingwave") return cmd_travelingwave(run);
    if (command == "montecarlo") return cmd_montecarlo(run);
    if (command == "models") return cmd_models(run);
    throw ConfigError("unknown command '" + command + "'");
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_numerical;
  }
}

int run_config_file(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream is(path);
  if (!is) {
    err << "config error: cannot open '" << path << "'\n";
    return exit_config;
  }
  json config;
  try {
    config = json::parse(is);
  } catch (const json::parse_error& e) {
    err << "config error: " << e.what() << '\n';
    return exit_config;
  }
  const auto dir = std::filesystem::path(path).parent_path();
  return run_config(config, out, err, dir.empty() ? "." : dir.string());
}

}  // namespace nshyp::cli

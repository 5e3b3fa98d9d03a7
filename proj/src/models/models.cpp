#include "nshyp/models/models.hpp"

#include <cmath>
#include <sstream>

#include "nshyp/errors.hpp"

namespace nshyp {

namespace {

Matrix rotation() {
  Matrix Q(2, 2);
  Q << 0, -1, 1, 0;
  return Q;
}

std::optional<Matrix> nonzero(Matrix B) {
  if (B.isZero(0.0)) return std::nullopt;
  return B;
}

Matrix diag2(double a, double b) {
  Matrix B = Matrix::Zero(2, 2);
  B(0, 0) = a;
  B(1, 1) = b;
  return B;
}

}  // namespace

const char* to_string(ModelName m) {
  switch (m) {
    case ModelName::cold_plasma: return "cold_plasma";
    case ModelName::euler_poisson: return "euler_poisson";
    case ModelName::rayleigh_benard: return "rayleigh_benard";
    case ModelName::stratified_fluid: return "stratified_fluid";
    case ModelName::blood_flow: return "blood_flow";
    case ModelName::davidson: return "davidson";
  }
  return "?";
}

const std::vector<ModelName>& all_models() {
  static const std::vector<ModelName> names = {
      ModelName::cold_plasma,      ModelName::euler_poisson,
      ModelName::rayleigh_benard,  ModelName::stratified_fluid,
      ModelName::blood_flow,       ModelName::davidson};
  return names;
}

ModelName parse_model_name(const std::string& name) {
  for (ModelName m : all_models())
    if (name == to_string(m)) return m;
  throw DomainError("unknown model '" + name + "'");
}

const std::vector<ParamSpec>& param_schema(ModelName m) {
  static const std::vector<ParamSpec> cold = {
      {"nu", 0.0, 0.0, "viscosity acting on V"}};
  static const std::vector<ParamSpec> ep = {
      {"k", 1.0, std::nullopt, "force constant; k > 0 repulsive, k < 0 attractive"},
      {"n0", 1.0, 0.0, "background density"},
      {"q", 0.0, 0.0, "friction coefficient"},
      {"nu", 0.0, 0.0, "viscosity acting on V"}};
  static const std::vector<ParamSpec> convective = {
      {"nu", 0.0, 0.0, "kinematic viscosity"},
      {"kappa", 0.0, 0.0, "thermal diffusivity"}};
  static const std::vector<ParamSpec> blood = {
      {"mu", 1.0, 0.0, "coefficient of E_xx in the velocity equation"},
      {"S0", 1.0, 0.0, "unperturbed cross-section area"},
      {"P0", std::nullopt, std::nullopt, "reference pressure"},
      {"D", std::nullopt, std::nullopt, "wall rigidity"}};
  static const std::vector<ParamSpec> dav = {
      {"B0", 0.0, std::nullopt, "background magnetic field"},
      {"q", 0.0, 0.0, "collision frequency"}};
  switch (m) {
    case ModelName::cold_plasma: return cold;
    case ModelName::euler_poisson: return ep;
    case ModelName::rayleigh_benard:
    case ModelName::stratified_fluid: return convective;
    case ModelName::blood_flow: return blood;
    case ModelName::davidson: return dav;
  }
  return cold;
}

ModelEntry build(ModelName name, const ParamMap& params) {
  const auto& schema = param_schema(name);
  for (const auto& [key, value] : params) {
    bool known = false;
    for (const auto& p : schema) known = known || p.key == key;
    if (!known)
      throw DomainError(std::string("model ") + to_string(name) +
                        ": unknown parameter '" + key + "'");
    if (!std::isfinite(value))
      throw DomainError(std::string("model ") + to_string(name) +
                        ": parameter '" + key + "' is not finite");
  }
  ParamMap full;
  for (const auto& p : schema) {
    auto it = params.find(p.key);
    if (it == params.end()) {
      if (p.default_value) full[p.key] = *p.default_value;
      continue;
    }
    if (p.min && it->second < *p.min) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "model " << to_string(name) << ": parameter '" << p.key << "'="
          << it->second << " is below its minimum " << *p.min;
      throw DomainError(msg.str());
    }
    full[p.key] = it->second;
  }

  const std::string label = to_string(name);
  std::vector<std::string> criteria;
  std::string notes;
  Matrix Q;
  std::optional<Matrix> B;
  switch (name) {
    case ModelName::cold_plasma:
      Q = rotation();
      B = nonzero(diag2(full["nu"], 0.0));
      criteria = {"cold_plasma"};
      notes = "components (V, E); V^2 + E^2 is constant along characteristics";
      break;
    case ModelName::euler_poisson: {
      Q.resize(2, 2);
      Q << -full["q"], -full["k"], full["n0"], 0.0;
      B = nonzero(diag2(full["nu"], 0.0));
      if (Q == rotation()) criteria = {"cold_plasma"};
      notes = "components (V, E); k = n0 = 1, q = 0 is the cold plasma";
      break;
    }
    case ModelName::rayleigh_benard:
    case ModelName::stratified_fluid:
      Q = rotation();
      B = nonzero(diag2(full["nu"], full["kappa"]));
      criteria = {"cold_plasma"};
      notes = "the cold-plasma criterion applies to the inviscid part";
      break;
    case ModelName::blood_flow: {
      Q.resize(2, 2);
      Q << 0.0, -1.0, full["S0"], 0.0;
      Matrix b = Matrix::Zero(2, 2);
      b(0, 1) = full["mu"];
      B = nonzero(b);
      criteria = {"bloodflow_phase_plane"};
      notes = "components (V, E); traveling waves via the (E, V) phase plane";
      break;
    }
    case ModelName::davidson: {
      const double B0 = full["B0"], q = full["q"];
      Q.resize(3, 3);
      Q << -q, -B0, -1.0,  //
          B0, -q, 0.0,     //
          1.0, 0.0, 0.0;
      if (q == 0.0) criteria = {"davidson"};
      notes = "components (V1, V2, E)";
      break;
    }
  }
  return ModelEntry{name, full, SystemSpec(Q, B, label), criteria, notes};
}

ModelEntry build(const std::string& name, const ParamMap& params) {
  return build(parse_model_name(name), params);
}

double pressure_from_E(const ModelEntry& model, double E_x) {
  if (model.name != ModelName::blood_flow)
    throw DomainError(std::string("pressure_from_E: model ") +
                      to_string(model.name) + " is not blood_flow");
  const auto p0 = model.params.find("P0");
  const auto d = model.params.find("D");
  if (p0 == model.params.end() || d == model.params.end())
    throw DomainError("pressure_from_E: P0 and D must be supplied");
  return p0->second - d->second * E_x;
}

}  // namespace nshyp

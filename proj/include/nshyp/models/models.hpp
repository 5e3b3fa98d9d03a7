#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nshyp/core/system.hpp"

namespace nshyp {

enum class ModelName {
  cold_plasma,
  euler_poisson,
  rayleigh_benard,
  stratified_fluid,
  blood_flow,
  davidson,
};

const char* to_string(ModelName m);
ModelName parse_model_name(const std::string& name);
const std::vector<ModelName>& all_models();

struct ParamSpec {
  std::string key;
  std::optional<double> default_value;  // nullopt: optional, no default
  std::optional<double> min;            // inclusive lower bound
  std::string meaning;
};

const std::vector<ParamSpec>& param_schema(ModelName m);

using ParamMap = std::map<std::string, double>;

struct ModelEntry {
  ModelName name;
  ParamMap params;  // schema defaults filled in
  SystemSpec spec;
  std::vector<std::string> criteria;  // closed-form criteria that apply
  std::string notes;
};

/// Builds the system of a named model. Unknown parameter keys and values
/// below the schema minimum are DomainErrors.
///   cold_plasma(nu)               Q = [[0,-1],[1,0]],        B = diag(nu, 0)
///   euler_poisson(k, n0, q, nu)   Q = [[-q,-k],[n0,0]],       B = diag(nu, 0)
///   rayleigh_benard(nu, kappa)    Q = [[0,-1],[1,0]],        B = diag(nu, kappa)
///   stratified_fluid(nu, kappa)   same as rayleigh_benard
///   blood_flow(mu, S0, P0, D)     Q = [[0,-1],[S0,0]],       B = [[0,mu],[0,0]]
///   davidson(B0, q)               Q = [[-q,-B0,-1],[B0,-q,0],[1,0,0]]
/// A zero B is omitted.
ModelEntry build(ModelName name, const ParamMap& params = {});
ModelEntry build(const std::string& name, const ParamMap& params = {});

/// Wall pressure P0 - D E_x of the blood-flow model; P0 and D must have been
/// supplied.
double pressure_from_E(const ModelEntry& model, double E_x);

}  // namespace nshyp

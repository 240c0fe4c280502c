#include "sphsum/json_io.hpp"

#include <fstream>

#include "sphsum/errors.hpp"

namespace sphsum {
namespace {

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw config_error(std::string("missing numeric field '") + key + "'");
  return j[key].get<double>();
}

std::vector<double> require_vector(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw config_error(std::string("missing array field '") + key + "'");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw config_error(std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Weight weight_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw config_error("weight spec needs a 'family' field");
  const std::string family = j["family"].get<std::string>();
  if (family == "gaussian") {
    const double mu = j.value("mu", 0.0);
    const double sigma = j.value("sigma", 1.0);
    if (sigma <= 0.0) throw config_error("gaussian weight needs sigma > 0");
    return Weight::gaussian(mu, sigma, j.value("amplitude", 1.0));
  }
  if (family == "laguerre") {
    const double p = require_number(j, "p");
    if (p <= -1.0) throw config_error("laguerre weight needs p > -1");
    return Weight::laguerre(p, j.value("amplitude", 1.0));
  }
  if (family == "poly_exp") {
    const std::vector<double> coeffs = require_vector(j, "coeffs");
    const double rate = j.value("rate", 1.0);
    if (rate <= 0.0) throw config_error("poly_exp weight needs rate > 0");
    return Weight::poly_exp(coeffs, rate);
  }
  if (family == "poly_gauss") {
    const std::vector<double> coeffs = require_vector(j, "coeffs");
    const double sigma = j.value("sigma", 1.0);
    if (sigma <= 0.0) throw config_error("poly_gauss weight needs sigma > 0");
    return Weight::poly_gauss(coeffs, sigma);
  }
  if (family == "table") {
    const std::vector<double> xs = require_vector(j, "x");
    const std::vector<double> ws = require_vector(j, "w");
    const std::string supp = j.value("support", "full");
    if (xs.size() != ws.size()) throw config_error("table weight needs matching x/w arrays");
    return Weight::table(xs, ws, supp == "half" ? Support::half_line : Support::full_line);
  }
  throw config_error("unknown weight family '" + family + "'");
}

EnsembleSpec ensemble_from_json(const json& j) {
  if (!j.is_object() || !j.contains("variant"))
    throw config_error("ensemble spec needs a 'variant' field");
  const std::string variant = j["variant"].get<std::string>();
  if (variant == "gue") return EnsembleSpec::gue(static_cast<int>(require_number(j, "n")));
  if (variant == "lue") {
    const int n = static_cast<int>(require_number(j, "n"));
    const double alpha = require_number(j, "alpha");
    if (j.value("as_pe", false)) return EnsembleSpec::lue_as_pe(n, alpha);
    return EnsembleSpec::lue(n, alpha);
  }
  if (variant == "pe") {
    if (!j.contains("weights") || !j["weights"].is_array() || j["weights"].empty())
      throw config_error("pe ensemble needs a nonempty 'weights' array");
    std::vector<Weight> weights;
    for (const auto& w : j["weights"]) weights.push_back(weight_from_json(w));
    if (j.contains("n") && static_cast<int>(require_number(j, "n")) !=
                               static_cast<int>(weights.size()))
      throw dimension_error("pe ensemble: n does not match number of weights");
    return EnsembleSpec::pe(std::move(weights));
  }
  if (variant == "dpe") {
    if (!j.contains("w")) throw config_error("dpe ensemble needs a 'w' weight spec");
    return EnsembleSpec::dpe(static_cast<int>(require_number(j, "n")),
                             weight_from_json(j["w"]));
  }
  throw config_error("unknown ensemble variant '" + variant + "'");
}

MatrixModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("variant"))
    throw config_error("model spec needs a 'variant' field");
  const std::string variant = j["variant"].get<std::string>();
  if (variant == "gue") return MatrixModel::gue(static_cast<int>(require_number(j, "n")));
  if (variant == "lue") {
    const double alpha = require_number(j, "alpha");
    if (alpha != std::floor(alpha) || alpha < 0.0)
      throw capability_error("sampling a LUE model needs integer alpha >= 0");
    return MatrixModel::lue(static_cast<int>(require_number(j, "n")),
                            static_cast<int>(alpha));
  }
  if (variant == "fixed") return MatrixModel::fixed(require_vector(j, "x"));
  throw config_error("unknown model variant '" + variant + "'");
}

std::vector<std::vector<double>> grid_from_json(const json& j, int n) {
  std::vector<std::vector<double>> out;
  if (j.is_array()) {
    for (const auto& row : j) {
      if (!row.is_array()) throw config_error("grid rows must be arrays");
      std::vector<double> v;
      for (const auto& e : row) v.push_back(e.get<double>());
      if (static_cast<int>(v.size()) != n)
        throw dimension_error("grid row has wrong dimension");
      out.push_back(std::move(v));
    }
    return out;
  }
  if (j.is_object()) {
    const double from = require_number(j, "from");
    const double to = require_number(j, "to");
    const int count = static_cast<int>(require_number(j, "count"));
    if (count < 1) throw config_error("grid count must be >= 1");
    std::vector<double> ray(n, 1.0);
    if (j.contains("ray")) {
      ray = require_vector(j, "ray");
      if (static_cast<int>(ray.size()) != n) throw dimension_error("grid ray has wrong dimension");
    } else if (n > 1) {
      throw config_error("grid linspace with n > 1 needs a 'ray' direction");
    }
    for (int i = 0; i < count; ++i) {
      const double t = count == 1 ? from : from + (to - from) * i / (count - 1);
      std::vector<double> v(n);
      for (int d = 0; d < n; ++d) v[d] = t * ray[d];
      out.push_back(std::move(v));
    }
    return out;
  }
  throw config_error("grid must be an array of points or a linspace object");
}

json load_config(const std::string& config_path, const std::string& inline_json) {
  if (!config_path.empty() && !inline_json.empty())
    throw config_error("give either --config or --json, not both");
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw config_error("cannot open config file: " + config_path);
      return json::parse(in);
    }
    if (!inline_json.empty()) return json::parse(inline_json);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("malformed JSON: ") + e.what());
  }
  throw config_error("missing configuration: pass --config FILE or --json STRING");
}

}  // namespace sphsum

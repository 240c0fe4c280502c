#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sphsum/ensembles.hpp"
#include "sphsum/mc.hpp"

namespace sphsum {

using json = nlohmann::json;

/// {"family": "gaussian"|"laguerre"|"poly_exp"|"poly_gauss"|"table", ...}
Weight weight_from_json(const json& j);

/// {"variant": "gue"|"lue"|"pe"|"dpe", "n": int, "alpha": real?,
///  "weights": [WeightSpec...]?, "w": WeightSpec?}
EnsembleSpec ensemble_from_json(const json& j);

/// Samplable model: {"variant": "gue"|"lue"|"fixed", "n": int,
///  "alpha": int?, "x": [reals]?}
MatrixModel model_from_json(const json& j);

/// Grid of n-vectors: either an explicit list [[...], ...] or a linspace
/// {"from": a, "to": b, "count": m} (n = 1), optionally with
/// "ray": [d_1..d_n] mapping each linspace value t to t * d (n >= 2).
std::vector<std::vector<double>> grid_from_json(const json& j, int n);

/// Loads either a file path or an inline JSON string.
json load_config(const std::string& config_path, const std::string& inline_json);

}  // namespace sphsum

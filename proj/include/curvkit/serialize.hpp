#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "curvkit/bounds.hpp"
#include "curvkit/curvature.hpp"
#include "curvkit/local_calculus.hpp"
#include "curvkit/metric.hpp"
#include "curvkit/semigroup.hpp"

namespace curvkit {

// JSON views of the library's result types. Extended reals and N = inf are
// written as the string "inf".

nlohmann::json to_json(const ExtendedReal& v);
nlohmann::json to_json(const Dimension& n);
nlohmann::json to_json(const WeightedGraph& g, const CurvatureProfile& p);
nlohmann::json to_json(const WeightedGraph& g, const MetricTable& t);
nlohmann::json to_json(const WeightedGraph& g, const LocalForms& lf);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const VerifierRow& row, const nlohmann::json& params);

/// Pretty-printed document with a trailing newline.
std::string dump(const nlohmann::json& j);

/// Per-vertex slack as CSV: vertex,value,bound,slack.
std::string slack_csv(const Certificate& c);

}  // namespace curvkit

#pragma once

#include <istream>
#include <string>
#include <vector>

#include "json.hpp"

#include "chainlab/body.hpp"
#include "chainlab/chaining.hpp"
#include "chainlab/checks.hpp"
#include "chainlab/gaussian.hpp"
#include "chainlab/kfun.hpp"

namespace chainlab {

using Json = nlohmann::ordered_json;

/// Finite doubles as numbers; +-inf as "inf"/"-inf"; NaN as null.
Json real_to_json(double v);
double real_from_json(const Json& j);

/// Body schema: {"kind": "lq_ellipsoid" | "octahedron" | "euclidean_ball" |
/// "absconv_polytope" | "perturbed_simplex", "params": {...}}.
Json body_to_json(const BodySpec& spec);
BodySpec body_from_json(const Json& j);

/// {"kind": "euclidean", "params": {}} or {"kind": "weighted_lp", "params": {"p": P, "w": [...]}}.
Json ambient_to_json(const AmbientNorm& ambient);
AmbientNorm ambient_from_json(const Json& j);

Json points_to_json(const std::vector<Point>& pts);
Json to_json(const KResult& k);
Json to_json(const EntropyBracket& br, bool with_net = false);
Json to_json(const EntropyProfile& prof, bool with_nets = false);
Json to_json(const InterpolationResult& res);
Json to_json(const AdmissibleSequence& seq);
Json to_json(const McEstimate& mc);
Json to_json(const BoundReport& rep);
Json to_json(const ContractionReport& rep);
Json to_json(const UnconditionalReport& rep);
Json to_json(const CounterexampleReport& rep);

/// Header line plus one row, both comma separated.
std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& rep);

/// One point per row, comma or whitespace separated; blank lines and lines starting with '#' are skipped.
PointCloud read_cloud_csv(std::istream& in, const std::string& provenance = "csv");
PointCloud read_cloud_csv_file(const std::string& path);

/// Shortest round-trip decimal text for v.
std::string format_real(double v);
/// v with 6 significant digits.
std::string format_6g(double v);

}  // namespace chainlab

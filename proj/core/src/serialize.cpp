#include "chainlab/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace chainlab {

namespace {

std::vector<double> reals(const Json& j, const char* what) {
  require(j.is_array(), std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(real_from_json(v));
  return out;
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json reals_to_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(real_to_json(x));
  return a;
}

}  // namespace

Json real_to_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "Infinity") return kInf;
    if (s == "-inf" || s == "-Infinity") return -kInf;
  }
  throw InvalidArgument("expected a real number, got " + j.dump());
}

Json body_to_json(const BodySpec& spec) {
  Json j;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LqEllipsoid>) {
          j["kind"] = "lq_ellipsoid";
          j["params"] = {{"q", real_to_json(s.q)}, {"b", reals_to_json(s.b)}};
        } else if constexpr (std::is_same_v<T, Octahedron>) {
          j["kind"] = "octahedron";
          j["params"] = {{"b", reals_to_json(s.b)}};
        } else if constexpr (std::is_same_v<T, EuclideanBall>) {
          j["kind"] = "euclidean_ball";
          j["params"] = {{"radius", s.radius}, {"dim", s.dim}};
        } else if constexpr (std::is_same_v<T, AbsConvPolytope>) {
          j["kind"] = "absconv_polytope";
          j["params"] = {{"vertices", points_to_json(s.vertices)}};
        } else {
          j["kind"] = "perturbed_simplex";
          j["params"] = {{"d", s.d}, {"eps", s.eps}};
        }
      },
      spec);
  return j;
}

BodySpec body_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (kind == "lq_ellipsoid") return LqEllipsoid{real_from_json(field(params, "q")), reals(field(params, "b"), "b")};
  if (kind == "octahedron") return Octahedron{reals(field(params, "b"), "b")};
  if (kind == "euclidean_ball") {
    const double r = params.contains("radius") ? real_from_json(params.at("radius")) : 1.0;
    return EuclideanBall{r, field(params, "dim").get<std::size_t>()};
  }
  if (kind == "absconv_polytope") {
    std::vector<Point> v;
    for (const auto& p : field(params, "vertices")) v.push_back(reals(p, "vertex"));
    return AbsConvPolytope{std::move(v)};
  }
  if (kind == "perturbed_simplex")
    return PerturbedSimplex{field(params, "d").get<std::size_t>(), real_from_json(field(params, "eps"))};
  throw InvalidArgument("unknown body kind \"" + kind + "\"");
}

Json ambient_to_json(const AmbientNorm& ambient) {
  if (ambient.is_euclidean()) return Json{{"kind", "euclidean"}, {"params", Json::object()}};
  return Json{{"kind", "weighted_lp"},
              {"params", {{"p", real_to_json(ambient.p())}, {"w", reals_to_json(ambient.weights())}}}};
}

AmbientNorm ambient_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "euclidean") return AmbientNorm::euclidean();
  if (kind == "weighted_lp") {
    const Json& params = field(j, "params");
    return AmbientNorm::weighted_lp(real_from_json(field(params, "p")), reals(field(params, "w"), "w"));
  }
  throw InvalidArgument("unknown ambient kind \"" + kind + "\"");
}

Json points_to_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(reals_to_json(p));
  return a;
}

Json to_json(const KResult& k) {
  return Json{{"t", real_to_json(k.t)},
              {"value", real_to_json(k.value)},
              {"gap", real_to_json(k.gap)},
              {"minimizer", reals_to_json(k.minimizer)},
              {"certificate", reals_to_json(k.certificate)},
              {"nonunique", k.nonunique}};
}

Json to_json(const EntropyBracket& br, bool with_net) {
  Json j{{"n", br.n},
         {"lower", real_to_json(br.lower)},
         {"upper", real_to_json(br.upper)},
         {"cardinality_bound", br.cardinality_bound},
         {"method", method_name(br.method)},
         {"resolution", real_to_json(br.resolution)},
         {"net_size", br.net.size()}};
  if (with_net) j["net"] = points_to_json(br.net);
  return j;
}

Json to_json(const EntropyProfile& prof, bool with_nets) {
  Json br = Json::array();
  for (const auto& b : prof.brackets) br.push_back(to_json(b, with_nets));
  return Json{{"source", prof.source},
              {"brackets", br},
              {"tail_bound", real_to_json(prof.tail_bound())},
              {"tail", reals_to_json(prof.tail)},
              {"tail_model", prof.tail_model},
              {"resolution", real_to_json(prof.resolution)}};
}

Json to_json(const InterpolationResult& res) {
  Json evals = Json::array();
  for (const auto& ev : res.evals) {
    Json levels = Json::array();
    for (const auto& lv : ev.levels)
      levels.push_back(Json{{"n", lv.n},
                            {"t", real_to_json(lv.t)},
                            {"upper", real_to_json(lv.upper)},
                            {"lower", real_to_json(lv.lower)},
                            {"resolution", real_to_json(lv.resolution)},
                            {"method", lv.method},
                            {"cloud_size", lv.cloud_size}});
    evals.push_back(Json{{"a", real_to_json(ev.a)},
                         {"value", real_to_json(ev.value)},
                         {"pruned", ev.pruned},
                         {"tail", real_to_json(ev.tail)},
                         {"levels", levels}});
  }
  return Json{{"value", real_to_json(res.value)}, {"best_a", real_to_json(res.best_a)}, {"evaluations", evals}};
}

Json to_json(const AdmissibleSequence& seq) {
  Json levels = Json::array();
  for (const auto& lv : seq.levels) levels.push_back(points_to_json(lv));
  return Json{{"p", real_to_json(seq.p)},
              {"a", real_to_json(seq.a)},
              {"ambient", ambient_to_json(seq.ambient)},
              {"levels", levels},
              {"tail", reals_to_json(seq.tail)}};
}

Json to_json(const McEstimate& mc) {
  return Json{{"mean", real_to_json(mc.mean)},
              {"stderr", real_to_json(mc.stderr_)},
              {"samples", mc.samples},
              {"seed", mc.seed}};
}

Json to_json(const BoundReport& rep) {
  return Json{{"dudley", real_to_json(rep.dudley)},
              {"interpolation", real_to_json(rep.interpolation)},
              {"best_a", real_to_json(rep.best_a)},
              {"qconvex", real_to_json(rep.qconvex)},
              {"q", real_to_json(rep.q)},
              {"trivial_lower", real_to_json(rep.trivial_lower)},
              {"gamma_upper_certified", real_to_json(rep.gamma_upper_certified)},
              {"mc", to_json(rep.mc)},
              {"ratios",
               {{"dudley", real_to_json(rep.dudley_ratio)},
                {"interpolation", real_to_json(rep.interpolation_ratio)},
                {"qconvex", real_to_json(rep.qconvex_ratio)},
                {"trivial_lower", real_to_json(rep.trivial_lower_ratio)},
                {"gamma_upper_certified", real_to_json(rep.gamma_ratio)}}},
              {"sandwich_ok", rep.sandwich_ok},
              {"profile", to_json(rep.profile)},
              {"interpolation_detail", to_json(rep.interp)}};
}

Json to_json(const ContractionReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back(Json{{"t", real_to_json(r.t)},
                        {"n", r.n},
                        {"lhs", real_to_json(r.lhs)},
                        {"rhs", real_to_json(r.rhs)},
                        {"margin", real_to_json(r.margin)},
                        {"ok", r.ok}});
  return Json{{"q", real_to_json(rep.q)},
              {"slack", real_to_json(rep.slack)},
              {"k_emp", real_to_json(rep.k_emp)},
              {"k_by_t", reals_to_json(rep.k_by_t)},
              {"violations", rep.violations},
              {"notices", rep.notices},
              {"rows", rows}};
}

Json to_json(const UnconditionalReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back(Json{{"t", real_to_json(r.t)},
                        {"max_ratio", real_to_json(r.max_ratio)},
                        {"bound", real_to_json(r.bound)},
                        {"pairs", r.pairs},
                        {"ok", r.ok}});
  return Json{{"q", real_to_json(rep.q)}, {"ok", rep.ok}, {"notices", rep.notices}, {"rows", rows}};
}

Json to_json(const CounterexampleReport& rep) {
  return Json{{"d", rep.d},
              {"eps", real_to_json(rep.eps)},
              {"t", real_to_json(rep.t)},
              {"guaranteed", rep.guaranteed},
              {"witness_norm", real_to_json(rep.witness_norm)},
              {"witness_threshold", real_to_json(rep.witness_threshold)},
              {"tested", rep.tested},
              {"passed", rep.passed},
              {"max_residual", real_to_json(rep.max_residual)},
              {"all_pass", rep.all_pass},
              {"vertex_entropy_lower", reals_to_json(rep.vertex_entropy_lower)}};
}

std::string bound_report_csv_header() {
  return "dudley,interpolation,best_a,qconvex,q,trivial_lower,gamma_upper_certified,mc_mean,mc_stderr";
}

std::string bound_report_csv_row(const BoundReport& rep) {
  std::string s;
  for (double v : {rep.dudley, rep.interpolation, rep.best_a, rep.qconvex, rep.q, rep.trivial_lower,
                   rep.gamma_upper_certified, rep.mc.mean, rep.mc.stderr_}) {
    if (!s.empty()) s += ',';
    s += format_real(v);
  }
  return s;
}

PointCloud read_cloud_csv(std::istream& in, const std::string& provenance) {
  PointCloud cloud;
  cloud.provenance = provenance;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    std::istringstream ss(line);
    std::string tok;
    Point p;
    while (ss >> tok) {
      if (p.empty() && tok[0] == '#') break;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      require(ec == std::errc() && ptr == tok.data() + tok.size(),
              "cloud csv line " + std::to_string(lineno) + ": bad number \"" + tok + "\"");
      p.push_back(v);
    }
    if (p.empty()) continue;
    require(all_finite(p), "cloud csv line " + std::to_string(lineno) + ": non-finite coordinate");
    if (!cloud.points.empty())
      require(p.size() == cloud.points.front().size(), "cloud csv line " + std::to_string(lineno) + ": dimension mismatch");
    cloud.points.push_back(std::move(p));
  }
  require(!cloud.points.empty(), "cloud csv: no points");
  return cloud;
}

PointCloud read_cloud_csv_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open " + path);
  return read_cloud_csv(in, "csv:" + path);
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_6g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace chainlab

#include "chainlab/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "chainlab/btcloud.hpp"
#include "chainlab/parallel.hpp"
#include "chainlab/rng.hpp"

namespace chainlab {

namespace {

const std::set<std::string> kExperiments = {"ellipsoid", "octahedron", "counterexample", "contraction", "sandwich"};

double parse_number(const std::string& s, const std::string& context) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(!s.empty() && ec == std::errc() && ptr == s.data() + s.size(),
          "decay: bad number \"" + s + "\" in \"" + context + "\"");
  return v;
}

std::vector<std::size_t> default_dims(const std::string& experiment) {
  if (experiment == "ellipsoid") return {8, 16, 32, 64};
  if (experiment == "octahedron") return {64, 256};
  if (experiment == "counterexample") return {16};
  if (experiment == "contraction") return {4};
  return {8};
}

std::string default_decay(const std::string& experiment) {
  if (experiment == "ellipsoid") return "k^-0.5*log^-1";
  if (experiment == "octahedron") return "log(k+1)^-0.5";
  if (experiment == "contraction") return "0.5^k";
  return "";
}

ProfileOptions profile_options(const ExperimentConfig& cfg, std::uint64_t salt) {
  ProfileOptions o;
  o.cloud_size = cfg.cloud_size;
  o.bt_cloud_size = cfg.bt_cloud_size;
  o.fresh_size = cfg.fresh_size;
  o.seed = mix_seed(cfg.seed, salt);
  return o;
}

std::string join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

std::string f(double v) { return format_real(v); }

void add(ExperimentResult& res, std::string id, std::string description, bool passed, std::string detail) {
  res.assertions.push_back({std::move(id), std::move(description), passed, std::move(detail)});
  res.passed = res.passed && passed;
}

std::vector<std::size_t> dims(const ExperimentConfig& cfg) { return cfg.d.empty() ? default_dims(cfg.experiment) : cfg.d; }

std::string decay_of(const ExperimentConfig& cfg) { return cfg.decay.empty() ? default_decay(cfg.experiment) : cfg.decay; }

Series series(const std::string& name, const std::vector<double>& x, const std::vector<double>& y) {
  return Series{name, x, y};
}

// ---- ellipsoid ----

ExperimentResult run_ellipsoid(const ExperimentConfig& cfg) {
  const auto ds = dims(cfg);
  struct Row {
    double sigma, dudley, interp, best_a, qconvex, lower, mc, mc_err;
    Json detail;
  };
  std::vector<Row> rows(ds.size());
  parallel_for(ds.size(), [&](std::size_t i) {
    const auto b = parse_decay(decay_of(cfg), ds[i]);
    const Body body(LqEllipsoid{cfg.q, b});
    const auto euclid = AmbientNorm::euclidean();
    const auto opts = profile_options(cfg, ds[i]);
    const auto prof = body_profile(body, euclid, cfg.n_max, opts);
    const auto interp = interpolation_bound(body, euclid, cfg.p, default_a_grid(body, euclid, cfg.a_points), cfg.n_max,
                                            opts, &prof);
    const auto mc = mc_sup(body, cfg.samples, mix_seed(cfg.seed, 0x6a + ds[i]));
    Row& r = rows[i];
    double s2 = 0.0;
    for (double v : b) s2 += v * v;
    r.sigma = std::sqrt(s2);
    r.dudley = dudley_bound(prof, cfg.p);
    r.interp = interp.value;
    r.best_a = interp.best_a;
    r.qconvex = qconvex_bound(prof, cfg.p, std::max(cfg.q, 2.0));
    r.lower = trivial_lower_bound(prof, cfg.p);
    r.mc = mc.mean;
    r.mc_err = mc.stderr_;
    Json& e = r.detail;
    e["d"] = ds[i];
    e["body"] = body_to_json(body.spec());
    e["sigma"] = r.sigma;
    e["dudley"] = r.dudley;
    e["interpolation"] = r.interp;
    e["best_a"] = r.best_a;
    e["qconvex"] = r.qconvex;
    e["trivial_lower"] = r.lower;
    e["mc"] = to_json(mc);
    e["profile"] = to_json(prof);
    e["interpolation_detail"] = to_json(interp);
  });
  ExperimentResult res;
  res.csv = join({"d", "sigma", "dudley", "interpolation", "best_a", "qconvex", "trivial_lower", "mc_mean", "mc_stderr",
                  "interpolation_over_sigma", "dudley_over_sigma"});
  Json entries = Json::array();
  std::vector<double> x, yd, yi, yq, yl, ym, ys;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const Row& r = rows[i];
    res.csv += join({std::to_string(ds[i]), f(r.sigma), f(r.dudley), f(r.interp), f(r.best_a), f(r.qconvex), f(r.lower),
                     f(r.mc), f(r.mc_err), f(r.interp / r.sigma), f(r.dudley / r.sigma)});
    entries.push_back(r.detail);
    x.push_back(static_cast<double>(ds[i]));
    yd.push_back(r.dudley);
    yi.push_back(r.interp);
    yq.push_back(r.qconvex);
    yl.push_back(r.lower);
    ym.push_back(r.mc);
    ys.push_back(r.sigma);
    const double ratio = r.interp / r.sigma;
    add(res, "AC5", "d=" + std::to_string(ds[i]) + ": interpolation / (sum b^2)^{1/2} within band",
        ratio >= cfg.ratio_low && ratio <= cfg.ratio_high,
        "ratio=" + format_6g(ratio) + " band=[" + format_6g(cfg.ratio_low) + ", " + format_6g(cfg.ratio_high) + "]");
  }
  std::vector<std::size_t> order(ds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ds[a] < ds[b]; });
  bool increasing = true;
  std::string detail;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Row& r = rows[order[k]];
    detail += (k ? " " : "") + format_6g(r.dudley / r.sigma);
    if (k > 0) {
      const Row& prev = rows[order[k - 1]];
      increasing = increasing && r.dudley / r.sigma > prev.dudley / prev.sigma;
    }
  }
  if (ds.size() > 1) add(res, "AC5", "dudley / (sum b^2)^{1/2} strictly increasing in d", increasing, detail);
  res.report["entries"] = entries;
  res.plot = PlotSpec{"Ellipsoid bounds, q=" + format_6g(cfg.q), "dimension d", "bound", true, false,
                      {series("dudley", x, yd), series("interpolation", x, yi), series("q-convex", x, yq),
                       series("trivial lower", x, yl), series("mc", x, ym), series("(sum b^2)^1/2", x, ys)}};
  return res;
}

// ---- octahedron and sandwich share the full bound report ----

struct SandwichRow {
  std::size_t d = 0;
  double sigma = 0.0;
  BoundReport rep;
  Json body;
};

SandwichConfig sandwich_config(const ExperimentConfig& cfg, std::size_t d) {
  SandwichConfig sc;
  sc.p = cfg.p;
  sc.n_max = cfg.n_max;
  sc.samples = cfg.samples;
  sc.seed = mix_seed(cfg.seed, 0x5a + d);
  sc.profile = profile_options(cfg, d);
  sc.c_low = cfg.c_low;
  sc.c_up = cfg.c_up;
  sc.test_cloud = 4096;
  return sc;
}

void finish_sandwich(ExperimentResult& res, const std::vector<SandwichRow>& rows, const std::string& title) {
  res.csv = join({"d", "sigma", "dudley", "interpolation", "best_a", "qconvex", "q", "trivial_lower",
                  "gamma_upper_certified", "mc_mean", "mc_stderr"});
  Json entries = Json::array();
  std::vector<double> x, yd, yi, yq, yl, yg, ym;
  for (const auto& r : rows) {
    const auto& b = r.rep;
    res.csv += join({std::to_string(r.d), f(r.sigma), f(b.dudley), f(b.interpolation), f(b.best_a), f(b.qconvex), f(b.q),
                     f(b.trivial_lower), f(b.gamma_upper_certified), f(b.mc.mean), f(b.mc.stderr_)});
    Json e = to_json(b);
    e["d"] = r.d;
    e["sigma"] = r.sigma;
    e["body"] = r.body;
    entries.push_back(std::move(e));
    x.push_back(static_cast<double>(r.d));
    yd.push_back(b.dudley);
    yi.push_back(b.interpolation);
    yq.push_back(b.qconvex);
    yl.push_back(b.trivial_lower);
    yg.push_back(b.gamma_upper_certified);
    ym.push_back(b.mc.mean);
  }
  res.report["entries"] = entries;
  res.plot = PlotSpec{title, "dimension d", "bound", true, false,
                      {series("dudley", x, yd), series("interpolation", x, yi), series("q-convex", x, yq),
                       series("trivial lower", x, yl), series("gamma (built sequence)", x, yg), series("mc", x, ym)}};
}

ExperimentResult run_octahedron(const ExperimentConfig& cfg) {
  const auto ds = dims(cfg);
  std::vector<SandwichRow> rows(ds.size());
  parallel_for(ds.size(), [&](std::size_t i) {
    const auto b = parse_decay(decay_of(cfg), ds[i]);
    const Body body(Octahedron{b});
    SandwichRow& r = rows[i];
    r.d = ds[i];
    for (std::size_t k = 0; k < b.size(); ++k) r.sigma = std::max(r.sigma, b[k] * std::sqrt(std::log(k + 2.0)));
    r.body = body_to_json(body.spec());
    r.rep = sandwich_report(body, AmbientNorm::euclidean(), sandwich_config(cfg, ds[i]));
  });
  ExperimentResult res;
  for (const auto& r : rows) {
    const auto& b = r.rep;
    const std::string tag = "d=" + std::to_string(r.d) + ": ";
    add(res, "AC6", tag + "interpolation <= interp_max * sigma", b.interpolation <= cfg.interp_max * r.sigma,
        "interpolation=" + format_6g(b.interpolation) + " sigma=" + format_6g(r.sigma));
    add(res, "AC6", tag + "interpolation < dudley", b.interpolation < b.dudley,
        "interpolation=" + format_6g(b.interpolation) + " dudley=" + format_6g(b.dudley));
    add(res, "AC6", tag + "trivial_lower / c_low <= mc <= c_up * gamma_upper_certified", b.sandwich_ok,
        "trivial_lower=" + format_6g(b.trivial_lower) + " mc=" + format_6g(b.mc.mean) +
            " gamma=" + format_6g(b.gamma_upper_certified));
  }
  finish_sandwich(res, rows, "Octahedron bounds");
  return res;
}

ExperimentResult run_sandwich(const ExperimentConfig& cfg) {
  std::vector<BodySpec> specs;
  std::vector<std::size_t> ds;
  if (cfg.body) {
    specs.push_back(body_from_json(*cfg.body));
    ds.push_back(Body(specs.back()).dim());
  } else {
    for (std::size_t d : dims(cfg)) {
      ds.push_back(d);
      if (cfg.decay.empty()) specs.push_back(EuclideanBall{1.0, d});
      else specs.push_back(LqEllipsoid{cfg.q, parse_decay(cfg.decay, d)});
    }
  }
  std::vector<SandwichRow> rows(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    const Body body(specs[i]);
    SandwichRow& r = rows[i];
    r.d = ds[i];
    r.sigma = ambient_radius(body, AmbientNorm::euclidean());
    r.body = body_to_json(specs[i]);
    auto sc = sandwich_config(cfg, ds[i]);
    sc.q = cfg.q;
    r.rep = sandwich_report(body, AmbientNorm::euclidean(), sc);
  });
  ExperimentResult res;
  for (const auto& r : rows)
    add(res, "SANDWICH", "d=" + std::to_string(r.d) + ": trivial_lower / c_low <= mc <= c_up * gamma_upper_certified",
        r.rep.sandwich_ok,
        "trivial_lower=" + format_6g(r.rep.trivial_lower) + " mc=" + format_6g(r.rep.mc.mean) +
            " gamma=" + format_6g(r.rep.gamma_upper_certified));
  finish_sandwich(res, rows, "Sandwich bounds");
  return res;
}

// ---- counterexample ----

ExperimentResult run_counterexample(const ExperimentConfig& cfg) {
  const auto ds = dims(cfg);
  const double t = cfg.t.value_or(1.0 / cfg.eps);
  struct Row {
    CounterexampleReport check;
    double dudley = 0.0, interp = 0.0, best_a = 0.0, lower = 0.0;
    Json profile, interp_detail;
  };
  std::vector<Row> rows(ds.size());
  parallel_for(ds.size(), [&](std::size_t i) {
    Row& r = rows[i];
    r.check = counterexample_check(ds[i], cfg.eps, t, cfg.combinations, mix_seed(cfg.seed, ds[i]));
    const Body body(PerturbedSimplex{ds[i], cfg.eps});
    const auto euclid = AmbientNorm::euclidean();
    const auto opts = profile_options(cfg, ds[i]);
    const auto prof = body_profile(body, euclid, cfg.n_max, opts);
    const auto interp = interpolation_bound(body, euclid, cfg.p, default_a_grid(body, euclid, cfg.a_points), cfg.n_max,
                                            opts, &prof);
    r.dudley = dudley_bound(prof, cfg.p);
    r.interp = interp.value;
    r.best_a = interp.best_a;
    r.lower = trivial_lower_bound(prof, cfg.p);
    r.profile = to_json(prof);
    r.interp_detail = to_json(interp);
  });
  ExperimentResult res;
  res.csv = join({"d", "eps", "t", "guaranteed", "witness_norm", "tested", "passed", "max_residual", "dudley",
                  "interpolation", "improvement_factor", "trivial_lower"});
  Json entries = Json::array();
  std::vector<double> x, yd, yi, yl;
  bool confirmed = true;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const Row& r = rows[i];
    const double factor = r.dudley / r.interp;
    res.csv += join({std::to_string(ds[i]), f(cfg.eps), f(t), r.check.guaranteed ? "true" : "false",
                     f(r.check.witness_norm), std::to_string(r.check.tested), std::to_string(r.check.passed),
                     f(r.check.max_residual), f(r.dudley), f(r.interp), f(factor), f(r.lower)});
    Json e = to_json(r.check);
    e["dudley"] = r.dudley;
    e["interpolation"] = r.interp;
    e["best_a"] = r.best_a;
    e["improvement_factor"] = factor;
    e["trivial_lower"] = r.lower;
    e["profile"] = r.profile;
    e["interpolation_detail"] = r.interp_detail;
    entries.push_back(std::move(e));
    x.push_back(static_cast<double>(ds[i]));
    yd.push_back(r.dudley);
    yi.push_back(r.interp);
    yl.push_back(r.lower);
    const std::string tag = "d=" + std::to_string(ds[i]) + ": ";
    if (r.check.guaranteed)
      add(res, "AC4", tag + "conv{x_i} certified inside B_t for all tested combinations", r.check.all_pass,
          std::to_string(r.check.passed) + "/" + std::to_string(r.check.tested) +
              " max_residual=" + format_6g(r.check.max_residual));
    const bool no_gain = factor < cfg.improvement_max;
    confirmed = confirmed && no_gain;
    add(res, "AC4", tag + "interpolation improves on dudley by less than improvement_max", no_gain,
        "dudley/interpolation=" + format_6g(factor));
  }
  res.report["entries"] = entries;
  res.report["flag"] = confirmed ? "no-improvement confirmed" : "improvement observed";
  res.plot = PlotSpec{"Perturbed simplex, eps=" + format_6g(cfg.eps), "dimension d", "bound", true, false,
                      {series("dudley", x, yd), series("interpolation", x, yi), series("trivial lower", x, yl)}};
  return res;
}

// ---- contraction ----

ExperimentResult run_contraction(const ExperimentConfig& cfg) {
  std::vector<BodySpec> specs;
  if (cfg.body) {
    specs.push_back(body_from_json(*cfg.body));
  } else {
    for (std::size_t d : dims(cfg)) specs.push_back(LqEllipsoid{cfg.q, parse_decay(decay_of(cfg), d)});
  }
  std::vector<ContractionReport> reps(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    const Body body(specs[i]);
    ContractionOptions co;
    co.profile = profile_options(cfg, body.dim());
    co.slack = cfg.slack;
    reps[i] = contraction_check(body, AmbientNorm::euclidean(), cfg.q, cfg.t_list, cfg.n_max, co);
  });
  ExperimentResult res;
  res.csv = join({"d", "t", "n", "lhs", "rhs", "margin", "ok", "k_emp"});
  Json entries = Json::array();
  std::vector<Series> ser;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Body body(specs[i]);
    const auto& rep = reps[i];
    for (const auto& row : rep.rows)
      res.csv += join({std::to_string(body.dim()), f(row.t), std::to_string(row.n), f(row.lhs), f(row.rhs), f(row.margin),
                       row.ok ? "true" : "false", f(rep.k_emp)});
    Json e = to_json(rep);
    e["body"] = body_to_json(specs[i]);
    entries.push_back(std::move(e));
    add(res, "AC7", "d=" + std::to_string(body.dim()) + ": entropy contraction holds with zero violations",
        rep.violations == 0, "violations=" + std::to_string(rep.violations) + " k_emp=" + format_6g(rep.k_emp));
    if (i == 0) {
      for (int n = 0; n < cfg.n_max; ++n) {
        Series lhs{"e_" + std::to_string(n + 1) + "(B_t)", {}, {}};
        Series rhs{"bound n=" + std::to_string(n), {}, {}};
        for (const auto& row : rep.rows)
          if (row.n == n) {
            lhs.x.push_back(row.t);
            lhs.y.push_back(row.lhs);
            rhs.x.push_back(row.t);
            rhs.y.push_back(row.rhs);
          }
        ser.push_back(std::move(lhs));
        ser.push_back(std::move(rhs));
      }
    }
  }
  res.report["entries"] = entries;
  res.plot = PlotSpec{"Entropy contraction, q=" + format_6g(cfg.q), "t", "entropy bound", true, true, std::move(ser)};
  return res;
}

}  // namespace

std::vector<double> parse_decay(const std::string& decay, std::size_t d) {
  require(d >= 1, "decay: d must be >= 1");
  require(!decay.empty(), "decay: empty expression");
  std::vector<double> b(d, 1.0);
  std::size_t start = 0;
  while (start <= decay.size()) {
    std::size_t end = decay.find('*', start);
    if (end == std::string::npos) end = decay.size();
    std::string factor = decay.substr(start, end - start);
    factor.erase(std::remove_if(factor.begin(), factor.end(), [](char c) { return c == ' '; }), factor.end());
    require(!factor.empty(), "decay: empty factor in \"" + decay + "\"");
    if (factor.rfind("k^", 0) == 0) {
      const double e = parse_number(factor.substr(2), decay);
      for (std::size_t k = 0; k < d; ++k) b[k] *= std::pow(static_cast<double>(k + 1), e);
    } else if (factor.rfind("log", 0) == 0) {
      std::string rest = factor.substr(3);
      double shift = 2.0, power = 1.0;
      if (rest.rfind("(k+", 0) == 0) {
        const auto close = rest.find(')');
        require(close != std::string::npos, "decay: missing ')' in \"" + factor + "\"");
        shift = parse_number(rest.substr(3, close - 3), decay);
        rest = rest.substr(close + 1);
      }
      if (!rest.empty()) {
        require(rest[0] == '^', "decay: expected '^' in \"" + factor + "\"");
        power = parse_number(rest.substr(1), decay);
      }
      for (std::size_t k = 0; k < d; ++k) {
        const double l = std::log(static_cast<double>(k + 1) + shift);
        require(l > 0.0, "decay: log(k+C) must be positive");
        b[k] *= std::pow(l, power);
      }
    } else if (factor.size() > 2 && factor.compare(factor.size() - 2, 2, "^k") == 0) {
      const double g = parse_number(factor.substr(0, factor.size() - 2), decay);
      require(g > 0.0, "decay: geometric base must be positive");
      for (std::size_t k = 0; k < d; ++k) b[k] *= std::pow(g, static_cast<double>(k));
    } else {
      throw InvalidArgument("decay: unknown factor \"" + factor + "\"");
    }
    start = end + 1;
  }
  for (double v : b) require(std::isfinite(v) && v > 0.0, "decay: semiaxes must be finite and positive");
  return b;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j{{"experiment", c.experiment},
         {"d", c.d.empty() ? default_dims(c.experiment) : c.d},
         {"q", real_to_json(c.q)},
         {"p", real_to_json(c.p)},
         {"eps", c.eps},
         {"t", c.t ? Json(real_to_json(*c.t)) : Json(nullptr)},
         {"t_list", c.t_list},
         {"decay", c.decay.empty() ? default_decay(c.experiment) : c.decay},
         {"body", c.body ? *c.body : Json(nullptr)},
         {"seed", c.seed},
         {"samples", c.samples},
         {"n_max", c.n_max},
         {"a_points", c.a_points},
         {"cloud_size", c.cloud_size},
         {"bt_cloud_size", c.bt_cloud_size},
         {"fresh_size", c.fresh_size},
         {"combinations", c.combinations},
         {"workers", c.workers},
         {"ratio_low", c.ratio_low},
         {"ratio_high", c.ratio_high},
         {"interp_max", c.interp_max},
         {"c_low", c.c_low},
         {"c_up", c.c_up},
         {"slack", c.slack},
         {"improvement_max", c.improvement_max}};
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  require(j.is_object(), "config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "experiment") c.experiment = v.get<std::string>();
      else if (key == "d") c.d = v.is_array() ? v.get<std::vector<std::size_t>>() : std::vector<std::size_t>{v.get<std::size_t>()};
      else if (key == "q") c.q = real_from_json(v);
      else if (key == "p") c.p = real_from_json(v);
      else if (key == "eps") c.eps = real_from_json(v);
      else if (key == "t") c.t = v.is_null() ? std::nullopt : std::optional<double>(real_from_json(v));
      else if (key == "t_list") {
        c.t_list.clear();
        for (const auto& x : v) c.t_list.push_back(real_from_json(x));
      } else if (key == "decay") c.decay = v.get<std::string>();
      else if (key == "body") c.body = v.is_null() ? std::nullopt : std::optional<Json>(v);
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "samples") c.samples = v.get<std::size_t>();
      else if (key == "n_max") c.n_max = v.get<int>();
      else if (key == "a_points") c.a_points = v.get<std::size_t>();
      else if (key == "cloud_size") c.cloud_size = v.get<std::size_t>();
      else if (key == "bt_cloud_size") c.bt_cloud_size = v.get<std::size_t>();
      else if (key == "fresh_size") c.fresh_size = v.get<std::size_t>();
      else if (key == "combinations") c.combinations = v.get<std::size_t>();
      else if (key == "workers") c.workers = v.get<unsigned>();
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "ratio_low") c.ratio_low = real_from_json(v);
      else if (key == "ratio_high") c.ratio_high = real_from_json(v);
      else if (key == "interp_max") c.interp_max = real_from_json(v);
      else if (key == "c_low") c.c_low = real_from_json(v);
      else if (key == "c_up") c.c_up = real_from_json(v);
      else if (key == "slack") c.slack = real_from_json(v);
      else if (key == "improvement_max") c.improvement_max = real_from_json(v);
      else throw InvalidArgument("unknown config key \"" + key + "\"");
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("config key \"" + key + "\": " + e.what());
    }
  }
  validate(c);
  return c;
}

void validate(const ExperimentConfig& c) {
  require(kExperiments.count(c.experiment) == 1, "unknown experiment \"" + c.experiment + "\"");
  for (std::size_t d : c.d) require(d >= 1 && d <= kMaxDimension, "d out of range");
  if (c.experiment == "counterexample")
    for (std::size_t d : c.d) require(d >= 2, "counterexample needs d >= 2");
  require(std::isfinite(c.p) && c.p > 0.0, "p must be a positive real");
  require(c.q > 1.0, "q must exceed 1");
  require(c.eps > 0.0 && c.eps < 1.0, "eps must lie in (0,1)");
  if (c.t) require(std::isfinite(*c.t) && *c.t > 0.0, "t must be positive");
  for (double t : c.t_list) require(std::isfinite(t) && t >= 0.0, "t_list entries must be nonnegative");
  require(c.samples >= 100, "samples must be >= 100");
  require(c.n_max >= 0 && c.n_max <= 4, "n_max must lie in 0..4");
  if (c.experiment == "contraction") require(c.n_max >= 1, "contraction needs n_max >= 1");
  require(c.a_points >= 2, "a_points must be >= 2");
  require(c.cloud_size >= 16 && c.bt_cloud_size >= 16 && c.fresh_size >= 1, "cloud sizes too small");
  require(c.combinations >= 1, "combinations must be >= 1");
  require(c.workers >= 1, "workers must be >= 1");
  require(c.ratio_low <= c.ratio_high, "ratio band is empty");
  require(c.c_low > 0.0 && c.c_up > 0.0 && c.slack >= 1.0 && c.improvement_max > 0.0, "bands must be positive");
  if (c.body) (void)Body(body_from_json(*c.body));
  if (!c.decay.empty()) (void)parse_decay(c.decay, 1);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const unsigned saved = worker_cap();
  set_worker_cap(cfg.workers);
  ExperimentResult res;
  try {
    if (cfg.experiment == "ellipsoid") res = run_ellipsoid(cfg);
    else if (cfg.experiment == "octahedron") res = run_octahedron(cfg);
    else if (cfg.experiment == "counterexample") res = run_counterexample(cfg);
    else if (cfg.experiment == "contraction") res = run_contraction(cfg);
    else res = run_sandwich(cfg);
  } catch (...) {
    set_worker_cap(saved);
    throw;
  }
  set_worker_cap(saved);
  Json assertions = Json::array();
  for (const auto& a : res.assertions)
    assertions.push_back(Json{{"id", a.id}, {"description", a.description}, {"passed", a.passed}, {"detail", a.detail}});
  Json report{{"experiment", cfg.experiment}, {"config", config_to_json(cfg)}};
  for (auto& [k, v] : res.report.items()) report[k] = v;
  report["assertions"] = assertions;
  report["passed"] = res.passed;
  res.report = std::move(report);
  return res;
}

void write_outputs(const ExperimentResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  {
    std::ofstream out(base / "report.json", std::ios::binary);
    require(static_cast<bool>(out), "cannot write " + (base / "report.json").string());
    out << result.report.dump(2) << "\n";
  }
  {
    std::ofstream out(base / "table.csv", std::ios::binary);
    require(static_cast<bool>(out), "cannot write " + (base / "table.csv").string());
    out << result.csv;
  }
  emit_plot(result.plot, (base / "plot.svg").string());
}

}  // namespace chainlab

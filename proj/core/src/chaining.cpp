#include "chainlab/chaining.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>

#include "chainlab/btcloud.hpp"
#include "chainlab/parallel.hpp"
#include "chainlab/rng.hpp"
#include "chainlab/tails.hpp"

namespace chainlab {

namespace {

constexpr int kLastTailLevel = 63;

void check_p(double p) { require(std::isfinite(p) && p > 0.0, "p must be a positive real"); }

void check_profile(const EntropyProfile& profile) {
  require(!profile.brackets.empty(), "profile must be nonempty");
  for (std::size_t i = 0; i < profile.brackets.size(); ++i)
    require(profile.brackets[i].n == static_cast<int>(i), "profile brackets must be indexed 0..n_max");
}

double level_weight(int n, double p) { return std::exp2(static_cast<double>(n) / p); }

// A tail term is dropped once it is negligible and the bounds collapse doubly exponentially.
bool tail_done(double value, double prev, double term, double total) {
  return value == 0.0 || (term <= 1e-17 * total && value < 0.5 * prev);
}

std::uint64_t t_seed(std::uint64_t seed, double t) { return mix_seed(seed, std::bit_cast<std::uint64_t>(t)); }

// Caps cloud brackets (plus resolution) by analytic bounds.
void finish_brackets(std::vector<EntropyBracket>& brackets, double rho, const SetRef& set) {
  for (auto& br : brackets) {
    br.resolution = rho;
    const double cloud_upper = br.upper + rho;
    const double analytic = analytic_entropy_bound(set, br.n);
    if (analytic < cloud_upper) {
      br.upper = analytic;
      br.method = BracketMethod::Volumetric;
    } else {
      br.upper = cloud_upper;
    }
    br.lower = std::min(br.lower, br.upper);
  }
}

std::vector<double> capped_tail(std::vector<double> tail, const std::vector<EntropyBracket>& brackets) {
  const double cap = brackets.back().upper;
  for (double& v : tail) v = std::min(v, cap);
  while (!tail.empty() && tail.back() == 0.0 && tail.size() > 1 && tail[tail.size() - 2] == 0.0) tail.pop_back();
  return tail;
}

std::string profile_source(const Body& body, const AmbientNorm& ambient, const std::string& extra) {
  std::string s = body.kind_name() + " d=" + std::to_string(body.dim());
  s += ambient.is_euclidean() ? " euclidean" : " weighted-lp";
  return s + " " + extra;
}

struct LevelCache {
  const Body& body;
  const AmbientNorm& ambient;
  const ProfileOptions& opts;
  int n_max;
  const EntropyProfile* whole;
  std::optional<EntropyProfile> own_whole;

  const EntropyProfile& whole_profile() {
    if (whole) return *whole;
    if (!own_whole) own_whole = body_profile(body, ambient, n_max, opts);
    return *own_whole;
  }

  InterpolationLevel level(double t, int n) {
    InterpolationLevel lv;
    lv.n = n;
    lv.t = t;
    if (bt_trivial(body, ambient, t)) {
      lv.method = "trivial";
      lv.cloud_size = 1;
      return lv;
    }
    if (bt_whole_body(body, ambient, t)) {
      const auto& br = whole_profile().brackets[static_cast<std::size_t>(n)];
      lv.upper = br.upper;
      lv.lower = br.lower;
      lv.resolution = br.resolution;
      lv.method = std::string("whole-body/") + method_name(br.method);
      lv.cloud_size = opts.cloud_size;
      return lv;
    }
    const std::uint64_t seed = t_seed(opts.seed, t);
    const SetCloud cloud = bt_cloud(body, ambient, t, opts.bt_cloud_size, seed);
    const SetCloud fresh = bt_cloud(body, ambient, t, opts.fresh_size, mix_seed(seed, 0xf4e5));
    const double rho = cloud_resolution(cloud.points, fresh.points, ambient);
    auto brackets = entropy_brackets(cloud.points, n, ambient, opts.cover);
    const SetRef set{&body, &ambient, t};
    finish_brackets(brackets, rho, set);
    const auto& br = brackets.back();
    lv.upper = br.upper;
    lv.lower = br.lower;
    lv.resolution = rho;
    lv.method = cloud.method + "/" + method_name(br.method);
    lv.cloud_size = cloud.points.size();
    return lv;
  }

  double tail_value(double t, int n) {
    if (bt_trivial(body, ambient, t)) return 0.0;
    if (bt_whole_body(body, ambient, t)) return analytic_entropy_bound(SetRef{&body, &ambient, std::nullopt}, n);
    return analytic_entropy_bound(SetRef{&body, &ambient, t}, n);
  }
};

}  // namespace

std::vector<double> EntropyProfile::uppers() const {
  std::vector<double> out;
  for (const auto& br : brackets) out.push_back(br.upper);
  return out;
}

std::vector<double> EntropyProfile::lowers() const {
  std::vector<double> out;
  for (const auto& br : brackets) out.push_back(br.lower);
  return out;
}

std::vector<double> analytic_tail(const Body& body, const AmbientNorm& ambient, const double* t, int n_max) {
  std::vector<double> out;
  std::optional<double> tt;
  if (t) {
    if (bt_trivial(body, ambient, *t)) return {0.0};
    if (!bt_whole_body(body, ambient, *t)) tt = *t;
  }
  const SetRef set{&body, &ambient, tt};
  double prev = kInf;
  const double first = analytic_entropy_bound(set, n_max + 1);
  for (int n = n_max + 1; n <= kLastTailLevel; ++n) {
    const double v = n == n_max + 1 ? first : analytic_entropy_bound(set, n);
    out.push_back(v);
    if (v == 0.0 || (v < 1e-80 * first && v < 0.5 * prev)) break;
    prev = v;
  }
  return out;
}

EntropyProfile cloud_profile(const PointCloud& cloud, int n_max, const AmbientNorm& ambient, const CoverOptions& opts) {
  require(!cloud.points.empty(), "cloud_profile: empty cloud");
  EntropyProfile prof;
  prof.brackets = entropy_brackets(cloud.points, n_max, ambient, opts);
  prof.source = "cloud " + cloud.provenance;
  prof.tail_model = "volumetric";
  const std::size_t d = cloud.points.front().size();
  double reach = 0.0;
  for (const auto& x : cloud.points) reach = std::max(reach, ambient.distance(x, cloud.points.front()));
  std::vector<double> tail;
  for (int n = n_max + 1; n <= kLastTailLevel; ++n) {
    const double v = cardinality_cap(n) >= cloud.points.size() ? 0.0 : volumetric_tail(d, reach, n);
    tail.push_back(v);
    if (v == 0.0 || v < 1e-80 * reach) break;
  }
  prof.tail = capped_tail(std::move(tail), prof.brackets);
  return prof;
}

EntropyProfile body_profile(const Body& body, const AmbientNorm& ambient, int n_max, const ProfileOptions& opts) {
  ambient.check_dim(body.dim());
  const auto cloud = body_cloud(body, opts.cloud_size, opts.seed);
  const auto fresh = body_fresh(body, opts.fresh_size, mix_seed(opts.seed, 0xf4e5));
  EntropyProfile prof;
  prof.resolution = cloud_resolution(cloud, fresh, ambient);
  prof.brackets = entropy_brackets(cloud, n_max, ambient, opts.cover);
  const SetRef set{&body, &ambient, std::nullopt};
  finish_brackets(prof.brackets, prof.resolution, set);
  prof.tail = capped_tail(analytic_tail(body, ambient, nullptr, n_max), prof.brackets);
  prof.tail_model = analytic_bound_model(set, n_max + 1);
  prof.source = profile_source(body, ambient,
                               "cloud=" + std::to_string(cloud.size()) + " seed=" + std::to_string(opts.seed));
  return prof;
}

EntropyProfile bt_profile(const Body& body, const AmbientNorm& ambient, double t, int n_max, const ProfileOptions& opts,
                          const EntropyProfile* whole) {
  ambient.check_dim(body.dim());
  require(std::isfinite(t) && t >= 0.0, "bt_profile: t must be a finite nonnegative real");
  if (bt_whole_body(body, ambient, t)) {
    EntropyProfile prof = whole ? *whole : body_profile(body, ambient, n_max, opts);
    prof.brackets.resize(std::min(prof.brackets.size(), static_cast<std::size_t>(n_max + 1)));
    require(static_cast<int>(prof.brackets.size()) == n_max + 1, "bt_profile: body profile too short");
    prof.source += " (B_t = B)";
    return prof;
  }
  EntropyProfile prof;
  const std::uint64_t seed = t_seed(opts.seed, t);
  const SetCloud cloud = bt_cloud(body, ambient, t, opts.bt_cloud_size, seed);
  const SetCloud fresh = bt_cloud(body, ambient, t, opts.fresh_size, mix_seed(seed, 0xf4e5));
  prof.resolution = cloud_resolution(cloud.points, fresh.points, ambient);
  prof.brackets = entropy_brackets(cloud.points, n_max, ambient, opts.cover);
  const SetRef set{&body, &ambient, t};
  finish_brackets(prof.brackets, prof.resolution, set);
  prof.tail = capped_tail(analytic_tail(body, ambient, &t, n_max), prof.brackets);
  prof.tail_model = cloud.trivial ? "zero" : analytic_bound_model(set, n_max + 1);
  prof.source = profile_source(body, ambient, "B_t t=" + std::to_string(t) + " sampler=" + cloud.method +
                                                  " cloud=" + std::to_string(cloud.points.size()));
  return prof;
}

double dudley_bound(const EntropyProfile& profile, double p) {
  check_profile(profile);
  check_p(p);
  double sum = 0.0;
  for (const auto& br : profile.brackets) sum += level_weight(br.n, p) * br.upper;
  const int first = profile.n_max() + 1;
  for (std::size_t k = 0; k < profile.tail.size(); ++k) sum += level_weight(first + static_cast<int>(k), p) * profile.tail[k];
  require(std::isfinite(sum), "dudley_bound: divergent sum");
  return sum;
}

double qconvex_bound(const EntropyProfile& profile, double p, double q) {
  check_profile(profile);
  check_p(p);
  require(q > 1.0, "qconvex_bound: q must exceed 1");
  const double e = q / (q - 1.0);
  double sum = 0.0;
  for (const auto& br : profile.brackets) sum += std::pow(level_weight(br.n, p) * br.upper, e);
  const int first = profile.n_max() + 1;
  for (std::size_t k = 0; k < profile.tail.size(); ++k)
    sum += std::pow(level_weight(first + static_cast<int>(k), p) * profile.tail[k], e);
  return std::pow(sum, 1.0 / e);
}

double trivial_lower_bound(const EntropyProfile& profile, double p) {
  check_profile(profile);
  check_p(p);
  double best = 0.0;
  for (const auto& br : profile.brackets) best = std::max(best, level_weight(br.n, p) * br.lower);
  return best;
}

std::vector<double> regularized_profile(const std::vector<double>& e, double lambda) {
  require(lambda > 0.0, "regularized_profile: lambda must be positive");
  std::vector<double> d(e.size());
  const double decay = std::exp2(-lambda);
  for (std::size_t n = 0; n < e.size(); ++n) d[n] = n == 0 ? e[0] : std::max(e[n], decay * d[n - 1]);
  return d;
}

std::vector<double> regularized_profile(const EntropyProfile& profile, double lambda) {
  return regularized_profile(profile.uppers(), lambda);
}

std::vector<double> default_a_grid(const Body& body, const AmbientNorm& ambient, std::size_t points) {
  require(points >= 2, "default_a_grid: need at least two points");
  const double diam = ambient_diameter(body, ambient);
  require(diam > 0.0, "default_a_grid: degenerate body");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double e = -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(points - 1);
    grid[i] = std::pow(10.0, e) / diam;
  }
  return grid;
}

InterpolationResult interpolation_bound(const Body& body, const AmbientNorm& ambient, double p,
                                        const std::vector<double>& a_grid, int n_max, const ProfileOptions& opts,
                                        const EntropyProfile* whole, bool prune) {
  check_p(p);
  require(!a_grid.empty(), "interpolation_bound: a_grid must be nonempty");
  require(n_max >= 0 && n_max <= 4, "interpolation_bound: n_max must lie in 0..4");
  for (double a : a_grid) require(std::isfinite(a) && a > 0.0, "interpolation_bound: a must be positive");
  ambient.check_dim(body.dim());
  if (whole) require(whole->n_max() >= n_max, "interpolation_bound: body profile too short");

  LevelCache cache{body, ambient, opts, n_max, whole, std::nullopt};
  std::vector<std::size_t> order(a_grid.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a_grid[i] > a_grid[j]; });

  InterpolationResult res;
  res.evals.resize(a_grid.size());
  double best = kInf;
  std::size_t best_i = order.front();
  for (std::size_t i : order) {
    InterpolationEval ev;
    ev.a = a_grid[i];
    double total = 1.0 / ev.a;
    bool stop = prune && total >= best;
    for (int n = 0; n <= n_max && !stop; ++n) {
      InterpolationLevel lv = cache.level(ev.a * level_weight(n, p), n);
      total += level_weight(n, p) * lv.upper;
      ev.levels.push_back(std::move(lv));
      stop = prune && total >= best;
    }
    if (!stop) {
      double prev = kInf;
      for (int n = n_max + 1; n <= kLastTailLevel; ++n) {
        const double v = cache.tail_value(ev.a * level_weight(n, p), n);
        const double term = level_weight(n, p) * v;
        ev.tail += term;
        if (tail_done(v, prev, term, total + ev.tail)) break;
        prev = v;
      }
      total += ev.tail;
      stop = prune && total >= best;
    }
    ev.value = total;
    ev.pruned = stop;
    if (!stop && total < best) {
      best = total;
      best_i = i;
    }
    res.evals[i] = std::move(ev);
  }
  res.value = best;
  res.best_a = a_grid[best_i];
  return res;
}

AdmissibleSequence build_admissible_sequence(const Body& body, const AmbientNorm& ambient, double p, double a,
                                             int n_max, const ProfileOptions& opts, const EntropyProfile* whole) {
  check_p(p);
  require(std::isfinite(a) && a > 0.0, "build_admissible_sequence: a must be positive");
  require(n_max >= 0 && n_max <= 4, "build_admissible_sequence: n_max must lie in 0..4");
  ambient.check_dim(body.dim());
  AdmissibleSequence seq;
  seq.p = p;
  seq.a = a;
  seq.ambient = ambient;
  seq.levels.push_back({Point(body.dim(), 0.0)});
  for (int n = 1; n <= n_max; ++n) {
    const double t = a * level_weight(n, p);
    std::vector<Point> net;
    if (bt_trivial(body, ambient, t)) {
      net.push_back(Point(body.dim(), 0.0));
    } else {
      std::vector<Point> cloud;
      if (bt_whole_body(body, ambient, t)) {
        if (whole && whole->n_max() >= n) {
          net = whole->brackets[static_cast<std::size_t>(n)].net;
        } else {
          cloud = body_cloud(body, opts.cloud_size, opts.seed);
        }
      } else {
        cloud = bt_cloud(body, ambient, t, opts.bt_cloud_size, t_seed(opts.seed, t)).points;
      }
      if (net.empty()) net = entropy_brackets(cloud, n, ambient, opts.cover).back().net;
      for (auto& x : net) {
        const double g = body.gauge(x);
        if (g > 1.0)
          for (double& v : x) v /= g;
      }
    }
    seq.levels.push_back(std::move(net));
  }
  LevelCache cache{body, ambient, opts, n_max, whole, std::nullopt};
  double prev = kInf, total = 0.0;
  for (int n = n_max + 1; n <= kLastTailLevel; ++n) {
    const double v = cache.tail_value(a * level_weight(n, p), n);
    seq.tail.push_back(v);
    const double term = level_weight(n, p) * v;
    total += term;
    if (tail_done(v, prev, term, total)) break;
    prev = v;
  }
  return seq;
}

double gamma_value(const AdmissibleSequence& seq, const std::vector<Point>& test_cloud, double p) {
  check_p(p);
  require(!seq.levels.empty(), "gamma_value: empty sequence");
  for (const auto& lv : seq.levels) require(!lv.empty(), "gamma_value: empty level");
  const std::size_t d = seq.levels.front().front().size();
  for (const auto& x : test_cloud) require_same_dim(x.size(), d, "gamma_value test cloud");
  std::vector<double> sums(test_cloud.size(), 0.0);
  parallel_for(test_cloud.size(), [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t n = 0; n < seq.levels.size(); ++n) {
      double best = kInf;
      for (const auto& c : seq.levels[n]) best = std::min(best, seq.ambient.distance(test_cloud[i], c));
      s += level_weight(static_cast<int>(n), p) * best;
    }
    sums[i] = s;
  });
  double sup = 0.0;
  for (double s : sums) sup = std::max(sup, s);
  const int first = static_cast<int>(seq.levels.size());
  double tail = 0.0;
  for (std::size_t k = 0; k < seq.tail.size(); ++k) tail += level_weight(first + static_cast<int>(k), p) * seq.tail[k];
  return sup + 2.0 * tail;
}

double gamma_value(const AdmissibleSequence& seq, const std::vector<Point>& test_cloud) {
  return gamma_value(seq, test_cloud, seq.p);
}

CarlRatio carl_ratio(const std::vector<double>& c, double r, double s, double u, int n_max, const ProfileOptions& opts) {
  require(!c.empty(), "carl_ratio: c must be nonempty");
  for (std::size_t i = 0; i < c.size(); ++i) {
    require(c[i] > 0.0 && std::isfinite(c[i]), "carl_ratio: c must be positive");
    require(i == 0 || c[i] <= c[i - 1], "carl_ratio: c must be nonincreasing");
  }
  require(r >= 1.0, "carl_ratio: r must be >= 1");
  require(s > 0.0 && u > 0.0, "carl_ratio: s and u must be positive");
  require(1.0 / s > std::max(0.0, 0.5 - 1.0 / r), "carl_ratio: need 1/s > (1/2 - 1/r)_+");
  const Body body(LqEllipsoid{r, c});
  const AmbientNorm euclid = AmbientNorm::euclidean();
  const EntropyProfile prof = body_profile(body, euclid, n_max, opts);
  const double alpha = 1.0 / s + 1.0 / r - 0.5;
  CarlRatio out;
  for (const auto& br : prof.brackets) {
    const double w = std::exp2(br.n * alpha);
    out.lhs += std::pow(w * br.upper, u);
    out.lhs_lower += std::pow(w * br.lower, u);
  }
  for (std::size_t k = 0; k < prof.tail.size(); ++k)
    out.lhs += std::pow(std::exp2((n_max + 1 + static_cast<double>(k)) * alpha) * prof.tail[k], u);
  for (std::size_t k = 0; k < c.size(); ++k)
    out.rhs += std::pow(std::pow(static_cast<double>(k + 1), 1.0 / s - 1.0 / u) * c[k], u);
  out.ratio = out.lhs / out.rhs;
  return out;
}

}  // namespace chainlab

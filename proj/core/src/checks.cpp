#include "chainlab/checks.hpp"

#include <algorithm>
#include <cmath>

#include "chainlab/btcloud.hpp"
#include "chainlab/kfun.hpp"
#include "chainlab/rng.hpp"

namespace chainlab {

namespace {

std::vector<Point> subsample(const std::vector<Point>& pts, std::size_t count, std::uint64_t seed) {
  if (pts.size() <= count) return pts;
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  std::vector<Point> out;
  for (std::size_t i : idx) out.push_back(pts[i]);
  return out;
}

}  // namespace

ContractionReport contraction_check(const Body& body, const AmbientNorm& ambient, double q,
                                    const std::vector<double>& t_list, int n_max, const ContractionOptions& opts) {
  require(q > 1.0, "contraction_check: q must exceed 1");
  require(n_max >= 1 && n_max <= 4, "contraction_check: n_max must lie in 1..4");
  require(opts.slack >= 1.0 && opts.k_inflation >= 1.0, "contraction_check: slack factors must be >= 1");
  ambient.check_dim(body.dim());
  ContractionReport rep;
  rep.q = q;
  rep.slack = opts.slack;
  const EntropyProfile whole = body_profile(body, ambient, n_max, opts.profile);

  struct Entry {
    double t;
    bool skip;
    EntropyProfile prof;
  };
  std::vector<Entry> entries;
  for (double t : t_list) {
    require(std::isfinite(t) && t >= 0.0, "contraction_check: t must be a finite nonnegative real");
    Entry e{t, false, {}};
    if (t == 0.0 || bt_trivial(body, ambient, t)) {
      rep.notices.push_back("t=" + std::to_string(t) + ": B_t = {0}, inequality holds trivially");
      rep.k_by_t.push_back(0.0);
      e.skip = true;
      entries.push_back(std::move(e));
      continue;
    }
    const SetCloud cloud = bt_cloud(body, ambient, t, opts.profile.bt_cloud_size, mix_seed(opts.profile.seed, 0xc0));
    if (cloud.points.size() < 2) {
      rep.notices.push_back("t=" + std::to_string(t) + ": fewer than 2 points in the B_t cloud, skipped");
      rep.k_by_t.push_back(0.0);
      e.skip = true;
      entries.push_back(std::move(e));
      continue;
    }
    const auto pts = subsample(cloud.points, opts.k_sample, mix_seed(opts.profile.seed, 0xc1));
    double k = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const Point diff = sub(pts[i], pts[j]);
        const double den = t * ambient.norm(diff);
        if (den > 0.0) k = std::max(k, std::pow(body.gauge(diff), q) / den);
      }
    rep.k_by_t.push_back(k * opts.k_inflation);
    e.prof = bt_profile(body, ambient, t, n_max, opts.profile, &whole);
    entries.push_back(std::move(e));
  }
  rep.k_emp = rep.k_by_t.empty() ? 0.0 : *std::max_element(rep.k_by_t.begin(), rep.k_by_t.end());

  for (const auto& e : entries) {
    for (int n = 0; n < n_max; ++n) {
      ContractionRow row;
      row.t = e.t;
      row.n = n;
      if (!e.skip) {
        const auto& bt = e.prof.brackets;
        row.lhs = bt[static_cast<std::size_t>(n + 1)].upper;
        row.rhs = std::pow(rep.k_emp * e.t * bt[static_cast<std::size_t>(n)].upper, 1.0 / q) *
                  whole.brackets[static_cast<std::size_t>(n)].upper * opts.slack;
      }
      row.margin = row.rhs - row.lhs;
      row.ok = row.lhs <= row.rhs;
      if (!row.ok) ++rep.violations;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

double qconvexity_modulus(const Body& body, std::size_t sample_pairs, std::uint64_t seed, double q) {
  require(sample_pairs >= 1, "qconvexity_modulus: need at least one pair");
  if (q == 0.0) {
    require(body.lr_ball() != nullptr, "qconvexity_modulus: body has no exponent; pass q");
    q = std::max(2.0, body.lr_ball()->r());
  }
  require(q > 0.0, "qconvexity_modulus: q must be positive");
  const auto xs = body.sample_cloud(sample_pairs, mix_seed(seed, 1), SampleMode::Boundary);
  const auto yb = body.sample_cloud(sample_pairs, mix_seed(seed, 2), SampleMode::Boundary);
  const auto yi = body.sample_cloud(sample_pairs, mix_seed(seed, 3), SampleMode::Interior);
  double eta = kInf;
  for (std::size_t i = 0; i < sample_pairs; ++i) {
    const Point& x = xs[i];
    const Point& y = i % 2 == 0 ? yb[i] : yi[i];
    const double sep = body.gauge(sub(x, y));
    if (sep == 0.0) continue;
    const Point mid = scaled(add(x, y), 0.5);
    eta = std::min(eta, (1.0 - body.gauge(mid)) / std::pow(sep, q));
  }
  return eta;
}

UnconditionalReport unconditional_assumption_check(double q, const std::vector<double>& weights, double p_ambient,
                                                   const std::vector<double>& t_list, std::size_t samples,
                                                   std::uint64_t seed, double tolerance) {
  require(q > 1.0, "unconditional_assumption_check: q must exceed 1");
  require(!weights.empty(), "unconditional_assumption_check: weights must be nonempty");
  for (double w : weights) require(w > 0.0 && std::isfinite(w), "unconditional_assumption_check: weights must be positive");
  require(samples >= 1, "unconditional_assumption_check: samples must be >= 1");
  const std::size_t d = weights.size();
  const Body body(LqEllipsoid{q, std::vector<double>(d, 1.0)});
  const AmbientNorm ambient = AmbientNorm::weighted_lp(p_ambient, weights);
  UnconditionalReport rep;
  rep.q = q;
  const double bound = std::exp2(1.0 + std::max(0.0, q - 2.0));
  for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
    const double t = t_list[ti];
    require(std::isfinite(t) && t >= 0.0, "unconditional_assumption_check: t must be a finite nonnegative real");
    if (t == 0.0) {
      rep.notices.push_back("t=0 skipped");
      continue;
    }
    UnconditionalRow row;
    row.t = t;
    row.bound = bound;
    const SetCloud cloud = bt_cloud(body, ambient, t, std::max<std::size_t>(1024, samples / 8), mix_seed(seed, ti));
    if (cloud.points.size() < 2) {
      rep.notices.push_back("t=" + std::to_string(t) + ": B_t = {0}, skipped");
      continue;
    }
    Rng rng(mix_seed(seed, 0x100 + ti));
    const std::size_t m = cloud.points.size();
    for (std::size_t k = 0; k < samples; ++k) {
      const std::size_t i = rng.below(m);
      std::size_t j = rng.below(m - 1);
      if (j >= i) ++j;
      const Point diff = sub(cloud.points[i], cloud.points[j]);
      const double den = t * ambient.norm(diff);
      if (den == 0.0) continue;
      row.max_ratio = std::max(row.max_ratio, std::pow(body.gauge(diff), q) / den);
      ++row.pairs;
    }
    row.ok = row.max_ratio <= bound * (1.0 + tolerance);
    rep.ok = rep.ok && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

CounterexampleReport counterexample_check(std::size_t d, double eps, double t, std::size_t combinations,
                                          std::uint64_t seed) {
  require(d >= 2, "counterexample_check: d must be >= 2");
  require(eps > 0.0 && eps < 1.0, "counterexample_check: eps must lie in (0,1)");
  require(std::isfinite(t) && t > 0.0, "counterexample_check: t must be positive");
  const Body body(PerturbedSimplex{d, eps});
  const AmbientNorm euclid = AmbientNorm::euclidean();
  CounterexampleReport rep;
  rep.d = d;
  rep.eps = eps;
  rep.t = t;
  rep.guaranteed = t >= 1.0 / eps;
  const Point z = body.simplex_vinv(Point(d, 1.0));
  const double znorm = norm2(z);
  rep.witness_norm = znorm / t;
  rep.witness_threshold = znorm;

  std::vector<Point> verts;
  for (std::size_t i = 0; i < d; ++i) {
    Point e(d, 0.0);
    e[i] = 1.0;
    verts.push_back(body.simplex_v(e));
  }
  Rng rng(mix_seed(seed, 0xce));
  auto combo = [&](std::size_t k) {
    std::vector<double> lam(d, 0.0);
    if (k < d) {
      lam[k] = 1.0;
    } else if (k == d) {
      std::fill(lam.begin(), lam.end(), 1.0 / static_cast<double>(d));
    } else if (k % 2 == 0) {
      double s = 0.0;
      for (double& l : lam) s += (l = rng.exponential());
      for (double& l : lam) l /= s;
    } else {
      const std::size_t i = rng.below(d);
      std::size_t j = rng.below(d - 1);
      if (j >= i) ++j;
      const double u = rng.uniform();
      lam[i] = u;
      lam[j] = 1.0 - u;
    }
    Point x(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) axpy(lam[i], verts[i], x);
    return x;
  };

  rep.all_pass = true;
  for (std::size_t k = 0; k < combinations; ++k) {
    const Point x = combo(k);
    const double g = body.gauge(x);
    const double r1 = std::abs(dot(z, x) - g);
    const double r2 = std::max(0.0, body.dual_gauge(z) - 1.0);
    const double r3 = std::max(0.0, znorm - t);
    const double residual = std::max({r1, r2, r3});
    bool member = false;
    try {
      member = bt_member(body, euclid, t, x).member;
    } catch (const InvalidArgument&) {
      member = false;
    }
    rep.max_residual = std::max(rep.max_residual, residual);
    ++rep.tested;
    if (residual <= 1e-9 && member) ++rep.passed;
    else rep.all_pass = false;
  }

  std::vector<Point> vset;
  for (const auto& v : verts) {
    vset.push_back(v);
    vset.push_back(scaled(v, -1.0));
  }
  for (const auto& br : entropy_brackets(vset, 4, euclid)) rep.vertex_entropy_lower.push_back(br.lower);
  return rep;
}

}  // namespace chainlab

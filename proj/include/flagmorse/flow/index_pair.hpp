#pragma once

// Sampling-based verification of the explicit index pair (B1, B0) built
// from the linearization chart:
//   B1 = psi{ |v_s| <= r, |v_u| <= r },  B0 = psi{ |v_s| <= r, |v_u| = r }.
// Trajectories are integrated on actual flags; membership is decided by
// inverting the chart at each step. The three conditions checked:
//   1) no sampled full orbit stays in B1 \ B0 away from the component;
//   2) sampled B0 points leave B1 immediately in forward time;
//   3) sampled forward exits pass through B0 at their last interior time.

#include "flagmorse/flow/chart.hpp"

#include <optional>

namespace flagmorse {

struct IndexPairConfig {
  double radius = 0.1;
  int samples = 500;
  double horizon = 20.0;
  double dt = 0.1;
  std::uint64_t seed = 12345;
  double near_component_frac = 1e-3;  // |v| below radius*frac counts as "near"
  double band = 1e-4;                 // relative tolerance at the |v_u| = r crossing
};

struct ConditionReport {
  bool pass = true;
  int checked = 0;
  int violations = 0;
};

struct IndexPairReport {
  int w = 0;
  IndexPairConfig config;
  bool injectivity_ok = false;
  ConditionReport isolation;            // condition 1
  ConditionReport positively_invariant; // condition 2
  ConditionReport exit_through_B0;      // condition 3
  bool pass() const {
    return injectivity_ok && isolation.pass && positively_invariant.pass &&
           exit_through_B0.pass;
  }
};

namespace detail {

// Uniform sample in the unit ball of dimension k (empty -> empty vector).
inline Eigen::VectorXd ball_sample(int k, std::mt19937_64& rng) {
  if (k == 0) return Eigen::VectorXd(0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd v(k);
  for (int i = 0; i < k; ++i) v[i] = gauss(rng);
  double norm = v.norm();
  if (norm == 0) return Eigen::VectorXd::Zero(k);
  return v * (std::pow(unif(rng), 1.0 / k) / norm);
}

struct ChartTracker {
  const FlowContext& ctx;
  const LinChart& chart;
  double radius;

  // Track the chart coordinates of flow(t, psi(v0)). Returns nullopt once
  // the point can no longer be certified inside the chart neighborhood.
  std::optional<Eigen::VectorXd> at(const Eigen::VectorXd& v_prev, double dt,
                                    Flag& state) const {
    state = flow(ctx.split(), dt, state);
    // linear prediction as the warm start
    Eigen::VectorXd guess = v_prev;
    for (int i = 0; i < chart.dim(); ++i) guess[i] *= std::exp(dt * chart.basis[i].rate);
    auto inv = chart_inverse(ctx, chart, state, guess);
    if (!inv.ok) return std::nullopt;
    return inv.v;
  }

  bool inside_B1(const Eigen::VectorXd& v) const {
    return chart.stable_norm(v) <= radius * (1 + 1e-9) &&
           chart.unstable_norm(v) <= radius * (1 + 1e-9);
  }
};

}  // namespace detail

inline IndexPairReport index_pair(const FlowContext& ctx, int w, IndexPairConfig cfg) {
  LinChart chart = lin_chart(ctx, w);
  IndexPairReport rep;
  rep.w = w;
  rep.config = cfg;
  std::mt19937_64 rng(cfg.seed);
  const int ns = chart.n_stable, nu = chart.n_unstable, m = chart.dim();
  const double r = cfg.radius;

  auto assemble = [&](const Eigen::VectorXd& s, const Eigen::VectorXd& u) {
    Eigen::VectorXd v(m);
    if (ns > 0) v.head(ns) = s;
    if (nu > 0) v.tail(nu) = u;
    return v;
  };

  // Injectivity of psi on the sampled block: pairwise distinct images.
  {
    std::vector<Eigen::VectorXd> coords;
    std::vector<Flag> images;
    for (int k = 0; k < 40; ++k) {
      Eigen::VectorXd v =
          assemble(r * detail::ball_sample(ns, rng), r * detail::ball_sample(nu, rng));
      coords.push_back(v);
      images.push_back(psi(ctx, chart, v));
    }
    rep.injectivity_ok = true;
    for (std::size_t i = 0; i < images.size() && rep.injectivity_ok; ++i)
      for (std::size_t j = i + 1; j < images.size(); ++j)
        if ((coords[i] - coords[j]).norm() > 1e-6 &&
            flag_distance(images[i], images[j]) < 1e-12) {
          rep.injectivity_ok = false;
          break;
        }
    if (!rep.injectivity_ok)
      throw NumericalError("index_pair: psi is not injective at this radius");
  }

  detail::ChartTracker tracker{ctx, chart, r};
  const int max_steps = static_cast<int>(cfg.horizon / cfg.dt) + 1;

  // Refine a boundary crossing between t and t+dt by bisection on the
  // continuous flow started from the last interior flag.
  auto crossing_unstable_norm = [&](const Flag& last_inside, const Eigen::VectorXd& v_last)
      -> std::optional<double> {
    double lo = 0.0, hi = cfg.dt;
    Eigen::VectorXd v_lo = v_last;
    for (int it = 0; it < 60 && hi - lo > 1e-9; ++it) {
      double mid = 0.5 * (lo + hi);
      Flag f = last_inside;
      f = flow(ctx.split(), mid, f);
      Eigen::VectorXd guess = v_lo;
      for (int i = 0; i < m; ++i) guess[i] *= std::exp((mid - lo) * chart.basis[i].rate);
      auto inv = chart_inverse(ctx, chart, f, guess);
      if (!inv.ok) {
        hi = mid;
        continue;
      }
      if (tracker.inside_B1(inv.v)) {
        lo = mid;
        v_lo = inv.v;
      } else {
        hi = mid;
      }
    }
    return chart.unstable_norm(v_lo);
  };

  // Condition 1: sampled interior points away from the component must leave
  // B1 in forward or backward time within the horizon.
  for (int k = 0; k < cfg.samples; ++k) {
    Eigen::VectorXd v0 =
        assemble(r * detail::ball_sample(ns, rng), r * detail::ball_sample(nu, rng));
    if (v0.size() == 0) break;
    if (v0.norm() <= r * cfg.near_component_frac) continue;  // near the component
    ++rep.isolation.checked;
    bool exited = false;
    for (int dir : {+1, -1}) {
      Flag state = psi(ctx, chart, v0);
      Eigen::VectorXd v = v0;
      for (int step = 0; step < max_steps; ++step) {
        auto nv = tracker.at(v, dir * cfg.dt, state);
        if (!nv || !tracker.inside_B1(*nv)) {
          exited = true;
          break;
        }
        v = *nv;
      }
      if (exited) break;
    }
    if (!exited) {
      rep.isolation.pass = false;
      ++rep.isolation.violations;
    }
  }

  // Condition 2: points of B0 leave B1 immediately and never re-enter the
  // interior within the horizon.
  if (nu == 0) {
    rep.positively_invariant.checked = 0;  // B0 is empty
  } else {
    for (int k = 0; k < cfg.samples; ++k) {
      Eigen::VectorXd u = detail::ball_sample(nu, rng);
      double norm = u.norm();
      if (norm == 0) continue;
      u *= r / norm;  // on the unstable sphere
      Eigen::VectorXd v0 = assemble(r * detail::ball_sample(ns, rng), u);
      ++rep.positively_invariant.checked;
      Flag state = psi(ctx, chart, v0);
      Eigen::VectorXd v = v0;
      bool ok = true;
      for (int step = 0; step < max_steps; ++step) {
        auto nv = tracker.at(v, cfg.dt, state);
        if (!nv) break;  // left the chart neighborhood, so left B1
        v = *nv;
        if (chart.unstable_norm(v) < r * (1 - cfg.band) && tracker.inside_B1(v)) {
          ok = false;  // re-entered the interior of B1 \ B0
          break;
        }
        if (chart.unstable_norm(v) > 2 * r) break;  // safely out
      }
      if (!ok) {
        rep.positively_invariant.pass = false;
        ++rep.positively_invariant.violations;
      }
    }
  }

  // Condition 3: forward exits cross the boundary with |v_u| = r.
  if (nu > 0) {
    for (int k = 0; k < cfg.samples; ++k) {
      Eigen::VectorXd v0 =
          assemble(r * detail::ball_sample(ns, rng), r * detail::ball_sample(nu, rng));
      Flag state = psi(ctx, chart, v0);
      Eigen::VectorXd v = v0;
      Flag last_inside = state;
      bool exited = false;
      for (int step = 0; step < max_steps; ++step) {
        Flag prev = state;
        auto nv = tracker.at(v, cfg.dt, state);
        if (!nv || !tracker.inside_B1(*nv)) {
          last_inside = prev;
          exited = true;
          break;
        }
        v = *nv;
      }
      if (!exited) continue;
      ++rep.exit_through_B0.checked;
      auto ucross = crossing_unstable_norm(last_inside, v);
      if (!ucross || *ucross < r * (1 - 10 * cfg.band)) {
        rep.exit_through_B0.pass = false;
        ++rep.exit_through_B0.violations;
      }
    }
  }

  return rep;
}

}  // namespace flagmorse

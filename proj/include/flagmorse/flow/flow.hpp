#pragma once

// The gradient flow exp(tH) on numerical flags, with per-step exponent
// rescaling for overflow control, and forward integration to the limit
// component.

#include "flagmorse/flow/context.hpp"

#include <cmath>

namespace flagmorse {

// Flow timeout carrying the observed trajectory.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> dist_to_limit;  // against the final flag, filled post hoc
  double elapsed = 0.0;
  int steps = 0;
};

struct FlowTimeout : NumericalError {
  TrajectoryRecord record;
  FlowTimeout(const std::string& what, TrajectoryRecord rec)
      : NumericalError(what), record(std::move(rec)) {}
};

// Action of exp(tH) on the flag, re-orthonormalized. Large |t| is split
// into steps keeping the extreme factor ratio at most exp(max_log) per
// step, so no scale information is lost to overflow.
inline Flag flow(const SplitElement& h, double t, Flag f, double max_log = std::log(1e6)) {
  if (!std::isfinite(t)) throw ConfigError("flow: time must be finite");
  if (f.n() != h.n()) throw ConfigError("flow: size mismatch");
  double spread = h.diag.maxCoeff() - h.diag.minCoeff();
  if (spread == 0.0 || t == 0.0) return f;
  double step = max_log / spread;
  double remaining = t;
  while (remaining != 0.0) {
    double dt = std::clamp(remaining, -step, step);
    Eigen::VectorXd factors = (dt * h.diag).array().exp();
    try {
      f.frame = orthonormalized(factors.asDiagonal() * f.frame);
    } catch (const NumericalError&) {
      throw NumericalError("flow: numerical degeneration at t = " + std::to_string(t - remaining + dt));
    }
    remaining -= dt;
  }
  return f;
}

struct LimitResult {
  Flag limit;
  int coset = 0;  // index into the context's coset list
  TrajectoryRecord record;
};

// Iterate the flow until successive flags agree within tol, then identify
// the fixed component containing the limit.
inline LimitResult flow_to_limit(const FlowContext& ctx, Flag f, double tol = 1e-9,
                                 double t_max = 400.0, double dt = 1.0) {
  if (tol <= 0) throw ConfigError("flow_to_limit: tol must be positive");
  TrajectoryRecord rec;
  std::vector<Flag> snaps{f};
  rec.times.push_back(0.0);
  double t = 0.0;
  while (true) {
    Flag next = flow(ctx.split(), dt, f);
    t += dt;
    rec.times.push_back(t);
    snaps.push_back(next);
    ++rec.steps;
    double d = flag_distance(f, next);
    f = std::move(next);
    if (d < tol) break;
    if (t >= t_max) {
      rec.elapsed = t;
      throw FlowTimeout("flow_to_limit: no convergence before t_max", std::move(rec));
    }
  }
  rec.elapsed = t;
  for (const auto& s : snaps) rec.dist_to_limit.push_back(flag_distance(s, f));
  LimitResult out{std::move(f), 0, std::move(rec)};
  out.coset = ctx.limit_component(out.limit, 1e-5);
  return out;
}

}  // namespace flagmorse

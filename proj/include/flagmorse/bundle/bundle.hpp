#pragma once

// Product flag bundles at desk scale: a chain-transitive base (finite cycle
// in discrete time, circle rotation in continuous time) with a constant
// exp(tH) cocycle or a per-state conformal cocycle taking values in
// L_H = K_H A_{Theta(H)}. The declared H is the characteristic element by
// construction; it is never inferred from the dynamics.

#include "flagmorse/flow/chart.hpp"

namespace flagmorse {

struct BaseSystem {
  enum class Kind { Cycle, Rotation };
  Kind kind = Kind::Cycle;
  int period = 1;       // cycle
  double angle = 0.0;   // rotation advance per unit time
  int samples = 0;      // rotation sample resolution

  static BaseSystem cycle(int p) {
    if (p < 1) throw ConfigError("cycle base needs period >= 1");
    BaseSystem b;
    b.kind = Kind::Cycle;
    b.period = p;
    return b;
  }
  static BaseSystem rotation(double angle, int samples) {
    if (samples < 1) throw ConfigError("rotation base needs samples >= 1");
    BaseSystem b;
    b.kind = Kind::Rotation;
    b.angle = angle;
    b.samples = samples;
    return b;
  }

  int count() const { return kind == Kind::Cycle ? period : samples; }
  int step(int state, int k = 1) const {
    if (kind != Kind::Cycle) throw ConfigError("discrete step needs a cycle base");
    int p = period;
    return ((state + k) % p + p) % p;
  }
};

struct Cocycle {
  enum class Kind { ConstantExp, Conformal };
  Kind kind = Kind::ConstantExp;
  std::vector<Eigen::MatrixXd> values;  // per base state, Conformal only
  bool validated = false;               // values certified inside L_H

  static Cocycle constant_exp() {
    Cocycle c;
    c.kind = Kind::ConstantExp;
    c.validated = true;
    return c;
  }

  // Per-state values; validated against the block structure of H.
  static Cocycle conformal(const SplitElement& h, std::vector<Eigen::MatrixXd> values,
                           double tol = 1e-10) {
    Cocycle c;
    c.kind = Kind::Conformal;
    c.values = std::move(values);
    for (const auto& g : c.values)
      if (!in_L_H(h, g, tol)) throw ConfigError("conformal cocycle value is not in L_H");
    c.validated = true;
    return c;
  }

  // No validation: for adversarial controls.
  static Cocycle raw(std::vector<Eigen::MatrixXd> values) {
    Cocycle c;
    c.kind = Kind::Conformal;
    c.values = std::move(values);
    c.validated = false;
    return c;
  }

  static bool in_L_H(const SplitElement& h, const Eigen::MatrixXd& g, double tol = 1e-10) {
    if (g.rows() != h.n() || g.cols() != h.n()) return false;
    double scale = g.cwiseAbs().maxCoeff();
    for (int b = 0; b < h.num_blocks(); ++b)
      for (int c = 0; c < h.num_blocks(); ++c) {
        if (b == c) continue;
        auto off = g.block(h.block_begin(b), h.block_begin(c),
                           h.block_end(b) - h.block_begin(b),
                           h.block_end(c) - h.block_begin(c));
        if (off.cwiseAbs().maxCoeff() > tol * scale) return false;
      }
    for (int b = 0; b < h.num_blocks(); ++b) {
      auto blk = g.block(h.block_begin(b), h.block_begin(b),
                         h.block_end(b) - h.block_begin(b),
                         h.block_end(b) - h.block_begin(b));
      Eigen::MatrixXd gram = blk.transpose() * blk;
      double c2 = gram.trace() / gram.rows();
      if (c2 <= 0) return false;
      Eigen::MatrixXd dev = gram - c2 * Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
      if (dev.cwiseAbs().maxCoeff() > tol * std::max(1.0, c2)) return false;
    }
    return true;
  }
};

// Per-state values k_x a_x exp(tau_x H) with tau_x > 0: a conformal cocycle
// whose characteristic element is the declared H by construction.
inline std::vector<Eigen::MatrixXd> aligned_conformal_values(const SplitElement& h, int count,
                                                             std::uint64_t seed,
                                                             double tau_min = 0.8,
                                                             double tau_max = 1.2) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tau(tau_min, tau_max);
  std::vector<Eigen::MatrixXd> out;
  for (int x = 0; x < count; ++x) {
    Eigen::MatrixXd g = sample_L_H(h, rng, 0.2);
    Eigen::VectorXd factors = (tau(rng) * h.diag).array().exp();
    out.push_back(Eigen::MatrixXd(factors.asDiagonal()) * g);
  }
  return out;
}

// Negative control: exp(H) with a nilpotent coupling between the split
// parts; not inside L_H, so mixing must be detected.
inline std::vector<Eigen::MatrixXd> adversarial_values(const SplitElement& h, int count,
                                                       double eps = 1e-3) {
  std::vector<Eigen::MatrixXd> out;
  const int n = h.n();
  Eigen::MatrixXd pert = Eigen::MatrixXd::Identity(n, n);
  pert(0, n - 1) += eps;  // strictly upper, crosses the extreme blocks
  for (int x = 0; x < count; ++x)
    out.push_back(Eigen::MatrixXd(h.diag.array().exp().matrix().asDiagonal()) * pert);
  return out;
}

struct BundlePoint {
  int base_index = 0;    // cycle coordinate
  double base_angle = 0; // rotation coordinate
  Flag flag;
};

// Advance a bundle point: the base marginal is autonomous, the fiber is
// multiplied by the accumulated cocycle.
inline BundlePoint bundle_flow(const FlowContext& ctx, const BaseSystem& base, const Cocycle& coc,
                               double t_or_steps, BundlePoint pt) {
  if (base.kind == BaseSystem::Kind::Cycle) {
    int k = static_cast<int>(t_or_steps);
    if (static_cast<double>(k) != t_or_steps)
      throw ConfigError("cycle base advances by whole steps");
    if (k < 0) throw ConfigError("bundle_flow: backward time not supported on cycles");
    for (int s = 0; s < k; ++s) {
      if (coc.kind == Cocycle::Kind::ConstantExp) {
        pt.flag = flow(ctx.split(), 1.0, pt.flag);
      } else {
        const auto& g = coc.values.at(pt.base_index);
        pt.flag.frame = orthonormalized(g * pt.flag.frame);
      }
      pt.base_index = base.step(pt.base_index);
    }
    return pt;
  }
  // rotation base: continuous time, constant cocycle only
  if (coc.kind != Cocycle::Kind::ConstantExp)
    throw ConfigError("per-state cocycles over a rotation base are unsupported");
  pt.flag = flow(ctx.split(), t_or_steps, pt.flag);
  pt.base_angle += t_or_steps * base.angle;
  return pt;
}

struct ComponentDescriptor {
  int coset = 0;
  std::vector<int> rep_word;
  int fiber_dim = 0;     // dimension of the fixed fiber piece
  int unstable_dim = 0;  // n_w
  bool attractor = false;
  bool repeller = false;
};

// The finest Morse decomposition of the bundle flow: one component per
// double coset, each the product of the base with the fiberwise fixed set.
// Membership of a bundle point is fiberwise.
inline std::vector<ComponentDescriptor> morse_components(const FlowContext& ctx,
                                                         const BaseSystem& base,
                                                         const Cocycle& coc) {
  (void)base;
  if (!coc.validated)
    throw ConfigError("morse_components: cocycle is not of a supported validated kind");
  std::vector<ComponentDescriptor> out;
  const auto& cosets = ctx.cosets();
  for (std::size_t c = 0; c < cosets.size(); ++c) {
    auto sp = sign_profile(ctx.group(), ctx.chamber(), ctx.theta(), cosets[c].rep);
    ComponentDescriptor d;
    d.coset = static_cast<int>(c);
    d.rep_word = ctx.group().word(cosets[c].rep);
    d.fiber_dim = sp.n_zero;
    d.unstable_dim = sp.n_plus;
    d.attractor = sp.n_plus == 0;
    d.repeller = sp.n_plus + sp.n_zero == sp.total();
    out.push_back(std::move(d));
  }
  return out;
}

inline bool component_contains(const FlowContext& ctx, int coset, const BundlePoint& pt,
                               double tol = 1e-6) {
  if (!ctx.near_fixed(pt.flag, tol)) return false;
  try {
    return ctx.limit_component(pt.flag, tol) == coset;
  } catch (const NumericalError&) {
    return false;
  }
}

struct StableSetReport {
  int samples = 0;
  int agree = 0;
  int disagree = 0;
  int unclassifiable = 0;
  int unconverged = 0;
  double agreement_rate() const {
    int classified = agree + disagree;
    return classified == 0 ? 0.0 : static_cast<double>(agree) / classified;
  }
};

// Sample bundle points, evolve them forward, and compare the empirical
// limit component against the fiberwise rank-matrix prediction on the
// initial flag.
inline StableSetReport verify_stable_sets(const FlowContext& ctx, const BaseSystem& base,
                                          const Cocycle& coc, int samples, int horizon,
                                          std::uint64_t seed) {
  StableSetReport rep;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_state(0, base.count() - 1);
  for (int k = 0; k < samples; ++k) {
    BundlePoint pt;
    pt.base_index = pick_state(rng);
    if (base.kind == BaseSystem::Kind::Rotation)
      pt.base_angle = 2 * M_PI * pt.base_index / base.count();
    pt.flag = random_flag(ctx.signature(), rng);
    int predicted;
    try {
      predicted = ctx.classify(pt.flag);
    } catch (const NumericalError&) {
      ++rep.unclassifiable;
      continue;
    }
    double steps = base.kind == BaseSystem::Kind::Cycle ? horizon : double(horizon);
    BundlePoint moved = bundle_flow(ctx, base, coc, steps, pt);
    int empirical = -1;
    try {
      empirical = ctx.limit_component(moved.flag, 1e-5);
    } catch (const NumericalError&) {
      moved = bundle_flow(ctx, base, coc, steps, moved);  // one retry, doubled horizon
      try {
        empirical = ctx.limit_component(moved.flag, 1e-5);
      } catch (const NumericalError&) {
        ++rep.unconverged;
        continue;
      }
    }
    if (empirical == predicted) ++rep.agree;
    else ++rep.disagree;
  }
  return rep;
}

struct WhitneySplitReport {
  int w = 0;
  double max_step_mixing = 0.0;       // worst per-step leak between the split parts
  bool split_invariant = false;       // max mixing below the bound
  double mixing_bound = 1e-8;
  double stable_monodromy_max = 0.0;  // worst stable growth over one period
  double unstable_monodromy_min = 0.0;
  bool hyperbolic = false;            // stable < 1 < unstable over the period
};

// Evolve the chart basis under Ad of the cocycle and measure how much of
// each stable (resp. unstable) basis vector leaks out of its sector.
inline WhitneySplitReport whitney_split_check(const FlowContext& ctx, const BaseSystem& base,
                                              const Cocycle& coc, int w,
                                              double mixing_bound = 1e-8) {
  if (base.kind != BaseSystem::Kind::Cycle)
    throw ConfigError("whitney_split_check runs on cycle bases");
  LinChart chart = lin_chart(ctx, w);
  const SplitElement& h = ctx.split();
  const int n = ctx.n();
  WhitneySplitReport rep;
  rep.w = w;
  rep.mixing_bound = mixing_bound;

  auto step_matrix = [&](int state) -> Eigen::MatrixXd {
    if (coc.kind == Cocycle::Kind::ConstantExp)
      return h.diag.array().exp().matrix().asDiagonal();
    return coc.values.at(state);
  };

  auto sector_sign = [&](int i, int j) {
    double d = h.diag[i] - h.diag[j];
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
  };

  auto off_sector_norm = [&](const Eigen::MatrixXd& y, int sign) {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (sector_sign(i, j) != sign) s += y(i, j) * y(i, j);
    return std::sqrt(s);
  };

  // per-step mixing
  for (int state = 0; state < base.count(); ++state) {
    Eigen::MatrixXd g = step_matrix(state);
    Eigen::MatrixXd ginv = g.inverse();
    for (int i = 0; i < chart.dim(); ++i) {
      Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
      x(chart.basis[i].p, chart.basis[i].q) = 1.0;
      Eigen::MatrixXd y = g * x * ginv;
      int sign = chart.is_stable_index(i) ? -1 : 1;
      rep.max_step_mixing =
          std::max(rep.max_step_mixing, off_sector_norm(y, sign) / y.norm());
    }
  }
  rep.split_invariant = rep.max_step_mixing < mixing_bound;

  // monodromy rates over one full period
  Eigen::MatrixXd mono = Eigen::MatrixXd::Identity(n, n);
  for (int state = 0; state < base.count(); ++state) mono = step_matrix(state) * mono;
  Eigen::MatrixXd mono_inv = mono.inverse();
  double smax = 0.0, umin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < chart.dim(); ++i) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
    x(chart.basis[i].p, chart.basis[i].q) = 1.0;
    double factor = (mono * x * mono_inv).norm();
    if (chart.is_stable_index(i)) smax = std::max(smax, factor);
    else umin = std::min(umin, factor);
  }
  rep.stable_monodromy_max = chart.n_stable > 0 ? smax : 0.0;
  rep.unstable_monodromy_min = chart.n_unstable > 0 ? umin : std::numeric_limits<double>::infinity();
  rep.hyperbolic = (chart.n_stable == 0 || smax < 1.0) && (chart.n_unstable == 0 || umin > 1.0);
  return rep;
}

}  // namespace flagmorse

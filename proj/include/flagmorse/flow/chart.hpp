#pragma once

// Equivariant linearization chart at a fixed component: the transverse
// subspace is spanned by the root-vector matrices E_pq selected by the
// sign calculus, the chart map is exp of their combination applied to the
// base point, and the chart inverse is a Gauss-Newton solve against the
// isospectral embedding. The finite-difference Jacobian of the time-1
// flow in chart coordinates recovers the predicted eigenvalue multiset.

#include "flagmorse/flow/flow.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace flagmorse {

struct ChartBasisVector {
  int p = 0, q = 0;   // matrix E_pq, the root space of e_p - e_q
  double rate = 0.0;  // (e_p - e_q)(H) = diag[p] - diag[q]
};

struct LinChart {
  int w = 0;  // base element; base point is its coordinate flag
  std::vector<ChartBasisVector> basis;  // stable entries first, then unstable
  int n_stable = 0, n_unstable = 0;
  Flag base_point;

  int dim() const { return n_stable + n_unstable; }
  bool is_stable_index(int i) const { return i < n_stable; }

  Eigen::MatrixXd matrix_for(const Eigen::VectorXd& coeffs) const {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(base_point.n(), base_point.n());
    for (int i = 0; i < dim(); ++i) x(basis[i].p, basis[i].q) += coeffs[i];
    return x;
  }

  double stable_norm(const Eigen::VectorXd& coeffs) const {
    return coeffs.head(n_stable).norm();
  }
  double unstable_norm(const Eigen::VectorXd& coeffs) const {
    return coeffs.tail(n_unstable).norm();
  }
};

// Chart basis at w b_Theta: for every root b in Pi^- \ <Theta> with
// (w b)(H) != 0 the elementary matrix sitting in the root space of w b.
inline LinChart lin_chart(const FlowContext& ctx, int w) {
  const RootSystem& rs = ctx.roots();
  LinChart chart;
  chart.w = w;
  chart.base_point = ctx.coordinate_flag(w);
  std::vector<ChartBasisVector> stable, unstable;
  for (int b = rs.num_positive; b < rs.num_roots(); ++b) {
    if (rs.in_span(b, ctx.theta())) continue;
    int g = ctx.group().act_root(w, b);
    Rat val = rs.value(g, ctx.chamber().H);
    if (val == Rat(0)) continue;
    // root vector of g = e_p - e_q
    int p = -1, q = -1;
    for (int i = 0; i < rs.ambient; ++i) {
      if (rs.roots[g][i] == Rat(1)) p = i;
      if (rs.roots[g][i] == Rat(-1)) q = i;
    }
    ChartBasisVector bv{p, q, ctx.split().diag[p] - ctx.split().diag[q]};
    (val < Rat(0) ? stable : unstable).push_back(bv);
  }
  chart.n_stable = static_cast<int>(stable.size());
  chart.n_unstable = static_cast<int>(unstable.size());
  chart.basis = std::move(stable);
  chart.basis.insert(chart.basis.end(), unstable.begin(), unstable.end());
  return chart;
}

// psi at the base point: exp(X) applied to w b_Theta.
inline Flag psi(const FlowContext& ctx, const LinChart& chart, const Eigen::VectorXd& coeffs) {
  Eigen::MatrixXd x = chart.matrix_for(coeffs);
  Eigen::MatrixXd g = x.exp();
  return Flag{ctx.signature(), orthonormalized(g * chart.base_point.frame)};
}

// psi at the translated point g (w b_Theta) with the chart transported by
// Ad(g): exp(Ad(g) X) g x = g exp(X) x.
inline Flag psi_from(const FlowContext& ctx, const LinChart& chart, const Eigen::MatrixXd& g,
                     const Eigen::VectorXd& coeffs) {
  Eigen::MatrixXd x = chart.matrix_for(coeffs);
  Eigen::MatrixXd ginv = g.inverse();
  Eigen::MatrixXd xt = g * x * ginv;
  return Flag{ctx.signature(), orthonormalized(xt.exp() * g * chart.base_point.frame)};
}

// Block-orthogonal alignment: a k in K_H with k (w b_Theta) = f, built by
// nested per-block Gram-Schmidt over the flag chain. Requires f to lie in
// the fixed component of w's coset (within tol).
inline Eigen::MatrixXd align_in_component(const FlowContext& ctx, int w, const Flag& f,
                                          double tol = 1e-8) {
  const int n = ctx.n();
  const auto& sigma = ctx.perm(w);
  const SplitElement& h = ctx.split();
  if (!ctx.near_fixed(f, 1e-6) ||
      ctx.limit_component(f, 1e-6) != ctx.coset_index_of_element(w))
    throw NumericalError("align_in_component: flag is not on the expected fixed component");

  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> levels(ctx.signature().dims);
  levels.push_back(n);
  for (int b = 0; b < h.num_blocks(); ++b) {
    const int s = h.block_begin(b), e = h.block_end(b), bs = e - s;
    // coordinates of this block in chart order: columns l with sigma(l) in [s, e),
    // grouped by flag level
    Eigen::MatrixXd basis(bs, 0);
    int filled = 0;
    int prev_d = 0;
    for (int d : levels) {
      // target dimension of V_d within this block
      int want = 0;
      for (int l = 0; l < d; ++l)
        if (sigma[l] >= s && sigma[l] < e) ++want;
      if (want > filled) {
        // extend the block basis with the projection of the new columns
        Eigen::MatrixXd proj = f.frame.middleRows(s, bs).middleCols(prev_d, d - prev_d);
        Eigen::MatrixXd cand(bs, filled + (d - prev_d));
        if (filled > 0) cand.leftCols(filled) = basis;
        cand.rightCols(d - prev_d) = proj;
        // rank-revealing pass: Gram-Schmidt against what we have
        Eigen::MatrixXd grown(bs, want);
        if (filled > 0) grown.leftCols(filled) = basis;
        int got = filled;
        for (int c = filled; c < cand.cols() && got < want; ++c) {
          Eigen::VectorXd v = cand.col(c);
          for (int j = 0; j < got; ++j) v -= grown.col(j).dot(v) * grown.col(j);
          double nv = v.norm();
          if (nv > tol) grown.col(got++) = v / nv;
        }
        if (got != want)
          throw NumericalError("align_in_component: flag chain does not match the component");
        basis = grown;
        filled = want;
      }
      prev_d = d;
    }
    // place the block basis at the coordinates used by the reference flag,
    // then complete the unused coordinates of the block
    std::vector<int> used;
    for (int l = 0; l < n; ++l)
      if (sigma[l] >= s && sigma[l] < e) used.push_back(sigma[l]);
    // note: `used` is in chart order; its size is the number of levels
    // occupied... complete with any coordinates of [s, e) not in `used`
    std::vector<char> taken(bs, 0);
    int col = 0;
    for (int u : used) {
      if (col < filled) {
        k.block(s, u, bs, 1) = basis.col(col++);
        taken[u - s] = 1;
      }
    }
    // complete the remaining block coordinates by Gram-Schmidt from the
    // identity candidates
    Eigen::MatrixXd full(bs, bs);
    full.leftCols(filled) = basis;
    int got = filled;
    for (int c = 0; c < bs && got < bs; ++c) {
      Eigen::VectorXd v = Eigen::VectorXd::Unit(bs, c);
      for (int j = 0; j < got; ++j) v -= full.col(j).dot(v) * full.col(j);
      double nv = v.norm();
      if (nv > 0.5 * tol) full.col(got++) = v / nv;
    }
    if (got != bs) throw NumericalError("align_in_component: block completion failed");
    int next = filled;
    for (int u = s; u < e; ++u)
      if (!taken[u - s]) k.block(s, u, bs, 1) = full.col(next++);
  }
  check_orthonormal(k, 1e-8);
  return k;
}

struct ChartInverse {
  Eigen::VectorXd v;
  double residual = 0.0;
  bool ok = false;
};

// Gauss-Newton inversion of psi against the flag embedding. ok means the
// target is (numerically) on the chart surface near the returned v.
inline ChartInverse chart_inverse(const FlowContext& ctx, const LinChart& chart, const Flag& f,
                                  Eigen::VectorXd guess, double fd_step = 1e-6,
                                  int max_iter = 25, double res_tol = 1e-9) {
  const int m = chart.dim();
  ChartInverse out;
  Eigen::VectorXd target =
      Eigen::Map<const Eigen::VectorXd>(flag_embedding(f).data(), f.n() * f.n());
  auto eval = [&](const Eigen::VectorXd& v) {
    Eigen::MatrixXd e = flag_embedding(psi(ctx, chart, v));
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(e.data(), e.size()));
  };
  Eigen::VectorXd v = std::move(guess);
  double res = (eval(v) - target).norm();
  for (int it = 0; it < max_iter; ++it) {
    if (res < res_tol) break;
    Eigen::MatrixXd jac(target.size(), m);
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd vp = v, vm = v;
      vp[j] += fd_step;
      vm[j] -= fd_step;
      jac.col(j) = (eval(vp) - eval(vm)) / (2 * fd_step);
    }
    Eigen::VectorXd r = target - eval(v);
    Eigen::VectorXd dv = jac.colPivHouseholderQr().solve(r);
    // backtracking on the residual
    double scale = 1.0;
    for (int bt = 0; bt < 12; ++bt) {
      double nres = (eval(v + scale * dv) - target).norm();
      if (nres < res) {
        v += scale * dv;
        res = nres;
        break;
      }
      scale *= 0.5;
      if (bt == 11) it = max_iter;  // stalled
    }
  }
  out.v = std::move(v);
  out.residual = res;
  out.ok = res < 1e-7;
  return out;
}

// Finite-difference Jacobian of the time-1 flow map in chart coordinates;
// returns the logs of the eigenvalue moduli, sorted ascending. The
// predicted multiset is {(w b)(H) : b in Pi^- \ <Theta>, (w b)(H) != 0}.
inline std::vector<double> linearized_eigenvalues(const FlowContext& ctx, int w,
                                                  double fd_step = 1e-6) {
  LinChart chart = lin_chart(ctx, w);
  const int m = chart.dim();
  if (m == 0) return {};
  const int n2 = ctx.n() * ctx.n();
  auto embed_psi = [&](const Eigen::VectorXd& v) {
    Eigen::MatrixXd e = flag_embedding(psi(ctx, chart, v));
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(e.data(), n2));
  };
  auto embed_flow = [&](const Eigen::VectorXd& v) {
    Flag moved = flow(ctx.split(), 1.0, psi(ctx, chart, v));
    Eigen::MatrixXd e = flag_embedding(moved);
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(e.data(), n2));
  };
  Eigen::MatrixXd a(n2, m), b(n2, m);
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXd vp = Eigen::VectorXd::Zero(m), vm = Eigen::VectorXd::Zero(m);
    vp[j] += fd_step;
    vm[j] -= fd_step;
    a.col(j) = (embed_psi(vp) - embed_psi(vm)) / (2 * fd_step);
    b.col(j) = (embed_flow(vp) - embed_flow(vm)) / (2 * fd_step);
  }
  Eigen::MatrixXd jac = a.colPivHouseholderQr().solve(b);
  Eigen::EigenSolver<Eigen::MatrixXd> eig(jac);
  std::vector<double> logs;
  for (int i = 0; i < m; ++i) {
    double mod = std::abs(eig.eigenvalues()[i]);
    if (!(mod > 0))
      throw NumericalError("linearized_eigenvalues: vanishing eigenvalue modulus");
    logs.push_back(std::log(mod));
  }
  std::sort(logs.begin(), logs.end());
  return logs;
}

// Sample an element of L_H = K_H A_{Theta(H)}: block-orthogonal times
// positive block-scalar with unit determinant.
inline Eigen::MatrixXd sample_L_H(const SplitElement& h, std::mt19937_64& rng,
                                  double scalar_spread = 0.5) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = h.n();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (int b = 0; b < h.num_blocks(); ++b) {
    int s = h.block_begin(b), bs = h.block_end(b) - s;
    Eigen::MatrixXd m(bs, bs);
    for (int i = 0; i < bs; ++i)
      for (int j = 0; j < bs; ++j) m(i, j) = gauss(rng);
    g.block(s, s, bs, bs) = orthonormalized(m);
  }
  // block-scalar part: exponents constant per block, zero total trace
  Eigen::VectorXd expo(n);
  double mean = 0.0;
  std::vector<double> per_block(h.num_blocks());
  for (int b = 0; b < h.num_blocks(); ++b) {
    per_block[b] = scalar_spread * gauss(rng);
    mean += per_block[b] * (h.block_end(b) - h.block_begin(b));
  }
  mean /= n;
  for (int b = 0; b < h.num_blocks(); ++b)
    for (int i = h.block_begin(b); i < h.block_end(b); ++i) expo[i] = per_block[b] - mean;
  return expo.array().exp().matrix().asDiagonal() * g;
}

}  // namespace flagmorse

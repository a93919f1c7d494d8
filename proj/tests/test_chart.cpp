#include "flagmorse/flow/chart.hpp"
#include "flagmorse/flow/invariance.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace flagmorse;
using test_helpers::elem;
using test_helpers::mask;

namespace {

Flag line_flag(double x, double y) {
  Eigen::MatrixXd m(2, 2);
  double n = std::hypot(x, y);
  m << x / n, -y / n, y / n, x / n;
  return make_flag(FlagSignature::maximal(2), m);
}

std::vector<double> predicted_rates(const FlowContext& ctx, int w) {
  std::vector<double> out;
  auto sp = sign_profile(ctx.group(), ctx.chamber(), ctx.theta(), w);
  for (auto [root, sign] : sp.classified) {
    if (sign == 0) continue;
    int g = ctx.group().act_root(w, root);
    out.push_back(to_double(ctx.roots().value(g, ctx.chamber().H)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("chart bases follow the sign calculus", "[chart]") {
  FlowContext ctx2({Rat(1)}, 0);  // n = 2, H = diag(1,-1)
  auto c1 = lin_chart(ctx2, ctx2.group().identity());
  REQUIRE(c1.n_stable == 1);
  REQUIRE(c1.n_unstable == 0);
  REQUIRE(c1.basis[0].p == 1);
  REQUIRE(c1.basis[0].q == 0);
  REQUIRE(c1.basis[0].rate == Catch::Approx(-2.0));

  FlowContext ctx3({Rat(1), Rat(1)}, 0);  // n = 3 regular
  auto cid = lin_chart(ctx3, ctx3.group().identity());
  REQUIRE(cid.n_stable == 3);
  REQUIRE(cid.n_unstable == 0);
  for (const auto& b : cid.basis) REQUIRE(b.p > b.q);  // strictly lower triangular

  FlowContext ctxp({Rat(0), Rat(1)}, 0);  // Theta(H) = {a1}
  auto cs2 = lin_chart(ctxp, elem(ctxp.group(), {2}));
  auto sp = sign_profile(ctxp.group(), ctxp.chamber(), 0, elem(ctxp.group(), {2}));
  REQUIRE(cs2.n_unstable == sp.n_plus);
  REQUIRE(cs2.n_stable == sp.n_minus);
  REQUIRE(cs2.n_unstable == 1);
  REQUIRE(cs2.n_stable == 1);
}

TEST_CASE("chart basis sizes match the sign profile everywhere", "[chart]") {
  for (auto values : {RatVec{Rat(1), Rat(1)}, RatVec{Rat(0), Rat(1)}, RatVec{Rat(1), Rat(0)}}) {
    for (SimpleSet t = 0; t <= full_set(2); ++t) {
      FlowContext ctx(values, t);
      for (int w = 0; w < ctx.group().size(); ++w) {
        auto chart = lin_chart(ctx, w);
        auto sp = sign_profile(ctx.group(), ctx.chamber(), t, w);
        REQUIRE(chart.n_stable == sp.n_minus);
        REQUIRE(chart.n_unstable == sp.n_plus);
      }
    }
  }
}

TEST_CASE("psi fixes the base point and parameterizes lines explicitly", "[chart]") {
  FlowContext ctx({Rat(1)}, 0);
  int rep = ctx.group().longest();  // repeller of RP^1
  auto chart = lin_chart(ctx, rep);
  REQUIRE(chart.dim() == 1);

  Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
  REQUIRE(flag_distance(psi(ctx, chart, zero), ctx.coordinate_flag(rep)) < 1e-12);

  // exp of the nilpotent: the repeller chart reaches span(e2 + s e1)
  for (double s : {0.2, -0.7, 1.5}) {
    Eigen::VectorXd v(1);
    v[0] = s;
    REQUIRE(flag_distance(psi(ctx, chart, v), line_flag(s, 1)) < 1e-12);
  }
}

TEST_CASE("psi is L_H-equivariant", "[chart]") {
  FlowContext ctx({Rat(0), Rat(1)}, 0);  // nonregular: L_H is a genuine subgroup
  auto chart = lin_chart(ctx, elem(ctx.group(), {2}));
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 0.1);
  for (int k = 0; k < 100; ++k) {
    Eigen::MatrixXd g = sample_L_H(ctx.split(), rng);
    Eigen::VectorXd v(chart.dim());
    for (int i = 0; i < v.size(); ++i) v[i] = gauss(rng);
    Flag left = psi_from(ctx, chart, g, v);
    Flag right{ctx.signature(), orthonormalized(g * psi(ctx, chart, v).frame)};
    REQUIRE(flag_distance(left, right) < 1e-9);
  }
}

TEST_CASE("stable chart coefficients map into the stable set", "[chart]") {
  FlowContext ctx({Rat(0), Rat(1)}, 0);
  std::mt19937_64 rng(29);
  std::normal_distribution<double> gauss(0.0, 0.05);
  for (const auto& dc : ctx.cosets()) {
    auto chart = lin_chart(ctx, dc.rep);
    int coset = ctx.coset_index_of_element(dc.rep);
    for (int k = 0; k < 25; ++k) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(chart.dim());
      for (int i = 0; i < chart.n_stable; ++i) v[i] = gauss(rng);
      auto f = psi(ctx, chart, v);
      REQUIRE(ctx.classify(f) == coset);
      // and the forward limit is the component itself
      auto res = flow_to_limit(ctx, f);
      REQUIRE(res.coset == coset);
    }
  }
}

TEST_CASE("alignment produces a block-orthogonal transporter", "[chart]") {
  FlowContext ctx({Rat(0), Rat(1)}, 0);
  std::mt19937_64 rng(37);
  int w = elem(ctx.group(), {2});
  auto base = ctx.coordinate_flag(w);
  for (int k = 0; k < 20; ++k) {
    Eigen::MatrixXd g = sample_L_H(ctx.split(), rng);
    Flag point{ctx.signature(), orthonormalized(g * base.frame)};
    Eigen::MatrixXd kmat = align_in_component(ctx, w, point);
    // k is orthogonal, block diagonal, and maps the reference flag to the point
    check_orthonormal(kmat, 1e-8);
    for (int b = 0; b < ctx.split().num_blocks(); ++b)
      for (int c = 0; c < ctx.split().num_blocks(); ++c) {
        if (b == c) continue;
        auto off = kmat.block(ctx.split().block_begin(b), ctx.split().block_begin(c),
                              ctx.split().block_end(b) - ctx.split().block_begin(b),
                              ctx.split().block_end(c) - ctx.split().block_begin(c));
        REQUIRE(off.cwiseAbs().maxCoeff() < 1e-10);
      }
    Flag mapped{ctx.signature(), orthonormalized(kmat * base.frame)};
    REQUIRE(flag_distance(mapped, point) < 1e-9);
  }
}

TEST_CASE("chart inversion is a local inverse of psi", "[chart]") {
  FlowContext ctx({Rat(1), Rat(1)}, 0);
  auto chart = lin_chart(ctx, elem(ctx.group(), {1}));
  std::mt19937_64 rng(53);
  std::normal_distribution<double> gauss(0.0, 0.05);
  for (int k = 0; k < 30; ++k) {
    Eigen::VectorXd v(chart.dim());
    for (int i = 0; i < v.size(); ++i) v[i] = gauss(rng);
    auto inv = chart_inverse(ctx, chart, psi(ctx, chart, v), Eigen::VectorXd::Zero(chart.dim()));
    REQUIRE(inv.ok);
    REQUIRE((inv.v - v).norm() < 1e-7);
  }
}

TEST_CASE("linearized eigenvalue examples", "[chart]") {
  FlowContext ctx2({Rat(1)}, 0);  // H = diag(1,-1)
  auto l1 = linearized_eigenvalues(ctx2, ctx2.group().identity());
  REQUIRE(l1.size() == 1);
  REQUIRE(l1[0] == Catch::Approx(-2.0).margin(1e-5));

  FlowContext ctx3({Rat(1), Rat(1)}, 0);  // H = diag(1,0,-1)
  auto l3 = linearized_eigenvalues(ctx3, ctx3.group().identity());
  REQUIRE(l3.size() == 3);
  REQUIRE(l3[0] == Catch::Approx(-2.0).margin(1e-5));
  REQUIRE(l3[1] == Catch::Approx(-1.0).margin(1e-5));
  REQUIRE(l3[2] == Catch::Approx(-1.0).margin(1e-5));

  // time reversal: the repeller mirrors the attractor
  auto lrep = linearized_eigenvalues(ctx3, ctx3.group().longest());
  REQUIRE(lrep.size() == 3);
  REQUIRE(lrep[0] == Catch::Approx(1.0).margin(1e-5));
  REQUIRE(lrep[1] == Catch::Approx(1.0).margin(1e-5));
  REQUIRE(lrep[2] == Catch::Approx(2.0).margin(1e-5));
}

TEST_CASE("linearized eigenvalues match the sign calculus for n = 3", "[chart]") {
  for (auto values : {RatVec{Rat(1), Rat(1)}, RatVec{Rat(0), Rat(1)}, RatVec{Rat(1), Rat(0)}}) {
    for (SimpleSet t = 0; t <= full_set(2); ++t) {
      FlowContext ctx(values, t);
      for (const auto& dc : ctx.cosets()) {
        auto expected = predicted_rates(ctx, dc.rep);
        auto got = linearized_eigenvalues(ctx, dc.rep);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i)
          REQUIRE(got[i] == Catch::Approx(expected[i]).margin(1e-5));
      }
    }
  }
}

TEST_CASE("hyperbolic decay in the chart norm", "[chart]") {
  FlowContext ctx({Rat(1), Rat(1)}, 0);
  std::mt19937_64 rng(61);
  std::normal_distribution<double> gauss(0.0, 0.03);
  for (const auto& dc : ctx.cosets()) {
    auto chart = lin_chart(ctx, dc.rep);
    if (chart.n_stable == 0) continue;
    double alpha = std::numeric_limits<double>::infinity();
    for (int i = 0; i < chart.n_stable; ++i) alpha = std::min(alpha, -chart.basis[i].rate);
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(chart.dim());
      for (int i = 0; i < chart.n_stable; ++i) v[i] = gauss(rng);
      double v0 = v.norm();
      if (v0 < 1e-6) continue;
      for (double t : {0.5, 1.0, 2.0}) {
        auto moved = flow(ctx.split(), t, psi(ctx, chart, v));
        auto inv = chart_inverse(ctx, chart, moved, v * std::exp(-alpha * t));
        REQUIRE(inv.ok);
        REQUIRE(inv.v.norm() <= 1.05 * std::exp(-alpha * t) * v0);
      }
    }
  }
}

TEST_CASE("sl3 isotropy invariance counterexample reproduces exactly", "[chart]") {
  auto rep = sl3_invariance_counterexample();
  REQUIRE(rep.bracket_nonzero);
  REQUIRE(rep.sum_root_positive);
  REQUIRE(rep.alpha_value == 3);
  REQUIRE(rep.beta_value == 0);
  REQUIRE(rep.sum_value == 3);
  REQUIRE(rep.invariance_fails);
  REQUIRE(rep.reproduced);
}

TEST_CASE("isotropy invariance holds in the covered cases", "[chart]") {
  auto rs = build_root_system(SystemKind::A, 2);
  WeylGroup wg(rs);

  // regular H: L_H = Z_H, invariance is vacuous
  RatVec regular{Rat(2), Rat(0), Rat(-2)};
  for (int w = 0; w < wg.size(); ++w)
    REQUIRE(z_isotropy_invariance(wg, regular, 0, w).invariant);

  // attractor with Theta inside Theta(H)
  RatVec flat{Rat(1), Rat(1), Rat(-2)};  // Theta(H) = {a1}
  REQUIRE(z_isotropy_invariance(wg, flat, 0, wg.identity()).invariant);
  REQUIRE(z_isotropy_invariance(wg, flat, mask({0}), wg.identity()).invariant);
}

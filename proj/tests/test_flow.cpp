#include "flagmorse/flow/flow.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace flagmorse;
using test_helpers::mask;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<int>(v.size()));
  int i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

Flag line_flag(double x, double y) {
  Eigen::MatrixXd m(2, 2);
  double n = std::hypot(x, y);
  m << x / n, -y / n, y / n, x / n;
  return make_flag(FlagSignature::maximal(2), m);
}

}  // namespace

TEST_CASE("split elements validate and carry their block structure", "[flow]") {
  auto h = SplitElement::from_diag(vec({1, 0, -1}));
  REQUIRE(h.num_blocks() == 3);
  REQUIRE(h.theta() == 0);

  auto h2 = SplitElement::from_diag(vec({0.5, 0.5, -1}));
  REQUIRE(h2.num_blocks() == 2);
  REQUIRE(h2.theta() == mask({0}));

  REQUIRE_THROWS_AS(SplitElement::from_diag(vec({-1, 0, 1})), ConfigError);
  REQUIRE_THROWS_AS(SplitElement::from_diag(vec({1, 0, 0})), ConfigError);

  // chamber dictionary: a_i(H) = diag[i] - diag[i+1]
  auto rs = build_root_system(SystemKind::A, 2);
  auto ce = make_chamber(rs, {Rat(1), Rat(1)});
  auto hc = SplitElement::from_chamber(ce);
  REQUIRE(hc.diag.isApprox(vec({1, 0, -1})));
  auto ce2 = make_chamber(rs, {Rat(0), Rat(1)});
  auto hc2 = SplitElement::from_chamber(ce2);
  REQUIRE(hc2.theta() == mask({0}));
}

TEST_CASE("flag signatures encode theta", "[flow]") {
  for (int n = 2; n <= 4; ++n)
    for (SimpleSet t = 0; t <= full_set(n - 1); ++t) {
      auto sig = FlagSignature::from_theta(n, t);
      REQUIRE(sig.theta() == t);
    }
  auto sig = FlagSignature::from_theta(3, mask({0}));
  REQUIRE(sig.dims == std::vector<int>{2});
}

TEST_CASE("flag distance is a representative-independent metric", "[flow]") {
  std::mt19937_64 rng(7);
  auto sig = FlagSignature::maximal(3);
  auto f = random_flag(sig, rng);
  auto g = random_flag(sig, rng);
  REQUIRE(flag_distance(f, f) == 0.0);
  REQUIRE(flag_distance(f, g) == Catch::Approx(flag_distance(g, f)));
  auto e1 = line_flag(1, 0);
  auto e2 = line_flag(0, 1);
  REQUIRE(flag_distance(e1, e2) == Catch::Approx(M_PI / 2));
}

TEST_CASE("isospectral embedding", "[flow]") {
  auto h = SplitElement::from_diag(vec({1, 0, -1}));
  auto f = standard_flag(FlagSignature::maximal(3));
  REQUIRE(embed_in_s(h, f).isApprox(Eigen::MatrixXd(h.diag.asDiagonal())));

  std::mt19937_64 rng(11);
  auto g = random_flag(FlagSignature::maximal(3), rng);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(embed_in_s(h, g));
  Eigen::VectorXd expect = h.diag.reverse();  // ascending
  REQUIRE(eig.eigenvalues().isApprox(expect, 1e-10));

  auto h2 = SplitElement::from_diag(vec({0.5, 0.5, -1}));
  REQUIRE_THROWS_AS(embed_in_s(h2, g), ConfigError);  // signature mismatch
}

TEST_CASE("flow basics", "[flow]") {
  auto h = SplitElement::from_diag(vec({1, -1}));
  auto f = line_flag(1, 1);
  REQUIRE(flag_distance(flow(h, 0.0, f), f) < 1e-14);

  // the standard flag is an eigenflag, fixed for all times
  auto h3 = SplitElement::from_diag(vec({1, 0, -1}));
  auto b = standard_flag(FlagSignature::maximal(3));
  for (double t : {0.5, 3.0, 17.0, -4.0})
    REQUIRE(flag_distance(flow(h3, t, b), b) < 1e-12);

  // 2x2 closed form: the line through (1,1) converges onto e1
  auto moved = flow(h, 5.0, f);
  REQUIRE(flag_distance(moved, line_flag(1, 0)) < 1e-4);
  REQUIRE(flag_distance(moved, line_flag(1, 0)) ==
          Catch::Approx(std::atan(std::exp(-10.0))).margin(1e-12));
}

TEST_CASE("flow is a span-level semigroup and keeps frames orthonormal", "[flow]") {
  std::mt19937_64 rng(23);
  auto h = SplitElement::from_diag(vec({1.5, 0.5, -0.5, -1.5}));
  auto sig = FlagSignature::maximal(4);
  std::uniform_real_distribution<double> unif(-10.0, 10.0);
  for (int k = 0; k < 10; ++k) {
    auto f = random_flag(sig, rng);
    double s = unif(rng), t = unif(rng);
    auto a = flow(h, s, flow(h, t, f));
    auto b = flow(h, s + t, f);
    check_orthonormal(a.frame, 1e-10);
    REQUIRE(flag_distance(a, b) < 1e-8);
  }
}

TEST_CASE("large times survive the per-step rescaling", "[flow]") {
  auto h = SplitElement::from_diag(vec({2, 0, -2}));
  std::mt19937_64 rng(5);
  auto f = random_flag(FlagSignature::maximal(3), rng);
  auto moved = flow(h, 300.0, f);  // a raw exponent of 600 would overflow
  check_orthonormal(moved.frame, 1e-10);
  REQUIRE(flag_distance(moved, standard_flag(FlagSignature::maximal(3))) < 1e-9);
}

TEST_CASE("classification by rank matrix", "[flow]") {
  FlowContext ctx({Rat(1), Rat(1)}, 0);  // n = 3, regular
  REQUIRE(ctx.classify(standard_flag(ctx.signature())) ==
          ctx.coset_index_of_element(ctx.group().identity()));
  REQUIRE(ctx.classify(ctx.coordinate_flag(ctx.group().longest())) ==
          ctx.coset_index_of_element(ctx.group().longest()));

  // Gaussian flags all but surely land in the attractor's stable set
  std::mt19937_64 rng(99);
  int attractor = ctx.coset_index_of_element(ctx.group().identity());
  for (int k = 0; k < 1000; ++k)
    REQUIRE(ctx.classify(random_flag(ctx.signature(), rng)) == attractor);
}

TEST_CASE("classification is constant along trajectories", "[flow]") {
  FlowContext ctx({Rat(0), Rat(1)}, 0);  // Theta(H) = {a1}
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    auto f = random_flag(ctx.signature(), rng);
    int c = ctx.classify(f);
    for (double t : {0.7, 2.0, 6.0})
      REQUIRE(ctx.classify(flow(ctx.split(), t, f)) == c);
  }
}

TEST_CASE("flow_to_limit finds the predicted component", "[flow]") {
  FlowContext ctx2({Rat(1)}, 0);  // n = 2
  auto res2 = flow_to_limit(ctx2, line_flag(1, 1));
  REQUIRE(res2.coset == ctx2.coset_index_of_element(ctx2.group().identity()));
  REQUIRE(flag_distance(res2.limit, line_flag(1, 0)) < 1e-6);

  // fixed-point input converges in one step
  auto resb = flow_to_limit(ctx2, line_flag(0, 1));
  REQUIRE(resb.coset == ctx2.coset_index_of_element(ctx2.group().longest()));
  REQUIRE(resb.record.steps == 1);

  FlowContext ctx({Rat(1), Rat(1)}, 0);  // n = 3 regular, diag(1,0,-1)
  std::mt19937_64 rng(41);
  int agree = 0;
  const int trials = 300;
  for (int k = 0; k < trials; ++k) {
    auto f = random_flag(ctx.signature(), rng);
    int predicted = ctx.classify(f);
    auto res = flow_to_limit(ctx, f);
    if (res.coset == predicted) ++agree;
    for (std::size_t i = 1; i + 1 < res.record.dist_to_limit.size(); ++i)
      REQUIRE(res.record.dist_to_limit[i + 1] <= res.record.dist_to_limit[i] + 1e-9);
  }
  REQUIRE(agree == trials);
}

TEST_CASE("flow timeout carries the trajectory", "[flow]") {
  FlowContext ctx({Rat(1), Rat(1)}, 0);
  std::mt19937_64 rng(8);
  auto f = random_flag(ctx.signature(), rng);
  try {
    flow_to_limit(ctx, f, 1e-9, 2.0);  // t_max too small
    FAIL("expected a timeout");
  } catch (const FlowTimeout& e) {
    REQUIRE(e.record.steps >= 1);
    REQUIRE(e.record.times.size() >= 2);
  }
}

TEST_CASE("stepping agrees with the one-shot polar reprojection", "[flow]") {
  auto h = SplitElement::from_diag(vec({1, 0, -1}));
  std::mt19937_64 rng(31);
  auto sig = FlagSignature::maximal(3);
  for (double t : {0.3, 1.7, 3.0}) {
    auto f = random_flag(sig, rng);
    auto stepped = flow(h, t, f, std::log(2.0));  // force many substeps
    Eigen::VectorXd factors = (t * h.diag).array().exp();
    Flag oneshot{sig, orthonormalized(factors.asDiagonal() * f.frame)};
    REQUIRE((embed_in_s(h, stepped) - embed_in_s(h, oneshot)).norm() < 1e-8);
  }
}

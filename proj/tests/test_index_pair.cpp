#include "flagmorse/flow/index_pair.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace flagmorse;
using test_helpers::elem;

TEST_CASE("attractor index pair has an empty exit set", "[indexpair]") {
  FlowContext ctx({Rat(1)}, 0);
  IndexPairConfig cfg;
  cfg.samples = 120;
  auto rep = index_pair(ctx, ctx.group().identity(), cfg);
  REQUIRE(rep.injectivity_ok);
  REQUIRE(rep.positively_invariant.checked == 0);  // B0 empty
  REQUIRE(rep.exit_through_B0.checked == 0);
  REQUIRE(rep.pass());
}

TEST_CASE("repeller index pair verifies the unstable exit", "[indexpair]") {
  FlowContext ctx({Rat(1)}, 0);
  IndexPairConfig cfg;
  cfg.samples = 120;
  auto rep = index_pair(ctx, ctx.group().longest(), cfg);
  REQUIRE(rep.pass());
  REQUIRE(rep.positively_invariant.checked > 0);
  REQUIRE(rep.exit_through_B0.checked > 0);
}

TEST_CASE("saddle index pair for the n = 3 regular flow", "[indexpair]") {
  FlowContext ctx({Rat(1), Rat(1)}, 0);
  IndexPairConfig cfg;
  cfg.samples = 100;
  auto rep = index_pair(ctx, elem(ctx.group(), {1}), cfg);
  REQUIRE(rep.injectivity_ok);
  REQUIRE(rep.isolation.pass);
  REQUIRE(rep.positively_invariant.pass);
  REQUIRE(rep.exit_through_B0.pass);
  REQUIRE(rep.exit_through_B0.checked > 0);
}

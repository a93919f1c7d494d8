#include "flagmorse/schubert.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace flagmorse;
using test_helpers::elem;
using test_helpers::mask;

namespace {

WeylGroup group(SystemKind k, int rank) { return generate_weyl(build_root_system(k, rank)); }

CellSet whole_group(const WeylGroup& wg) {
  std::vector<int> m(wg.size());
  for (int w = 0; w < wg.size(); ++w) m[w] = w;
  return make_cell_set(std::move(m));
}

}  // namespace

TEST_CASE("closure of the attractor's stable set is everything", "[schubert]") {
  for (auto [kind, rank] : {std::pair{SystemKind::A, 2}, {SystemKind::A, 3}, {SystemKind::B, 2}}) {
    auto wg = group(kind, rank);
    for (SimpleSet th = 0; th < full_set(rank); ++th) {
      REQUIRE(closure_bruhat(wg, th, wg.identity()) == whole_group(wg));
      REQUIRE(closure_gamma(wg, th, wg.identity()) == whole_group(wg));
    }
  }
}

TEST_CASE("the repeller is closed", "[schubert]") {
  auto wg = group(SystemKind::A, 2);
  for (SimpleSet th = 0; th < full_set(2); ++th) {
    auto expected = fix_cells(wg, th, wg.longest());
    REQUIRE(closure_bruhat(wg, th, wg.longest()) == expected);
    REQUIRE(closure_gamma(wg, th, wg.longest()) == expected);
  }
}

TEST_CASE("closure of the s1 Schubert cell in A2", "[schubert]") {
  auto wg = group(SystemKind::A, 2);
  auto cl = closure_bruhat(wg, SimpleSet(0), elem(wg, {1}));
  auto expected = make_cell_set(
      {elem(wg, {1}), elem(wg, {1, 2}), elem(wg, {2, 1}), wg.longest()});
  REQUIRE(cl == expected);
  REQUIRE(attraction_domain(wg, SimpleSet(0), elem(wg, {1})) == cl);
}

TEST_CASE("gamma operator basics", "[schubert]") {
  auto wg = group(SystemKind::A, 2);
  REQUIRE(gamma(wg, 0, CellSet{}).size() == 0);
  auto g1 = gamma(wg, 0, make_cell_set({wg.identity()}));
  REQUIRE(g1 == make_cell_set({wg.identity(), wg.generator(0)}));

  // iterated right multiplication from the repeller cell
  auto g21 = gamma(wg, 1, gamma(wg, 0, make_cell_set({wg.longest()})));
  auto w0 = wg.longest();
  auto expected = make_cell_set({w0, wg.right_mult_gen(w0, 0), wg.right_mult_gen(w0, 1),
                                 wg.right_mult_gen(wg.right_mult_gen(w0, 0), 1)});
  REQUIRE(g21 == expected);
  REQUIRE(g21.size() == 4);
}

TEST_CASE("gamma is idempotent, monotone and respects left saturation", "[schubert]") {
  auto wg = group(SystemKind::A, 3);
  SimpleSet th = mask({0, 2});
  auto s = fix_cells(wg, th, elem(wg, {2, 1}));
  auto left = weyl_subgroup(wg, th);
  for (int i = 0; i < wg.rank(); ++i) {
    auto g = gamma(wg, i, s);
    REQUIRE(gamma(wg, i, g) == g);
    for (int m : s.members) REQUIRE(g.contains(m));
    // W_H saturation survives gamma
    for (int m : g.members)
      for (int u : left) REQUIRE(g.contains(wg.mult(u, m)));
  }
}

TEST_CASE("empty word case returns the repeller cells unchanged", "[schubert]") {
  auto wg = group(SystemKind::A, 2);
  SimpleSet th = mask({0});
  auto got = closure_gamma_word(wg, th, wg.longest(), {});
  REQUIRE(got == fix_cells(wg, th, wg.longest()));
  REQUIRE_THROWS_AS(closure_gamma_word(wg, th, wg.identity(), {}), ConfigError);
}

TEST_CASE("both closure computations agree in A2 over every reduced word", "[schubert]") {
  auto wg = group(SystemKind::A, 2);
  for (SimpleSet th = 0; th < full_set(2); ++th)
    for (int w = 0; w < wg.size(); ++w) {
      auto expected = closure_bruhat(wg, th, w);
      int wmw = wg.mult(wg.longest(), w);
      for (const auto& word : wg.all_reduced_words(wmw))
        REQUIRE(closure_gamma_word(wg, th, w, word) == expected);
    }
}

TEST_CASE("both closure computations agree in A3 on coset representatives", "[schubert]") {
  auto wg = group(SystemKind::A, 3);
  for (SimpleSet th = 0; th < full_set(3); ++th)
    for (const auto& dc : double_cosets(wg, th, 0)) {
      auto rep = closure_report(wg, th, dc.rep);
      REQUIRE(rep.equal);
    }
}

TEST_CASE("stable cell sets partition W", "[schubert]") {
  for (auto [kind, rank] : {std::pair{SystemKind::A, 2}, {SystemKind::A, 3}, {SystemKind::B, 2}}) {
    auto wg = group(kind, rank);
    for (SimpleSet th = 0; th < full_set(rank); ++th) {
      std::vector<char> covered(wg.size(), 0);
      for (const auto& dc : double_cosets(wg, th, 0))
        for (int m : dc.members) {
          REQUIRE_FALSE(covered[m]);
          covered[m] = 1;
        }
      for (char c : covered) REQUIRE(c == 1);
    }
  }
}

TEST_CASE("dynamical ordering matches the Bruhat-Chevalley order", "[schubert]") {
  for (auto [kind, rank] : {std::pair{SystemKind::A, 2}, {SystemKind::A, 3}}) {
    auto wg = group(kind, rank);
    for (SimpleSet th = 0; th < full_set(rank); ++th) {
      auto cosets = double_cosets(wg, th, 0);
      for (const auto& cu : cosets) {
        auto clu = closure_bruhat(wg, th, cu.rep);
        for (const auto& cw : cosets) {
          auto clw = closure_bruhat(wg, th, cw.rep);
          bool u_in_clw = true;
          for (int m : cu.members)
            if (!clw.contains(m)) {
              u_in_clw = false;
              break;
            }
          if (u_in_clw) {
            for (int m : clu.members) REQUIRE(clw.contains(m));
          }
        }
      }
    }
  }
}

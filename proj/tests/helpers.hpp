#pragma once

#include "flagmorse/parabolic.hpp"
#include "flagmorse/weyl.hpp"

#include <initializer_list>
#include <vector>

namespace test_helpers {

using namespace flagmorse;

inline SimpleSet mask(std::initializer_list<int> simple_indices) {
  SimpleSet m = 0;
  for (int i : simple_indices) m |= SimpleSet(1) << i;
  return m;
}

inline int elem(const WeylGroup& wg, std::initializer_list<int> word_1based) {
  std::vector<int> w;
  for (int i : word_1based) w.push_back(i - 1);
  return wg.element_from_word(w);
}

// Brute-force Bruhat comparison: u <= w iff u appears as a reduced subword
// of a reduced word of w. Checked over EVERY reduced word of w; the subword
// property says all words must agree.
inline bool bruhat_leq_oracle(const WeylGroup& wg, int u, int w) {
  auto words = wg.all_reduced_words(w);
  int verdict = -1;
  for (const auto& word : words) {
    std::vector<char> reach(wg.size(), 0);
    reach[wg.identity()] = 1;
    std::vector<int> all{wg.identity()};
    for (int i : word) {
      std::vector<int> added;
      for (int v : all) {
        int vs = wg.right_mult_gen(v, i);
        if (wg.length(vs) > wg.length(v) && !reach[vs]) {
          reach[vs] = 1;
          added.push_back(vs);
        }
      }
      all.insert(all.end(), added.begin(), added.end());
    }
    int found = reach[u] ? 1 : 0;
    if (verdict == -1) verdict = found;
    else if (verdict != found) throw std::logic_error("reduced words disagree on Bruhat order");
  }
  return verdict == 1;
}

}  // namespace test_helpers

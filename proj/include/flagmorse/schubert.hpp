#pragma once

// Closures of stable sets and attraction domains in the Bruhat-cell model
// of the maximal flag manifold, computed two independent ways: unions over
// the Bruhat-Chevalley order, and fiber exhaustion by the gamma operators
// along a reduced word of w^- w. Projections to partial flags are obtained
// afterwards by mapping cells through W -> W/W_Theta.

#include "flagmorse/parabolic.hpp"

#include <set>

namespace flagmorse {

// A set of Bruhat cells of the maximal flag manifold, named by Weyl group
// elements. Stored sorted by element index.
struct CellSet {
  std::vector<int> members;

  bool contains(int w) const {
    return std::binary_search(members.begin(), members.end(), w);
  }
  int size() const { return static_cast<int>(members.size()); }
  bool operator==(const CellSet& o) const { return members == o.members; }
};

inline CellSet make_cell_set(std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return CellSet{std::move(members)};
}

// Cell model of the fixed component of w: the left translates W_H w.
inline CellSet fix_cells(const WeylGroup& wg, SimpleSet theta_H, int w) {
  std::vector<int> m;
  for (int u : weyl_subgroup(wg, theta_H)) m.push_back(wg.mult(u, w));
  return make_cell_set(std::move(m));
}

// Union of the fibers of F -> F_i crossing S; in cells, right cosets by
// {1, s_i}. Idempotent and monotone.
inline CellSet gamma(const WeylGroup& wg, int i, const CellSet& s) {
  std::vector<int> m = s.members;
  for (int w : s.members) m.push_back(wg.right_mult_gen(w, i));
  return make_cell_set(std::move(m));
}

// Closure of the stable set of w as a union over the Bruhat order: all
// cells of every coset containing some s >= w.
inline CellSet closure_bruhat(const WeylGroup& wg, SimpleSet theta_H, int w) {
  std::vector<int> m;
  for (const auto& dc : double_cosets(wg, theta_H, 0)) {
    bool above = false;
    for (int s : dc.members)
      if (wg.bruhat_leq(w, s)) {
        above = true;
        break;
      }
    if (above) m.insert(m.end(), dc.members.begin(), dc.members.end());
  }
  return make_cell_set(std::move(m));
}

// Closure of the stable set of w by gamma exhaustion along a given reduced
// word of w^- w (letters applied left to right), starting from the cell
// model of fix(H, w^-).
inline CellSet closure_gamma_word(const WeylGroup& wg, SimpleSet theta_H, int w,
                                  const std::vector<int>& word) {
  int w_minus_w = wg.mult(wg.longest(), w);
  if (wg.element_from_word(word) != w_minus_w ||
      static_cast<int>(word.size()) != wg.length(w_minus_w))
    throw ConfigError("closure_gamma: word is not a reduced expression of w^- w");
  CellSet s = fix_cells(wg, theta_H, wg.longest());
  for (int i : word) s = gamma(wg, i, s);
  return s;
}

inline CellSet closure_gamma(const WeylGroup& wg, SimpleSet theta_H, int w) {
  return closure_gamma_word(wg, theta_H, w, wg.word(wg.mult(wg.longest(), w)));
}

// At a point base the domain of attraction coincides with the closure of
// the stable set.
inline CellSet attraction_domain(const WeylGroup& wg, SimpleSet theta_H, int w) {
  return closure_bruhat(wg, theta_H, w);
}

struct ClosureReport {
  int w = 0;
  CellSet bruhat;
  CellSet gamma_result;
  bool equal = false;
};

inline ClosureReport closure_report(const WeylGroup& wg, SimpleSet theta_H, int w) {
  ClosureReport rep;
  rep.w = w;
  rep.bruhat = closure_bruhat(wg, theta_H, w);
  rep.gamma_result = closure_gamma(wg, theta_H, w);
  rep.equal = rep.bruhat == rep.gamma_result;
  return rep;
}

}  // namespace flagmorse

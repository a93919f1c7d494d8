#pragma once

// Everything indexed by (H, Theta, w): the vanishing set Theta(H),
// parabolic subgroups of W, double cosets W_H \ W / W_Theta, and the
// sign-profile dimension calculus of the fixed, stable and unstable sets.

#include "flagmorse/weyl.hpp"

#include <array>
#include <optional>

namespace flagmorse {

// A point of the closed positive chamber, given by its simple-root values.
struct ChamberElement {
  RatVec values;       // values[i] = a_i(H) >= 0
  RatVec H;            // ambient vector realizing those values (in the root span)
  SimpleSet theta_H = 0;  // simple roots vanishing at H
};

inline ChamberElement make_chamber(const RootSystem& rs, RatVec values) {
  if (static_cast<int>(values.size()) != rs.rank)
    throw ConfigError("chamber element needs one value per simple root");
  for (const auto& v : values)
    if (v < 0) throw ConfigError("chamber element values must be nonnegative");
  // Solve for H = sum x_j a_j with a_i(H) = values[i]: a Gram system over
  // the simple roots, exact in rationals.
  std::vector<RatVec> gram(rs.rank, RatVec(rs.rank));
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j) gram[i][j] = dot(rs.simple[i], rs.simple[j]);
  RatVec x = solve_linear(gram, values);
  RatVec H(rs.ambient, Rat(0));
  for (int j = 0; j < rs.rank; ++j) H = add(H, scale(x[j], rs.simple[j]));
  ChamberElement ce;
  ce.values = std::move(values);
  ce.H = std::move(H);
  for (int i = 0; i < rs.rank; ++i)
    if (ce.values[i] == 0) ce.theta_H |= SimpleSet(1) << i;
  return ce;
}

// Canonical reference element H_Theta with Theta(H_Theta) = theta:
// value 1 on every simple root outside theta, 0 on theta.
inline ChamberElement canonical_chamber(const RootSystem& rs, SimpleSet theta) {
  RatVec values(rs.rank, Rat(1));
  for (int i = 0; i < rs.rank; ++i)
    if (contains(theta, i)) values[i] = 0;
  return make_chamber(rs, values);
}

inline bool is_regular(const ChamberElement& ce) { return ce.theta_H == 0; }

// Subgroup of W generated by the reflections of the selected simple roots.
// Returned as a sorted list of element indices.
inline std::vector<int> weyl_subgroup(const WeylGroup& wg, SimpleSet theta) {
  std::vector<char> seen(wg.size(), 0);
  seen[wg.identity()] = 1;
  std::vector<int> stack{wg.identity()}, out{wg.identity()};
  while (!stack.empty()) {
    int w = stack.back();
    stack.pop_back();
    for (int i : set_elements(theta)) {
      int v = wg.right_mult_gen(w, i);
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
        out.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct DoubleCoset {
  int rep = 0;               // minimal length, lex-smallest word on ties
  std::vector<int> members;  // sorted by (length, word)
  int size() const { return static_cast<int>(members.size()); }
};

// Partition of W into double cosets W_H rep W_Theta, ordered by
// (rep length, rep word).
inline std::vector<DoubleCoset> double_cosets(const WeylGroup& wg, SimpleSet theta_H,
                                              SimpleSet theta) {
  auto left = weyl_subgroup(wg, theta_H);
  auto right = weyl_subgroup(wg, theta);
  std::vector<char> assigned(wg.size(), 0);
  std::vector<DoubleCoset> out;
  auto word_less = [&](int a, int b) {
    if (wg.length(a) != wg.length(b)) return wg.length(a) < wg.length(b);
    return wg.word(a) < wg.word(b);
  };
  for (int w = 0; w < wg.size(); ++w) {
    if (assigned[w]) continue;
    DoubleCoset dc;
    for (int u : left)
      for (int v : right) {
        int m = wg.mult(wg.mult(u, w), v);
        if (!assigned[m]) {
          assigned[m] = 1;
          dc.members.push_back(m);
        }
      }
    std::sort(dc.members.begin(), dc.members.end(), word_less);
    dc.rep = dc.members.front();
    out.push_back(std::move(dc));
  }
  std::sort(out.begin(), out.end(),
            [&](const DoubleCoset& a, const DoubleCoset& b) { return word_less(a.rep, b.rep); });
  return out;
}

inline std::vector<DoubleCoset> double_cosets(const WeylGroup& wg, const ChamberElement& H,
                                              SimpleSet theta) {
  return double_cosets(wg, H.theta_H, theta);
}

inline int coset_of(const std::vector<DoubleCoset>& cosets, int w) {
  for (std::size_t c = 0; c < cosets.size(); ++c) {
    const auto& m = cosets[c].members;
    if (std::find(m.begin(), m.end(), w) != m.end()) return static_cast<int>(c);
  }
  throw std::logic_error("element not covered by the coset partition");
}

// Classification of the tangent directions at the w-translated base point:
// every root b in Pi^- \ <Theta> contributes the sign of (w b)(H).
struct SignProfile {
  int n_plus = 0;   // unstable dimension n_w (Conley shift)
  int n_zero = 0;   // fixed-component dimension
  int n_minus = 0;  // stable fiber dimension
  std::vector<std::pair<int, int>> classified;  // (root index b, sign)

  int total() const { return n_plus + n_zero + n_minus; }
};

inline SignProfile sign_profile(const WeylGroup& wg, const ChamberElement& H, SimpleSet theta,
                                int w) {
  const RootSystem& rs = wg.roots();
  SignProfile sp;
  for (int b = rs.num_positive; b < rs.num_roots(); ++b) {
    if (rs.in_span(b, theta)) continue;
    Rat val = rs.value(wg.act_root(w, b), H.H);
    int sign = val > 0 ? 1 : (val < 0 ? -1 : 0);
    if (sign > 0) ++sp.n_plus;
    else if (sign < 0) ++sp.n_minus;
    else ++sp.n_zero;
    sp.classified.emplace_back(b, sign);
  }
  return sp;
}

// Dimension of the flag manifold F_Theta: the negative roots outside <Theta>.
inline int flag_dimension(const RootSystem& rs, SimpleSet theta) {
  int d = 0;
  for (int b = rs.num_positive; b < rs.num_roots(); ++b)
    if (!rs.in_span(b, theta)) ++d;
  return d;
}

// Identification of a fixed component as a flag manifold of the
// Delta = Theta(H) subsystem: H0 is the orthogonal projection of w H_Theta
// onto span{H_a : a in Delta}, and inner_type collects the Delta-simple
// roots vanishing at H0. H0 is reported as its Delta-dominant
// representative; for minimal double-coset representatives the projection
// itself is already dominant and is returned unchanged.
struct FixFlagType {
  SimpleSet delta = 0;
  RatVec H0;                // in the ambient space, inside span(Delta)
  SimpleSet inner_type = 0;
};

inline FixFlagType fix_flag_type(const WeylGroup& wg, const ChamberElement& H, SimpleSet theta,
                                 int w) {
  const RootSystem& rs = wg.roots();
  FixFlagType out;
  out.delta = H.theta_H;
  RatVec target = wg.act(w, canonical_chamber(rs, theta).H);
  auto idx = set_elements(out.delta);
  const int k = static_cast<int>(idx.size());
  RatVec H0(rs.ambient, Rat(0));
  if (k > 0) {
    std::vector<RatVec> gram(k, RatVec(k));
    RatVec rhs(k);
    for (int i = 0; i < k; ++i) {
      rhs[i] = dot(rs.simple[idx[i]], target);
      for (int j = 0; j < k; ++j) gram[i][j] = dot(rs.simple[idx[i]], rs.simple[idx[j]]);
    }
    RatVec x = solve_linear(gram, rhs);
    for (int i = 0; i < k; ++i) H0 = add(H0, scale(x[i], rs.simple[idx[i]]));
    // Reflect into the closed Delta-chamber; each step strictly increases
    // <H0, rho_Delta>, so this terminates.
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i : idx)
        if (dot(rs.simple[i], H0) < 0) {
          H0 = reflect(H0, rs.simple[i]);
          moved = true;
        }
    }
    for (int i : idx)
      if (dot(rs.simple[i], H0) == 0) out.inner_type |= SimpleSet(1) << i;
  }
  out.H0 = std::move(H0);
  return out;
}

// Dimension of the fixed component read off its (Delta, inner_type) data:
// negative roots of the Delta-subsystem outside <inner_type>.
inline int fix_dimension(const RootSystem& rs, const FixFlagType& ft) {
  int d = 0;
  for (int b = rs.num_positive; b < rs.num_roots(); ++b)
    if (rs.in_span(b, ft.delta) && !rs.in_span(b, ft.inner_type)) ++d;
  return d;
}

struct DimensionRow {
  DoubleCoset coset;
  SignProfile profile;
  FixFlagType fix;
};

inline std::vector<DimensionRow> dimension_table(const WeylGroup& wg, const ChamberElement& H,
                                                 SimpleSet theta) {
  std::vector<DimensionRow> rows;
  for (auto& dc : double_cosets(wg, H, theta)) {
    DimensionRow row;
    row.profile = sign_profile(wg, H, theta, dc.rep);
    row.fix = fix_flag_type(wg, H, theta, dc.rep);
    row.coset = std::move(dc);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace flagmorse

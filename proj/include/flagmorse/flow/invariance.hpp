#pragma once

// Whether the chart subspace at w b_Theta is normalized by the isotropy of
// the full centralizer Z_H. The chart roots are {g in Pi^- \ <Theta> :
// g(w^{-1}H) != 0}; the isotropy roots are {d in Pi^+ or <Theta>^- :
// d(w^{-1}H) = 0}; a bracket [g, d] landing on a root outside the chart
// root set breaks invariance. When that never happens the L_H-equivariant
// chart is in fact Z_H-equivariant.
//
// The concrete sl(3,R) instance with H = diag(-1,-1,2), w = (23),
// X_a = E21, X_b = E13 exhibits the failure; all of its facts are checked
// in exact arithmetic.

#include "flagmorse/weyl.hpp"

#include <array>

namespace flagmorse {

struct InvarianceViolation {
  int chart_root = -1;     // g
  int isotropy_root = -1;  // d
  int sum_root = -1;       // g + d
};

struct InvarianceReport {
  bool invariant = true;
  std::vector<InvarianceViolation> violations;
};

// H is an arbitrary ambient vector here (no dominance assumed); values are
// evaluated against w^{-1} H exactly.
inline InvarianceReport z_isotropy_invariance(const WeylGroup& wg, const RatVec& H,
                                              SimpleSet theta, int w) {
  const RootSystem& rs = wg.roots();
  RatVec winvH = wg.act(wg.inverse(w), H);
  std::vector<int> chart, isotropy;
  std::vector<char> in_chart(rs.num_roots(), 0);
  for (int r = 0; r < rs.num_roots(); ++r) {
    Rat v = rs.value(r, winvH);
    bool parabolic = rs.is_positive(r) || rs.in_span(r, theta);
    if (!rs.is_positive(r) && !rs.in_span(r, theta) && v != Rat(0)) {
      chart.push_back(r);
      in_chart[r] = 1;
    }
    if (parabolic && v == Rat(0)) isotropy.push_back(r);
  }
  InvarianceReport rep;
  for (int g : chart)
    for (int d : isotropy) {
      int sum = rs.root_index(add(rs.roots[g], rs.roots[d]));
      if (sum < 0) continue;  // bracket vanishes
      if (!in_chart[sum]) {
        rep.invariant = false;
        rep.violations.push_back({g, d, sum});
      }
    }
  return rep;
}

using Mat3 = std::array<std::array<long long, 3>, 3>;

inline Mat3 mat3_mult(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat3 mat3_bracket(const Mat3& a, const Mat3& b) {
  Mat3 ab = mat3_mult(a, b), ba = mat3_mult(b, a);
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = ab[i][j] - ba[i][j];
  return c;
}

inline bool mat3_is_zero(const Mat3& a) {
  for (const auto& row : a)
    for (long long x : row)
      if (x != 0) return false;
  return true;
}

struct Sl3CounterexampleReport {
  bool bracket_nonzero = false;     // [X_a, X_b] != 0
  bool sum_root_positive = false;   // a + b > 0
  long long alpha_value = 0;        // a(w^{-1}H), expected 3
  long long beta_value = -1;        // b(w^{-1}H), expected 0
  long long sum_value = 0;          // (a+b)(w^{-1}H), expected 3
  bool invariance_fails = false;    // the generic check detects it
  bool reproduced = false;          // all of the above hold together
};

inline Sl3CounterexampleReport sl3_invariance_counterexample() {
  Sl3CounterexampleReport rep;

  // exact matrix data
  Mat3 X_alpha{{{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}};  // E21
  Mat3 X_beta{{{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}};   // E13
  Mat3 bracket = mat3_bracket(X_alpha, X_beta);
  rep.bracket_nonzero = !mat3_is_zero(bracket);

  auto rs = build_root_system(SystemKind::A, 2);
  WeylGroup wg(rs);
  RatVec H{Rat(-1), Rat(-1), Rat(2)};

  // w = the transposition (23) = second simple reflection
  int w = wg.generator(1);

  RatVec alpha{Rat(-1), Rat(1), Rat(0)};  // row 2, column 1
  RatVec beta{Rat(1), Rat(0), Rat(-1)};   // row 1, column 3
  RatVec sum = add(alpha, beta);
  int sum_idx = rs.root_index(sum);
  rep.sum_root_positive = sum_idx >= 0 && rs.is_positive(sum_idx);

  RatVec winvH = wg.act(wg.inverse(w), H);
  rep.alpha_value = (dot(alpha, winvH)).numerator();
  rep.beta_value = (dot(beta, winvH)).numerator();
  rep.sum_value = (dot(sum, winvH)).numerator();

  auto inv = z_isotropy_invariance(wg, H, 0, w);
  rep.invariance_fails = !inv.invariant;
  // the specific violating pair must be present: chart root a, isotropy
  // root b, with the bracket landing on a + b
  bool pair_found = false;
  int a_idx = rs.root_index(alpha), b_idx = rs.root_index(beta);
  for (const auto& v : inv.violations)
    if (v.chart_root == a_idx && v.isotropy_root == b_idx && v.sum_root == sum_idx)
      pair_found = true;

  rep.reproduced = rep.bracket_nonzero && rep.sum_root_positive && rep.alpha_value == 3 &&
                   rep.beta_value == 0 && rep.sum_value == 3 && rep.invariance_fails &&
                   pair_found;
  return rep;
}

}  // namespace flagmorse

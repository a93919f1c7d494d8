#pragma once

// Z2 Poincare polynomials of flag manifolds from Bruhat cell counts, the
// Conley-index polynomials via the degree shift by the unstable dimension,
// and the Morse-equation residual R(t). Coefficients are Z2 Betti numbers
// (cells per dimension); every emitted table records that choice.

#include "flagmorse/parabolic.hpp"
#include "flagmorse/polynomial.hpp"

#include <optional>

namespace flagmorse {

// Cell counts of F_Theta by dimension: coefficient of t^k counts the
// minimal-length representatives of W/W_Theta of length k.
inline IntPolynomial flag_poincare(const WeylGroup& wg, SimpleSet theta) {
  std::vector<long long> c;
  for (int w = 0; w < wg.size(); ++w) {
    bool minimal = true;
    for (int i : set_elements(theta))
      if (wg.is_right_descent(w, i)) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    int l = wg.length(w);
    if (l >= static_cast<int>(c.size())) c.resize(l + 1, 0);
    c[l] += 1;
  }
  return IntPolynomial(std::move(c));
}

// Poincare polynomial of the fixed component of (H, Theta, w): the flag
// manifold of the Delta = Theta(H) subsystem with flag type inner_type.
// Lengths inside the standard parabolic subgroup W_Delta agree with lengths
// in W, so the count runs over W_Delta directly.
inline IntPolynomial fix_poincare(const WeylGroup& wg, const ChamberElement& H, SimpleSet theta,
                                  int w) {
  FixFlagType ft = fix_flag_type(wg, H, theta, w);
  std::vector<long long> c;
  for (int u : weyl_subgroup(wg, ft.delta)) {
    bool minimal = true;
    for (int i : set_elements(ft.inner_type))
      if (wg.is_right_descent(u, i)) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    int l = wg.length(u);
    if (l >= static_cast<int>(c.size())) c.resize(l + 1, 0);
    c[l] += 1;
  }
  return IntPolynomial(std::move(c));
}

// Conley-index polynomial: the fixed-component polynomial shifted by the
// unstable dimension n_w.
inline IntPolynomial conley_poincare(const WeylGroup& wg, const ChamberElement& H,
                                     SimpleSet theta, int w) {
  int n_w = sign_profile(wg, H, theta, w).n_plus;
  return fix_poincare(wg, H, theta, w).shifted(n_w);
}

struct ResidualResult {
  bool ok = false;
  IntPolynomial residual;  // R(t) when ok
  IntPolynomial defect;    // D(t) = sum CP - P, always reported
  std::string reason;      // on failure: "not divisible by 1+t" / "negative coefficients"
};

struct MorseRow {
  DoubleCoset coset;
  SignProfile profile;
  FixFlagType fix;
  IntPolynomial fix_poly;
  IntPolynomial conley_poly;
};

struct MorseTable {
  std::string system;
  RatVec h_values;
  SimpleSet theta_H = 0;
  SimpleSet theta = 0;
  std::vector<MorseRow> rows;
  IntPolynomial total_space_poly;
  ResidualResult residual;
  std::string coefficients = "Z2";
};

inline ResidualResult morse_residual_from(const IntPolynomial& conley_sum,
                                          const IntPolynomial& total) {
  ResidualResult res;
  res.defect = conley_sum - total;
  auto div = divide_by_one_plus_t(res.defect);
  if (!div.exact) {
    res.reason = "defect not divisible by 1+t";
    return res;
  }
  if (!div.quotient.nonnegative()) {
    res.reason = "residual has negative coefficients";
    res.residual = div.quotient;
    return res;
  }
  res.ok = true;
  res.residual = div.quotient;
  return res;
}

inline MorseTable morse_table(const WeylGroup& wg, const ChamberElement& H, SimpleSet theta) {
  MorseTable table;
  table.system = wg.roots().name();
  table.h_values = H.values;
  table.theta_H = H.theta_H;
  table.theta = theta;
  table.total_space_poly = flag_poincare(wg, theta);
  IntPolynomial conley_sum;
  for (auto& row0 : dimension_table(wg, H, theta)) {
    MorseRow row;
    row.coset = std::move(row0.coset);
    row.profile = row0.profile;
    row.fix = row0.fix;
    row.fix_poly = fix_poincare(wg, H, theta, row.coset.rep);
    row.conley_poly = row.fix_poly.shifted(row.profile.n_plus);
    conley_sum += row.conley_poly;
    table.rows.push_back(std::move(row));
  }
  table.residual = morse_residual_from(conley_sum, table.total_space_poly);
  return table;
}

inline ResidualResult morse_residual(const WeylGroup& wg, const ChamberElement& H,
                                     SimpleSet theta) {
  return morse_table(wg, H, theta).residual;
}

}  // namespace flagmorse

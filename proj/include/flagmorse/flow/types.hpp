#pragma once

// Numerical state for the sl(n,R) gradient flows: split elements as
// traceless nonincreasing diagonals, flags as nested orthonormal column
// spans, principal-angle distances, and the isospectral embedding of a
// flag manifold into the symmetric matrices.
//
// Type-A dictionary used throughout: a_i(H) = diag[i] - diag[i+1], the
// positive chamber is the strictly decreasing diagonals, n+ is strictly
// upper triangular, and the attractor is the standard coordinate flag.

#include "flagmorse/errors.hpp"
#include "flagmorse/parabolic.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

namespace flagmorse {

struct SplitElement {
  Eigen::VectorXd diag;           // nonincreasing, sum zero
  std::vector<int> block_start;   // eigenvalue blocks; sentinel n at the end

  int n() const { return static_cast<int>(diag.size()); }
  int num_blocks() const { return static_cast<int>(block_start.size()) - 1; }
  int block_begin(int b) const { return block_start[b]; }
  int block_end(int b) const { return block_start[b + 1]; }

  double value(int b) const { return diag[block_start[b]]; }

  // Vanishing simple roots under the type-A dictionary.
  SimpleSet theta() const {
    SimpleSet m = 0;
    for (int i = 0; i + 1 < n(); ++i)
      if (diag[i] == diag[i + 1]) m |= SimpleSet(1) << i;
    return m;
  }

  static SplitElement from_diag(Eigen::VectorXd d, double tol = 1e-12) {
    SplitElement h;
    for (int i = 0; i + 1 < d.size(); ++i)
      if (d[i] < d[i + 1] - tol) throw ConfigError("split element diagonal must be nonincreasing");
    if (std::abs(d.sum()) > tol * std::max<double>(1.0, d.cwiseAbs().maxCoeff()))
      throw ConfigError("split element diagonal must sum to zero");
    h.diag = std::move(d);
    h.block_start.push_back(0);
    for (int i = 1; i < h.n(); ++i)
      if (std::abs(h.diag[i] - h.diag[i - 1]) > tol) h.block_start.push_back(i);
    h.block_start.push_back(h.n());
    // snap block entries to their first member so equalities are exact
    for (int b = 0; b < h.num_blocks(); ++b)
      for (int i = h.block_begin(b); i < h.block_end(b); ++i) h.diag[i] = h.diag[h.block_begin(b)];
    return h;
  }

  // Realize a chamber element of A_{n-1} as a diagonal matrix.
  static SplitElement from_chamber(const ChamberElement& ce) {
    Eigen::VectorXd d(ce.H.size());
    for (std::size_t i = 0; i < ce.H.size(); ++i) d[static_cast<int>(i)] = to_double(ce.H[i]);
    return from_diag(std::move(d));
  }
};

struct FlagSignature {
  int n = 0;
  std::vector<int> dims;  // strictly increasing, in 1..n-1

  bool operator==(const FlagSignature& o) const { return n == o.n && dims == o.dims; }
  int levels() const { return static_cast<int>(dims.size()); }

  static FlagSignature maximal(int n) {
    FlagSignature s{n, {}};
    for (int d = 1; d < n; ++d) s.dims.push_back(d);
    return s;
  }

  // Theta removes the marked nesting dimensions.
  static FlagSignature from_theta(int n, SimpleSet theta) {
    FlagSignature s{n, {}};
    for (int d = 1; d < n; ++d)
      if (!contains(theta, d - 1)) s.dims.push_back(d);
    return s;
  }

  SimpleSet theta() const {
    SimpleSet m = full_set(n - 1);
    for (int d : dims) m &= ~(SimpleSet(1) << (d - 1));
    return m;
  }
};

struct Flag {
  FlagSignature sig;
  Eigen::MatrixXd frame;  // n x n orthonormal; first dims[j] columns span V_j

  int n() const { return sig.n; }
};

inline void check_orthonormal(const Eigen::MatrixXd& q, double tol = 1e-10) {
  Eigen::MatrixXd g = q.transpose() * q - Eigen::MatrixXd::Identity(q.cols(), q.cols());
  if (g.cwiseAbs().maxCoeff() > tol) throw NumericalError("frame is not orthonormal");
}

// QR re-orthonormalization preserving every leading column span; the R
// diagonal is sign-fixed so the result is deterministic.
inline Eigen::MatrixXd orthonormalized(const Eigen::MatrixXd& m, double rank_tol = 1e-12) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  double rmax = r.diagonal().cwiseAbs().maxCoeff();
  for (int i = 0; i < r.rows(); ++i) {
    if (std::abs(r(i, i)) < rank_tol * rmax)
      throw NumericalError("degenerate frame: condition blow-up in re-orthonormalization");
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  return q;
}

inline Flag make_flag(FlagSignature sig, Eigen::MatrixXd frame) {
  if (frame.rows() != sig.n || frame.cols() != sig.n) throw ConfigError("frame size mismatch");
  check_orthonormal(frame);
  return Flag{std::move(sig), std::move(frame)};
}

// The flag fixed by coordinate permutations: column l holds e_{perm[l]}.
inline Flag permuted_coordinate_flag(FlagSignature sig, const std::vector<int>& perm) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(sig.n, sig.n);
  for (int l = 0; l < sig.n; ++l) f(perm[l], l) = 1.0;
  return Flag{std::move(sig), std::move(f)};
}

inline Flag standard_flag(FlagSignature sig) {
  std::vector<int> id(sig.n);
  for (int l = 0; l < sig.n; ++l) id[l] = l;
  return permuted_coordinate_flag(std::move(sig), id);
}

inline Flag random_flag(FlagSignature sig, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(sig.n, sig.n);
  for (int i = 0; i < sig.n; ++i)
    for (int j = 0; j < sig.n; ++j) m(i, j) = gauss(rng);
  return Flag{std::move(sig), orthonormalized(m)};
}

// Largest principal angle between the spans of two orthonormal column
// blocks of equal dimension.
inline double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.transpose() * b);
  double c = svd.singularValues().minCoeff();
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// Flag distance: the maximum principal angle over corresponding subspaces.
// Independent of the frame representatives.
inline double flag_distance(const Flag& a, const Flag& b) {
  if (!(a.sig == b.sig)) throw ConfigError("flag distance needs matching signatures");
  double d = 0.0;
  for (int dim : a.sig.dims)
    d = std::max(d, max_principal_angle(a.frame.leftCols(dim), b.frame.leftCols(dim)));
  return d;
}

// Canonical symmetric-matrix realization of a flag: k D k^T with D built
// from the signature (weight levels+1-j on the j-th coordinate group).
// Injective on the flag manifold of that signature.
inline Eigen::MatrixXd flag_embedding(const Flag& f) {
  Eigen::VectorXd d(f.n());
  int level = 0;
  for (int i = 0; i < f.n(); ++i) {
    if (level < f.sig.levels() && i >= f.sig.dims[level]) ++level;
    d[i] = static_cast<double>(f.sig.levels() + 1 - level);
  }
  return f.frame * d.asDiagonal() * f.frame.transpose();
}

// k H k^T for the frame of a flag whose signature matches the block
// structure of H; the spectrum is the diagonal of H and fixed points of the
// flow land on matrices commuting with H.
inline Eigen::MatrixXd embed_in_s(const SplitElement& h, const Flag& f) {
  if (f.n() != h.n()) throw ConfigError("embed_in_s: size mismatch");
  std::vector<int> dims;
  for (int b = 1; b < h.num_blocks(); ++b) dims.push_back(h.block_begin(b));
  if (dims != f.sig.dims)
    throw ConfigError("embed_in_s: flag signature does not match the block structure of H");
  return f.frame * h.diag.asDiagonal() * f.frame.transpose();
}

}  // namespace flagmorse

#pragma once

// Precomputed dictionary binding one (H, Theta) setting of sl(n,R) to the
// A_{n-1} combinatorics: the Weyl group as coordinate permutations, the
// double cosets indexing the Morse components, and the rank profiles that
// classify a numerical flag into its stable set.

#include "flagmorse/flow/types.hpp"

#include <string>

namespace flagmorse {

class FlowContext {
 public:
  // chamber_values: the n-1 simple-root values a_i(H) >= 0.
  FlowContext(RatVec chamber_values, SimpleSet theta)
      : rs_(build_root_system(SystemKind::A, static_cast<int>(chamber_values.size()))),
        wg_(rs_),
        chamber_(make_chamber(rs_, std::move(chamber_values))),
        theta_(theta),
        split_(SplitElement::from_chamber(chamber_)),
        sig_(FlagSignature::from_theta(rs_.rank + 1, theta)),
        cosets_(double_cosets(wg_, chamber_.theta_H, theta)) {
    const int n = sig_.n;
    perms_.resize(wg_.size());
    for (int w = 0; w < wg_.size(); ++w) {
      perms_[w].resize(n);
      for (int i = 0; i < n; ++i) {
        RatVec e(n, Rat(0));
        e[i] = 1;
        RatVec img = wg_.act(w, e);
        int j = 0;
        while (j < n && img[j] != Rat(1)) ++j;
        perms_[w][i] = j;
      }
    }
    profiles_.reserve(cosets_.size());
    for (const auto& dc : cosets_) profiles_.push_back(rank_profile_of(perms_[dc.rep]));
  }

  const RootSystem& roots() const { return rs_; }
  const WeylGroup& group() const { return wg_; }
  const ChamberElement& chamber() const { return chamber_; }
  SimpleSet theta() const { return theta_; }
  const SplitElement& split() const { return split_; }
  const FlagSignature& signature() const { return sig_; }
  const std::vector<DoubleCoset>& cosets() const { return cosets_; }
  int n() const { return sig_.n; }

  const std::vector<int>& perm(int w) const { return perms_[w]; }

  // The coordinate flag w b_Theta.
  Flag coordinate_flag(int w) const { return permuted_coordinate_flag(sig_, perms_[w]); }

  int coset_index_of_element(int w) const { return coset_of(cosets_, w); }

  // Stable-set membership by rank matrix: dimensions of V_d intersected
  // with the descending eigen-filtration of H, compared against each
  // coset's profile. Singular values near the tolerance are rejected as
  // unclassifiable rather than guessed.
  int classify(const Flag& f, double tol = 1e-8) const {
    require_signature(f);
    std::vector<std::vector<int>> prof(sig_.levels());
    for (int a = 0; a < sig_.levels(); ++a) {
      const int d = sig_.dims[a];
      Eigen::MatrixXd cols = f.frame.leftCols(d);
      for (int b = 1; b < split_.num_blocks(); ++b) {
        int s = split_.block_begin(b);
        prof[a].push_back(d - numeric_rank(cols.topRows(s), tol));
      }
    }
    for (std::size_t c = 0; c < profiles_.size(); ++c)
      if (profiles_[c] == prof) return static_cast<int>(c);
    throw NumericalError("unclassifiable flag: rank profile matches no component");
  }

  // Is the flag (near-)fixed by the flow, i.e. blockwise decomposable?
  bool near_fixed(const Flag& f, double tol = 1e-6) const {
    require_signature(f);
    for (int d : sig_.dims) {
      int total = 0;
      for (int b = 0; b < split_.num_blocks(); ++b) {
        auto block = f.frame.block(split_.block_begin(b), 0,
                                   split_.block_end(b) - split_.block_begin(b), d);
        int c = clean_rank(block, tol);
        if (c < 0) return false;
        total += c;
      }
      if (total != d) return false;
    }
    return true;
  }

  // Component of a (near-)fixed flag from its per-block dimension counts.
  int limit_component(const Flag& f, double tol = 1e-6) const {
    require_signature(f);
    std::vector<std::vector<int>> prof(sig_.levels());
    for (int a = 0; a < sig_.levels(); ++a) {
      const int d = sig_.dims[a];
      std::vector<int> counts;
      int total = 0;
      for (int b = 0; b < split_.num_blocks(); ++b) {
        auto block = f.frame.block(split_.block_begin(b), 0,
                                   split_.block_end(b) - split_.block_begin(b), d);
        int c = clean_rank(block, tol);
        if (c < 0 || total + c > d)
          throw NumericalError("flag is not close enough to a fixed component");
        counts.push_back(c);
        total += c;
      }
      if (total != d)
        throw NumericalError("flag is not close enough to a fixed component");
      // accumulate into the descending-filtration profile
      for (int b = 1; b < split_.num_blocks(); ++b) {
        int tail = 0;
        for (int bb = b; bb < split_.num_blocks(); ++bb) tail += counts[bb];
        prof[a].push_back(tail);
      }
    }
    for (std::size_t c = 0; c < profiles_.size(); ++c)
      if (profiles_[c] == prof) return static_cast<int>(c);
    throw NumericalError("fixed flag matches no component profile");
  }

 private:
  RootSystem rs_;
  WeylGroup wg_;
  ChamberElement chamber_;
  SimpleSet theta_;
  SplitElement split_;
  FlagSignature sig_;
  std::vector<DoubleCoset> cosets_;
  std::vector<std::vector<int>> perms_;
  std::vector<std::vector<std::vector<int>>> profiles_;  // [coset][level][block boundary]

  void require_signature(const Flag& f) const {
    if (!(f.sig == sig_)) throw ConfigError("flag signature does not match the context");
  }

  // Expected profile of the coordinate flag of sigma: entry (level a,
  // boundary b) = #{l < d_a : sigma(l) >= block_start[b]} = dim(V_{d_a}
  // intersected with the span of the trailing coordinates).
  std::vector<std::vector<int>> rank_profile_of(const std::vector<int>& sigma) const {
    std::vector<std::vector<int>> prof(sig_.levels());
    for (int a = 0; a < sig_.levels(); ++a)
      for (int b = 1; b < split_.num_blocks(); ++b) {
        int s = split_.block_begin(b);
        int count = 0;
        for (int l = 0; l < sig_.dims[a]; ++l)
          if (sigma[l] >= s) ++count;
        prof[a].push_back(count);
      }
    return prof;
  }

  // Rank with an ambiguity band: singular values within a decade of the
  // tolerance are considered undecidable.
  static int numeric_rank(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
      double s = svd.singularValues()[i];
      if (s > tol * 10) ++rank;
      else if (s > tol / 10)
        throw NumericalError("unclassifiable flag: singular value inside the tolerance band");
    }
    return rank;
  }

  // Rank for near-fixed tests: singular values must be cleanly 0 or 1;
  // anything in between returns -1 (undecided).
  static int clean_rank(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
      double s = svd.singularValues()[i];
      if (s > 1.0 - tol) ++rank;
      else if (s > tol) return -1;
    }
    return rank;
  }

  friend class LinChartBuilder;
};

}  // namespace flagmorse

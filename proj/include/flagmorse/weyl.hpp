#pragma once

// Weyl group enumeration with canonical reduced words and the
// Bruhat-Chevalley order.
//
// An element's identity is its permutation of the root list; the stored
// word is the lexicographically smallest reduced expression, obtained by
// repeatedly peeling the smallest left descent. Products compose left to
// right as maps: (u*w)(x) = u(w(x)).

#include "flagmorse/root_system.hpp"

#include <map>
#include <queue>
#include <vector>

namespace flagmorse {

struct WeylElement {
  std::vector<int> root_perm;  // image index per root
  std::vector<int> word;       // lex-min reduced expression, simple-root indices
  int length = 0;
};

class WeylGroup {
 public:
  explicit WeylGroup(RootSystem rs) : rs_(std::move(rs)) { enumerate(); }

  const RootSystem& roots() const { return rs_; }
  int size() const { return static_cast<int>(elems_.size()); }
  int rank() const { return rs_.rank; }

  int identity() const { return 0; }
  int generator(int i) const { return gens_[i]; }
  int longest() const { return longest_; }

  const WeylElement& element(int w) const { return elems_[w]; }
  int length(int w) const { return elems_[w].length; }
  const std::vector<int>& word(int w) const { return elems_[w].word; }

  int act_root(int w, int r) const { return elems_[w].root_perm[r]; }

  int mult(int a, int b) const {
    const auto& pa = elems_[a].root_perm;
    const auto& pb = elems_[b].root_perm;
    std::vector<int> p(pb.size());
    for (std::size_t r = 0; r < p.size(); ++r) p[r] = pa[pb[r]];
    return index_of(p);
  }

  int inverse(int a) const {
    const auto& pa = elems_[a].root_perm;
    std::vector<int> p(pa.size());
    for (std::size_t r = 0; r < p.size(); ++r) p[pa[r]] = static_cast<int>(r);
    return index_of(p);
  }

  // Apply the element to an ambient vector by composing the reflections of
  // its stored reduced word.
  RatVec act(int w, const RatVec& v) const {
    RatVec out = v;
    const auto& wd = elems_[w].word;
    for (auto it = wd.rbegin(); it != wd.rend(); ++it)
      out = reflect(out, rs_.simple[*it]);
    return out;
  }

  bool is_left_descent(int i, int w) const {
    // l(s_i w) < l(w)  <=>  w^{-1}(a_i) < 0
    int r = rs_.simple_root_index(i);
    return !rs_.is_positive(inv_perm(w, r));
  }

  bool is_right_descent(int w, int i) const {
    // l(w s_i) < l(w)  <=>  w(a_i) < 0
    return !rs_.is_positive(elems_[w].root_perm[rs_.simple_root_index(i)]);
  }

  int left_mult_gen(int i, int w) const {  // s_i * w
    const auto& gi = rs_.simple_reflection[i];
    const auto& pw = elems_[w].root_perm;
    std::vector<int> p(pw.size());
    for (std::size_t r = 0; r < p.size(); ++r) p[r] = gi[pw[r]];
    return index_of(p);
  }

  int right_mult_gen(int w, int i) const {  // w * s_i
    const auto& gi = rs_.simple_reflection[i];
    const auto& pw = elems_[w].root_perm;
    std::vector<int> p(pw.size());
    for (std::size_t r = 0; r < p.size(); ++r) p[r] = pw[gi[r]];
    return index_of(p);
  }

  // Bruhat-Chevalley order via the subword property on the one stored
  // reduced word of w: the DP sweeps the word and accumulates exactly the
  // lower interval [e, w].
  bool bruhat_leq(int u, int w) const {
    if (elems_[u].length > elems_[w].length) return false;
    std::vector<char> reach(size(), 0);
    reach[identity()] = 1;
    std::vector<int> frontier{identity()};
    for (int i : elems_[w].word) {
      std::vector<int> added;
      for (int v : frontier) {
        int vs = right_mult_gen(v, i);
        if (elems_[vs].length > elems_[v].length && !reach[vs]) {
          reach[vs] = 1;
          added.push_back(vs);
        }
      }
      frontier.insert(frontier.end(), added.begin(), added.end());
    }
    return reach[u] != 0;
  }

  // All reduced expressions of w (left-to-right letter lists).
  std::vector<std::vector<int>> all_reduced_words(int w) const {
    if (w == identity()) return {{}};
    std::vector<std::vector<int>> out;
    for (int i = 0; i < rank(); ++i) {
      if (!is_left_descent(i, w)) continue;
      for (auto& tail : all_reduced_words(left_mult_gen(i, w))) {
        tail.insert(tail.begin(), i);
        out.push_back(std::move(tail));
      }
    }
    return out;
  }

  int element_from_word(const std::vector<int>& word) const {
    int w = identity();
    for (int i : word) w = right_mult_gen(w, i);
    return w;
  }

 private:
  RootSystem rs_;
  std::vector<WeylElement> elems_;
  std::vector<int> gens_;
  int longest_ = 0;
  std::map<std::vector<int>, int> index_;

  int index_of(const std::vector<int>& perm) const {
    auto it = index_.find(perm);
    if (it == index_.end()) throw std::logic_error("permutation not in group");
    return it->second;
  }

  int inv_perm(int w, int r) const {
    const auto& p = elems_[w].root_perm;
    for (std::size_t k = 0; k < p.size(); ++k)
      if (p[k] == r) return static_cast<int>(k);
    throw std::logic_error("bad permutation");
  }

  int inversion_count(const std::vector<int>& perm) const {
    int c = 0;
    for (int r = 0; r < rs_.num_positive; ++r)
      if (!rs_.is_positive(perm[r])) ++c;
    return c;
  }

  void enumerate() {
    const int nroots = rs_.num_roots();
    std::vector<int> id(nroots);
    for (int r = 0; r < nroots; ++r) id[r] = r;

    elems_.push_back({id, {}, 0});
    index_[id] = 0;
    std::queue<int> bfs;
    bfs.push(0);
    while (!bfs.empty()) {
      int w = bfs.front();
      bfs.pop();
      for (int i = 0; i < rs_.rank; ++i) {
        const auto& gi = rs_.simple_reflection[i];
        const auto& pw = elems_[w].root_perm;
        std::vector<int> p(pw.size());
        for (std::size_t r = 0; r < p.size(); ++r) p[r] = gi[pw[r]];
        if (index_.find(p) == index_.end()) {
          int idx = static_cast<int>(elems_.size());
          index_[p] = idx;
          elems_.push_back({std::move(p), {}, 0});
          elems_.back().length = inversion_count(elems_.back().root_perm);
          bfs.push(idx);
          if (elems_.size() > 100000) throw ConfigError("Weyl group too large to enumerate");
        }
      }
    }

    gens_.resize(rs_.rank);
    for (int i = 0; i < rs_.rank; ++i) gens_[i] = index_of(rs_.simple_reflection[i]);

    for (int w = 0; w < size(); ++w) {
      if (elems_[w].length > elems_[longest_].length) longest_ = w;
      elems_[w].word = canonical_word(w);
    }
  }

  std::vector<int> canonical_word(int w) const {
    std::vector<int> word;
    int cur = w;
    while (elems_[cur].length > 0) {
      int i = 0;
      while (!is_left_descent(i, cur)) ++i;
      word.push_back(i);
      cur = left_mult_gen(i, cur);
    }
    return word;
  }
};

inline WeylGroup generate_weyl(RootSystem rs) { return WeylGroup(std::move(rs)); }

inline int longest_element(const WeylGroup& wg) { return wg.longest(); }

// "s1*s2*s1" rendering of a stored word; identity prints as "e".
inline std::string word_string(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::string s;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) s += '*';
    s += 's';
    s += std::to_string(word[k] + 1);
  }
  return s;
}

}  // namespace flagmorse

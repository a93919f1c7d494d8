#pragma once

// Finite crystallographic root systems in their standard Euclidean
// realizations. The ambient form is the plain dot product, so the
// functional of a root is value(r, H) = <root_r, H> and the dual vector
// of a simple root under the form is the root itself.
//
// Realizations (all with rational coordinates):
//   A_r : e_i - e_{i+1} in R^{r+1} (sum-zero span; matches sl(r+1) diagonals)
//   B_r : e_i - e_{i+1}, e_r in R^r
//   C_r : e_i - e_{i+1}, 2 e_r in R^r
//   D_r : e_i - e_{i+1}, e_{r-1} + e_r in R^r
//   G_2 : e_1 - e_2, -2 e_1 + e_2 + e_3 in R^3 (sum-zero span)

#include "flagmorse/errors.hpp"
#include "flagmorse/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace flagmorse {

enum class SystemKind { A, B, C, D, G };

inline char kind_letter(SystemKind k) {
  switch (k) {
    case SystemKind::A: return 'A';
    case SystemKind::B: return 'B';
    case SystemKind::C: return 'C';
    case SystemKind::D: return 'D';
    case SystemKind::G: return 'G';
  }
  return '?';
}

inline SystemKind parse_kind(const std::string& s) {
  if (s.size() == 1) {
    switch (s[0]) {
      case 'A': case 'a': return SystemKind::A;
      case 'B': case 'b': return SystemKind::B;
      case 'C': case 'c': return SystemKind::C;
      case 'D': case 'd': return SystemKind::D;
      case 'G': case 'g': return SystemKind::G;
    }
  }
  throw ConfigError("unknown root system label '" + s + "' (expected A, B, C, D or G)");
}

// Subsets of the simple roots as bitmasks (rank <= 31).
using SimpleSet = std::uint32_t;

inline SimpleSet full_set(int rank) { return (SimpleSet(1) << rank) - 1; }
inline bool contains(SimpleSet s, int i) { return (s >> i) & 1u; }
inline bool subset_of(SimpleSet a, SimpleSet b) { return (a & ~b) == 0; }
inline int set_size(SimpleSet s) { return __builtin_popcount(s); }

inline std::vector<int> set_elements(SimpleSet s) {
  std::vector<int> out;
  for (int i = 0; s; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

struct RootSystem {
  SystemKind kind = SystemKind::A;
  int rank = 0;
  int ambient = 0;
  std::vector<std::vector<long long>> cartan;   // c_ij = 2<a_i,a_j>/<a_j,a_j>
  std::vector<RatVec> simple;                   // simple roots
  std::vector<RatVec> roots;                    // positives first, then their negatives
  int num_positive = 0;
  std::vector<RatVec> simple_coords;            // coordinates of each root over the simple roots
  std::vector<SimpleSet> support;               // simple roots appearing in each root
  std::vector<std::vector<int>> simple_reflection;  // [i][r] -> index of s_i(root_r)

  int num_roots() const { return static_cast<int>(roots.size()); }
  bool is_positive(int r) const { return r < num_positive; }
  int negation(int r) const {
    return r < num_positive ? r + num_positive : r - num_positive;
  }

  int root_index(const RatVec& v) const {
    for (int r = 0; r < num_roots(); ++r)
      if (roots[r] == v) return r;
    return -1;
  }

  int simple_root_index(int i) const {  // index of a_i in the root list
    return root_index(simple[i]);
  }

  // The functional of root r evaluated at the ambient point H.
  Rat value(int r, const RatVec& H) const { return dot(roots[r], H); }

  // The dual vector of simple root i under the ambient form.
  const RatVec& coroot(int i) const { return simple[i]; }

  // Does root r lie in the span <theta> of the selected simple roots?
  bool in_span(int r, SimpleSet theta) const { return subset_of(support[r], theta); }

  std::string name() const { return std::string(1, kind_letter(kind)) + std::to_string(rank); }
};

namespace detail {

inline std::vector<RatVec> simple_roots_for(SystemKind kind, int rank, int& ambient) {
  auto e = [&](int i) {
    RatVec v(ambient, Rat(0));
    v[i] = 1;
    return v;
  };
  std::vector<RatVec> s;
  switch (kind) {
    case SystemKind::A:
      if (rank < 1) throw ConfigError("A_n requires rank >= 1");
      ambient = rank + 1;
      for (int i = 0; i < rank; ++i) s.push_back(sub(e(i), e(i + 1)));
      break;
    case SystemKind::B:
      if (rank < 2) throw ConfigError("B_n requires rank >= 2");
      ambient = rank;
      for (int i = 0; i + 1 < rank; ++i) s.push_back(sub(e(i), e(i + 1)));
      s.push_back(e(rank - 1));
      break;
    case SystemKind::C:
      if (rank < 2) throw ConfigError("C_n requires rank >= 2");
      ambient = rank;
      for (int i = 0; i + 1 < rank; ++i) s.push_back(sub(e(i), e(i + 1)));
      s.push_back(scale(Rat(2), e(rank - 1)));
      break;
    case SystemKind::D:
      if (rank < 3) throw ConfigError("D_n requires rank >= 3");
      ambient = rank;
      for (int i = 0; i + 1 < rank; ++i) s.push_back(sub(e(i), e(i + 1)));
      s.push_back(add(e(rank - 2), e(rank - 1)));
      break;
    case SystemKind::G:
      if (rank != 2) throw ConfigError("G_n exists only for rank 2");
      ambient = 3;
      s.push_back(sub(e(0), e(1)));
      s.push_back(add(add(scale(Rat(-2), e(0)), e(1)), e(2)));
      break;
  }
  return s;
}

}  // namespace detail

inline RootSystem build_root_system(SystemKind kind, int rank) {
  RootSystem rs;
  rs.kind = kind;
  rs.rank = rank;
  int ambient = 0;
  rs.simple = detail::simple_roots_for(kind, rank, ambient);
  rs.ambient = ambient;

  // Close the simple roots under all simple reflections.
  std::vector<RatVec> pool = rs.simple;
  for (const auto& a : rs.simple) pool.push_back(scale(Rat(-1), a));
  std::sort(pool.begin(), pool.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<RatVec> fresh;
    for (const auto& r : pool)
      for (const auto& a : rs.simple) {
        RatVec img = reflect(r, a);
        if (!std::binary_search(pool.begin(), pool.end(), img)) fresh.push_back(img);
      }
    if (!fresh.empty()) {
      grew = true;
      pool.insert(pool.end(), fresh.begin(), fresh.end());
      std::sort(pool.begin(), pool.end());
      pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
      if (pool.size() > 4096) throw ConfigError("root system too large to enumerate");
    }
  }

  // Coordinates over the simple roots via the Gram system; every root must
  // come out integral with a definite sign.
  std::vector<RatVec> gram(rank, RatVec(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) gram[i][j] = dot(rs.simple[i], rs.simple[j]);

  struct Entry {
    RatVec vec, coords;
    Rat height;
  };
  std::vector<Entry> pos;
  for (const auto& v : pool) {
    RatVec rhs(rank);
    for (int j = 0; j < rank; ++j) rhs[j] = dot(v, rs.simple[j]);
    RatVec x = solve_linear(gram, rhs);
    int sign = 0;
    Rat height = 0;
    for (const auto& c : x) {
      if (c.denominator() != 1) throw std::logic_error("non-integral root coordinates");
      height += c;
      if (c > 0) sign |= 1;
      if (c < 0) sign |= 2;
    }
    if (sign == 3) throw std::logic_error("root with mixed-sign coordinates");
    if (sign == 1) pos.push_back({v, x, height});
  }
  std::sort(pos.begin(), pos.end(), [](const Entry& a, const Entry& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.coords < b.coords;
  });

  rs.num_positive = static_cast<int>(pos.size());
  for (const auto& p : pos) {
    rs.roots.push_back(p.vec);
    rs.simple_coords.push_back(p.coords);
  }
  for (const auto& p : pos) {
    rs.roots.push_back(scale(Rat(-1), p.vec));
    rs.simple_coords.push_back(scale(Rat(-1), p.coords));
  }

  for (const auto& c : rs.simple_coords) {
    SimpleSet m = 0;
    for (int i = 0; i < rank; ++i)
      if (c[i] != 0) m |= SimpleSet(1) << i;
    rs.support.push_back(m);
  }

  rs.cartan.assign(rank, std::vector<long long>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      Rat c = Rat(2) * dot(rs.simple[i], rs.simple[j]) / dot(rs.simple[j], rs.simple[j]);
      if (c.denominator() != 1) throw std::logic_error("non-integral Cartan entry");
      rs.cartan[i][j] = c.numerator();
    }

  rs.simple_reflection.assign(rank, std::vector<int>(rs.num_roots()));
  for (int i = 0; i < rank; ++i)
    for (int r = 0; r < rs.num_roots(); ++r) {
      int idx = rs.root_index(reflect(rs.roots[r], rs.simple[i]));
      if (idx < 0) throw std::logic_error("reflection left the root set");
      rs.simple_reflection[i][r] = idx;
    }

  return rs;
}

inline RootSystem build_root_system(const std::string& label, int rank) {
  return build_root_system(parse_kind(label), rank);
}

}  // namespace flagmorse

#pragma once

// Brute-force reference implementations used to cross-check the library.
// Nothing here calls into arbor: tree elements are plain permutations of the
// d^n leaves, built from labels by direct recursion and closed by BFS.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

/// 0-based images.
using Perm = std::vector<int>;
/// A tree element as a permutation of the leaves of the depth-n tree; the
/// leaf x_1 ... x_n is encoded as the base-d number x_1 x_2 ... x_n.
using Leaves = std::vector<int>;

inline Perm cycles(int d, std::initializer_list<std::initializer_list<int>> cs) {
  Perm p(d);
  std::iota(p.begin(), p.end(), 0);
  for (const auto& c : cs) {
    std::vector<int> v(c);
    for (std::size_t i = 0; i < v.size(); ++i) p[v[i] - 1] = v[(i + 1) % v.size()] - 1;
  }
  return p;
}

inline Perm identity(int d) {
  Perm p(d);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm mul(const Perm& a, const Perm& b) {  // a after b
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

inline int ipow(int d, int n) {
  int r = 1;
  while (n-- > 0) r *= d;
  return r;
}

inline std::vector<Perm> closure(const std::vector<Perm>& gens, int degree) {
  std::set<Perm> seen{identity(degree)};
  std::vector<Perm> queue{identity(degree)};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const Perm& g : gens) {
      Perm x = mul(g, queue[i]);
      if (seen.insert(x).second) queue.push_back(x);
    }
  }
  return {seen.begin(), seen.end()};
}

/// Tree element from a label function: label(prefix) is the permutation
/// applied to the letter following `prefix`, read along the source word.
inline Leaves tree_element(int d, int n, const std::function<Perm(const std::vector<int>&)>& label) {
  const int leaves = ipow(d, n);
  Leaves out(leaves);
  for (int w = 0; w < leaves; ++w) {
    std::vector<int> word(n);
    for (int k = n - 1, x = w; k >= 0; --k, x /= d) word[k] = x % d;
    int image = 0;
    std::vector<int> prefix;
    for (int k = 0; k < n; ++k) {
      image = image * d + label(prefix)[word[k]];
      prefix.push_back(word[k]);
    }
    out[w] = image;
  }
  return out;
}

/// Level-2 element (root; l_1, ..., l_d).
inline Leaves level2(const Perm& root, const std::vector<Perm>& children) {
  const int d = static_cast<int>(root.size());
  return tree_element(d, 2, [&](const std::vector<int>& v) { return v.empty() ? root : children[v[0]]; });
}

/// Number of level-k words fixed, k = 1..n, read off the leaf permutation:
/// a prefix is fixed iff the image of its zero-extension starts with it.
inline std::vector<int> fixed_profile(const Leaves& g, int d, int n) {
  std::vector<int> y(n, 0);
  for (int k = 1; k <= n; ++k) {
    const int block = ipow(d, n - k);
    for (int u = 0; u < ipow(d, k); ++u) {
      if (g[u * block] / block == u) ++y[k - 1];
    }
  }
  return y;
}

/// Restriction of a leaf permutation to level k.
inline Leaves restrict_to(const Leaves& g, int d, int n, int k) {
  const int block = ipow(d, n - k);
  Leaves r(ipow(d, k));
  for (int u = 0; u < static_cast<int>(r.size()); ++u) r[u] = g[u * block] / block;
  return r;
}

/// Every element of the iterated wreath product [G]^n, as leaf permutations,
/// passed to `visit` one at a time (odometer over all labelings).
inline void for_each_wreath_element(const std::vector<Perm>& g, int d, int n,
                                    const std::function<void(const Leaves&)>& visit) {
  const int internal = (ipow(d, n) - 1) / (d - 1);
  std::vector<std::size_t> at(internal, 0);
  auto index_of = [d](const std::vector<int>& v) {
    int idx = 0;
    for (int x : v) idx = idx * d + 1 + x;
    return idx;
  };
  while (true) {
    visit(tree_element(d, n, [&](const std::vector<int>& v) { return g[at[index_of(v)]]; }));
    int k = internal - 1;
    while (k >= 0) {
      if (++at[k] < g.size()) break;
      at[k] = 0;
      --k;
    }
    if (k < 0) return;
  }
}

/// Law of (Y_1, ..., Y_n) over a list of equally likely elements, as counts.
struct CountLaw {
  std::map<std::vector<int>, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const std::vector<int>& y) {
    ++counts[y];
    ++total;
  }
  mpq_class probability(const std::vector<int>& y) const {
    auto it = counts.find(y);
    mpq_class q(it == counts.end() ? 0 : it->second, total);
    q.canonicalize();
    return q;
  }
};

/// E(Y_n | Y_1..Y_{n-1} = history), or -1 when the history never occurs.
inline mpq_class conditional(const CountLaw& law, const std::vector<int>& history) {
  std::uint64_t mass = 0;
  std::uint64_t moment = 0;
  for (const auto& [y, c] : law.counts) {
    if (!std::equal(history.begin(), history.end(), y.begin())) continue;
    mass += c;
    moment += c * static_cast<std::uint64_t>(y[history.size()]);
  }
  if (mass == 0) return -1;
  mpq_class q(moment, mass);
  q.canonicalize();
  return q;
}

inline int fixed_count(const Perm& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) c += p[i] == static_cast<int>(i);
  return c;
}

inline int orbit_count(const std::vector<Perm>& gens, int d) {
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const Perm& g : gens) {
    for (int x = 0; x < d; ++x) parent[find(x)] = find(g[x]);
  }
  int c = 0;
  for (int x = 0; x < d; ++x) c += find(x) == x;
  return c;
}

}  // namespace oracle

// Brute-force reference computations the tests check the library against.
// Everything here is deliberately independent of the implementation paths it
// oracles: plain exhaustive search, no shared helpers beyond the data types.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "raag/autos.hpp"
#include "raag/graph.hpp"
#include "raag/word.hpp"

namespace raag::oracle {

/// Exhaustive scan over all 4-element subsets for an induced path.
inline bool induced_p4_exists(const SimpleGraph& g) {
  int n = g.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, d) &&
              !g.adjacent(a, c) && !g.adjacent(a, d) && !g.adjacent(b, d))
            return true;
        }
  return false;
}

/// Automorphisms by filtering every permutation.
inline std::vector<Permutation> naive_automorphisms(const SimpleGraph& g) {
  int n = g.size();
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      for (int w = v + 1; w < n && ok; ++w)
        if (g.adjacent(v, w) != g.adjacent(p[v], p[w])) ok = false;
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Word equality by closing both words under adjacent commuting swaps and
/// cancelling-pair deletions; equal elements share a geodesic orbit.
inline bool words_equal_by_closure(const SimpleGraph& g, const Word& u,
                                   const Word& v) {
  auto closure = [&g](const Word& start) {
    std::set<std::vector<std::pair<int, int>>> seen;
    auto key = [](const Word& w) {
      std::vector<std::pair<int, int>> k;
      for (Letter l : w.letters) k.emplace_back(l.vertex, l.sign);
      return k;
    };
    std::vector<Word> queue{start};
    seen.insert(key(start));
    for (size_t i = 0; i < queue.size(); ++i) {
      Word w = queue[i];
      for (int j = 0; j + 1 < w.length(); ++j) {
        Letter x = w.letters[j], y = w.letters[j + 1];
        if (x.vertex != y.vertex && g.adjacent(x.vertex, y.vertex)) {
          Word s = w;
          std::swap(s.letters[j], s.letters[j + 1]);
          if (seen.insert(key(s)).second) queue.push_back(s);
        }
        if (x.vertex == y.vertex && x.sign == -y.sign) {
          Word s = w;
          s.letters.erase(s.letters.begin() + j, s.letters.begin() + j + 2);
          if (seen.insert(key(s)).second) queue.push_back(s);
        }
      }
    }
    return seen;
  };
  auto cu = closure(u), cv = closure(v);
  for (const auto& k : cu)
    if (cv.count(k)) return true;
  return false;
}

/// Ground-truth well-definedness of (A, a): the image formula must kill every
/// relator, and so must the inverse formula, with the two composing to the
/// identity both ways.
inline bool whitehead_well_defined_by_force(const SimpleGraph& g, LetterSet A,
                                            Letter a) {
  Endomorphism e = whitehead_formula_endo(g, A, a);
  LetterSet Ainv = (A & ~letter_bit(a)) | letter_bit(a.inverse());
  Endomorphism f = whitehead_formula_endo(g, Ainv, a.inverse());

  auto kills_relators = [&](const Endomorphism& endo) {
    for (auto [v, w] : g.edges()) {
      Word relator;
      relator.append(Letter{v, 1});
      relator.append(Letter{w, 1});
      relator.append(Letter{v, -1});
      relator.append(Letter{w, -1});
      if (!apply(g, endo, relator).empty()) return false;
    }
    return true;
  };
  if (!kills_relators(e) || !kills_relators(f)) return false;
  Endomorphism id = identity_endo(g);
  return compose(g, e, f) == id && compose(g, f, e) == id;
}

/// All labeled simple graphs on n fixed vertices.
inline std::vector<SimpleGraph> all_graphs(int n) {
  SimpleGraph base = SimpleGraph::edgeless(n);
  std::vector<std::pair<int, int>> slots;
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w) slots.emplace_back(v, w);
  std::vector<SimpleGraph> out;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (size_t i = 0; i < slots.size(); ++i)
      if (mask & (1u << i))
        edges.emplace_back(base.name(slots[i].first), base.name(slots[i].second));
    out.emplace_back(base.vertex_names(), edges);
  }
  return out;
}

/// One representative per isomorphism class of graphs on n vertices.
inline std::vector<SimpleGraph> graph_isomorphism_classes(int n) {
  std::vector<SimpleGraph> reps;
  for (const auto& g : all_graphs(n)) {
    bool fresh = true;
    for (const auto& r : reps)
      if (graphs_isomorphic(g, r)) fresh = false;
    if (fresh) reps.push_back(g);
  }
  return reps;
}

}  // namespace raag::oracle

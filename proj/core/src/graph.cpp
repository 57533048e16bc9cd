#include "raag/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace raag {

SimpleGraph::SimpleGraph(
    std::vector<std::string> vertices,
    const std::vector<std::pair<std::string, std::string>>& edges)
    : names_(std::move(vertices)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second)
      throw std::invalid_argument("duplicate vertex name: " + n);
  }
  adj_.assign(names_.size(), std::vector<bool>(names_.size(), false));
  for (const auto& [a, b] : edges) {
    int u = index_of(a), v = index_of(b);
    if (u == v) throw std::invalid_argument("self-loop at vertex: " + a);
    adj_[u][v] = adj_[v][u] = true;  // repeated edges collapse
  }
}

int SimpleGraph::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  throw std::invalid_argument("unknown vertex: " + name);
}

bool SimpleGraph::has_vertex(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

void SimpleGraph::check_vertex(int v) const {
  if (v < 0 || v >= size()) throw std::out_of_range("vertex index out of range");
}

int SimpleGraph::degree(int v) const {
  check_vertex(v);
  int d = 0;
  for (int w = 0; w < size(); ++w) d += adj_[v][w];
  return d;
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
  std::vector<std::pair<int, int>> es;
  for (int v = 0; v < size(); ++v)
    for (int w = v + 1; w < size(); ++w)
      if (adj_[v][w]) es.emplace_back(v, w);
  return es;
}

int SimpleGraph::edge_count() const { return static_cast<int>(edges().size()); }

SimpleGraph SimpleGraph::induced(const std::vector<int>& vertices) const {
  std::vector<int> vs = vertices;
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
    throw std::invalid_argument("repeated vertex in induced subgraph");
  SimpleGraph h;
  for (int v : vs) {
    check_vertex(v);
    h.names_.push_back(names_[v]);
  }
  int k = static_cast<int>(vs.size());
  h.adj_.assign(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) h.adj_[i][j] = adj_[vs[i]][vs[j]];
  return h;
}

SimpleGraph SimpleGraph::complement() const {
  SimpleGraph h = *this;
  for (int v = 0; v < size(); ++v)
    for (int w = 0; w < size(); ++w) h.adj_[v][w] = (v != w) && !adj_[v][w];
  return h;
}

namespace {
std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    std::string nm(1, static_cast<char>('a' + i % 26));
    if (i >= 26) nm += std::to_string(i / 26);
    names.push_back(nm);
  }
  return names;
}
}  // namespace

SimpleGraph SimpleGraph::path(int n) {
  SimpleGraph g = edgeless(n);
  for (int i = 0; i + 1 < n; ++i) g.adj_[i][i + 1] = g.adj_[i + 1][i] = true;
  return g;
}

SimpleGraph SimpleGraph::cycle(int n) {
  SimpleGraph g = path(n);
  if (n >= 3) g.adj_[0][n - 1] = g.adj_[n - 1][0] = true;
  return g;
}

SimpleGraph SimpleGraph::complete(int n) {
  SimpleGraph g = edgeless(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.adj_[i][j] = (i != j);
  return g;
}

SimpleGraph SimpleGraph::edgeless(int n) {
  SimpleGraph g;
  g.names_ = default_names(n);
  g.adj_.assign(n, std::vector<bool>(n, false));
  return g;
}

Permutation identity_permutation(int n) {
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation p(inner.size());
  for (size_t i = 0; i < inner.size(); ++i) p[i] = outer.at(inner[i]);
  return p;
}

Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

std::vector<int> link(const SimpleGraph& g, int v) {
  g.check_vertex(v);
  std::vector<int> out;
  for (int w = 0; w < g.size(); ++w)
    if (g.adjacent(v, w)) out.push_back(w);
  return out;
}

std::vector<int> star(const SimpleGraph& g, int v) {
  g.check_vertex(v);
  std::vector<int> out;
  for (int w = 0; w < g.size(); ++w)
    if (w == v || g.adjacent(v, w)) out.push_back(w);
  return out;
}

namespace {
// Components of the full subgraph on `keep`, ordered by smallest vertex.
std::vector<std::vector<int>> components_of_subset(const SimpleGraph& g,
                                                   const std::vector<bool>& keep) {
  std::vector<std::vector<int>> comps;
  std::vector<bool> done(g.size(), false);
  for (int v = 0; v < g.size(); ++v) {
    if (!keep[v] || done[v]) continue;
    std::vector<int> comp, stack{v};
    done[v] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w = 0; w < g.size(); ++w)
        if (keep[w] && !done[w] && g.adjacent(u, w)) {
          done[w] = true;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}
}  // namespace

std::vector<std::vector<int>> components_minus_star(const SimpleGraph& g, int v) {
  g.check_vertex(v);
  std::vector<bool> keep(g.size(), true);
  keep[v] = false;
  for (int w : link(g, v)) keep[w] = false;
  return components_of_subset(g, keep);
}

std::vector<std::vector<int>> connected_components(const SimpleGraph& g) {
  return components_of_subset(g, std::vector<bool>(g.size(), true));
}

bool dominates(const SimpleGraph& g, int v, int w) {
  g.check_vertex(v);
  g.check_vertex(w);
  for (int u : link(g, v))
    if (u != w && !g.adjacent(u, w)) return false;
  return true;
}

DominationStructure domination_structure(const SimpleGraph& g) {
  int n = g.size();
  DominationStructure d;
  d.leq.assign(n, std::vector<bool>(n, false));
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) d.leq[v][w] = dominates(g, v, w);

  d.class_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (d.class_of[v] >= 0) continue;
    int cls = static_cast<int>(d.classes.size());
    std::vector<int> members;
    for (int w = v; w < n; ++w)
      if (d.class_of[w] < 0 && d.leq[v][w] && d.leq[w][v]) {
        d.class_of[w] = cls;
        members.push_back(w);
      }
    ClassKind kind = ClassKind::Singleton;
    if (members.size() > 1)
      kind = g.adjacent(members[0], members[1]) ? ClassKind::Complete
                                                : ClassKind::Null;
    d.classes.push_back(std::move(members));
    d.kinds.push_back(kind);
  }
  return d;
}

bool LabeledQuotientGraph::labels_equal(int c1, int c2) const {
  if (sizes.at(c1) != sizes.at(c2)) return false;
  bool free1 = kinds.at(c1) == ClassKind::Null;
  bool free2 = kinds.at(c2) == ClassKind::Null;
  return free1 == free2;
}

LabeledQuotientGraph quotient_graph(const SimpleGraph& g) {
  DominationStructure d = domination_structure(g);
  LabeledQuotientGraph q;
  std::vector<std::string> names;
  for (const auto& cls : d.classes) names.push_back("[" + g.name(cls[0]) + "]");
  std::vector<std::pair<std::string, std::string>> edges;
  int k = static_cast<int>(d.classes.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (g.adjacent(d.classes[i][0], d.classes[j][0]))
        edges.emplace_back(names[i], names[j]);
  q.graph = SimpleGraph(names, edges);
  q.kinds = d.kinds;
  for (const auto& cls : d.classes) q.sizes.push_back(static_cast<int>(cls.size()));
  return q;
}

namespace {
// Backtracking enumeration of edge-preserving bijections a -> b, optionally
// constrained by a vertex compatibility predicate.
template <typename Compatible>
void isomorphisms(const SimpleGraph& a, const SimpleGraph& b,
                  const Compatible& compatible, bool first_only,
                  std::vector<Permutation>& out) {
  int n = a.size();
  Permutation img(n, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == n) {
      out.push_back(img);
      return first_only;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || !compatible(v, w) || a.degree(v) != b.degree(w)) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        if (a.adjacent(u, v) != b.adjacent(img[u], w)) ok = false;
      if (!ok) continue;
      img[v] = w;
      used[w] = true;
      if (self(self, v + 1)) return true;
      used[w] = false;
      img[v] = -1;
    }
    return false;
  };
  rec(rec, 0);
}
}  // namespace

std::vector<Permutation> graph_automorphisms(const SimpleGraph& g,
                                             int max_vertices) {
  if (g.size() > max_vertices)
    throw std::invalid_argument("graph_automorphisms: vertex bound exceeded");
  std::vector<Permutation> out;
  isomorphisms(g, g, [](int, int) { return true; }, false, out);
  return out;
}

std::vector<Permutation> labeled_quotient_automorphisms(
    const LabeledQuotientGraph& q, int max_vertices) {
  if (q.graph.size() > max_vertices)
    throw std::invalid_argument(
        "labeled_quotient_automorphisms: vertex bound exceeded");
  std::vector<Permutation> out;
  isomorphisms(
      q.graph, q.graph, [&](int v, int w) { return q.labels_equal(v, w); },
      false, out);
  return out;
}

bool graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b,
                       int max_vertices) {
  if (a.size() != b.size()) return false;
  if (a.size() > max_vertices)
    throw std::invalid_argument("graphs_isomorphic: vertex bound exceeded");
  if (a.edge_count() != b.edge_count()) return false;
  std::vector<Permutation> out;
  isomorphisms(a, b, [](int, int) { return true; }, true, out);
  return !out.empty();
}

SimpleGraph amalgam_graph(const SimpleGraph& g, const std::vector<int>& lambda,
                          int d) {
  if (d < 1) throw std::invalid_argument("amalgam_graph: d must be >= 1");
  std::vector<bool> shared(g.size(), false);
  for (int v : lambda) {
    g.check_vertex(v);
    if (shared[v]) throw std::invalid_argument("amalgam_graph: repeated vertex");
    shared[v] = true;
  }

  std::vector<std::string> names;
  std::map<std::pair<int, int>, int> id;  // (copy, vertex) -> new index; copy -1 = shared
  for (int v = 0; v < g.size(); ++v)
    if (shared[v]) {
      id[{-1, v}] = static_cast<int>(names.size());
      names.push_back(g.name(v));
    }
  for (int k = 0; k < d; ++k)
    for (int v = 0; v < g.size(); ++v)
      if (!shared[v]) {
        id[{k, v}] = static_cast<int>(names.size());
        names.push_back(g.name(v) + "@" + std::to_string(k));
      }

  auto at = [&](int k, int v) { return shared[v] ? id[{-1, v}] : id[{k, v}]; };
  std::set<std::pair<int, int>> es;
  for (auto [v, w] : g.edges())
    for (int k = 0; k < d; ++k) {
      int a = at(k, v), b = at(k, w);
      es.insert({std::min(a, b), std::max(a, b)});
    }
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [a, b] : es) edges.emplace_back(names[a], names[b]);
  return SimpleGraph(names, edges);
}

std::vector<int> Cotree::support() const {
  if (op == Op::Leaf) return {vertex};
  std::vector<int> vs;
  for (const auto& c : children) {
    auto sub = c.support();
    vs.insert(vs.end(), sub.begin(), sub.end());
  }
  std::sort(vs.begin(), vs.end());
  return vs;
}

namespace {

std::string cotree_key(const Cotree& t) {
  switch (t.op) {
    case Cotree::Op::Leaf:
      return "L" + std::to_string(t.vertex);
    case Cotree::Op::Join:
    case Cotree::Op::Union: {
      std::string s(t.op == Cotree::Op::Join ? "J(" : "U(");
      for (const auto& c : t.children) s += cotree_key(c) + ",";
      return s + ")";
    }
  }
  return "";
}

std::optional<P4Witness> find_induced_p4(const SimpleGraph& g,
                                         const std::vector<int>& within) {
  // Order the four candidates as b, c endpoints of the middle edge.
  for (int b : within)
    for (int c : within) {
      if (b == c || !g.adjacent(b, c)) continue;
      for (int a : within) {
        if (a == b || a == c) continue;
        if (!g.adjacent(a, b) || g.adjacent(a, c)) continue;
        for (int d : within) {
          if (d == a || d == b || d == c) continue;
          if (g.adjacent(c, d) && !g.adjacent(b, d) && !g.adjacent(a, d))
            return P4Witness{a, b, c, d};
        }
      }
    }
  return std::nullopt;
}

std::variant<Cotree, P4Witness> decompose_rec(const SimpleGraph& g,
                                              const std::vector<int>& within) {
  if (within.size() == 1) {
    Cotree leaf;
    leaf.op = Cotree::Op::Leaf;
    leaf.vertex = within[0];
    return leaf;
  }
  SimpleGraph sub = g.induced(within);
  auto lift = [&](const std::vector<std::vector<int>>& comps) {
    std::vector<std::vector<int>> out;
    for (const auto& c : comps) {
      std::vector<int> lifted;
      for (int i : c) lifted.push_back(within[i]);
      out.push_back(std::move(lifted));
    }
    return out;
  };

  auto comps = lift(connected_components(sub));
  Cotree::Op op = Cotree::Op::Union;
  if (comps.size() == 1) {
    comps = lift(connected_components(sub.complement()));
    op = Cotree::Op::Join;
    if (comps.size() == 1) {
      // Connected with connected complement: a cograph never does this,
      // so an induced P4 must exist here.
      auto p4 = find_induced_p4(g, within);
      if (!p4) throw std::logic_error("cograph split failed without a P4");
      return *p4;
    }
  }

  Cotree node;
  node.op = op;
  for (const auto& comp : comps) {
    auto sub_result = decompose_rec(g, comp);
    if (std::holds_alternative<P4Witness>(sub_result)) return sub_result;
    node.children.push_back(std::get<Cotree>(std::move(sub_result)));
  }
  std::sort(node.children.begin(), node.children.end(),
            [](const Cotree& a, const Cotree& b) {
              return cotree_key(a) < cotree_key(b);
            });
  return node;
}

}  // namespace

std::variant<Cotree, P4Witness> cograph_decompose(const SimpleGraph& g) {
  if (g.size() == 0) throw std::invalid_argument("cograph_decompose: empty graph");
  std::vector<int> all(g.size());
  for (int i = 0; i < g.size(); ++i) all[i] = i;
  return decompose_rec(g, all);
}

namespace {
void cotree_edges(const SimpleGraph& g, const Cotree& t,
                  std::set<std::pair<int, int>>& es) {
  if (t.op == Cotree::Op::Leaf) return;
  for (const auto& c : t.children) cotree_edges(g, c, es);
  if (t.op == Cotree::Op::Join) {
    for (size_t i = 0; i < t.children.size(); ++i)
      for (size_t j = i + 1; j < t.children.size(); ++j)
        for (int v : t.children[i].support())
          for (int w : t.children[j].support())
            es.insert({std::min(v, w), std::max(v, w)});
  }
}
}  // namespace

SimpleGraph evaluate_cotree(const SimpleGraph& g, const Cotree& t) {
  std::set<std::pair<int, int>> es;
  cotree_edges(g, t, es);
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [v, w] : es) edges.emplace_back(g.name(v), g.name(w));
  std::vector<int> sup = t.support();
  std::vector<std::string> names;
  for (int v : sup) names.push_back(g.name(v));
  return SimpleGraph(names, edges);
}

}  // namespace raag

#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace raag {

/// A finite simple graph. Vertices are opaque strings; the canonical order of
/// every enumeration in this library is the vertex input order, so all
/// derived data is deterministic. Internally vertices are addressed by index.
class SimpleGraph {
public:
  SimpleGraph() = default;
  SimpleGraph(std::vector<std::string> vertices,
              const std::vector<std::pair<std::string, std::string>>& edges);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::string& name(int v) const { return names_.at(v); }

  /// Index of a named vertex; throws std::invalid_argument for unknown names.
  int index_of(const std::string& name) const;
  bool has_vertex(const std::string& name) const;

  bool adjacent(int v, int w) const { return adj_.at(v).at(w); }
  int degree(int v) const;

  /// Edges as index pairs (v, w) with v < w, ordered lexicographically.
  std::vector<std::pair<int, int>> edges() const;
  int edge_count() const;

  /// Full subgraph spanned by the given vertices (which keep their names;
  /// their relative order is the ambient order).
  SimpleGraph induced(const std::vector<int>& vertices) const;
  SimpleGraph complement() const;

  bool operator==(const SimpleGraph& other) const = default;

  // Small standard families, vertices named a, b, c, ... (useful everywhere).
  static SimpleGraph path(int n);
  static SimpleGraph cycle(int n);
  static SimpleGraph complete(int n);
  static SimpleGraph edgeless(int n);

  void check_vertex(int v) const;  // throws std::out_of_range

private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> adj_;
};

/// A vertex permutation, stored as the image list: perm[v] is the image of v.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation inverse(const Permutation& p);

// ---------------------------------------------------------------------------
// Links, stars and components

/// Neighbors of v, in vertex order.
std::vector<int> link(const SimpleGraph& g, int v);

/// link(v) together with v itself.
std::vector<int> star(const SimpleGraph& g, int v);

/// Connected components of the full subgraph on V - st(v). Components are
/// ordered by their smallest vertex; each component lists vertices in order.
std::vector<std::vector<int>> components_minus_star(const SimpleGraph& g, int v);

/// Connected components of the whole graph, same ordering conventions.
std::vector<std::vector<int>> connected_components(const SimpleGraph& g);

// ---------------------------------------------------------------------------
// Vertex domination

/// v <= w, i.e. lk(v) is contained in st(w).
bool dominates(const SimpleGraph& g, int v, int w);

enum class ClassKind { Complete, Null, Singleton };

/// The domination preorder, its equivalence classes and their kinds.
/// Classes are ordered by smallest member; each class spans a complete or a
/// null subgraph (size-1 classes are reported as Singleton).
struct DominationStructure {
  std::vector<std::vector<bool>> leq;   // leq[v][w]  <=>  v <= w
  std::vector<std::vector<int>> classes;
  std::vector<ClassKind> kinds;         // parallel to classes
  std::vector<int> class_of;            // vertex -> class index

  bool less_eq(int v, int w) const { return leq.at(v).at(w); }
};

DominationStructure domination_structure(const SimpleGraph& g);

/// The quotient graph by domination equivalence. Vertex i of `graph` is the
/// i-th class; its label is F_size (Null classes) or Z^size (Complete and
/// Singleton classes).
struct LabeledQuotientGraph {
  SimpleGraph graph;            // vertices named "[rep]"
  std::vector<ClassKind> kinds;
  std::vector<int> sizes;

  /// Labels compare by algebraic type: Null -> free of rank size,
  /// Complete/Singleton -> free abelian of rank size.
  bool labels_equal(int c1, int c2) const;
};

LabeledQuotientGraph quotient_graph(const SimpleGraph& g);

// ---------------------------------------------------------------------------
// Automorphisms (exhaustive; desk scale)

inline constexpr int kDefaultAutBound = 10;

/// All vertex permutations preserving the edge set, in lexicographic order of
/// the image list. Throws std::invalid_argument beyond `max_vertices`.
std::vector<Permutation> graph_automorphisms(const SimpleGraph& g,
                                             int max_vertices = kDefaultAutBound);

/// Label-preserving automorphisms of a quotient graph.
std::vector<Permutation> labeled_quotient_automorphisms(
    const LabeledQuotientGraph& q, int max_vertices = kDefaultAutBound);

/// Exhaustive isomorphism test under the same vertex bound.
bool graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b,
                       int max_vertices = kDefaultAutBound);

// ---------------------------------------------------------------------------
// Graph surgery

/// d copies of g glued along the full subgraph spanned by `lambda`.
/// Shared vertices keep their names; the copy k of an unshared vertex v is
/// named "v@k". Vertex count is d(|V|-|lambda|)+|lambda|.
SimpleGraph amalgam_graph(const SimpleGraph& g, const std::vector<int>& lambda,
                          int d);

// ---------------------------------------------------------------------------
// Cograph decomposition

/// Cotree of a P4-free graph. Children are sorted by a canonical structural
/// key, so decomposition output is deterministic.
struct Cotree {
  enum class Op { Leaf, Join, Union };
  Op op = Op::Leaf;
  int vertex = -1;               // for Leaf
  std::vector<Cotree> children;  // for Join / Union, always >= 2

  /// Vertices covered by this subtree, in ambient order.
  std::vector<int> support() const;
};

/// Four vertices spanning an induced path, in path order.
using P4Witness = std::array<int, 4>;

/// Recursive split of g (or its complement) by connectivity. Returns the
/// cotree, or an induced-P4 witness when g is not a cograph.
std::variant<Cotree, P4Witness> cograph_decompose(const SimpleGraph& g);

/// Rebuild the graph a cotree denotes (on the ambient vertex set of g).
SimpleGraph evaluate_cotree(const SimpleGraph& g, const Cotree& t);

}  // namespace raag

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "raag/graph.hpp"
#include "raag/graph_io.hpp"

using namespace raag;

namespace {
std::vector<std::string> names(const SimpleGraph& g, const std::vector<int>& vs) {
  std::vector<std::string> out;
  for (int v : vs) out.push_back(g.name(v));
  return out;
}

SimpleGraph random_graph(std::mt19937& rng, int n, double p = 0.5) {
  SimpleGraph base = SimpleGraph::edgeless(n);
  std::vector<std::pair<std::string, std::string>> edges;
  std::bernoulli_distribution coin(p);
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if (coin(rng)) edges.emplace_back(base.name(v), base.name(w));
  return SimpleGraph(base.vertex_names(), edges);
}
}  // namespace

TEST_CASE("link and star on the small families") {
  SimpleGraph p3 = SimpleGraph::path(3);
  CHECK(names(p3, link(p3, 1)) == std::vector<std::string>{"a", "c"});
  CHECK(names(p3, star(p3, 1)) == std::vector<std::string>{"a", "b", "c"});
  CHECK(names(p3, star(p3, 0)) == std::vector<std::string>{"a", "b"});

  SimpleGraph k3 = SimpleGraph::complete(3);
  CHECK(names(k3, link(k3, 0)) == std::vector<std::string>{"b", "c"});

  SimpleGraph n3 = SimpleGraph::edgeless(3);
  CHECK(link(n3, 0).empty());
  CHECK(names(n3, star(n3, 0)) == std::vector<std::string>{"a"});

  CHECK_THROWS(link(p3, 7));
}

TEST_CASE("components of the star complement") {
  SimpleGraph p3 = SimpleGraph::path(3);
  CHECK(components_minus_star(p3, 0) ==
        std::vector<std::vector<int>>{{2}});  // P3 minus st(a) = {c}

  SimpleGraph p4 = SimpleGraph::path(4);
  CHECK(components_minus_star(p4, 1) == std::vector<std::vector<int>>{{3}});

  SimpleGraph k3 = SimpleGraph::complete(3);
  CHECK(components_minus_star(k3, 0).empty());
}

TEST_CASE("vertex domination on P3") {
  SimpleGraph p3 = SimpleGraph::path(3);
  CHECK(dominates(p3, 0, 1));        // a <= b
  CHECK_FALSE(dominates(p3, 1, 0));  // c is not in st(a)
  CHECK(dominates(p3, 0, 2));        // a <= c: lk(a)={b} in st(c)
}

TEST_CASE("domination structure classes and kinds") {
  SimpleGraph p3 = SimpleGraph::path(3);
  auto d = domination_structure(p3);
  REQUIRE(d.classes.size() == 2);
  CHECK(d.classes[0] == std::vector<int>{0, 2});
  CHECK(d.kinds[0] == ClassKind::Null);
  CHECK(d.classes[1] == std::vector<int>{1});
  CHECK(d.kinds[1] == ClassKind::Singleton);

  auto dk = domination_structure(SimpleGraph::complete(3));
  REQUIRE(dk.classes.size() == 1);
  CHECK(dk.kinds[0] == ClassKind::Complete);

  auto dp4 = domination_structure(SimpleGraph::path(4));
  CHECK(dp4.classes.size() == 4);
}

TEST_CASE("domination is a preorder and classes span complete or null graphs") {
  for (int n = 1; n <= 6; ++n) {
    // Sampling is enough at 5-6 vertices; below that the scan is exhaustive.
    std::vector<SimpleGraph> graphs;
    if (n <= 4) {
      graphs = oracle::all_graphs(n);
    } else {
      std::mt19937 rng(20240u + n);
      for (int i = 0; i < 120; ++i) graphs.push_back(random_graph(rng, n));
    }
    for (const auto& g : graphs) {
      auto d = domination_structure(g);
      for (int v = 0; v < n; ++v) CHECK(d.less_eq(v, v));
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          for (int w = 0; w < n; ++w)
            if (d.less_eq(u, v) && d.less_eq(v, w)) CHECK(d.less_eq(u, w));
      for (size_t c = 0; c < d.classes.size(); ++c) {
        const auto& cls = d.classes[c];
        for (size_t i = 0; i < cls.size(); ++i)
          for (size_t j = i + 1; j < cls.size(); ++j)
            CHECK(g.adjacent(cls[i], cls[j]) ==
                  (d.kinds[c] == ClassKind::Complete));
      }
    }
  }
}

TEST_CASE("quotient graphs carry free and abelian labels") {
  auto q = quotient_graph(SimpleGraph::path(3));
  REQUIRE(q.graph.size() == 2);
  CHECK(q.graph.vertex_names() == std::vector<std::string>{"[a]", "[b]"});
  CHECK(q.graph.adjacent(0, 1));
  CHECK(q.kinds[0] == ClassKind::Null);
  CHECK(q.sizes[0] == 2);
  CHECK(q.sizes[1] == 1);

  auto qk = quotient_graph(SimpleGraph::complete(3));
  CHECK(qk.graph.size() == 1);
  CHECK(qk.kinds[0] == ClassKind::Complete);
  CHECK(qk.sizes[0] == 3);

  auto qn = quotient_graph(SimpleGraph::edgeless(3));
  CHECK(qn.graph.size() == 1);
  CHECK(qn.kinds[0] == ClassKind::Null);
}

TEST_CASE("graph automorphisms match the permutation-filter oracle") {
  CHECK(graph_automorphisms(SimpleGraph::path(3)).size() == 2);
  CHECK(graph_automorphisms(SimpleGraph::complete(3)).size() == 6);
  CHECK(graph_automorphisms(SimpleGraph::path(4)).size() == 2);

  for (int n = 1; n <= 4; ++n)
    for (const auto& g : oracle::all_graphs(n))
      CHECK(graph_automorphisms(g) == oracle::naive_automorphisms(g));

  std::mt19937 rng(7);
  for (int i = 0; i < 40; ++i) {
    SimpleGraph g = random_graph(rng, 6);
    CHECK(graph_automorphisms(g) == oracle::naive_automorphisms(g));
  }

  CHECK_THROWS(graph_automorphisms(SimpleGraph::edgeless(11)));
}

TEST_CASE("labeled quotient automorphisms") {
  CHECK(labeled_quotient_automorphisms(quotient_graph(SimpleGraph::path(3))).size() == 1);
  CHECK(labeled_quotient_automorphisms(quotient_graph(SimpleGraph::cycle(4))).size() == 2);
  CHECK(labeled_quotient_automorphisms(quotient_graph(SimpleGraph::complete(3))).size() == 1);
}

TEST_CASE("automorphism count factors through the labeled quotient") {
  for (int n = 1; n <= 5; ++n)
    for (const auto& g : oracle::all_graphs(n)) {
      auto d = domination_structure(g);
      long long expected = 1;
      for (const auto& cls : d.classes)
        for (long long k = 2; k <= static_cast<long long>(cls.size()); ++k)
          expected *= k;
      expected *= static_cast<long long>(
          labeled_quotient_automorphisms(quotient_graph(g)).size());
      CHECK(static_cast<long long>(graph_automorphisms(g).size()) == expected);
    }
  std::mt19937 rng(11);
  for (int i = 0; i < 60; ++i) {
    SimpleGraph g = random_graph(rng, 6);
    auto d = domination_structure(g);
    long long expected = 1;
    for (const auto& cls : d.classes)
      for (long long k = 2; k <= static_cast<long long>(cls.size()); ++k)
        expected *= k;
    expected *= static_cast<long long>(
        labeled_quotient_automorphisms(quotient_graph(g)).size());
    CHECK(static_cast<long long>(graph_automorphisms(g).size()) == expected);
  }
}

TEST_CASE("amalgams glue copies along a star") {
  SimpleGraph n3 = SimpleGraph::edgeless(3);
  SimpleGraph glued = amalgam_graph(n3, star(n3, 0), 2);
  CHECK(glued.size() == 5);  // d(n-1)+1 with d=2, n=3
  CHECK(glued.edge_count() == 0);

  SimpleGraph p3 = SimpleGraph::path(3);
  std::vector<int> all{0, 1, 2};
  CHECK(amalgam_graph(p3, all, 5) == p3);
  CHECK(amalgam_graph(p3, star(p3, 1), 3) == p3);  // st(b) is everything

  CHECK_THROWS(amalgam_graph(p3, {0}, 0));
}

TEST_CASE("amalgam vertex count formula") {
  std::mt19937 rng(23);
  for (int i = 0; i < 60; ++i) {
    int n = 1 + static_cast<int>(rng() % 6);
    SimpleGraph g = random_graph(rng, n);
    std::vector<int> lambda;
    for (int v = 0; v < n; ++v)
      if (rng() % 2) lambda.push_back(v);
    int d = 1 + static_cast<int>(rng() % 4);
    SimpleGraph glued = amalgam_graph(g, lambda, d);
    int expect = d * (n - static_cast<int>(lambda.size())) +
                 static_cast<int>(lambda.size());
    CHECK(glued.size() == expect);
  }
}

TEST_CASE("cograph decomposition on the named examples") {
  auto c4 = cograph_decompose(SimpleGraph::cycle(4));
  REQUIRE(std::holds_alternative<Cotree>(c4));
  const Cotree& t = std::get<Cotree>(c4);
  CHECK(t.op == Cotree::Op::Join);
  REQUIRE(t.children.size() == 2);
  CHECK(t.children[0].op == Cotree::Op::Union);
  CHECK(t.children[1].op == Cotree::Op::Union);

  auto p4 = cograph_decompose(SimpleGraph::path(4));
  REQUIRE(std::holds_alternative<P4Witness>(p4));
  auto w = std::get<P4Witness>(p4);
  SimpleGraph g4 = SimpleGraph::path(4);
  CHECK(g4.adjacent(w[0], w[1]));
  CHECK(g4.adjacent(w[1], w[2]));
  CHECK(g4.adjacent(w[2], w[3]));
  CHECK_FALSE(g4.adjacent(w[0], w[2]));
  CHECK_FALSE(g4.adjacent(w[0], w[3]));
  CHECK_FALSE(g4.adjacent(w[1], w[3]));

  auto k3 = cograph_decompose(SimpleGraph::complete(3));
  REQUIRE(std::holds_alternative<Cotree>(k3));
  CHECK(std::get<Cotree>(k3).op == Cotree::Op::Join);
  CHECK(std::get<Cotree>(k3).children.size() == 3);
}

TEST_CASE("decomposition succeeds exactly on P4-free graphs and rebuilds them") {
  auto run = [](const SimpleGraph& g) {
    auto result = cograph_decompose(g);
    CHECK(std::holds_alternative<Cotree>(result) ==
          !oracle::induced_p4_exists(g));
    if (std::holds_alternative<Cotree>(result)) {
      SimpleGraph rebuilt = evaluate_cotree(g, std::get<Cotree>(result));
      CHECK(graphs_isomorphic(rebuilt, g));
    }
  };
  for (int n = 1; n <= 6; ++n)
    for (const auto& g : oracle::all_graphs(n)) run(g);
  std::mt19937 rng(31);
  for (int i = 0; i < 200; ++i) run(random_graph(rng, 7));
}

TEST_CASE("graph json round-trip and validation") {
  SimpleGraph g({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  CHECK(parse_graph_json(graph_to_json(g)) == g);

  CHECK_THROWS(parse_graph_json("{\"vertices\": [\"a\",\"a\"], \"edges\": []}"));
  CHECK_THROWS(parse_graph_json("{\"vertices\": [\"a\"], \"edges\": [[\"a\",\"a\"]]}"));
  CHECK_THROWS(parse_graph_json("{\"vertices\": [\"a\"], \"edges\": [[\"a\",\"b\"]]}"));
  CHECK_THROWS(parse_graph_json("not json at all"));

  std::string dot = graph_to_dot(g);
  CHECK(dot.find("\"x\" -- \"y\"") != std::string::npos);
}

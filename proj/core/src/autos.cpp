#include "raag/autos.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace raag {

// ---------------------------------------------------------------------------
// Letter sets

LetterSet letter_bit(Letter l) {
  return 1u << (2 * l.vertex + (l.sign < 0 ? 1 : 0));
}

bool set_contains(LetterSet s, Letter l) { return (s & letter_bit(l)) != 0; }

LetterSet set_inverse(LetterSet s) {
  constexpr LetterSet even = 0x55555555u;
  return ((s & even) << 1) | ((s >> 1) & even);
}

LetterSet full_letter_set(int n_vertices) {
  return (n_vertices >= 16) ? 0xffffffffu : ((1u << (2 * n_vertices)) - 1);
}

std::vector<Letter> set_letters(LetterSet s) {
  std::vector<Letter> out;
  for (int b = 0; b < 32; ++b)
    if (s & (1u << b)) out.push_back(Letter{b / 2, (b % 2) ? -1 : 1});
  return out;
}

// ---------------------------------------------------------------------------
// LS generators

std::vector<LSGenerator> ls_generators(const SimpleGraph& g) {
  std::vector<LSGenerator> gens;
  for (int v = 0; v < g.size(); ++v) gens.push_back(Inversion{v});
  for (const auto& sigma : graph_automorphisms(g))
    gens.push_back(GraphSymmetry{sigma});
  for (int v = 0; v < g.size(); ++v)
    for (int w = 0; w < g.size(); ++w)
      if (v != w && dominates(g, w, v)) gens.push_back(Transvection{v, w});
  for (int v = 0; v < g.size(); ++v)
    for (auto& comp : components_minus_star(g, v))
      gens.push_back(PartialConjugation{v, comp});
  return gens;
}

std::string ls_to_string(const SimpleGraph& g, const LSGenerator& gen) {
  std::ostringstream os;
  if (auto* i = std::get_if<Inversion>(&gen)) {
    os << "inv " << g.name(i->v);
  } else if (auto* s = std::get_if<GraphSymmetry>(&gen)) {
    os << "sym";
    std::vector<bool> seen(g.size(), false);
    bool any = false;
    for (int v = 0; v < g.size(); ++v) {
      if (seen[v] || s->sigma[v] == v) continue;
      os << " (";
      int u = v;
      bool first = true;
      while (!seen[u]) {
        seen[u] = true;
        os << (first ? "" : " ") << g.name(u);
        first = false;
        u = s->sigma[u];
      }
      os << ")";
      any = true;
    }
    if (!any) os << " ()";
  } else if (auto* t = std::get_if<Transvection>(&gen)) {
    os << "transv " << g.name(t->v) << " " << g.name(t->w);
  } else if (auto* p = std::get_if<PartialConjugation>(&gen)) {
    os << "pconj " << g.name(p->v) << " {";
    for (size_t i = 0; i < p->component.size(); ++i)
      os << (i ? " " : "") << g.name(p->component[i]);
    os << "}";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Whitehead automorphisms

WhiteheadAuto WhiteheadAuto::type1(Permutation sigma, std::uint32_t inverted) {
  WhiteheadAuto w;
  w.kind = Kind::Permutation;
  w.sigma = std::move(sigma);
  w.inverted = inverted;
  return w;
}

WhiteheadAuto WhiteheadAuto::type2(LetterSet set, Letter multiplier) {
  WhiteheadAuto w;
  w.kind = Kind::Multiplier;
  w.set = set;
  w.multiplier = multiplier;
  return w;
}

Letter type1_act(const WhiteheadAuto& w, Letter l) {
  int target = w.sigma.at(l.vertex);
  int sign = (w.inverted >> target) & 1 ? -l.sign : l.sign;
  return Letter{target, sign};
}

LetterSet type1_act_set(const WhiteheadAuto& w, LetterSet s) {
  LetterSet out = 0;
  for (Letter l : set_letters(s)) out |= letter_bit(type1_act(w, l));
  return out;
}

WhiteheadAuto type1_compose(const WhiteheadAuto& f, const WhiteheadAuto& g) {
  Permutation sigma = compose(f.sigma, g.sigma);
  std::uint32_t inv = f.inverted;
  for (size_t u = 0; u < f.sigma.size(); ++u)
    if ((g.inverted >> u) & 1) inv ^= 1u << f.sigma[u];
  return WhiteheadAuto::type1(std::move(sigma), inv);
}

WhiteheadAuto type1_inverse(const WhiteheadAuto& f) {
  Permutation sigma = inverse(f.sigma);
  std::uint32_t inv = 0;
  for (size_t x = 0; x < f.sigma.size(); ++x)
    if ((f.inverted >> f.sigma[x]) & 1) inv |= 1u << x;
  return WhiteheadAuto::type1(std::move(sigma), inv);
}

WhiteheadAuto whitehead_inverse(const WhiteheadAuto& w) {
  if (w.kind == WhiteheadAuto::Kind::Permutation) return type1_inverse(w);
  Letter a = w.multiplier;
  LetterSet set = (w.set & ~letter_bit(a)) | letter_bit(a.inverse());
  return WhiteheadAuto::type2(set, a.inverse());
}

WellDefinedness whitehead_well_defined(const SimpleGraph& g, LetterSet A,
                                       Letter a) {
  if (!set_contains(A, a) || set_contains(A, a.inverse()))
    throw std::invalid_argument(
        "whitehead_well_defined: need a in A and a^-1 not in A");

  std::vector<bool> in_link(g.size(), false);
  for (int u : link(g, a.vertex)) in_link[u] = true;

  // Condition 1: vertices carried with their inverses, minus lk(a), must be
  // a union of components of Gamma - st(a).
  std::vector<bool> both(g.size(), false);
  for (int u = 0; u < g.size(); ++u)
    both[u] = set_contains(A, {u, 1}) && set_contains(A, {u, -1}) && !in_link[u];
  for (const auto& comp : components_minus_star(g, a.vertex)) {
    bool any = false, all = true;
    for (int u : comp) {
      any = any || both[u];
      all = all && both[u];
    }
    if (any && !all)
      return {false, "component {" + g.name(comp[0]) +
                         " ...} is split by A (condition 1)"};
  }

  // Condition 2: every letter in A - A^-1 is dominated by the multiplier.
  for (Letter x : set_letters(A)) {
    if (set_contains(A, x.inverse())) continue;
    if (!dominates(g, x.vertex, a.vertex))
      return {false, "letter " + g.name(x.vertex) +
                         " is not dominated by the multiplier (condition 2)"};
  }
  return {true, ""};
}

std::string whitehead_to_string(const SimpleGraph& g, const WhiteheadAuto& w) {
  std::ostringstream os;
  if (w.kind == WhiteheadAuto::Kind::Multiplier) {
    os << "({";
    bool first = true;
    for (Letter l : set_letters(w.set)) {
      os << (first ? "" : ", ") << g.name(l.vertex) << (l.sign < 0 ? "^-1" : "");
      first = false;
    }
    os << "}, " << g.name(w.multiplier.vertex)
       << (w.multiplier.sign < 0 ? "^-1" : "") << ")";
  } else {
    os << "[";
    for (int v = 0; v < g.size(); ++v) {
      Letter img = type1_act(w, {v, 1});
      os << (v ? " " : "") << g.name(v) << "->" << g.name(img.vertex)
         << (img.sign < 0 ? "^-1" : "");
    }
    os << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Endomorphisms

Endomorphism identity_endo(const SimpleGraph& g) {
  Endomorphism e;
  for (int v = 0; v < g.size(); ++v)
    e.images.push_back(Word({Letter{v, 1}}));
  return e;
}

Word apply(const SimpleGraph& g, const Endomorphism& e, const Word& w) {
  Word out;
  for (Letter l : w.letters) {
    const Word& img = e.images.at(l.vertex);
    if (l.sign > 0)
      out.append(img);
    else
      out.append(img.inverse());
  }
  return normal_form(g, out);
}

Endomorphism compose(const SimpleGraph& g, const Endomorphism& f,
                     const Endomorphism& e) {
  Endomorphism out;
  out.images.reserve(g.size());
  for (int v = 0; v < g.size(); ++v) out.images.push_back(apply(g, f, e.images[v]));
  return out;
}

bool endos_equal(const SimpleGraph& g, const Endomorphism& f,
                 const Endomorphism& e) {
  (void)g;  // images are stored in normal form
  return f.images == e.images;
}

Endomorphism endo_of_ls(const SimpleGraph& g, const LSGenerator& gen) {
  Endomorphism e = identity_endo(g);
  if (auto* i = std::get_if<Inversion>(&gen)) {
    g.check_vertex(i->v);
    e.images[i->v] = Word({Letter{i->v, -1}});
  } else if (auto* s = std::get_if<GraphSymmetry>(&gen)) {
    for (int v = 0; v < g.size(); ++v)
      e.images[v] = Word({Letter{s->sigma.at(v), 1}});
  } else if (auto* t = std::get_if<Transvection>(&gen)) {
    if (t->v == t->w || !dominates(g, t->w, t->v))
      throw std::invalid_argument("transvection requires w <= v, v != w");
    e.images[t->w] =
        normal_form(g, Word({Letter{t->v, 1}, Letter{t->w, 1}}));
  } else if (auto* p = std::get_if<PartialConjugation>(&gen)) {
    auto cc = components_minus_star(g, p->v);
    std::vector<int> comp = p->component;
    std::sort(comp.begin(), comp.end());
    if (std::find(cc.begin(), cc.end(), comp) == cc.end())
      throw std::invalid_argument(
          "partial conjugation component is not a component of the graph minus the star");
    for (int u : comp)
      e.images[u] = normal_form(
          g, Word({Letter{p->v, 1}, Letter{u, 1}, Letter{p->v, -1}}));
  }
  return e;
}

Endomorphism inverse_endo_of_ls(const SimpleGraph& g, const LSGenerator& gen) {
  Endomorphism e = identity_endo(g);
  if (auto* i = std::get_if<Inversion>(&gen)) {
    e.images[i->v] = Word({Letter{i->v, -1}});
  } else if (auto* s = std::get_if<GraphSymmetry>(&gen)) {
    Permutation inv = inverse(s->sigma);
    for (int v = 0; v < g.size(); ++v) e.images[v] = Word({Letter{inv[v], 1}});
  } else if (auto* t = std::get_if<Transvection>(&gen)) {
    e.images[t->w] =
        normal_form(g, Word({Letter{t->v, -1}, Letter{t->w, 1}}));
  } else if (auto* p = std::get_if<PartialConjugation>(&gen)) {
    for (int u : p->component)
      e.images[u] = normal_form(
          g, Word({Letter{p->v, -1}, Letter{u, 1}, Letter{p->v, 1}}));
  }
  return e;
}

Endomorphism whitehead_formula_endo(const SimpleGraph& g, LetterSet A,
                                    Letter a) {
  Endomorphism e;
  e.images.reserve(g.size());
  for (int v = 0; v < g.size(); ++v) {
    if (v == a.vertex) {
      e.images.push_back(Word({Letter{v, 1}}));
      continue;
    }
    bool pos = set_contains(A, {v, 1});
    bool neg = set_contains(A, {v, -1});
    Word img;
    if (neg) img.append(a.inverse());
    img.append(Letter{v, 1});
    if (pos) img.append(a);
    e.images.push_back(normal_form(g, img));
  }
  return e;
}

Endomorphism endo_of_whitehead(const SimpleGraph& g, const WhiteheadAuto& w) {
  if (w.kind == WhiteheadAuto::Kind::Permutation) {
    Endomorphism e;
    for (int v = 0; v < g.size(); ++v) {
      Letter img = type1_act(w, {v, 1});
      e.images.push_back(Word({img}));
    }
    return e;
  }
  auto wd = whitehead_well_defined(g, w.set, w.multiplier);
  if (!wd.ok)
    throw std::invalid_argument("whitehead automorphism not well-defined: " +
                                wd.reason);
  return whitehead_formula_endo(g, w.set, w.multiplier);
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<WhiteheadAuto> enumerate_whitehead(const SimpleGraph& g,
                                               int max_vertices) {
  if (g.size() > max_vertices)
    throw std::invalid_argument("enumerate_whitehead: vertex bound exceeded");
  std::vector<WhiteheadAuto> out;
  for (const auto& sigma : graph_automorphisms(g))
    for (std::uint32_t mask = 0; mask < (1u << g.size()); ++mask)
      out.push_back(WhiteheadAuto::type1(sigma, mask));

  int n = g.size();
  for (int rank = 0; rank < 2 * n; ++rank) {
    Letter a{rank / 2, (rank % 2) ? -1 : 1};
    LetterSet others = full_letter_set(n) & ~letter_bit(a) & ~letter_bit(a.inverse());
    // Iterate subsets of `others` in increasing order.
    std::vector<int> bits;
    for (int b = 0; b < 2 * n; ++b)
      if (others & (1u << b)) bits.push_back(b);
    for (std::uint32_t sub = 0; sub < (1u << bits.size()); ++sub) {
      LetterSet A = letter_bit(a);
      for (size_t i = 0; i < bits.size(); ++i)
        if (sub & (1u << i)) A |= 1u << bits[i];
      if (whitehead_well_defined(g, A, a).ok)
        out.push_back(WhiteheadAuto::type2(A, a));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Day relation instances

Endomorphism materialize(const SimpleGraph& g,
                         const std::vector<WhiteheadAuto>& side) {
  Endomorphism e = identity_endo(g);
  for (auto it = side.rbegin(); it != side.rend(); ++it)
    e = compose(g, endo_of_whitehead(g, *it), e);
  return e;
}

namespace {

struct DayEnumerator {
  const SimpleGraph& g;
  const std::function<void(const DayInstance&)>& visit;
  DayEnumerationStats stats;

  std::vector<WhiteheadAuto> type1, type2;
  DominationStructure dom;

  DayEnumerator(const SimpleGraph& graph,
                const std::function<void(const DayInstance&)>& v, int bound)
      : g(graph), visit(v), dom(domination_structure(graph)) {
    for (auto& w : enumerate_whitehead(g, bound)) {
      (w.kind == WhiteheadAuto::Kind::Permutation ? type1 : type2)
          .push_back(w);
    }
  }

  bool well_defined(LetterSet A, Letter a) {
    return whitehead_well_defined(g, A, a).ok;
  }

  void emit(int relation, std::vector<WhiteheadAuto> lhs,
            std::vector<WhiteheadAuto> rhs) {
    DayInstance inst{relation, std::move(lhs), std::move(rhs)};
    ++stats.instances;
    visit(inst);
  }

  // Emits iff every multiplier-type factor on both sides is well-defined.
  void emit_checked(int relation, std::vector<WhiteheadAuto> lhs,
                    std::vector<WhiteheadAuto> rhs) {
    for (const auto* side : {&lhs, &rhs})
      for (const auto& w : *side)
        if (w.kind == WhiteheadAuto::Kind::Multiplier &&
            !well_defined(w.set, w.multiplier)) {
          ++stats.skipped_ill_defined;
          return;
        }
    emit(relation, std::move(lhs), std::move(rhs));
  }

  void relation1() {
    for (const auto& w : type2) {
      WhiteheadAuto inv = whitehead_inverse(w);
      emit_checked(1, {w, inv}, {});
      emit_checked(1, {inv, w}, {});
    }
  }

  void relation2() {
    for (const auto& w1 : type2)
      for (const auto& w2 : type2) {
        if (!(w1.multiplier == w2.multiplier)) continue;
        if ((w1.set & w2.set) != letter_bit(w1.multiplier)) continue;
        WhiteheadAuto u = WhiteheadAuto::type2(w1.set | w2.set, w1.multiplier);
        emit_checked(2, {w1, w2}, {u});
      }
  }

  // Shared scan for relations 3 and 4.
  void relations34() {
    for (const auto& wa : type2)
      for (const auto& wb : type2) {
        Letter a = wa.multiplier, b = wb.multiplier;
        LetterSet A = wa.set, B = wb.set;
        if (set_contains(B, a) || set_contains(B, a.inverse())) continue;
        bool disjoint = (A & B) == 0;
        bool linked = g.adjacent(a.vertex, b.vertex);
        if (!disjoint && !linked) continue;
        bool b_pos = set_contains(A, b);
        bool b_neg = set_contains(A, b.inverse());
        if (!b_pos && !b_neg) {
          emit_checked(3,
                       {wa, wb, whitehead_inverse(wa), whitehead_inverse(wb)},
                       {});
        } else if (!b_pos && b_neg) {
          LetterSet C = (B & ~letter_bit(b)) | letter_bit(a);
          WhiteheadAuto rhs = whitehead_inverse(WhiteheadAuto::type2(C, a));
          emit_checked(4,
                       {wa, wb, whitehead_inverse(wa), whitehead_inverse(wb)},
                       {rhs});
        }
      }
  }

  void relation5() {
    for (const auto& wa : type2) {
      Letter a = wa.multiplier;
      LetterSet A = wa.set;
      for (Letter b : set_letters(A)) {
        if (b == a || set_contains(A, b.inverse())) continue;
        if (dom.class_of[b.vertex] != dom.class_of[a.vertex]) continue;
        LetterSet X1 = (A & ~letter_bit(a)) | letter_bit(a.inverse());
        LetterSet X2 = (A & ~letter_bit(b)) | letter_bit(b.inverse());
        // sigma_{a,b}: a -> b^-1, b -> a as letters.
        Permutation tr = identity_permutation(g.size());
        std::swap(tr[a.vertex], tr[b.vertex]);
        std::uint32_t inverted = 0;
        if (a.sign * b.sign > 0)
          inverted |= 1u << b.vertex;  // eps at image of a
        else
          inverted |= 1u << a.vertex;
        WhiteheadAuto sig = WhiteheadAuto::type1(std::move(tr), inverted);
        emit_checked(5, {WhiteheadAuto::type2(X1, b), wa},
                     {WhiteheadAuto::type2(X2, a), sig});
      }
    }
  }

  void relation6() {
    for (const auto& s : type1)
      for (const auto& w : type2) {
        LetterSet sA = type1_act_set(s, w.set);
        Letter sa = type1_act(s, w.multiplier);
        emit_checked(6, {s, w, type1_inverse(s)},
                     {WhiteheadAuto::type2(sA, sa)});
      }
  }

  void relation7() {
    for (const auto& s : type1)
      for (const auto& t : type1)
        emit(7, {s, t}, {type1_compose(s, t)});
  }

  void relation8() {
    LetterSet L = full_letter_set(g.size());
    for (const auto& w : type2) {
      Letter a = w.multiplier;
      WhiteheadAuto gamma =
          WhiteheadAuto::type2(L & ~letter_bit(a.inverse()), a);
      WhiteheadAuto rest = WhiteheadAuto::type2(L & ~w.set, a.inverse());
      emit_checked(8, {gamma, rest}, {w});
    }
  }

  void relations910() {
    LetterSet L = full_letter_set(g.size());
    for (const auto& wa : type2) {
      Letter a = wa.multiplier;
      LetterSet A = wa.set;
      for (int rank = 0; rank < 2 * g.size(); ++rank) {
        Letter b{rank / 2, (rank % 2) ? -1 : 1};
        WhiteheadAuto gb = WhiteheadAuto::type2(L & ~letter_bit(b.inverse()), b);
        bool b_pos = set_contains(A, b);
        bool b_neg = set_contains(A, b.inverse());
        if (!b_pos && !b_neg) {
          emit_checked(
              9, {wa, gb, whitehead_inverse(wa), whitehead_inverse(gb)}, {});
        } else if (b_pos && !b_neg && !(b == a)) {
          WhiteheadAuto ga = WhiteheadAuto::type2(L & ~letter_bit(a.inverse()), a);
          emit_checked(
              10, {wa, gb, whitehead_inverse(wa), whitehead_inverse(gb)},
              {ga});
        }
      }
    }
  }

  void run() {
    relation1();
    relation2();
    relations34();
    relation5();
    relation6();
    relation7();
    relation8();
    relations910();
  }
};

}  // namespace

DayEnumerationStats for_each_day_instance(
    const SimpleGraph& g, const std::function<void(const DayInstance&)>& visit,
    int max_vertices) {
  DayEnumerator e(g, visit, max_vertices);
  e.run();
  return e.stats;
}

std::vector<DayInstance> day_relation_instances(const SimpleGraph& g,
                                                int max_vertices,
                                                long long max_instances) {
  std::vector<DayInstance> out;
  long long count = 0;
  for_each_day_instance(
      g,
      [&](const DayInstance& inst) {
        if (++count > max_instances)
          throw std::invalid_argument(
              "day_relation_instances: instance bound exceeded");
        out.push_back(inst);
      },
      max_vertices);
  return out;
}

DayReport verify_day_presentation(const SimpleGraph& g, int max_vertices) {
  DayReport report;
  auto stats = for_each_day_instance(
      g,
      [&](const DayInstance& inst) {
        Endomorphism lhs = materialize(g, inst.lhs);
        Endomorphism rhs = materialize(g, inst.rhs);
        if (!(lhs == rhs)) {
          ++report.failure_count;
          if (report.failures.size() < 20) {
            std::string desc = "lhs:";
            for (const auto& w : inst.lhs)
              desc += " " + whitehead_to_string(g, w);
            desc += " rhs:";
            for (const auto& w : inst.rhs)
              desc += " " + whitehead_to_string(g, w);
            report.failures.push_back({inst.relation, desc});
          }
        }
      },
      max_vertices);
  report.instances = stats.instances;
  report.skipped_ill_defined = stats.skipped_ill_defined;
  return report;
}

}  // namespace raag

#include "raag/subgroups.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <cstdlib>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "raag/autos.hpp"
#include "raag/intmat.hpp"
#include "raag/lifts.hpp"

namespace raag {

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::invalid_argument("integer overflow in index computation");
  return r;
}

long long positive_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

long long power_mod(long long base, long long exp, long long mod) {
  long long out = 1 % mod;
  base = positive_mod(base, mod);
  while (exp > 0) {
    if (exp & 1) out = out * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return out;
}

long long primitive_root(long long p) {
  std::vector<long long> prime_factors;
  long long m = p - 1;
  for (long long q = 2; q * q <= m; ++q)
    if (m % q == 0) {
      prime_factors.push_back(q);
      while (m % q == 0) m /= q;
    }
  if (m > 1) prime_factors.push_back(m);
  for (long long g = 2; g < p; ++g) {
    bool ok = true;
    for (long long q : prime_factors)
      if (power_mod(g, (p - 1) / q, p) == 1) ok = false;
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

// A concrete finite group with generator images: elements are encoded as
// integers, multiplication is a callable.
struct QuotientGroup {
  long long identity = 0;
  std::vector<long long> images;  // per ambient generator
  std::function<long long(long long, long long)> mult;
};

QuotientGroup build_quotient(const SimpleGraph& g, const FiniteQuotientSpec& spec) {
  QuotientGroup q;
  if (const auto* ab = std::get_if<AbelianQuotient>(&spec)) {
    if (static_cast<int>(ab->images.size()) != g.size())
      throw std::invalid_argument("abelian quotient needs one image per vertex");
    for (long long m : ab->moduli)
      if (m < 1) throw std::invalid_argument("moduli must be positive");
    std::vector<long long> moduli = ab->moduli;
    auto encode = [moduli](const std::vector<long long>& tuple) {
      long long code = 0;
      for (size_t i = 0; i < moduli.size(); ++i)
        code = code * moduli[i] + positive_mod(tuple[i], moduli[i]);
      return code;
    };
    q.identity = 0;
    for (const auto& img : ab->images) {
      if (img.size() != moduli.size())
        throw std::invalid_argument("image tuple length must match the moduli");
      q.images.push_back(encode(img));
    }
    q.mult = [moduli](long long a, long long b) {
      // Decode, add componentwise, re-encode.
      std::vector<long long> ta(moduli.size()), tb(moduli.size());
      long long x = a, y = b;
      for (size_t i = moduli.size(); i-- > 0;) {
        ta[i] = x % moduli[i];
        x /= moduli[i];
        tb[i] = y % moduli[i];
        y /= moduli[i];
      }
      long long code = 0;
      for (size_t i = 0; i < moduli.size(); ++i)
        code = code * moduli[i] + (ta[i] + tb[i]) % moduli[i];
      return code;
    };
    return q;
  }

  const auto& sd = std::get<SemidirectQuotient>(spec);
  if (!is_prime(sd.p)) throw std::invalid_argument("semidirect quotient: p must be prime");
  if (sd.d < 1 || (sd.p - 1) % sd.d != 0)
    throw std::invalid_argument("semidirect quotient: need d dividing p-1");
  g.check_vertex(sd.cyclic_vertex);
  g.check_vertex(sd.fiber_vertex);
  if (sd.cyclic_vertex == sd.fiber_vertex)
    throw std::invalid_argument("semidirect quotient: vertices must differ");
  long long p = sd.p, d = sd.d;
  long long twist = power_mod(primitive_root(p), (p - 1) / d, p);
  // Element (x, b) encoded as x*d + b; (x1,b1)(x2,b2) = (x1 + x2 twist^b1, b1+b2).
  q.identity = 0;
  q.images.assign(g.size(), 0);
  q.images[sd.cyclic_vertex] = 1;            // (0, 1)
  q.images[sd.fiber_vertex] = d;             // (1, 0)
  q.mult = [p, d, twist](long long a, long long b) {
    long long x1 = a / d, b1 = a % d, x2 = b / d, b2 = b % d;
    long long x = (x1 + x2 * power_mod(twist, b1, p)) % p;
    return x * d + (b1 + b2) % d;
  };

  // Well-definedness on the relators: adjacent generators must commute.
  for (auto [u, w] : g.edges()) {
    long long uw = q.mult(q.images[u], q.images[w]);
    long long wu = q.mult(q.images[w], q.images[u]);
    if (uw != wu)
      throw std::invalid_argument(
          "semidirect quotient is not well-defined on the relator [" +
          g.name(u) + ", " + g.name(w) + "]");
  }
  return q;
}

Word free_reduce(const Word& w) {
  Word out;
  for (Letter l : w.letters) {
    if (!out.empty() && out.letters.back().vertex == l.vertex &&
        out.letters.back().sign == -l.sign)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  while (w.length() >= 2 && w.letters.front().vertex == w.letters.back().vertex &&
         w.letters.front().sign == -w.letters.back().sign) {
    w.letters.erase(w.letters.begin());
    w.letters.pop_back();
  }
  return w;
}

}  // namespace

long long quotient_index(const std::vector<long long>& residues) {
  long long idx = 1;
  for (long long r : residues) {
    if (r < 1) throw std::invalid_argument("residues must be positive");
    idx = checked_mul(idx, r);
  }
  return idx;
}

Presentation reidemeister_schreier(const SimpleGraph& g,
                                   const FiniteQuotientSpec& q,
                                   long long index_bound) {
  QuotientGroup group = build_quotient(g, q);
  int n = g.size();

  // Breadth-first coset enumeration over the image subgroup; cosets of the
  // kernel correspond to image elements.
  std::map<long long, int> coset_of;
  std::vector<long long> element;
  std::vector<Word> transversal;
  std::vector<std::vector<int>> act;       // coset x generator -> coset
  std::vector<std::vector<bool>> is_tree;  // BFS tree edges give trivial generators

  coset_of[group.identity] = 0;
  element.push_back(group.identity);
  transversal.push_back(Word{});
  std::queue<int> frontier;
  frontier.push(0);
  while (!frontier.empty()) {
    int c = frontier.front();
    frontier.pop();
    for (int x = 0; x < n; ++x) {
      long long target = group.mult(element[c], group.images[x]);
      if (!coset_of.count(target)) {
        if (static_cast<long long>(element.size()) >= index_bound)
          throw std::invalid_argument(
              "reidemeister_schreier: quotient order exceeds the bound");
        int idx = static_cast<int>(element.size());
        coset_of[target] = idx;
        element.push_back(target);
        Word w = transversal[c];
        w.append(Letter{x, 1});
        transversal.push_back(std::move(w));
        frontier.push(idx);
      }
    }
  }

  int index = static_cast<int>(element.size());
  act.assign(index, std::vector<int>(n, -1));
  is_tree.assign(index, std::vector<bool>(n, false));
  for (int c = 0; c < index; ++c)
    for (int x = 0; x < n; ++x)
      act[c][x] = coset_of.at(group.mult(element[c], group.images[x]));
  // Mark the BFS tree edges (the edge that first reached each coset).
  {
    std::vector<bool> reached(index, false);
    reached[0] = true;
    std::queue<int> bfs;
    bfs.push(0);
    while (!bfs.empty()) {
      int c = bfs.front();
      bfs.pop();
      for (int x = 0; x < n; ++x) {
        int t = act[c][x];
        if (!reached[t]) {
          reached[t] = true;
          is_tree[c][x] = true;
          bfs.push(t);
        }
      }
    }
  }

  std::vector<std::vector<int>> inv_act(index, std::vector<int>(n, -1));
  for (int c = 0; c < index; ++c)
    for (int x = 0; x < n; ++x) inv_act[act[c][x]][x] = c;

  Presentation pres;
  std::vector<std::vector<int>> schreier(index, std::vector<int>(n, -1));
  for (int c = 0; c < index; ++c)
    for (int x = 0; x < n; ++x) {
      if (is_tree[c][x]) continue;
      schreier[c][x] = static_cast<int>(pres.generators.size());
      pres.generators.push_back(g.name(x) + "@" + std::to_string(c));
      Word w = transversal[c];
      w.append(Letter{x, 1});
      w.append(transversal[act[c][x]].inverse());
      pres.generator_words.push_back(free_reduce(w));
    }

  auto rewrite_from = [&](int start, const Word& relator) {
    Word out;
    int cur = start;
    for (Letter l : relator.letters) {
      if (l.sign > 0) {
        if (schreier[cur][l.vertex] >= 0)
          out.append(Letter{schreier[cur][l.vertex], 1});
        cur = act[cur][l.vertex];
      } else {
        int prev = inv_act[cur][l.vertex];
        if (schreier[prev][l.vertex] >= 0)
          out.append(Letter{schreier[prev][l.vertex], -1});
        cur = prev;
      }
    }
    return free_reduce(out);
  };

  for (int c = 0; c < index; ++c)
    for (auto [u, w] : g.edges()) {
      Word relator;
      relator.append(Letter{u, 1});
      relator.append(Letter{w, 1});
      relator.append(Letter{u, -1});
      relator.append(Letter{w, -1});
      Word rewritten = rewrite_from(c, relator);
      if (!rewritten.empty()) pres.relators.push_back(std::move(rewritten));
    }
  return pres;
}

// ---------------------------------------------------------------------------
// Recognition

namespace {

Word substitute(const Word& w, int gen, const Word& replacement) {
  Word out;
  for (Letter l : w.letters) {
    if (l.vertex != gen) {
      out.append(l);
    } else if (l.sign > 0) {
      out.append(replacement);
    } else {
      out.append(replacement.inverse());
    }
  }
  return free_reduce(out);
}

// One Nielsen move: pass the generating set from x to lambda*x (or x*lambda),
// i.e. substitute x -> lambda^-1 x (or x lambda^-1) throughout.
struct NielsenMove {
  int gen = -1;
  Letter lambda;
  bool left = true;
  long long gain = 0;  // predicted length change, negative = shorter
};

long long total_length(const std::vector<Word>& relators) {
  long long n = 0;
  for (const auto& r : relators) n += r.length();
  return n;
}

// Predict the length change from first-order cancellations at the insertion
// points. Cascading cancellations only help further, so a non-positive
// prediction never grows the presentation by more than it claims.
std::vector<NielsenMove> nielsen_moves_up_to_zero_gain(
    const std::vector<Word>& relators, int gen_count) {
  std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, long long> adj;
  std::vector<long long> occurrences(gen_count, 0);
  for (const auto& r : relators) {
    int len = r.length();
    for (int i = 0; i < len; ++i) {
      Letter cur = r.letters[i];
      Letter next = r.letters[(i + 1) % len];  // relators are cyclic words
      ++occurrences[cur.vertex];
      if (len > 1)
        ++adj[{{cur.vertex, cur.sign}, {next.vertex, next.sign}}];
    }
  }
  auto count = [&](Letter a, Letter b) -> long long {
    auto it = adj.find({{a.vertex, a.sign}, {b.vertex, b.sign}});
    return it == adj.end() ? 0 : it->second;
  };

  std::vector<NielsenMove> moves;
  for (int x = 0; x < gen_count; ++x) {
    if (occurrences[x] == 0) continue;
    for (int lv = 0; lv < gen_count; ++lv) {
      if (lv == x) continue;
      for (int sign : {1, -1}) {
        Letter lam{lv, sign};
        long long saved_left =
            count(lam, {x, 1}) + count({x, -1}, lam.inverse());
        if (saved_left > 0 && occurrences[x] - 2 * saved_left <= 0)
          moves.push_back({x, lam, true, occurrences[x] - 2 * saved_left});
        long long saved_right =
            count({x, 1}, lam) + count(lam.inverse(), {x, -1});
        if (saved_right > 0 && occurrences[x] - 2 * saved_right <= 0)
          moves.push_back({x, lam, false, occurrences[x] - 2 * saved_right});
      }
    }
  }
  std::stable_sort(moves.begin(), moves.end(),
                   [](const NielsenMove& a, const NielsenMove& b) {
                     return a.gain < b.gain;
                   });
  return moves;
}

// Factor a cyclically reduced relator as alpha beta alpha^-1 beta^-1.
struct CommutatorSplit {
  Word alpha, beta;
};

std::optional<CommutatorSplit> commutator_of_words(const Word& r) {
  int len = r.length();
  if (len < 4 || len % 2 != 0) return std::nullopt;
  int k = len / 2;
  for (int rot = 0; rot < len; ++rot) {
    auto at = [&](int i) { return r.letters[(rot + i) % len]; };
    for (int m = 1; m < k; ++m) {
      int n = k - m;
      bool ok = true;
      for (int i = 0; i < m && ok; ++i)
        if (!(at(m + n + i) == at(m - 1 - i).inverse())) ok = false;
      for (int i = 0; i < n && ok; ++i)
        if (!(at(2 * m + n + i) == at(m + n - 1 - i).inverse())) ok = false;
      if (ok) {
        CommutatorSplit split;
        for (int i = 0; i < m; ++i) split.alpha.append(at(i));
        for (int i = 0; i < n; ++i) split.beta.append(at(m + i));
        return split;
      }
    }
  }
  return std::nullopt;
}

void apply_nielsen(std::vector<Word>& relators, const NielsenMove& move) {
  Word replacement;
  if (move.left) {
    replacement.append(move.lambda.inverse());
    replacement.append(Letter{move.gen, 1});
  } else {
    replacement.append(Letter{move.gen, 1});
    replacement.append(move.lambda.inverse());
  }
  std::vector<Word> next;
  for (const auto& r : relators) {
    Word s = cyclic_reduce(substitute(r, move.gen, replacement));
    if (!s.empty()) next.push_back(std::move(s));
  }
  relators = std::move(next);
}

}  // namespace

namespace {

// The simplification state: shallow Tietze moves only — eliminating a
// generator that occurs once in some relator, a Nielsen basis change that
// strictly shortens the presentation, and introducing a name for a word
// whose commutator shape blocks further elimination. Each move is bounded
// and deterministic.
struct RaagSimplifier {
  std::vector<std::string> names;
  std::vector<bool> alive;
  std::vector<Word> relators;
  int introductions = 0;
  int introduction_budget = 0;
  int name_counter = 0;
  std::string failure;

  static constexpr int kLengthCap = 4096;

  bool substitute_everywhere(int gen, const Word& replacement) {
    alive[gen] = false;
    std::vector<Word> next;
    for (const auto& rel : relators) {
      Word s = cyclic_reduce(substitute(rel, gen, replacement));
      if (s.length() > kLengthCap) {
        failure = "relator growth exceeded the simplification cap";
        return false;
      }
      if (!s.empty()) next.push_back(std::move(s));
    }
    relators = std::move(next);
    dedupe();
    return true;
  }

  void dedupe() {
    std::vector<Word> unique;
    for (auto& r : relators)
      if (std::find(unique.begin(), unique.end(), r) == unique.end())
        unique.push_back(std::move(r));
    relators = std::move(unique);
  }

  // Eliminate a generator occurring exactly once in the shortest such relator.
  bool try_eliminate() {
    int best_rel = -1, best_gen = -1;
    for (size_t ri = 0; ri < relators.size(); ++ri) {
      if (best_rel >= 0 && relators[ri].length() >= relators[best_rel].length())
        continue;
      std::map<int, int> occurrences;
      for (Letter l : relators[ri].letters) ++occurrences[l.vertex];
      for (Letter l : relators[ri].letters)
        if (occurrences[l.vertex] == 1) {
          best_rel = static_cast<int>(ri);
          best_gen = l.vertex;
          break;
        }
    }
    if (best_rel < 0) return false;

    Word r = relators[best_rel];
    int pos = 0;
    while (r.letters[pos].vertex != best_gen) ++pos;
    std::rotate(r.letters.begin(), r.letters.begin() + pos, r.letters.end());
    Word rest(std::vector<Letter>(r.letters.begin() + 1, r.letters.end()));
    Word replacement = r.letters[0].sign > 0 ? rest.inverse() : std::move(rest);
    relators.erase(relators.begin() + best_rel);
    substitute_everywhere(best_gen, replacement);
    return true;
  }

  bool try_nielsen() {
    auto moves =
        nielsen_moves_up_to_zero_gain(relators, static_cast<int>(names.size()));
    for (const auto& move : moves) {
      if (move.gain >= 0) break;  // sorted; only strict improvements applied
      if (!alive[move.gen]) continue;
      apply_nielsen(relators, move);
      dedupe();
      return true;
    }
    return false;
  }



  // Rewrite one relator by a shorter one: when more than half of (a rotation
  // of) r or its inverse occurs inside s, that piece equals the inverse of
  // the remainder of r, and substituting it strictly shortens s.
  bool try_reduce() {
    for (size_t si = 0; si < relators.size(); ++si) {
      const Word& s = relators[si];
      for (size_t ri = 0; ri < relators.size(); ++ri) {
        if (ri == si) continue;
        const Word& base = relators[ri];
        int L = base.length();
        if (L < 2 || L > s.length()) continue;
        for (const Word& r : {base, base.inverse()}) {
          for (int rot = 0; rot < L; ++rot) {
            auto rl = [&](int i) { return r.letters[(rot + i) % L]; };
            for (int t = L - 1; 2 * t > L; --t) {
              // search the piece rl(0..t) in s as a cyclic word
              int slen = s.length();
              if (t > slen) continue;
              for (int pos = 0; pos < slen; ++pos) {
                bool match = true;
                for (int i = 0; i < t && match; ++i)
                  if (!(s.letters[(pos + i) % slen] == rl(i))) match = false;
                if (!match) continue;
                Word rest;  // the remainder of r after the matched piece
                for (int i = t; i < L; ++i) rest.append(rl(i));
                Word rewritten = rest.inverse();
                for (int i = t; i < slen; ++i)
                  rewritten.append(s.letters[(pos + i) % slen]);
                rewritten = cyclic_reduce(rewritten);
                if (rewritten.empty())
                  relators.erase(relators.begin() + si);
                else
                  relators[si] = std::move(rewritten);
                dedupe();
                return true;
              }
            }
          }
        }
      }
    }
    return false;
  }

  // A relator of the shape [alpha, beta] with a multi-letter side blocks
  // elimination; naming that side as a fresh generator (and solving out one
  // of its letters) re-aligns the generating set with the relator. Among all
  // such introductions the one leaving the shortest presentation is taken,
  // and only if it strictly shortens the presentation.
  bool try_extract() {
    if (introductions >= introduction_budget) return false;

    struct Candidate {
      Word replacement;  // for the solved-out generator, in terms of `fresh`
      int gen = -1;
      long long result_length = 0;
    };
    std::optional<Candidate> best;
    long long before = total_length(relators);
    int fresh = static_cast<int>(names.size());

    for (const auto& r : relators) {
      auto split = commutator_of_words(r);
      if (!split) continue;
      for (const Word* side : {&split->beta, &split->alpha}) {
        if (side->length() < 2) continue;
        std::map<int, int> occurrences;
        for (Letter l : side->letters) ++occurrences[l.vertex];
        for (int pos = 0; pos < side->length(); ++pos) {
          Letter y = side->letters[pos];
          if (occurrences[y.vertex] != 1) continue;
          Word u(std::vector<Letter>(side->letters.begin(),
                                     side->letters.begin() + pos));
          Word v(std::vector<Letter>(side->letters.begin() + pos + 1,
                                     side->letters.end()));
          Word replacement;
          if (y.sign > 0) {
            replacement.append(u.inverse());
            replacement.append(Letter{fresh, 1});
            replacement.append(v.inverse());
          } else {
            replacement.append(v);
            replacement.append(Letter{fresh, -1});
            replacement.append(u);
          }
          replacement = free_reduce(replacement);

          long long length = 0;
          for (const auto& rel : relators)
            length += cyclic_reduce(substitute(rel, y.vertex, replacement)).length();
          if (!best || length < best->result_length)
            best = Candidate{replacement, y.vertex, length};
        }
      }
    }
    if (!best || best->result_length >= before) return false;

    std::string fresh_name;
    do {
      fresh_name = "z" + std::to_string(name_counter++);
    } while (std::find(names.begin(), names.end(), fresh_name) != names.end());
    names.push_back(fresh_name);
    alive.push_back(true);
    ++introductions;
    substitute_everywhere(best->gen, best->replacement);
    return true;
  }

  void run() {
    const bool trace = std::getenv("RAAG_TRACE") != nullptr;
    while (failure.empty()) {
      if (try_eliminate()) {
        if (trace) std::cerr << "eliminate -> " << relators.size() << " relators, len " << total_length(relators) << "\n";
        continue;
      }
      if (try_reduce()) {
        if (trace) std::cerr << "reduce -> len " << total_length(relators) << "\n";
        continue;
      }
      if (try_extract()) {
        if (trace) std::cerr << "extract -> gens " << names.size() << " len " << total_length(relators) << "\n";
        continue;
      }
      if (try_nielsen()) {
        if (trace) std::cerr << "nielsen -> len " << total_length(relators) << "\n";
        continue;
      }
      break;
    }
    if (trace) {
      std::cerr << "final state:\n";
      for (const auto& r : relators) {
        for (Letter l : r.letters)
          std::cerr << names[l.vertex] << (l.sign < 0 ? "' " : " ");
        std::cerr << "\n";
      }
    }
  }
};

}  // namespace

std::variant<SimpleGraph, NotRecognized> recognize_raag(const Presentation& p) {
  RaagSimplifier state;
  state.names = p.generators;
  state.alive.assign(state.names.size(), true);
  state.introduction_budget = 2 * static_cast<int>(p.generators.size()) + 16;
  for (const auto& r : p.relators) {
    Word reduced = cyclic_reduce(r);
    if (!reduced.empty()) state.relators.push_back(std::move(reduced));
  }
  state.dedupe();
  state.run();
  if (!state.failure.empty()) return NotRecognized{state.failure};

  std::vector<std::string>& names = state.names;
  std::vector<bool>& alive = state.alive;
  std::vector<Word>& relators = state.relators;

  // Every remaining relator must read as a commutator of two generators.
  std::set<std::pair<int, int>> edges;
  for (const auto& r : relators) {
    if (r.length() != 4)
      return NotRecognized{"non-commutator relator of length " +
                           std::to_string(r.length())};
    Letter a = r.letters[0], b = r.letters[1], c = r.letters[2], d = r.letters[3];
    if (!(c == a.inverse()) || !(d == b.inverse()) || a.vertex == b.vertex)
      return NotRecognized{"relator is not a commutator of generator pairs"};
    edges.insert({std::min(a.vertex, b.vertex), std::max(a.vertex, b.vertex)});
  }

  std::vector<std::string> vertices;
  std::vector<int> rename(names.size(), -1);
  for (size_t i = 0; i < names.size(); ++i)
    if (alive[i]) {
      rename[i] = static_cast<int>(vertices.size());
      vertices.push_back(names[i]);
    }
  std::vector<std::pair<std::string, std::string>> edge_names;
  for (auto [a, b] : edges) {
    if (!alive[a] || !alive[b])
      return NotRecognized{"commutator references an eliminated generator"};
    edge_names.emplace_back(vertices[rename[a]], vertices[rename[b]]);
  }
  return SimpleGraph(vertices, edge_names);
}

// ---------------------------------------------------------------------------
// Kernel structures

GroupExpr kernel_structure_free_product(const GroupExpr& n1, const GroupExpr& n2,
                                        long long a1, long long a2) {
  if (a1 < 1 || a2 < 1)
    throw std::invalid_argument("quotient orders must be positive");
  std::vector<GroupExpr> parts;
  for (long long i = 0; i < a2; ++i) parts.push_back(n1);
  for (long long i = 0; i < a1; ++i) parts.push_back(n2);
  parts.push_back(GroupExpr::free_group(checked_mul(a1 - 1, a2 - 1)));
  return canonical(GroupExpr::free_product(std::move(parts)));
}

std::variant<GroupExpr, NotCograph> kernel_structure_cograph(
    const SimpleGraph& g, const std::vector<long long>& residues) {
  if (static_cast<int>(residues.size()) != g.size())
    throw std::invalid_argument("one residue per vertex required");
  quotient_index(residues);  // validates positivity, checks overflow

  auto decomposition = cograph_decompose(g);
  if (std::holds_alternative<P4Witness>(decomposition))
    return NotCograph{std::get<P4Witness>(decomposition)};

  struct Rec {
    const std::vector<long long>& residues;
    std::pair<GroupExpr, long long> operator()(const Cotree& t) const {
      if (t.op == Cotree::Op::Leaf)
        return {GroupExpr::free_abelian(1), residues[t.vertex]};
      if (t.op == Cotree::Op::Join) {
        std::vector<GroupExpr> parts;
        long long index = 1;
        for (const auto& c : t.children) {
          auto [e, i] = (*this)(c);
          parts.push_back(std::move(e));
          index = checked_mul(index, i);
        }
        return {canonical(GroupExpr::direct_product(std::move(parts))), index};
      }
      auto [expr, index] = (*this)(t.children[0]);
      for (size_t k = 1; k < t.children.size(); ++k) {
        auto [e2, i2] = (*this)(t.children[k]);
        expr = kernel_structure_free_product(expr, e2, index, i2);
        index = checked_mul(index, i2);
      }
      return {std::move(expr), index};
    }
  };

  return Rec{residues}(std::get<Cotree>(decomposition)).first;
}

// ---------------------------------------------------------------------------
// Characteristic kernels

CharacteristicReport is_characteristic_kernel(
    const SimpleGraph& g, const std::vector<long long>& residues) {
  if (static_cast<int>(residues.size()) != g.size())
    throw std::invalid_argument("one residue per vertex required");
  for (long long r : residues)
    if (r < 1) throw std::invalid_argument("residues must be positive");

  for (const auto& gen : ls_generators(g)) {
    IntMatrix m = abelianization_matrix(g, endo_of_ls(g, gen));
    // The image lattice is spanned by r_v e_v; invariance needs
    // r_w | r_v M[w][v] for all pairs.
    for (int v = 0; v < g.size(); ++v)
      for (int w = 0; w < g.size(); ++w)
        if (positive_mod(residues[v] * m.at(w, v), residues[w]) != 0)
          return {false, ls_to_string(g, gen)};
  }
  return {true, ""};
}

// ---------------------------------------------------------------------------
// Embedding targets

VirtualEmbedTarget virtual_embed_target(const SimpleGraph& g, int v, long long d,
                                        long long prime_bound) {
  g.check_vertex(v);
  if (d < 1) throw std::invalid_argument("d must be positive");
  VirtualEmbedTarget out;
  out.graph = amalgam_graph(g, star(g, v), static_cast<int>(d));
  for (long long p = 2;; ++p) {
    if (p > prime_bound)
      throw std::invalid_argument("prime search bound exceeded");
    if (is_prime(p) && p % d == 1 % d) {
      out.prime = p;
      break;
    }
  }
  return out;
}

namespace {

struct FactorTable {
  std::vector<int> ranks;          // distinct i, ascending
  std::vector<long long> counts;   // e_i
  std::vector<long long> residues; // r_i
};

FactorTable tabulate(const std::vector<std::pair<int, long long>>& factors) {
  FactorTable t;
  std::map<int, std::pair<long long, long long>> by_rank;  // i -> (e_i, r_i)
  for (auto [i, r] : factors) {
    if (i < 1) throw std::invalid_argument("factor rank must be >= 1");
    if (r < 1) throw std::invalid_argument("factor residue must be >= 1");
    auto it = by_rank.find(i);
    if (it == by_rank.end()) {
      by_rank[i] = {1, r};
    } else {
      if (it->second.second != r)
        throw std::invalid_argument(
            "all factors of rank " + std::to_string(i) +
            " must share one residue");
      ++it->second.first;
    }
  }
  for (auto& [i, er] : by_rank) {
    t.ranks.push_back(i);
    t.counts.push_back(er.first);
    t.residues.push_back(er.second);
  }
  return t;
}

long long checked_pow(long long base, long long exp) {
  long long out = 1;
  for (long long i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

}  // namespace

EmbedTarget embed_target_fpa(const std::vector<std::pair<int, long long>>& factors) {
  if (factors.empty()) throw std::invalid_argument("need at least one factor");
  FactorTable t = tabulate(factors);

  long long E = 0, R = 1;
  for (size_t k = 0; k < t.ranks.size(); ++k) {
    E += t.counts[k];
    R = checked_mul(R, checked_pow(t.residues[k],
                                   checked_mul(t.ranks[k], t.counts[k])));
  }

  EmbedTarget out;
  std::vector<GroupExpr> source_parts;
  for (auto [i, r] : factors) {
    (void)r;
    source_parts.push_back(GroupExpr::free_abelian(i));
  }
  out.source = canonical(GroupExpr::free_product(std::move(source_parts)));

  std::vector<GroupExpr> target_parts;
  long long abelian_total = 0;
  for (size_t k = 0; k < t.ranks.size(); ++k) {
    long long c = t.counts[k] * R / checked_pow(t.residues[k], t.ranks[k]);
    abelian_total += c;
    for (long long j = 0; j < c; ++j)
      target_parts.push_back(GroupExpr::free_abelian(t.ranks[k]));
  }
  long long f = (E - 1) * R - abelian_total + 1;
  target_parts.push_back(GroupExpr::free_group(f));
  out.target = canonical(GroupExpr::free_product(std::move(target_parts)));

  bool e1_positive = !t.ranks.empty() && t.ranks[0] == 1;
  long long r1 = e1_positive ? t.residues[0] : 0;

  out.conditions.characteristic = true;
  if (e1_positive)
    for (size_t k = 0; k < t.ranks.size(); ++k)
      if (r1 % t.residues[k] != 0) out.conditions.characteristic = false;
  out.conditions.notes.push_back(
      out.conditions.characteristic
          ? "kernel is characteristic"
          : "kernel not characteristic: some r_i does not divide r_1");

  if (e1_positive) {
    out.conditions.congruence = std::gcd(E - 1, r1) == 1;
    out.conditions.notes.push_back(
        "gcd(E-1, r_1) = " + std::to_string(std::gcd(E - 1, r1)) +
        (out.conditions.congruence ? " (coprime)" : " (obstructed)"));
  } else {
    out.conditions.congruence = true;
    for (size_t k = 0; k < t.ranks.size(); ++k) {
      long long gc = t.residues[k];
      for (size_t j = 0; j < t.ranks.size(); ++j)
        gc = std::gcd(gc, t.counts[j] - (j == k ? 1 : 0));
      if (gc != 1) {
        out.conditions.congruence = false;
        out.conditions.notes.push_back(
            "congruence obstructed at rank " + std::to_string(t.ranks[k]));
      }
    }
    if (out.conditions.congruence)
      out.conditions.notes.push_back("shift congruences solvable");
  }
  return out;
}

EmbedTarget embed_target_dpf(const std::vector<std::pair<int, long long>>& factors) {
  if (factors.empty()) throw std::invalid_argument("need at least one factor");
  for (auto [i, r] : factors) {
    (void)r;
    if (i < 2)
      throw std::invalid_argument("direct-product factors must have rank >= 2");
  }
  FactorTable t = tabulate(factors);

  EmbedTarget out;
  std::vector<GroupExpr> source_parts, target_parts;
  for (size_t k = 0; k < t.ranks.size(); ++k) {
    long long i = t.ranks[k], r = t.residues[k];
    long long m = checked_mul(checked_pow(r, i), i - 1) + 1;
    for (long long j = 0; j < t.counts[k]; ++j) {
      source_parts.push_back(GroupExpr::free_group(i));
      target_parts.push_back(GroupExpr::free_group(m));
    }
    if (std::gcd(i - 1, r) != 1) {
      out.conditions.congruence = false;
      out.conditions.notes.push_back("gcd(i-1, r_i) > 1 at rank " +
                                     std::to_string(i));
    }
  }
  if (out.conditions.congruence)
    out.conditions.notes.push_back("gcd(i-1, r_i) = 1 for every factor");
  out.source = canonical(GroupExpr::direct_product(std::move(source_parts)));
  out.target = canonical(GroupExpr::direct_product(std::move(target_parts)));
  return out;
}

}  // namespace raag

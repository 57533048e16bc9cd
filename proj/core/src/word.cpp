#include "raag/word.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace raag {

namespace {

// Letter order: a < a^-1 < b < b^-1 < ...
inline int letter_rank(Letter l) { return 2 * l.vertex + (l.sign < 0 ? 1 : 0); }

inline bool letter_less(Letter a, Letter b) {
  return letter_rank(a) < letter_rank(b);
}

void check_word(const SimpleGraph& g, const Word& w) {
  for (Letter l : w.letters) {
    g.check_vertex(l.vertex);
    if (l.sign != 1 && l.sign != -1)
      throw std::invalid_argument("letter sign must be +1 or -1");
  }
}

// Remove one cancelling pair x^e ... x^-e whose in-between letters all
// commute with x. Scanning pairs without same-vertex letters in between is
// enough: any cancellable pair contains such a pair.
bool cancel_once(const SimpleGraph& g, std::vector<Letter>& ls) {
  int n = static_cast<int>(ls.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (ls[j].vertex == ls[i].vertex) {
        if (ls[j].sign != ls[i].sign) {
          ls.erase(ls.begin() + j);
          ls.erase(ls.begin() + i);
          return true;
        }
        break;
      }
      if (!g.adjacent(ls[i].vertex, ls[j].vertex)) break;
    }
  }
  return false;
}

}  // namespace

Word Word::inverse() const {
  Word w;
  w.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    w.letters.push_back(it->inverse());
  return w;
}

Word& Word::append(const Word& w) {
  letters.insert(letters.end(), w.letters.begin(), w.letters.end());
  return *this;
}

Word& Word::append(Letter l) {
  letters.push_back(l);
  return *this;
}

bool Word::operator<(const Word& other) const {
  if (letters.size() != other.letters.size())
    return letters.size() < other.letters.size();
  for (size_t i = 0; i < letters.size(); ++i)
    if (letters[i] != other.letters[i])
      return letter_less(letters[i], other.letters[i]);
  return false;
}

Word word_of(std::initializer_list<Letter> ls) { return Word(std::vector<Letter>(ls)); }

Word normal_form(const SimpleGraph& g, const Word& w) {
  check_word(g, w);
  std::vector<Letter> ls = w.letters;
  while (cancel_once(g, ls)) {
  }

  // Greedy lexicographic arrangement: repeatedly pull the least letter that
  // commutes past everything before it. (Descent-only bubble sort can get
  // stuck above the true minimum, so extraction is done globally.)
  std::vector<Letter> out;
  out.reserve(ls.size());
  while (!ls.empty()) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(ls.size()); ++i) {
      bool movable = true;
      for (int j = 0; j < i && movable; ++j)
        if (!g.adjacent(ls[j].vertex, ls[i].vertex)) movable = false;
      if (movable && (best < 0 || letter_less(ls[i], ls[best]))) best = i;
    }
    out.push_back(ls[best]);
    ls.erase(ls.begin() + best);
  }
  return Word(std::move(out));
}

bool words_equal(const SimpleGraph& g, const Word& u, const Word& v) {
  return normal_form(g, u) == normal_form(g, v);
}

AbelianVector abelianize(const SimpleGraph& g, const Word& w) {
  check_word(g, w);
  AbelianVector ab(g.size(), 0);
  for (Letter l : w.letters) ab[l.vertex] += l.sign;
  return ab;
}

namespace {

Word word_power(const Word& u, int n) {
  Word out;
  for (int i = 0; i < n; ++i) out.append(u);
  return out;
}

void root_search(const SimpleGraph& g, const Word& target, int n, int radius,
                 const AbelianVector& goal, Word& candidate, AbelianVector& acc,
                 std::vector<Word>& found) {
  // Prune: every further letter moves one coordinate by 1.
  long long dist = 0;
  for (int v = 0; v < g.size(); ++v) dist += std::llabs(goal[v] - acc[v]);
  int rest = radius - candidate.length();
  if (dist > rest) return;

  if (dist == 0 && normal_form(g, candidate) == candidate &&
      normal_form(g, word_power(candidate, n)) == target)
    found.push_back(candidate);

  if (rest == 0) return;
  for (int v = 0; v < g.size(); ++v)
    for (int sign : {1, -1}) {
      candidate.append(Letter{v, sign});
      acc[v] += sign;
      root_search(g, target, n, radius, goal, candidate, acc, found);
      acc[v] -= sign;
      candidate.letters.pop_back();
    }
}

}  // namespace

std::vector<Word> nth_roots(const SimpleGraph& g, const Word& w, int n,
                            int search_radius, long long budget) {
  if (n < 1) throw std::invalid_argument("nth_roots: n must be >= 1");
  if (search_radius < 0) throw std::invalid_argument("nth_roots: negative radius");
  long long space = 1;
  for (int i = 0; i < search_radius; ++i) {
    space *= 2 * std::max(1, g.size());
    if (space > budget)
      throw std::invalid_argument("nth_roots: search radius too large");
  }

  Word target = normal_form(g, w);
  AbelianVector goal = abelianize(g, target);
  for (long long c : goal)
    if (c % n != 0) return {};  // no root can exist
  for (auto& c : goal) c /= n;

  std::vector<Word> found;
  Word candidate;
  AbelianVector acc(g.size(), 0);
  root_search(g, target, n, search_radius, goal, candidate, acc, found);
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

Word parse_word(const SimpleGraph& g, const std::string& text) {
  Word w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    int sign = 1;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      sign = -1;
      tok = tok.substr(0, tok.size() - 3);
    }
    w.append(Letter{g.index_of(tok), sign});
  }
  return w;
}

std::string word_to_string(const SimpleGraph& g, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (Letter l : w.letters) {
    if (!out.empty()) out += ' ';
    out += g.name(l.vertex);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

}  // namespace raag

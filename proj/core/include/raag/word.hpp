#pragma once

#include <string>
#include <vector>

#include "raag/graph.hpp"

namespace raag {

/// A signed generator. `vertex` indexes the ambient graph (or, for
/// presentations, a generator list); `sign` is +1 or -1.
struct Letter {
  int vertex = 0;
  int sign = 1;

  Letter inverse() const { return {vertex, -sign}; }
  bool operator==(const Letter&) const = default;
};

/// A group element of A_Gamma as a sequence of signed generators. Words with
/// the same normal form are equal in the group.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  int length() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
  Word inverse() const;
  Word& append(const Word& w);
  Word& append(Letter l);

  bool operator==(const Word&) const = default;
  bool operator<(const Word& other) const;  // length, then letter order
};

Word word_of(std::initializer_list<Letter> ls);

/// Exponent sums per vertex; additive under concatenation.
using AbelianVector = std::vector<long long>;

// ---------------------------------------------------------------------------

/// Canonical representative of w in A_Gamma: fully cancelled (no pair x,
/// x^-1 separated only by letters commuting with x) and lexicographically
/// least among commutation-equivalent words. The letter order is vertex input
/// order with v^-1 directly after v. Idempotent.
Word normal_form(const SimpleGraph& g, const Word& w);

bool words_equal(const SimpleGraph& g, const Word& u, const Word& v);

AbelianVector abelianize(const SimpleGraph& g, const Word& w);

inline constexpr long long kDefaultRootSearchBudget = 1 << 22;

/// All words u with |u| <= search_radius and u^n = w, as normal forms. The
/// unique root property guarantees at most one entry. The exhaustive search
/// is pruned by abelianization; throws when (2|V|)^radius exceeds the budget.
std::vector<Word> nth_roots(const SimpleGraph& g, const Word& w, int n,
                            int search_radius,
                            long long budget = kDefaultRootSearchBudget);

// ---------------------------------------------------------------------------
// Text form: whitespace-separated tokens `v` and `v^-1`.

Word parse_word(const SimpleGraph& g, const std::string& text);
std::string word_to_string(const SimpleGraph& g, const Word& w);

}  // namespace raag

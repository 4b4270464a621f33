#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cantorval/errors.hpp"

namespace cantorval {

// Two-letter alphabet with the total order a < b.
enum class Letter : std::uint8_t { A = 0, B = 1 };

Letter letter_from_char(char c);
char letter_to_char(Letter l);
inline Letter other(Letter l) { return l == Letter::A ? Letter::B : Letter::A; }
inline int index_of(Letter l) { return static_cast<int>(l); }

using Word = std::vector<Letter>;

Word word_from_string(std::string_view text);
std::string word_to_string(const Word& w);

// A binary substitution: both images nonempty.
struct Substitution {
  Word image_a;
  Word image_b;

  const Word& image(Letter l) const {
    return l == Letter::A ? image_a : image_b;
  }
};

// Accepts "(<word>,<word>)" or "a -> <word> ; b -> <word>", whitespace
// insensitive, words over {a,b}.
Substitution parse_substitution(std::string_view text);
std::string to_string(const Substitution& s);

// M[i][j] = number of occurrences of letter i in s(j).
struct IntMatrix2 {
  std::int64_t m11 = 0, m12 = 0, m21 = 0, m22 = 0;

  std::int64_t at(int i, int j) const;
  std::int64_t trace() const { return m11 + m22; }
  std::int64_t det() const { return m11 * m22 - m12 * m21; }

  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

IntMatrix2 substitution_matrix(const Substitution& s);

// Some power M^k, k <= 4, has all entries positive.
bool is_primitive(const IntMatrix2& m);
bool is_unimodular(const IntMatrix2& m);

std::pair<std::int64_t, std::int64_t> abelianize(const Word& w);

constexpr std::int64_t kDefaultLengthCap = 10'000'000;

// rho^n(w); ResourceLimit if the output would exceed length_cap letters.
Word iterate(const Substitution& s, const Word& w, int n,
             std::int64_t length_cap = kDefaultLengthCap);

// Composition s^k as a substitution.
Substitution substitution_power(const Substitution& s, int k,
                                std::int64_t length_cap = kDefaultLengthCap);

// Legal seed pair left|right together with the minimal period k <= 4 such
// that rho^k(left) ends in left and rho^k(right) starts with right.  The
// two-letter word left*right must occur in some rho^n(a), n <= 8.
struct SeedCycle {
  Letter left = Letter::A;
  Letter right = Letter::A;
  int period = 1;
};

SeedCycle seed_cycle(const Substitution& s);

}  // namespace cantorval

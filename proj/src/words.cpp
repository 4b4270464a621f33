#include "cantorval/words.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>

namespace cantorval {

Letter letter_from_char(char c) {
  if (c == 'a') return Letter::A;
  if (c == 'b') return Letter::B;
  fail(ErrorCode::BadLetter,
       std::string("letter outside {a,b}: '") + c + "'");
}

char letter_to_char(Letter l) { return l == Letter::A ? 'a' : 'b'; }

Word word_from_string(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) w.push_back(letter_from_char(c));
  return w;
}

std::string word_to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter l : w) s.push_back(letter_to_char(l));
  return s;
}

namespace {

std::string strip_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

Word parse_image(std::string_view text) {
  if (text.empty()) fail(ErrorCode::EmptyImage, "substitution image is empty");
  return word_from_string(text);
}

}  // namespace

Substitution parse_substitution(std::string_view text) {
  const std::string t = strip_whitespace(text);
  if (t.empty()) fail(ErrorCode::SyntaxError, "empty substitution text");

  if (t.front() == '(') {
    if (t.back() != ')')
      fail(ErrorCode::SyntaxError, "missing ')' in tuple form");
    const std::string body = t.substr(1, t.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string::npos)
      fail(ErrorCode::SyntaxError, "missing ',' in tuple form");
    if (body.find(',', comma + 1) != std::string::npos)
      fail(ErrorCode::SyntaxError, "more than one ',' in tuple form");
    return Substitution{parse_image(body.substr(0, comma)),
                        parse_image(body.substr(comma + 1))};
  }

  // a-><word>;b-><word>
  const std::string arrow_a = "a->";
  const std::string arrow_b = "b->";
  if (t.rfind(arrow_a, 0) != 0)
    fail(ErrorCode::SyntaxError, "expected 'a ->' or tuple form");
  const auto semi = t.find(';');
  if (semi == std::string::npos)
    fail(ErrorCode::SyntaxError, "expected ';' between the two rules");
  const std::string rest = t.substr(semi + 1);
  if (rest.rfind(arrow_b, 0) != 0)
    fail(ErrorCode::SyntaxError, "expected 'b ->' after ';'");
  return Substitution{parse_image(t.substr(arrow_a.size(), semi - arrow_a.size())),
                      parse_image(rest.substr(arrow_b.size()))};
}

std::string to_string(const Substitution& s) {
  return "(" + word_to_string(s.image_a) + "," + word_to_string(s.image_b) + ")";
}

std::int64_t IntMatrix2::at(int i, int j) const {
  if (i == 0) return j == 0 ? m11 : m12;
  return j == 0 ? m21 : m22;
}

IntMatrix2 substitution_matrix(const Substitution& s) {
  const auto [a_in_a, b_in_a] = abelianize(s.image_a);
  const auto [a_in_b, b_in_b] = abelianize(s.image_b);
  return IntMatrix2{a_in_a, a_in_b, b_in_a, b_in_b};
}

bool is_primitive(const IntMatrix2& m) {
  // Positivity of M^k for k = 1..4 (the Wielandt bound for 2x2 is 2; four
  // is a safe cap).  Exact big-integer powers, no overflow concerns.
  mpz_class p11 = m.m11, p12 = m.m12, p21 = m.m21, p22 = m.m22;
  for (int k = 1; k <= 4; ++k) {
    if (p11 > 0 && p12 > 0 && p21 > 0 && p22 > 0) return true;
    mpz_class q11 = p11 * m.m11 + p12 * m.m21;
    mpz_class q12 = p11 * m.m12 + p12 * m.m22;
    mpz_class q21 = p21 * m.m11 + p22 * m.m21;
    mpz_class q22 = p21 * m.m12 + p22 * m.m22;
    p11 = q11, p12 = q12, p21 = q21, p22 = q22;
  }
  return false;
}

bool is_unimodular(const IntMatrix2& m) {
  const std::int64_t d = m.det();
  return d == 1 || d == -1;
}

std::pair<std::int64_t, std::int64_t> abelianize(const Word& w) {
  std::int64_t na = 0, nb = 0;
  for (Letter l : w) (l == Letter::A ? na : nb)++;
  return {na, nb};
}

Word iterate(const Substitution& s, const Word& w, int n,
             std::int64_t length_cap) {
  Word cur = w;
  for (int step = 0; step < n; ++step) {
    const auto [na, nb] = abelianize(cur);
    const std::int64_t next_len =
        na * static_cast<std::int64_t>(s.image_a.size()) +
        nb * static_cast<std::int64_t>(s.image_b.size());
    if (next_len > length_cap)
      fail(ErrorCode::ResourceLimit,
           "iterate: word length " + std::to_string(next_len) +
               " exceeds cap " + std::to_string(length_cap));
    Word next;
    next.reserve(static_cast<std::size_t>(next_len));
    for (Letter l : cur) {
      const Word& img = s.image(l);
      next.insert(next.end(), img.begin(), img.end());
    }
    cur = std::move(next);
  }
  return cur;
}

Substitution substitution_power(const Substitution& s, int k,
                                std::int64_t length_cap) {
  return Substitution{iterate(s, s.image_a, k - 1, length_cap),
                      iterate(s, s.image_b, k - 1, length_cap)};
}

namespace {

bool contains_factor(const Word& w, Letter x, Letter y) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == x && w[i + 1] == y) return true;
  }
  return false;
}

bool is_legal_seed(const Substitution& s, Letter left, Letter right) {
  Word w{Letter::A};
  for (int n = 0; n <= 8; ++n) {
    if (contains_factor(w, left, right)) return true;
    w = iterate(s, w, 1);
  }
  return contains_factor(w, left, right);
}

}  // namespace

SeedCycle seed_cycle(const Substitution& s) {
  if (!is_primitive(substitution_matrix(s)))
    fail(ErrorCode::NotPrimitive, "seed search requires a primitive substitution");
  constexpr Letter letters[2] = {Letter::A, Letter::B};
  for (int k = 1; k <= 4; ++k) {
    const Word img_a = iterate(s, Word{Letter::A}, k);
    const Word img_b = iterate(s, Word{Letter::B}, k);
    auto image_k = [&](Letter l) -> const Word& {
      return l == Letter::A ? img_a : img_b;
    };
    for (Letter left : letters) {
      if (image_k(left).back() != left) continue;
      for (Letter right : letters) {
        if (image_k(right).front() != right) continue;
        if (!is_legal_seed(s, left, right)) continue;
        return SeedCycle{left, right, k};
      }
    }
  }
  fail(ErrorCode::NoLegalSeed,
       "no legal seed pair with period <= 4 found for " + to_string(s));
}

}  // namespace cantorval

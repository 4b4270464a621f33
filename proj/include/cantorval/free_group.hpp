#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cantorval/words.hpp"

namespace cantorval {

struct SignedLetter {
  Letter base;
  bool inverse = false;

  friend bool operator==(const SignedLetter&, const SignedLetter&) = default;
};

// Freely reduced word in the free group on {a, b}.
using GroupWord = std::vector<SignedLetter>;

GroupWord to_group_word(const Word& w);
GroupWord group_inverse(const GroupWord& w);
GroupWord free_reduce(const GroupWord& w);
GroupWord concat_reduced(const GroupWord& u, const GroupWord& v);
// "b^-1 a"; the empty word renders as "e".
std::string to_string(const GroupWord& w);
GroupWord group_word_from_string(std::string_view text);

// Elementary Nielsen transformations on a pair (u, v), recorded so the
// reduction can be replayed as a basis change.
enum class NielsenMove {
  URightV,      // u <- u v        alpha: a -> ab
  URightVInv,   // u <- u v^-1     alpha: a -> ab^-1
  ULeftV,       // u <- v u        alpha: a -> ba
  ULeftVInv,    // u <- v^-1 u     alpha: a -> b^-1 a
  VRightU,      // v <- v u        alpha: b -> ba
  VRightUInv,   // v <- v u^-1     alpha: b -> ba^-1
  VLeftU,       // v <- u v        alpha: b -> ab
  VLeftUInv,    // v <- u^-1 v     alpha: b -> a^-1 b
  Swap,         // (u, v) <- (v, u)
  InvertU,      // u <- u^-1
  InvertV,      // v <- v^-1
};

struct NielsenResult {
  GroupWord u;
  GroupWord v;
  std::vector<NielsenMove> moves;
};

// Applies strictly shortening product moves until none exists.  Total length
// never increases; a hard iteration cap guards termination.
NielsenResult nielsen_reduce(GroupWord u, GroupWord v);

// True iff the pair (s(a), s(b)) is a basis of the free group, i.e. the
// substitution extends to an automorphism.  Necessary pre-filter: |det M|=1.
bool is_invertible(const Substitution& s);

// Expresses a and b as group words in s(a), s(b); verifies the round trip.
std::pair<GroupWord, GroupWord> inverse(const Substitution& s);

enum class WindowKind { Interval, Cantorval, FiniteUnionOrUndetermined };

const char* window_kind_name(WindowKind kind);

struct Classification {
  WindowKind kind;
  bool invertible = false;
  bool interval_solution = false;
  double boundary_dimension = 0.0;
};

// Invertible windows are intervals; positive boundary dimension certifies a
// Cantorval; otherwise the finite-union middle case stays undetermined.
Classification classify(bool invertible, bool interval_solution,
                        double boundary_dimension, double dim_tolerance);

}  // namespace cantorval

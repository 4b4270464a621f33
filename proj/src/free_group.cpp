#include "cantorval/free_group.hpp"

#include <algorithm>
#include <array>

namespace cantorval {

GroupWord to_group_word(const Word& w) {
  GroupWord out;
  out.reserve(w.size());
  for (Letter l : w) out.push_back(SignedLetter{l, false});
  return out;
}

GroupWord group_inverse(const GroupWord& w) {
  GroupWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back(SignedLetter{it->base, !it->inverse});
  return out;
}

GroupWord free_reduce(const GroupWord& w) {
  GroupWord out;
  out.reserve(w.size());
  for (const SignedLetter& s : w) {
    if (!out.empty() && out.back().base == s.base &&
        out.back().inverse != s.inverse) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

GroupWord concat_reduced(const GroupWord& u, const GroupWord& v) {
  GroupWord out = u;
  for (const SignedLetter& s : v) {
    if (!out.empty() && out.back().base == s.base &&
        out.back().inverse != s.inverse) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

std::string to_string(const GroupWord& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += letter_to_char(w[i].base);
    if (w[i].inverse) out += "^-1";
  }
  return out;
}

GroupWord group_word_from_string(std::string_view text) {
  GroupWord out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ' ') continue;
    if (c == 'e') continue;
    SignedLetter s{letter_from_char(c), false};
    if (i + 4 <= text.size() && text.substr(i + 1, 3) == "^-1") {
      s.inverse = true;
      i += 3;
    }
    out.push_back(s);
  }
  return free_reduce(out);
}

namespace {

// Substitutes one letter by a word, per the alpha of each Nielsen move.
GroupWord apply_basis_change(NielsenMove move, const GroupWord& w) {
  auto subst = [&](Letter which, const GroupWord& image) {
    GroupWord out;
    for (const SignedLetter& s : w) {
      if (s.base != which) {
        out.push_back(s);
      } else if (!s.inverse) {
        out.insert(out.end(), image.begin(), image.end());
      } else {
        const GroupWord inv = group_inverse(image);
        out.insert(out.end(), inv.begin(), inv.end());
      }
    }
    return free_reduce(out);
  };
  const SignedLetter A{Letter::A, false}, Ai{Letter::A, true};
  const SignedLetter B{Letter::B, false}, Bi{Letter::B, true};
  switch (move) {
    case NielsenMove::URightV: return subst(Letter::A, {A, B});
    case NielsenMove::URightVInv: return subst(Letter::A, {A, Bi});
    case NielsenMove::ULeftV: return subst(Letter::A, {B, A});
    case NielsenMove::ULeftVInv: return subst(Letter::A, {Bi, A});
    case NielsenMove::VRightU: return subst(Letter::B, {B, A});
    case NielsenMove::VRightUInv: return subst(Letter::B, {B, Ai});
    case NielsenMove::VLeftU: return subst(Letter::B, {A, B});
    case NielsenMove::VLeftUInv: return subst(Letter::B, {Ai, B});
    case NielsenMove::Swap: {
      GroupWord out;
      for (const SignedLetter& s : w)
        out.push_back(SignedLetter{other(s.base), s.inverse});
      return out;
    }
    case NielsenMove::InvertU: {
      GroupWord image{Ai};
      return subst(Letter::A, image);
    }
    case NielsenMove::InvertV: {
      GroupWord image{Bi};
      return subst(Letter::B, image);
    }
  }
  fail(ErrorCode::Internal, "unknown Nielsen move");
}

}  // namespace

NielsenResult nielsen_reduce(GroupWord u, GroupWord v) {
  NielsenResult res;
  const std::size_t cap = 4 * (u.size() + v.size()) + 16;
  std::size_t steps = 0;
  for (;;) {
    if (++steps > cap)
      fail(ErrorCode::Internal, "Nielsen reduction exceeded its step cap");
    const std::size_t total = u.size() + v.size();
    struct Candidate {
      NielsenMove move;
      GroupWord word;
      bool replaces_u;
    };
    const GroupWord ui = group_inverse(u);
    const GroupWord vi = group_inverse(v);
    Candidate candidates[8] = {
        {NielsenMove::URightV, concat_reduced(u, v), true},
        {NielsenMove::URightVInv, concat_reduced(u, vi), true},
        {NielsenMove::ULeftV, concat_reduced(v, u), true},
        {NielsenMove::ULeftVInv, concat_reduced(vi, u), true},
        {NielsenMove::VRightU, concat_reduced(v, u), false},
        {NielsenMove::VRightUInv, concat_reduced(v, ui), false},
        {NielsenMove::VLeftU, concat_reduced(u, v), false},
        {NielsenMove::VLeftUInv, concat_reduced(ui, v), false},
    };
    const Candidate* best = nullptr;
    std::size_t best_total = total;
    for (const Candidate& c : candidates) {
      const std::size_t other_len = c.replaces_u ? v.size() : u.size();
      const std::size_t new_total = c.word.size() + other_len;
      if (new_total < best_total) {
        best = &c;
        best_total = new_total;
      }
    }
    if (!best) break;  // no strictly shortening move
    res.moves.push_back(best->move);
    (best->replaces_u ? u : v) = best->word;
  }
  res.u = std::move(u);
  res.v = std::move(v);
  return res;
}

namespace {

bool is_basis_pair(const GroupWord& u, const GroupWord& v) {
  return u.size() == 1 && v.size() == 1 && u[0].base != v[0].base;
}

}  // namespace

bool is_invertible(const Substitution& s) {
  if (!is_unimodular(substitution_matrix(s))) return false;
  const NielsenResult res =
      nielsen_reduce(to_group_word(s.image_a), to_group_word(s.image_b));
  return is_basis_pair(res.u, res.v);
}

std::pair<GroupWord, GroupWord> inverse(const Substitution& s) {
  NielsenResult res =
      nielsen_reduce(to_group_word(s.image_a), to_group_word(s.image_b));
  if (!is_basis_pair(res.u, res.v))
    fail(ErrorCode::NotInvertible,
         to_string(s) + " is not an automorphism of the free group");

  // Normalise the final pair to exactly (a, b), logging the moves.
  if (res.u[0].base == Letter::B) {
    res.moves.push_back(NielsenMove::Swap);
    std::swap(res.u, res.v);
  }
  if (res.u[0].inverse) {
    res.moves.push_back(NielsenMove::InvertU);
    res.u[0].inverse = false;
  }
  if (res.v[0].inverse) {
    res.moves.push_back(NielsenMove::InvertV);
    res.v[0].inverse = false;
  }

  // The accumulated basis changes turn (s(a), s(b)) into (a, b); replaying
  // them innermost-first on a generator evaluates the inverse automorphism.
  auto evaluate = [&](Letter l) {
    GroupWord w{SignedLetter{l, false}};
    for (auto it = res.moves.rbegin(); it != res.moves.rend(); ++it)
      w = apply_basis_change(*it, w);
    return w;
  };
  GroupWord inv_a = evaluate(Letter::A);
  GroupWord inv_b = evaluate(Letter::B);

  // Verify both compositions reduce to the identity on the generators.
  const GroupWord img_a = to_group_word(s.image_a);
  const GroupWord img_b = to_group_word(s.image_b);
  auto substitute = [](const GroupWord& w, const GroupWord& xa,
                       const GroupWord& xb) {
    GroupWord out;
    for (const SignedLetter& l : w) {
      const GroupWord& image = l.base == Letter::A ? xa : xb;
      if (!l.inverse) {
        out.insert(out.end(), image.begin(), image.end());
      } else {
        const GroupWord inv = group_inverse(image);
        out.insert(out.end(), inv.begin(), inv.end());
      }
    }
    return free_reduce(out);
  };
  const GroupWord a_word{SignedLetter{Letter::A, false}};
  const GroupWord b_word{SignedLetter{Letter::B, false}};
  if (substitute(inv_a, img_a, img_b) != a_word ||
      substitute(inv_b, img_a, img_b) != b_word ||
      substitute(img_a, inv_a, inv_b) != a_word ||
      substitute(img_b, inv_a, inv_b) != b_word)
    fail(ErrorCode::Internal, "inverse verification failed");
  return {inv_a, inv_b};
}

const char* window_kind_name(WindowKind kind) {
  switch (kind) {
    case WindowKind::Interval: return "Interval";
    case WindowKind::Cantorval: return "Cantorval";
    case WindowKind::FiniteUnionOrUndetermined:
      return "FiniteUnionOrUndetermined";
  }
  return "Unknown";
}

Classification classify(bool invertible, bool interval_solution,
                        double boundary_dimension, double dim_tolerance) {
  Classification c;
  c.invertible = invertible;
  c.interval_solution = interval_solution;
  c.boundary_dimension = boundary_dimension;
  if (invertible) {
    c.kind = WindowKind::Interval;
  } else if (boundary_dimension > dim_tolerance) {
    c.kind = WindowKind::Cantorval;
  } else {
    c.kind = WindowKind::FiniteUnionOrUndetermined;
  }
  return c;
}

}  // namespace cantorval

#pragma once

// Characters of the m-canonical representations of curves with an abelian
// group action, and of the variety (C_1 x ... x C_n)/G via Kuenneth.
//
// Convention: the group acts on forms by pullback, g . w = g^* w. For the
// inverse-pullback convention replace every character by its negative; the
// two never mix inside this library.

#include <cstdint>
#include <map>
#include <vector>

#include "vipclass/abelian_group.hpp"
#include "vipclass/covering_data.hpp"

namespace vipclass {

struct CharacterMultiset {
  AbelianGroup group;
  std::map<Character, std::int64_t> mults;  // absent keys have multiplicity 0

  std::int64_t operator[](const Character& chi) const;
  std::int64_t total() const;
};

/// Multiplicity of chi in H^0(C, K_C^m), m >= 2:
///   (2m/|G|)(g-1) - (g'-1) - sum_i [k_i - m]_{n_i} / n_i,  chi(h_i) = k_i/n_i.
std::int64_t pluricanonical_multiplicity(const Character& chi, int m, const GeneratingVector& V);

/// Multiplicity of chi in H^0(C, K_C): g' for the trivial character,
/// g' - 1 + sum_i frac(-k_i/n_i) otherwise.
std::int64_t canonical_multiplicity(const Character& chi, const GeneratingVector& V);

/// Full decomposition over Irr(G_i); checks the total against g (m = 1) or
/// (2m-1)(g-1) (m >= 2).
CharacterMultiset curve_character(int m, const GeneratingVector& V);

/// Character of Sym^2 of the representation with character c.
CharacterMultiset sym2_character(const CharacterMultiset& c);

/// Tuples (chi^(1), ..., chi^(n)) of characters of the G_i whose pullback to G
/// is trivial: exactly the characters of (G_1 x ... x G_n)/G.
std::vector<std::vector<Character>> galois_characters(const AlgebraicDatum& D);

struct VIPCharacter {
  std::vector<AbelianGroup> factors;
  std::map<std::vector<Character>, std::int64_t> mults;  // only positive entries

  std::int64_t total() const;
};

/// Character of H^0(X, K_X^m) as a representation of (G_1 x ... x G_n)/G.
VIPCharacter vip_character(const AlgebraicDatum& D, int m);

/// Pullback of a character of G_i = G/K_i to G.
Character pullback_character(const AlgebraicDatum& D, int i, const Character& chi);

}  // namespace vipclass

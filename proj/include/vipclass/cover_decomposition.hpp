#pragma once

// Eigensheaf decomposition of the pluricanonical systems of
// X = (C_1 x ... x C_n)/G over Y = C_1/G_1 x ... x C_n/G_n = (P^1)^n.
//
// The cover X -> Y is abelian with Galois group Gbar = (G_1 x ... x G_n)/G.
// Its branch divisor is the union of the fibres B_ij over the branch points
// of C_j -> P^1; each B_ij carries a stabilizer pair (H, psi). For a character
// chi of Gbar the chi-eigensheaf of pi_* K_X^m is O(r^1, ..., r^n) with
//
//   r^j = -2m + sum_i ( mu(m, H_ij, psi_ij, chi) - k(H_ij, psi_ij, chi) / n_ij ),
//
// and the chi-part of H^0(X, K_X^m) is t^r * pi^* H^0(Y, O(r^1, ..., r^n)),
// where t is a local equation of the ramification over each B_ij.

#include <cstdint>
#include <vector>

#include "vipclass/abelian_group.hpp"
#include "vipclass/covering_data.hpp"

namespace vipclass {

/// A character of Gbar, written as a tuple of characters of the G_i that is
/// trivial on G.
using GaloisCharacter = std::vector<Character>;
/// An element of G_1 x ... x G_n; as an element of Gbar it is taken modulo G.
using GaloisElement = std::vector<GroupElement>;

class GaloisGroup {
 public:
  explicit GaloisGroup(const AlgebraicDatum& D);

  const std::vector<AbelianGroup>& factors() const { return factors_; }
  int order() const { return order_; }

  /// Lexicographically least representative of the coset x + G.
  GaloisElement canonical(const GaloisElement& x) const;
  bool is_identity(const GaloisElement& x) const;
  GaloisElement add(const GaloisElement& a, const GaloisElement& b) const;
  GaloisElement scale(std::int64_t k, const GaloisElement& x) const;
  int element_order(const GaloisElement& x) const;

  /// One canonical representative per nonidentity element.
  std::vector<GaloisElement> nonidentity_elements() const;

  QZ eval(const GaloisCharacter& chi, const GaloisElement& x) const;

 private:
  std::vector<AbelianGroup> factors_;
  std::vector<GaloisElement> image_;  // G embedded diagonally
  int order_ = 1;
};

/// The pair (H, psi): H cyclic in Gbar with its canonical generator
/// (lexicographically least canonical representative of maximal order), psi
/// recorded by its value on that generator.
struct StabPair {
  GaloisElement generator;
  int order = 1;
  QZ psi_value;

  friend bool operator==(const StabPair&, const StabPair&) = default;
  friend auto operator<=>(const StabPair&, const StabPair&) = default;
};

struct BranchComponent {
  int factor = 0;              // j
  int point = 0;               // i
  GroupElement monodromy;      // h_ij in G_j
  GaloisElement lift;          // (0, ..., h_ij, ..., 0)
  StabPair pair;               // psi(lift) = 1/n_ij

  int order() const { return pair.order; }
};

/// One component per branch point of every factor, in (factor, point) order.
/// Requires all g'_j = 0.
std::vector<BranchComponent> branch_data(const AlgebraicDatum& D);

/// Components grouped by (H, psi): the divisors D_(H,psi).
std::vector<std::pair<StabPair, std::vector<BranchComponent>>> group_by_pair(
    const std::vector<BranchComponent>& components);

/// The unique 0 <= k < |H| with chi|_H = psi^k.
int k_exponent(const GaloisGroup& Gbar, const StabPair& pair, const GaloisCharacter& chi);
int k_exponent(const GaloisGroup& Gbar, const BranchComponent& b, const GaloisCharacter& chi);

struct RMu {
  int r = 0;
  int mu = 0;
  friend bool operator==(const RMu&, const RMu&) = default;
};

/// r = k - m + ceil((m-k)/|H|) |H|,  mu = m - ceil((m-k)/|H|).
RMu r_mu(int m, int stabilizer_order, int k);

struct EigensheafDegrees {
  GaloisCharacter character;
  int m = 0;
  std::vector<std::int64_t> degrees;  // (r^1, ..., r^n)

  /// h^0((P^1)^n, O(r^1, ..., r^n)).
  std::int64_t dimension() const;
};

/// Precomputed branch data and exponents for one datum. All per-character
/// queries take an index into characters().
class CoverDecomposition {
 public:
  explicit CoverDecomposition(const AlgebraicDatum& D);

  const AlgebraicDatum& datum() const { return datum_; }
  const GaloisGroup& galois() const { return galois_; }
  const std::vector<BranchComponent>& components() const { return components_; }
  const std::vector<GaloisCharacter>& characters() const { return characters_; }
  int character_index(const GaloisCharacter& chi) const;

  int k(std::size_t chi, std::size_t component) const { return k_[chi][component]; }

  std::vector<std::int64_t> degrees(int m, std::size_t chi) const;
  std::int64_t dimension(int m, std::size_t chi) const;
  /// Indices of the characters with all r^j >= 0.
  std::vector<std::size_t> constituents(int m) const;
  std::int64_t pluri_dimension(int m) const;
  bool base_point_free(int m) const;
  /// deg_j L_chi for each factor j.
  std::vector<std::int64_t> l_degrees(std::size_t chi) const;

 private:
  AlgebraicDatum datum_;
  GaloisGroup galois_;
  std::vector<BranchComponent> components_;
  std::vector<GaloisCharacter> characters_;
  std::vector<std::vector<int>> k_;               // [character][component]
  std::vector<std::vector<std::int64_t>> ldeg_;   // [character][factor]
};

EigensheafDegrees eigensheaf_multidegree(const AlgebraicDatum& D, int m, const GaloisCharacter& chi);
std::vector<EigensheafDegrees> eigensheaf_table(const AlgebraicDatum& D, int m);
std::int64_t pluri_dimension(const AlgebraicDatum& D, int m);
bool base_point_free(const AlgebraicDatum& D, int m);
/// deg_j L_{chi^-1} + deg_j L_chi == #{i : k(H_ij, psi_ij, chi) != 0} for every j.
bool dual_character_relation_check(const AlgebraicDatum& D, const GaloisCharacter& chi);

}  // namespace vipclass

#pragma once

// Generating vectors of abelian group actions on curves, branching types,
// the Hurwitz formula, and algebraic data (G, K_1..K_n, V_1..V_n) of unmixed
// varieties isogenous to a product.
//
// Branch point i of a cover always corresponds to entry i of its vector.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "vipclass/abelian_group.hpp"

namespace vipclass {

/// [g'; n_1, ..., n_r] with 2 <= n_1 <= ... <= n_r.
struct BranchingType {
  int genus_prime = 0;
  std::vector<int> indices;

  BranchingType() = default;
  BranchingType(int g_prime, std::vector<int> idx);

  int branch_count() const { return static_cast<int>(indices.size()); }

  /// "[0; 2,2,2]" round-trips through parse().
  std::string str() const;
  /// Compact exponent notation used in tables: "2^5", "2 6^2".
  std::string compact() const;
  static BranchingType parse(std::string_view text);

  friend bool operator==(const BranchingType&, const BranchingType&) = default;
  friend auto operator<=>(const BranchingType&, const BranchingType&) = default;
};

/// 2g - 2 = |H| (2g' - 2 + sum (n_i - 1)/n_i). Throws ValidationError when the
/// right-hand side does not give an integer g >= 0.
int hurwitz_genus(int group_order, const BranchingType& type);

struct GeneratingVector {
  AbelianGroup group;
  BranchingType type;
  std::vector<GroupElement> hyperbolic;  // d_1, e_1, ..., d_g', e_g'
  std::vector<GroupElement> branch;      // h_1, ..., h_r

  int genus() const { return hurwitz_genus(group.order(), type); }
};

enum class VectorViolation {
  None,
  WrongLength,
  InvalidElement,
  WrongOrder,
  ProductNotOne,
  NotGenerating,
};

struct VectorCheck {
  VectorViolation violation = VectorViolation::None;
  std::string detail;

  bool ok() const { return violation == VectorViolation::None; }
  explicit operator bool() const { return ok(); }
};

VectorCheck check_generating_vector(const AbelianGroup& G, const GeneratingVector& V);
bool is_generating_vector(const AbelianGroup& G, const GeneratingVector& V);

/// Every ordered tuple (h_1..h_r) with ord(h_i) = n_i, sum h_i = 0 that
/// generates G, in lexicographic order of element indices. Only g' = 0 is
/// supported (ScopeError otherwise). The callback returns false to stop early.
void for_each_generating_vector(const AbelianGroup& G, const BranchingType& type,
                                const std::function<bool(const GeneratingVector&)>& fn);
std::vector<GeneratingVector> enumerate_generating_vectors(const AbelianGroup& G,
                                                           const BranchingType& type);

/// Union of the cyclic groups <h_i>, sorted; always contains the identity.
std::vector<GroupElement> stabilizer_set(const GeneratingVector& V);

struct AlgebraicDatum {
  AbelianGroup group;
  std::vector<Subgroup> kernels;
  std::vector<GeneratingVector> vectors;     // vector i lives over G/K_i
  std::vector<QuotientMap> projections;      // G -> G/K_i

  int n() const { return static_cast<int>(vectors.size()); }
  const AbelianGroup& factor_group(int i) const { return projections[i].target(); }
};

/// Computes the quotients G/K_i and lifts the given vectors (coordinates in
/// G/K_i as produced by quotient()) into a datum. No validity checks.
AlgebraicDatum make_datum(const AbelianGroup& G, std::vector<Subgroup> kernels,
                          std::vector<GeneratingVector> vectors_over_quotients);

/// Same, but branch and hyperbolic elements are given in ambient G
/// coordinates and projected.
AlgebraicDatum make_datum_from_ambient(const AbelianGroup& G, std::vector<Subgroup> kernels,
                                       const std::vector<BranchingType>& types,
                                       const std::vector<std::vector<GroupElement>>& branch,
                                       const std::vector<std::vector<GroupElement>>& hyperbolic = {});

/// Preimage in G of the stabilizer set of V_i (i.e. Sigma_{V_i} * K_i).
std::vector<GroupElement> lifted_stabilizer_set(const AlgebraicDatum& D, int i);

bool is_free_action(const AlgebraicDatum& D);
bool is_minimal_realization(const std::vector<Subgroup>& kernels);
/// Genera of the curves; throws ValidationError if some g_i <= 1.
std::vector<int> curve_genera(const AlgebraicDatum& D);

/// Runs every validity check (generation, Hurwitz integrality, genera >= 2,
/// minimal realization, freeness) and throws ValidationError naming the
/// first violated condition.
void validate_datum(const AlgebraicDatum& D);

}  // namespace vipclass

#pragma once

// Classification of regular unmixed threefolds X = (C_1 x C_2 x C_3)/G with
// abelian G, all C_i/G = P^1, and a prescribed chi(O_X).
//
// Families are algebraic data up to: a simultaneous automorphism of G, a
// permutation of the entries inside each generating vector, and a permutation
// of the three factors.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vipclass/abelian_group.hpp"
#include "vipclass/covering_data.hpp"
#include "vipclass/invariants.hpp"
#include "vipclass/pluri_maps.hpp"

namespace vipclass {

enum class FamilyEquivalence {
  /// Aut(G) and entry permutations. Factors are kept in (kernel order, type)
  /// order and factors with equal slot data are not swapped.
  OrderedFactors,
  /// Additionally identifies data that differ by a permutation of factors.
  UnorderedFactors,
};

/// Condition on the kernels of a datum.
enum class KernelCheck {
  /// Minimal realization: K_i and K_j intersect trivially for all i != j.
  Minimal,
  /// Only K_1 and K_2, and K_2 and K_3, intersect trivially (factors in
  /// (kernel order, type) order). This admits some non-minimal data and is
  /// the convention under which the published chi = -1 table was produced.
  AdjacentPairs,
};

struct SearchSpec {
  int chi_target = -1;
  int max_group_order = 16;
  int n = 3;
  bool allow_nontrivial_kernels = true;
  std::vector<int> m_range{1, 2, 3, 4, 5};
  /// Restrict to these groups (empty: every abelian group up to the cap).
  std::vector<AbelianGroup> only_groups;
  FamilyEquivalence equivalence = FamilyEquivalence::OrderedFactors;
  KernelCheck kernel_check = KernelCheck::Minimal;
  /// Worker threads; 0 picks the hardware concurrency.
  int threads = 0;
  /// Progress trace (per group and per slot class); null for silence.
  std::ostream* log = nullptr;

  void validate() const;
};

/// One slot of a shape: kernel order, branching type and the resulting genus.
struct SlotShape {
  int kernel_order = 1;
  BranchingType type;
  int genus = 0;

  friend bool operator==(const SlotShape&, const SlotShape&) = default;
  friend auto operator<=>(const SlotShape&, const SlotShape&) = default;
};

struct Shape {
  AbelianGroup group;
  std::array<SlotShape, 3> slots;  // sorted by (kernel order, type)

  std::array<int, 3> kernel_orders() const;
  std::array<int, 3> genera() const;

  friend bool operator==(const Shape&, const Shape&) = default;
  friend auto operator<=>(const Shape&, const Shape&) = default;
};

/// Shapes compatible with Hurwitz, chi(O_X) = prod(1 - g_i)/|G|, and for
/// which each slot admits a generating vector and some choice of slots is
/// compatible with freeness and minimal realization.
std::vector<Shape> admissible_shapes(const SearchSpec& spec);

struct FamilyRecord {
  AbelianGroup group;
  std::array<int, 3> kernel_orders{};
  std::array<BranchingType, 3> types;
  std::array<int, 3> genera{};
  InvariantSet invariants;
  std::map<int, MapAnalysis> analyses;  // full rule set
  AlgebraicDatum representative;
  /// False only for data admitted by KernelCheck::AdjacentPairs.
  bool minimal_realization = true;
  /// Canonical form of the representative; orders records within a shape.
  std::vector<int> canonical_key;
};

/// All families for the spec, deduplicated and sorted by (group, kernel
/// orders, types, canonical form).
std::vector<FamilyRecord> classify(const SearchSpec& spec);

/// Brute-force canonical form of an n = 3 datum under Aut(G), entry
/// permutations and factor permutations (the UnorderedFactors equivalence);
/// two data are equivalent iff their forms agree.
std::vector<int> canonical_form(const AlgebraicDatum& D);
bool equivalent(const AlgebraicDatum& a, const AlgebraicDatum& b);

struct StatusCounts {
  int bpf = 0, bir = 0, nbir = 0, unknown = 0;

  friend bool operator==(const StatusCounts&, const StatusCounts&) = default;
};

struct TableRow {
  AbelianGroup group;
  std::array<int, 3> kernel_orders{};
  std::array<BranchingType, 3> types;
  HodgeNumbers hodge;
  StatusCounts canonical;    // m = 1
  StatusCounts bicanonical;  // m = 2
  int families = 0;
};

/// Rows grouped by (group, kernel orders, types, Hodge numbers). The view
/// decides the bir/nbir/? columns: CriteriaOnly is the published table layout,
/// Full additionally applies the genus-2 and large-m rules.
std::vector<TableRow> summarize(const std::vector<FamilyRecord>& records, RuleSet view = RuleSet::CriteriaOnly);

/// Status of one analysis under a view (the stored analysis uses the full set).
MapStatus view_status(const MapAnalysis& a, RuleSet view);

}  // namespace vipclass

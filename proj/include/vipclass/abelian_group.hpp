#pragma once

// Finite abelian groups in invariant-factor form, their elements, subgroups,
// quotients, automorphisms and characters. Character values are kept exact as
// elements of Q/Z (the exponent of a root of unity); nothing here ever touches
// complex floating point.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace vipclass {

/// Exact rational number modulo 1, normalized to 0 <= num < den, gcd = 1.
class QZ {
 public:
  QZ() = default;
  QZ(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  QZ operator+(const QZ& o) const;
  QZ operator-(const QZ& o) const;
  QZ operator-() const;

  /// The integer k with value == k / modulus (mod 1). Throws ConsistencyError
  /// when den does not divide modulus.
  std::int64_t exponent_over(std::int64_t modulus) const;

  std::string str() const;

  friend bool operator==(const QZ&, const QZ&) = default;
  friend auto operator<=>(const QZ& a, const QZ& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct GroupElement {
  std::vector<int> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// A character chi of G, chi(g) = sum_i exponents[i] * g_i / d_i  (mod 1).
struct Character {
  std::vector<int> exponents;

  friend bool operator==(const Character&, const Character&) = default;
  friend auto operator<=>(const Character&, const Character&) = default;
};

std::string to_string(const GroupElement& g);
std::string to_string(const Character& chi);

/// Z/d_1 x ... x Z/d_k with d_1 | d_2 | ... | d_k, all d_i >= 2.
///
/// Elements are indexed in mixed radix with the first coordinate most
/// significant, so index order coincides with lexicographic order of the
/// coordinate tuples.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  /// Factors equal to 1 are dropped; the remaining list must satisfy the
  /// divisibility chain, otherwise ValidationError.
  explicit AbelianGroup(std::vector<int> invariant_factors);

  const std::vector<int>& factors() const { return factors_; }
  int rank() const { return static_cast<int>(factors_.size()); }
  int order() const { return order_; }
  int exponent() const { return factors_.empty() ? 1 : factors_.back(); }
  bool is_trivial() const { return factors_.empty(); }

  GroupElement zero() const;
  GroupElement basis(int i) const;
  bool contains(const GroupElement& g) const;

  int index_of(const GroupElement& g) const;
  GroupElement element_at(int index) const;
  std::vector<GroupElement> elements() const;

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement scale(std::int64_t k, const GroupElement& a) const;

  /// Canonical element from arbitrary integer coordinates (reduced mod d_i).
  GroupElement reduce(const std::vector<std::int64_t>& coords) const;

  /// "Z2^3", "Z2xZ4", "Z2^2xZ4", "1" for the trivial group.
  std::string name() const;

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.factors_ == b.factors_;
  }
  friend auto operator<=>(const AbelianGroup& a, const AbelianGroup& b) {
    if (a.order_ != b.order_) return a.order_ <=> b.order_;
    return a.factors_ <=> b.factors_;
  }

 private:
  std::vector<int> factors_;
  std::vector<int> strides_;
  int order_ = 1;
};

AbelianGroup make_group(std::vector<int> invariant_factors);

int element_order(const AbelianGroup& G, const GroupElement& g);

/// All |G| characters, in index order of their exponent tuples.
std::vector<Character> characters(const AbelianGroup& G);
QZ eval_character(const AbelianGroup& G, const Character& chi, const GroupElement& g);
Character add_characters(const AbelianGroup& G, const Character& a, const Character& b);
Character negate_character(const AbelianGroup& G, const Character& a);
int character_order(const AbelianGroup& G, const Character& chi);
/// The character group carries the same invariant factors, so characters can
/// share the element indexing.
int character_index(const AbelianGroup& G, const Character& chi);

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(AbelianGroup parent, std::vector<GroupElement> generators);

  const AbelianGroup& parent() const { return parent_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  /// Sorted lexicographically; always starts with the identity.
  const std::vector<GroupElement>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  bool contains(const GroupElement& g) const;
  bool is_trivial() const { return elements_.size() == 1; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.elements_ == b.elements_;
  }

 private:
  AbelianGroup parent_;
  std::vector<GroupElement> generators_;
  std::vector<GroupElement> elements_;
};

Subgroup subgroup_generated(const AbelianGroup& G, const std::vector<GroupElement>& gens);
Subgroup trivial_subgroup(const AbelianGroup& G);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

/// Surjective homomorphism G -> G/K written in invariant-factor coordinates of
/// the target: coords(pi(x)) = (x * transform) reduced mod the target factors.
class QuotientMap {
 public:
  QuotientMap() = default;
  QuotientMap(AbelianGroup source, AbelianGroup target,
               std::vector<std::vector<std::int64_t>> transform);

  const AbelianGroup& source() const { return source_; }
  const AbelianGroup& target() const { return target_; }
  GroupElement operator()(const GroupElement& g) const;

  /// Every element of the source mapping into `targets`.
  std::vector<GroupElement> preimage(const std::vector<GroupElement>& targets) const;
  Subgroup kernel() const;

 private:
  AbelianGroup source_;
  AbelianGroup target_;
  std::vector<std::vector<std::int64_t>> transform_;  // source rank x target rank
};

struct Quotient {
  AbelianGroup group;
  QuotientMap projection;
};

Quotient quotient(const AbelianGroup& G, const Subgroup& K);

/// Every cyclic subgroup exactly once, ordered by (order, canonical generator).
/// The canonical generator (first entry of generators()) is the
/// lexicographically least element of maximal order.
std::vector<Subgroup> cyclic_subgroups(const AbelianGroup& G);

/// Every subgroup exactly once, ordered by (order, element list).
std::vector<Subgroup> all_subgroups(const AbelianGroup& G);

/// An automorphism, determined by the images of the standard generators.
struct Automorphism {
  std::vector<GroupElement> images;

  GroupElement operator()(const AbelianGroup& G, const GroupElement& g) const;
};

inline constexpr int kDefaultAutomorphismCeiling = 64;

/// All automorphisms by brute force over generator images. Throws ScopeError
/// when |G| exceeds `max_group_order`.
std::vector<Automorphism> automorphisms(const AbelianGroup& G,
                                        int max_group_order = kDefaultAutomorphismCeiling);

/// Index permutations: result[a][x] = index of automorphism a applied to
/// element x. Same enumeration order as automorphisms().
std::vector<std::vector<int>> automorphism_tables(const AbelianGroup& G,
                                                 int max_group_order = kDefaultAutomorphismCeiling);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct SmithForm {
  std::vector<std::int64_t> diagonal;  // min(rows, cols) entries, d_i | d_{i+1}
  IntMatrix column_transform;          // unimodular V with U * R * V = D
};

SmithForm smith_normal_form(IntMatrix relations);

/// Invariant factors of Z^k / rowspace(relations). The relation matrix must
/// have full column rank (finite quotient), otherwise ValidationError.
AbelianGroup abelianize(const IntMatrix& relations);

/// Every abelian group of the given order, in invariant-factor form.
std::vector<AbelianGroup> abelian_groups_of_order(int order);

}  // namespace vipclass

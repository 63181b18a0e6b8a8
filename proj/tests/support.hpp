#pragma once

// Shared fixtures for the unit and acceptance tests.

#include <array>
#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vipclass/abelian_group.hpp"
#include "vipclass/classification.hpp"
#include "vipclass/covering_data.hpp"

namespace testsupport {

using namespace vipclass;

inline std::string data_path(const std::string& name) { return std::string(VIPCLASS_SOURCE_DIR) + "/" + name; }

inline GroupElement el(std::vector<int> c) { return GroupElement{std::move(c)}; }

/// The (Z/2)^3 datum with three genus-5 curves and chi(O) = -8.
inline AlgebraicDatum z2cubed_chi8() {
  const AbelianGroup G = make_group({2, 2, 2});
  const BranchingType T(0, {2, 2, 2, 2, 2, 2});
  const auto e1 = el({1, 0, 0}), e2 = el({0, 1, 0}), e3 = el({0, 0, 1});
  const auto e13 = el({1, 0, 1}), e12 = el({1, 1, 0}), e23 = el({0, 1, 1}), e123 = el({1, 1, 1});
  std::vector<std::vector<GroupElement>> V = {
      {e1, e1, e2, e2, e3, e3}, {e13, e13, e12, e12, e123, e123}, {e13, e13, e23, e23, e123, e123}};
  const Subgroup K = trivial_subgroup(G);
  return make_datum_from_ambient(G, {K, K, K}, {T, T, T}, V);
}

/// Every abelian group of order 2..max.
inline std::vector<AbelianGroup> groups_up_to(int max) {
  std::vector<AbelianGroup> out;
  for (int n = 2; n <= max; ++n)
    for (auto& G : abelian_groups_of_order(n)) out.push_back(G);
  return out;
}

/// A random g' = 0 generating vector: random nonzero entries closed up by
/// the negated sum, kept only if they generate. Entries sorted by order.
inline std::optional<GeneratingVector> random_vector(const AbelianGroup& G, std::mt19937& rng, int max_r = 7) {
  std::uniform_int_distribution<int> pick(1, G.order() - 1), len(3, max_r);
  const int r = len(rng);
  std::vector<GroupElement> h;
  GroupElement sum = G.zero();
  for (int i = 0; i + 1 < r; ++i) {
    h.push_back(G.element_at(pick(rng)));
    sum = G.add(sum, h.back());
  }
  const GroupElement last = G.negate(sum);
  if (last == G.zero()) return std::nullopt;
  h.push_back(last);
  std::stable_sort(h.begin(), h.end(), [&](const GroupElement& a, const GroupElement& b) {
    return element_order(G, a) < element_order(G, b);
  });
  std::vector<int> idx;
  for (const auto& x : h) idx.push_back(element_order(G, x));
  GeneratingVector V{G, BranchingType(0, idx), {}, h};
  if (!is_generating_vector(G, V)) return std::nullopt;
  return V;
}

struct PublishedRow {
  int number = 0;
  std::string group;
  std::array<int, 3> kernel_orders{};
  std::array<std::string, 3> types;
  HodgeNumbers hodge;
  StatusCounts canonical, bicanonical;

  int families() const { return canonical.bir + canonical.nbir + canonical.unknown; }
};

/// The published chi = -1 table, transcribed to tests/data/table_chi-1.csv.
inline std::vector<PublishedRow> published_table() {
  std::ifstream in(data_path("tests/data/table_chi-1.csv"));
  std::string line;
  std::getline(in, line);
  std::vector<PublishedRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    PublishedRow r;
    r.number = std::stoi(f[0]);
    r.group = f[1];
    for (int i = 0; i < 3; ++i) r.kernel_orders[i] = std::stoi(f[2 + i]);
    for (int i = 0; i < 3; ++i) r.types[i] = f[5 + i];
    r.hodge = {std::stoll(f[8]), std::stoll(f[9]), std::stoll(f[10]), std::stoll(f[11]), std::stoll(f[12])};
    r.canonical = {std::stoi(f[13]), std::stoi(f[14]), std::stoi(f[15]), std::stoi(f[16])};
    r.bicanonical = {std::stoi(f[17]), std::stoi(f[18]), std::stoi(f[19]), std::stoi(f[20])};
    rows.push_back(r);
  }
  return rows;
}

inline bool same_shape(const PublishedRow& p, const TableRow& t) {
  if (p.group != t.group.name() || p.kernel_orders != t.kernel_orders || !(p.hodge == t.hodge)) return false;
  for (int i = 0; i < 3; ++i)
    if (p.types[i] != t.types[i].compact()) return false;
  return true;
}

}  // namespace testsupport

namespace testsupport {

/// Image of D under an automorphism of G (given as an index permutation)
/// followed by a permutation of the entries of each vector.
inline AlgebraicDatum transform_datum(const AlgebraicDatum& D, const std::vector<int>& aut, std::mt19937* shuffle = nullptr) {
  const AbelianGroup& G = D.group;
  auto apply = [&](const GroupElement& x) { return G.element_at(aut[G.index_of(x)]); };
  std::vector<Subgroup> kernels;
  std::vector<BranchingType> types;
  std::vector<std::vector<GroupElement>> branch;
  for (int i = 0; i < D.n(); ++i) {
    std::vector<GroupElement> gens;
    for (const auto& k : D.kernels[i].elements()) gens.push_back(apply(k));
    kernels.push_back(subgroup_generated(G, gens));
    std::vector<GroupElement> lifted;
    for (const auto& h : D.vectors[i].branch) lifted.push_back(apply(D.projections[i].preimage({h}).front()));
    if (shuffle) {
      // shuffle within runs of equal branching index
      const auto& idx = D.vectors[i].type.indices;
      for (std::size_t b = 0; b < idx.size();) {
        std::size_t e = b;
        while (e < idx.size() && idx[e] == idx[b]) ++e;
        std::shuffle(lifted.begin() + b, lifted.begin() + e, *shuffle);
        b = e;
      }
    }
    types.push_back(D.vectors[i].type);
    branch.push_back(lifted);
  }
  return make_datum_from_ambient(G, kernels, types, branch);
}

/// Surface (C x C)/(Z5)^2 with C the Fermat quintic: p_g = q = 0, K^2 = 8.
inline AlgebraicDatum beauville_surface() {
  const AbelianGroup G = make_group({5, 5});
  const BranchingType T(0, {5, 5, 5});
  const Subgroup K = trivial_subgroup(G);
  return make_datum_from_ambient(G, {K, K}, {T, T},
                                 {{el({1, 0}), el({0, 1}), el({4, 4})}, {el({1, 2}), el({3, 4}), el({1, 4})}});
}

}  // namespace testsupport

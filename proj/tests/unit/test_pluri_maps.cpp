#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "vipclass/errors.hpp"
#include "vipclass/pluri_maps.hpp"

using namespace vipclass;

namespace {

std::vector<FamilyRecord> families_of(std::vector<int> factors, bool kernels) {
  SearchSpec spec;
  spec.max_group_order = 16;
  spec.only_groups = {make_group(std::move(factors))};
  spec.allow_nontrivial_kernels = kernels;
  spec.m_range = {1, 2, 3};
  return classify(spec);
}

}  // namespace

TEST_CASE("canonical map of the chi = -8 example") {
  const AlgebraicDatum D = testsupport::z2cubed_chi8();
  const MapAnalysis a = map_status(D, 1);
  CHECK(a.plurigenus == 16);
  CHECK(a.bpf);
  CHECK(a.separates_group);
  CHECK(a.separates_base);
  CHECK(a.status == MapStatus::Birational);
  CHECK(a.reason == kReasonSeparation);
  CHECK(a.normalization_flag);
  CHECK(a.status_string() == "Birational (separation-criteria)");
  for (int m = 2; m <= 5; ++m) CHECK(map_status(D, m).status == MapStatus::Birational);
  CHECK_THROWS_AS(map_status(D, 0), ValidationError);
}

TEST_CASE("group separation fails on the first published row") {
  int row1 = 0;
  for (const auto& r : families_of({2, 2, 2}, false)) {
    if (r.invariants.hodge.h30 != 4) continue;
    ++row1;
    const MapAnalysis a = map_status(r.representative, 1);
    CHECK_FALSE(a.separates_group);
    CHECK(a.status == MapStatus::NonBirational);
    CHECK(a.reason == kReasonGroupSeparationFails);
    CHECK_FALSE(a.normalization_flag);
    const MapAnalysis b = map_status(r.representative, 2);
    CHECK(b.status == MapStatus::Birational);
    CHECK(b.bpf);
  }
  CHECK(row1 == 9);
}

TEST_CASE("genus-2 factor decides the bicanonical map") {
  int rows = 0;
  for (const auto& r : families_of({3, 3}, true)) {
    if (r.kernel_orders != std::array<int, 3>{1, 1, 3}) continue;
    ++rows;
    CHECK(r.genera[2] == 2);
    const MapAnalysis full = map_status(r.representative, 2, RuleSet::Full);
    const MapAnalysis criteria = map_status(r.representative, 2, RuleSet::CriteriaOnly);
    CHECK(full.separates_group);
    CHECK_FALSE(full.separates_base);
    CHECK(full.status == MapStatus::NonBirational);
    CHECK(full.reason == kReasonGenus2Factor);
    CHECK(criteria.status == MapStatus::Unknown);
    CHECK(criteria.reason.empty());
    CHECK(criteria.status_string() == "Unknown");
    // m = 3 is not touched by the genus-2 rule
    CHECK(map_status(r.representative, 3).reason != kReasonGenus2Factor);
  }
  CHECK(rows == 2);
}

TEST_CASE("rules beyond the separation criteria") {
  // A surface with p_g = 0: no constituents at m = 1.
  const AlgebraicDatum S = testsupport::beauville_surface();
  CHECK_NOTHROW(validate_datum(S));
  const MapAnalysis a1 = map_status(S, 1);
  CHECK(a1.plurigenus == 0);
  CHECK_FALSE(a1.separates_base);
  CHECK_FALSE(a1.separates_group);
  CHECK(a1.status == MapStatus::NonBirational);
  CHECK_FALSE(a1.bpf);
  // P_m = chi + m(m-1)/2 K^2 with chi = 1, K^2 = 8
  for (int m = 2; m <= 5; ++m) CHECK(map_status(S, m).plurigenus == 1 + 4 * m * (m - 1));
  for (int m = 3; m <= 5; ++m) {
    const MapAnalysis a = map_status(S, m);
    CHECK(a.status == MapStatus::Birational);
    CHECK((a.reason == kReasonSeparation || a.reason == kReasonSurfaceEmbedding));
  }
}

TEST_CASE("large-m rules for threefolds") {
  // Find families where the criteria fail at m = 4 or 5 but the later rules apply.
  for (const auto& r : families_of({2, 2, 2}, true)) {
    for (int m : {4, 5}) {
      const MapAnalysis full = map_status(r.representative, m, RuleSet::Full);
      const MapAnalysis crit = map_status(r.representative, m, RuleSet::CriteriaOnly);
      if (crit.status == MapStatus::Birational) {
        CHECK(full.reason == kReasonSeparation);
      } else if (crit.status == MapStatus::Unknown) {
        if (m == 5) CHECK(full.reason == kReasonThreefoldHighM);
        if (m == 4 && full.plurigenus >= 5) CHECK(full.reason == kReasonFourCanonical);
      }
      // the necessary criterion is never overruled
      if (!crit.separates_group) CHECK(full.status == MapStatus::NonBirational);
    }
  }
}

TEST_CASE("rule set views agree where the criteria decide") {
  for (const auto& r : families_of({2, 2, 2}, true))
    for (const auto& [m, a] : r.analyses) {
      CHECK(view_status(a, RuleSet::Full) == a.status);
      const MapAnalysis crit = map_status(r.representative, m, RuleSet::CriteriaOnly);
      CHECK(view_status(a, RuleSet::CriteriaOnly) == crit.status);
      if (a.status == MapStatus::Birational && a.reason == kReasonSeparation)
        CHECK((a.separates_group && a.separates_base));
      CHECK(a.normalization_flag == (a.bpf && a.status == MapStatus::Birational));
      if (a.status != MapStatus::Unknown) CHECK_FALSE(a.reason.empty());
    }
}

TEST_CASE("non-hyperelliptic certificate") {
  const AlgebraicDatum D = testsupport::z2cubed_chi8();
  for (int i = 0; i < 3; ++i) CHECK(certify_non_hyperelliptic(D, i));
  CHECK_THROWS_AS(certify_non_hyperelliptic(D, 3), ValidationError);
  // the Fermat quintic
  const AlgebraicDatum S = testsupport::beauville_surface();
  CHECK(certify_non_hyperelliptic(S, 0));
  // cyclic groups are never certified
  const auto Z3 = make_group({3});
  const BranchingType T(0, {3, 3, 3, 3});
  const Subgroup K = trivial_subgroup(Z3);
  const auto E = make_datum_from_ambient(Z3, {K, K}, {T, T},
                                         {{testsupport::el({1}), testsupport::el({1}), testsupport::el({2}), testsupport::el({2})},
                                          {testsupport::el({1}), testsupport::el({2}), testsupport::el({1}), testsupport::el({2})}});
  CHECK_FALSE(certify_non_hyperelliptic(E, 0));
}

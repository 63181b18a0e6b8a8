#include "vipclass/pluri_maps.hpp"

#include <algorithm>

#include "vipclass/chevalley_weil.hpp"
#include "vipclass/errors.hpp"

namespace vipclass {

std::string to_string(MapStatus s) {
  switch (s) {
    case MapStatus::Birational: return "Birational";
    case MapStatus::NonBirational: return "NonBirational";
    case MapStatus::Unknown: return "Unknown";
  }
  return "?";
}

std::string MapAnalysis::status_string() const {
  if (reason.empty()) return to_string(status);
  return to_string(status) + " (" + reason + ")";
}

namespace {

bool separates_group_with(const CoverDecomposition& cover, const std::vector<std::size_t>& cons) {
  if (cons.size() < 2) return cover.galois().order() == 1;
  const auto& Gbar = cover.galois();
  for (const auto& h : Gbar.nonidentity_elements()) {
    const QZ first = Gbar.eval(cover.characters()[cons.front()], h);
    bool differs = false;
    for (std::size_t c = 1; c < cons.size() && !differs; ++c)
      differs = Gbar.eval(cover.characters()[cons[c]], h) != first;
    if (!differs) return false;
  }
  return true;
}

bool separates_base_with(const CoverDecomposition& cover, int m, const std::vector<std::size_t>& cons) {
  const int n = cover.datum().n();
  std::vector<char> hit(n, 0);
  for (auto c : cons) {
    auto r = cover.degrees(m, c);
    for (int j = 0; j < n; ++j)
      if (r[j] >= 1) hit[j] = 1;
  }
  return std::all_of(hit.begin(), hit.end(), [](char x) { return x != 0; });
}

}  // namespace

bool separates_group(const CoverDecomposition& cover, int m) {
  return separates_group_with(cover, cover.constituents(m));
}

bool separates_base(const CoverDecomposition& cover, int m) {
  return separates_base_with(cover, m, cover.constituents(m));
}

MapAnalysis map_status(const CoverDecomposition& cover, int m, RuleSet rules) {
  if (m < 1) throw ValidationError("map_status needs m >= 1");
  const AlgebraicDatum& D = cover.datum();
  const auto cons = cover.constituents(m);
  MapAnalysis a;
  a.m = m;
  a.plurigenus = cover.pluri_dimension(m);
  a.bpf = cover.base_point_free(m);
  a.separates_group = separates_group_with(cover, cons);
  a.separates_base = separates_base_with(cover, m, cons);

  const auto genera = curve_genera(D);
  const bool genus2 = m == 2 && std::find(genera.begin(), genera.end(), 2) != genera.end();
  const bool criteria = a.separates_group && a.separates_base;
  if (criteria && genus2)
    throw ConsistencyError("separation criteria hold for m = 2 although a factor has genus 2");

  auto set = [&](MapStatus s, const char* why) {
    a.status = s;
    a.reason = why;
  };
  if (criteria) {
    set(MapStatus::Birational, kReasonSeparation);
  } else if (!a.separates_group) {
    set(MapStatus::NonBirational, kReasonGroupSeparationFails);
  } else if (rules == RuleSet::CriteriaOnly) {
    a.status = MapStatus::Unknown;
  } else if (genus2) {
    set(MapStatus::NonBirational, kReasonGenus2Factor);
  } else if (D.n() == 3 && m == 4 && cover.pluri_dimension(1) >= 5) {
    set(MapStatus::Birational, kReasonFourCanonical);
  } else if (D.n() == 3 && m >= 5) {
    set(MapStatus::Birational, kReasonThreefoldHighM);
  } else if (D.n() == 2 && m >= 3) {
    set(MapStatus::Birational, kReasonSurfaceEmbedding);
  } else {
    a.status = MapStatus::Unknown;
  }
  a.normalization_flag = a.bpf && a.status == MapStatus::Birational;
  return a;
}

bool separates_group(const AlgebraicDatum& D, int m) { return separates_group(CoverDecomposition(D), m); }
bool separates_base(const AlgebraicDatum& D, int m) { return separates_base(CoverDecomposition(D), m); }
MapAnalysis map_status(const AlgebraicDatum& D, int m, RuleSet rules) {
  return map_status(CoverDecomposition(D), m, rules);
}

bool certify_non_hyperelliptic(const AlgebraicDatum& D, int i) {
  if (i < 0 || i >= D.n()) throw ValidationError("curve index out of range");
  const GeneratingVector& V = D.vectors[i];
  const AbelianGroup& Gi = V.group;
  if (Gi.rank() <= 1) return false;
  if (Gi.factors() == std::vector<int>{2, 2}) return false;
  const auto theta = curve_character(1, V);
  for (const auto& g : Gi.elements()) {
    if (g == Gi.zero()) continue;
    bool minus_identity = true;
    for (const auto& [chi, mult] : theta.mults)
      if (eval_character(Gi, chi, g) != QZ(1, 2)) minus_identity = false;
    if (minus_identity) return false;
  }
  return true;
}

}  // namespace vipclass

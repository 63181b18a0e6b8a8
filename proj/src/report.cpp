#include "vipclass/report.hpp"

#include "vipclass/chevalley_weil.hpp"
#include "vipclass/datum_io.hpp"
#include "vipclass/invariants.hpp"
#include "vipclass/pluri_maps.hpp"

namespace vipclass {

using nlohmann::json;

namespace {

json hodge_json(const HodgeNumbers& h) {
  return json{{"h30", h.h30}, {"h20", h.h20}, {"h10", h.h10}, {"h11", h.h11}, {"h21", h.h21}};
}

json analysis_json(const MapAnalysis& a) {
  return json{{"m", a.m},
              {"P_m", a.plurigenus},
              {"bpf", a.bpf},
              {"separates_group", a.separates_group},
              {"separates_base", a.separates_base},
              {"status", to_string(a.status)},
              {"reason", a.reason},
              {"normalization_flag", a.normalization_flag}};
}

json counts_json(const StatusCounts& c) {
  return json{{"bpf", c.bpf}, {"bir", c.bir}, {"nbir", c.nbir}, {"unknown", c.unknown}};
}

std::string galois_character_string(const GaloisCharacter& chi) {
  std::string s;
  for (std::size_t i = 0; i < chi.size(); ++i) s += (i ? "|" : "") + to_string(chi[i]);
  return s;
}

}  // namespace

json analysis_report(const AlgebraicDatum& D, const std::vector<int>& m_range, bool eigensheaves) {
  const InvariantSet inv = compute_invariants(D);
  json j;
  j["group"] = D.group.name();
  j["genera"] = inv.genera;
  json invariants{{"chi_O", inv.chi_O}, {"e", inv.euler_number}};
  invariants[D.n() == 3 ? "K3" : "K2"] = inv.canonical_self_intersection;
  if (D.n() == 3) invariants["hodge"] = hodge_json(inv.hodge);
  j["invariants"] = invariants;

  const CoverDecomposition cover(D);
  json maps = json::array();
  for (int m : m_range) {
    const MapAnalysis ma = map_status(cover, m);
    json a = analysis_json(ma);
    a["status"] = ma.status_string();
    if (eigensheaves) {
      json table = json::array();
      for (std::size_t c = 0; c < cover.characters().size(); ++c) {
        const auto r = cover.degrees(m, c);
        table.push_back(json{{"character", galois_character_string(cover.characters()[c])},
                             {"degrees", r},
                             {"h0", cover.dimension(m, c)}});
      }
      a["eigensheaves"] = table;
    }
    maps.push_back(a);
  }
  j["maps"] = maps;
  return j;
}

json character_report(const CharacterMultiset& c) {
  json rows = json::array();
  for (const auto& [chi, mult] : c.mults)
    if (mult != 0) rows.push_back(json{{"character", to_string(chi)}, {"multiplicity", mult}});
  return json{{"group", c.group.name()}, {"total", c.total()}, {"characters", rows}};
}

json record_json(const FamilyRecord& r) {
  json j;
  j["group"] = r.group.name();
  j["kernel_orders"] = r.kernel_orders;
  j["types"] = json::array();
  for (const auto& t : r.types) j["types"].push_back(t.compact());
  j["genera"] = r.genera;
  j["chi_O"] = r.invariants.chi_O;
  j["K3"] = r.invariants.canonical_self_intersection;
  j["e"] = r.invariants.euler_number;
  j["hodge"] = hodge_json(r.invariants.hodge);
  j["minimal_realization"] = r.minimal_realization;
  json maps = json::array();
  for (const auto& [m, a] : r.analyses) {
    json aj = analysis_json(a);
    aj["status_criteria_only"] = to_string(view_status(a, RuleSet::CriteriaOnly));
    maps.push_back(aj);
  }
  j["maps"] = maps;
  j["datum"] = serialize_datum(r.representative);
  return j;
}

json table_json(const std::vector<TableRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json j;
    j["group"] = row.group.name();
    j["kernel_orders"] = row.kernel_orders;
    j["types"] = json::array();
    for (const auto& t : row.types) j["types"].push_back(t.compact());
    j["hodge"] = hodge_json(row.hodge);
    j["canonical"] = counts_json(row.canonical);
    j["bicanonical"] = counts_json(row.bicanonical);
    j["families"] = row.families;
    out.push_back(j);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find(',') == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string table_csv_header() {
  return "G,k1,k2,k3,T1,T2,T3,h30,h20,h10,h11,h21,"
         "m1_bpf,m1_bir,m1_nbir,m1_unknown,m2_bpf,m2_bir,m2_nbir,m2_unknown,families";
}

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows) {
  out << table_csv_header() << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.group.name());
    for (int k : r.kernel_orders) out << ',' << k;
    for (const auto& t : r.types) out << ',' << csv_field(t.compact());
    const auto& h = r.hodge;
    out << ',' << h.h30 << ',' << h.h20 << ',' << h.h10 << ',' << h.h11 << ',' << h.h21;
    for (const StatusCounts* c : {&r.canonical, &r.bicanonical})
      out << ',' << c->bpf << ',' << c->bir << ',' << c->nbir << ',' << c->unknown;
    out << ',' << r.families << '\n';
  }
}

void write_records_csv(std::ostream& out, const std::vector<FamilyRecord>& records) {
  out << "G,k1,k2,k3,T1,T2,T3,g1,g2,g3,h30,h20,h10,h11,h21,minimal";
  std::vector<int> ms;
  if (!records.empty())
    for (const auto& [m, a] : records.front().analyses) ms.push_back(m);
  for (int m : ms) out << ",P" << m << ",m" << m << "_bpf,m" << m << "_status";
  out << '\n';
  for (const auto& r : records) {
    out << csv_field(r.group.name());
    for (int k : r.kernel_orders) out << ',' << k;
    for (const auto& t : r.types) out << ',' << csv_field(t.compact());
    for (int g : r.genera) out << ',' << g;
    const auto& h = r.invariants.hodge;
    out << ',' << h.h30 << ',' << h.h20 << ',' << h.h10 << ',' << h.h11 << ',' << h.h21;
    out << ',' << (r.minimal_realization ? 1 : 0);
    for (int m : ms) {
      const auto& a = r.analyses.at(m);
      out << ',' << a.plurigenus << ',' << (a.bpf ? 1 : 0) << ',' << csv_field(a.status_string());
    }
    out << '\n';
  }
}

}  // namespace vipclass

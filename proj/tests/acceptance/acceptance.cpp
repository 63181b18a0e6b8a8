// Acceptance gate: one PASS/FAIL line per criterion. Exit status 1 if any
// criterion fails. PARTIAL marks a criterion checked on a reduced range only;
// INFO lines are observations that never fail the run.
//
// VIPCLASS_FULL_SCAN=1 extends the chi scan to chi = -7 (chi = -6 takes about
// 6 min on one core, chi = -7 several hours; the default stops at chi = -5).

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "support.hpp"
#include "vipclass/datum_io.hpp"
#include "vipclass/chevalley_weil.hpp"
#include "vipclass/cover_decomposition.hpp"
#include "vipclass/invariants.hpp"
#include "vipclass/pluri_maps.hpp"

using namespace vipclass;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int id, const std::string& verdict, const std::string& what) {
  if (verdict == "FAIL") ++failures;
  std::cout << verdict << " [" << id << "] " << what << std::endl;
}

void verdict(int id, bool ok, const std::string& what) { report(id, ok ? "PASS" : "FAIL", what); }

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s << " s";
  return o.str();
}

std::vector<FamilyRecord> chi_minus_one(KernelCheck check, int cap = 16) {
  SearchSpec s;
  s.chi_target = -1;
  s.max_group_order = cap;
  s.kernel_check = check;
  return classify(s);
}

void example_end_to_end() {
  const auto t0 = Clock::now();
  const AlgebraicDatum D = read_datum_file(testsupport::data_path("data/z2cubed_chi-8.json"));
  validate_datum(D);
  const InvariantSet inv = compute_invariants(D);
  const MapAnalysis a = map_status(D, 1);
  const double t = seconds_since(t0);
  const bool ok = inv.genera == std::vector<int>{5, 5, 5} && inv.chi_O == -8 &&
                  inv.canonical_self_intersection == 384 && a.plurigenus == 16 && a.bpf && a.separates_group &&
                  a.separates_base && a.status == MapStatus::Birational && a.normalization_flag && t < 1.0;
  std::ostringstream o;
  o << "(Z/2)^3 example: genera 5,5,5 chi " << inv.chi_O << " K3 " << inv.canonical_self_intersection << " P1 "
    << a.plurigenus << " bpf " << a.bpf << " sep " << a.separates_group << a.separates_base << " "
    << a.status_string() << " normalization " << a.normalization_flag << " in " << fmt(t);
  verdict(1, ok, o.str());
}

void canonical_character() {
  const AlgebraicDatum D = testsupport::z2cubed_chi8();
  const auto& V = D.vectors[0];
  const auto psi = curve_character(1, V);
  std::map<Character, std::int64_t> expected = {
      {Character{{1, 1, 1}}, 2}, {Character{{0, 1, 1}}, 1}, {Character{{1, 0, 1}}, 1}, {Character{{1, 1, 0}}, 1}};
  const auto sym = sym2_character(psi);
  const auto two = curve_character(2, V);
  bool ideal_trivial = true;
  std::int64_t trivial_part = 0;
  for (const auto& chi : characters(V.group)) {
    const std::int64_t d = sym[chi] - two[chi];
    if (chi == Character{std::vector<int>(V.group.rank(), 0)})
      trivial_part = d;
    else if (d != 0)
      ideal_trivial = false;
  }
  verdict(2, psi.mults == expected && ideal_trivial && trivial_part == 3,
          "canonical character of C_1 {(1,1,1):2,(0,1,1):1,(1,0,1):1,(1,1,0):1}; Sym^2 - bicanonical = " +
              std::to_string(trivial_part) + " x trivial");
}

bool matches_published(const std::vector<TableRow>& rows, const std::vector<testsupport::PublishedRow>& pub,
                       std::string& detail) {
  std::vector<char> used(rows.size(), 0);
  int missing = 0;
  for (const auto& p : pub) {
    bool found = false;
    for (std::size_t i = 0; i < rows.size() && !found; ++i)
      if (!used[i] && testsupport::same_shape(p, rows[i]) && rows[i].canonical == p.canonical &&
          rows[i].bicanonical == p.bicanonical)
        used[i] = 1, found = true;
    if (!found) {
      ++missing;
      detail += " row " + std::to_string(p.number) + " unmatched;";
    }
  }
  const int extra = static_cast<int>(std::count(used.begin(), used.end(), 0));
  if (extra) detail += " " + std::to_string(extra) + " computed rows not in the table;";
  return missing == 0 && extra == 0;
}

void table_reproduction(std::vector<FamilyRecord>& table_records) {
  const auto pub = testsupport::published_table();

  auto t0 = Clock::now();
  const auto small = chi_minus_one(KernelCheck::AdjacentPairs, 8);
  const double t_small = seconds_since(t0);
  std::set<std::string> small_groups;
  for (const auto& G : testsupport::groups_up_to(8)) small_groups.insert(G.name());
  std::vector<testsupport::PublishedRow> pub_small;
  for (const auto& p : pub)
    if (small_groups.count(p.group)) pub_small.push_back(p);
  std::string d_small;
  const bool ok_small = matches_published(summarize(small), pub_small, d_small) && t_small < 60;

  t0 = Clock::now();
  table_records = chi_minus_one(KernelCheck::AdjacentPairs);
  const double t_full = seconds_since(t0);
  const auto rows = summarize(table_records);
  std::string detail;
  const bool ok = matches_published(rows, pub, detail);
  int nonminimal = 0;
  for (const auto& r : table_records) nonminimal += !r.minimal_realization;

  bool row1 = false;
  for (const auto& r : rows)
    if (testsupport::same_shape(pub.front(), r))
      row1 = r.hodge == HodgeNumbers{4, 2, 0, 7, 12} && r.canonical == StatusCounts{0, 0, 9, 0} &&
             r.bicanonical == StatusCounts{9, 9, 0, 0};

  std::ostringstream o;
  o << "chi = -1 table (adjacent kernel pairs, ordered factors): " << rows.size() << "/" << pub.size()
    << " rows exact, " << table_records.size() << " families (" << nonminimal << " not minimal), row 1 "
    << (row1 ? "ok" : "wrong") << "; |G| <= 8 subset " << pub_small.size() << " rows in " << fmt(t_small)
    << (ok_small ? "" : " MISMATCH") << "; full run " << fmt(t_full) << detail;
  verdict(3, ok && ok_small && row1 && table_records.size() == 347, o.str());

  // Strict minimal realization: report per-row family deltas.
  const auto strict = summarize(chi_minus_one(KernelCheck::Minimal));
  int total = 0;
  std::string deltas;
  for (const auto& p : pub) {
    int got = 0;
    for (const auto& r : strict)
      if (testsupport::same_shape(p, r)) got += r.families;
    total += got;
    if (got != p.families())
      deltas += " row " + std::to_string(p.number) + ": " + std::to_string(got) + " vs " +
                std::to_string(p.families()) + ";";
  }
  report(3, "INFO", "strict minimal realization: " + std::to_string(total) + " families, " +
                        std::to_string(strict.size()) + " rows; deltas" + deltas);
}

void two_routes(const std::vector<FamilyRecord>& records) {
  int bad = 0, checked = 0;
  for (const auto& r : records) {
    const CoverDecomposition cover(r.representative);
    for (int m = 1; m <= 5; ++m, ++checked)
      if (vip_character(r.representative, m).total() != cover.pluri_dimension(m)) ++bad;
  }
  verdict(4, bad == 0 && checked == 347 * 5,
          "P_m by Kuenneth/Chevalley-Weil = P_m by eigensheaf decomposition: " + std::to_string(checked - bad) + "/" +
              std::to_string(checked) + " (family, m) pairs");
}

void dimension_identities() {
  std::mt19937 rng(20261016);
  const auto groups = testsupport::groups_up_to(16);
  std::uniform_int_distribution<std::size_t> pick(0, groups.size() - 1);
  int vectors = 0, bad = 0;
  while (vectors < 1000) {
    const AbelianGroup& G = groups[pick(rng)];
    const auto V = testsupport::random_vector(G, rng);
    if (!V || hurwitz_genus(G.order(), V->type) < 2) continue;
    ++vectors;
    const std::int64_t g = hurwitz_genus(G.order(), V->type);
    if (curve_character(1, *V).total() != g) ++bad;
    for (int m : {2, 3})
      if (curve_character(m, *V).total() != (2 * m - 1) * (g - 1)) ++bad;
  }
  verdict(5, bad == 0, std::to_string(vectors) + " random generating vectors (g >= 2), |G| <= 16: sum of multiplicities = g, "
                           "(2m-1)(g-1) for m = 2,3; " + std::to_string(bad) + " violations");
}

void riemann_roch(const std::vector<FamilyRecord>& records) {
  int bad = 0;
  for (const auto& r : records)
    for (int m = 2; m <= 5; ++m) {
      const std::int64_t rr = r.invariants.chi_O * (-4LL * m * (m - 1) * (2 * m - 1) + 1 - 2 * m);
      if (r.analyses.at(m).plurigenus != rr) ++bad;
    }
  verdict(6, bad == 0, "P_m = chi(O)(-4m(m-1)(2m-1)+1-2m), m = 2..5, over " + std::to_string(records.size()) +
                           " families; " + std::to_string(bad) + " violations");
}

void hodge_consistency(const std::vector<FamilyRecord>& records) {
  int bad = 0;
  for (const auto& r : records) {
    const auto& h = r.invariants.hodge;
    std::int64_t e = 1;
    for (int g : r.genera) e *= 2 - 2 * g;
    e /= r.group.order();
    if (1 - h.h10 + h.h20 - h.h30 != r.invariants.chi_O) ++bad;
    if (2 - 4 * h.h10 + 4 * h.h20 - 2 * h.h30 + 2 * h.h11 - 2 * h.h21 != r.invariants.euler_number) ++bad;
    if (e != r.invariants.euler_number) ++bad;
  }
  verdict(7, bad == 0, "chi(O) and e(X) Hodge identities, e = prod(2-2g_i)/|G|, over " +
                           std::to_string(records.size()) + " families; " + std::to_string(bad) + " violations");
}

// Largest |G| for which trivial-kernel families with this chi can exist: an
// abelian group acting on a genus-g curve with rational quotient has
// |G| <= 4g + 4, and |chi| = prod(g_i - 1)/|G|.
int order_cap(int chi) {
  int cap = 2;
  for (int x = 2; x <= 64; ++x) {
    const double lo = std::max(1.0, x / 4.0 - 2);
    if (lo * lo * lo <= x * static_cast<double>(-chi)) cap = x;
  }
  return cap;
}

int criteria_birational(int chi, int cap, std::size_t& families) {
  SearchSpec s;
  s.chi_target = chi;
  s.max_group_order = cap;
  s.allow_nontrivial_kernels = false;
  s.m_range = {1};
  const auto records = classify(s);
  families = records.size();
  int bir = 0;
  for (const auto& r : records) {
    const auto& a = r.analyses.at(1);
    if (a.status == MapStatus::Birational && a.reason == kReasonSeparation) ++bir;
  }
  return bir;
}

void chi_scan() {
  const char* env = std::getenv("VIPCLASS_FULL_SCAN");
  const bool full = env && std::string(env) == "1";
  const int last = full ? -7 : -5;
  bool ok = true;
  std::ostringstream o;
  o << "trivial kernels, |G| <= induced cap:";
  for (int chi = -1; chi >= last; --chi) {
    const auto t0 = Clock::now();
    std::size_t n = 0;
    const int cap = order_cap(chi);
    const int bir = criteria_birational(chi, cap, n);
    ok = ok && bir == 0;
    o << " chi " << chi << " (cap " << cap << ") " << n << " families " << bir << " birational " << fmt(seconds_since(t0))
      << ";";
  }
  std::size_t n8 = 0;
  const int bir8 = criteria_birational(-8, 8, n8);
  ok = ok && bir8 > 0;
  o << " chi -8 (|G| <= 8) " << n8 << " families " << bir8 << " birational";
  if (!full) o << "; chi -6, -7 not run (set VIPCLASS_FULL_SCAN=1)";
  report(8, !ok ? "FAIL" : full ? "PASS" : "PARTIAL", o.str());
}

void corpus_observations(const std::vector<FamilyRecord>& records) {
  int bpf2 = 0, crit3 = 0;
  for (const auto& r : records) {
    bpf2 += r.analyses.at(2).bpf;
    const auto& a = r.analyses.at(3);
    crit3 += a.separates_group && a.separates_base;
  }
  report(9, "INFO", "over " + std::to_string(records.size()) + " families: bicanonical bpf in " +
                        std::to_string(bpf2) + ", m = 3 criteria fire in " + std::to_string(crit3));
}

}  // namespace

int main() {
  try {
    example_end_to_end();
    canonical_character();
    std::vector<FamilyRecord> records;
    table_reproduction(records);
    two_routes(records);
    dimension_identities();
    riemann_roch(records);
    hodge_consistency(records);
    chi_scan();
    corpus_observations(records);
  } catch (const std::exception& e) {
    std::cout << "FAIL aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (failures ? "acceptance: FAILED " + std::to_string(failures) : std::string("acceptance: ok")) << std::endl;
  return failures ? 1 : 0;
}

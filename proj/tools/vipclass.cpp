// Command-line front end: analyze a datum file, classify, print characters.
// Exit codes: 0 success, 1 invalid input, 2 internal consistency failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vipclass/chevalley_weil.hpp"
#include "vipclass/classification.hpp"
#include "vipclass/datum_io.hpp"
#include "vipclass/errors.hpp"
#include "vipclass/report.hpp"

using namespace vipclass;

namespace {

// "1..5", "1-5", "1,2,4" or "3".
std::vector<int> parse_m_range(const std::string& text) {
  std::vector<int> out;
  auto dots = text.find("..");
  auto dash = text.find('-');
  try {
    if (dots != std::string::npos || (dash != std::string::npos && dash > 0)) {
      const auto cut = dots != std::string::npos ? dots : dash;
      const int lo = std::stoi(text.substr(0, cut));
      const int hi = std::stoi(text.substr(cut + (dots != std::string::npos ? 2 : 1)));
      for (int m = lo; m <= hi; ++m) out.push_back(m);
    } else {
      std::size_t pos = 0;
      while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stoi(text.substr(pos, comma - pos)));
        pos = comma + 1;
      }
    }
  } catch (const std::exception&) {
    throw ValidationError("cannot parse m range \"" + text + "\"");
  }
  if (out.empty()) throw ValidationError("empty m range \"" + text + "\"");
  for (int m : out)
    if (m < 1) throw ValidationError("m must be >= 1");
  return out;
}

int threads_from_env() {
  if (const char* v = std::getenv("VIPCLASS_THREADS")) {
    try {
      return std::max(0, std::stoi(v));
    } catch (const std::exception&) {
      throw ValidationError(std::string("VIPCLASS_THREADS is not a number: ") + v);
    }
  }
  return 0;
}

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ValidationError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct AnalyzeArgs {
  std::string path, m = "1..5", out;
  bool eigensheaves = false;
};

struct ClassifyArgs {
  int chi = -1, max_order = 16, threads = -1;
  std::string kernels = "allow", m = "1..5", format = "csv", out, filter, view = "criteria";
  std::string kernel_check = "minimal", equivalence = "ordered";
  bool records = false, progress = false;
};

struct CharacterArgs {
  std::string path, out;
  int curve = 1, m = 1;
};

int run_analyze(const AnalyzeArgs& a) {
  const AlgebraicDatum D = read_datum_file(a.path);
  validate_datum(D);
  Sink sink(a.out);
  sink.stream() << analysis_report(D, parse_m_range(a.m), a.eigensheaves).dump(2) << '\n';
  return 0;
}

int run_classify(const ClassifyArgs& a) {
  SearchSpec spec;
  spec.chi_target = a.chi;
  spec.max_group_order = a.max_order;
  spec.allow_nontrivial_kernels = a.kernels == "allow";
  spec.m_range = parse_m_range(a.m);
  spec.kernel_check = a.kernel_check == "table" ? KernelCheck::AdjacentPairs : KernelCheck::Minimal;
  spec.equivalence = a.equivalence == "unordered" ? FamilyEquivalence::UnorderedFactors
                                                  : FamilyEquivalence::OrderedFactors;
  spec.threads = a.threads >= 0 ? a.threads : threads_from_env();
  if (a.progress) spec.log = &std::cerr;
  const RuleSet view = a.view == "full" ? RuleSet::Full : RuleSet::CriteriaOnly;

  std::vector<FamilyRecord> records = classify(spec);
  if (a.filter == "birational-canonical") {
    std::erase_if(records, [&](const FamilyRecord& r) {
      auto it = r.analyses.find(1);
      return it == r.analyses.end() || view_status(it->second, view) != MapStatus::Birational;
    });
  }
  const auto rows = summarize(records, view);

  Sink sink(a.out);
  if (a.format == "json") {
    nlohmann::json j;
    j["chi"] = a.chi;
    j["max_order"] = a.max_order;
    j["families"] = records.size();
    j["view"] = a.view;
    j["table"] = table_json(rows);
    j["records"] = nlohmann::json::array();
    for (const auto& r : records) j["records"].push_back(record_json(r));
    sink.stream() << j.dump(2) << '\n';
  } else if (a.records) {
    write_records_csv(sink.stream(), records);
  } else {
    write_table_csv(sink.stream(), rows);
  }
  std::cerr << records.size() << " families in " << rows.size() << " rows\n";
  return 0;
}

int run_character(const CharacterArgs& a) {
  const AlgebraicDatum D = read_datum_file(a.path);
  if (a.curve < 1 || a.curve > D.n())
    throw ValidationError("curve index " + std::to_string(a.curve) + " out of range 1.." + std::to_string(D.n()));
  if (a.m < 1) throw ValidationError("m must be >= 1");
  validate_datum(D);
  Sink sink(a.out);
  auto j = character_report(curve_character(a.m, D.vectors[a.curve - 1]));
  j["curve"] = a.curve;
  j["m"] = a.m;
  sink.stream() << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Varieties isogenous to a product with abelian group: analysis and classification"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Invariants and m-canonical map analysis of a datum file");
  an->add_option("path", analyze.path, "Datum file")->required();
  an->add_option("--m", analyze.m, "m values: 1..5, 1-5 or 1,2,4");
  an->add_flag("--eigensheaves", analyze.eigensheaves, "Include the eigensheaf table per m");
  an->add_option("--out", analyze.out, "Output file (default stdout)");

  ClassifyArgs cls;
  auto* cl = app.add_subcommand("classify", "Classify families for a target chi(O)");
  cl->add_option("--chi", cls.chi, "Target chi(O_X) <= -1")->required();
  cl->add_option("--max-order", cls.max_order, "Largest group order");
  cl->add_option("--kernels", cls.kernels, "allow | trivial")->check(CLI::IsMember({"allow", "trivial"}));
  cl->add_option("--m", cls.m, "m values: 1..5, 1-5 or 1,2,4");
  cl->add_option("--format", cls.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cl->add_option("--out", cls.out, "Output file (default stdout)");
  cl->add_option("--filter", cls.filter, "birational-canonical")->check(CLI::IsMember({"birational-canonical"}));
  cl->add_option("--view", cls.view, "Status columns: criteria | full")->check(CLI::IsMember({"criteria", "full"}));
  cl->add_option("--kernel-check", cls.kernel_check,
                 "minimal: all pairwise kernel intersections trivial; table: adjacent pairs only")
      ->check(CLI::IsMember({"minimal", "table"}));
  cl->add_option("--equivalence", cls.equivalence, "ordered | unordered (also swap equal factors)")
      ->check(CLI::IsMember({"ordered", "unordered"}));
  cl->add_option("--threads", cls.threads, "Worker threads (default VIPCLASS_THREADS or all cores)");
  cl->add_flag("--records", cls.records, "CSV: one line per family instead of the summary table");
  cl->add_flag("--progress", cls.progress, "Trace progress on stderr");

  CharacterArgs ch;
  auto* cc = app.add_subcommand("character", "Character of H^0(C_i, K^m) for one curve of a datum");
  cc->add_option("path", ch.path, "Datum file")->required();
  cc->add_option("--curve", ch.curve, "Curve index, 1-based");
  cc->add_option("--m", ch.m, "Power of the canonical bundle");
  cc->add_option("--out", ch.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*an) return run_analyze(analyze);
    if (*cl) return run_classify(cls);
    if (*cc) return run_character(ch);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

#include "vipclass/datum_io.hpp"

#include <fstream>
#include <sstream>

#include "vipclass/errors.hpp"

namespace vipclass {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError(field + ": " + what);
}

const json& member(const json& j, const std::string& key, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(field, "missing \"" + key + "\"");
  return *it;
}

const json& array_at(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array");
  return j;
}

int to_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

GroupElement to_element(const AbelianGroup& G, const json& j, const std::string& field) {
  array_at(j, field);
  if (static_cast<int>(j.size()) != G.rank())
    fail(field, "expected " + std::to_string(G.rank()) + " coordinates for " + G.name());
  std::vector<std::int64_t> coords;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const int c = to_int(j[k], field + "[" + std::to_string(k) + "]");
    if (c < 0 || c >= G.factors()[k])
      fail(field, "coordinate " + std::to_string(c) + " out of range [0, " + std::to_string(G.factors()[k]) + ")");
    coords.push_back(c);
  }
  return G.reduce(coords);
}

std::vector<GroupElement> to_elements(const AbelianGroup& G, const json& j, const std::string& field) {
  array_at(j, field);
  std::vector<GroupElement> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(to_element(G, j[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

json element_json(const GroupElement& g) { return json(g.coords); }

}  // namespace

AlgebraicDatum parse_datum(const json& j) {
  if (!j.is_object()) fail("datum", "expected an object");
  const json& gj = array_at(member(j, "group", "datum"), "group");
  std::vector<int> factors;
  for (std::size_t k = 0; k < gj.size(); ++k) {
    const int d = to_int(gj[k], "group[" + std::to_string(k) + "]");
    if (d < 1) fail("group[" + std::to_string(k) + "]", "invariant factors must be >= 1");
    factors.push_back(d);
  }
  AbelianGroup G;
  try {
    G = make_group(factors);
  } catch (const ValidationError& e) {
    fail("group", e.what());
  }

  std::string mode = "ambient";
  if (auto it = j.find("coords"); it != j.end()) {
    if (!it->is_string()) fail("coords", "expected \"ambient\" or \"quotient\"");
    mode = it->get<std::string>();
    if (mode != "ambient" && mode != "quotient") fail("coords", "expected \"ambient\" or \"quotient\", got \"" + mode + "\"");
  }

  const json& vj = array_at(member(j, "vectors", "datum"), "vectors");
  const std::size_t n = vj.size();
  if (n == 0) fail("vectors", "at least one vector is required");
  if (auto it = j.find("n"); it != j.end() && to_int(*it, "n") != static_cast<int>(n))
    fail("n", "says " + std::to_string(it->get<int>()) + " but " + std::to_string(n) + " vectors are given");

  std::vector<Subgroup> kernels;
  if (auto it = j.find("kernels"); it != j.end()) {
    array_at(*it, "kernels");
    if (it->size() != n) fail("kernels", "expected " + std::to_string(n) + " entries, one per vector");
    for (std::size_t i = 0; i < n; ++i)
      kernels.push_back(subgroup_generated(G, to_elements(G, (*it)[i], "kernels[" + std::to_string(i) + "]")));
  } else {
    kernels.assign(n, trivial_subgroup(G));
  }

  std::vector<GeneratingVector> vectors;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string field = "vectors[" + std::to_string(i) + "]";
    const json& v = vj[i];
    const json& tj = member(v, "type", field);
    if (!tj.is_string()) fail(field + ".type", "expected a string like \"[0; 2,2,3]\"");
    BranchingType type;
    try {
      type = BranchingType::parse(tj.get<std::string>());
    } catch (const ValidationError& e) {
      fail(field + ".type", e.what());
    }
    const Quotient q = quotient(G, kernels[i]);
    const AbelianGroup& target = mode == "ambient" ? G : q.group;
    auto convert = [&](const json& list, const std::string& f) {
      auto elems = to_elements(target, list, f);
      if (mode == "ambient")
        for (auto& x : elems) x = q.projection(x);
      return elems;
    };
    GeneratingVector V{q.group, type, {}, {}};
    V.branch = convert(member(v, "elements", field), field + ".elements");
    if (auto it = v.find("hyperbolic"); it != v.end()) V.hyperbolic = convert(*it, field + ".hyperbolic");
    vectors.push_back(std::move(V));
  }
  return make_datum(G, std::move(kernels), std::move(vectors));
}

AlgebraicDatum parse_datum_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("datum is not valid JSON: ") + e.what());
  }
  return parse_datum(j);
}

AlgebraicDatum read_datum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_datum_text(buf.str());
}

json serialize_datum(const AlgebraicDatum& D) {
  json j;
  j["group"] = D.group.factors();
  j["n"] = D.n();
  j["coords"] = "quotient";
  json kernels = json::array();
  for (const auto& K : D.kernels) {
    json gens = json::array();
    for (const auto& g : K.generators())
      if (g != D.group.zero()) gens.push_back(element_json(g));
    kernels.push_back(gens);
  }
  j["kernels"] = kernels;
  json vectors = json::array();
  for (const auto& V : D.vectors) {
    json v;
    v["type"] = V.type.str();
    v["elements"] = json::array();
    for (const auto& h : V.branch) v["elements"].push_back(element_json(h));
    if (!V.hyperbolic.empty()) {
      v["hyperbolic"] = json::array();
      for (const auto& h : V.hyperbolic) v["hyperbolic"].push_back(element_json(h));
    }
    vectors.push_back(v);
  }
  j["vectors"] = vectors;
  return j;
}

}  // namespace vipclass

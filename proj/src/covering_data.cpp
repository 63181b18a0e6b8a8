#include "vipclass/covering_data.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "vipclass/errors.hpp"

namespace vipclass {

// ---------------------------------------------------------------- BranchingType

BranchingType::BranchingType(int g_prime, std::vector<int> idx)
    : genus_prime(g_prime), indices(std::move(idx)) {
  if (genus_prime < 0) throw ValidationError("branching type: g' must be >= 0");
  for (int n : indices)
    if (n < 2) throw ValidationError("branching type: indices must be >= 2");
  if (!std::is_sorted(indices.begin(), indices.end()))
    throw ValidationError("branching type: indices must be nondecreasing");
}

std::string BranchingType::str() const {
  std::ostringstream out;
  out << '[' << genus_prime << ';';
  for (std::size_t i = 0; i < indices.size(); ++i) out << (i ? "," : " ") << indices[i];
  out << ']';
  return out.str();
}

std::string BranchingType::compact() const {
  std::ostringstream out;
  std::size_t i = 0;
  while (i < indices.size()) {
    std::size_t j = i;
    while (j < indices.size() && indices[j] == indices[i]) ++j;
    if (i) out << ' ';
    out << indices[i];
    if (j - i > 1) out << '^' << (j - i);
    i = j;
  }
  if (genus_prime > 0) out << " (g'=" << genus_prime << ')';
  return out.str();
}

BranchingType BranchingType::parse(std::string_view text) {
  auto fail = [&]() -> BranchingType {
    throw ValidationError("cannot parse branching type \"" + std::string(text) + "\"");
  };
  std::vector<int> numbers;
  std::size_t semicolon = text.find(';');
  if (text.empty() || text.front() != '[' || text.back() != ']' || semicolon == std::string_view::npos)
    return fail();
  std::size_t pos = 1;
  auto read_int = [&](std::size_t end) -> std::optional<int> {
    while (pos < end && (text[pos] == ' ' || text[pos] == ',')) ++pos;
    if (pos >= end) return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, value);
    if (ec != std::errc()) fail();
    pos = static_cast<std::size_t>(ptr - text.data());
    return value;
  };
  auto g = read_int(semicolon);
  if (!g) return fail();
  while (pos < semicolon && text[pos] == ' ') ++pos;
  if (pos != semicolon) return fail();
  pos = semicolon + 1;
  const std::size_t end = text.size() - 1;
  while (auto v = read_int(end)) numbers.push_back(*v);
  while (pos < end && text[pos] == ' ') ++pos;
  if (pos != end) return fail();
  return BranchingType(*g, numbers);
}

int hurwitz_genus(int group_order, const BranchingType& type) {
  std::int64_t l = 1;
  for (int n : type.indices) l = std::lcm(l, static_cast<std::int64_t>(n));
  std::int64_t num = (2 * static_cast<std::int64_t>(type.genus_prime) - 2) * l;
  for (int n : type.indices) num += (n - 1) * (l / n);
  num *= group_order;  // = (2g - 2) * l
  if (num % (2 * l) != 0)
    throw ValidationError("Hurwitz formula gives a non-integral genus for |H| = " +
                          std::to_string(group_order) + ", type " + type.str());
  std::int64_t g = num / (2 * l) + 1;
  if (g < 0)
    throw ValidationError("Hurwitz formula gives a negative genus for |H| = " +
                          std::to_string(group_order) + ", type " + type.str());
  return static_cast<int>(g);
}

// ---------------------------------------------------------------- generating vectors

VectorCheck check_generating_vector(const AbelianGroup& G, const GeneratingVector& V) {
  auto fail = [](VectorViolation v, std::string detail) { return VectorCheck{v, std::move(detail)}; };
  if (V.branch.size() != V.type.indices.size())
    return fail(VectorViolation::WrongLength, "expected " + std::to_string(V.type.indices.size()) +
                                                  " branch elements, got " + std::to_string(V.branch.size()));
  if (V.hyperbolic.size() != 2 * static_cast<std::size_t>(V.type.genus_prime))
    return fail(VectorViolation::WrongLength, "expected " + std::to_string(2 * V.type.genus_prime) +
                                                  " hyperbolic elements, got " +
                                                  std::to_string(V.hyperbolic.size()));
  std::vector<GroupElement> gens = V.hyperbolic;
  for (const auto& h : V.branch) gens.push_back(h);
  for (const auto& x : gens)
    if (!G.contains(x)) return fail(VectorViolation::InvalidElement, to_string(x) + " is not in " + G.name());

  // Commutators vanish in an abelian group: the product-one relation is
  // sum h_i = 0.
  GroupElement sum = G.zero();
  for (std::size_t i = 0; i < V.branch.size(); ++i) {
    int ord = element_order(G, V.branch[i]);
    if (ord != V.type.indices[i])
      return fail(VectorViolation::WrongOrder, "entry " + std::to_string(i + 1) + " = " +
                                                   to_string(V.branch[i]) + " has order " +
                                                   std::to_string(ord) + ", expected " +
                                                   std::to_string(V.type.indices[i]));
    sum = G.add(sum, V.branch[i]);
  }
  if (sum != G.zero())
    return fail(VectorViolation::ProductNotOne, "branch elements sum to " + to_string(sum));
  if (subgroup_generated(G, gens).order() != G.order())
    return fail(VectorViolation::NotGenerating, "elements do not generate " + G.name());
  return {};
}

bool is_generating_vector(const AbelianGroup& G, const GeneratingVector& V) {
  return check_generating_vector(G, V).ok();
}

void for_each_generating_vector(const AbelianGroup& G, const BranchingType& type,
                                const std::function<bool(const GeneratingVector&)>& fn) {
  if (type.genus_prime != 0)
    throw ScopeError("generating-vector enumeration supports only g' = 0, got " + type.str());
  const int r = type.branch_count();
  if (r == 0) {
    if (G.is_trivial()) fn(GeneratingVector{G, type, {}, {}});
    return;
  }
  const auto elems = G.elements();
  std::map<int, std::vector<int>> by_order;
  for (int x = 0; x < G.order(); ++x) by_order[element_order(G, elems[x])].push_back(x);

  std::vector<int> chosen(r);
  std::vector<GroupElement> partial(r + 1, G.zero());
  bool stop = false;
  std::function<void(int)> rec = [&](int pos) {
    if (stop) return;
    if (pos == r - 1) {
      GroupElement last = G.negate(partial[pos]);
      if (element_order(G, last) != type.indices[pos]) return;
      GeneratingVector V{G, type, {}, {}};
      for (int i = 0; i < r - 1; ++i) V.branch.push_back(elems[chosen[i]]);
      V.branch.push_back(last);
      if (subgroup_generated(G, V.branch).order() != G.order()) return;
      if (!fn(V)) stop = true;
      return;
    }
    for (int x : by_order[type.indices[pos]]) {
      chosen[pos] = x;
      partial[pos + 1] = G.add(partial[pos], elems[x]);
      rec(pos + 1);
      if (stop) return;
    }
  };
  rec(0);
}

std::vector<GeneratingVector> enumerate_generating_vectors(const AbelianGroup& G,
                                                           const BranchingType& type) {
  std::vector<GeneratingVector> out;
  for_each_generating_vector(G, type, [&](const GeneratingVector& V) {
    out.push_back(V);
    return true;
  });
  return out;
}

std::vector<GroupElement> stabilizer_set(const GeneratingVector& V) {
  std::set<GroupElement> out{V.group.zero()};
  for (const auto& h : V.branch) {
    GroupElement x = h;
    while (x != V.group.zero()) {
      out.insert(x);
      x = V.group.add(x, h);
    }
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------- algebraic data

AlgebraicDatum make_datum(const AbelianGroup& G, std::vector<Subgroup> kernels,
                          std::vector<GeneratingVector> vectors) {
  if (kernels.size() != vectors.size())
    throw ValidationError("datum needs one kernel per generating vector");
  AlgebraicDatum D;
  D.group = G;
  for (const auto& K : kernels) {
    if (K.parent() != G) throw ValidationError("kernel is not a subgroup of " + G.name());
    Quotient q = quotient(G, K);
    D.projections.push_back(q.projection);
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].group != D.projections[i].target())
      throw ValidationError("vector " + std::to_string(i + 1) + " is over " + vectors[i].group.name() +
                            " but G/K_" + std::to_string(i + 1) + " is " +
                            D.projections[i].target().name());
  }
  D.kernels = std::move(kernels);
  D.vectors = std::move(vectors);
  return D;
}

AlgebraicDatum make_datum_from_ambient(const AbelianGroup& G, std::vector<Subgroup> kernels,
                                       const std::vector<BranchingType>& types,
                                       const std::vector<std::vector<GroupElement>>& branch,
                                       const std::vector<std::vector<GroupElement>>& hyperbolic) {
  if (types.size() != kernels.size() || branch.size() != kernels.size())
    throw ValidationError("datum needs one kernel, type and vector per curve");
  std::vector<GeneratingVector> vectors;
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    Quotient q = quotient(G, kernels[i]);
    GeneratingVector V{q.group, types[i], {}, {}};
    for (const auto& x : branch[i]) {
      if (!G.contains(x)) throw ValidationError(to_string(x) + " is not in " + G.name());
      V.branch.push_back(q.projection(x));
    }
    if (i < hyperbolic.size())
      for (const auto& x : hyperbolic[i]) {
        if (!G.contains(x)) throw ValidationError(to_string(x) + " is not in " + G.name());
        V.hyperbolic.push_back(q.projection(x));
      }
    vectors.push_back(std::move(V));
  }
  return make_datum(G, std::move(kernels), std::move(vectors));
}

std::vector<GroupElement> lifted_stabilizer_set(const AlgebraicDatum& D, int i) {
  return D.projections.at(i).preimage(stabilizer_set(D.vectors.at(i)));
}

namespace {

// Nonidentity elements of G lying in every lifted stabilizer set.
std::vector<GroupElement> shared_stabilizers(const AlgebraicDatum& D) {
  std::vector<GroupElement> common = D.group.elements();
  for (int i = 0; i < D.n(); ++i) {
    auto lifted = lifted_stabilizer_set(D, i);
    std::vector<GroupElement> next;
    std::set_intersection(common.begin(), common.end(), lifted.begin(), lifted.end(),
                          std::back_inserter(next));
    common = std::move(next);
  }
  common.erase(std::remove(common.begin(), common.end(), D.group.zero()), common.end());
  return common;
}

}  // namespace

bool is_free_action(const AlgebraicDatum& D) { return shared_stabilizers(D).empty(); }

bool is_minimal_realization(const std::vector<Subgroup>& kernels) {
  const std::size_t n = kernels.size();
  if (n < 2) return n == 0 || kernels[0].is_trivial();
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<Subgroup> acc;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      acc = acc ? intersect(*acc, kernels[j]) : kernels[j];
    }
    if (!acc->is_trivial()) return false;
  }
  return true;
}

std::vector<int> curve_genera(const AlgebraicDatum& D) {
  std::vector<int> out;
  for (int i = 0; i < D.n(); ++i) {
    int g = hurwitz_genus(D.factor_group(i).order(), D.vectors[i].type);
    if (g <= 1)
      throw ValidationError("curve " + std::to_string(i + 1) + " has genus " + std::to_string(g) +
                            " (a product of curves of genus >= 2 is required)");
    out.push_back(g);
  }
  return out;
}

void validate_datum(const AlgebraicDatum& D) {
  if (D.n() < 1) throw ValidationError("datum has no curves");
  for (int i = 0; i < D.n(); ++i) {
    VectorCheck c = check_generating_vector(D.factor_group(i), D.vectors[i]);
    if (!c) throw ValidationError("vector " + std::to_string(i + 1) + " is not a generating vector: " + c.detail);
  }
  curve_genera(D);
  if (!is_minimal_realization(D.kernels))
    throw ValidationError("minimality violated: the kernels of all but one factor intersect nontrivially");
  auto shared = shared_stabilizers(D);
  if (!shared.empty())
    throw ValidationError("freeness violated: shared stabilizer <" + to_string(shared.front()) + ">");
}

}  // namespace vipclass

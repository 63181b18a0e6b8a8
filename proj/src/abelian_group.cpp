#include "vipclass/abelian_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "vipclass/errors.hpp"

namespace vipclass {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v[i];
  }
  out << ')';
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------- QZ

QZ::QZ(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw ValidationError("QZ: denominator must be positive");
  num = floor_mod(num, den);
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = den;
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

QZ QZ::operator+(const QZ& o) const {
  std::int64_t l = std::lcm(den_, o.den_);
  return QZ(num_ * (l / den_) + o.num_ * (l / o.den_), l);
}

QZ QZ::operator-(const QZ& o) const { return *this + (-o); }

QZ QZ::operator-() const { return QZ(-num_, den_); }

std::int64_t QZ::exponent_over(std::int64_t modulus) const {
  if (modulus % den_ != 0)
    throw ConsistencyError("QZ " + str() + " has no exponent over " + std::to_string(modulus));
  return num_ * (modulus / den_);
}

std::string QZ::str() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string to_string(const GroupElement& g) { return join_ints(g.coords); }
std::string to_string(const Character& chi) { return join_ints(chi.exponents); }

// ---------------------------------------------------------------- AbelianGroup

AbelianGroup::AbelianGroup(std::vector<int> invariant_factors) {
  for (int d : invariant_factors) {
    if (d < 1) throw ValidationError("invariant factors must be >= 1");
    if (d > 1) factors_.push_back(d);
  }
  for (std::size_t i = 1; i < factors_.size(); ++i) {
    if (factors_[i] % factors_[i - 1] != 0)
      throw ValidationError("invariant factors violate the divisibility chain: " +
                            join_ints(factors_));
  }
  strides_.assign(factors_.size(), 1);
  order_ = 1;
  for (int i = rank() - 1; i >= 0; --i) {
    strides_[i] = order_;
    order_ *= factors_[i];
  }
}

AbelianGroup make_group(std::vector<int> invariant_factors) {
  return AbelianGroup(std::move(invariant_factors));
}

GroupElement AbelianGroup::zero() const { return GroupElement{std::vector<int>(factors_.size(), 0)}; }

GroupElement AbelianGroup::basis(int i) const {
  GroupElement e = zero();
  e.coords.at(i) = 1;
  return e;
}

bool AbelianGroup::contains(const GroupElement& g) const {
  if (g.coords.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (g.coords[i] < 0 || g.coords[i] >= factors_[i]) return false;
  return true;
}

int AbelianGroup::index_of(const GroupElement& g) const {
  if (!contains(g)) throw ValidationError("element " + to_string(g) + " is not in " + name());
  int idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) idx += g.coords[i] * strides_[i];
  return idx;
}

GroupElement AbelianGroup::element_at(int index) const {
  GroupElement g = zero();
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    g.coords[i] = index / strides_[i];
    index %= strides_[i];
  }
  return g;
}

std::vector<GroupElement> AbelianGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order_);
  for (int i = 0; i < order_; ++i) out.push_back(element_at(i));
  return out;
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  GroupElement c = zero();
  for (std::size_t i = 0; i < factors_.size(); ++i)
    c.coords[i] = (a.coords[i] + b.coords[i]) % factors_[i];
  return c;
}

GroupElement AbelianGroup::negate(const GroupElement& a) const {
  GroupElement c = zero();
  for (std::size_t i = 0; i < factors_.size(); ++i)
    c.coords[i] = static_cast<int>(floor_mod(-a.coords[i], factors_[i]));
  return c;
}

GroupElement AbelianGroup::scale(std::int64_t k, const GroupElement& a) const {
  GroupElement c = zero();
  for (std::size_t i = 0; i < factors_.size(); ++i)
    c.coords[i] = static_cast<int>(floor_mod(k * a.coords[i], factors_[i]));
  return c;
}

GroupElement AbelianGroup::reduce(const std::vector<std::int64_t>& coords) const {
  if (coords.size() != factors_.size())
    throw ValidationError("coordinate tuple has wrong length for " + name());
  GroupElement c = zero();
  for (std::size_t i = 0; i < factors_.size(); ++i)
    c.coords[i] = static_cast<int>(floor_mod(coords[i], factors_[i]));
  return c;
}

std::string AbelianGroup::name() const {
  if (factors_.empty()) return "1";
  std::ostringstream out;
  std::size_t i = 0;
  bool first = true;
  while (i < factors_.size()) {
    std::size_t j = i;
    while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
    if (!first) out << 'x';
    first = false;
    out << 'Z' << factors_[i];
    if (j - i > 1) out << '^' << (j - i);
    i = j;
  }
  return out.str();
}

int element_order(const AbelianGroup& G, const GroupElement& g) {
  int ord = 1;
  for (int i = 0; i < G.rank(); ++i) {
    int d = G.factors()[i];
    ord = std::lcm(ord, d / std::gcd(d, g.coords[i]));
  }
  return ord;
}

// ---------------------------------------------------------------- characters

std::vector<Character> characters(const AbelianGroup& G) {
  std::vector<Character> out;
  out.reserve(G.order());
  for (const auto& g : G.elements()) out.push_back(Character{g.coords});
  return out;
}

QZ eval_character(const AbelianGroup& G, const Character& chi, const GroupElement& g) {
  const std::int64_t e = G.exponent();
  std::int64_t acc = 0;
  for (int i = 0; i < G.rank(); ++i)
    acc += static_cast<std::int64_t>(chi.exponents[i]) * g.coords[i] * (e / G.factors()[i]);
  return QZ(acc, e);
}

Character add_characters(const AbelianGroup& G, const Character& a, const Character& b) {
  return Character{G.add(GroupElement{a.exponents}, GroupElement{b.exponents}).coords};
}

Character negate_character(const AbelianGroup& G, const Character& a) {
  return Character{G.negate(GroupElement{a.exponents}).coords};
}

int character_order(const AbelianGroup& G, const Character& chi) {
  return element_order(G, GroupElement{chi.exponents});
}

int character_index(const AbelianGroup& G, const Character& chi) {
  return G.index_of(GroupElement{chi.exponents});
}

// ---------------------------------------------------------------- subgroups

Subgroup::Subgroup(AbelianGroup parent, std::vector<GroupElement> generators)
    : parent_(std::move(parent)), generators_(std::move(generators)) {
  std::set<GroupElement> seen{parent_.zero()};
  std::vector<GroupElement> frontier{parent_.zero()};
  for (const auto& g : generators_)
    if (!parent_.contains(g)) throw ValidationError("generator " + to_string(g) + " not in " + parent_.name());
  while (!frontier.empty()) {
    GroupElement x = frontier.back();
    frontier.pop_back();
    for (const auto& g : generators_) {
      GroupElement y = parent_.add(x, g);
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  elements_.assign(seen.begin(), seen.end());
}

bool Subgroup::contains(const GroupElement& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

Subgroup subgroup_generated(const AbelianGroup& G, const std::vector<GroupElement>& gens) {
  return Subgroup(G, gens);
}

Subgroup trivial_subgroup(const AbelianGroup& G) { return Subgroup(G, {}); }

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<GroupElement> common;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                        b.elements().end(), std::back_inserter(common));
  return Subgroup(a.parent(), common);
}

// ---------------------------------------------------------------- Smith normal form

SmithForm smith_normal_form(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  IntMatrix v(cols, std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1;

  auto swap_cols = [&](std::size_t p, std::size_t q) {
    for (auto& row : a) std::swap(row[p], row[q]);
    for (auto& row : v) std::swap(row[p], row[q]);
  };
  // col_q -= f * col_p
  auto sub_col = [&](std::size_t q, std::size_t p, std::int64_t f) {
    for (auto& row : a) row[q] -= f * row[p];
    for (auto& row : v) row[q] -= f * row[p];
  };
  auto sub_row = [&](std::size_t q, std::size_t p, std::int64_t f) {
    for (std::size_t j = 0; j < cols; ++j) a[q][j] -= f * a[p][j];
  };

  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::size_t pi = rows, pj = cols;
      std::int64_t best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
            best = std::llabs(a[i][j]);
            pi = i;
            pj = j;
          }
      if (best == 0) goto done;
      std::swap(a[t], a[pi]);
      if (pj != t) swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        sub_row(i, t, a[i][t] / a[t][t]);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        sub_col(j, t, a[t][j] / a[t][t]);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the remaining block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = 0; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a[t][t] < 0)
      for (auto& x : a[t]) x = -x;
  }
done:
  SmithForm out;
  out.column_transform = std::move(v);
  for (std::size_t t = 0; t < n; ++t) out.diagonal.push_back(a[t][t]);
  return out;
}

AbelianGroup abelianize(const IntMatrix& relations) {
  if (relations.empty()) throw ValidationError("abelianize: empty relation matrix (infinite group)");
  SmithForm snf = smith_normal_form(relations);
  std::vector<int> factors;
  if (snf.diagonal.size() < relations[0].size())
    throw ValidationError("abelianize: relations do not define a finite group");
  for (auto d : snf.diagonal) {
    if (d == 0) throw ValidationError("abelianize: relations do not define a finite group");
    factors.push_back(static_cast<int>(d));
  }
  return AbelianGroup(factors);
}

// ---------------------------------------------------------------- quotients

QuotientMap::QuotientMap(AbelianGroup source, AbelianGroup target,
                         std::vector<std::vector<std::int64_t>> transform)
    : source_(std::move(source)), target_(std::move(target)), transform_(std::move(transform)) {}

GroupElement QuotientMap::operator()(const GroupElement& g) const {
  std::vector<std::int64_t> y(target_.rank(), 0);
  for (int i = 0; i < source_.rank(); ++i)
    for (int j = 0; j < target_.rank(); ++j) y[j] += g.coords[i] * transform_[i][j];
  return target_.reduce(y);
}

std::vector<GroupElement> QuotientMap::preimage(const std::vector<GroupElement>& targets) const {
  std::set<GroupElement> wanted(targets.begin(), targets.end());
  std::vector<GroupElement> out;
  for (const auto& g : source_.elements())
    if (wanted.count((*this)(g))) out.push_back(g);
  return out;
}

Subgroup QuotientMap::kernel() const {
  return Subgroup(source_, preimage({target_.zero()}));
}

Quotient quotient(const AbelianGroup& G, const Subgroup& K) {
  const int k = G.rank();
  if (k == 0) return {AbelianGroup(), QuotientMap(G, AbelianGroup(), {})};
  IntMatrix rel;
  for (int i = 0; i < k; ++i) {
    std::vector<std::int64_t> row(k, 0);
    row[i] = G.factors()[i];
    rel.push_back(row);
  }
  for (const auto& g : K.generators()) rel.emplace_back(g.coords.begin(), g.coords.end());
  SmithForm snf = smith_normal_form(rel);

  std::vector<int> factors;
  std::vector<std::vector<std::int64_t>> transform(k);
  for (int j = 0; j < k; ++j) {
    if (snf.diagonal[j] <= 1) continue;
    factors.push_back(static_cast<int>(snf.diagonal[j]));
    for (int i = 0; i < k; ++i) transform[i].push_back(snf.column_transform[i][j]);
  }
  AbelianGroup target(factors);
  return {target, QuotientMap(G, target, std::move(transform))};
}

// ---------------------------------------------------------------- subgroup lattices

std::vector<Subgroup> cyclic_subgroups(const AbelianGroup& G) {
  std::map<std::vector<GroupElement>, GroupElement> by_elements;
  for (const auto& g : G.elements()) {
    Subgroup H(G, {g});
    auto it = by_elements.find(H.elements());
    if (it == by_elements.end()) by_elements.emplace(H.elements(), g);
    // Elements arrive in lexicographic order, so the first generator of full
    // order found is the least one.
  }
  std::vector<Subgroup> out;
  for (const auto& [elems, gen] : by_elements) {
    GroupElement canonical = gen;
    for (const auto& x : elems)
      if (element_order(G, x) == static_cast<int>(elems.size())) {
        canonical = x;
        break;
      }
    out.emplace_back(G, std::vector<GroupElement>{canonical});
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.generators() < b.generators();
  });
  return out;
}

std::vector<Subgroup> all_subgroups(const AbelianGroup& G) {
  std::set<std::vector<GroupElement>> seen;
  std::vector<Subgroup> found{trivial_subgroup(G)};
  seen.insert(found[0].elements());
  for (std::size_t idx = 0; idx < found.size(); ++idx) {
    for (const auto& g : G.elements()) {
      if (found[idx].contains(g)) continue;
      auto gens = found[idx].generators();
      gens.push_back(g);
      Subgroup H(G, gens);
      if (seen.insert(H.elements()).second) found.push_back(std::move(H));
    }
  }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return found;
}

// ---------------------------------------------------------------- automorphisms

GroupElement Automorphism::operator()(const AbelianGroup& G, const GroupElement& g) const {
  std::vector<std::int64_t> acc(G.rank(), 0);
  for (int i = 0; i < G.rank(); ++i)
    for (int j = 0; j < G.rank(); ++j)
      acc[j] += static_cast<std::int64_t>(g.coords[i]) * images[i].coords[j];
  return G.reduce(acc);
}

namespace {

// Calls fn(images, table) for every automorphism; table[x] = index of image.
template <typename Fn>
void for_each_automorphism(const AbelianGroup& G, int max_group_order, Fn&& fn) {
  if (G.order() > max_group_order)
    throw ScopeError("automorphism enumeration ceiling exceeded: |G| = " +
                     std::to_string(G.order()) + " > " + std::to_string(max_group_order));
  const int k = G.rank();
  const int order = G.order();
  const auto elems = G.elements();

  // candidates[i]: elements x with d_i * x = 0
  std::vector<std::vector<int>> candidates(k);
  for (int i = 0; i < k; ++i)
    for (int x = 0; x < order; ++x)
      if (G.factors()[i] % element_order(G, elems[x]) == 0) candidates[i].push_back(x);

  std::vector<std::vector<int>> add(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) add[a][b] = G.index_of(G.add(elems[a], elems[b]));

  std::vector<int> choice(k, 0);
  std::vector<int> table(order);
  std::vector<char> hit(order);
  for (;;) {
    // Evaluate the homomorphism x -> sum x_i * img_i incrementally in index order.
    bool injective = true;
    std::fill(hit.begin(), hit.end(), 0);
    for (int x = 0; x < order && injective; ++x) {
      int img = 0;
      const auto& c = elems[x].coords;
      for (int i = 0; i < k; ++i)
        for (int t = 0; t < c[i]; ++t) img = add[img][candidates[i][choice[i]]];
      if (hit[img]) injective = false;
      hit[img] = 1;
      table[x] = img;
    }
    if (injective) {
      std::vector<GroupElement> images;
      for (int i = 0; i < k; ++i) images.push_back(elems[candidates[i][choice[i]]]);
      fn(images, table);
    }
    int pos = k - 1;
    while (pos >= 0 && ++choice[pos] == static_cast<int>(candidates[pos].size())) choice[pos--] = 0;
    if (pos < 0) break;
  }
}

}  // namespace

std::vector<Automorphism> automorphisms(const AbelianGroup& G, int max_group_order) {
  std::vector<Automorphism> out;
  for_each_automorphism(G, max_group_order, [&](const std::vector<GroupElement>& images,
                                                const std::vector<int>&) {
    out.push_back(Automorphism{images});
  });
  return out;
}

std::vector<std::vector<int>> automorphism_tables(const AbelianGroup& G, int max_group_order) {
  std::vector<std::vector<int>> out;
  for_each_automorphism(G, max_group_order,
                        [&](const std::vector<GroupElement>&, const std::vector<int>& table) {
                          out.push_back(table);
                        });
  return out;
}

// ---------------------------------------------------------------- group catalogue

namespace {

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<AbelianGroup> abelian_groups_of_order(int order) {
  if (order < 1) throw ValidationError("group order must be positive");
  // Primary decomposition: one partition of the exponent per prime.
  std::vector<std::pair<int, int>> primes;
  int rest = order;
  for (int p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e) primes.emplace_back(p, e);
  }
  if (rest > 1) primes.emplace_back(rest, 1);

  std::vector<std::vector<int>> combos{{}};
  for (auto [p, e] : primes) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(e, e, cur, parts);
    std::vector<std::vector<int>> next;
    for (const auto& base : combos)
      for (const auto& part : parts) {
        // part is nonincreasing; combine into invariant factors from the top.
        std::vector<int> f = base;
        if (f.size() < part.size()) f.insert(f.begin(), part.size() - f.size(), 1);
        for (std::size_t i = 0; i < part.size(); ++i) {
          int pw = 1;
          for (int t = 0; t < part[i]; ++t) pw *= p;
          f[f.size() - 1 - i] *= pw;
        }
        next.push_back(f);
      }
    combos = std::move(next);
  }
  std::vector<AbelianGroup> out;
  for (auto& f : combos) out.emplace_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace vipclass

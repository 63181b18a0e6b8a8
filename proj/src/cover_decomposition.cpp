#include "vipclass/cover_decomposition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <boost/rational.hpp>

#include "vipclass/chevalley_weil.hpp"
#include "vipclass/errors.hpp"

namespace vipclass {

namespace {

// ceil(a / b) for b > 0.
int ceil_div(int a, int b) {
  int q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

int inverse_mod(int a, int n) {
  for (int x = 1; x < n; ++x)
    if ((static_cast<std::int64_t>(a) * x) % n == 1) return x;
  if (n == 1) return 0;
  throw ConsistencyError("no inverse of " + std::to_string(a) + " mod " + std::to_string(n));
}

void require_regular(const AlgebraicDatum& D) {
  for (const auto& V : D.vectors)
    if (V.type.genus_prime != 0)
      throw ScopeError("eigensheaf decomposition needs every quotient curve to be P^1 (g' = 0)");
}

}  // namespace

GaloisGroup::GaloisGroup(const AlgebraicDatum& D) {
  for (int i = 0; i < D.n(); ++i) factors_.push_back(D.factor_group(i));
  std::set<GaloisElement> image;
  for (const auto& g : D.group.elements()) {
    GaloisElement t;
    for (int i = 0; i < D.n(); ++i) t.push_back(D.projections[i](g));
    image.insert(std::move(t));
  }
  image_.assign(image.begin(), image.end());
  int product = 1;
  for (const auto& F : factors_) product *= F.order();
  if (product % static_cast<int>(image_.size()) != 0)
    throw ConsistencyError("diagonal image order does not divide the product order");
  order_ = product / static_cast<int>(image_.size());
}

GaloisElement GaloisGroup::add(const GaloisElement& a, const GaloisElement& b) const {
  GaloisElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = factors_[i].add(a[i], b[i]);
  return out;
}

GaloisElement GaloisGroup::scale(std::int64_t k, const GaloisElement& x) const {
  GaloisElement out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = factors_[i].scale(k, x[i]);
  return out;
}

GaloisElement GaloisGroup::canonical(const GaloisElement& x) const {
  GaloisElement best = add(x, image_.front());
  for (std::size_t s = 1; s < image_.size(); ++s) {
    GaloisElement y = add(x, image_[s]);
    if (y < best) best = std::move(y);
  }
  return best;
}

bool GaloisGroup::is_identity(const GaloisElement& x) const {
  return std::binary_search(image_.begin(), image_.end(), x);
}

int GaloisGroup::element_order(const GaloisElement& x) const {
  GaloisElement y = x;
  for (int k = 1;; ++k) {
    if (is_identity(y)) return k;
    y = add(y, x);
  }
}

std::vector<GaloisElement> GaloisGroup::nonidentity_elements() const {
  std::set<GaloisElement> reps;
  std::vector<std::vector<GroupElement>> elems;
  for (const auto& F : factors_) elems.push_back(F.elements());
  std::vector<std::size_t> idx(factors_.size(), 0);
  for (;;) {
    GaloisElement x;
    for (std::size_t i = 0; i < factors_.size(); ++i) x.push_back(elems[i][idx[i]]);
    if (!is_identity(x)) reps.insert(canonical(x));
    int pos = static_cast<int>(factors_.size()) - 1;
    while (pos >= 0 && ++idx[pos] == elems[pos].size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  if (static_cast<int>(reps.size()) != order_ - 1)
    throw ConsistencyError("coset enumeration of the Galois group is inconsistent");
  return {reps.begin(), reps.end()};
}

QZ GaloisGroup::eval(const GaloisCharacter& chi, const GaloisElement& x) const {
  QZ v;
  for (std::size_t i = 0; i < factors_.size(); ++i) v = v + eval_character(factors_[i], chi[i], x[i]);
  return v;
}

std::vector<BranchComponent> branch_data(const AlgebraicDatum& D) {
  require_regular(D);
  GaloisGroup Gbar(D);
  std::vector<BranchComponent> out;
  for (int j = 0; j < D.n(); ++j) {
    const auto& V = D.vectors[j];
    for (int i = 0; i < V.type.branch_count(); ++i) {
      BranchComponent b;
      b.factor = j;
      b.point = i;
      b.monodromy = V.branch[i];
      for (int f = 0; f < D.n(); ++f)
        b.lift.push_back(f == j ? V.branch[i] : D.factor_group(f).zero());
      const int n = V.type.indices[i];
      if (Gbar.element_order(b.lift) != n)
        throw ConsistencyError("stabilizer of a branch component has order " +
                               std::to_string(Gbar.element_order(b.lift)) + ", expected " +
                               std::to_string(n));
      int t0 = 1;
      GaloisElement best = Gbar.canonical(b.lift);
      for (int t = 2; t < n; ++t) {
        if (std::gcd(t, n) != 1) continue;
        GaloisElement y = Gbar.canonical(Gbar.scale(t, b.lift));
        if (y < best) {
          best = std::move(y);
          t0 = t;
        }
      }
      b.pair = StabPair{std::move(best), n, QZ(t0, n)};
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::vector<std::pair<StabPair, std::vector<BranchComponent>>> group_by_pair(
    const std::vector<BranchComponent>& components) {
  std::map<StabPair, std::vector<BranchComponent>> groups;
  for (const auto& b : components) groups[b.pair].push_back(b);
  return {groups.begin(), groups.end()};
}

int k_exponent(const GaloisGroup& Gbar, const StabPair& pair, const GaloisCharacter& chi) {
  const int n = pair.order;
  const std::int64_t a = Gbar.eval(chi, pair.generator).exponent_over(n);
  const std::int64_t t0 = pair.psi_value.exponent_over(n);
  return static_cast<int>((a * inverse_mod(static_cast<int>(t0), n)) % n);
}

int k_exponent(const GaloisGroup& Gbar, const BranchComponent& b, const GaloisCharacter& chi) {
  return static_cast<int>(Gbar.eval(chi, b.lift).exponent_over(b.order()));
}

RMu r_mu(int m, int stabilizer_order, int k) {
  if (m < 0) throw ValidationError("r_mu needs m >= 0");
  if (stabilizer_order < 1 || k < 0 || k >= stabilizer_order)
    throw ValidationError("r_mu needs 0 <= k < |H|");
  const int c = ceil_div(m - k, stabilizer_order);
  return RMu{k - m + c * stabilizer_order, m - c};
}

std::int64_t EigensheafDegrees::dimension() const {
  std::int64_t d = 1;
  for (auto r : degrees) d *= std::max<std::int64_t>(r + 1, 0);
  return d;
}

CoverDecomposition::CoverDecomposition(const AlgebraicDatum& D)
    : datum_(D), galois_(D), components_(branch_data(D)), characters_(galois_characters(D)) {
  if (static_cast<int>(characters_.size()) != galois_.order())
    throw ConsistencyError("character count of the Galois group differs from its order");
  using Rational = boost::rational<std::int64_t>;
  k_.assign(characters_.size(), std::vector<int>(components_.size(), 0));
  ldeg_.assign(characters_.size(), std::vector<std::int64_t>(D.n(), 0));
  for (std::size_t c = 0; c < characters_.size(); ++c) {
    std::vector<Rational> deg(D.n(), Rational(0));
    for (std::size_t b = 0; b < components_.size(); ++b) {
      const auto& comp = components_[b];
      const int n = comp.order();
      const int k = static_cast<int>(
          eval_character(D.factor_group(comp.factor), characters_[c][comp.factor], comp.monodromy)
              .exponent_over(n));
      k_[c][b] = k;
      deg[comp.factor] += Rational(k, n);
    }
    for (int j = 0; j < D.n(); ++j) {
      if (deg[j].denominator() != 1)
        throw ConsistencyError("deg L_chi is not an integer for character " + std::to_string(c) +
                               " in factor " + std::to_string(j));
      ldeg_[c][j] = deg[j].numerator();
    }
  }
}

int CoverDecomposition::character_index(const GaloisCharacter& chi) const {
  auto it = std::lower_bound(characters_.begin(), characters_.end(), chi);
  if (it == characters_.end() || *it != chi)
    throw ValidationError("not a character of the Galois group (must be trivial on G)");
  return static_cast<int>(it - characters_.begin());
}

std::vector<std::int64_t> CoverDecomposition::degrees(int m, std::size_t chi) const {
  std::vector<std::int64_t> r(datum_.n(), -2 * static_cast<std::int64_t>(m));
  for (std::size_t b = 0; b < components_.size(); ++b)
    r[components_[b].factor] += r_mu(m, components_[b].order(), k_[chi][b]).mu;
  for (int j = 0; j < datum_.n(); ++j) r[j] -= ldeg_[chi][j];
  return r;
}

std::int64_t CoverDecomposition::dimension(int m, std::size_t chi) const {
  std::int64_t d = 1;
  for (auto r : degrees(m, chi)) d *= std::max<std::int64_t>(r + 1, 0);
  return d;
}

std::vector<std::size_t> CoverDecomposition::constituents(int m) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < characters_.size(); ++c) {
    auto r = degrees(m, c);
    if (std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x >= 0; })) out.push_back(c);
  }
  return out;
}

std::int64_t CoverDecomposition::pluri_dimension(int m) const {
  std::int64_t total = 0;
  for (std::size_t c = 0; c < characters_.size(); ++c) total += dimension(m, c);
  return total;
}

bool CoverDecomposition::base_point_free(int m) const {
  const auto cons = constituents(m);
  if (cons.empty()) return false;
  const int n = datum_.n();
  // Stratum = one choice per factor in {none, point 0, ..., point r_j - 1},
  // encoded in mixed radix; choice 0 means "no branch point".
  std::vector<int> radix(n), first(n);
  std::size_t strata = 1;
  for (int j = 0; j < n; ++j) {
    radix[j] = datum_.vectors[j].type.branch_count() + 1;
    strata *= radix[j];
  }
  for (std::size_t b = components_.size(); b-- > 0;) first[components_[b].factor] = static_cast<int>(b);

  std::vector<char> covered(strata, 0);
  for (auto c : cons) {
    std::vector<std::vector<int>> allowed(n, std::vector<int>{0});
    for (std::size_t b = 0; b < components_.size(); ++b)
      if (r_mu(m, components_[b].order(), k_[c][b]).r == 0)
        allowed[components_[b].factor].push_back(components_[b].point + 1);
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      std::size_t code = 0;
      for (int j = 0; j < n; ++j) code = code * radix[j] + allowed[j][idx[j]];
      covered[code] = 1;
      int pos = n - 1;
      while (pos >= 0 && ++idx[pos] == allowed[pos].size()) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  for (std::size_t s = 1; s < strata; ++s)
    if (!covered[s]) return false;
  return true;
}

std::vector<std::int64_t> CoverDecomposition::l_degrees(std::size_t chi) const { return ldeg_[chi]; }

EigensheafDegrees eigensheaf_multidegree(const AlgebraicDatum& D, int m, const GaloisCharacter& chi) {
  CoverDecomposition cover(D);
  return EigensheafDegrees{chi, m, cover.degrees(m, cover.character_index(chi))};
}

std::vector<EigensheafDegrees> eigensheaf_table(const AlgebraicDatum& D, int m) {
  CoverDecomposition cover(D);
  std::vector<EigensheafDegrees> out;
  for (std::size_t c = 0; c < cover.characters().size(); ++c)
    out.push_back(EigensheafDegrees{cover.characters()[c], m, cover.degrees(m, c)});
  return out;
}

std::int64_t pluri_dimension(const AlgebraicDatum& D, int m) {
  return CoverDecomposition(D).pluri_dimension(m);
}

bool base_point_free(const AlgebraicDatum& D, int m) { return CoverDecomposition(D).base_point_free(m); }

bool dual_character_relation_check(const AlgebraicDatum& D, const GaloisCharacter& chi) {
  CoverDecomposition cover(D);
  const auto c = static_cast<std::size_t>(cover.character_index(chi));
  GaloisCharacter dual;
  for (int j = 0; j < D.n(); ++j) dual.push_back(negate_character(D.factor_group(j), chi[j]));
  const auto d = static_cast<std::size_t>(cover.character_index(dual));
  auto deg = cover.l_degrees(c);
  auto deg_dual = cover.l_degrees(d);
  std::vector<std::int64_t> nonzero(D.n(), 0);
  for (std::size_t b = 0; b < cover.components().size(); ++b)
    if (cover.k(c, b) != 0) ++nonzero[cover.components()[b].factor];
  for (int j = 0; j < D.n(); ++j)
    if (deg[j] + deg_dual[j] != nonzero[j]) return false;
  return true;
}

}  // namespace vipclass

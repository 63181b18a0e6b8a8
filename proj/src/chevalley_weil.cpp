#include "vipclass/chevalley_weil.hpp"

#include <boost/rational.hpp>

#include "vipclass/errors.hpp"

namespace vipclass {

using Rational = boost::rational<std::int64_t>;

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t branch_exponent(const Character& chi, const GeneratingVector& V, std::size_t i) {
  return eval_character(V.group, chi, V.branch[i]).exponent_over(V.type.indices[i]);
}

bool is_trivial(const Character& chi) {
  for (int c : chi.exponents)
    if (c) return false;
  return true;
}

}  // namespace

std::int64_t CharacterMultiset::operator[](const Character& chi) const {
  auto it = mults.find(chi);
  return it == mults.end() ? 0 : it->second;
}

std::int64_t CharacterMultiset::total() const {
  std::int64_t t = 0;
  for (const auto& [chi, m] : mults) t += m;
  return t;
}

std::int64_t VIPCharacter::total() const {
  std::int64_t t = 0;
  for (const auto& [chi, m] : mults) t += m;
  return t;
}

std::int64_t pluricanonical_multiplicity(const Character& chi, int m, const GeneratingVector& V) {
  if (m < 2) throw ValidationError("pluricanonical_multiplicity needs m >= 2 (use canonical_multiplicity)");
  const std::int64_t g = V.genus();
  Rational value(2 * m * (g - 1), V.group.order());
  value -= V.type.genus_prime - 1;
  for (std::size_t i = 0; i < V.branch.size(); ++i) {
    const std::int64_t n = V.type.indices[i];
    value -= Rational(mod(branch_exponent(chi, V, i) - m, n), n);
  }
  if (value.denominator() != 1)
    throw ConsistencyError("Chevalley-Weil multiplicity is not an integer for character " +
                           to_string(chi));
  if (value.numerator() < 0)
    throw ConsistencyError("Chevalley-Weil multiplicity is negative for character " + to_string(chi));
  return value.numerator();
}

std::int64_t canonical_multiplicity(const Character& chi, const GeneratingVector& V) {
  if (is_trivial(chi)) return V.type.genus_prime;
  Rational value(V.type.genus_prime - 1);
  for (std::size_t i = 0; i < V.branch.size(); ++i) {
    const std::int64_t n = V.type.indices[i];
    value += Rational(mod(-branch_exponent(chi, V, i), n), n);
  }
  if (value.denominator() != 1 || value.numerator() < 0)
    throw ConsistencyError("canonical multiplicity is not a nonnegative integer for character " +
                           to_string(chi));
  return value.numerator();
}

CharacterMultiset curve_character(int m, const GeneratingVector& V) {
  if (m < 1) throw ValidationError("curve_character needs m >= 1");
  CharacterMultiset out{V.group, {}};
  for (const auto& chi : characters(V.group)) {
    std::int64_t mult = m == 1 ? canonical_multiplicity(chi, V) : pluricanonical_multiplicity(chi, m, V);
    if (mult > 0) out.mults.emplace(chi, mult);
  }
  const std::int64_t g = V.genus();
  const std::int64_t expected = m == 1 ? g : (2 * m - 1) * (g - 1);
  if (out.total() != expected)
    throw ConsistencyError("m-canonical character of total " + std::to_string(out.total()) +
                           ", expected " + std::to_string(expected));
  return out;
}

CharacterMultiset sym2_character(const CharacterMultiset& c) {
  CharacterMultiset out{c.group, {}};
  for (auto a = c.mults.begin(); a != c.mults.end(); ++a) {
    for (auto b = a; b != c.mults.end(); ++b) {
      std::int64_t contribution = a == b ? a->second * (a->second + 1) / 2 : a->second * b->second;
      if (contribution == 0) continue;
      out.mults[add_characters(c.group, a->first, b->first)] += contribution;
    }
  }
  return out;
}

Character pullback_character(const AlgebraicDatum& D, int i, const Character& chi) {
  const AbelianGroup& G = D.group;
  Character out{std::vector<int>(G.rank(), 0)};
  for (int k = 0; k < G.rank(); ++k) {
    QZ v = eval_character(D.factor_group(i), chi, D.projections[i](G.basis(k)));
    out.exponents[k] = static_cast<int>(v.exponent_over(G.factors()[k]));
  }
  return out;
}

std::vector<std::vector<Character>> galois_characters(const AlgebraicDatum& D) {
  const int n = D.n();
  std::vector<std::vector<Character>> per_factor(n);
  // values[i][c][k] = chi_c^(i)(psi_i(e_k))
  std::vector<std::vector<std::vector<QZ>>> values(n);
  for (int i = 0; i < n; ++i) {
    per_factor[i] = characters(D.factor_group(i));
    for (const auto& chi : per_factor[i]) {
      std::vector<QZ> row;
      for (int k = 0; k < D.group.rank(); ++k)
        row.push_back(eval_character(D.factor_group(i), chi, D.projections[i](D.group.basis(k))));
      values[i].push_back(std::move(row));
    }
  }
  std::vector<std::vector<Character>> out;
  std::vector<int> idx(n, 0);
  for (;;) {
    bool trivial = true;
    for (int k = 0; k < D.group.rank() && trivial; ++k) {
      QZ s;
      for (int i = 0; i < n; ++i) s = s + values[i][idx[i]][k];
      trivial = s.is_zero();
    }
    if (trivial) {
      std::vector<Character> tuple;
      for (int i = 0; i < n; ++i) tuple.push_back(per_factor[i][idx[i]]);
      out.push_back(std::move(tuple));
    }
    int pos = n - 1;
    while (pos >= 0 && ++idx[pos] == static_cast<int>(per_factor[pos].size())) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

VIPCharacter vip_character(const AlgebraicDatum& D, int m) {
  VIPCharacter out;
  std::vector<CharacterMultiset> curves;
  for (int i = 0; i < D.n(); ++i) {
    out.factors.push_back(D.factor_group(i));
    curves.push_back(curve_character(m, D.vectors[i]));
  }
  for (auto& tuple : galois_characters(D)) {
    std::int64_t mult = 1;
    for (int i = 0; i < D.n() && mult; ++i) mult *= curves[i][tuple[i]];
    if (mult > 0) out.mults.emplace(std::move(tuple), mult);
  }
  return out;
}

}  // namespace vipclass

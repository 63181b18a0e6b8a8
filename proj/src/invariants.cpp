#include "vipclass/invariants.hpp"

#include <functional>

#include "vipclass/chevalley_weil.hpp"
#include "vipclass/errors.hpp"

namespace vipclass {

namespace {

std::int64_t divide_exact(std::int64_t num, std::int64_t den, const char* what) {
  if (num % den != 0)
    throw ValidationError(std::string(what) + ": " + std::to_string(num) + " is not divisible by |G| = " +
                          std::to_string(den));
  return num / den;
}

// Dense multiplicity vector over Irr(G), indexed like the elements of G.
using Dense = std::vector<std::int64_t>;

Dense convolve(const AbelianGroup& G, const Dense& a, const Dense& b) {
  Dense out(a.size(), 0);
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (!a[x]) continue;
    const GroupElement gx = G.element_at(static_cast<int>(x));
    for (std::size_t y = 0; y < b.size(); ++y) {
      if (!b[y]) continue;
      out[G.index_of(G.add(gx, G.element_at(static_cast<int>(y))))] += a[x] * b[y];
    }
  }
  return out;
}

}  // namespace

std::int64_t euler_char_sheaf(const AlgebraicDatum& D) {
  std::int64_t p = 1;
  for (int g : curve_genera(D)) p *= 1 - g;
  return divide_exact(p, D.group.order(), "chi(O_X)");
}

std::int64_t topological_euler(const AlgebraicDatum& D) {
  std::int64_t p = 1;
  for (int g : curve_genera(D)) p *= 2 - 2 * g;
  return divide_exact(p, D.group.order(), "e(X)");
}

std::int64_t canonical_self_intersection(const AlgebraicDatum& D) {
  const int n = D.n();
  if (n != 2 && n != 3) throw ScopeError("canonical self-intersection is implemented for n = 2, 3 only");
  const std::int64_t chi = euler_char_sheaf(D);
  const std::int64_t via_chi = n == 3 ? -48 * chi : 8 * chi;
  std::int64_t direct = 1;
  for (int k = 2; k <= n; ++k) direct *= k;
  for (int g : curve_genera(D)) direct *= 2 * g - 2;
  direct = divide_exact(direct, D.group.order(), "K^n");
  if (direct != via_chi)
    throw ConsistencyError("K^n = " + std::to_string(direct) + " but the chi(O) formula gives " +
                           std::to_string(via_chi));
  return via_chi;
}

std::int64_t hodge_number(const AlgebraicDatum& D, int p, int q) {
  const AbelianGroup& G = D.group;
  const int n = D.n();
  const std::size_t order = static_cast<std::size_t>(G.order());
  const int trivial = G.index_of(G.zero());

  // theta[i]: canonical character of C_i pulled back to G; conj[i]: its negation.
  std::vector<Dense> theta(n, Dense(order, 0)), conj(n, Dense(order, 0));
  for (int i = 0; i < n; ++i) {
    for (const auto& [chi, mult] : curve_character(1, D.vectors[i]).mults) {
      const Character pulled = pullback_character(D, i, chi);
      const GroupElement e{pulled.exponents};
      theta[i][G.index_of(e)] += mult;
      conj[i][G.index_of(G.negate(e))] += mult;
    }
  }
  Dense unit(order, 0);
  unit[trivial] = 1;

  std::int64_t total = 0;
  std::function<void(int, int, int, const Dense&)> rec = [&](int i, int p_left, int q_left, const Dense& acc) {
    if (i == n) {
      if (p_left == 0 && q_left == 0) total += acc[trivial];
      return;
    }
    const int remaining = n - i;
    if (p_left > remaining || q_left > remaining || p_left < 0 || q_left < 0) return;
    rec(i + 1, p_left, q_left, acc);                                 // (0,0)
    rec(i + 1, p_left - 1, q_left - 1, acc);                         // (1,1)
    if (p_left > 0) rec(i + 1, p_left - 1, q_left, convolve(G, acc, theta[i]));  // (1,0)
    if (q_left > 0) rec(i + 1, p_left, q_left - 1, convolve(G, acc, conj[i]));   // (0,1)
  };
  rec(0, p, q, unit);
  return total;
}

HodgeNumbers hodge_numbers(const AlgebraicDatum& D) {
  if (D.n() != 3) throw ScopeError("hodge_numbers tuple is defined for threefolds");
  return HodgeNumbers{hodge_number(D, 3, 0), hodge_number(D, 2, 0), hodge_number(D, 1, 0),
                      hodge_number(D, 1, 1), hodge_number(D, 2, 1)};
}

InvariantSet compute_invariants(const AlgebraicDatum& D) {
  InvariantSet s;
  s.genera = curve_genera(D);
  s.chi_O = euler_char_sheaf(D);
  s.euler_number = topological_euler(D);
  s.canonical_self_intersection = canonical_self_intersection(D);
  if (D.n() == 3) {
    s.hodge = hodge_numbers(D);
    const auto& h = s.hodge;
    if (1 - h.h10 + h.h20 - h.h30 != s.chi_O)
      throw ConsistencyError("Hodge numbers contradict chi(O_X)");
    if (2 - 4 * h.h10 + 4 * h.h20 - 2 * h.h30 + 2 * h.h11 - 2 * h.h21 != s.euler_number)
      throw ConsistencyError("Hodge numbers contradict e(X)");
  }
  return s;
}

}  // namespace vipclass

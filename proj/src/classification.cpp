#include "vipclass/classification.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "vipclass/cover_decomposition.hpp"
#include "vipclass/errors.hpp"

namespace vipclass {

namespace {

using Mask = std::uint64_t;
constexpr int kMaxOrder = 64;  // element sets are 64-bit masks

Mask bit(int x) { return Mask{1} << x; }

// Elements are indices into G.elements(); index 0 is the identity.
struct GroupTables {
  AbelianGroup G;
  int order = 1;
  std::vector<std::vector<int>> add;
  std::vector<int> neg;
  Mask full = 0;

  explicit GroupTables(const AbelianGroup& group) : G(group), order(group.order()) {
    const auto elems = G.elements();
    add.assign(order, std::vector<int>(order));
    neg.resize(order);
    for (int a = 0; a < order; ++a) {
      neg[a] = G.index_of(G.negate(elems[a]));
      for (int b = 0; b < order; ++b) add[a][b] = G.index_of(G.add(elems[a], elems[b]));
    }
    full = order == 64 ? ~Mask{0} : bit(order) - 1;
  }

  Mask shift(Mask m, int g) const {
    Mask out = 0;
    for (; m; m &= m - 1) out |= bit(add[std::countr_zero(m)][g]);
    return out;
  }

  Mask closure(Mask start, const std::vector<int>& gens) const {
    Mask m = start | bit(0);
    for (bool grew = true; grew;) {
      grew = false;
      for (int g : gens) {
        Mask next = m | shift(m, g);
        if (next != m) {
          m = next;
          grew = true;
        }
      }
    }
    return m;
  }
};

struct KernelInfo {
  Mask mask = 0;
  int order = 1;
  int quotient_exponent = 1;
  std::vector<int> minrep;  // least index in the coset x + K
  std::vector<int> qorder;  // order of x + K in G/K
};

KernelInfo make_kernel(const GroupTables& T, Mask mask) {
  KernelInfo k;
  k.mask = mask;
  k.order = std::popcount(mask);
  k.minrep.resize(T.order);
  k.qorder.resize(T.order);
  for (int x = 0; x < T.order; ++x) {
    k.minrep[x] = std::countr_zero(T.shift(mask, x));
    int y = x, t = 1;
    while (!(mask & bit(y))) {
      y = T.add[y][x];
      ++t;
    }
    k.qorder[x] = t;
    k.quotient_exponent = std::lcm(k.quotient_exponent, t);
  }
  return k;
}

Mask mask_of(const AbelianGroup& G, const std::vector<GroupElement>& elems) {
  Mask m = 0;
  for (const auto& e : elems) m |= bit(G.index_of(e));
  return m;
}

// All (type, genus) on a quotient of the given order and exponent with
// g >= 2 and (g - 1) dividing `budget`.
std::vector<std::pair<BranchingType, int>> candidate_types(int qorder, int qexp, std::int64_t budget) {
  std::vector<int> divisors;
  for (int d = 2; d <= qexp; ++d)
    if (qexp % d == 0) divisors.push_back(d);
  std::vector<std::pair<BranchingType, int>> out;
  std::vector<int> idx;
  // value = 2g - 2 = -2|Q| + sum (|Q| - |Q|/n_i)
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t from, std::int64_t value) {
    if (value >= 2 && value % 2 == 0 && budget % (value / 2) == 0)
      out.emplace_back(BranchingType(0, idx), static_cast<int>(value / 2 + 1));
    for (std::size_t d = from; d < divisors.size(); ++d) {
      const std::int64_t next = value + qorder - qorder / divisors[d];
      if (next > 2 * budget) break;
      idx.push_back(divisors[d]);
      rec(d, next);
      idx.pop_back();
    }
  };
  rec(0, -2 * static_cast<std::int64_t>(qorder));
  return out;
}

struct Option {
  int kernel = 0;      // index into GroupContext::kernels
  Mask stab = 0;       // lifted stabilizer set, contains K
  std::string entries; // coset representatives, sorted by (index n, element)
};

struct SlotClass {
  SlotShape shape;
  std::vector<Option> options;
  std::unordered_map<std::string, int> lookup;  // kernel byte + entries
  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // equal-index runs in the type

  // Signatures: options sharing (kernel mask, stabilizer mask).
  struct Signature {
    Mask kmask = 0, stab = 0;
    std::vector<int> members;
  };
  std::vector<Signature> signatures;

  // Aut(G)-orbits; filled only for classes that can be the first slot.
  bool has_orbits = false;
  std::vector<int> orbit;        // orbit id per option
  std::vector<int> to_rep;       // automorphism index a with a(option) = rep
  std::vector<int> reps;         // rep option per orbit id
  std::vector<std::vector<int>> rep_stabilizer;

  static std::string key(int kernel, const std::string& entries) {
    return std::string(1, static_cast<char>(kernel)) + entries;
  }
};

// Mask the stabilizers of a slot must meet trivially, given the kernels of
// the other two slots (in slot order).
struct SlotFilter {
  int position = 0;
  std::array<Mask, 2> kernels{};
  Mask stab = 0;
};

struct ClassTriple {
  std::array<int, 3> cls;
};

class GroupContext {
 public:
  GroupContext(const AbelianGroup& G, const SearchSpec& spec) : tables_(G), spec_(spec) {
    std::vector<Mask> kmasks;
    if (spec.allow_nontrivial_kernels) {
      for (const auto& S : all_subgroups(G))
        if (S.order() < G.order()) kmasks.push_back(mask_of(G, S.elements()));
    } else {
      kmasks.push_back(bit(0));
    }
    for (Mask m : kmasks) {
      kernel_id_[m] = static_cast<int>(kernels_.size());
      kernels_.push_back(make_kernel(tables_, m));
    }
    build_classes();
  }

  const GroupTables& tables() const { return tables_; }
  const std::vector<KernelInfo>& kernels() const { return kernels_; }
  std::vector<SlotClass>& classes() { return classes_; }
  const std::vector<SlotClass>& classes() const { return classes_; }
  const std::vector<ClassTriple>& triples() const { return triples_; }

  // Enumerates generating vectors of the classes used by some triple and drops
  // the triples without a compatible choice of signatures.
  void enumerate_options();
  bool triple_feasible(const ClassTriple& t) const;
  bool kernels_compatible(Mask k1, Mask k2, Mask k3) const {
    if ((k1 & k2) != 1 || (k2 & k3) != 1) return false;
    return spec_.kernel_check == KernelCheck::AdjacentPairs || (k1 & k3) == 1;
  }

  void compute_automorphisms();
  void compute_orbits(int cls);
  int image(int cls, int option, int aut) const;

  // Deduplicated canonical triples (rep-first) for one class triple.
  std::vector<std::array<int, 3>> enumerate(const ClassTriple& t) const;

  AlgebraicDatum datum(const ClassTriple& t, const std::array<int, 3>& opts) const;
  std::vector<int> record_key(const ClassTriple& t, const std::array<int, 3>& opts) const;

 private:
  void build_classes();
  void enumerate_class(SlotClass& c, const std::vector<SlotFilter>* filters);
  std::array<int, 3> canonical(const ClassTriple& t, std::array<int, 3> opts) const;

  GroupTables tables_;
  const SearchSpec& spec_;
  std::vector<KernelInfo> kernels_;
  std::unordered_map<Mask, int> kernel_id_;
  std::vector<SlotClass> classes_;
  std::vector<ClassTriple> triples_;
  std::vector<std::vector<int>> auts_;
  std::vector<int> aut_inverse_;
};

void GroupContext::build_classes() {
  const std::int64_t budget = static_cast<std::int64_t>(tables_.order) * -spec_.chi_target;
  std::set<SlotShape> shapes;
  for (const auto& K : kernels_) {
    const int qorder = tables_.order / K.order;
    for (auto& [type, g] : candidate_types(qorder, K.quotient_exponent, budget))
      shapes.insert(SlotShape{K.order, type, g});
  }
  for (const auto& s : shapes) {
    SlotClass c;
    c.shape = s;
    const auto& idx = s.type.indices;
    for (std::size_t b = 0; b < idx.size();) {
      std::size_t e = b;
      while (e < idx.size() && idx[e] == idx[b]) ++e;
      c.blocks.emplace_back(b, e);
      b = e;
    }
    classes_.push_back(std::move(c));
  }
  const int nc = static_cast<int>(classes_.size());
  for (int a = 0; a < nc; ++a)
    for (int b = a; b < nc; ++b)
      for (int c = b; c < nc; ++c) {
        const std::int64_t prod = static_cast<std::int64_t>(classes_[a].shape.genus - 1) *
                                  (classes_[b].shape.genus - 1) * (classes_[c].shape.genus - 1);
        if (prod == budget) triples_.push_back(ClassTriple{{a, b, c}});
      }
}

void GroupContext::enumerate_class(SlotClass& c, const std::vector<SlotFilter>* filters) {
  const auto& idx = c.shape.type.indices;
  const int r = static_cast<int>(idx.size());
  for (int kid = 0; kid < static_cast<int>(kernels_.size()); ++kid) {
    const KernelInfo& K = kernels_[kid];
    if (K.order != c.shape.kernel_order) continue;
    bool divides = true;
    for (int n : idx) divides = divides && K.quotient_exponent % n == 0;
    if (!divides || r < 2) continue;

    // Stabilizer masks this slot has to meet trivially, minimal under inclusion.
    std::vector<Mask> avoid;
    if (filters) {
      for (const auto& f : *filters) {
        std::array<Mask, 3> k;
        for (int p = 0, q = 0; p < 3; ++p) k[p] = p == f.position ? K.mask : f.kernels[q++];
        if (kernels_compatible(k[0], k[1], k[2])) avoid.push_back(f.stab);
      }
      std::sort(avoid.begin(), avoid.end(), [](Mask a, Mask b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
      });
      std::vector<Mask> minimal;
      for (Mask m : avoid)
        if (std::none_of(minimal.begin(), minimal.end(), [&](Mask x) { return (x & m) == x; }))
          minimal.push_back(m);
      avoid = std::move(minimal);
      if (avoid.empty()) continue;
    }
    auto viable = [&](Mask stab) {
      return !filters || std::any_of(avoid.begin(), avoid.end(), [&](Mask m) { return (stab & m) == 1; });
    };
    auto with_entry = [&](Mask stab, int e, int n) {
      for (int t = 1, y = e; t < n; ++t, y = tables_.add[y][e]) stab |= tables_.shift(K.mask, y);
      return stab;
    };

    // Coset representatives of each order.
    std::map<int, std::vector<int>> by_order;
    for (int x = 0; x < tables_.order; ++x)
      if (K.minrep[x] == x) by_order[K.qorder[x]].push_back(x);

    std::vector<int> chosen(r);
    std::vector<std::size_t> pos(r);
    std::function<void(int, int, Mask)> rec = [&](int i, int sum, Mask stab) {
      if (i == r - 1) {
        const int last = K.minrep[tables_.neg[sum]];
        if (K.qorder[last] != idx[i]) return;
        if (idx[i] == idx[i - 1] && last < chosen[i - 1]) return;
        stab = with_entry(stab, last, idx[i]);
        if (!viable(stab)) return;
        chosen[i] = last;
        if (tables_.closure(K.mask, chosen) != tables_.full) return;
        Option o;
        o.kernel = kid;
        o.stab = stab;
        for (int e : chosen) o.entries.push_back(static_cast<char>(e));
        c.lookup.emplace(SlotClass::key(kid, o.entries), static_cast<int>(c.options.size()));
        c.options.push_back(std::move(o));
        return;
      }
      const auto it = by_order.find(idx[i]);
      if (it == by_order.end()) return;
      const auto& cand = it->second;
      std::size_t start = (i > 0 && idx[i] == idx[i - 1]) ? pos[i - 1] : 0;
      for (std::size_t p = start; p < cand.size(); ++p) {
        const Mask next = with_entry(stab, cand[p], idx[i]);
        if (!viable(next)) continue;
        chosen[i] = cand[p];
        pos[i] = p;
        rec(i + 1, tables_.add[sum][cand[p]], next);
      }
    };
    rec(0, 0, K.mask);
  }
  std::map<std::pair<Mask, Mask>, std::vector<int>> sig;
  for (int o = 0; o < static_cast<int>(c.options.size()); ++o)
    sig[{kernels_[c.options[o].kernel].mask, c.options[o].stab}].push_back(o);
  for (auto& [k, members] : sig) c.signatures.push_back({k.first, k.second, std::move(members)});
}

void GroupContext::enumerate_options() {
  // The slot of largest genus carries the most branch points. Where it is
  // only ever the largest slot, it is enumerated last and pruned to vectors
  // whose stabilizers can still meet those of the other two slots trivially.
  // The filter is Aut(G)-invariant, so the option sets stay Aut(G)-closed.
  std::vector<int> big(triples_.size(), 0);
  std::set<int> full, pruned;
  for (std::size_t t = 0; t < triples_.size(); ++t) {
    const auto& cls = triples_[t].cls;
    for (int p = 1; p < 3; ++p)
      if (classes_[cls[p]].shape.genus > classes_[cls[big[t]]].shape.genus) big[t] = p;
    for (int p = 0; p < 3; ++p)
      if (p != big[t]) full.insert(cls[p]);
  }
  for (std::size_t t = 0; t < triples_.size(); ++t)
    if (!full.count(triples_[t].cls[big[t]])) pruned.insert(triples_[t].cls[big[t]]);

  auto trace = [&](int c) {
    if (spec_.log)
      *spec_.log << tables_.G.name() << ": class k=" << classes_[c].shape.kernel_order << " "
                 << classes_[c].shape.type.compact() << " g=" << classes_[c].shape.genus << " options "
                 << classes_[c].options.size() << " signatures " << classes_[c].signatures.size()
                 << (pruned.count(c) ? " (pruned)" : "") << std::endl;
  };
  for (int c : full) {
    enumerate_class(classes_[c], nullptr);
    trace(c);
  }
  for (int c : pruned) {
    std::vector<SlotFilter> filters;
    for (std::size_t t = 0; t < triples_.size(); ++t) {
      const auto& cls = triples_[t].cls;
      if (cls[big[t]] != c) continue;
      const int a = big[t] == 0 ? 1 : 0;
      const int b = big[t] == 2 ? 1 : 2;
      for (const auto& sa : classes_[cls[a]].signatures)
        for (const auto& sb : classes_[cls[b]].signatures)
          filters.push_back(SlotFilter{big[t], {sa.kmask, sb.kmask}, sa.stab & sb.stab});
    }
    enumerate_class(classes_[c], &filters);
    trace(c);
  }
  std::vector<ClassTriple> kept;
  for (const auto& t : triples_)
    if (triple_feasible(t)) kept.push_back(t);
  triples_ = std::move(kept);
}

bool GroupContext::triple_feasible(const ClassTriple& t) const {
  const auto& A = classes_[t.cls[0]].signatures;
  const auto& B = classes_[t.cls[1]].signatures;
  const auto& C = classes_[t.cls[2]].signatures;
  for (const auto& a : A)
    for (const auto& b : B) {
      if ((a.kmask & b.kmask) != 1) continue;
      const Mask ab = a.stab & b.stab;
      for (const auto& c : C)
        if (kernels_compatible(a.kmask, b.kmask, c.kmask) && (ab & c.stab) == 1) return true;
    }
  return false;
}

void GroupContext::compute_automorphisms() {
  if (!auts_.empty()) return;
  auts_ = automorphism_tables(tables_.G, kMaxOrder);
  std::map<std::vector<int>, int> index;
  for (int a = 0; a < static_cast<int>(auts_.size()); ++a) index[auts_[a]] = a;
  aut_inverse_.resize(auts_.size());
  for (int a = 0; a < static_cast<int>(auts_.size()); ++a) {
    std::vector<int> inv(tables_.order);
    for (int x = 0; x < tables_.order; ++x) inv[auts_[a][x]] = x;
    aut_inverse_[a] = index.at(inv);
  }
}

int GroupContext::image(int cls, int option, int aut) const {
  const SlotClass& c = classes_[cls];
  const Option& o = c.options[option];
  const std::vector<int>& perm = auts_[aut];
  int kid = o.kernel;
  if (kernels_[kid].order > 1) {
    Mask m = 0;
    for (Mask k = kernels_[kid].mask; k; k &= k - 1) m |= bit(perm[std::countr_zero(k)]);
    kid = kernel_id_.at(m);
  }
  const KernelInfo& K = kernels_[kid];
  std::string e = o.entries;
  for (char& x : e) x = static_cast<char>(K.minrep[perm[static_cast<unsigned char>(x)]]);
  for (auto [b, end] : c.blocks) std::sort(e.begin() + b, e.begin() + end);
  auto it = c.lookup.find(SlotClass::key(kid, e));
  if (it == c.lookup.end()) throw ConsistencyError("automorphism image of a generating vector is missing");
  return it->second;
}

void GroupContext::compute_orbits(int cls) {
  SlotClass& c = classes_[cls];
  if (c.has_orbits) return;
  compute_automorphisms();
  const int n = static_cast<int>(c.options.size());
  c.orbit.assign(n, -1);
  c.to_rep.assign(n, 0);
  for (int x = 0; x < n; ++x) {
    if (c.orbit[x] != -1) continue;
    const int id = static_cast<int>(c.reps.size());
    c.reps.push_back(x);
    c.rep_stabilizer.emplace_back();
    for (int a = 0; a < static_cast<int>(auts_.size()); ++a) {
      const int y = image(cls, x, a);
      if (c.orbit[y] == -1) {
        c.orbit[y] = id;
        c.to_rep[y] = aut_inverse_[a];
      }
      if (y == x) c.rep_stabilizer[id].push_back(a);
    }
  }
  c.has_orbits = true;
}

std::array<int, 3> GroupContext::canonical(const ClassTriple& t, std::array<int, 3> opts) const {
  const SlotClass& first = classes_[t.cls[0]];
  const bool swaps = spec_.equivalence == FamilyEquivalence::UnorderedFactors;
  int best_orbit = first.orbit[opts[0]];
  for (int s = 1; s < 3 && swaps; ++s)
    if (t.cls[s] == t.cls[0]) best_orbit = std::min(best_orbit, first.orbit[opts[s]]);
  std::array<int, 3> best{-1, -1, -1};
  for (int s = 0; s < (swaps ? 3 : 1); ++s) {
    if (t.cls[s] != t.cls[0] || first.orbit[opts[s]] != best_orbit) continue;
    const int beta = first.to_rep[opts[s]];
    // The two remaining slots, with their classes.
    std::array<int, 2> other_slot{};
    for (int u = 0, k = 0; u < 3; ++u)
      if (u != s) other_slot[k++] = u;
    // Classes of the remaining positions are t.cls[1], t.cls[2] in order; the
    // slot moved to the front always has class t.cls[0], so the others keep
    // their classes up to a swap between equal classes.
    std::array<int, 2> cls_o{t.cls[other_slot[0]], t.cls[other_slot[1]]};
    std::array<int, 2> moved{image(cls_o[0], opts[other_slot[0]], beta),
                             image(cls_o[1], opts[other_slot[1]], beta)};
    for (int sigma : first.rep_stabilizer[best_orbit]) {
      std::array<std::pair<int, int>, 2> img{std::pair{cls_o[0], image(cls_o[0], moved[0], sigma)},
                                             std::pair{cls_o[1], image(cls_o[1], moved[1], sigma)}};
      if (swaps && img[1] < img[0]) std::swap(img[0], img[1]);
      std::array<int, 3> cand{first.reps[best_orbit], img[0].second, img[1].second};
      if (best[0] < 0 || cand < best) best = cand;
    }
  }
  return best;
}

std::vector<std::array<int, 3>> GroupContext::enumerate(const ClassTriple& t) const {
  const SlotClass& A = classes_[t.cls[0]];
  const SlotClass& B = classes_[t.cls[1]];
  const SlotClass& C = classes_[t.cls[2]];
  const bool swaps = spec_.equivalence == FamilyEquivalence::UnorderedFactors;
  const bool ab = swaps && t.cls[0] == t.cls[1];
  const bool ac = swaps && t.cls[0] == t.cls[2];
  const bool bc = swaps && t.cls[1] == t.cls[2];
  std::set<std::array<int, 3>> found;
  for (int orbit = 0; orbit < static_cast<int>(A.reps.size()); ++orbit) {
    const int rep = A.reps[orbit];
    const Mask k1 = kernels_[A.options[rep].kernel].mask;
    const Mask s1 = A.options[rep].stab;
    for (const auto& sb : B.signatures) {
      if ((k1 & sb.kmask) != 1) continue;
      const Mask s12 = s1 & sb.stab;
      for (const auto& sc : C.signatures) {
        if (!kernels_compatible(k1, sb.kmask, sc.kmask) || (s12 & sc.stab) != 1) continue;
        for (int o2 : sb.members) {
          if (ab && A.orbit[o2] < orbit) continue;
          for (int o3 : sc.members) {
            if (ac && A.orbit[o3] < orbit) continue;
            if (bc && o3 < o2) continue;
            found.insert(canonical(t, {rep, o2, o3}));
          }
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

AlgebraicDatum GroupContext::datum(const ClassTriple& t, const std::array<int, 3>& opts) const {
  const AbelianGroup& G = tables_.G;
  const auto elems = G.elements();
  std::vector<Subgroup> kernels;
  std::vector<BranchingType> types;
  std::vector<std::vector<GroupElement>> branch;
  for (int s = 0; s < 3; ++s) {
    const SlotClass& c = classes_[t.cls[s]];
    const Option& o = c.options[opts[s]];
    std::vector<GroupElement> kel;
    for (Mask m = kernels_[o.kernel].mask; m; m &= m - 1) kel.push_back(elems[std::countr_zero(m)]);
    kernels.push_back(subgroup_generated(G, kel));
    types.push_back(c.shape.type);
    std::vector<GroupElement> b;
    for (char e : o.entries) b.push_back(elems[static_cast<unsigned char>(e)]);
    branch.push_back(std::move(b));
  }
  return make_datum_from_ambient(G, std::move(kernels), types, branch);
}

std::vector<int> GroupContext::record_key(const ClassTriple& t, const std::array<int, 3>& opts) const {
  std::vector<int> key;
  for (int s = 0; s < 3; ++s) {
    const Option& o = classes_[t.cls[s]].options[opts[s]];
    key.push_back(o.kernel);
    for (char e : o.entries) key.push_back(static_cast<unsigned char>(e));
  }
  return key;
}

std::vector<AbelianGroup> search_groups(const SearchSpec& spec) {
  std::vector<AbelianGroup> out;
  if (!spec.only_groups.empty()) {
    out = spec.only_groups;
    std::sort(out.begin(), out.end());
    for (const auto& G : out)
      if (G.order() > spec.max_group_order) throw ValidationError("restricted group exceeds the order cap");
    return out;
  }
  for (int order = 2; order <= spec.max_group_order; ++order)
    for (auto& G : abelian_groups_of_order(order)) out.push_back(std::move(G));
  return out;
}

int worker_count(const SearchSpec& spec, std::size_t items) {
  int n = spec.threads > 0 ? spec.threads : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(1, n);
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(items, 1)));
}

template <typename Fn>
void parallel_for(int workers, std::size_t items, Fn fn) {
  if (workers <= 1) {
    for (std::size_t i = 0; i < items; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < items;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = items;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

void SearchSpec::validate() const {
  if (n != 3) throw ScopeError("classification is implemented for threefolds (n = 3) only");
  if (chi_target > -1) throw ValidationError("chi target must be <= -1");
  if (max_group_order < 2) throw ValidationError("max group order must be >= 2");
  if (max_group_order > kMaxOrder)
    throw ScopeError("max group order above " + std::to_string(kMaxOrder) + " is not supported");
  for (int m : m_range)
    if (m < 1) throw ValidationError("m values must be >= 1");
}

std::array<int, 3> Shape::kernel_orders() const {
  return {slots[0].kernel_order, slots[1].kernel_order, slots[2].kernel_order};
}

std::array<int, 3> Shape::genera() const { return {slots[0].genus, slots[1].genus, slots[2].genus}; }

std::vector<Shape> admissible_shapes(const SearchSpec& spec) {
  spec.validate();
  std::vector<Shape> out;
  for (const auto& G : search_groups(spec)) {
    GroupContext ctx(G, spec);
    if (ctx.triples().empty()) continue;
    ctx.enumerate_options();
    for (const auto& t : ctx.triples()) {
      Shape s{G, {}};
      for (int i = 0; i < 3; ++i) s.slots[i] = ctx.classes()[t.cls[i]].shape;
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FamilyRecord> classify(const SearchSpec& spec) {
  spec.validate();
  std::vector<std::unique_ptr<GroupContext>> contexts;
  struct Item {
    GroupContext* ctx;
    ClassTriple triple;
  };
  std::vector<Item> items;
  for (const auto& G : search_groups(spec)) {
    auto ctx = std::make_unique<GroupContext>(G, spec);
    if (ctx->triples().empty()) continue;
    ctx->enumerate_options();
    if (ctx->triples().empty()) continue;
    for (const auto& t : ctx->triples()) ctx->compute_orbits(t.cls[0]);
    for (const auto& t : ctx->triples()) items.push_back({ctx.get(), t});
    contexts.push_back(std::move(ctx));
  }

  std::vector<std::vector<FamilyRecord>> results(items.size());
  parallel_for(worker_count(spec, items.size()), items.size(), [&](std::size_t i) {
    const Item& item = items[i];
    for (const auto& opts : item.ctx->enumerate(item.triple)) {
      FamilyRecord r;
      r.representative = item.ctx->datum(item.triple, opts);
      r.minimal_realization = is_minimal_realization(r.representative.kernels);
      if (r.minimal_realization) {
        validate_datum(r.representative);
      } else {
        for (const auto& V : r.representative.vectors)
          if (!is_generating_vector(V.group, V)) throw ConsistencyError("emitted vector is not generating");
        if (!is_free_action(r.representative)) throw ConsistencyError("emitted datum is not free");
      }
      r.group = r.representative.group;
      for (int s = 0; s < 3; ++s) {
        const SlotShape& shape = item.ctx->classes()[item.triple.cls[s]].shape;
        r.kernel_orders[s] = shape.kernel_order;
        r.types[s] = shape.type;
        r.genera[s] = shape.genus;
      }
      r.invariants = compute_invariants(r.representative);
      if (r.invariants.chi_O != spec.chi_target)
        throw ConsistencyError("family with chi(O) = " + std::to_string(r.invariants.chi_O) +
                               " in a search for " + std::to_string(spec.chi_target));
      CoverDecomposition cover(r.representative);
      for (int m : spec.m_range) r.analyses.emplace(m, map_status(cover, m, RuleSet::Full));
      r.canonical_key = item.ctx->record_key(item.triple, opts);
      results[i].push_back(std::move(r));
    }
  });

  std::vector<FamilyRecord> out;
  for (auto& part : results)
    for (auto& r : part) out.push_back(std::move(r));
  std::sort(out.begin(), out.end(), [](const FamilyRecord& a, const FamilyRecord& b) {
    return std::tie(a.group, a.kernel_orders, a.types, a.canonical_key) <
           std::tie(b.group, b.kernel_orders, b.types, b.canonical_key);
  });
  return out;
}

std::vector<int> canonical_form(const AlgebraicDatum& D) {
  if (D.n() != 3) throw ScopeError("canonical_form is implemented for n = 3");
  const AbelianGroup& G = D.group;
  if (G.order() > kMaxOrder) throw ScopeError("group too large for canonical_form");
  GroupTables T(G);
  struct Slot {
    int korder;
    BranchingType type;
    Mask kmask;
    std::vector<int> entries;  // ambient coset representatives
  };
  std::vector<Slot> slots;
  for (int i = 0; i < 3; ++i) {
    Slot s{D.kernels[i].order(), D.vectors[i].type, mask_of(G, D.kernels[i].elements()), {}};
    KernelInfo K = make_kernel(T, s.kmask);
    for (const auto& h : D.vectors[i].branch) {
      auto pre = D.projections[i].preimage({h});
      s.entries.push_back(K.minrep[G.index_of(pre.front())]);
    }
    slots.push_back(std::move(s));
  }
  std::vector<int> best;
  std::map<Mask, KernelInfo> kernel_cache;
  for (const auto& perm : automorphism_tables(G, kMaxOrder)) {
    std::vector<std::vector<int>> images;
    for (const auto& s : slots) {
      Mask km = 0;
      for (Mask k = s.kmask; k; k &= k - 1) km |= bit(perm[std::countr_zero(k)]);
      auto it = kernel_cache.find(km);
      if (it == kernel_cache.end()) it = kernel_cache.emplace(km, make_kernel(T, km)).first;
      std::vector<std::pair<int, int>> e;  // (index n, rep)
      for (std::size_t j = 0; j < s.entries.size(); ++j)
        e.emplace_back(s.type.indices[j], it->second.minrep[perm[s.entries[j]]]);
      std::sort(e.begin(), e.end());
      std::vector<int> img{s.korder, static_cast<int>(s.type.indices.size())};
      img.insert(img.end(), s.type.indices.begin(), s.type.indices.end());
      for (Mask k = km; k; k &= k - 1) img.push_back(std::countr_zero(k));
      for (auto& p : e) img.push_back(p.second);
      images.push_back(std::move(img));
    }
    std::sort(images.begin(), images.end());
    std::vector<int> flat(G.factors().begin(), G.factors().end());
    flat.push_back(-1);
    for (auto& img : images) {
      flat.insert(flat.end(), img.begin(), img.end());
      flat.push_back(-1);
    }
    if (best.empty() || flat < best) best = std::move(flat);
  }
  return best;
}

bool equivalent(const AlgebraicDatum& a, const AlgebraicDatum& b) {
  if (a.n() != b.n()) return false;
  if (a.group != b.group) return false;
  return canonical_form(a) == canonical_form(b);
}

MapStatus view_status(const MapAnalysis& a, RuleSet view) {
  if (view == RuleSet::Full) return a.status;
  if (a.separates_group && a.separates_base) return MapStatus::Birational;
  if (!a.separates_group) return MapStatus::NonBirational;
  return MapStatus::Unknown;
}

std::vector<TableRow> summarize(const std::vector<FamilyRecord>& records, RuleSet view) {
  using Key = std::tuple<AbelianGroup, std::array<int, 3>, std::array<BranchingType, 3>, HodgeNumbers>;
  std::map<Key, TableRow> rows;
  auto tally = [&](StatusCounts& c, const FamilyRecord& r, int m) {
    auto it = r.analyses.find(m);
    if (it == r.analyses.end()) return;
    if (it->second.bpf) ++c.bpf;
    switch (view_status(it->second, view)) {
      case MapStatus::Birational: ++c.bir; break;
      case MapStatus::NonBirational: ++c.nbir; break;
      case MapStatus::Unknown: ++c.unknown; break;
    }
  };
  for (const auto& r : records) {
    Key k{r.group, r.kernel_orders, r.types, r.invariants.hodge};
    auto [it, inserted] = rows.try_emplace(k);
    TableRow& row = it->second;
    if (inserted) {
      row.group = r.group;
      row.kernel_orders = r.kernel_orders;
      row.types = r.types;
      row.hodge = r.invariants.hodge;
    }
    ++row.families;
    tally(row.canonical, r, 1);
    tally(row.bicanonical, r, 2);
  }
  std::vector<TableRow> out;
  for (auto& [k, row] : rows) out.push_back(std::move(row));
  return out;
}

}  // namespace vipclass

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "support.hpp"
#include "vipclass/errors.hpp"

using namespace vipclass;
using testsupport::el;

TEST_CASE("group construction") {
  CHECK(make_group({2, 2, 2}).order() == 8);
  const auto G = make_group({2, 4});
  CHECK(G.order() == 8);
  CHECK(G.exponent() == 4);
  CHECK(make_group({}).order() == 1);
  CHECK(make_group({1, 3}).factors() == std::vector<int>{3});
  CHECK_THROWS_AS(make_group({4, 2}), ValidationError);
  CHECK(make_group({2, 2, 4}).name() == "Z2^2xZ4");
}

TEST_CASE("element orders") {
  const auto G = make_group({2, 2, 2});
  CHECK(element_order(G, G.zero()) == 1);
  CHECK(element_order(G, el({1, 0, 0})) == 2);
  CHECK(element_order(make_group({2, 4}), el({1, 1})) == 4);
  CHECK(element_order(make_group({12}), el({8})) == 3);
}

TEST_CASE("element indexing follows lexicographic order") {
  for (const auto& G : testsupport::groups_up_to(16)) {
    const auto elems = G.elements();
    REQUIRE(static_cast<int>(elems.size()) == G.order());
    CHECK(std::is_sorted(elems.begin(), elems.end()));
    for (int i = 0; i < G.order(); ++i) CHECK(G.index_of(elems[i]) == i);
  }
}

TEST_CASE("character evaluation") {
  const auto G = make_group({2, 2, 2});
  CHECK(characters(G).size() == 8);
  CHECK(eval_character(G, Character{{1, 1, 1}}, el({1, 0, 0})) == QZ(1, 2));
  for (const auto& g : G.elements()) CHECK(eval_character(G, Character{{0, 0, 0}}, g).is_zero());
  CHECK(eval_character(make_group({2, 4}), Character{{1, 3}}, el({1, 1})) == QZ(1, 4));
}

TEST_CASE("QZ arithmetic") {
  CHECK(QZ(3, 4) + QZ(1, 2) == QZ(1, 4));
  CHECK(-QZ(1, 3) == QZ(2, 3));
  CHECK(QZ(-1, 6) == QZ(5, 6));
  CHECK(QZ(6, 8).num() == 3);
  CHECK(QZ(1, 4).exponent_over(8) == 2);
  CHECK_THROWS_AS(QZ(1, 3).exponent_over(8), ConsistencyError);
}

TEST_CASE("characters are homomorphisms") {
  for (const auto& G : testsupport::groups_up_to(12)) {
    const auto elems = G.elements();
    for (const auto& chi : characters(G))
      for (const auto& g : elems)
        for (const auto& h : elems)
          CHECK(eval_character(G, chi, G.add(g, h)) == eval_character(G, chi, g) + eval_character(G, chi, h));
  }
}

TEST_CASE("character orthogonality") {
  // chi - chi' of order d takes every value k/d equally often.
  for (const auto& G : testsupport::groups_up_to(16)) {
    const auto chars = characters(G);
    for (std::size_t a = 0; a < chars.size(); ++a)
      for (std::size_t b = 0; b < chars.size(); ++b) {
        if (a == b) continue;
        const Character diff = add_characters(G, chars[a], negate_character(G, chars[b]));
        const int d = character_order(G, diff);
        std::map<QZ, int> hits;
        for (const auto& g : G.elements()) ++hits[eval_character(G, chars[a], g) - eval_character(G, chars[b], g)];
        CHECK(static_cast<int>(hits.size()) == d);
        for (const auto& [v, c] : hits) CHECK(c == G.order() / d);
      }
  }
}

TEST_CASE("cyclic subgroups against brute force") {
  CHECK(cyclic_subgroups(make_group({2, 2, 2})).size() == 8);
  CHECK(cyclic_subgroups(make_group({4})).size() == 3);
  for (const auto& G : testsupport::groups_up_to(16)) {
    std::set<std::vector<GroupElement>> brute;
    for (const auto& g : G.elements()) {
      std::vector<GroupElement> s;
      for (int k = 0; k < element_order(G, g); ++k) s.push_back(G.scale(k, g));
      std::sort(s.begin(), s.end());
      brute.insert(s);
    }
    const auto cyc = cyclic_subgroups(G);
    CHECK(cyc.size() == brute.size());
    for (const auto& H : cyc) {
      CHECK(brute.count(H.elements()) == 1);
      // canonical generator: least element of maximal order
      const auto& gen = H.generators().front();
      CHECK(element_order(G, gen) == H.order());
      for (const auto& x : H.elements())
        if (element_order(G, x) == H.order()) CHECK(gen <= x);
    }
  }
  // trivial, three of order 2, <(0,1)> and <(1,1)>
  CHECK(cyclic_subgroups(make_group({2, 4})).size() == 6);
}

TEST_CASE("subgroup counts") {
  // Gaussian binomials over F_2: 1 + 7 + 7 + 1 and 1 + 15 + 35 + 15 + 1.
  CHECK(all_subgroups(make_group({2, 2, 2})).size() == 16);
  CHECK(all_subgroups(make_group({2, 2, 2, 2})).size() == 67);
  CHECK(all_subgroups(make_group({4, 4})).size() == 15);
  CHECK(all_subgroups(make_group({16})).size() == 5);
}

TEST_CASE("quotients have kernel exactly K") {
  for (const auto& G : testsupport::groups_up_to(16))
    for (const auto& K : all_subgroups(G)) {
      const Quotient q = quotient(G, K);
      CHECK(q.group.order() * K.order() == G.order());
      std::vector<int> fibre(q.group.order(), 0);
      for (const auto& g : G.elements()) {
        const GroupElement image = q.projection(g);
        CHECK(q.group.contains(image));
        CHECK((image == q.group.zero()) == K.contains(g));
        ++fibre[q.group.index_of(image)];
      }
      for (int f : fibre) CHECK(f == K.order());
      // additivity
      const auto elems = G.elements();
      for (std::size_t i = 0; i < elems.size(); i += 3)
        for (std::size_t j = 0; j < elems.size(); j += 5)
          CHECK(q.projection(G.add(elems[i], elems[j])) ==
                q.group.add(q.projection(elems[i]), q.projection(elems[j])));
    }
}

TEST_CASE("automorphism counts") {
  CHECK(automorphisms(make_group({2, 2, 2})).size() == 168);
  CHECK(automorphisms(make_group({4})).size() == 2);
  CHECK(automorphisms(make_group({})).size() == 1);
  CHECK(automorphisms(make_group({2, 4})).size() == 8);
  CHECK(automorphisms(make_group({3, 3})).size() == 48);
  CHECK(automorphisms(make_group({2, 2, 2, 2})).size() == 20160);
  CHECK_THROWS_AS(automorphisms(make_group({2, 2, 2, 2}), 8), ScopeError);
}

TEST_CASE("automorphism tables are permutations preserving addition") {
  for (const auto& G : {make_group({2, 4}), make_group({2, 2, 2}), make_group({3, 3}), make_group({12})}) {
    for (const auto& perm : automorphism_tables(G)) {
      std::vector<int> sorted = perm;
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i < G.order(); ++i) CHECK(sorted[i] == i);
      for (int x = 0; x < G.order(); ++x)
        for (int y = 0; y < G.order(); ++y)
          CHECK(perm[G.index_of(G.add(G.element_at(x), G.element_at(y)))] ==
                G.index_of(G.add(G.element_at(perm[x]), G.element_at(perm[y]))));
    }
  }
}

TEST_CASE("abelianize") {
  CHECK(abelianize({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}).factors() == std::vector<int>{2, 2, 2});
  CHECK(abelianize({{2, 0}, {0, 6}}).factors() == std::vector<int>{2, 6});
  CHECK(abelianize({{4, 0}, {0, 6}}).factors() == std::vector<int>{2, 12});
  CHECK(abelianize({{2, 4}, {6, 8}}).order() == 8);
  CHECK_THROWS_AS(abelianize({{2, 0}}), ValidationError);
}

TEST_CASE("abelian groups of a given order") {
  CHECK(abelian_groups_of_order(8).size() == 3);
  CHECK(abelian_groups_of_order(16).size() == 5);
  CHECK(abelian_groups_of_order(12).size() == 2);
  CHECK(abelian_groups_of_order(7).size() == 1);
  for (const auto& G : abelian_groups_of_order(16)) CHECK(G.order() == 16);
}

#include <doctest.h>

#include <algorithm>
#include <random>

#include "colimit/catalog.hpp"
#include "colimit/colimit.hpp"
#include "colimit/pc.hpp"
#include "oracles.hpp"

using namespace colimit;
using oracle::ElementSet;

namespace {

// Connectivity straight from the element sets.
bool brute_connected(const FiniteGroup& g, const std::vector<ElementSet>& n) {
  const std::size_t m = n.size();
  if (m <= 2) return true;
  for (unsigned i = 1; i < (1U << m); ++i) {
    if (std::popcount(i) < 2) continue;
    for (unsigned j = 1; j < (1U << m); ++j) {
      ElementSet meet, prod{0};
      bool first = true;
      for (std::size_t k = 0; k < m; ++k) {
        if (i >> k & 1U) {
          meet = first ? n[k] : oracle::meet_set(meet, n[k]);
          first = false;
        }
        if (j >> k & 1U) prod = oracle::product_set(g, prod, n[k]);
      }
      ElementSet lhs = oracle::product_set(g, meet, prod);
      ElementSet rhs;
      first = true;
      for (std::size_t k = 0; k < m; ++k) {
        if (!(i >> k & 1U)) continue;
        ElementSet f = oracle::product_set(g, n[k], prod);
        rhs = first ? f : oracle::meet_set(rhs, f);
        first = false;
      }
      if (lhs != rhs) return false;
    }
  }
  return true;
}

ElementSet brute_symmetric_commutator(const FiniteGroup& g, const std::vector<ElementSet>& n) {
  const std::size_t m = n.size();
  ElementSet acc{0};
  for (unsigned i = 1; i + 1 < (1U << m); ++i) {
    ElementSet a, b;
    bool fa = true, fb = true;
    for (std::size_t k = 0; k < m; ++k) {
      if (i >> k & 1U) {
        a = fa ? n[k] : oracle::meet_set(a, n[k]);
        fa = false;
      } else {
        b = fb ? n[k] : oracle::meet_set(b, n[k]);
        fb = false;
      }
    }
    acc = oracle::product_set(g, acc, oracle::commutator_set(g, a, b));
  }
  return acc;
}

}  // namespace

TEST_SUITE("colimit") {
  TEST_CASE("tuples require normal subgroups") {
    auto s3 = catalog("S3");
    int x = s3.group->gen_images()[1];
    auto h = generated_subgroup(s3.group, std::span<const int>(&x, 1));
    CHECK_THROWS_AS(NormalTuple<FinSubgroup>({h}), HypothesisError);
    CHECK_THROWS_AS(NormalTuple<FinSubgroup>({}), InputError);
  }

  TEST_CASE("connectivity examples") {
    auto v4 = catalog("V4");
    auto a = catalog_subgroup(v4, "A"), b = catalog_subgroup(v4, "B"), c = catalog_subgroup(v4, "AB");
    CHECK(is_connected_tuple(NormalTuple<FinSubgroup>({a, b})).connected);
    CHECK(is_connected_tuple(NormalTuple<FinSubgroup>({a, a, a, a})).connected);
    auto r = is_connected_tuple(NormalTuple<FinSubgroup>({a, b, c}));
    CHECK_FALSE(r.connected);
    CHECK(r.I.size() >= 2);
    CHECK(!r.J.empty());
    CHECK(index_set(r.I) == "{1,2}");
    CHECK(index_set(r.J) == "{3}");
  }

  TEST_CASE("connectivity matches the element-set oracle on triples") {
    std::size_t violating = 0;
    for (const auto& name : catalog_names_up_to(16)) {
      auto g = catalog(name).group;
      auto ns = normal_subgroups(g);
      if (ns.size() > 12) continue;
      for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = i; j < ns.size(); ++j)
          for (std::size_t k = j; k < ns.size(); ++k) {
            NormalTuple<FinSubgroup> t({ns[i], ns[j], ns[k]});
            bool fast = is_connected_tuple(t).connected;
            bool slow = brute_connected(*g, {oracle::as_set(ns[i]), oracle::as_set(ns[j]), oracle::as_set(ns[k])});
            CHECK_MESSAGE(fast == slow, name);
            violating += !fast;
          }
    }
    CHECK(violating > 0);
  }

  TEST_CASE("symmetric commutator") {
    auto s4 = catalog("S4");
    auto G = whole_group(s4.group);
    auto a4 = catalog_subgroup(s4, "A4"), v4 = catalog_subgroup(s4, "V4");
    CHECK(symmetric_commutator(NormalTuple<FinSubgroup>({a4, v4})) == commutator_subgroup(a4, v4));
    CHECK(symmetric_commutator(NormalTuple<FinSubgroup>({G, G, G})) == commutator_subgroup(G, G));
    CHECK_THROWS_AS(symmetric_commutator(NormalTuple<FinSubgroup>({G})), InputError);
    // n=3 equals the three-factor product
    auto t = NormalTuple<FinSubgroup>({G, a4, v4});
    auto expect = product(product(commutator_subgroup(G, intersect(a4, v4)), commutator_subgroup(a4, intersect(G, v4))),
                          commutator_subgroup(v4, intersect(G, a4)));
    CHECK(symmetric_commutator(t) == expect);
  }

  TEST_CASE("symmetric commutator against brute force and permutations") {
    std::mt19937 rng(7);
    for (const char* name : {"S4", "D4", "Q8", "C2^2:C4", "D6", "SL23"}) {
      auto g = catalog(name).group;
      auto ns = normal_subgroups(g);
      std::uniform_int_distribution<std::size_t> pick(0, ns.size() - 1);
      for (int trial = 0; trial < 6; ++trial) {
        std::vector<FinSubgroup> v{ns[pick(rng)], ns[pick(rng)], ns[pick(rng)], ns[pick(rng)]};
        for (std::size_t n = 2; n <= 4; ++n) {
          std::vector<FinSubgroup> sub(v.begin(), v.begin() + static_cast<long>(n));
          auto s = symmetric_commutator(NormalTuple<FinSubgroup>(sub));
          std::vector<ElementSet> sets;
          for (const auto& x : sub) sets.push_back(oracle::as_set(x));
          CHECK(oracle::as_set(s) == brute_symmetric_commutator(*g, sets));
          std::sort(sub.begin(), sub.end());
          do {
            CHECK(symmetric_commutator(NormalTuple<FinSubgroup>(sub)) == s);
          } while (std::next_permutation(sub.begin(), sub.end()));
        }
      }
    }
  }

  TEST_CASE("pi_n examples") {
    auto s3 = catalog("S3");
    auto a3 = catalog_subgroup(s3, "A3");
    auto r = pi_n_colimit(NormalTuple<FinSubgroup>({a3, a3}));
    CHECK(r.invariants.to_string() == "Z/3");
    auto G = whole_group(s3.group);
    CHECK(pi_n_colimit(NormalTuple<FinSubgroup>({G, G, G})).invariants.to_string() == "Z/2");
    auto one = trivial_subgroup(s3.group);
    CHECK(pi_n_colimit(NormalTuple<FinSubgroup>({G, one, a3})).invariants.is_trivial());
    CHECK(pi_n_colimit(NormalTuple<FinSubgroup>({a3})).invariants.to_string() == "Z/3");
  }

  TEST_CASE("pi_n refuses disconnected subtuples") {
    auto v4 = catalog("V4");
    auto a = catalog_subgroup(v4, "A"), b = catalog_subgroup(v4, "B"), c = catalog_subgroup(v4, "AB");
    auto G = whole_group(v4.group);
    NormalTuple<FinSubgroup> t({a, b, c, G});
    auto checks = subtuple_checks(t);
    CHECK_FALSE(checks[3].passed);
    CHECK(checks[3].detail == "fails for I={1,2}, J={3}");
    CHECK(checks[0].passed);
    CHECK_THROWS_AS(pi_n_colimit(t), HypothesisError);
  }

  TEST_CASE("pi_n for two subgroups is (M meet N)/[M,N]") {
    for (const auto& name : catalog_names_up_to(24)) {
      auto g = catalog(name).group;
      auto ns = normal_subgroups(g);
      for (const auto& m : ns)
        for (const auto& n : ns) {
          auto r = pi_n_colimit(NormalTuple<FinSubgroup>({m, n}));
          CHECK(r.invariants == abelian_invariants_of_quotient(intersect(m, n), commutator_subgroup(m, n)));
        }
    }
    // oracle on a few groups
    for (const char* name : {"S3", "Q8", "D4", "A4", "Dic3"}) {
      auto g = catalog(name).group;
      for (const auto& m : normal_subgroups(g))
        for (const auto& n : normal_subgroups(g)) {
          auto ms = oracle::as_set(m), nsx = oracle::as_set(n);
          auto expect = oracle::quotient_invariants(g, oracle::meet_set(ms, nsx), oracle::commutator_set(*g, ms, nsx));
          CHECK(pi_n_colimit(NormalTuple<FinSubgroup>({m, n})).invariants == expect);
        }
    }
  }

  TEST_CASE("pi_3 with L=M=N=G is the abelianization") {
    for (const auto& name : catalog_names_up_to(48)) {
      auto g = catalog(name).group;
      auto G = whole_group(g);
      auto expect = oracle::quotient_invariants(g, oracle::as_set(G), oracle::commutator_set(*g, oracle::as_set(G), oracle::as_set(G)));
      CHECK_MESSAGE(pi_n_colimit(NormalTuple<FinSubgroup>({G, G, G})).invariants == expect, name);
    }
  }

  TEST_CASE("pi_1") {
    auto v4 = catalog("V4");
    auto a = catalog_subgroup(v4, "A"), b = catalog_subgroup(v4, "B");
    auto r = pi_1_colimit(NormalTuple<FinSubgroup>({a, b}));
    CHECK(quotient(r.denominator)->order() == 1);
    CHECK(r.notes.size() == 1);
    auto one = trivial_subgroup(v4.group);
    auto r2 = pi_1_colimit(NormalTuple<FinSubgroup>({one, one, one}));
    CHECK(quotient(r2.denominator)->order() == 4);
    CHECK(r2.invariants.to_string() == "Z/2 + Z/2");
    CHECK(r2.notes.empty());
  }

  TEST_CASE("pi_2 for three subgroups") {
    auto s3 = catalog("S3");
    auto G = whole_group(s3.group);
    auto a3 = catalog_subgroup(s3, "A3");
    auto one = trivial_subgroup(s3.group);
    CHECK(pi_2_colimit_n3(G, G, G).invariants.is_trivial());
    CHECK(pi_2_colimit_n3(a3, G, one).invariants.is_trivial());
    // L = N = A3, M = 1: A3 / A3
    CHECK(pi_2_colimit_n3(a3, one, a3).invariants.is_trivial());
    // L = A3, M = 1, N = 1: (A3 meet 1)/1
    CHECK(pi_2_colimit_n3(a3, one, one).invariants.is_trivial());
    // L = G, M = 1, N = A3 ... LM meet MN = A3, M(L meet N) = A3
    CHECK(pi_2_colimit_n3(G, one, a3).invariants.is_trivial());
  }

  TEST_CASE("pi_2 against element sets") {
    std::mt19937 rng(11);
    for (const char* name : {"S4", "D4", "Q8", "D6", "C2^2xC4", "SL23", "C2xA4"}) {
      auto g = catalog(name).group;
      auto ns = normal_subgroups(g);
      std::uniform_int_distribution<std::size_t> pick(0, ns.size() - 1);
      for (int trial = 0; trial < 8; ++trial) {
        const auto &l = ns[pick(rng)], &m = ns[pick(rng)], &n = ns[pick(rng)];
        auto r = pi_2_colimit_n3(l, m, n);
        auto L = oracle::as_set(l), M = oracle::as_set(m), N = oracle::as_set(n);
        auto num = oracle::meet_set(oracle::product_set(*g, L, M), oracle::product_set(*g, M, N));
        auto den = oracle::product_set(*g, M, oracle::meet_set(L, N));
        CHECK(oracle::as_set(r.numerator) == num);
        CHECK(oracle::as_set(r.denominator) == den);
        REQUIRE(r.abelian);
        CHECK(r.invariants == oracle::quotient_invariants(g, num, den));
      }
    }
  }

  TEST_CASE("h1(G,M,N)") {
    auto s3 = catalog("S3");
    auto a3 = catalog_subgroup(s3, "A3");
    auto G = whole_group(s3.group);
    auto one = trivial_subgroup(s3.group);
    CHECK(h1_GMN(a3, a3).invariants.is_trivial());
    CHECK(h1_GMN(G, G).invariants.to_string() == "Z/2");
    CHECK(h1_GMN(one, G).invariants.is_trivial());
    auto q8 = catalog("Q8");
    auto z = catalog_subgroup(q8, "center");
    // [Q8, Z] = 1 and [Z,Z] = 1
    CHECK(h1_GMN(z, z).invariants.to_string() == "Z/2");
  }

  TEST_CASE("pc engine agrees on formulas") {
    auto f = PcGroup::free_nilpotent(2, 3);
    auto F = whole_group(f);
    auto g2 = commutator_subgroup_pc(F, F);
    PcElement x = f->generator(0), y = f->generator(1);
    auto X = normal_closure_pc(f, std::span<const PcElement>(&x, 1));
    auto Y = normal_closure_pc(f, std::span<const PcElement>(&y, 1));
    CHECK(is_connected_tuple(NormalTuple<PcSubgroup>({X, Y, F})).connected);
    // (X meet Y)/[X,Y] = gamma_2 / gamma_2 here
    CHECK(pi_n_colimit(NormalTuple<PcSubgroup>({X, Y})).invariants.is_trivial());
    // F/[F,F] = Z^2
    CHECK(pi_n_colimit(NormalTuple<PcSubgroup>({F, F, F})).invariants.to_string() == "Z^2");
    CHECK(pi_1_colimit(NormalTuple<PcSubgroup>({X})).invariants.to_string() == "Z");
    CHECK(h1_GMN(F, F).invariants.to_string() == "Z^2");
    CHECK(pi_2_colimit_n3(X, g2, Y).abelian);
    auto t = NormalTuple<PcSubgroup>({X, Y, g2});
    auto s = symmetric_commutator(t);
    CHECK(s == symmetric_commutator(NormalTuple<PcSubgroup>({g2, X, Y})));
    CHECK(is_subset(s, intersect_pc(intersect_pc(X, Y), g2)));
  }

  TEST_CASE("truncated hopf formula") {
    // Zero exponent-sum words lie in the numerator for both inputs below;
    // sift all reduced words of length at most 8 through the denominator.
    auto sift = [](const PcGroupPtr& f, const ColimitReport<PcSubgroup>& rep) {
      std::vector<Word> layer{Word()};
      std::size_t tested = 0;
      for (int len = 0; len < 8; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer)
          for (int l = 0; l < 2; ++l)
            for (int e : {1, -1}) {
              Word v = w * Word::letter(l, e);
              if (v.length() == len + 1) next.push_back(v);
            }
        for (const auto& v : next) {
          std::int64_t sx = 0, sy = 0;
          for (const auto& s : v.syllables()) (s.letter == 0 ? sx : sy) += s.exponent;
          if (sx || sy) continue;
          auto p = f->collect(v);
          CHECK(rep.numerator.contains(p));
          CHECK(rep.denominator.contains(p));
          ++tested;
        }
        layer = std::move(next);
      }
      return tested;
    };
    auto f = PcGroup::free_nilpotent(2, 3);
    PcElement x = f->generator(0), y = f->generator(1);
    auto rep = hopf_h3_check(f, y, y);
    CHECK(rep.invariants.is_trivial());
    CHECK(sift(f, rep) == 360);
    auto rep2 = hopf_h3_check(f, x, y);
    CHECK(rep2.invariants.is_trivial());
    CHECK(sift(f, rep2) == 360);
    auto f1 = PcGroup::free_nilpotent(1, 3);
    PcElement z = f1->generator(0);
    CHECK(hopf_h3_check(f1, z, z).invariants.is_trivial());
  }
}

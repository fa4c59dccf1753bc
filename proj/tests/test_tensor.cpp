#include <doctest.h>

#include <algorithm>
#include <set>

#include "colimit/catalog.hpp"
#include "colimit/dsl.hpp"
#include "colimit/errors.hpp"
#include "colimit/tensor.hpp"

using namespace colimit;

namespace {

std::vector<FinSubgroup> copies(const FinSubgroup& s, std::size_t n) { return std::vector<FinSubgroup>(n, s); }

bool has_relator(const TensorPresentation& tp, const Word& w) {
  Word c = cyclic_normal_form(w);
  const auto& rels = tp.base().relators;
  return std::find(rels.begin(), rels.end(), c) != rels.end();
}

// Rewrites (B,A) symbols with 1 in B as inverses of (A,B) symbols.
Presentation one_orientation(const TensorPresentation& tp) {
  const unsigned full = (1U << tp.arity()) - 1;
  std::vector<int> newid(tp.symbols().size(), -1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < tp.symbols().size(); ++i) {
    if (tp.symbols()[i].a_set & 1U) {
      newid[i] = static_cast<int>(names.size());
      names.push_back(tp.base().generators[static_cast<int>(i)].name());
    }
  }
  Presentation p;
  p.generators = Alphabet(names);
  for (const auto& r : tp.base().relators) {
    std::vector<Syllable> out;
    for (const auto& s : r.syllables()) {
      const auto& t = tp.symbols()[static_cast<std::size_t>(s.letter)];
      if (t.a_set & 1U) {
        out.push_back({newid[static_cast<std::size_t>(s.letter)], s.exponent});
      } else {
        int twin = tp.symbol_index(full & ~t.a_set, t.b, t.a);
        out.push_back({newid[static_cast<std::size_t>(twin)], -s.exponent});
      }
    }
    p.relators.push_back(Word(std::span<const Syllable>(out)));
  }
  return p;
}

}  // namespace

TEST_SUITE("tensor") {
  TEST_CASE("symbol counts") {
    auto c2 = catalog("C2").group;
    auto tp = build_T(copies(whole_group(c2), 2));
    CHECK(tp.symbols().size() == 8);
    CHECK(tp.partitions().size() == 2);
    auto tp3 = build_T(copies(whole_group(c2), 3));
    CHECK(tp3.partitions().size() == 6);
    CHECK(tp3.symbols().size() == 24);
    CHECK(tp.base().generators[0].name() == "t_1_2_0_0");
    CHECK(tp3.base().generators[static_cast<int>(tp3.symbol_index(0b011, 1, 1))].name() == "t_12_3_1_1");
    // family (iii) needs three nonempty parts
    CHECK(tp.family_counts()[2] == 0);
    CHECK(tp3.family_counts()[2] == 6 * 8);
    CHECK(tp.family_counts()[3] == 64);
  }

  TEST_CASE("symbols range over the intersections") {
    auto s4 = catalog("S4");
    auto G = whole_group(s4.group), a4 = catalog_subgroup(s4, "A4"), v4 = catalog_subgroup(s4, "V4");
    auto tp = build_T({G, a4, v4});
    std::size_t expect = 0;
    for (unsigned a = 1; a < 7; ++a) {
      std::vector<FinSubgroup> all{G, a4, v4};
      auto m = [&](unsigned set) {
        FinSubgroup r = G;
        for (int i = 0; i < 3; ++i)
          if (set >> i & 1U) r = intersect(r, all[static_cast<std::size_t>(i)]);
        return r.order();
      };
      expect += m(a) * m(7 & ~a);
    }
    CHECK(tp.symbols().size() == expect);
    for (const auto& s : tp.symbols()) {
      CHECK(tp.meet(s.a_set).contains(s.a));
      CHECK(tp.meet(s.b_set).contains(s.b));
      CHECK((s.a_set | s.b_set) == 7U);
      CHECK((s.a_set & s.b_set) == 0U);
    }
    CHECK_THROWS_AS(build_T({G}), InputError);
    int x = s4.group->gen_images()[0];
    CHECK_THROWS_AS(build_T({G, generated_subgroup(s4.group, std::span<const int>(&x, 1))}), HypothesisError);
  }

  TEST_CASE("three-fold relation as displayed") {
    auto s3 = catalog("S3");
    const auto& g = *s3.group;
    auto tp = build_T(copies(whole_group(s3.group), 3));
    const auto& names = tp.base().generators;
    std::size_t checked = 0;
    for (int u = 0; u < 6; ++u)
      for (int v = 0; v < 6; ++v)
        for (int w = 0; w < 6; ++w) {
          auto name = [&](const char* a, const char* b, int x, int y) {
            return std::string("t_") + a + "_" + b + "_" + std::to_string(x) + "_" + std::to_string(y);
          };
          auto conj = [&](int x, int by) { return g.mul(g.mul(by, x), g.inv(by)); };
          auto comm = [&](int x, int y) { return g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y))); };
          // U={1}, V={2}, W={3}
          std::string text = name("12", "3", conj(comm(g.inv(u), v), u), conj(w, u)) + "*" +
                             name("13", "2", conj(comm(g.inv(w), u), w), conj(v, w)) + "*" +
                             name("23", "1", conj(comm(g.inv(v), w), v), conj(u, v));
          Word r = parse_word(text, names);
          if (cyclic_normal_form(r).is_identity()) continue;
          CHECK(has_relator(tp, r));
          ++checked;
        }
    CHECK(checked > 100);
  }

  TEST_CASE("relators map to the identity and the action is compatible") {
    for (const auto& name : catalog_names_up_to(8)) {
      auto cg = catalog(name);
      auto ns = normal_subgroups(cg.group);
      for (std::size_t n : {2U, 3U}) {
        // all subgroups equal to G, and one mixed tuple
        std::vector<std::vector<FinSubgroup>> inputs{copies(whole_group(cg.group), n)};
        std::vector<FinSubgroup> mixed;
        for (std::size_t i = 0; i < n; ++i) mixed.push_back(ns[(i + 1) % ns.size()]);
        inputs.push_back(mixed);
        for (const auto& in : inputs) {
          auto tp = build_T(in);
          for (const auto& r : tp.base().relators) CHECK(tp.boundary(r) == 0);
          const auto& g = *cg.group;
          for (std::size_t s = 0; s < tp.symbols().size(); ++s)
            for (std::size_t x = 0; x < g.order(); ++x) {
              int gx = static_cast<int>(x);
              CHECK(tp.boundary(tp.act(gx, static_cast<int>(s))) == g.conjugate(tp.boundary(static_cast<int>(s)), gx));
            }
        }
      }
    }
  }

  TEST_CASE("boundary image") {
    auto c6 = catalog("C6").group;
    CHECK(boundary_image(build_T(copies(whole_group(c6), 2))).is_trivial());
    auto s3 = catalog("S3").group;
    auto img = boundary_image(build_T(copies(whole_group(s3), 2)));
    CHECK(img.order() == 3);
    auto G = whole_group(s3);
    CHECK(img == commutator_subgroup(G, G));
    auto s4 = catalog("S4");
    auto a4 = catalog_subgroup(s4, "A4"), v4 = catalog_subgroup(s4, "V4"), S = whole_group(s4.group);
    auto tp = build_T({S, a4, v4});
    // product of [N_A, N_B] over the partitions
    FinSubgroup expect = trivial_subgroup(s4.group);
    for (unsigned a : tp.partitions()) expect = product(expect, commutator_subgroup(tp.meet(a), tp.meet(7 & ~a)));
    CHECK(boundary_image(tp) == expect);
  }

  TEST_CASE("E adds x (x) x") {
    auto c2 = catalog("C2").group;
    auto G = whole_group(c2);
    auto e = build_E(G, G);
    auto t = build_T(copies(G, 3));
    CHECK(e.family_counts()[4] == 6);
    CHECK(e.base().relators.size() == t.base().relators.size() + 6);
    auto s4 = catalog("S4");
    auto a4 = catalog_subgroup(s4, "A4"), v4 = catalog_subgroup(s4, "V4");
    auto e2 = build_E(a4, v4);
    CHECK(e2.family_counts()[4] == 3 * 6);
    auto one = trivial_subgroup(s4.group);
    auto e3 = build_E(a4, one);
    CHECK(e3.family_counts()[4] == 0);
    CHECK(e3.base() == build_T({whole_group(s4.group), a4, one}).base());
  }

  TEST_CASE("budget") {
    auto s4 = catalog("S4").group;
    TensorBudget small;
    small.symbols = 100;
    CHECK_THROWS_AS(build_T(copies(whole_group(s4), 2), small), BudgetError);
  }

  TEST_CASE("kernel of the boundary") {
    struct Case {
      const char* group;
      std::size_t n, t_order, image, kernel;
      const char* ab;
    };
    for (const auto& c : std::vector<Case>{{"C2", 2, 2, 1, 2, "Z/2"},
                                           {"C3", 2, 3, 1, 3, "Z/3"},
                                           {"V4", 2, 16, 1, 16, "Z/2 + Z/2 + Z/2 + Z/2"},
                                           {"C4", 2, 4, 1, 4, "Z/4"},
                                           {"S3", 2, 6, 3, 2, "Z/2"},
                                           {"C2", 3, 8, 1, 8, "Z/2 + Z/2 + Z/2"}}) {
      auto g = catalog(c.group).group;
      auto tp = build_T(copies(whole_group(g), c.n));
      auto h = kernel_of_boundary(tp, kDefaultCosetLimit, Strategy::hlt);
      auto f = kernel_of_boundary(tp, kDefaultCosetLimit, Strategy::felsch);
      for (const auto& r : {h, f}) {
        CHECK(r.complete);
        CHECK(r.t_order == c.t_order);
        CHECK(r.image_order == c.image);
        CHECK(r.kernel_order == c.kernel);
        CHECK(r.kernel_abelianization.to_string() == c.ab);
        CHECK(r.realized);
        CHECK(r.kernel_abelian);
        CHECK(r.consistent);
      }
    }
  }

  TEST_CASE("abelian ambient gives ker = T") {
    for (const char* name : {"C2", "C3", "V4", "C4", "C5"}) {
      auto g = catalog(name).group;
      auto r = kernel_of_boundary(build_T(copies(whole_group(g), 2)));
      CHECK(r.image_order == 1);
      CHECK(r.kernel_order == r.t_order);
    }
  }

  TEST_CASE("one orientation of generators suffices") {
    for (const char* name : {"C2", "C3", "V4", "C4"}) {
      auto g = catalog(name).group;
      for (std::size_t n : {2U, 3U}) {
        if (n == 3 && g->order() > 2) continue;
        auto tp = build_T(copies(whole_group(g), n));
        auto full = todd_coxeter(tp.base(), {});
        auto half = todd_coxeter(one_orientation(tp), {});
        REQUIRE(full.complete());
        REQUIRE(half.complete());
        CHECK(full.index() == half.index());
      }
    }
  }

  TEST_CASE("limit exhaustion is reported") {
    auto g = catalog("S3").group;
    auto r = kernel_of_boundary(build_T(copies(whole_group(g), 2)), 3);
    CHECK_FALSE(r.complete);
    CHECK(r.kernel_abelianization.to_string() == "Z/2");
  }

  TEST_CASE("text export") {
    auto g = catalog("C2").group;
    auto tp = build_T(copies(whole_group(g), 2));
    auto back = parse_presentation(tp.to_dsl());
    CHECK(back == tp.base());
    CHECK(tp.to_dsl().starts_with("gens: t_1_2_0_0, t_1_2_0_1, t_1_2_1_0, t_1_2_1_1, t_2_1_0_0"));
  }
}

#include <algorithm>
#include <random>
#include <sstream>

#include "colimit/errors.hpp"
#include "colimit/hall.hpp"
#include "colimit/magnus.hpp"
#include "colimit/pc.hpp"
#include "doctest.h"

using namespace colimit;

namespace {

// Witt numbers from the Moebius sum, computed independently of the library.
long long moebius_witt(int r, int w) {
  auto mu = [](int n) {
    int m = 1;
    for (int p = 2; p <= n; ++p) {
      if (n % p) continue;
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      if (e > 1) return 0;
      m = -m;
    }
    return m;
  };
  long long s = 0;
  for (int d = 1; d <= w; ++d) {
    if (w % d) continue;
    long long p = 1;
    for (int i = 0; i < w / d; ++i) p *= r;
    s += mu(d) * p;
  }
  return s / w;
}

// Lyndon words counted by brute force: strictly smaller than all rotations.
long long brute_lyndon(int r, int w) {
  long long total = 1;
  for (int i = 0; i < w; ++i) total *= r;
  long long count = 0;
  std::vector<int> word(static_cast<std::size_t>(w));
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = w - 1; i >= 0; --i) {
      word[static_cast<std::size_t>(i)] = static_cast<int>(c % r);
      c /= r;
    }
    bool ok = true;
    for (int s = 1; s < w && ok; ++s) {
      std::vector<int> rot(word.begin() + s, word.end());
      rot.insert(rot.end(), word.begin(), word.begin() + s);
      ok = word < rot;
    }
    count += ok;
  }
  return count;
}

Word random_word(std::mt19937& rng, int rank, int len, int maxexp = 2) {
  std::uniform_int_distribution<int> letter(0, rank - 1), e(-maxexp, maxexp);
  std::vector<Syllable> s;
  for (int i = 0; i < len; ++i) s.push_back({letter(rng), e(rng)});
  return Word(std::span<const Syllable>(s));
}

PcElement vec(std::initializer_list<int> v) {
  PcElement out;
  for (int x : v) out.push_back(x);
  return out;
}

void check_igs_closed(const PcSubgroup& h) {
  const PcGroup& g = *h.parent();
  for (const auto& a : h.igs()) {
    for (const auto& b : h.igs()) CHECK(h.contains(g.commutator(a, b)));
  }
}

}  // namespace

TEST_SUITE("pc") {

TEST_CASE("basis sizes match Witt numbers") {
  for (int r = 1; r <= 4; ++r) {
    for (int c = 1; c <= 5; ++c) {
      HallBasis b(r, c);
      long long total = 0;
      for (int w = 1; w <= c; ++w) {
        CHECK(b.count_of_weight(w) == moebius_witt(r, w));
        CHECK(static_cast<long long>(witt_number(r, w)) == moebius_witt(r, w));
        total += moebius_witt(r, w);
      }
      CHECK(b.size() == total);
    }
  }
  for (int r = 1; r <= 3; ++r) {
    for (int w = 1; w <= 6; ++w) CHECK(brute_lyndon(r, w) == moebius_witt(r, w));
  }
  CHECK(PcGroup::free_nilpotent(1, 4)->size() == 1);
  CHECK(PcGroup::free_nilpotent(2, 2)->size() == 3);
  CHECK(PcGroup::free_nilpotent(3, 4)->size() == 32);
}

TEST_CASE("basis brackets follow the standard factorization") {
  HallBasis b(2, 4);
  Alphabet a = Alphabet::indexed("y", 2);
  CHECK(b.render(2, a) == "[y0,y1]");
  CHECK(b.render(3, a) == "[y0,[y0,y1]]");
  CHECK(b.render(4, a) == "[[y0,y1],y1]");
}

TEST_CASE("budget") {
  CHECK_THROWS_AS(PcGroup::free_nilpotent(6, 7), BudgetError);
  CHECK_THROWS_AS(PcGroup::free_nilpotent(3, 5, 10), BudgetError);
  CHECK_NOTHROW(PcGroup::free_nilpotent(3, 5));
}

TEST_CASE("collection agrees with the Magnus representation") {
  std::mt19937 rng(99);
  for (auto [r, c] : {std::pair{2, 4}, {3, 4}, {2, 6}, {3, 5}}) {
    auto g = PcGroup::free_nilpotent(r, c);
    MagnusCoordinates m(g->basis());
    for (int trial = 0; trial < 25; ++trial) {
      Word w = random_word(rng, r, 10);
      CHECK(g->collect(w) == m.coordinates(w));
    }
    for (int i = 0; i < g->size(); ++i) CHECK(g->collect(g->basis().word(i)) == g->generator(i));
  }
}

TEST_CASE("class 2 agrees with unitriangular matrices") {
  auto g = PcGroup::free_nilpotent(2, 2);
  using M = std::array<std::array<long long, 3>, 3>;
  auto mm = [](const M& a, const M& b) {
    M r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
  };
  auto gen = [](int letter, long long e) {
    M m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    if (letter == 0) m[0][1] = e;
    else m[1][2] = e;
    return m;
  };
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Word w = random_word(rng, 2, 8, 3);
    M m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (const auto& s : w.syllables()) m = mm(m, gen(s.letter, s.exponent));
    // a^x b^y [a,b]^z has x = m01, y = m12, m02 = x*y + z.
    PcElement e = g->collect(w);
    CHECK(e[0] == m[0][1]);
    CHECK(e[1] == m[1][2]);
    CHECK(e[2] == m[0][2] - m[0][1] * m[1][2]);
  }
  // a1 a2 a1^-1 = a2 [a2^-1, a1]... collected: a2 * [a1,a2].
  Word conj{{0, 1}, {1, 1}, {0, -1}};
  CHECK(g->collect(conj) == vec({0, 1, 1}));
}

TEST_CASE("group axioms on random elements") {
  std::mt19937 rng(17);
  auto g = PcGroup::free_nilpotent(3, 5);
  for (int trial = 0; trial < 20; ++trial) {
    PcElement u = g->collect(random_word(rng, 3, 6, 3));
    PcElement v = g->collect(random_word(rng, 3, 6, 3));
    PcElement w = g->collect(random_word(rng, 3, 6, 3));
    CHECK(g->mul(u, g->mul(v, w)) == g->mul(g->mul(u, v), w));
    CHECK(PcGroup::is_identity(g->mul(u, g->inverse(u))));
    CHECK(PcGroup::is_identity(g->mul(g->inverse(u), u)));
    CHECK(g->commutator(u, v) == g->inverse(g->commutator(v, u)));
  }
}

TEST_CASE("large powers") {
  std::mt19937 rng(23);
  auto g = PcGroup::free_nilpotent(2, 5);
  MagnusCoordinates m(g->basis());
  for (int trial = 0; trial < 10; ++trial) {
    Word w = random_word(rng, 2, 4, 2);
    PcElement x = g->collect(w);
    for (int e : {7, 13, -9, 40}) {
      PcElement slow = g->identity();
      PcElement base = e > 0 ? x : g->inverse(x);
      for (int i = 0; i < std::abs(e); ++i) slow = g->mul(slow, base);
      CHECK(g->power(x, e) == slow);
      CHECK(g->power(x, e) == m.coordinates(w.pow(e)));
    }
    // Large conjugating exponents.
    Word big{{0, 37}, {1, 1}, {0, -37}, {1, -25}};
    CHECK(g->collect(big) == m.coordinates(big));
  }
}

TEST_CASE("subgroups of the free abelian group") {
  auto g = PcGroup::free_nilpotent(2, 1);
  CHECK(subgroup(g, std::vector<PcElement>{}).is_trivial());
  std::vector<PcElement> gens{vec({2, 0}), vec({0, 1})};
  PcSubgroup h = subgroup(g, gens);
  CHECK(h.igs() == std::vector<PcElement>{vec({2, 0}), vec({0, 1})});
  std::vector<PcElement> all{g->generator(0), g->generator(1)};
  CHECK(subgroup(g, all) == whole_group(g));
  std::vector<PcElement> messy{vec({4, 6}), vec({6, 3}), vec({2, 9})};
  PcSubgroup s = subgroup(g, messy);
  // Hermite form of the lattice spanned by (4,6),(6,3),(2,9).
  EchelonLattice l(2);
  for (const auto& v : messy) l.add(v);
  CHECK(s.igs() == l.hermite());
  PcSubgroup a = subgroup(g, std::vector<PcElement>{vec({1, 0}), vec({0, 1})});
  PcSubgroup b = subgroup(g, std::vector<PcElement>{vec({2, 0}), vec({0, 3})});
  CHECK(central_quotient_invariants(a, b).to_string() == "Z/6");
  CHECK(central_quotient_invariants(a, a).is_trivial());
}

TEST_CASE("canonical igs is independent of generator order") {
  auto g = PcGroup::free_nilpotent(3, 4);
  std::mt19937 rng(31);
  std::vector<PcElement> gens;
  for (int i = 0; i < 4; ++i) gens.push_back(g->collect(random_word(rng, 3, 3, 2)));
  PcSubgroup h = subgroup(g, gens);
  check_igs_closed(h);
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(gens.begin(), gens.end(), rng);
    CHECK(subgroup(g, gens) == h);
  }
  for (const auto& x : gens) CHECK(h.contains(x));
  PcSubgroup n = normal_closure_pc(g, gens);
  CHECK(is_normal(n));
  CHECK(is_subset(h, n));
}

TEST_CASE("intersection of normal closures") {
  auto g = PcGroup::free_nilpotent(2, 2);
  std::vector<PcElement> y0{g->generator(0)}, y1{g->generator(1)};
  PcSubgroup h = normal_closure_pc(g, y0), k = normal_closure_pc(g, y1);
  PcSubgroup i = intersect_pc(h, k);
  CHECK(i.igs() == std::vector<PcElement>{vec({0, 0, 1})});
  CHECK(intersect_pc(h, whole_group(g)) == h);
  CHECK(intersect_pc(h, trivial_subgroup(g)).is_trivial());

  // Membership oracle: x in H and x in K iff x in H meet K.
  auto g3 = PcGroup::free_nilpotent(3, 4);
  std::mt19937 rng(41);
  std::vector<PcElement> a{g3->collect(Word{{0, 1}, {1, 1}})}, b{g3->collect(Word{{1, 1}, {2, -1}})};
  PcSubgroup H = normal_closure_pc(g3, a), K = normal_closure_pc(g3, b);
  PcSubgroup I = intersect_pc(H, K);
  check_igs_closed(I);
  CHECK(is_normal(I));
  CHECK(is_subset(I, H));
  CHECK(is_subset(I, K));
  CHECK(is_subset(commutator_subgroup_pc(H, K), I));
  for (int trial = 0; trial < 200; ++trial) {
    PcElement x = g3->collect(random_word(rng, 3, 5, 2));
    PcElement hx = g3->conjugate(g3->power(a[0], trial % 3 + 1), x);
    PcElement kx = g3->conjugate(b[0], g3->collect(random_word(rng, 3, 3)));
    for (const PcElement& y : {x, hx, kx, g3->commutator(hx, kx), g3->mul(hx, kx)}) {
      CHECK(I.contains(y) == (H.contains(y) && K.contains(y)));
    }
  }
}

TEST_CASE("commutator subgroups") {
  auto g = PcGroup::free_nilpotent(2, 2);
  PcSubgroup full = whole_group(g);
  CHECK(commutator_subgroup_pc(full, trivial_subgroup(g)).is_trivial());
  CHECK(commutator_subgroup_pc(full, full).igs() == std::vector<PcElement>{vec({0, 0, 1})});
  auto g3 = PcGroup::free_nilpotent(2, 3);
  std::vector<PcElement> y0{g3->generator(0)}, y1{g3->generator(1)};
  PcSubgroup h = normal_closure_pc(g3, y0), k = normal_closure_pc(g3, y1);
  std::vector<PcElement> c{g3->commutator(y0[0], y1[0])};
  CHECK(commutator_subgroup_pc(h, k) == normal_closure_pc(g3, c));
  CHECK(commutator_subgroup_pc(h, k) == commutator_subgroup_pc(k, h));
}

TEST_CASE("central quotient invariants") {
  auto g = PcGroup::free_nilpotent(2, 2);
  std::vector<PcElement> y0{g->generator(0)}, y1{g->generator(1)};
  PcSubgroup i = intersect_pc(normal_closure_pc(g, y0), normal_closure_pc(g, y1));
  AbelianInvariants inv = central_quotient_invariants(i, trivial_subgroup(g));
  CHECK(inv.free_rank == 1);
  CHECK(inv.torsion.empty());
  PcSubgroup full = whole_group(g);
  CHECK_THROWS_AS(central_quotient_invariants(full, trivial_subgroup(g)), HypothesisError);
  CHECK(central_quotient_invariants(full, commutator_subgroup_pc(full, full)).to_string() == "Z^2");
  CHECK_THROWS_AS(central_quotient_invariants(i, full), HypothesisError);
  CHECK_FALSE(order_modulo(vec({0, 0, 1}), i, trivial_subgroup(g)).has_value());
  std::vector<PcElement> sq{vec({0, 0, 2})};
  CHECK(*order_modulo(vec({0, 0, 1}), i, subgroup(g, sq)) == 2);
}

TEST_CASE("projection to lower class") {
  auto g4 = PcGroup::free_nilpotent(2, 4);
  auto g3 = PcGroup::free_nilpotent(2, 3);
  std::vector<PcElement> r4{g4->collect(Word{{0, 2}, {1, -1}})}, r3{g3->collect(Word{{0, 2}, {1, -1}})};
  CHECK(project(normal_closure_pc(g4, r4), g3) == normal_closure_pc(g3, r3));
  std::vector<PcElement> y0{g4->generator(0)}, y1{g4->generator(1)};
  std::vector<PcElement> z0{g3->generator(0)}, z1{g3->generator(1)};
  CHECK(project(intersect_pc(normal_closure_pc(g4, y0), normal_closure_pc(g4, y1)), g3) ==
        intersect_pc(normal_closure_pc(g3, z0), normal_closure_pc(g3, z1)));
}

TEST_CASE("csv export") {
  auto g = PcGroup::free_nilpotent(2, 2);
  std::ostringstream out;
  whole_group(g).write_csv(out);
  CHECK(out.str() == "depth,b0,b1,b2\n0,1,0,0\n1,0,1,0\n2,0,0,1\n");
}

}

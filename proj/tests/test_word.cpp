#include <random>

#include "colimit/dsl.hpp"
#include "colimit/errors.hpp"
#include "colimit/word.hpp"
#include "doctest.h"

using namespace colimit;

namespace {

Word w(std::initializer_list<Syllable> s) { return Word(s); }

Word random_word(std::mt19937& rng, int ngens, int len) {
  std::vector<Syllable> s;
  std::uniform_int_distribution<int> letter(0, ngens - 1), exp(-3, 3);
  for (int i = 0; i < len; ++i) s.push_back({letter(rng), exp(rng)});
  return Word(std::span<const Syllable>(s));
}

// Reference reducer over expanded letters with a stack.
std::vector<int> stack_reduce(const std::vector<int>& letters) {
  std::vector<int> out;
  for (int l : letters) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("word") {

TEST_CASE("free reduction") {
  CHECK(w({{0, 1}, {0, -1}}).is_identity());
  CHECK(w({{0, 1}, {1, 1}, {1, -1}, {0, 1}}) == Word::letter(0, 2));
  Word r = w({{0, 2}, {1, -3}});
  CHECK(reduce(r) == r);
  std::vector<Syllable> raw{{0, 1}, {1, 2}, {1, -2}, {0, -1}, {2, 1}};
  CHECK(reduce(raw) == Word::letter(2));
}

TEST_CASE("reduction agrees with a letter stack") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Word a = random_word(rng, 3, 6), b = random_word(rng, 3, 6);
    std::vector<int> cat = a.letters();
    auto bl = b.letters();
    cat.insert(cat.end(), bl.begin(), bl.end());
    CHECK((a * b).letters() == stack_reduce(cat));
    CHECK((a * b).length() <= a.length() + b.length());
  }
}

TEST_CASE("commutator and conjugate conventions") {
  Word x = Word::letter(0), y = Word::letter(1);
  CHECK(commutator(x, x).is_identity());
  CHECK(commutator(x, Word()).is_identity());
  CHECK(commutator(x, y) == w({{0, 1}, {1, 1}, {0, -1}, {1, -1}}));
  CHECK(conjugate(y, x) == w({{0, 1}, {1, 1}, {0, -1}}));
  CHECK(conjugate(y, Word()) == y);
  CHECK(conjugate(Word(), x).is_identity());
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Word a = random_word(rng, 3, 4), b = random_word(rng, 3, 4);
    CHECK((commutator(a, b) * commutator(b, a)).is_identity());
  }
}

TEST_CASE("left-normed commutators") {
  Word y0 = Word::letter(0), y1 = Word::letter(1), y2 = Word::letter(2);
  CHECK(left_normed_commutator(SignedLetterTuple{{0, 1}}) == y0);
  CHECK(left_normed_commutator(SignedLetterTuple{{0, 1}, {1, 1}}) == commutator(y0, y1));
  CHECK(left_normed_commutator(SignedLetterTuple{{0, 1}, {1, -1}, {2, 1}}) ==
        commutator(commutator(y0, y1.inverse()), y2));
  CHECK_THROWS_AS(left_normed_commutator(SignedLetterTuple{}), InputError);
}

TEST_CASE("hopf elements render as the displayed brackets") {
  const char* expected[] = {
      "[y0,y1]",
      "[[y0,y1],[y0,y1y2]]",
      "[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3]]]",
      "[[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3]]],"
      "[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3y4]]]]",
      "[[[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3]]],"
      "[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3y4]]]],"
      "[[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3]]],"
      "[[[y0,y1],[y0,y1y2]],[[y0,y1],[y0,y1y2y3y4y5]]]]]",
  };
  for (int k = 1; k <= 5; ++k) {
    CAPTURE(k);
    Alphabet a = hopf_alphabet(k);
    CHECK(hopf_term(k).render(a) == expected[k - 1]);
    CHECK(hopf_term(k).weight() == (1 << k));
    Word h = hopf_element(k);
    CHECK(h.max_letter() == k);
    // The bracket string parses back to the same word.
    std::string text = expected[k - 1];
    std::string dsl;
    for (std::size_t i = 0; i < text.size(); ++i) {
      dsl += text[i];
      if (std::isdigit(static_cast<unsigned char>(text[i])) && i + 1 < text.size() && text[i + 1] == 'y') dsl += '*';
    }
    CHECK(parse_word(dsl, a) == h);
  }
  CHECK(hopf_element(1) == commutator(Word::letter(0), Word::letter(1)));
  CHECK_THROWS_AS(hopf_element(0), InputError);
}

TEST_CASE("cyclic normal form") {
  Word a = w({{0, 1}, {1, 2}, {0, -1}});
  CHECK(cyclic_normal_form(a) == cyclic_normal_form(Word::letter(1, 2)));
  CHECK(cyclic_normal_form(a).length() == 2);
  Word r = w({{0, 2}, {1, -3}});
  Word rot = w({{1, -3}, {0, 2}});
  CHECK(cyclic_normal_form(r) == cyclic_normal_form(rot));
  CHECK(cyclic_normal_form(r) == cyclic_normal_form(r.inverse()));
}

TEST_CASE("generator names") {
  CHECK(Generator::valid_name("x1"));
  CHECK(Generator::valid_name("t_12_3_0_1"));
  CHECK_FALSE(Generator::valid_name("1x"));
  CHECK_FALSE(Generator::valid_name(""));
  Alphabet a;
  a.add(Generator("x"));
  CHECK_THROWS_AS(a.add(Generator("x")), InputError);
}

TEST_CASE("presentation parsing") {
  Presentation p = parse_presentation("gens: x,y | rels: x^2*y^-3, x*y*x*y^-1*x^-1*y^-1");
  CHECK(p.generators.size() == 2);
  REQUIRE(p.relators.size() == 2);
  CHECK(p.relators[0] == w({{0, 2}, {1, -3}}));
  Presentation free1 = parse_presentation("gens: x | rels:");
  CHECK(free1.generators.size() == 1);
  CHECK(free1.relators.empty());
  CHECK_THROWS_AS(parse_presentation("gens: x | rels: z"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: x, x | rels:"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: x | rels: x^"), ParseError);
  Presentation br = parse_presentation("gens: a, b | rels: [a,b]^2, (a*b)^3, [[a,b],a^-1]");
  CHECK(br.relators[0] == commutator(Word::letter(0), Word::letter(1)).pow(2));
  try {
    parse_presentation("gens: x\n | rels: x, q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 13);
  }
}

TEST_CASE("render/parse round trip on random presentations") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> ngen(1, 5), nrel(0, 5), len(0, 8);
    int g = ngen(rng);
    Presentation p;
    p.generators = Alphabet::indexed(trial % 2 ? "x" : "gen_", g);
    int r = nrel(rng);
    for (int i = 0; i < r; ++i) p.relators.push_back(random_word(rng, g, len(rng)));
    std::string text = render_presentation(p);
    CAPTURE(text);
    CHECK(parse_presentation(text) == p);
  }
}

}

TEST_CASE("powers" * doctest::test_suite("word")) {
  Word w{{1, 2}, {0, 1}, {1, 2}};
  Word slow;
  for (int i = 0; i < 7; ++i) slow *= w;
  CHECK(w.pow(7) == slow);
  CHECK(w.pow(-3) == w.inverse().pow(3));
  CHECK(w.pow(0).is_identity());
  Word x = w;
  x *= x;
  CHECK(x == w * w);
}

#include "colimit/word.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

#include "colimit/errors.hpp"

namespace colimit {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("word exponent overflow");
  }
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("word exponent overflow");
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Generator / Alphabet

Generator::Generator(std::string name) : name_(std::move(name)) {
  if (!valid_name(name_)) {
    throw InputError("invalid generator name '" + name_ + "'");
  }
}

bool Generator::valid_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Alphabet::Alphabet(const std::vector<std::string>& names) {
  for (const auto& n : names) add(Generator(n));
}

int Alphabet::add(const Generator& g) {
  if (index_.count(g.name())) {
    throw InputError("duplicate generator '" + g.name() + "'");
  }
  int id = size();
  gens_.push_back(g);
  index_.emplace(g.name(), id);
  return id;
}

int Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

Alphabet Alphabet::indexed(std::string_view stem, int count) {
  Alphabet a;
  for (int i = 0; i < count; ++i) {
    a.add(Generator(std::string(stem) + std::to_string(i)));
  }
  return a;
}

// ---------------------------------------------------------------------------
// Word

void Word::push(Syllable s) {
  if (s.exponent == 0) return;
  if (!syl_.empty() && syl_.back().letter == s.letter) {
    syl_.back().exponent = checked_add(syl_.back().exponent, s.exponent);
    if (syl_.back().exponent == 0) syl_.pop_back();
  } else {
    syl_.push_back(s);
  }
}

Word::Word(std::span<const Syllable> syllables) {
  syl_.reserve(syllables.size());
  for (const auto& s : syllables) push(s);
}

Word reduce(std::span<const Syllable> syllables) { return Word(syllables); }

Word Word::letter(int letter, std::int64_t exponent) {
  Word w;
  w.push({letter, exponent});
  return w;
}

std::int64_t Word::length() const {
  std::int64_t n = 0;
  for (const auto& s : syl_) n = checked_add(n, s.exponent < 0 ? -s.exponent : s.exponent);
  return n;
}

int Word::max_letter() const {
  int m = -1;
  for (const auto& s : syl_) m = std::max(m, s.letter);
  return m;
}

Word Word::inverse() const {
  Word w;
  w.syl_.reserve(syl_.size());
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) {
    w.syl_.push_back({it->letter, -it->exponent});
  }
  return w;
}

Word Word::pow(std::int64_t n) const {
  if (n == 0 || is_identity()) return {};
  if (n < 0) return inverse().pow(-n);
  if (syl_.size() == 1) return letter(syl_[0].letter, checked_mul(syl_[0].exponent, n));
  Word result, base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

std::vector<int> Word::letters() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(length()));
  for (const auto& s : syl_) {
    int code = s.exponent > 0 ? s.letter + 1 : -(s.letter + 1);
    std::int64_t n = s.exponent > 0 ? s.exponent : -s.exponent;
    for (std::int64_t i = 0; i < n; ++i) out.push_back(code);
  }
  return out;
}

Word& Word::operator*=(const Word& rhs) {
  if (&rhs == this) {
    Word copy = rhs;
    return *this *= copy;
  }
  for (const auto& s : rhs.syl_) push(s);
  return *this;
}

std::string Word::render(const Alphabet& alphabet) const {
  if (syl_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < syl_.size(); ++i) {
    if (i) out += '*';
    out += alphabet[syl_[i].letter].name();
    if (syl_[i].exponent != 1) out += '^' + std::to_string(syl_[i].exponent);
  }
  return out;
}

Word cyclic_normal_form(const Word& w) {
  std::vector<Syllable> s = w.syllables();
  // Cyclic reduction: merge first and last syllables while they match.
  while (s.size() >= 2 && s.front().letter == s.back().letter) {
    std::int64_t e = checked_add(s.front().exponent, s.back().exponent);
    s.pop_back();
    if (e == 0) {
      s.erase(s.begin());
    } else {
      s.front().exponent = e;
      break;
    }
  }
  if (s.empty()) return {};
  auto least_rotation = [](std::vector<Syllable> v) {
    std::vector<Syllable> best = v;
    for (std::size_t r = 1; r < v.size(); ++r) {
      std::rotate(v.begin(), v.begin() + 1, v.end());
      if (v < best) best = v;
    }
    return best;
  };
  std::vector<Syllable> inv;
  for (auto it = s.rbegin(); it != s.rend(); ++it) inv.push_back({it->letter, -it->exponent});
  auto a = least_rotation(s);
  auto b = least_rotation(inv);
  return Word(std::span<const Syllable>(std::min(a, b)));
}

Word commutator(const Word& a, const Word& b) {
  return a * b * a.inverse() * b.inverse();
}

Word conjugate(const Word& a, const Word& g) { return g * a * g.inverse(); }

Word left_normed_commutator(std::span<const Word> entries) {
  if (entries.empty()) {
    throw InputError("left-normed commutator of an empty tuple");
  }
  Word acc = entries[0];
  for (std::size_t i = 1; i < entries.size(); ++i) acc = commutator(acc, entries[i]);
  return acc;
}

Word left_normed_commutator(const SignedLetterTuple& t) {
  std::vector<Word> words;
  words.reserve(t.size());
  for (const auto& e : t) {
    if (e.sign != 1 && e.sign != -1) throw InputError("letter sign must be +1 or -1");
    words.push_back(Word::letter(e.letter, e.sign));
  }
  return left_normed_commutator(std::span<const Word>(words));
}

// ---------------------------------------------------------------------------
// BracketTerm / Hopf elements

BracketTerm BracketTerm::product(std::vector<int> letters) {
  if (letters.empty()) throw InputError("empty product in bracket term");
  BracketTerm t;
  t.letters_ = std::move(letters);
  return t;
}

BracketTerm BracketTerm::bracket(BracketTerm left, BracketTerm right) {
  BracketTerm t;
  t.left_ = std::make_shared<const BracketTerm>(std::move(left));
  t.right_ = std::make_shared<const BracketTerm>(std::move(right));
  return t;
}

Word BracketTerm::evaluate() const {
  if (!left_) {
    Word w;
    for (int l : letters_) w *= Word::letter(l);
    return w;
  }
  return commutator(left_->evaluate(), right_->evaluate());
}

std::string BracketTerm::render(const Alphabet& alphabet) const {
  if (!left_) {
    std::string out;
    for (int l : letters_) out += alphabet[l].name();
    return out;
  }
  return "[" + left_->render(alphabet) + "," + right_->render(alphabet) + "]";
}

int BracketTerm::weight() const {
  if (!left_) return 1;
  return left_->weight() + right_->weight();
}

Alphabet hopf_alphabet(int k) { return Alphabet::indexed("y", k + 1); }

namespace {

// Level-k term whose innermost trailing product runs y1...y_last.
BracketTerm hopf_term_ending(int k, int last) {
  if (k == 1) {
    std::vector<int> tail;
    for (int i = 1; i <= last; ++i) tail.push_back(i);
    return BracketTerm::bracket(BracketTerm::product({0}), BracketTerm::product(tail));
  }
  return BracketTerm::bracket(hopf_term_ending(k - 1, k - 1), hopf_term_ending(k - 1, last));
}

}  // namespace

BracketTerm hopf_term(int k) {
  if (k < 1) throw InputError("hopf element index must be >= 1");
  return hopf_term_ending(k, k);
}

Word hopf_element(int k) { return hopf_term(k).evaluate(); }

}  // namespace colimit

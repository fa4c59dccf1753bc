#pragma once

// Free-group words in syllable (run-length) form, presentations and the
// commutator constructors used throughout the toolkit.
//
// Conventions: [x,y] = x y x^-1 y^-1 and the conjugate of y by x is x y x^-1.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace colimit {

/// A generator symbol; names match [A-Za-z][A-Za-z0-9_]*.
class Generator {
 public:
  explicit Generator(std::string name);
  const std::string& name() const { return name_; }
  static bool valid_name(std::string_view name);

  friend bool operator==(const Generator&, const Generator&) = default;

 private:
  std::string name_;
};

/// Ordered list of distinct generators; letters in words are indices here.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<std::string>& names);

  /// Appends a new generator; throws InputError on duplicates.
  int add(const Generator& g);
  /// Index of a name, or -1.
  int find(std::string_view name) const;
  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& operator[](int i) const { return gens_.at(i); }
  const std::vector<Generator>& generators() const { return gens_; }

  /// y0, y1, ..., y{count-1} style alphabets.
  static Alphabet indexed(std::string_view stem, int count);

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.gens_ == b.gens_;
  }

 private:
  std::vector<Generator> gens_;
  std::unordered_map<std::string, int> index_;
};

struct Syllable {
  int letter = 0;
  std::int64_t exponent = 0;
  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// Freely reduced word: adjacent syllables have distinct letters and nonzero
/// exponents. The empty word is the identity.
class Word {
 public:
  Word() = default;
  /// Reduces the given syllable sequence.
  explicit Word(std::span<const Syllable> syllables);
  Word(std::initializer_list<Syllable> syllables)
      : Word(std::span<const Syllable>(syllables.begin(), syllables.size())) {}

  static Word letter(int letter, std::int64_t exponent = 1);

  const std::vector<Syllable>& syllables() const { return syl_; }
  bool is_identity() const { return syl_.empty(); }
  /// Total number of letters (sum of |exponent|).
  std::int64_t length() const;
  /// Largest letter index used, or -1 for the identity.
  int max_letter() const;

  Word inverse() const;
  Word pow(std::int64_t n) const;
  /// Letters expanded one by one: +(i+1) for x_i, -(i+1) for x_i^-1.
  std::vector<int> letters() const;

  Word& operator*=(const Word& rhs);
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

  /// "x^2*y^-3", "1" for the identity.
  std::string render(const Alphabet& alphabet) const;

 private:
  void push(Syllable s);
  std::vector<Syllable> syl_;
};

/// Free reduction of an arbitrary syllable list.
Word reduce(std::span<const Syllable> syllables);
inline Word reduce(const Word& w) { return w; }

/// Cyclically reduced representative with a canonical rotation, chosen as the
/// least rotation of the word or of its inverse. Used to deduplicate relators.
Word cyclic_normal_form(const Word& w);

Word commutator(const Word& a, const Word& b);
/// g a g^-1.
Word conjugate(const Word& a, const Word& g);

struct SignedLetter {
  int letter = 0;
  int sign = 1;  // +1 or -1
};
using SignedLetterTuple = std::vector<SignedLetter>;

/// [[...[z1,z2],...],zt]; a single entry returns the letter itself.
Word left_normed_commutator(const SignedLetterTuple& t);
/// Same bracketing over arbitrary words.
Word left_normed_commutator(std::span<const Word> entries);

struct Presentation {
  Alphabet generators;
  std::vector<Word> relators;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Bracket expression over products of letters, e.g. [[y0,y1],[y0,y1y2]].
/// Keeps the displayed structure of commutator elements.
class BracketTerm {
 public:
  static BracketTerm product(std::vector<int> letters);
  static BracketTerm bracket(BracketTerm left, BracketTerm right);

  Word evaluate() const;
  /// Letters juxtaposed inside a product, brackets with commas.
  std::string render(const Alphabet& alphabet) const;
  int weight() const;

 private:
  std::vector<int> letters_;
  std::shared_ptr<const BracketTerm> left_, right_;
};

/// Alphabet y0, ..., y_k used by the Hopf elements.
Alphabet hopf_alphabet(int k);
/// Bracket form of the k-th iterated Hopf element (k >= 1).
BracketTerm hopf_term(int k);
/// k=1: [y0,y1]; k>=2: [h(k-1), h'(k-1)] where h' extends the trailing
/// product y1...y_{k-1} by y_k.
Word hopf_element(int k);

}  // namespace colimit

#include "colimit/dsl.hpp"

#include <cctype>
#include <charconv>

#include "colimit/errors.hpp"

namespace colimit {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Presentation presentation() {
    Presentation p;
    keyword("gens");
    expect(':');
    skip_ws();
    if (peek() != '|') {
      do {
        auto [line, col] = position();
        std::string name = identifier();
        if (p.generators.find(name) >= 0) {
          throw ParseError("duplicate generator '" + name + "'", line, col);
        }
        p.generators.add(Generator(name));
      } while (accept(','));
    }
    expect('|');
    keyword("rels");
    expect(':');
    alphabet_ = &p.generators;
    skip_ws();
    if (!at_end()) {
      do {
        p.relators.push_back(word());
      } while (accept(','));
    }
    skip_ws();
    if (!at_end()) fail("unexpected trailing input");
    return p;
  }

  Word single_word(const Alphabet& alphabet) {
    alphabet_ = &alphabet;
    Word w = word();
    skip_ws();
    if (!at_end()) fail("unexpected trailing input");
    return w;
  }

 private:
  Word word() {
    Word w = factor();
    while (accept('*')) w *= factor();
    return w;
  }

  Word factor() {
    Word base = atom();
    if (accept('^')) base = base.pow(integer());
    return base;
  }

  Word atom() {
    skip_ws();
    char c = peek();
    if (c == '[') {
      ++pos_;
      Word a = word();
      expect(',');
      Word b = word();
      expect(']');
      return commutator(a, b);
    }
    if (c == '(') {
      ++pos_;
      Word a = word();
      expect(')');
      return a;
    }
    if (c == '1') {
      ++pos_;
      return {};
    }
    auto [line, col] = position();
    std::string name = identifier();
    int id = alphabet_->find(name);
    if (id < 0) throw ParseError("unknown generator '" + name + "'", line, col);
    return Word::letter(id);
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view digits = text_.substr(start, pos_ - start);
    if (!digits.empty() && digits[0] == '+') digits.remove_prefix(1);
    std::int64_t value = 0;
    auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || res.ec != std::errc() || res.ptr != digits.data() + digits.size()) {
      pos_ = start;
      fail("expected integer exponent");
    }
    return value;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (at_end() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected generator name");
    }
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void keyword(std::string_view kw) {
    skip_ws();
    if (text_.substr(pos_, kw.size()) != kw) fail("expected '" + std::string(kw) + "'");
    pos_ += kw.size();
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::pair<int, int> position() {
    skip_ws();
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(const std::string& msg) {
    auto [line, col] = position();
    throw ParseError(msg, line, col);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const Alphabet* alphabet_ = nullptr;
};

}  // namespace

Presentation parse_presentation(std::string_view text) {
  return Parser(text).presentation();
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  return Parser(text).single_word(alphabet);
}

std::string render_presentation(const Presentation& p) {
  std::string out = "gens: ";
  for (int i = 0; i < p.generators.size(); ++i) {
    if (i) out += ", ";
    out += p.generators[i].name();
  }
  out += " | rels: ";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (i) out += ", ";
    out += p.relators[i].render(p.generators);
  }
  return out;
}

}  // namespace colimit

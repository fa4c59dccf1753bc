#include "colimit/catalog.hpp"

#include <algorithm>
#include <charconv>

#include "colimit/dsl.hpp"
#include "colimit/errors.hpp"

namespace colimit {

namespace {

struct Entry {
  std::string name;
  std::size_t order;
  std::string text;
  std::vector<std::pair<std::string, std::string>> named;  // name -> words separated by ';'
};

std::vector<Entry> build_entries() {
  std::vector<Entry> e;
  for (int n = 1; n <= 64; ++n) {
    e.push_back({"C" + std::to_string(n), static_cast<std::size_t>(n), "gens: a | rels: a^" + std::to_string(n), {}});
  }
  for (int n = 3; n <= 16; ++n) {
    std::string s = std::to_string(n);
    e.push_back({"D" + s, static_cast<std::size_t>(2 * n), "gens: a, b | rels: a^" + s + ", b^2, (a*b)^2", {{"R", "a"}}});
  }
  e.push_back({"V4", 4, "gens: a, b | rels: a^2, b^2, [a,b]", {{"A", "a"}, {"B", "b"}, {"AB", "a*b"}}});
  e.push_back({"S3", 6, "gens: a, b | rels: a^3, b^2, (a*b)^2", {{"A3", "a"}}});
  e.push_back({"Q8", 8, "gens: a, b | rels: a^4, b^2*a^-2, b*a*b^-1*a", {{"I", "a"}, {"J", "b"}, {"K", "a*b"}}});
  e.push_back({"A4", 12, "gens: a, b | rels: a^2, b^3, (a*b)^3", {{"V4", "a"}}});
  e.push_back({"S4", 24, "gens: a, b | rels: a^2, b^3, (a*b)^4", {{"A4", "b"}, {"V4", "(a*b)^2"}}});
  e.push_back({"C2xC4", 8, "gens: a, b | rels: a^4, b^2, [a,b]", {}});
  e.push_back({"C2^3", 8, "gens: a, b, c | rels: a^2, b^2, c^2, [a,b], [a,c], [b,c]", {}});
  e.push_back({"C3xC3", 9, "gens: a, b | rels: a^3, b^3, [a,b]", {}});
  e.push_back({"C2xC6", 12, "gens: a, b | rels: a^6, b^2, [a,b]", {}});
  e.push_back({"Dic3", 12, "gens: a, b | rels: a^6, b^2*a^-3, b*a*b^-1*a", {{"R", "a"}}});
  // Remaining groups of order 16.
  e.push_back({"C4xC4", 16, "gens: a, b | rels: a^4, b^4, [a,b]", {}});
  e.push_back({"C2xC8", 16, "gens: a, b | rels: a^8, b^2, [a,b]", {}});
  e.push_back({"C2^2xC4", 16, "gens: a, b, c | rels: a^4, b^2, c^2, [a,b], [a,c], [b,c]", {}});
  e.push_back({"C2^4", 16, "gens: a, b, c, d | rels: a^2, b^2, c^2, d^2, [a,b], [a,c], [a,d], [b,c], [b,d], [c,d]", {}});
  e.push_back({"Q16", 16, "gens: a, b | rels: a^8, b^2*a^-4, b*a*b^-1*a", {{"R", "a"}}});
  e.push_back({"SD16", 16, "gens: a, b | rels: a^8, b^2, b*a*b^-1*a^-3", {{"R", "a"}}});
  e.push_back({"M16", 16, "gens: a, b | rels: a^8, b^2, b*a*b^-1*a^-5", {{"R", "a"}}});
  e.push_back({"C4:C4", 16, "gens: a, b | rels: a^4, b^4, b*a*b^-1*a", {}});
  e.push_back({"C2^2:C4", 16, "gens: a, b, c | rels: a^4, b^2, c^2, [a,b], [b,c], c*a*c^-1*b^-1*a^-1", {}});
  e.push_back({"D4xC2", 16, "gens: a, b, c | rels: a^4, b^2, (a*b)^2, c^2, [a,c], [b,c]", {}});
  e.push_back({"Q8xC2", 16, "gens: a, b, c | rels: a^4, b^2*a^-2, b*a*b^-1*a, c^2, [a,c], [b,c]", {}});
  e.push_back({"Pauli", 16, "gens: a, b, c | rels: a^4, b^2, (a*b)^2, c^2*a^-2, [a,c], [b,c]", {}});
  // Larger examples.
  e.push_back({"SL23", 24, "gens: a, b | rels: a^3*b^-3, a^3*(a*b)^-2, a^6", {{"Q8", "[a,b]"}}});
  e.push_back({"C2xA4", 24, "gens: a, b, c | rels: a^2, b^3, (a*b)^3, c^2, [a,c], [b,c]", {{"V4", "a"}}});
  e.push_back({"S4xC2", 48, "gens: a, b, c | rels: a^2, b^3, (a*b)^4, c^2, [a,c], [b,c]", {{"A4", "b"}}});
  return e;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = build_entries();
  return e;
}

const Entry& find_entry(std::string_view name) {
  for (const auto& e : entries()) {
    if (e.name == name) return e;
  }
  throw InputError("unknown catalog group '" + std::string(name) + "'");
}

std::vector<Word> parse_word_list(std::string_view text, const Alphabet& alphabet) {
  std::vector<Word> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = text.find(';', start);
    std::string_view part = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    out.push_back(parse_word(part, alphabet));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& e : entries()) n.push_back(e.name);
    return n;
  }();
  return names;
}

std::size_t catalog_order(std::string_view name) { return find_entry(name).order; }

std::vector<std::string> catalog_names_up_to(std::size_t max_order) {
  std::vector<std::string> out;
  for (const auto& e : entries()) {
    if (e.order <= max_order) out.push_back(e.name);
  }
  return out;
}

CatalogGroup catalog(std::string_view name) {
  const Entry& e = find_entry(name);
  CatalogGroup g;
  g.name = e.name;
  g.presentation = parse_presentation(e.text);
  g.group = realize(g.presentation);
  if (g.group->order() != e.order) throw std::logic_error("catalog order mismatch for " + e.name);
  for (const auto& [sub, words] : e.named) g.named[sub] = parse_word_list(words, g.presentation.generators);
  return g;
}

FinSubgroup catalog_subgroup(const CatalogGroup& g, std::string_view spec) {
  const FiniteGroupPtr& G = g.group;
  if (spec == "G") return whole_group(G);
  if (spec == "1") return trivial_subgroup(G);
  if (spec == "center" || spec == "Z") return center(G);
  if (spec == "derived") {
    auto all = whole_group(G);
    return commutator_subgroup(all, all);
  }
  std::vector<Word> words;
  if (auto it = g.named.find(std::string(spec)); it != g.named.end()) {
    words = it->second;
  } else if (spec.starts_with("ncl(") && spec.ends_with(")")) {
    words = parse_word_list(spec.substr(4, spec.size() - 5), g.presentation.generators);
  } else {
    throw InputError("unknown subgroup '" + std::string(spec) + "' of " + g.name);
  }
  std::vector<int> seeds;
  for (const auto& w : words) seeds.push_back(G->evaluate(w));
  return normal_closure(G, seeds);
}

}  // namespace colimit

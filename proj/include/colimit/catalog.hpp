#pragma once

// Built-in finite groups given by presentations, with named subgroups.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "colimit/finite.hpp"
#include "colimit/word.hpp"

namespace colimit {

struct CatalogGroup {
  std::string name;
  Presentation presentation;
  FiniteGroupPtr group;
  /// Extra subgroup names, each the normal closure of the listed words.
  std::map<std::string, std::vector<Word>> named;
};

/// Names in the catalog: C1..C64, D3..D16 (order 2n), S3, S4, A4, Q8, V4,
/// the remaining groups of order at most 16 and a few larger ones.
const std::vector<std::string>& catalog_names();
/// Order of a catalog group without realizing it.
std::size_t catalog_order(std::string_view name);
/// Catalog names with order at most `max_order`.
std::vector<std::string> catalog_names_up_to(std::size_t max_order);
/// Realizes a catalog group; throws InputError for unknown names.
CatalogGroup catalog(std::string_view name);

/// Resolves a subgroup name: G, 1, center, derived, a catalog-specific name,
/// or ncl(w1;w2;...) for the normal closure of words over the generators.
FinSubgroup catalog_subgroup(const CatalogGroup& g, std::string_view spec);

}  // namespace colimit

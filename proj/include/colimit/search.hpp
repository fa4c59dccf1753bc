#pragma once

// Exhaustive search for normal triples that fail the connectivity condition.

#include <cstddef>
#include <string>
#include <vector>

#include "colimit/catalog.hpp"
#include "colimit/colimit.hpp"

namespace colimit {

/// "<a, b^2>" from the stored generators; "1" for the trivial subgroup.
std::string describe_subgroup(const FinSubgroup& h);

struct TripleSearch {
  std::size_t groups = 0;
  std::size_t triples = 0;   // unordered triples with repetition examined
  std::size_t violations = 0;
  bool found = false;
  // First violation in catalog order.
  std::string group;
  std::vector<FinSubgroup> witness;
  ConnectivityResult result;
};

/// Runs over every catalog group of order at most `max_order` and all
/// multisets {N1, N2, N3} of its normal subgroups.
TripleSearch search_disconnected_triples(std::size_t max_order, bool stop_at_first = false);

}  // namespace colimit

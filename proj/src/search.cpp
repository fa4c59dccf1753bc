#include "colimit/search.hpp"

namespace colimit {

std::string describe_subgroup(const FinSubgroup& h) {
  if (h.is_trivial()) return "1";
  const FiniteGroup& g = *h.parent();
  std::string out = "<";
  for (std::size_t i = 0; i < h.generators().size(); ++i) {
    if (i) out += ", ";
    out += g.word_of(h.generators()[i]).render(g.alphabet());
  }
  return out + ">";
}

TripleSearch search_disconnected_triples(std::size_t max_order, bool stop_at_first) {
  TripleSearch out;
  for (const auto& name : catalog_names_up_to(max_order)) {
    auto cg = catalog(name);
    ++out.groups;
    auto subs = normal_subgroups(cg.group);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      for (std::size_t j = i; j < subs.size(); ++j) {
        for (std::size_t k = j; k < subs.size(); ++k) {
          ++out.triples;
          NormalTuple<FinSubgroup> t({subs[i], subs[j], subs[k]});
          auto r = is_connected_tuple(t);
          if (r.connected) continue;
          ++out.violations;
          if (!out.found) {
            out.found = true;
            out.group = name;
            out.witness = t.subgroups();
            out.result = r;
          }
          if (stop_at_first) return out;
        }
      }
    }
  }
  return out;
}

}  // namespace colimit

#include "colimit/colimit.hpp"

namespace colimit {

std::string index_set(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i] + 1);
  }
  return out + "}";
}

void require_checks(const std::vector<HypothesisCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) throw HypothesisError("hypothesis failed: " + c.what + (c.detail.empty() ? "" : " (" + c.detail + ")"));
  }
}

ColimitReport<PcSubgroup> hopf_h3_check(const PcGroupPtr& f, const PcElement& r, const PcElement& s) {
  using Ops = SubgroupOps<PcSubgroup>;
  PcSubgroup R = normal_closure_pc(f, std::span<const PcElement>(&r, 1));
  PcSubgroup S = normal_closure_pc(f, std::span<const PcElement>(&s, 1));
  PcSubgroup F = whole_group(f);
  PcSubgroup RS = intersect_pc(R, S);
  ColimitReport<PcSubgroup> rep;
  rep.formula = "H_3 (truncated)";
  rep.numerator = intersect_pc(RS, commutator_subgroup_pc(F, F));
  rep.denominator = join(commutator_subgroup_pc(R, S), commutator_subgroup_pc(RS, F));
  rep.checks.push_back({"denominator inside numerator", Ops::subset(rep.denominator, rep.numerator), ""});
  require_checks(rep.checks);
  rep.invariants = Ops::invariants(rep.numerator, rep.denominator);
  rep.notes.push_back("computed modulo gamma_" + std::to_string(f->cls() + 1));
  return rep;
}

}  // namespace colimit

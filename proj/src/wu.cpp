#include "colimit/wu.hpp"

#include <set>

#include "colimit/dsl.hpp"
#include "colimit/errors.hpp"

namespace colimit {

WuContext wu_context(const WuConfig& cfg) {
  if (cfg.n < 1) throw InputError("n must be at least 1");
  if (cfg.cls < cfg.n) throw InputError("class must be at least n");
  WuContext ctx;
  ctx.config = cfg;
  ctx.group = PcGroup::free_nilpotent(cfg.n, cfg.cls, cfg.budget);
  ctx.alphabet = Alphabet::indexed("y", cfg.n);
  const PcGroup& g = *ctx.group;
  PcElement prod = g.identity();
  for (int i = 0; i < cfg.n; ++i) prod = g.mul(prod, g.generator(i));
  ctx.y_minus1 = g.inverse(prod);
  ctx.closures.push_back(normal_closure_pc(ctx.group, std::span<const PcElement>(&ctx.y_minus1, 1)));
  for (int i = 0; i < cfg.n; ++i) {
    PcElement y = g.generator(i);
    ctx.closures.push_back(normal_closure_pc(ctx.group, std::span<const PcElement>(&y, 1)));
  }
  return ctx;
}

WuDenominator wu_denominator(const WuContext& ctx, int max_length) {
  const PcGroup& g = *ctx.group;
  const int letters = ctx.config.n + 1;
  const int depth = max_length < 0 ? ctx.config.cls : max_length;
  // Signed letters: index 0 is y_-1.
  std::vector<PcElement> value;
  for (int l = 0; l < letters; ++l) {
    PcElement y = l == 0 ? ctx.y_minus1 : g.generator(l - 1);
    value.push_back(y);
    value.push_back(g.inverse(y));
  }
  WuDenominator out;
  std::set<PcElement> gens;
  const unsigned all = (1U << letters) - 1;
  // Depth-first over tuples sharing prefixes.
  auto dfs = [&](auto&& self, const PcElement& prefix, unsigned used, int length) -> void {
    ++out.tuples;
    if (used == all) gens.insert(prefix);
    if (length == depth) return;
    int missing = letters - std::popcount(used);
    if (missing > depth - length) return;
    for (std::size_t s = 0; s < value.size(); ++s) {
      PcElement next = length == 0 ? value[s] : g.commutator(prefix, value[s]);
      if (PcGroup::is_identity(next)) continue;
      self(self, next, used | 1U << (s / 2), length + 1);
    }
  };
  dfs(dfs, g.identity(), 0, 0);
  std::vector<PcElement> v(gens.begin(), gens.end());
  out.generators = v.size();
  out.subgroup = normal_closure_pc(ctx.group, v);
  return out;
}

PcSubgroup wu_numerator(const WuContext& ctx) {
  PcSubgroup acc = ctx.closures[0];
  for (std::size_t i = 1; i < ctx.closures.size(); ++i) acc = intersect_pc(acc, ctx.closures[i]);
  return acc;
}

WuReport wu_group(const WuContext& ctx) {
  const PcGroup& g = *ctx.group;
  WuReport rep;
  rep.config = ctx.config;
  auto den = wu_denominator(ctx);
  rep.denominator = den.subgroup;
  rep.tuples = den.tuples;
  rep.generators = den.generators;
  rep.numerator = wu_numerator(ctx);
  for (const auto& r : rep.denominator.igs()) {
    if (!rep.numerator.contains(r)) throw std::logic_error("denominator is not inside the numerator");
  }
  for (const auto& r : rep.numerator.igs()) {
    for (int i = 0; i < g.rank() && rep.central; ++i) {
      rep.central = rep.denominator.contains(g.commutator(r, g.generator(i)));
    }
  }
  if (!rep.central) throw std::logic_error("quotient is not central");
  rep.invariants = central_quotient_invariants(rep.numerator, rep.denominator);
  return rep;
}

Membership membership_check(const Word& w, const WuContext& ctx, const WuReport& report) {
  if (w.max_letter() >= ctx.config.n) throw InputError("word uses a letter outside y0..y" + std::to_string(ctx.config.n - 1));
  PcElement x = ctx.group->collect(w);
  Membership m;
  m.in_numerator = report.numerator.contains(x);
  m.in_denominator = report.denominator.contains(x);
  if (m.in_numerator) {
    m.order = order_modulo(x, report.numerator, report.denominator);
    m.order_known = true;
  }
  return m;
}

Equality13 check_equality_13(const WuContext& ctx) {
  Equality13 out;
  PcSubgroup den = wu_denominator(ctx).subgroup;
  PcSubgroup prod = ctx.closures.size() >= 2 ? symmetric_commutator(NormalTuple<PcSubgroup>(ctx.closures))
                                             : trivial_subgroup(ctx.group);
  out.denominator_hirsch = den.hirsch_length();
  out.product_hirsch = prod.hirsch_length();
  out.equal = den == prod;
  if (!out.equal) {
    bool a = is_subset(den, prod), b = is_subset(prod, den);
    out.discrepancy = a ? "denominator is a proper subgroup of the product"
                        : b ? "product is a proper subgroup of the denominator" : "neither contains the other";
  }
  return out;
}

std::vector<BraidPair> braid_check(int cls, std::size_t budget) {
  auto f = PcGroup::free_nilpotent(3, cls, budget);
  Alphabet abc({"x", "y", "z"});
  std::vector<PcSubgroup> r;
  for (const char* text : {"x*y*x*(y*x*y)^-1", "y*z*y*(z*y*z)^-1", "x*z*(z*x)^-1"}) {
    PcElement e = f->collect(parse_word(text, abc));
    r.push_back(normal_closure_pc(f, std::span<const PcElement>(&e, 1)));
  }
  std::vector<BraidPair> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      BraidPair p;
      p.i = i + 1;
      p.j = j + 1;
      PcSubgroup meet = intersect_pc(r[static_cast<std::size_t>(i)], r[static_cast<std::size_t>(j)]);
      PcSubgroup comm = commutator_subgroup_pc(r[static_cast<std::size_t>(i)], r[static_cast<std::size_t>(j)]);
      p.contained = is_subset(comm, meet);
      p.equal = comm == meet;
      p.meet_hirsch = meet.hirsch_length();
      p.commutator_hirsch = comm.hirsch_length();
      out.push_back(p);
    }
  }
  return out;
}

Presentation akbulut_kirby(int n) {
  if (n < 1) throw InputError("n must be positive");
  return parse_presentation("gens: x1, x2 | rels: x1^" + std::to_string(n) + "*x2^-" + std::to_string(n + 1) +
                            ", x1*x2*x1*x2^-1*x1^-1*x2^-1");
}

Presentation akbulut_kirby_pair() { return parse_presentation("gens: x1, x2 | rels: x1^2*x2^-3, x1^3*x2^-4"); }

}  // namespace colimit

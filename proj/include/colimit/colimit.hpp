#pragma once

// Homotopy-group formulas for tuples of normal subgroups, written once over
// both engines. SubgroupOps<S> adapts a subgroup type to the calculus.

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "colimit/errors.hpp"
#include "colimit/finite.hpp"
#include "colimit/intmat.hpp"
#include "colimit/pc.hpp"

namespace colimit {

template <class S>
struct SubgroupOps;

template <>
struct SubgroupOps<FinSubgroup> {
  using Ambient = FiniteGroupPtr;
  static FinSubgroup whole(const Ambient& g) { return whole_group(g); }
  static FinSubgroup trivial(const Ambient& g) { return trivial_subgroup(g); }
  static FinSubgroup meet(const FinSubgroup& a, const FinSubgroup& b) { return intersect(a, b); }
  static FinSubgroup prod(const FinSubgroup& a, const FinSubgroup& b) { return product(a, b); }
  static FinSubgroup comm(const FinSubgroup& a, const FinSubgroup& b) { return commutator_subgroup(a, b); }
  static bool normal(const FinSubgroup& a) { return is_normal(a); }
  static bool subset(const FinSubgroup& a, const FinSubgroup& b) { return is_subset(a, b); }
  static AbelianInvariants invariants(const FinSubgroup& a, const FinSubgroup& b) {
    return abelian_invariants_of_quotient(a, b);
  }
  static std::string describe(const FinSubgroup& a) { return "order " + std::to_string(a.order()); }
};

template <>
struct SubgroupOps<PcSubgroup> {
  using Ambient = PcGroupPtr;
  static PcSubgroup whole(const Ambient& g) { return whole_group(g); }
  static PcSubgroup trivial(const Ambient& g) { return trivial_subgroup(g); }
  static PcSubgroup meet(const PcSubgroup& a, const PcSubgroup& b) { return intersect_pc(a, b); }
  static PcSubgroup prod(const PcSubgroup& a, const PcSubgroup& b) { return join(a, b); }
  static PcSubgroup comm(const PcSubgroup& a, const PcSubgroup& b) { return commutator_subgroup_pc(a, b); }
  static bool normal(const PcSubgroup& a) { return is_normal(a); }
  static bool subset(const PcSubgroup& a, const PcSubgroup& b) { return is_subset(a, b); }
  static AbelianInvariants invariants(const PcSubgroup& a, const PcSubgroup& b) {
    return central_quotient_invariants(a, b);
  }
  static std::string describe(const PcSubgroup& a) { return "hirsch length " + std::to_string(a.hirsch_length()); }
};

/// One verified (or failed) hypothesis, kept for reports.
struct HypothesisCheck {
  std::string what;
  bool passed = true;
  std::string detail;
};

/// Normal subgroups N_1..N_n of one ambient group, checked on construction.
template <class S>
class NormalTuple {
 public:
  using Ops = SubgroupOps<S>;
  explicit NormalTuple(std::vector<S> subgroups) : subs_(std::move(subgroups)) {
    if (subs_.empty()) throw InputError("a tuple needs at least one subgroup");
    for (std::size_t i = 0; i < subs_.size(); ++i) {
      if (subs_[i].parent() != subs_[0].parent()) throw InputError("subgroups of different groups");
      if (!Ops::normal(subs_[i])) {
        throw HypothesisError("subgroup N" + std::to_string(i + 1) + " is not normal");
      }
    }
  }
  std::size_t size() const { return subs_.size(); }
  const S& operator[](std::size_t i) const { return subs_[i]; }
  const std::vector<S>& subgroups() const { return subs_; }
  const typename Ops::Ambient& ambient() const { return subs_[0].parent(); }
  NormalTuple without(std::size_t i) const {
    std::vector<S> rest = subs_;
    rest.erase(rest.begin() + static_cast<long>(i));
    return NormalTuple(std::move(rest));
  }

 private:
  std::vector<S> subs_;
};

/// Index sets are 0-based.
struct ConnectivityResult {
  bool connected = true;
  std::vector<int> I, J;  // violating pair when not connected
  std::size_t pairs_checked = 0;
};

std::string index_set(const std::vector<int>& s);

namespace detail {

template <class S>
S meet_of(const NormalTuple<S>& t, const std::vector<int>& idx) {
  S r = t[static_cast<std::size_t>(idx[0])];
  for (std::size_t k = 1; k < idx.size(); ++k) r = SubgroupOps<S>::meet(r, t[static_cast<std::size_t>(idx[k])]);
  return r;
}

template <class S>
S prod_of(const NormalTuple<S>& t, const std::vector<int>& idx) {
  S r = t[static_cast<std::size_t>(idx[0])];
  for (std::size_t k = 1; k < idx.size(); ++k) r = SubgroupOps<S>::prod(r, t[static_cast<std::size_t>(idx[k])]);
  return r;
}

inline std::vector<int> members_of(unsigned mask, std::size_t n) {
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask >> i & 1U) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace detail

/// Checks (meet over I)(product over J) = meet over i in I of (N_i (product
/// over J)) for disjoint I, J with |I| >= 2, |J| >= 1; pairs sharing an
/// index satisfy it automatically. Tuples of length at most 2 are connected.
template <class S>
ConnectivityResult is_connected_tuple(const NormalTuple<S>& t) {
  using Ops = SubgroupOps<S>;
  ConnectivityResult res;
  const std::size_t n = t.size();
  if (n <= 2) return res;
  if (n > 16) throw InputError("connectivity check supports at most 16 subgroups");
  const unsigned full = (1U << n) - 1;
  for (unsigned i = 1; i <= full; ++i) {
    if (std::popcount(i) < 2) continue;
    auto I = detail::members_of(i, n);
    S meet_i = detail::meet_of(t, I);
    for (unsigned j = (full & ~i); j != 0; j = (j - 1) & (full & ~i)) {
      auto J = detail::members_of(j, n);
      S p = detail::prod_of(t, J);
      S lhs = Ops::prod(meet_i, p);
      S rhs = Ops::prod(t[static_cast<std::size_t>(I[0])], p);
      for (std::size_t k = 1; k < I.size(); ++k) rhs = Ops::meet(rhs, Ops::prod(t[static_cast<std::size_t>(I[k])], p));
      ++res.pairs_checked;
      if (!(lhs == rhs)) {
        res.connected = false;
        res.I = std::move(I);
        res.J = std::move(J);
        return res;
      }
    }
  }
  return res;
}

/// Product over unordered partitions {I, J} of [meet over I, meet over J].
template <class S>
S symmetric_commutator(const NormalTuple<S>& t) {
  using Ops = SubgroupOps<S>;
  const std::size_t n = t.size();
  if (n < 2) throw InputError("the symmetric commutator needs at least two subgroups");
  if (n > 16) throw InputError("symmetric commutator supports at most 16 subgroups");
  const unsigned full = (1U << n) - 1;
  S acc = Ops::trivial(t.ambient());
  // I always contains index 0, so each unordered pair appears once.
  for (unsigned i = 1; i < full; i += 2) {
    S a = detail::meet_of(t, detail::members_of(i, n));
    S b = detail::meet_of(t, detail::members_of(full & ~i, n));
    acc = Ops::prod(acc, Ops::comm(a, b));
  }
  return acc;
}

template <class S>
struct ColimitReport {
  std::string formula;
  std::vector<HypothesisCheck> checks;
  S numerator, denominator;
  bool abelian = true;
  /// Invariants of numerator/denominator, or of its abelianization when the
  /// quotient is not abelian.
  AbelianInvariants invariants;
  std::vector<std::string> notes;
};

/// Connectivity of every subtuple omitting one entry, as report lines.
template <class S>
std::vector<HypothesisCheck> subtuple_checks(const NormalTuple<S>& t) {
  std::vector<HypothesisCheck> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    HypothesisCheck c;
    c.what = "tuple without N" + std::to_string(i + 1) + " is connected";
    if (t.size() - 1 <= 2) {
      c.detail = "at most two subgroups";
    } else {
      auto r = is_connected_tuple(t.without(i));
      // Indices refer to the full tuple.
      auto lift = [i](std::vector<int> s) {
        for (int& x : s) x += x >= static_cast<int>(i) ? 1 : 0;
        return s;
      };
      c.passed = r.connected;
      c.detail = r.connected ? std::to_string(r.pairs_checked) + " pairs checked"
                             : "fails for I=" + index_set(lift(r.I)) + ", J=" + index_set(lift(r.J));
    }
    out.push_back(std::move(c));
  }
  return out;
}

/// Throws HypothesisError naming the first failed check.
void require_checks(const std::vector<HypothesisCheck>& checks);

/// (N_1 meet ... meet N_n) / symmetric commutator, after verifying that each
/// subtuple omitting one N_i is connected.
template <class S>
ColimitReport<S> pi_n_colimit(const NormalTuple<S>& t) {
  using Ops = SubgroupOps<S>;
  ColimitReport<S> r;
  r.formula = "pi_n";
  r.checks = subtuple_checks(t);
  require_checks(r.checks);
  std::vector<int> all(t.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  r.numerator = detail::meet_of(t, all);
  r.denominator = t.size() == 1 ? Ops::trivial(t.ambient()) : symmetric_commutator(t);
  if (!Ops::subset(r.denominator, r.numerator)) throw std::logic_error("symmetric commutator escapes the intersection");
  r.checks.push_back({"quotient is abelian", Ops::subset(Ops::comm(r.numerator, r.numerator), r.denominator), ""});
  require_checks(r.checks);
  r.invariants = Ops::invariants(r.numerator, r.denominator);
  return r;
}

/// G / N_1...N_n as the normal subgroup N_1...N_n. The formula is stated
/// for three subgroups; other lengths are an extension.
template <class S>
ColimitReport<S> pi_1_colimit(const NormalTuple<S>& t) {
  using Ops = SubgroupOps<S>;
  ColimitReport<S> r;
  r.formula = "pi_1";
  r.numerator = Ops::whole(t.ambient());
  std::vector<int> all(t.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  r.denominator = detail::prod_of(t, all);
  r.abelian = Ops::subset(Ops::comm(r.numerator, r.numerator), r.denominator);
  S ab = Ops::prod(r.denominator, Ops::comm(r.numerator, r.numerator));
  r.invariants = Ops::invariants(r.numerator, ab);
  if (t.size() != 3) r.notes.push_back("extension: G/N1...Nn for n != 3");
  return r;
}

/// (LM meet MN) / M(L meet N). A nonabelian quotient is reported, with the
/// invariants of its abelianization.
template <class S>
ColimitReport<S> pi_2_colimit_n3(const S& l, const S& m, const S& n) {
  using Ops = SubgroupOps<S>;
  NormalTuple<S> t({l, m, n});
  ColimitReport<S> r;
  r.formula = "pi_2";
  r.numerator = Ops::meet(Ops::prod(l, m), Ops::prod(m, n));
  r.denominator = Ops::prod(m, Ops::meet(l, n));
  if (!Ops::subset(r.denominator, r.numerator)) throw std::logic_error("denominator escapes the numerator");
  S derived = Ops::comm(r.numerator, r.numerator);
  r.abelian = Ops::subset(derived, r.denominator);
  r.checks.push_back({"quotient is abelian", r.abelian, r.abelian ? "" : "finding: nonabelian quotient"});
  if (!r.abelian) r.notes.push_back("finding: the quotient is not abelian; invariants are of its abelianization");
  r.invariants = Ops::invariants(r.numerator, r.abelian ? r.denominator : Ops::prod(r.denominator, derived));
  return r;
}

/// (M meet N) / [G, M meet N][M, N].
template <class S>
ColimitReport<S> h1_GMN(const S& m, const S& n) {
  using Ops = SubgroupOps<S>;
  NormalTuple<S> t({m, n});
  ColimitReport<S> r;
  r.formula = "H_1(G,M,N)";
  r.numerator = Ops::meet(m, n);
  r.denominator = Ops::prod(Ops::comm(Ops::whole(m.parent()), r.numerator), Ops::comm(m, n));
  r.invariants = Ops::invariants(r.numerator, r.denominator);
  return r;
}

/// Truncated Hopf-type evaluation of H_3(F/RS) in F/gamma_{c+1}:
/// (R meet S meet [F,F]) / [R,S][R meet S, F] with R, S the normal closures
/// of single relators.
ColimitReport<PcSubgroup> hopf_h3_check(const PcGroupPtr& f, const PcElement& r, const PcElement& s);

}  // namespace colimit

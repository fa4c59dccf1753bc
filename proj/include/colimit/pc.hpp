#pragma once

// Free nilpotent groups F/gamma_{c+1}(F) in polycyclic form over a Hall
// basis, and their subgroups as canonical induced generating sequences.
//
// Elements are exponent vectors e with g = b_0^e_0 b_1^e_1 ... in basis
// order. Multiplication is collection from the left using conjugation
// tables derived from the Magnus representation.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "colimit/hall.hpp"
#include "colimit/intmat.hpp"
#include "colimit/word.hpp"

namespace colimit {

using PcElement = IntVector;

constexpr std::size_t kDefaultPcBudget = 5000;

class PcGroup {
 public:
  /// Throws BudgetError (with a sizing report) when the basis would exceed
  /// `budget` basic commutators.
  static std::shared_ptr<const PcGroup> free_nilpotent(int rank, int cls,
                                                       std::size_t budget = kDefaultPcBudget);

  int rank() const { return basis_.rank(); }
  int cls() const { return basis_.cls(); }
  int size() const { return basis_.size(); }
  const HallBasis& basis() const { return basis_; }
  int weight(int i) const { return weight_[static_cast<std::size_t>(i)]; }

  PcElement identity() const { return PcElement(static_cast<std::size_t>(size()), 0); }
  PcElement generator(int i, const Integer& e = 1) const;
  /// Image of a word over generators 0..rank-1.
  PcElement collect(const Word& w) const;

  PcElement mul(const PcElement& x, const PcElement& y) const;
  PcElement inverse(const PcElement& x) const;
  PcElement power(const PcElement& x, const Integer& e) const;
  /// [x,y] = x y x^-1 y^-1.
  PcElement commutator(const PcElement& x, const PcElement& y) const;
  /// g x g^-1.
  PcElement conjugate(const PcElement& x, const PcElement& g) const;

  static bool is_identity(const PcElement& x);
  /// Index of the first nonzero exponent, or size() for the identity.
  int depth(const PcElement& x) const;
  /// Weight of the first nonzero exponent, cls()+1 for the identity.
  int min_weight(const PcElement& x) const;

  /// [b_j, b_i] for i < j, as stored normal forms.
  PcElement commutator_table(int j, int i) const;

  /// Product of basis powers, e.g. "[y0,y1]^2*y1^-1"; "1" for the identity.
  std::string render(const PcElement& x, const Alphabet& alphabet) const;

  /// Truncation to the class-(c-1) quotient (a prefix of the basis).
  PcElement truncate(const PcElement& x, const PcGroup& lower) const;

  explicit PcGroup(int rank, int cls);

 private:
  void mul_gen(PcElement& x, int k, const Integer& f) const;
  PcElement apply_conj(int k, int sign, const PcElement& t) const;
  PcElement conj_tail(int k, const Integer& f, PcElement t) const;
  // Powers of conjugation table entries, memoized for small exponents.
  const PcElement& conj_power(int k, int sign, int j, const Integer& e, const PcElement& base) const;
  static constexpr int kConjCacheSpan = 64;
  bool commutes(int i, int j) const { return weight(i) + weight(j) > cls(); }

  HallBasis basis_;
  std::vector<int> weight_;
  // conj_[s][k][j - k - 1]: b_k^-1 b_j b_k (s = 0) or b_k b_j b_k^-1 (s = 1),
  // only for non-commuting pairs k < j; empty otherwise.
  std::vector<std::vector<PcElement>> conj_[2];
  mutable std::map<std::pair<std::size_t, int>, PcElement> conj_cache_;
  mutable std::shared_mutex cache_mutex_;
};

using PcGroupPtr = std::shared_ptr<const PcGroup>;

class PcSubgroup {
 public:
  PcSubgroup() = default;
  /// Wraps rows already known to form an igs; reduces them to canonical form.
  PcSubgroup(PcGroupPtr parent, std::vector<PcElement> igs_rows);

  const PcGroupPtr& parent() const { return parent_; }
  const std::vector<PcElement>& igs() const { return rows_; }
  std::vector<int> depths() const;
  std::size_t hirsch_length() const { return rows_.size(); }
  bool is_trivial() const { return rows_.empty(); }

  bool contains(const PcElement& x) const;
  /// Exponents q with x = r_0^q_0 r_1^q_1 ... over the igs rows, if x is a member.
  std::optional<IntVector> coordinates(const PcElement& x) const;

  /// Integer CSV: header "depth,b0,b1,...", one row per igs element.
  void write_csv(std::ostream& out) const;

  friend bool operator==(const PcSubgroup& a, const PcSubgroup& b) {
    return a.parent_ == b.parent_ && a.rows_ == b.rows_;
  }

 private:
  PcGroupPtr parent_;
  std::vector<PcElement> rows_;
  std::vector<int> slot_;  // depth -> row index or -1
};

PcSubgroup trivial_subgroup(const PcGroupPtr& g);
PcSubgroup whole_group(const PcGroupPtr& g);
PcSubgroup subgroup(const PcGroupPtr& g, std::span<const PcElement> gens);
PcSubgroup normal_closure_pc(const PcGroupPtr& g, std::span<const PcElement> gens);
/// Subgroup generated by H and K.
PcSubgroup join(const PcSubgroup& h, const PcSubgroup& k);
bool is_subset(const PcSubgroup& h, const PcSubgroup& k);
bool is_normal(const PcSubgroup& h);
/// Intersection of two normal subgroups.
PcSubgroup intersect_pc(const PcSubgroup& h, const PcSubgroup& k);
/// [H,K] for normal H, K.
PcSubgroup commutator_subgroup_pc(const PcSubgroup& h, const PcSubgroup& k);
/// Invariants of A/B, requiring B <= A and [A,A] <= B.
AbelianInvariants central_quotient_invariants(const PcSubgroup& a, const PcSubgroup& b);
/// Order of xB in A/B (same requirements); std::nullopt for infinite order.
std::optional<Integer> order_modulo(const PcElement& x, const PcSubgroup& a, const PcSubgroup& b);
/// Image of H in a lower-class quotient of the same rank.
PcSubgroup project(const PcSubgroup& h, const PcGroupPtr& lower);

}  // namespace colimit

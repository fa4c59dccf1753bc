#pragma once

// Explicitly enumerated finite groups and their subgroups as sorted element
// sets. Groups come from coset enumeration (the regular representation) or
// from a multiplication table.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "colimit/coset.hpp"
#include "colimit/intmat.hpp"
#include "colimit/word.hpp"

namespace colimit {

constexpr std::size_t kMaxFiniteOrder = 20000;

class FiniteGroup {
 public:
  /// From a complete coset table of the trivial subgroup.
  FiniteGroup(const CosetTable& table, Alphabet generators);
  /// From a multiplication table (row-major, element 0 the identity).
  FiniteGroup(std::size_t order, std::vector<int> mul_table, std::vector<int> gen_images,
              Alphabet generators);

  std::size_t order() const { return order_; }
  int mul(int a, int b) const;
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  /// [a,b] = a b a^-1 b^-1.
  int commutator(int a, int b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
  /// g a g^-1.
  int conjugate(int a, int g) const { return mul(mul(g, a), inv(g)); }
  int power(int a, long long e) const;
  int element_order(int a) const;

  /// Element for each presentation generator (may be empty for table groups).
  const std::vector<int>& gen_images() const { return gens_; }
  const Alphabet& alphabet() const { return alphabet_; }
  /// Evaluates a word over the generator images.
  int evaluate(const Word& w) const;
  /// A word for each element (shortest in the generators when built from a
  /// coset table).
  Word word_of(int a) const;
  /// Generating set used by the subgroup algorithms: the generator images,
  /// or all elements for table groups without generators.
  const std::vector<int>& generating_set() const { return gens_; }

  /// Verifies identity and inverse laws everywhere and associativity on
  /// `samples` seeded random triples; throws std::logic_error on failure.
  void verify(std::size_t samples = 2000, unsigned seed = 1) const;

 private:
  void build_inverses();

  std::size_t order_ = 1;
  std::vector<int> table_;  // order_ * order_ when dense
  // Sparse representation: regular action on cosets plus BFS tree.
  std::vector<int> cosets_;  // order_ * columns
  int columns_ = 0;
  std::vector<int> parent_, via_;
  std::vector<int> inv_;
  std::vector<int> gens_;
  Alphabet alphabet_;
};

using FiniteGroupPtr = std::shared_ptr<const FiniteGroup>;

/// Realizes the group presented by p; throws BudgetError when enumeration
/// exceeds `limit` or the order exceeds kMaxFiniteOrder.
FiniteGroupPtr realize(const Presentation& p, std::size_t limit = kDefaultCosetLimit,
                       Strategy strategy = Strategy::hlt);

class FinSubgroup {
 public:
  FinSubgroup() = default;
  /// Members must be a subgroup; they are sorted and checked for closure.
  FinSubgroup(FiniteGroupPtr parent, std::vector<int> members);

  const FiniteGroupPtr& parent() const { return parent_; }
  const std::vector<int>& members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  bool contains(int a) const;
  bool is_trivial() const { return members_.size() == 1; }
  /// A small generating set (greedy, in member order).
  const std::vector<int>& generators() const { return gens_; }

  friend bool operator==(const FinSubgroup& a, const FinSubgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }
  friend bool operator<(const FinSubgroup& a, const FinSubgroup& b) { return a.members_ < b.members_; }

 private:
  FiniteGroupPtr parent_;
  std::vector<int> members_;
  std::vector<int> gens_;
};

FinSubgroup trivial_subgroup(const FiniteGroupPtr& g);
FinSubgroup whole_group(const FiniteGroupPtr& g);
/// Subgroup generated by the given elements.
FinSubgroup generated_subgroup(const FiniteGroupPtr& g, std::span<const int> gens);
FinSubgroup normal_closure(const FiniteGroupPtr& g, std::span<const int> seeds);
FinSubgroup intersect(const FinSubgroup& h, const FinSubgroup& k);
/// HK; requires one factor normal in the parent.
FinSubgroup product(const FinSubgroup& h, const FinSubgroup& k);
FinSubgroup commutator_subgroup(const FinSubgroup& h, const FinSubgroup& k);
FinSubgroup center(const FiniteGroupPtr& g);
bool is_subset(const FinSubgroup& h, const FinSubgroup& k);
bool is_normal(const FinSubgroup& h);
/// H normalized by every element of K.
bool is_normalized_by(const FinSubgroup& h, const FinSubgroup& k);
/// Invariants of A/B; requires B <= A, B normal in A and A/B abelian.
AbelianInvariants abelian_invariants_of_quotient(const FinSubgroup& a, const FinSubgroup& b);
/// All normal subgroups, sorted by order then members.
std::vector<FinSubgroup> normal_subgroups(const FiniteGroupPtr& g);
/// G/N as a table group, with generator images mapped through.
FiniteGroupPtr quotient(const FinSubgroup& n);
bool is_abelian(const FiniteGroupPtr& g);

}  // namespace colimit

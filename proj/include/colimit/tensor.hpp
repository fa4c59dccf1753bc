#pragma once

// The group T(N_1,...,N_n) generated by symbols a (x)_{A,B} b over ordered
// partitions A, B of {1..n}, its quotient E(G,M,N), the crossed-module
// boundary a (x) b -> [a,b] and the kernel of that boundary.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "colimit/coset.hpp"
#include "colimit/finite.hpp"
#include "colimit/intmat.hpp"

namespace colimit {

constexpr std::size_t kDefaultTensorBudget = 100'000;
constexpr std::size_t kDefaultRelatorBudget = 5'000'000;

/// Index sets are bit masks over {0..n-1}; a in N_A, b in N_B.
struct TensorSymbol {
  unsigned a_set = 0, b_set = 0;
  int a = 0, b = 0;
  friend bool operator==(const TensorSymbol&, const TensorSymbol&) = default;
};

struct TensorBudget {
  std::size_t symbols = kDefaultTensorBudget;
  std::size_t relators = kDefaultRelatorBudget;
};

class TensorPresentation {
 public:
  const FiniteGroupPtr& ambient() const { return ambient_; }
  std::size_t arity() const { return subgroups_.size(); }
  const std::vector<FinSubgroup>& subgroups() const { return subgroups_; }
  /// Ordered partitions (A, B) as A masks, in increasing order.
  const std::vector<unsigned>& partitions() const { return partitions_; }
  const std::vector<TensorSymbol>& symbols() const { return symbols_; }
  /// Generators named t_<A>_<B>_<a>_<b>; relators deduplicated up to cyclic
  /// permutation and inversion.
  const Presentation& base() const { return base_; }
  /// Relators contributed by families (i)-(iv) and by x (x) x, before
  /// deduplication against earlier families.
  const std::array<std::size_t, 5>& family_counts() const { return family_counts_; }

  /// Symbol index; a in N_A and b in N_B are required.
  int symbol_index(unsigned a_set, int a, int b) const;
  /// Boundary of a symbol: [a,b].
  int boundary(int symbol) const;
  /// Boundary of a word in the symbols.
  int boundary(const Word& w) const;
  /// ^g(a (x) b) = ^g a (x) ^g b.
  int act(int g, int symbol) const;
  /// Member of N_A for an index set A.
  const FinSubgroup& meet(unsigned set) const { return meets_[set]; }

  /// Presentation in the text format.
  std::string to_dsl() const;

 private:
  friend TensorPresentation build_T(const std::vector<FinSubgroup>&, TensorBudget);
  friend TensorPresentation build_E(const FinSubgroup&, const FinSubgroup&, TensorBudget);

  FiniteGroupPtr ambient_;
  std::vector<FinSubgroup> subgroups_;
  std::vector<FinSubgroup> meets_;  // by mask, index 0 unused
  std::vector<unsigned> partitions_;
  std::vector<int> offset_;             // by A mask
  std::vector<std::vector<int>> pos_;   // by mask: element id -> position in meet, or -1
  std::vector<TensorSymbol> symbols_;
  Presentation base_;
  std::array<std::size_t, 5> family_counts_{};
};

/// T(N_1,...,N_n) for normal subgroups of a finite group, n in 2..9.
/// Throws BudgetError when symbols or relators exceed the budget.
TensorPresentation build_T(const std::vector<FinSubgroup>& subgroups, TensorBudget budget = {});
/// E(G,M,N): T(G,M,N) with x (x)_{A,B} x = 1 for nontrivial x in M meet N.
TensorPresentation build_E(const FinSubgroup& m, const FinSubgroup& n, TensorBudget budget = {});

/// Subgroup generated by the boundaries of all symbols.
FinSubgroup boundary_image(const TensorPresentation& tp);

struct KernelReport {
  Strategy strategy = Strategy::hlt;
  bool complete = false;  // enumeration of T finished within the limit
  std::size_t t_order = 0;
  std::size_t image_order = 0;
  std::size_t kernel_order = 0;
  /// Abelianization of ker d from Reidemeister-Schreier rewriting over the
  /// cosets of ker d (always available).
  AbelianInvariants kernel_abelianization;
  /// Filled when T was realized as a finite group.
  bool realized = false;
  bool kernel_abelian = true;
  bool consistent = true;  // realized and rewritten abelianizations agree
};

/// Kernel of the boundary; the abelianization is computed even when the
/// enumeration of T does not finish.
KernelReport kernel_of_boundary(const TensorPresentation& tp, std::size_t limit = kDefaultCosetLimit,
                                Strategy strategy = Strategy::hlt);

/// Abelianization of ker d by Reidemeister-Schreier over the image of d.
AbelianInvariants kernel_abelianization(const TensorPresentation& tp);

}  // namespace colimit

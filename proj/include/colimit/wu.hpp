#pragma once

// The quotient (<y_-1> meet <y_0> meet ... meet <y_{n-1}>) / [[y_-1,...,y_{n-1}]]
// in free nilpotent truncations F(y_0..y_{n-1}) / gamma_{c+1}, where
// y_-1 = (y_0...y_{n-1})^-1 and the denominator is the normal closure of
// left-normed commutators in signed letters using every letter.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "colimit/colimit.hpp"
#include "colimit/pc.hpp"

namespace colimit {

struct WuConfig {
  int n = 1;
  int cls = 2;
  std::size_t budget = kDefaultPcBudget;
};

struct WuContext {
  WuConfig config;
  PcGroupPtr group;
  /// Normal closures of y_-1, y_0, ..., y_{n-1}, in that order.
  std::vector<PcSubgroup> closures;
  Alphabet alphabet;  // y0..y{n-1}
  PcElement y_minus1;
};

/// Builds F/gamma_{c+1}; requires n >= 1 and c >= n.
WuContext wu_context(const WuConfig& cfg);

struct WuDenominator {
  PcSubgroup subgroup;
  std::size_t tuples = 0;      // tuples visited
  std::size_t generators = 0;  // distinct nontrivial commutator values
};

WuDenominator wu_denominator(const WuContext& ctx, int max_length = -1);
PcSubgroup wu_numerator(const WuContext& ctx);

struct WuReport {
  WuConfig config;
  PcSubgroup numerator, denominator;
  std::size_t tuples = 0, generators = 0;
  AbelianInvariants invariants;
  bool central = true;
};

WuReport wu_group(const WuContext& ctx);

struct Membership {
  bool in_numerator = false;
  bool in_denominator = false;
  /// Order modulo the denominator; nullopt for infinite order, unset when
  /// the element is outside the numerator.
  std::optional<Integer> order;
  bool order_known = false;
};

/// Word over y0..y{n-1}.
Membership membership_check(const Word& w, const WuContext& ctx, const WuReport& report);

struct Equality13 {
  bool equal = false;
  std::size_t denominator_hirsch = 0, product_hirsch = 0;
  std::string discrepancy;
};

/// Compares the denominator with the symmetric commutator of the n+1
/// normal closures.
Equality13 check_equality_13(const WuContext& ctx);

struct BraidPair {
  int i = 0, j = 0;  // 1-based
  bool contained = true;  // [R_i,R_j] <= R_i meet R_j
  bool equal = false;
  std::size_t meet_hirsch = 0, commutator_hirsch = 0;
};

/// R_1, R_2, R_3 = normal closures of xyx(yxy)^-1, yzy(zyz)^-1, xz(zx)^-1 in
/// F(x,y,z)/gamma_{c+1}; compares R_i meet R_j with [R_i,R_j].
std::vector<BraidPair> braid_check(int cls, std::size_t budget = kDefaultPcBudget);

/// <x1,x2 | x1^n x2^-(n+1), x1 x2 x1 x2^-1 x1^-1 x2^-1>.
Presentation akbulut_kirby(int n);
/// <x1,x2 | x1^2 x2^-3, x1^3 x2^-4>.
Presentation akbulut_kirby_pair();

}  // namespace colimit

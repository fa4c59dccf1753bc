#pragma once

// Basic commutators for free nilpotent groups, indexed by Lyndon words.
//
// Basis elements are ordered by weight, then lexicographically by Lyndon
// word. A Lyndon word of length >= 2 with standard factorization u*v (v the
// longest proper Lyndon suffix) gives the commutator [b_u, b_v].

#include <cstdint>
#include <string>
#include <vector>

#include "colimit/word.hpp"

namespace colimit {

/// Number of basic commutators of weight w on r generators (Witt's formula).
std::uint64_t witt_number(int rank, int weight);
/// Sum of witt_number(rank, w) for w = 1..cls, saturating at UINT64_MAX.
std::uint64_t basis_size(int rank, int cls);

struct BasicCommutator {
  std::vector<int> lyndon;  // letters 0..rank-1
  int weight = 1;
  int left = -1;   // basis indices of the factors, -1 for generators
  int right = -1;
};

class HallBasis {
 public:
  HallBasis(int rank, int cls);

  int rank() const { return rank_; }
  int cls() const { return cls_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const BasicCommutator& operator[](int i) const { return elems_[static_cast<std::size_t>(i)]; }
  /// First basis index of the given weight (weight = cls + 1 gives size()).
  int weight_begin(int w) const { return begin_[static_cast<std::size_t>(w)]; }
  int count_of_weight(int w) const { return weight_begin(w + 1) - weight_begin(w); }

  /// Free-group word of a basis element over generators 0..rank-1.
  Word word(int i) const;
  /// Bracket notation over the given alphabet, e.g. "[[y0,y1],y1]".
  std::string render(int i, const Alphabet& alphabet) const;

 private:
  int rank_;
  int cls_;
  std::vector<BasicCommutator> elems_;
  std::vector<int> begin_;
};

}  // namespace colimit

#pragma once

// Truncated Magnus representation of free nilpotent groups: x_i -> 1 + X_i
// in the noncommutative power series ring Z<<X>> modulo terms of degree
// greater than the class. The representation is faithful on F/gamma_{c+1}.
// It provides the conjugation tables of the collector and an independent
// oracle for collection.

#include <cstdint>
#include <utility>
#include <vector>

#include "colimit/hall.hpp"
#include "colimit/intmat.hpp"
#include "colimit/word.hpp"

namespace colimit {

class MagnusAlgebra {
 public:
  /// Dense coefficients indexed by monomial: degree blocks of size rank^d.
  using Series = std::vector<std::int64_t>;
  /// Homogeneous polynomial as (monomial value within its block, coefficient).
  using Sparse = std::vector<std::pair<std::size_t, std::int64_t>>;

  MagnusAlgebra(int rank, int cls);

  int rank() const { return rank_; }
  int cls() const { return cls_; }
  std::size_t size() const { return offset_.back(); }
  std::size_t offset(int degree) const { return offset_[static_cast<std::size_t>(degree)]; }
  std::size_t block(int degree) const { return pow_[static_cast<std::size_t>(degree)]; }
  /// Monomial value (base-rank digits) of a letter sequence.
  std::size_t monomial(const std::vector<int>& letters) const;

  Series one() const;
  /// (1 + X_i)^e.
  Series generator(int i, std::int64_t e) const;
  Series mul(const Series& a, const Series& b) const;
  /// (1 + P)^e for any integer e, where P = s - 1 has no constant term.
  Series power(const Series& s, std::int64_t e) const;
  Series inverse(const Series& s) const { return power(s, -1); }
  Series of_word(const Word& w) const;
  /// Lowest degree with a nonzero coefficient in s - 1 (cls + 1 if none).
  int order(const Series& s) const;

  /// Homogeneous degree-d part as a sparse polynomial.
  Sparse homogeneous(const Series& s, int degree) const;
  /// Lie bracket pq - qp of homogeneous polynomials of degrees dp and dq.
  Sparse bracket(const Sparse& p, int dp, const Sparse& q, int dq) const;

 private:
  int rank_;
  int cls_;
  std::vector<std::size_t> offset_;  // cls + 2 entries
  std::vector<std::size_t> pow_;     // rank^d
};

/// Hall-basis coordinates of Magnus series.
class MagnusCoordinates {
 public:
  explicit MagnusCoordinates(const HallBasis& basis);

  const MagnusAlgebra& algebra() const { return alg_; }
  /// Image of basis element i (dense); available for weight < cls.
  const MagnusAlgebra::Series& image(int i) const { return images_[static_cast<std::size_t>(i)]; }
  /// Exponents e with s = prod b_i^e_i in basis order. Throws
  /// std::logic_error if s is not the image of a group element.
  IntVector coordinates(const MagnusAlgebra::Series& s) const;
  IntVector coordinates(const Word& w) const { return coordinates(alg_.of_word(w)); }

 private:
  const HallBasis& basis_;
  MagnusAlgebra alg_;
  std::vector<MagnusAlgebra::Series> images_;
  std::vector<MagnusAlgebra::Sparse> lie_;  // leading homogeneous part of each basis element
  std::vector<std::size_t> lyndon_;        // monomial value of each Lyndon word
};

}  // namespace colimit

#pragma once

// Exact integer linear algebra: echelon (Hermite) lattices, Smith normal
// form and the abelian-group invariants derived from it.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace colimit {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

std::string to_string(const Integer& x);

/// Elementary-divisor description of a finitely generated abelian group:
/// Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... and every di >= 2.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  /// Product of the torsion coefficients; only meaningful when finite.
  Integer torsion_order() const;
  /// "Z^2 + Z/2 + Z/6", "0" for the trivial group.
  std::string to_string() const;

  friend bool operator==(const AbelianInvariants&,
                         const AbelianInvariants&) = default;
};

/// Build invariants from an arbitrary list of diagonal entries (zeros count
/// as free summands, units are dropped, the rest is brought into
/// divisibility-chain form).
AbelianInvariants invariants_from_diagonal(const std::vector<Integer>& diag);

/// Row lattice kept in Hermite normal form: one row per pivot column, pivots
/// positive, entries above a pivot reduced into [0, pivot).
class EchelonLattice {
 public:
  explicit EchelonLattice(std::size_t ncols) : ncols_(ncols) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  const IntMatrix& rows() const { return rows_; }

  /// Adds a vector to the generating set. Returns true if the lattice grew.
  bool add(IntVector v);
  bool contains(IntVector v) const;

  /// Reduced rows (full Hermite form). Canonical for the lattice.
  IntMatrix hermite() const;

 private:
  static std::size_t pivot_of(const IntVector& v);

  std::size_t ncols_;
  IntMatrix rows_;  // sorted by pivot column
};

/// Nonzero diagonal of the Smith normal form of the given matrix, in
/// divisibility-chain order.
std::vector<Integer> smith_diagonal(IntMatrix m);

/// Invariants of Z^ncols / (row lattice of relations).
AbelianInvariants abelian_invariants(const IntMatrix& relations,
                                     std::size_t ncols);

/// Sparse relation vector: (column, coefficient) pairs.
using SparseVector = std::vector<std::pair<std::size_t, Integer>>;

/// Invariants of Z^ncols / (relations) for many sparse relations. Columns
/// with a unit coefficient are eliminated as relations arrive; the rest go
/// through the dense Smith form at the end.
class SparseAbelianizer {
 public:
  explicit SparseAbelianizer(std::size_t ncols);
  void add(SparseVector v);
  std::size_t eliminated() const { return eliminated_; }
  AbelianInvariants invariants();

 private:
  SparseVector reduce(SparseVector v);
  const SparseVector& resolved(std::size_t col);

  std::size_t ncols_;
  std::size_t eliminated_ = 0;
  std::vector<char> gone_;
  std::vector<SparseVector> subst_;  // eliminated column -> value in other columns
  std::vector<SparseVector> hard_;
};

/// Order of the image of v in Z^ncols / (row lattice of relations);
/// std::nullopt means infinite order.
std::optional<Integer> order_in_quotient(const IntVector& v,
                                         const IntMatrix& relations,
                                         std::size_t ncols);

}  // namespace colimit

#pragma once

// Todd-Coxeter coset enumeration.
//
// Two strategies are provided: HLT (relator-based definitions, row by row,
// with a lookahead pass when the table fills) and Felsch (first-gap
// definitions with full deduction processing). Both are deterministic and
// produce a standardized table, so complete tables from the two strategies
// agree exactly when the input is the same.

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "colimit/word.hpp"

namespace colimit {

enum class Strategy { hlt, felsch };

enum class EnumerationStatus { complete, exceeded_limit };

/// Rows are cosets, columns are 2*ngens: column 2i is generator i, column
/// 2i+1 its inverse. Coset 0 is the subgroup itself.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(int ngens, std::vector<int> entries, EnumerationStatus status,
             std::size_t max_live, std::size_t total_defined);

  EnumerationStatus status() const { return status_; }
  bool complete() const { return status_ == EnumerationStatus::complete; }
  /// Index of the subgroup (number of rows); only meaningful when complete.
  std::size_t index() const { return ngens_ == 0 ? rows_ : entries_.size() / columns(); }
  int ngens() const { return ngens_; }
  int columns() const { return 2 * ngens_; }
  int at(std::size_t coset, int column) const {
    return entries_[coset * static_cast<std::size_t>(columns()) + static_cast<std::size_t>(column)];
  }
  /// Image of a coset under a generator letter (signed, 1-based as in
  /// Word::letters()).
  int act(std::size_t coset, int signed_letter) const;
  /// Image of a coset under a word.
  int act(std::size_t coset, const Word& w) const;

  /// Statistics for reports.
  std::size_t max_live() const { return max_live_; }
  std::size_t total_defined() const { return total_defined_; }

  /// CSV with header "coset,g0,g0^-1,...".
  void write_csv(std::ostream& out, const Alphabet& alphabet) const;

  friend bool operator==(const CosetTable& a, const CosetTable& b) {
    return a.ngens_ == b.ngens_ && a.status_ == b.status_ && a.entries_ == b.entries_;
  }

 private:
  int ngens_ = 0;
  std::size_t rows_ = 1;  // used only when ngens_ == 0
  std::vector<int> entries_;
  EnumerationStatus status_ = EnumerationStatus::complete;
  std::size_t max_live_ = 0;
  std::size_t total_defined_ = 0;
};

constexpr std::size_t kDefaultCosetLimit = 1'000'000;
/// Table entries (rows times columns) allowed in one enumeration; the row
/// limit is lowered to fit.
constexpr std::size_t kMaxTableEntries = std::size_t{1} << 27;

/// Enumerates the cosets of <subgroup_gens> in the group presented by p.
/// `limit` bounds the number of live cosets (checked before each relator
/// scan, so a scan may overshoot by one relator length); exceeding it
/// yields a table with status exceeded_limit. Throws InputError when a
/// relator or subgroup generator uses letters outside p's alphabet.
CosetTable todd_coxeter(const Presentation& p, std::span<const Word> subgroup_gens,
                        std::size_t limit = kDefaultCosetLimit,
                        Strategy strategy = Strategy::hlt);

}  // namespace colimit

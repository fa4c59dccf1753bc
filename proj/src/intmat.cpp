#include "colimit/intmat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace colimit {

std::string to_string(const Integer& x) { return x.str(); }

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

// Floor division for integers with positive divisor.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Extended Euclid: returns g = gcd(a,b) >= 0 and s, t with s*a + t*b = g.
void extended_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s,
                  Integer& t) {
  Integer old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s1;
    old_s = s1;
    s1 = tmp;
    tmp = old_t - q * t1;
    old_t = t1;
    t1 = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

}  // namespace

Integer AbelianInvariants::torsion_order() const {
  Integer p = 1;
  for (const auto& d : torsion) p *= d;
  return p;
}

std::string AbelianInvariants::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream out;
  bool first = true;
  if (free_rank > 0) {
    out << "Z";
    if (free_rank > 1) out << "^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) out << " + ";
    out << "Z/" << d;
    first = false;
  }
  return out.str();
}

AbelianInvariants invariants_from_diagonal(const std::vector<Integer>& diag) {
  AbelianInvariants inv;
  // Collect prime-power parts per entry, then recombine into a divisibility
  // chain. Working with gcd/lcm swaps avoids factoring.
  std::vector<Integer> ds;
  for (const auto& d : diag) {
    Integer a = abs_value(d);
    if (a == 0) {
      ++inv.free_rank;
    } else if (a != 1) {
      ds.push_back(a);
    }
  }
  // Repeatedly replace (x, y) by (gcd, lcm) until the chain divides.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (std::size_t j = i + 1; j < ds.size(); ++j) {
        if (ds[j] % ds[i] != 0) {
          Integer g = boost::multiprecision::gcd(ds[i], ds[j]);
          Integer l = ds[i] / g * ds[j];
          ds[i] = g;
          ds[j] = l;
          changed = true;
        }
      }
    }
  }
  for (auto& d : ds) {
    if (d != 1) inv.torsion.push_back(d);
  }
  std::sort(inv.torsion.begin(), inv.torsion.end());
  return inv;
}

// ---------------------------------------------------------------------------
// EchelonLattice

std::size_t EchelonLattice::pivot_of(const IntVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return i;
  }
  return v.size();
}

bool EchelonLattice::add(IntVector v) {
  v.resize(ncols_);
  bool grew = false;
  std::size_t k = 0;  // index into rows_
  while (true) {
    std::size_t p = pivot_of(v);
    if (p == ncols_) return grew;
    while (k < rows_.size() && pivot_of(rows_[k]) < p) ++k;
    if (k == rows_.size() || pivot_of(rows_[k]) > p) {
      if (v[p] < 0) {
        for (auto& x : v) x = -x;
      }
      rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(k), std::move(v));
      return true;
    }
    IntVector& row = rows_[k];
    if (v[p] % row[p] == 0) {
      Integer q = v[p] / row[p];
      for (std::size_t j = p; j < ncols_; ++j) v[j] -= q * row[j];
      continue;
    }
    // Unimodular combination puts gcd in the pivot and kills it in v.
    Integer g, s, t;
    extended_gcd(row[p], v[p], g, s, t);
    Integer a = row[p] / g, b = v[p] / g;
    IntVector new_row(ncols_), rest(ncols_);
    for (std::size_t j = p; j < ncols_; ++j) {
      new_row[j] = s * row[j] + t * v[j];
      rest[j] = a * v[j] - b * row[j];
    }
    row = std::move(new_row);
    v = std::move(rest);
    grew = true;
  }
}

bool EchelonLattice::contains(IntVector v) const {
  v.resize(ncols_);
  for (const auto& row : rows_) {
    std::size_t p = pivot_of(row);
    if (pivot_of(v) < p) return false;
    if (v[p] == 0) continue;
    if (v[p] % row[p] != 0) return false;
    Integer q = v[p] / row[p];
    for (std::size_t j = p; j < ncols_; ++j) v[j] -= q * row[j];
  }
  return is_zero(v);
}

IntMatrix EchelonLattice::hermite() const {
  IntMatrix h = rows_;
  for (std::size_t i = 0; i < h.size(); ++i) {
    std::size_t p = pivot_of(h[i]);
    for (std::size_t k = 0; k < i; ++k) {
      Integer q = floor_div(h[k][p], h[i][p]);
      if (q == 0) continue;
      for (std::size_t j = p; j < ncols_; ++j) h[k][j] -= q * h[i][j];
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<Integer> smith_diagonal(IntMatrix m) {
  const std::size_t nrows = m.size();
  const std::size_t ncols = nrows == 0 ? 0 : m[0].size();
  std::vector<Integer> diag;
  std::size_t t = 0;
  while (t < nrows && t < ncols) {
    // Pivot: entry of minimal absolute value in the trailing block.
    std::size_t pi = nrows, pj = ncols;
    Integer best = 0;
    for (std::size_t i = t; i < nrows; ++i) {
      for (std::size_t j = t; j < ncols; ++j) {
        if (m[i][j] == 0) continue;
        Integer a = abs_value(m[i][j]);
        if (pi == nrows || a < best) {
          best = a;
          pi = i;
          pj = j;
          if (best == 1) break;
        }
      }
      if (best == 1) break;
    }
    if (pi == nrows) break;
    std::swap(m[t], m[pi]);
    if (pj != t) {
      for (auto& row : m) std::swap(row[t], row[pj]);
    }
    bool clean = true;
    for (std::size_t i = t + 1; i < nrows; ++i) {
      if (m[i][t] == 0) continue;
      Integer q = m[i][t] / m[t][t];
      for (std::size_t j = t; j < ncols; ++j) m[i][j] -= q * m[t][j];
      if (m[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < ncols; ++j) {
      if (m[t][j] == 0) continue;
      Integer q = m[t][j] / m[t][t];
      for (std::size_t i = t; i < nrows; ++i) m[i][j] -= q * m[i][t];
      if (m[t][j] != 0) clean = false;
    }
    if (!clean) continue;  // a smaller remainder now exists; re-pivot
    // Divisibility: fold a violating row into row t and retry.
    bool divides = true;
    for (std::size_t i = t + 1; i < nrows && divides; ++i) {
      for (std::size_t j = t + 1; j < ncols; ++j) {
        if (m[i][j] % m[t][t] != 0) {
          for (std::size_t k = t; k < ncols; ++k) m[t][k] += m[i][k];
          divides = false;
          break;
        }
      }
    }
    if (!divides) continue;
    diag.push_back(abs_value(m[t][t]));
    ++t;
  }
  return diag;
}

AbelianInvariants abelian_invariants(const IntMatrix& relations,
                                     std::size_t ncols) {
  EchelonLattice lat(ncols);
  for (const auto& r : relations) lat.add(r);
  std::vector<Integer> diag = smith_diagonal(lat.rows());
  std::vector<Integer> all(diag.begin(), diag.end());
  for (std::size_t i = diag.size(); i < ncols; ++i) all.push_back(0);
  return invariants_from_diagonal(all);
}

std::optional<Integer> order_in_quotient(const IntVector& v,
                                         const IntMatrix& relations,
                                         std::size_t ncols) {
  EchelonLattice base(ncols);
  for (const auto& r : relations) base.add(r);
  if (base.contains(v)) return Integer(1);
  EchelonLattice ext = base;
  ext.add(v);
  if (ext.rank() > base.rank()) return std::nullopt;
  // Same rank: index [ext : base] = covolume ratio.
  auto covolume = [](const EchelonLattice& l) {
    Integer p = 1;
    for (const auto& d : smith_diagonal(l.rows())) p *= d;
    return p;
  };
  return covolume(base) / covolume(ext);
}

SparseAbelianizer::SparseAbelianizer(std::size_t ncols)
    : ncols_(ncols), gone_(ncols, 0), subst_(ncols) {}

namespace {

void normalize(SparseVector& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t c = v[i].first;
    Integer sum = 0;
    for (; i < v.size() && v[i].first == c; ++i) sum += v[i].second;
    if (sum != 0) v[out++] = {c, std::move(sum)};
  }
  v.resize(out);
}

}  // namespace

const SparseVector& SparseAbelianizer::resolved(std::size_t col) {
  SparseVector& e = subst_[col];
  bool stale = false;
  for (const auto& [c, x] : e) stale = stale || gone_[c];
  if (stale) e = reduce(std::move(e));
  return e;
}

SparseVector SparseAbelianizer::reduce(SparseVector v) {
  SparseVector out;
  for (auto& [c, x] : v) {
    if (!gone_[c]) {
      out.emplace_back(c, std::move(x));
      continue;
    }
    for (const auto& [d, y] : resolved(c)) out.emplace_back(d, x * y);
  }
  normalize(out);
  return out;
}

void SparseAbelianizer::add(SparseVector v) {
  for (const auto& [c, x] : v) {
    if (c >= ncols_) throw std::out_of_range("relation column out of range");
  }
  v = reduce(std::move(v));
  if (v.empty()) return;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].second != 1 && v[i].second != -1) continue;
    // x_c = -sign * (rest)
    std::size_t c = v[i].first;
    Integer sign = v[i].second;
    SparseVector e;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j != i) e.emplace_back(v[j].first, -sign * v[j].second);
    }
    gone_[c] = 1;
    subst_[c] = std::move(e);
    ++eliminated_;
    return;
  }
  hard_.push_back(std::move(v));
}

AbelianInvariants SparseAbelianizer::invariants() {
  std::vector<std::size_t> index(ncols_, 0);
  std::size_t free_cols = 0;
  for (std::size_t c = 0; c < ncols_; ++c) {
    if (!gone_[c]) index[c] = free_cols++;
  }
  EchelonLattice lat(free_cols);
  for (auto& h : hard_) {
    h = reduce(std::move(h));
    if (h.empty()) continue;
    IntVector row(free_cols, 0);
    for (const auto& [c, x] : h) row[index[c]] = x;
    lat.add(std::move(row));
  }
  std::vector<Integer> diag = smith_diagonal(lat.rows());
  for (std::size_t i = diag.size(); i < free_cols; ++i) diag.push_back(0);
  return invariants_from_diagonal(diag);
}

}  // namespace colimit

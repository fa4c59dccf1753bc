#include "colimit/coset.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "colimit/errors.hpp"

namespace colimit {

CosetTable::CosetTable(int ngens, std::vector<int> entries, EnumerationStatus status,
                       std::size_t max_live, std::size_t total_defined)
    : ngens_(ngens),
      entries_(std::move(entries)),
      status_(status),
      max_live_(max_live),
      total_defined_(total_defined) {}

int CosetTable::act(std::size_t coset, int signed_letter) const {
  int col = signed_letter > 0 ? 2 * (signed_letter - 1) : 2 * (-signed_letter - 1) + 1;
  return at(coset, col);
}

int CosetTable::act(std::size_t coset, const Word& w) const {
  int c = static_cast<int>(coset);
  for (int l : w.letters()) {
    if (c < 0) return -1;
    c = act(static_cast<std::size_t>(c), l);
  }
  return c;
}

void CosetTable::write_csv(std::ostream& out, const Alphabet& alphabet) const {
  out << "coset";
  for (int g = 0; g < ngens_; ++g) {
    out << ',' << alphabet[g].name() << ',' << alphabet[g].name() << "^-1";
  }
  out << '\n';
  for (std::size_t r = 0; r < index(); ++r) {
    out << r;
    for (int c = 0; c < columns(); ++c) out << ',' << at(r, c);
    out << '\n';
  }
}

namespace {

using Relator = std::vector<int>;  // sequence of columns

int inverse_column(int c) { return c ^ 1; }

class Enumerator {
 public:
  Enumerator(int ngens, std::vector<Relator> relators, std::vector<Relator> subgroup,
             std::size_t limit, Strategy strategy)
      : ncols_(2 * ngens),
        relators_(std::move(relators)),
        subgroup_(std::move(subgroup)),
        limit_(std::clamp<std::size_t>(limit, 1, kMaxTableEntries / std::max(2 * ngens, 1))),
        strategy_(strategy) {
    if (strategy_ == Strategy::felsch) build_conjugates();
    new_coset();
  }

  CosetTable run() {
    bool ok = strategy_ == Strategy::hlt ? run_hlt() : run_felsch();
    if (!ok) {
      return CosetTable(ncols_ / 2, {}, EnumerationStatus::exceeded_limit, max_live_, total_defined_);
    }
    return finish();
  }

 private:
  // ---- table primitives --------------------------------------------------
  int& entry(int c, int x) { return table_[static_cast<std::size_t>(c) * ncols_ + x]; }
  bool alive(int c) const { return parent_[c] == c; }

  int new_coset() {
    int d = static_cast<int>(parent_.size());
    parent_.push_back(d);
    table_.insert(table_.end(), ncols_, -1);
    ++live_;
    ++total_defined_;
    max_live_ = std::max(max_live_, live_);
    return d;
  }

  void define(int c, int x) {
    int d = new_coset();
    entry(c, x) = d;
    entry(d, inverse_column(x)) = c;
    if (strategy_ == Strategy::felsch) deductions_.emplace_back(c, x);
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(int k, int l) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[l] = k;
    --live_;
    queue_.push_back(l);
  }

  void coincidence(int a, int b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      int g = queue_[i];
      for (int x = 0; x < ncols_; ++x) {
        int d = entry(g, x);
        if (d < 0) continue;
        entry(g, x) = -1;
        if (entry(d, inverse_column(x)) == g) entry(d, inverse_column(x)) = -1;
        int mu = rep(g), nu = rep(d);
        if (entry(mu, x) >= 0) {
          merge(nu, entry(mu, x));
        } else if (entry(nu, inverse_column(x)) >= 0) {
          merge(mu, entry(nu, inverse_column(x)));
        } else {
          entry(mu, x) = nu;
          entry(nu, inverse_column(x)) = mu;
          if (strategy_ == Strategy::felsch) deductions_.emplace_back(mu, x);
        }
      }
    }
    had_coincidence_ = true;
  }

  // Scan with definitions (HLT).
  void scan_and_fill(int a, const Relator& w) {
    if (w.empty()) return;
    int f = a, b = a;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (true) {
      while (i <= j && entry(f, w[i]) >= 0) f = entry(f, w[i++]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && entry(b, inverse_column(w[j])) >= 0) b = entry(b, inverse_column(w[j--]));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        entry(f, w[i]) = b;
        entry(b, inverse_column(w[i])) = f;
        if (strategy_ == Strategy::felsch) deductions_.emplace_back(f, w[i]);
        return;
      }
      define(f, w[i]);
    }
  }

  // Scan without definitions; a single gap becomes a deduction.
  void scan(int a, const Relator& w) {
    if (w.empty()) return;
    int f = a, b = a;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (i <= j && entry(f, w[i]) >= 0) f = entry(f, w[i++]);
    if (i > j) {
      if (f != b) coincidence(f, b);
      return;
    }
    while (j >= i && entry(b, inverse_column(w[j])) >= 0) b = entry(b, inverse_column(w[j--]));
    if (j < i) {
      coincidence(f, b);
    } else if (i == j) {
      entry(f, w[i]) = b;
      entry(b, inverse_column(w[i])) = f;
      if (strategy_ == Strategy::felsch) deductions_.emplace_back(f, w[i]);
    }
  }

  // Removes dead rows, preserving order. Returns the old->new map.
  std::vector<int> compact() {
    std::vector<int> remap(parent_.size(), -1);
    int next = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (parent_[c] == static_cast<int>(c)) remap[c] = next++;
    }
    std::vector<int> table(static_cast<std::size_t>(next) * ncols_, -1);
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (remap[c] < 0) continue;
      for (int x = 0; x < ncols_; ++x) {
        int d = table_[c * ncols_ + x];
        table[static_cast<std::size_t>(remap[c]) * ncols_ + x] = d < 0 ? -1 : remap[d];
      }
    }
    table_ = std::move(table);
    parent_.resize(static_cast<std::size_t>(next));
    for (int c = 0; c < next; ++c) parent_[c] = c;
    return remap;
  }

  // Room check before a scan or row fill: allocated rows must not exceed the
  // limit (a single scan may then add at most one relator's worth). `cursor`
  // is remapped; if
  // the coset it named died, it moves to the next live one and `killed` is
  // set.
  bool make_room(int& cursor, bool& killed) {
    killed = false;
    if (parent_.size() <= limit_) return true;
    auto remap_cursor = [&](const std::vector<int>& remap) {
      int c = cursor;
      if (c < static_cast<int>(remap.size()) && remap[c] < 0) killed = true;
      while (c < static_cast<int>(remap.size()) && remap[c] < 0) ++c;
      cursor = c < static_cast<int>(remap.size()) ? remap[c] : static_cast<int>(parent_.size());
    };
    remap_cursor(compact());
    if (parent_.size() <= limit_) return true;
    if (strategy_ == Strategy::hlt) {
      lookahead();
      remap_cursor(compact());
      if (parent_.size() <= limit_) return true;
    }
    return false;
  }

  void lookahead() {
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      for (const auto& r : relators_) {
        if (!alive(static_cast<int>(c))) break;
        scan(static_cast<int>(c), r);
      }
    }
  }

  // ---- HLT -----------------------------------------------------------------
  bool run_hlt() {
    int c = 0;
    bool killed = false;
    for (const auto& h : subgroup_) {
      if (!make_room(c, killed)) return false;
      scan_and_fill(rep(0), h);
    }
    c = 0;
    while (c < static_cast<int>(parent_.size())) {
      if (!alive(c)) {
        ++c;
        continue;
      }
      bool restart = false;
      for (const auto& r : relators_) {
        if (!make_room(c, killed)) return false;
        if (killed) {
          restart = true;
          break;
        }
        scan_and_fill(c, r);
        if (!alive(c)) break;
      }
      if (restart) continue;
      if (alive(c)) {
        if (!make_room(c, killed)) return false;
        if (killed) continue;
        for (int x = 0; x < ncols_; ++x) {
          if (entry(c, x) < 0) define(c, x);
        }
      }
      ++c;
    }
    return true;
  }

  // ---- Felsch ----------------------------------------------------------------
  void build_conjugates() {
    conjugates_.assign(static_cast<std::size_t>(ncols_), {});
    std::vector<std::set<Relator>> seen(static_cast<std::size_t>(ncols_));
    for (const auto& r : relators_) {
      if (r.empty()) continue;
      Relator inv(r.rbegin(), r.rend());
      for (auto& x : inv) x = inverse_column(x);
      for (const Relator* base : std::initializer_list<const Relator*>{&r, &inv}) {
        Relator rot = *base;
        for (std::size_t k = 0; k < rot.size(); ++k) {
          if (seen[rot[0]].insert(rot).second) conjugates_[rot[0]].push_back(rot);
          std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        }
      }
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!alive(c)) continue;
      for (const auto& w : conjugates_[x]) {
        if (!alive(c)) break;
        scan(c, w);
      }
      if (!alive(c)) continue;
      int d = entry(c, x);
      if (d < 0 || !alive(d)) continue;
      for (const auto& w : conjugates_[inverse_column(x)]) {
        if (!alive(d)) break;
        scan(d, w);
      }
      for (const auto& h : subgroup_) scan(rep(0), h);
    }
  }

  bool run_felsch() {
    int cursor = 0;
    bool killed = false;
    for (const auto& h : subgroup_) {
      if (!make_room(cursor, killed)) return false;
      scan_and_fill(rep(0), h);
      process_deductions();
    }
    cursor = 0;
    while (true) {
      if (had_coincidence_) {
        cursor = 0;
        had_coincidence_ = false;
      }
      // First live coset with an undefined entry.
      int c = cursor, x = -1;
      for (; c < static_cast<int>(parent_.size()); ++c) {
        if (!alive(c)) continue;
        for (int k = 0; k < ncols_; ++k) {
          if (entry(c, k) < 0) {
            x = k;
            break;
          }
        }
        if (x >= 0) break;
      }
      if (x < 0) return true;
      cursor = c;
      if (!make_room(cursor, killed)) return false;
      c = cursor;
      // Compaction may have shifted rows; locate the gap again.
      x = -1;
      for (; c < static_cast<int>(parent_.size()); ++c) {
        for (int k = 0; k < ncols_; ++k) {
          if (entry(c, k) < 0) {
            x = k;
            break;
          }
        }
        if (x >= 0) break;
      }
      if (x < 0) return true;
      cursor = c;
      define(c, x);
      process_deductions();
    }
  }

  // ---- completion ------------------------------------------------------------
  CosetTable finish() {
    compact();
    const int n = static_cast<int>(parent_.size());
    // Every relator must close at every coset; subgroup generators at 0.
    auto trace = [&](int c, const Relator& w) {
      for (int x : w) {
        c = entry(c, x);
        if (c < 0) return -1;
      }
      return c;
    };
    for (int c = 0; c < n; ++c) {
      for (int x = 0; x < ncols_; ++x) {
        if (entry(c, x) < 0) throw std::logic_error("coset table incomplete after enumeration");
      }
      for (const auto& r : relators_) {
        if (trace(c, r) != c) throw std::logic_error("coset table violates a relator");
      }
    }
    for (const auto& h : subgroup_) {
      if (trace(0, h) != 0) throw std::logic_error("coset table violates a subgroup generator");
    }
    // Standardize: number cosets in order of first appearance.
    std::vector<int> order{0}, label(static_cast<std::size_t>(n), -1);
    label[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (int x = 0; x < ncols_; ++x) {
        int d = entry(order[k], x);
        if (label[d] < 0) {
          label[d] = static_cast<int>(order.size());
          order.push_back(d);
        }
      }
    }
    std::vector<int> out(static_cast<std::size_t>(n) * ncols_);
    for (int k = 0; k < n; ++k) {
      for (int x = 0; x < ncols_; ++x) out[static_cast<std::size_t>(k) * ncols_ + x] = label[entry(order[k], x)];
    }
    return CosetTable(ncols_ / 2, std::move(out), EnumerationStatus::complete, max_live_, total_defined_);
  }

  int ncols_;
  std::vector<Relator> relators_;
  std::vector<Relator> subgroup_;
  std::size_t limit_;
  Strategy strategy_;

  std::vector<int> table_;
  std::vector<int> parent_;
  std::size_t live_ = 0;
  std::size_t max_live_ = 0;
  std::size_t total_defined_ = 0;
  std::vector<int> queue_;
  std::vector<std::pair<int, int>> deductions_;
  std::vector<std::vector<Relator>> conjugates_;
  bool had_coincidence_ = false;
};

Relator to_columns(const Word& w, int ngens, const char* what) {
  Relator r;
  for (int l : w.letters()) {
    int g = (l > 0 ? l : -l) - 1;
    if (g >= ngens) throw InputError(std::string(what) + " uses a letter outside the alphabet");
    r.push_back(l > 0 ? 2 * g : 2 * g + 1);
  }
  return r;
}

}  // namespace

CosetTable todd_coxeter(const Presentation& p, std::span<const Word> subgroup_gens,
                        std::size_t limit, Strategy strategy) {
  const int ngens = p.generators.size();
  std::vector<Relator> rels, sub;
  for (const auto& r : p.relators) rels.push_back(to_columns(r, ngens, "relator"));
  for (const auto& h : subgroup_gens) sub.push_back(to_columns(h, ngens, "subgroup generator"));
  if (ngens == 0) return CosetTable(0, {}, EnumerationStatus::complete, 1, 1);
  return Enumerator(ngens, std::move(rels), std::move(sub), limit, strategy).run();
}

}  // namespace colimit

#include "colimit/finite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "colimit/errors.hpp"

namespace colimit {

namespace {

constexpr std::size_t kDenseLimit = 4096;

std::vector<int> closure_of(const FiniteGroup& g, std::span<const int> gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<int> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int x : gens) {
      int y = g.mul(out[i], x);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> greedy_generators(const FiniteGroup& g, const std::vector<int>& members) {
  std::vector<int> gens;
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  for (int m : members) {
    if (in[static_cast<std::size_t>(m)]) continue;
    gens.push_back(m);
    for (int x : closure_of(g, gens)) in[static_cast<std::size_t>(x)] = 1;
  }
  return gens;
}

void require_same_parent(const FinSubgroup& h, const FinSubgroup& k) {
  if (!h.parent() || h.parent() != k.parent()) throw InputError("subgroups of different groups");
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(const CosetTable& table, Alphabet generators)
    : order_(table.index()), alphabet_(std::move(generators)) {
  if (!table.complete()) throw InputError("finite group from an incomplete coset table");
  if (order_ > kMaxFiniteOrder) {
    throw BudgetError("group order " + std::to_string(order_) + " exceeds the finite-engine cap of " +
                      std::to_string(kMaxFiniteOrder));
  }
  columns_ = table.columns();
  cosets_.resize(order_ * static_cast<std::size_t>(columns_));
  for (std::size_t c = 0; c < order_; ++c) {
    for (int x = 0; x < columns_; ++x) cosets_[c * static_cast<std::size_t>(columns_) + static_cast<std::size_t>(x)] = table.at(c, x);
  }
  // BFS tree from the identity coset.
  parent_.assign(order_, -1);
  via_.assign(order_, -1);
  std::vector<int> bfs{0};
  std::vector<char> seen(order_, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    int c = bfs[i];
    for (int x = 0; x < columns_; ++x) {
      int d = cosets_[static_cast<std::size_t>(c) * static_cast<std::size_t>(columns_) + static_cast<std::size_t>(x)];
      if (seen[static_cast<std::size_t>(d)]) continue;
      seen[static_cast<std::size_t>(d)] = 1;
      parent_[static_cast<std::size_t>(d)] = c;
      via_[static_cast<std::size_t>(d)] = x;
      bfs.push_back(d);
    }
  }
  for (int i = 0; i < table.ngens(); ++i) gens_.push_back(table.at(0, 2 * i));
  if (order_ <= kDenseLimit) {
    // Row a of the table follows the tree: a*b = (a*parent(b)) * letter.
    table_.assign(order_ * order_, 0);
    for (std::size_t a = 0; a < order_; ++a) {
      int* row = &table_[a * order_];
      row[0] = static_cast<int>(a);
      for (std::size_t i = 1; i < bfs.size(); ++i) {
        auto b = static_cast<std::size_t>(bfs[i]);
        int p = row[parent_[b]];
        row[b] = cosets_[static_cast<std::size_t>(p) * static_cast<std::size_t>(columns_) + static_cast<std::size_t>(via_[b])];
      }
    }
  }
  build_inverses();
}

FiniteGroup::FiniteGroup(std::size_t order, std::vector<int> mul_table, std::vector<int> gen_images,
                         Alphabet generators)
    : order_(order), table_(std::move(mul_table)), gens_(std::move(gen_images)), alphabet_(std::move(generators)) {
  if (order_ == 0 || table_.size() != order_ * order_) throw InputError("malformed multiplication table");
  if (order_ > kMaxFiniteOrder) throw BudgetError("group order exceeds the finite-engine cap");
  std::vector<char> hit(order_);
  for (std::size_t r = 0; r < order_; ++r) {
    std::fill(hit.begin(), hit.end(), 0);
    for (std::size_t c = 0; c < order_; ++c) {
      int x = table_[r * order_ + c];
      if (x < 0 || static_cast<std::size_t>(x) >= order_ || hit[static_cast<std::size_t>(x)]) {
        throw InputError("multiplication table is not a Latin square");
      }
      hit[static_cast<std::size_t>(x)] = 1;
    }
  }
  for (std::size_t a = 0; a < order_; ++a) {
    if (table_[a] != static_cast<int>(a) || table_[a * order_] != static_cast<int>(a)) {
      throw InputError("element 0 of a multiplication table must be the identity");
    }
  }
  build_inverses();
  if (gens_.empty() && order_ > 1) {
    std::vector<int> all(order_);
    for (std::size_t i = 0; i < order_; ++i) all[i] = static_cast<int>(i);
    gens_ = greedy_generators(*this, all);
  }
  if (alphabet_.size() == 0) alphabet_ = Alphabet::indexed("g", static_cast<int>(gens_.size()));
  if (alphabet_.size() != static_cast<int>(gens_.size())) throw InputError("generator names do not match images");
  if (closure_of(*this, gens_).size() != order_) throw InputError("generator images do not generate the group");
  // Tree for word_of, by BFS over the generators and their inverses.
  parent_.assign(order_, -1);
  via_.assign(order_, -1);
  std::vector<int> bfs{0};
  std::vector<char> seen(order_, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    for (std::size_t x = 0; x < 2 * gens_.size(); ++x) {
      int g = x % 2 ? inv(gens_[x / 2]) : gens_[x / 2];
      int d = mul(bfs[i], g);
      if (seen[static_cast<std::size_t>(d)]) continue;
      seen[static_cast<std::size_t>(d)] = 1;
      parent_[static_cast<std::size_t>(d)] = bfs[i];
      via_[static_cast<std::size_t>(d)] = static_cast<int>(x);
      bfs.push_back(d);
    }
  }
}

void FiniteGroup::build_inverses() {
  inv_.assign(order_, -1);
  if (!table_.empty()) {
    for (std::size_t a = 0; a < order_; ++a) {
      for (std::size_t b = 0; b < order_; ++b) {
        if (table_[a * order_ + b] == 0) {
          inv_[a] = static_cast<int>(b);
          break;
        }
      }
      if (inv_[a] < 0) throw InputError("multiplication table without inverses");
    }
    return;
  }
  for (std::size_t a = 0; a < order_; ++a) {
    // Walk the inverse of the tree word of a from the identity.
    int c = 0;
    for (int x = static_cast<int>(a); x != 0; x = parent_[static_cast<std::size_t>(x)]) {
      c = cosets_[static_cast<std::size_t>(c) * static_cast<std::size_t>(columns_) + static_cast<std::size_t>(via_[static_cast<std::size_t>(x)] ^ 1)];
    }
    inv_[a] = c;
  }
}

int FiniteGroup::mul(int a, int b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + static_cast<std::size_t>(b)];
  int path[64];
  std::vector<int> longpath;
  int len = 0;
  for (int x = b; x != 0; x = parent_[static_cast<std::size_t>(x)]) {
    if (len < 64) {
      path[len++] = via_[static_cast<std::size_t>(x)];
    } else {
      longpath.push_back(via_[static_cast<std::size_t>(x)]);
    }
  }
  int c = a;
  for (auto it = longpath.rbegin(); it != longpath.rend(); ++it) {
    c = cosets_[static_cast<std::size_t>(c) * static_cast<std::size_t>(columns_) + static_cast<std::size_t>(*it)];
  }
  for (int i = len - 1; i >= 0; --i) {
    c = cosets_[static_cast<std::size_t>(c) * static_cast<std::size_t>(columns_) + static_cast<std::size_t>(path[i])];
  }
  return c;
}

int FiniteGroup::power(int a, long long e) const {
  if (e < 0) return power(inv(a), -e);
  int r = 0, base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

int FiniteGroup::evaluate(const Word& w) const {
  int r = 0;
  for (const auto& s : w.syllables()) {
    if (s.letter < 0 || s.letter >= static_cast<int>(gens_.size())) throw InputError("word uses an unknown generator");
    long long e = s.exponent % static_cast<long long>(element_order(gens_[static_cast<std::size_t>(s.letter)]));
    r = mul(r, power(gens_[static_cast<std::size_t>(s.letter)], e));
  }
  return r;
}

Word FiniteGroup::word_of(int a) const {
  std::vector<Syllable> s;
  for (int x = a; x != 0; x = parent_[static_cast<std::size_t>(x)]) {
    int col = via_[static_cast<std::size_t>(x)];
    s.push_back({col / 2, col % 2 ? -1 : 1});
  }
  std::reverse(s.begin(), s.end());
  return Word(std::span<const Syllable>(s));
}

void FiniteGroup::verify(std::size_t samples, unsigned seed) const {
  for (std::size_t a = 0; a < order_; ++a) {
    int x = static_cast<int>(a);
    if (mul(0, x) != x || mul(x, 0) != x) throw std::logic_error("identity law fails");
    if (mul(x, inv(x)) != 0 || mul(inv(x), x) != 0) throw std::logic_error("inverse law fails");
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(order_) - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    int a = pick(rng), b = pick(rng), c = pick(rng);
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::logic_error("associativity fails");
  }
}

FiniteGroupPtr realize(const Presentation& p, std::size_t limit, Strategy strategy) {
  CosetTable t = todd_coxeter(p, {}, limit, strategy);
  if (!t.complete()) {
    throw BudgetError("coset enumeration exceeded the limit of " + std::to_string(limit) + " cosets");
  }
  return std::make_shared<const FiniteGroup>(t, p.generators);
}

// ---------------------------------------------------------------------------
// Subgroups

FinSubgroup::FinSubgroup(FiniteGroupPtr parent, std::vector<int> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  if (!parent_) throw InputError("subgroup without a parent group");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty() || members_[0] != 0) throw InputError("subgroup must contain the identity");
  for (int a : members_) {
    if (a < 0 || static_cast<std::size_t>(a) >= parent_->order()) throw InputError("subgroup element out of range");
  }
  gens_ = greedy_generators(*parent_, members_);
  if (closure_of(*parent_, gens_) != members_) throw InputError("element set is not a subgroup");
}

bool FinSubgroup::contains(int a) const { return std::binary_search(members_.begin(), members_.end(), a); }

FinSubgroup trivial_subgroup(const FiniteGroupPtr& g) { return FinSubgroup(g, {0}); }

FinSubgroup whole_group(const FiniteGroupPtr& g) {
  std::vector<int> all(g->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return FinSubgroup(g, std::move(all));
}

FinSubgroup generated_subgroup(const FiniteGroupPtr& g, std::span<const int> gens) {
  return FinSubgroup(g, closure_of(*g, gens));
}

namespace {

// Normal closure of seeds under conjugation by the elements of `by`.
std::vector<int> normal_closure_under(const FiniteGroup& g, std::vector<int> gens, std::span<const int> by) {
  std::vector<int> members = closure_of(g, gens);
  for (;;) {
    bool grew = false;
    for (std::size_t i = 0; i < gens.size() && !grew; ++i) {
      for (int x : by) {
        int c = g.conjugate(gens[i], x);
        if (!std::binary_search(members.begin(), members.end(), c)) {
          gens.push_back(c);
          members = closure_of(g, gens);
          grew = true;
          break;
        }
      }
    }
    if (!grew) return members;
  }
}

}  // namespace

FinSubgroup normal_closure(const FiniteGroupPtr& g, std::span<const int> seeds) {
  std::vector<int> gens;
  for (int s : seeds) {
    if (s < 0 || static_cast<std::size_t>(s) >= g->order()) throw InputError("seed element out of range");
    if (s != 0) gens.push_back(s);
  }
  return FinSubgroup(g, normal_closure_under(*g, gens, g->generating_set()));
}

FinSubgroup intersect(const FinSubgroup& h, const FinSubgroup& k) {
  require_same_parent(h, k);
  std::vector<int> out;
  std::set_intersection(h.members().begin(), h.members().end(), k.members().begin(), k.members().end(),
                        std::back_inserter(out));
  return FinSubgroup(h.parent(), std::move(out));
}

FinSubgroup product(const FinSubgroup& h, const FinSubgroup& k) {
  require_same_parent(h, k);
  if (!is_normal(h) && !is_normal(k)) throw HypothesisError("product HK requires a normal factor");
  std::vector<char> seen(h.parent()->order(), 0);
  std::vector<int> out;
  for (int a : h.members()) {
    for (int b : k.members()) {
      int c = h.parent()->mul(a, b);
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = 1;
        out.push_back(c);
      }
    }
  }
  return FinSubgroup(h.parent(), std::move(out));
}

FinSubgroup commutator_subgroup(const FinSubgroup& h, const FinSubgroup& k) {
  require_same_parent(h, k);
  const FiniteGroup& g = *h.parent();
  auto hg = h.generators(), kg = k.generators();
  std::vector<int> seeds;
  for (int a : hg) {
    for (int b : kg) {
      int c = g.commutator(a, b);
      if (c != 0) seeds.push_back(c);
    }
  }
  std::vector<int> by = hg;
  by.insert(by.end(), kg.begin(), kg.end());
  return FinSubgroup(h.parent(), normal_closure_under(g, seeds, by));
}

FinSubgroup center(const FiniteGroupPtr& g) {
  std::vector<int> out;
  for (std::size_t a = 0; a < g->order(); ++a) {
    bool central = true;
    for (int x : g->generating_set()) central = central && g->mul(static_cast<int>(a), x) == g->mul(x, static_cast<int>(a));
    if (central) out.push_back(static_cast<int>(a));
  }
  return FinSubgroup(g, std::move(out));
}

bool is_subset(const FinSubgroup& h, const FinSubgroup& k) {
  require_same_parent(h, k);
  return std::includes(k.members().begin(), k.members().end(), h.members().begin(), h.members().end());
}

bool is_normalized_by(const FinSubgroup& h, const FinSubgroup& k) {
  require_same_parent(h, k);
  auto hg = h.generators();
  for (int x : k.generators()) {
    for (int a : hg) {
      if (!h.contains(h.parent()->conjugate(a, x))) return false;
    }
  }
  return true;
}

bool is_normal(const FinSubgroup& h) {
  const FiniteGroup& g = *h.parent();
  auto hg = h.generators();
  for (int x : g.generating_set()) {
    for (int a : hg) {
      if (!h.contains(g.conjugate(a, x))) return false;
    }
  }
  return true;
}

AbelianInvariants abelian_invariants_of_quotient(const FinSubgroup& a, const FinSubgroup& b) {
  require_same_parent(a, b);
  const FiniteGroup& g = *a.parent();
  if (!is_subset(b, a)) throw HypothesisError("quotient A/B requires B to be contained in A");
  if (!is_normalized_by(b, a)) throw HypothesisError("quotient A/B requires B normal in A");
  auto gens = a.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!b.contains(g.commutator(gens[i], gens[j]))) throw HypothesisError("quotient A/B is not abelian");
    }
  }
  // Label cosets of B, then read relations off a spanning tree of the
  // Cayley graph of A/B: every non-tree edge gives one lattice vector.
  const std::size_t k = gens.size();
  std::vector<int> label(g.order(), -1);
  std::vector<int> reps;
  auto label_coset = [&](int x) {
    int id = static_cast<int>(reps.size());
    for (int y : b.members()) label[static_cast<std::size_t>(g.mul(x, y))] = id;
    reps.push_back(x);
    return id;
  };
  label_coset(0);
  std::vector<IntVector> vec{IntVector(k, 0)};
  EchelonLattice rel(k);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      int y = g.mul(reps[i], gens[j]);
      IntVector v = vec[i];
      v[j] += 1;
      int l = label[static_cast<std::size_t>(y)];
      if (l < 0) {
        label_coset(y);
        vec.push_back(std::move(v));
      } else {
        for (std::size_t c = 0; c < k; ++c) v[c] -= vec[static_cast<std::size_t>(l)][c];
        rel.add(std::move(v));
      }
    }
  }
  return abelian_invariants(rel.rows(), k);
}

std::vector<FinSubgroup> normal_subgroups(const FiniteGroupPtr& g) {
  std::set<std::vector<int>> found;
  std::vector<FinSubgroup> list;
  auto add = [&](FinSubgroup s) {
    if (found.insert(s.members()).second) list.push_back(std::move(s));
  };
  std::vector<char> done(g->order(), 0);
  for (std::size_t a = 0; a < g->order(); ++a) {
    if (done[a]) continue;
    int seed = static_cast<int>(a);
    FinSubgroup n = normal_closure(g, std::span<const int>(&seed, 1));
    for (std::size_t x = 0; x < g->order(); ++x) done[static_cast<std::size_t>(g->conjugate(seed, static_cast<int>(x)))] = 1;
    add(std::move(n));
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      add(product(list[i], list[j]));
    }
  }
  std::sort(list.begin(), list.end(), [](const FinSubgroup& x, const FinSubgroup& y) {
    if (x.order() != y.order()) return x.order() < y.order();
    return x.members() < y.members();
  });
  return list;
}

FiniteGroupPtr quotient(const FinSubgroup& n) {
  if (!is_normal(n)) throw HypothesisError("quotient by a non-normal subgroup");
  const FiniteGroup& g = *n.parent();
  std::vector<int> label(g.order(), -1);
  std::vector<int> reps;
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (label[a] >= 0) continue;
    for (int y : n.members()) label[static_cast<std::size_t>(g.mul(static_cast<int>(a), y))] = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(a));
  }
  const std::size_t q = reps.size();
  std::vector<int> table(q * q);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) table[i * q + j] = label[static_cast<std::size_t>(g.mul(reps[i], reps[j]))];
  }
  std::vector<int> gens;
  for (int x : g.gen_images()) gens.push_back(label[static_cast<std::size_t>(x)]);
  if (q == 1) gens.clear();
  Alphabet names = q == 1 ? Alphabet() : g.alphabet();
  if (gens.empty() && q > 1) names = Alphabet();
  return std::make_shared<const FiniteGroup>(q, std::move(table), std::move(gens), std::move(names));
}

bool is_abelian(const FiniteGroupPtr& g) {
  const auto& gens = g->generating_set();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (g->mul(gens[i], gens[j]) != g->mul(gens[j], gens[i])) return false;
    }
  }
  return true;
}

}  // namespace colimit

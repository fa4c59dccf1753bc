#include "colimit/pc.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>

#include "colimit/errors.hpp"
#include "colimit/magnus.hpp"

namespace colimit {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// g = gcd(a, b) > 0 with s*a + t*b = g.
void ext_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}

// C(m, i) for integer m.
Integer binomial(const Integer& m, int i) {
  Integer r = 1;
  for (int k = 0; k < i; ++k) {
    r *= (m - k);
    r /= (k + 1);
  }
  return r;
}

// Evaluates at m the vector polynomial taking values vals[0..D] at 0..D.
PcElement newton_eval(std::vector<PcElement> vals, const Integer& m) {
  const std::size_t d = vals.size();
  // Forward differences in place: vals[i] becomes Delta^i at 0.
  for (std::size_t level = 1; level < d; ++level) {
    for (std::size_t i = d - 1; i >= level; --i) {
      for (std::size_t c = 0; c < vals[i].size(); ++c) vals[i][c] -= vals[i - 1][c];
    }
  }
  PcElement out(vals[0].size(), 0);
  for (std::size_t i = 0; i < d; ++i) {
    Integer b = binomial(m, static_cast<int>(i));
    if (b == 0) continue;
    for (std::size_t c = 0; c < out.size(); ++c) {
      if (vals[i][c] != 0) out[c] += b * vals[i][c];
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// PcGroup

PcGroup::PcGroup(int rank, int cls) : basis_(rank, cls) {
  for (int i = 0; i < basis_.size(); ++i) weight_.push_back(basis_[i].weight);
}

std::shared_ptr<const PcGroup> PcGroup::free_nilpotent(int rank, int cls, std::size_t budget) {
  if (rank < 1 || cls < 1) throw InputError("free nilpotent group needs rank >= 1 and class >= 1");
  std::uint64_t need = basis_size(rank, cls);
  if (need > budget) {
    throw BudgetError("free nilpotent group of rank " + std::to_string(rank) + " and class " +
                      std::to_string(cls) + " needs " + std::to_string(need) +
                      " basic commutators; the budget is " + std::to_string(budget));
  }
  auto g = std::make_shared<PcGroup>(rank, cls);
  const int n = g->size();
  MagnusCoordinates mc(g->basis_);
  const auto& alg = mc.algebra();
  std::vector<MagnusAlgebra::Series> inv(static_cast<std::size_t>(n));
  for (int s = 0; s < 2; ++s) g->conj_[s].resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    if (2 * g->weight(k) > cls) break;
    const auto& mk = mc.image(k);
    auto mk_inv = alg.inverse(mk);
    for (int j = k + 1; j < n; ++j) {
      if (g->commutes(k, j)) continue;
      const auto& mj = mc.image(j);
      g->conj_[0][static_cast<std::size_t>(k)].push_back(mc.coordinates(alg.mul(alg.mul(mk_inv, mj), mk)));
      g->conj_[1][static_cast<std::size_t>(k)].push_back(mc.coordinates(alg.mul(alg.mul(mk, mj), mk_inv)));
    }
  }
  return g;
}

PcElement PcGroup::generator(int i, const Integer& e) const {
  PcElement x = identity();
  x.at(static_cast<std::size_t>(i)) = e;
  return x;
}

bool PcGroup::is_identity(const PcElement& x) {
  return std::all_of(x.begin(), x.end(), [](const Integer& v) { return v == 0; });
}

int PcGroup::depth(const PcElement& x) const {
  for (int i = 0; i < size(); ++i) {
    if (x[static_cast<std::size_t>(i)] != 0) return i;
  }
  return size();
}

int PcGroup::min_weight(const PcElement& x) const {
  int d = depth(x);
  return d == size() ? cls() + 1 : weight(d);
}

PcElement PcGroup::apply_conj(int k, int sign, const PcElement& t) const {
  PcElement r = identity();
  const auto& table = conj_[sign][static_cast<std::size_t>(k)];
  for (int j = k + 1; j < size(); ++j) {
    const Integer& e = t[static_cast<std::size_t>(j)];
    if (e == 0) continue;
    if (commutes(k, j)) {
      mul_gen(r, j, e);
    } else {
      // Non-commuting partners of k are the indices k+1 .. k+table.size().
      const PcElement& base = table[static_cast<std::size_t>(j - k - 1)];
      if (e > kConjCacheSpan || e < -kConjCacheSpan) {
        r = mul(r, power(base, e));
      } else {
        r = mul(r, conj_power(k, sign, j, e, base));
      }
    }
  }
  return r;
}

const PcElement& PcGroup::conj_power(int k, int sign, int j, const Integer& e, const PcElement& base) const {
  if (e == 1) return base;
  const auto slot = (static_cast<std::size_t>(sign) * static_cast<std::size_t>(size()) + static_cast<std::size_t>(k)) *
                        static_cast<std::size_t>(size()) +
                    static_cast<std::size_t>(j);
  const auto key = std::make_pair(slot, static_cast<int>(e));
  {
    std::shared_lock lock(cache_mutex_);
    auto it = conj_cache_.find(key);
    if (it != conj_cache_.end()) return it->second;
  }
  PcElement v = power(base, e);
  std::unique_lock lock(cache_mutex_);
  return conj_cache_.try_emplace(key, std::move(v)).first->second;
}

PcElement PcGroup::conj_tail(int k, const Integer& f, PcElement t) const {
  // Split off the central (top-weight) part, which is unaffected.
  const int top = basis_.weight_begin(cls());
  PcElement z = identity();
  for (int j = std::max(top, k + 1); j < size(); ++j) std::swap(z[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(j)]);
  if (!is_identity(t)) {
    const int sign = f > 0 ? 0 : 1;
    const Integer m = f > 0 ? f : Integer(-f);
    if (m <= cls() + 1) {
      for (Integer i = 0; i < m; ++i) t = apply_conj(k, sign, t);
    } else {
      // Coordinates of the iterated conjugate are polynomial in the exponent.
      std::vector<PcElement> vals{t};
      for (int i = 1; i <= cls(); ++i) vals.push_back(apply_conj(k, sign, vals.back()));
      t = newton_eval(std::move(vals), m);
    }
  }
  for (int j = std::max(top, k + 1); j < size(); ++j) t[static_cast<std::size_t>(j)] += z[static_cast<std::size_t>(j)];
  return t;
}

void PcGroup::mul_gen(PcElement& x, int k, const Integer& f) const {
  if (f == 0) return;
  bool need = false;
  for (int j = k + 1; j < size() && !need; ++j) {
    need = x[static_cast<std::size_t>(j)] != 0 && !commutes(k, j);
  }
  if (!need) {
    x[static_cast<std::size_t>(k)] += f;
    return;
  }
  PcElement t = identity();
  for (int j = k + 1; j < size(); ++j) std::swap(t[static_cast<std::size_t>(j)], x[static_cast<std::size_t>(j)]);
  x[static_cast<std::size_t>(k)] += f;
  PcElement img = conj_tail(k, f, std::move(t));
  for (int j = k + 1; j < size(); ++j) x[static_cast<std::size_t>(j)] = std::move(img[static_cast<std::size_t>(j)]);
}

PcElement PcGroup::collect(const Word& w) const {
  PcElement r = identity();
  for (const auto& s : w.syllables()) {
    if (s.letter >= rank()) throw InputError("word letter outside the generators of the nilpotent group");
    mul_gen(r, s.letter, Integer(s.exponent));
  }
  return r;
}

PcElement PcGroup::mul(const PcElement& x, const PcElement& y) const {
  if (min_weight(x) + min_weight(y) > cls()) {
    PcElement r = x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
    return r;
  }
  PcElement r = x;
  for (int k = 0; k < size(); ++k) {
    const Integer& e = y[static_cast<std::size_t>(k)];
    if (e != 0) mul_gen(r, k, e);
  }
  return r;
}

PcElement PcGroup::inverse(const PcElement& x) const {
  int w = min_weight(x);
  if (w > cls()) return identity();
  if (2 * w > cls()) {
    PcElement r = x;
    for (auto& v : r) v = -v;
    return r;
  }
  PcElement y = identity();
  for (int i = basis_.weight_begin(w); i < basis_.weight_begin(w + 1); ++i) {
    y[static_cast<std::size_t>(i)] = -x[static_cast<std::size_t>(i)];
  }
  PcElement z = mul(x, y);
  return mul(y, inverse(z));
}

PcElement PcGroup::power(const PcElement& x, const Integer& e) const {
  if (e == 0 || is_identity(x)) return identity();
  if (e < 0) return power(inverse(x), -e);
  int w = min_weight(x);
  int nonzero = 0;
  for (const auto& v : x) nonzero += v != 0;
  if (2 * w > cls() || nonzero == 1) {
    PcElement r = x;
    for (auto& v : r) v *= e;
    return r;
  }
  if (e <= cls() + 1) {
    PcElement r = x;
    for (Integer i = 1; i < e; ++i) r = mul(r, x);
    return r;
  }
  std::vector<PcElement> vals{identity(), x};
  for (int i = 2; i <= cls(); ++i) vals.push_back(mul(vals.back(), x));
  return newton_eval(std::move(vals), e);
}

PcElement PcGroup::commutator(const PcElement& x, const PcElement& y) const {
  if (min_weight(x) + min_weight(y) > cls()) return identity();
  return mul(mul(x, y), inverse(mul(y, x)));
}

PcElement PcGroup::conjugate(const PcElement& x, const PcElement& g) const {
  return mul(mul(g, x), inverse(g));
}

PcElement PcGroup::commutator_table(int j, int i) const {
  return commutator(generator(j), generator(i));
}

std::string PcGroup::render(const PcElement& x, const Alphabet& alphabet) const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    const Integer& e = x[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += basis_.render(i, alphabet);
    if (e != 1) out += '^' + to_string(e);
  }
  return out.empty() ? "1" : out;
}

PcElement PcGroup::truncate(const PcElement& x, const PcGroup& lower) const {
  if (lower.rank() != rank() || lower.cls() > cls()) {
    throw InputError("projection needs a quotient of the same rank and lower class");
  }
  return PcElement(x.begin(), x.begin() + lower.size());
}

// ---------------------------------------------------------------------------
// Induced generating sequences

namespace {

struct GroupOps {
  const PcGroup& g;
  std::size_t length() const { return static_cast<std::size_t>(g.size()); }
  PcElement mul(const PcElement& a, const PcElement& b) const { return g.mul(a, b); }
  PcElement inverse(const PcElement& a) const { return g.inverse(a); }
  PcElement power(const PcElement& a, const Integer& e) const { return g.power(a, e); }
  PcElement commutator(const PcElement& a, const PcElement& b) const { return g.commutator(a, b); }
};

// G x G with the first factor preceding the second in the pc sequence.
struct ProductOps {
  const PcGroup& g;
  std::size_t length() const { return 2 * static_cast<std::size_t>(g.size()); }
  std::pair<PcElement, PcElement> split(const PcElement& a) const {
    auto n = static_cast<long>(g.size());
    return {PcElement(a.begin(), a.begin() + n), PcElement(a.begin() + n, a.end())};
  }
  static PcElement join(PcElement a, const PcElement& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  PcElement mul(const PcElement& a, const PcElement& b) const {
    auto [a1, a2] = split(a);
    auto [b1, b2] = split(b);
    return join(g.mul(a1, b1), g.mul(a2, b2));
  }
  PcElement inverse(const PcElement& a) const {
    auto [a1, a2] = split(a);
    return join(g.inverse(a1), g.inverse(a2));
  }
  PcElement power(const PcElement& a, const Integer& e) const {
    auto [a1, a2] = split(a);
    return join(g.power(a1, e), g.power(a2, e));
  }
  PcElement commutator(const PcElement& a, const PcElement& b) const {
    auto [a1, a2] = split(a);
    auto [b1, b2] = split(b);
    return join(g.commutator(a1, b1), g.commutator(a2, b2));
  }
};

std::size_t depth_of(const PcElement& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) return i;
  }
  return x.size();
}

template <class Ops>
class IgsBuilder {
 public:
  IgsBuilder(const Ops& ops, std::vector<PcElement> conjugators)
      : ops_(ops), conj_(std::move(conjugators)), slot_(ops.length()) {}

  void add(PcElement x) {
    queue_.push_back(std::move(x));
    while (!queue_.empty()) {
      PcElement y = std::move(queue_.front());
      queue_.pop_front();
      insert(std::move(y));
    }
  }

  std::vector<PcElement> rows() const {
    std::vector<PcElement> out;
    for (const auto& s : slot_) {
      if (s) out.push_back(*s);
    }
    return out;
  }

 private:
  void insert(PcElement x) {
    for (;;) {
      std::size_t d = depth_of(x);
      if (d == x.size()) return;
      if (!slot_[d]) {
        if (x[d] < 0) x = ops_.inverse(x);
        place(d, std::move(x));
        return;
      }
      const PcElement& r = *slot_[d];
      const Integer p = r[d];
      const Integer e = x[d];
      if (e % p == 0) {
        x = ops_.mul(ops_.power(r, -(e / p)), x);
        continue;
      }
      Integer g, s, t;
      ext_gcd(p, e, g, s, t);
      PcElement merged = ops_.mul(ops_.power(r, s), ops_.power(x, t));
      queue_.push_back(r);
      queue_.push_back(std::move(x));
      place(d, std::move(merged));
      return;
    }
  }

  // Keeps the rows Hermite reduced; without this, entries in the product
  // group grow to tens of thousands of digits before they cancel.
  void place(std::size_t d, PcElement x) {
    reduce(x, d + 1);
    slot_[d] = std::move(x);
    const PcElement& row = *slot_[d];
    for (std::size_t i = 0; i < d; ++i) {
      if (!slot_[i] || (*slot_[i])[d] == 0) continue;
      Integer q = floor_div((*slot_[i])[d], row[d]);
      if (q != 0) {
        PcElement y = ops_.mul(*slot_[i], ops_.power(row, -q));
        reduce(y, d + 1);
        slot_[i] = std::move(y);
      }
    }
    on_new(d);
  }

  void reduce(PcElement& x, std::size_t from) const {
    for (std::size_t j = from; j < slot_.size(); ++j) {
      if (!slot_[j] || x[j] == 0) continue;
      Integer q = floor_div(x[j], (*slot_[j])[j]);
      if (q != 0) x = ops_.mul(x, ops_.power(*slot_[j], -q));
    }
  }

  void on_new(std::size_t d) {
    const PcElement& x = *slot_[d];
    for (std::size_t j = 0; j < slot_.size(); ++j) {
      if (j == d || !slot_[j]) continue;
      queue_.push_back(ops_.commutator(x, *slot_[j]));
    }
    for (const auto& c : conj_) queue_.push_back(ops_.commutator(x, c));
  }

  const Ops& ops_;
  std::vector<PcElement> conj_;
  std::vector<std::optional<PcElement>> slot_;
  std::deque<PcElement> queue_;
};

template <class Ops>
void hermite_reduce(const Ops& ops, std::vector<PcElement>& rows) {
  std::vector<std::size_t> piv;
  for (const auto& r : rows) piv.push_back(depth_of(r));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      Integer q = floor_div(rows[i][piv[j]], rows[j][piv[j]]);
      if (q != 0) rows[i] = ops.mul(rows[i], ops.power(rows[j], -q));
    }
  }
}

void require_same_parent(const PcSubgroup& h, const PcSubgroup& k) {
  if (!h.parent() || h.parent() != k.parent()) throw InputError("subgroups of different pc groups");
}

std::vector<PcElement> generators_of(const PcGroup& g) {
  std::vector<PcElement> out;
  for (int i = 0; i < g.rank(); ++i) out.push_back(g.generator(i));
  return out;
}

}  // namespace

PcSubgroup::PcSubgroup(PcGroupPtr parent, std::vector<PcElement> igs_rows)
    : parent_(std::move(parent)), rows_(std::move(igs_rows)) {
  if (!parent_) throw InputError("pc subgroup without a parent group");
  std::sort(rows_.begin(), rows_.end(),
            [](const PcElement& a, const PcElement& b) { return depth_of(a) < depth_of(b); });
  hermite_reduce(GroupOps{*parent_}, rows_);
  slot_.assign(static_cast<std::size_t>(parent_->size()), -1);
  for (std::size_t i = 0; i < rows_.size(); ++i) slot_[depth_of(rows_[i])] = static_cast<int>(i);
}

std::vector<int> PcSubgroup::depths() const {
  std::vector<int> out;
  for (const auto& r : rows_) out.push_back(static_cast<int>(depth_of(r)));
  return out;
}

std::optional<IntVector> PcSubgroup::coordinates(const PcElement& x) const {
  const PcGroup& g = *parent_;
  IntVector q(rows_.size(), 0);
  PcElement y = x;
  for (;;) {
    std::size_t d = depth_of(y);
    if (d == y.size()) return q;
    int i = slot_[d];
    if (i < 0) return std::nullopt;
    const PcElement& r = rows_[static_cast<std::size_t>(i)];
    if (y[d] % r[d] != 0) return std::nullopt;
    Integer e = y[d] / r[d];
    q[static_cast<std::size_t>(i)] = e;
    y = g.mul(g.power(r, -e), y);
  }
}

bool PcSubgroup::contains(const PcElement& x) const { return coordinates(x).has_value(); }

void PcSubgroup::write_csv(std::ostream& out) const {
  out << "depth";
  for (int i = 0; i < parent_->size(); ++i) out << ",b" << i;
  out << '\n';
  for (const auto& r : rows_) {
    out << depth_of(r);
    for (const auto& v : r) out << ',' << v;
    out << '\n';
  }
}

PcSubgroup trivial_subgroup(const PcGroupPtr& g) { return PcSubgroup(g, {}); }

PcSubgroup whole_group(const PcGroupPtr& g) {
  std::vector<PcElement> rows;
  for (int i = 0; i < g->size(); ++i) rows.push_back(g->generator(i));
  return PcSubgroup(g, std::move(rows));
}

PcSubgroup subgroup(const PcGroupPtr& g, std::span<const PcElement> gens) {
  GroupOps ops{*g};
  IgsBuilder<GroupOps> b(ops, {});
  for (const auto& x : gens) b.add(x);
  return PcSubgroup(g, b.rows());
}

PcSubgroup normal_closure_pc(const PcGroupPtr& g, std::span<const PcElement> gens) {
  GroupOps ops{*g};
  IgsBuilder<GroupOps> b(ops, generators_of(*g));
  for (const auto& x : gens) b.add(x);
  return PcSubgroup(g, b.rows());
}

PcSubgroup join(const PcSubgroup& h, const PcSubgroup& k) {
  require_same_parent(h, k);
  GroupOps ops{*h.parent()};
  IgsBuilder<GroupOps> b(ops, {});
  for (const auto& x : h.igs()) b.add(x);
  for (const auto& x : k.igs()) b.add(x);
  return PcSubgroup(h.parent(), b.rows());
}

bool is_subset(const PcSubgroup& h, const PcSubgroup& k) {
  require_same_parent(h, k);
  return std::all_of(h.igs().begin(), h.igs().end(), [&](const PcElement& x) { return k.contains(x); });
}

bool is_normal(const PcSubgroup& h) {
  const PcGroup& g = *h.parent();
  for (const auto& r : h.igs()) {
    for (int i = 0; i < g.rank(); ++i) {
      if (!h.contains(g.commutator(r, g.generator(i)))) return false;
    }
  }
  return true;
}

PcSubgroup intersect_pc(const PcSubgroup& h, const PcSubgroup& k) {
  require_same_parent(h, k);
  if (!is_normal(h) || !is_normal(k)) throw HypothesisError("intersect_pc requires normal subgroups");
  if (h.is_trivial() || k.is_trivial()) return trivial_subgroup(h.parent());
  if (is_subset(h, k)) return h;
  if (is_subset(k, h)) return k;
  const PcGroup& g = *h.parent();
  // In G x G the subgroup (H x 1)(diagonal of K) meets 1 x G in 1 x (H meet K).
  ProductOps ops{g};
  IgsBuilder<ProductOps> b(ops, {});
  const PcElement one = g.identity();
  for (const auto& x : h.igs()) b.add(ProductOps::join(x, one));
  for (const auto& x : k.igs()) b.add(ProductOps::join(x, x));
  std::vector<PcElement> rows;
  const auto n = static_cast<std::size_t>(g.size());
  for (const auto& r : b.rows()) {
    if (depth_of(r) >= n) rows.emplace_back(r.begin() + static_cast<long>(n), r.end());
  }
  return PcSubgroup(h.parent(), std::move(rows));
}

PcSubgroup commutator_subgroup_pc(const PcSubgroup& h, const PcSubgroup& k) {
  require_same_parent(h, k);
  if (!is_normal(h) || !is_normal(k)) throw HypothesisError("commutator_subgroup_pc requires normal subgroups");
  const PcGroup& g = *h.parent();
  std::vector<PcElement> gens;
  for (const auto& x : h.igs()) {
    for (const auto& y : k.igs()) {
      PcElement c = g.commutator(x, y);
      if (!PcGroup::is_identity(c)) gens.push_back(std::move(c));
    }
  }
  return normal_closure_pc(h.parent(), gens);
}

namespace {

IntMatrix quotient_relations(const PcSubgroup& a, const PcSubgroup& b) {
  require_same_parent(a, b);
  const PcGroup& g = *a.parent();
  const auto& rows = a.igs();
  const std::size_t m = rows.size();
  IntMatrix rel;
  for (const auto& x : b.igs()) {
    auto q = a.coordinates(x);
    if (!q) throw HypothesisError("quotient A/B requires B to be contained in A");
    rel.push_back(std::move(*q));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!b.contains(g.commutator(rows[i], rows[j]))) {
        throw HypothesisError("quotient A/B is not abelian");
      }
      // Abelianized pc relation rows[i]^-1 rows[j] rows[i] = w_ij.
      auto q = a.coordinates(g.conjugate(rows[j], g.inverse(rows[i])));
      if (!q) throw std::logic_error("igs is not closed under conjugation");
      (*q)[j] -= 1;
      rel.push_back(std::move(*q));
    }
  }
  return rel;
}

}  // namespace

AbelianInvariants central_quotient_invariants(const PcSubgroup& a, const PcSubgroup& b) {
  return abelian_invariants(quotient_relations(a, b), a.hirsch_length());
}

std::optional<Integer> order_modulo(const PcElement& x, const PcSubgroup& a, const PcSubgroup& b) {
  auto q = a.coordinates(x);
  if (!q) throw HypothesisError("element is not in the subgroup A");
  return order_in_quotient(*q, quotient_relations(a, b), a.hirsch_length());
}

PcSubgroup project(const PcSubgroup& h, const PcGroupPtr& lower) {
  std::vector<PcElement> rows;
  for (const auto& r : h.igs()) rows.push_back(h.parent()->truncate(r, *lower));
  return subgroup(lower, rows);
}

}  // namespace colimit

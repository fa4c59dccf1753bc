#include "colimit/tensor.hpp"

#include <bit>
#include <set>

#include "colimit/dsl.hpp"
#include "colimit/errors.hpp"

namespace colimit {

namespace {

std::string digits(unsigned set) {
  std::string s;
  for (int i = 0; i < 32; ++i) {
    if (set >> i & 1U) s += static_cast<char>('1' + i);
  }
  return s;
}

}  // namespace

int TensorPresentation::symbol_index(unsigned a_set, int a, int b) const {
  const unsigned full = (1U << arity()) - 1;
  unsigned b_set = full & ~a_set;
  int pa = pos_[a_set][static_cast<std::size_t>(a)];
  int pb = pos_[b_set][static_cast<std::size_t>(b)];
  if (a_set == 0 || b_set == 0 || pa < 0 || pb < 0) throw std::logic_error("symbol outside its range");
  return offset_[a_set] + pa * static_cast<int>(meets_[b_set].order()) + pb;
}

int TensorPresentation::boundary(int symbol) const {
  const auto& s = symbols_[static_cast<std::size_t>(symbol)];
  return ambient_->commutator(s.a, s.b);
}

int TensorPresentation::boundary(const Word& w) const {
  int r = 0;
  for (const auto& s : w.syllables()) r = ambient_->mul(r, ambient_->power(boundary(s.letter), s.exponent));
  return r;
}

int TensorPresentation::act(int g, int symbol) const {
  const auto& s = symbols_[static_cast<std::size_t>(symbol)];
  return symbol_index(s.a_set, ambient_->conjugate(s.a, g), ambient_->conjugate(s.b, g));
}

std::string TensorPresentation::to_dsl() const { return render_presentation(base_); }

TensorPresentation build_T(const std::vector<FinSubgroup>& subgroups, TensorBudget budget) {
  const std::size_t n = subgroups.size();
  if (n < 2 || n > 9) throw InputError("T(N_1,...,N_n) needs 2 <= n <= 9");
  TensorPresentation tp;
  tp.ambient_ = subgroups[0].parent();
  for (const auto& s : subgroups) {
    if (s.parent() != tp.ambient_) throw InputError("subgroups of different groups");
    if (!is_normal(s)) throw HypothesisError("T(N_1,...,N_n) needs normal subgroups");
  }
  tp.subgroups_ = subgroups;
  const FiniteGroup& g = *tp.ambient_;
  const unsigned full = (1U << n) - 1;
  tp.meets_.resize(full + 1);
  tp.pos_.assign(full + 1, {});
  for (unsigned set = 1; set <= full; ++set) {
    FinSubgroup m;
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(set >> i & 1U)) continue;
      m = first ? subgroups[i] : intersect(m, subgroups[i]);
      first = false;
    }
    tp.pos_[set].assign(g.order(), -1);
    for (std::size_t k = 0; k < m.order(); ++k) tp.pos_[set][static_cast<std::size_t>(m.members()[k])] = static_cast<int>(k);
    tp.meets_[set] = std::move(m);
  }
  tp.offset_.assign(full + 1, -1);
  std::size_t count = 0;
  for (unsigned a = 1; a < full; ++a) {
    tp.partitions_.push_back(a);
    tp.offset_[a] = static_cast<int>(count);
    count += tp.meets_[a].order() * tp.meets_[full & ~a].order();
  }
  if (count > budget.symbols) {
    throw BudgetError("tensor presentation needs " + std::to_string(count) + " symbols, over the budget of " +
                      std::to_string(budget.symbols));
  }
  std::vector<std::string> names;
  names.reserve(count);
  for (unsigned a_set : tp.partitions_) {
    unsigned b_set = full & ~a_set;
    for (int a : tp.meets_[a_set].members()) {
      for (int b : tp.meets_[b_set].members()) {
        tp.symbols_.push_back({a_set, b_set, a, b});
        names.push_back("t_" + digits(a_set) + "_" + digits(b_set) + "_" + std::to_string(a) + "_" + std::to_string(b));
      }
    }
  }
  tp.base_.generators = Alphabet(names);

  std::set<Word> seen;
  auto add = [&](int family, const Word& w) {
    ++tp.family_counts_[static_cast<std::size_t>(family)];
    Word c = cyclic_normal_form(w);
    if (c.is_identity() || !seen.insert(c).second) return;
    tp.base_.relators.push_back(std::move(c));
    if (tp.base_.relators.size() > budget.relators) {
      throw BudgetError("tensor presentation exceeds the relator budget of " + std::to_string(budget.relators));
    }
  };
  auto s = [&](unsigned a_set, int a, int b, int e = 1) { return Word::letter(tp.symbol_index(a_set, a, b), e); };

  // (i) a (x)_{A,B} b = (b (x)_{B,A} a)^-1
  for (const auto& t : tp.symbols_) add(0, s(t.a_set, t.a, t.b) * s(t.b_set, t.b, t.a));
  // (ii) aa' (x) b = (^a a' (x) ^a b)(a (x) b)
  for (unsigned a_set : tp.partitions_) {
    const auto& na = tp.meets_[a_set].members();
    const auto& nb = tp.meets_[full & ~a_set].members();
    for (int a : na) {
      for (int a2 : na) {
        for (int b : nb) {
          add(1, s(a_set, g.mul(a, a2), b, -1) * s(a_set, g.conjugate(a2, a), g.conjugate(b, a)) * s(a_set, a, b));
        }
      }
    }
  }
  // (iii) over ordered U, V, W partitioning the indices
  for (unsigned u_set = 1; u_set < full; ++u_set) {
    for (unsigned v_set = 1; v_set < full; ++v_set) {
      if (u_set & v_set) continue;
      unsigned w_set = full & ~(u_set | v_set);
      if (w_set == 0) continue;
      for (int u : tp.meets_[u_set].members()) {
        for (int v : tp.meets_[v_set].members()) {
          for (int w : tp.meets_[w_set].members()) {
            Word r = s(u_set | v_set, g.conjugate(g.commutator(g.inv(u), v), u), g.conjugate(w, u)) *
                     s(w_set | u_set, g.conjugate(g.commutator(g.inv(w), u), w), g.conjugate(v, w)) *
                     s(v_set | w_set, g.conjugate(g.commutator(g.inv(v), w), v), g.conjugate(u, v));
            add(2, r);
          }
        }
      }
    }
  }
  // (iv) (a (x) b)(a' (x) b')(a (x) b)^-1 = ^k a' (x) ^k b' with k = [a,b]
  const std::size_t nsym = tp.symbols_.size();
  if (nsym * nsym > budget.relators * 4) {
    throw BudgetError("tensor presentation would need " + std::to_string(nsym * nsym) +
                      " conjugation relators, over the relator budget");
  }
  for (std::size_t i = 0; i < nsym; ++i) {
    const auto& t = tp.symbols_[i];
    int k = g.commutator(t.a, t.b);
    Word x = Word::letter(static_cast<int>(i));
    Word xi = Word::letter(static_cast<int>(i), -1);
    for (std::size_t j = 0; j < nsym; ++j) {
      Word y = Word::letter(static_cast<int>(j));
      add(3, x * y * xi * Word::letter(tp.act(k, static_cast<int>(j)), -1));
    }
  }
  return tp;
}

TensorPresentation build_E(const FinSubgroup& m, const FinSubgroup& n, TensorBudget budget) {
  if (m.parent() != n.parent()) throw InputError("subgroups of different groups");
  TensorPresentation tp = build_T({whole_group(m.parent()), m, n}, budget);
  std::set<Word> seen(tp.base_.relators.begin(), tp.base_.relators.end());
  FinSubgroup mn = intersect(m, n);
  for (unsigned a_set : tp.partitions_) {
    for (int x : mn.members()) {
      if (x == 0) continue;
      ++tp.family_counts_[4];
      Word c = cyclic_normal_form(Word::letter(tp.symbol_index(a_set, x, x)));
      if (seen.insert(c).second) tp.base_.relators.push_back(std::move(c));
    }
  }
  return tp;
}

FinSubgroup boundary_image(const TensorPresentation& tp) {
  std::set<int> gens;
  for (std::size_t i = 0; i < tp.symbols().size(); ++i) gens.insert(tp.boundary(static_cast<int>(i)));
  std::vector<int> v(gens.begin(), gens.end());
  return generated_subgroup(tp.ambient(), v);
}

AbelianInvariants kernel_abelianization(const TensorPresentation& tp) {
  const FiniteGroup& g = *tp.ambient();
  FinSubgroup image = boundary_image(tp);
  const std::size_t cosets = image.order();
  const std::size_t ngens = tp.symbols().size();
  std::vector<int> coset_of(g.order(), -1);
  for (std::size_t i = 0; i < cosets; ++i) coset_of[static_cast<std::size_t>(image.members()[i])] = static_cast<int>(i);
  std::vector<int> bd(ngens);
  for (std::size_t s = 0; s < ngens; ++s) bd[s] = tp.boundary(static_cast<int>(s));
  auto step = [&](int c, std::size_t s) {
    return coset_of[static_cast<std::size_t>(g.mul(image.members()[static_cast<std::size_t>(c)], bd[s]))];
  };
  // Spanning tree over forward edges c -> c d(s) and their reverses.
  std::vector<char> tree(cosets * ngens, 0);
  std::vector<char> seen(cosets, 0);
  std::vector<int> bfs{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    int c = bfs[i];
    for (std::size_t s = 0; s < ngens; ++s) {
      int d = step(c, s);
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = 1;
        tree[static_cast<std::size_t>(c) * ngens + s] = 1;
        bfs.push_back(d);
      }
      int e = coset_of[static_cast<std::size_t>(g.mul(image.members()[static_cast<std::size_t>(c)], g.inv(bd[s])))];
      if (!seen[static_cast<std::size_t>(e)]) {
        seen[static_cast<std::size_t>(e)] = 1;
        tree[static_cast<std::size_t>(e) * ngens + s] = 1;
        bfs.push_back(e);
      }
    }
  }
  std::vector<int> column(cosets * ngens, -1);
  std::size_t ncols = 0;
  for (std::size_t k = 0; k < cosets * ngens; ++k) {
    if (!tree[k]) column[k] = static_cast<int>(ncols++);
  }
  SparseAbelianizer lattice(ncols);
  for (const auto& r : tp.base().relators) {
    for (std::size_t c0 = 0; c0 < cosets; ++c0) {
      SparseVector v;
      int c = static_cast<int>(c0);
      for (int l : r.letters()) {
        std::size_t s = static_cast<std::size_t>(std::abs(l) - 1);
        if (l > 0) {
          int col = column[static_cast<std::size_t>(c) * ngens + s];
          if (col >= 0) v.emplace_back(static_cast<std::size_t>(col), 1);
          c = step(c, s);
        } else {
          c = coset_of[static_cast<std::size_t>(g.mul(image.members()[static_cast<std::size_t>(c)], g.inv(bd[s])))];
          int col = column[static_cast<std::size_t>(c) * ngens + s];
          if (col >= 0) v.emplace_back(static_cast<std::size_t>(col), -1);
        }
      }
      if (c != static_cast<int>(c0)) throw std::logic_error("relator does not map to the identity under the boundary");
      lattice.add(std::move(v));
    }
  }
  return lattice.invariants();
}

KernelReport kernel_of_boundary(const TensorPresentation& tp, std::size_t limit, Strategy strategy) {
  KernelReport rep;
  rep.strategy = strategy;
  FinSubgroup image = boundary_image(tp);
  rep.image_order = image.order();
  rep.kernel_abelianization = kernel_abelianization(tp);
  CosetTable table = todd_coxeter(tp.base(), {}, limit, strategy);
  rep.complete = table.complete();
  if (!rep.complete) return rep;
  rep.t_order = table.index();
  if (rep.t_order % rep.image_order != 0) throw std::logic_error("|T| is not a multiple of the image order");
  rep.kernel_order = rep.t_order / rep.image_order;
  if (rep.kernel_abelianization.free_rank != 0 ||
      rep.kernel_abelianization.torsion_order() > Integer(rep.kernel_order)) {
    throw std::logic_error("kernel abelianization larger than the kernel");
  }
  if (rep.t_order > kMaxFiniteOrder) return rep;
  auto t = std::make_shared<const FiniteGroup>(table, tp.base().generators);
  std::vector<int> kernel;
  for (std::size_t x = 0; x < t->order(); ++x) {
    if (tp.boundary(t->word_of(static_cast<int>(x))) == 0) kernel.push_back(static_cast<int>(x));
  }
  FinSubgroup k(t, std::move(kernel));
  if (k.order() != rep.kernel_order) throw std::logic_error("realized kernel has the wrong order");
  FinSubgroup kk = commutator_subgroup(k, k);
  rep.realized = true;
  rep.kernel_abelian = kk.is_trivial();
  rep.consistent = abelian_invariants_of_quotient(k, kk) == rep.kernel_abelianization;
  return rep;
}

}  // namespace colimit

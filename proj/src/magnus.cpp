#include "colimit/magnus.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "colimit/errors.hpp"

namespace colimit {

namespace {

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Magnus coefficient overflow");
  return r;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Magnus coefficient overflow");
  return r;
}

// Generalized binomial coefficient C(e, k) for any integer e.
std::int64_t binomial(std::int64_t e, int k) {
  __int128 num = 1;
  for (int i = 0; i < k; ++i) {
    num *= static_cast<__int128>(e - i);
    num /= (i + 1);  // exact: product of i+1 consecutive integers
    if (num > INT64_MAX || num < INT64_MIN) throw std::overflow_error("Magnus coefficient overflow");
  }
  return static_cast<std::int64_t>(num);
}

}  // namespace

MagnusAlgebra::MagnusAlgebra(int rank, int cls) : rank_(rank), cls_(cls) {
  if (rank < 1 || cls < 1) throw InputError("Magnus algebra needs rank >= 1 and class >= 1");
  pow_.push_back(1);
  offset_.push_back(0);
  for (int d = 0; d <= cls; ++d) {
    offset_.push_back(offset_.back() + pow_.back());
    pow_.push_back(pow_.back() * static_cast<std::size_t>(rank));
  }
}

std::size_t MagnusAlgebra::monomial(const std::vector<int>& letters) const {
  std::size_t v = 0;
  for (int l : letters) v = v * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(l);
  return v;
}

MagnusAlgebra::Series MagnusAlgebra::one() const {
  Series s(size(), 0);
  s[0] = 1;
  return s;
}

MagnusAlgebra::Series MagnusAlgebra::generator(int i, std::int64_t e) const {
  // (1+X)^e = sum_k C(e,k) X^k
  Series s(size(), 0);
  std::size_t mono = 0;
  for (int k = 0; k <= cls_; ++k) {
    s[offset(k) + mono] = binomial(e, k);
    mono = mono * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(i);
  }
  return s;
}

MagnusAlgebra::Series MagnusAlgebra::mul(const Series& a, const Series& b) const {
  Series r(size(), 0);
  for (int da = 0; da <= cls_; ++da) {
    std::size_t oa = offset(da);
    for (std::size_t u = 0; u < block(da); ++u) {
      std::int64_t x = a[oa + u];
      if (!x) continue;
      for (int db = 0; da + db <= cls_; ++db) {
        std::size_t ob = offset(db);
        std::size_t base = offset(da + db) + u * block(db);
        for (std::size_t v = 0; v < block(db); ++v) {
          std::int64_t y = b[ob + v];
          if (!y) continue;
          r[base + v] = add_checked(r[base + v], mul_checked(x, y));
        }
      }
    }
  }
  return r;
}

int MagnusAlgebra::order(const Series& s) const {
  for (int d = 1; d <= cls_; ++d) {
    for (std::size_t i = offset(d); i < offset(d + 1); ++i) {
      if (s[i]) return d;
    }
  }
  return cls_ + 1;
}

MagnusAlgebra::Series MagnusAlgebra::power(const Series& s, std::int64_t e) const {
  if (s[0] != 1) throw std::logic_error("Magnus power of a non-unit series");
  Series p = s;
  p[0] = 0;
  int ord = order(s);
  Series result = one();
  if (ord > cls_ || e == 0) return result;
  Series pk = one();
  for (int k = 1; k * ord <= cls_; ++k) {
    pk = mul(pk, p);
    std::int64_t c = binomial(e, k);
    if (!c) continue;
    for (std::size_t i = 0; i < size(); ++i) {
      if (pk[i]) result[i] = add_checked(result[i], mul_checked(c, pk[i]));
    }
  }
  return result;
}

MagnusAlgebra::Series MagnusAlgebra::of_word(const Word& w) const {
  Series s = one();
  for (const auto& syl : w.syllables()) {
    if (syl.letter >= rank_) throw InputError("word letter outside the Magnus alphabet");
    s = mul(s, generator(syl.letter, syl.exponent));
  }
  return s;
}

MagnusAlgebra::Sparse MagnusAlgebra::homogeneous(const Series& s, int degree) const {
  Sparse out;
  std::size_t o = offset(degree);
  for (std::size_t v = 0; v < block(degree); ++v) {
    if (s[o + v]) out.emplace_back(v, s[o + v]);
  }
  return out;
}

MagnusAlgebra::Sparse MagnusAlgebra::bracket(const Sparse& p, int dp, const Sparse& q, int dq) const {
  std::unordered_map<std::size_t, std::int64_t> acc;
  for (const auto& [u, x] : p) {
    for (const auto& [v, y] : q) {
      std::int64_t xy = mul_checked(x, y);
      acc[u * block(dq) + v] = add_checked(acc[u * block(dq) + v], xy);
      acc[v * block(dp) + u] = add_checked(acc[v * block(dp) + u], -xy);
    }
  }
  Sparse out;
  for (const auto& [m, c] : acc) {
    if (c) out.emplace_back(m, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MagnusCoordinates::MagnusCoordinates(const HallBasis& basis)
    : basis_(basis), alg_(basis.rank(), basis.cls()) {
  const int n = basis.size();
  const int c = basis.cls();
  images_.resize(static_cast<std::size_t>(n));
  lie_.resize(static_cast<std::size_t>(n));
  lyndon_.resize(static_cast<std::size_t>(n));
  std::vector<MagnusAlgebra::Series> inverses(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& b = basis[i];
    auto ui = static_cast<std::size_t>(i);
    lyndon_[ui] = alg_.monomial(b.lyndon);
    if (b.weight < c) {
      if (b.weight == 1) {
        images_[ui] = alg_.generator(b.lyndon[0], 1);
        inverses[ui] = alg_.generator(b.lyndon[0], -1);
      } else {
        auto l = static_cast<std::size_t>(b.left), r = static_cast<std::size_t>(b.right);
        images_[ui] = alg_.mul(alg_.mul(images_[l], images_[r]), alg_.mul(inverses[l], inverses[r]));
        inverses[ui] = alg_.inverse(images_[ui]);
      }
      lie_[ui] = alg_.homogeneous(images_[ui], b.weight);
    } else if (b.weight == 1) {
      lie_[ui] = {{static_cast<std::size_t>(b.lyndon[0]), 1}};
    } else {
      lie_[ui] = alg_.bracket(lie_[static_cast<std::size_t>(b.left)], basis[b.left].weight,
                              lie_[static_cast<std::size_t>(b.right)], basis[b.right].weight);
    }
  }
}

IntVector MagnusCoordinates::coordinates(const MagnusAlgebra::Series& s) const {
  const int c = basis_.cls();
  IntVector out(static_cast<std::size_t>(basis_.size()), 0);
  if (s.size() != alg_.size() || s[0] != 1) throw std::logic_error("series is not a group element");
  MagnusAlgebra::Series cur = s;
  for (int w = 1; w <= c; ++w) {
    std::size_t o = alg_.offset(w);
    std::vector<std::int64_t> layer(cur.begin() + static_cast<long>(o),
                                    cur.begin() + static_cast<long>(o + alg_.block(w)));
    std::vector<std::pair<int, std::int64_t>> found;
    for (int i = basis_.weight_begin(w); i < basis_.weight_begin(w + 1); ++i) {
      auto ui = static_cast<std::size_t>(i);
      std::int64_t e = layer[lyndon_[ui]];
      if (!e) continue;
      out[ui] = e;
      found.emplace_back(i, e);
      for (const auto& [m, coef] : lie_[ui]) layer[m] = add_checked(layer[m], -mul_checked(e, coef));
    }
    for (auto x : layer) {
      if (x) throw std::logic_error("series is not a group element");
    }
    if (w == c) break;
    for (const auto& [i, e] : found) {
      cur = alg_.mul(alg_.power(images_[static_cast<std::size_t>(i)], -e), cur);
    }
  }
  return out;
}

}  // namespace colimit

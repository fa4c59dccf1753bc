#include "colimit/hall.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "colimit/errors.hpp"

namespace colimit {

namespace {

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

// Lyndon words of length <= n over k letters in lexicographic order (Duval).
std::vector<std::vector<int>> lyndon_words(int k, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    out.push_back(w);
    std::size_t m = w.size();
    while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
  }
  return out;
}

}  // namespace

std::uint64_t witt_number(int rank, int weight) {
  if (rank < 1 || weight < 1) throw InputError("witt_number needs rank >= 1 and weight >= 1");
  // Sum over divisors of mu(d) r^(w/d), in 128-bit to avoid overflow at desk scale.
  __int128 total = 0;
  for (int d = 1; d <= weight; ++d) {
    if (weight % d) continue;
    int mu = mobius(d);
    if (!mu) continue;
    __int128 p = 1;
    for (int i = 0; i < weight / d; ++i) {
      p *= rank;
      if (p > (static_cast<__int128>(1) << 100)) return std::numeric_limits<std::uint64_t>::max();
    }
    total += mu * p;
  }
  return static_cast<std::uint64_t>(total / weight);
}

std::uint64_t basis_size(int rank, int cls) {
  std::uint64_t total = 0;
  for (int w = 1; w <= cls; ++w) {
    std::uint64_t x = witt_number(rank, w);
    if (x > std::numeric_limits<std::uint64_t>::max() - total) return std::numeric_limits<std::uint64_t>::max();
    total += x;
  }
  return total;
}

HallBasis::HallBasis(int rank, int cls) : rank_(rank), cls_(cls) {
  if (rank < 1 || cls < 1) throw InputError("Hall basis needs rank >= 1 and class >= 1");
  auto words = lyndon_words(rank, cls);
  std::stable_sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::map<std::vector<int>, int> index;
  begin_.assign(static_cast<std::size_t>(cls) + 2, 0);
  for (const auto& w : words) {
    BasicCommutator b;
    b.lyndon = w;
    b.weight = static_cast<int>(w.size());
    if (w.size() > 1) {
      for (std::size_t s = 1; s < w.size(); ++s) {
        auto it = index.find(std::vector<int>(w.begin() + static_cast<long>(s), w.end()));
        if (it == index.end()) continue;
        b.right = it->second;
        b.left = index.at(std::vector<int>(w.begin(), w.begin() + static_cast<long>(s)));
        break;
      }
    }
    index.emplace(w, static_cast<int>(elems_.size()));
    elems_.push_back(std::move(b));
  }
  for (int w = 1; w <= cls + 1; ++w) {
    begin_[static_cast<std::size_t>(w)] = static_cast<int>(
        std::lower_bound(elems_.begin(), elems_.end(), w,
                         [](const BasicCommutator& b, int wt) { return b.weight < wt; }) -
        elems_.begin());
  }
}

Word HallBasis::word(int i) const {
  const auto& b = (*this)[i];
  if (b.weight == 1) return Word::letter(b.lyndon[0]);
  return commutator(word(b.left), word(b.right));
}

std::string HallBasis::render(int i, const Alphabet& alphabet) const {
  const auto& b = (*this)[i];
  if (b.weight == 1) return alphabet[b.lyndon[0]].name();
  return "[" + render(b.left, alphabet) + "," + render(b.right, alphabet) + "]";
}

}  // namespace colimit

#include "wallcross/schur.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace wc {

Partition normalizePartition(std::vector<int> parts) {
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  if (!parts.empty() && parts.back() < 0) throw std::invalid_argument("negative part");
  return parts;
}

bool isPartition(const std::vector<int>& seq) {
  for (size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] < 0) return false;
    if (i > 0 && seq[i] > seq[i - 1]) return false;
  }
  return true;
}

int partitionSize(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

GradedPoly deltaDet(const std::vector<int>& seq, const std::vector<GradedPoly>& gens) {
  if (gens.empty()) throw std::invalid_argument("deltaDet: no generators");
  const auto& vt = gens[0].vars();
  int D = gens[0].trunc();
  const int d = static_cast<int>(seq.size());
  if (d == 0) return GradedPoly::constant(vt, D, 1);
  if (d > 20) throw std::invalid_argument("deltaDet: too many rows");
  auto entry = [&](int i, int c) -> const GradedPoly* {
    int k = seq[i] + c - i;
    if (k < 0 || k >= static_cast<int>(gens.size())) return nullptr;
    return &gens[k];
  };
  // Laplace expansion along rows, memoized on the set of used columns
  std::map<unsigned, GradedPoly> memo;
  std::function<GradedPoly(int, unsigned)> minor = [&](int row, unsigned used) -> GradedPoly {
    if (row == d) return GradedPoly::constant(vt, D, 1);
    auto it = memo.find(used);
    if (it != memo.end()) return it->second;
    GradedPoly s(vt, D);
    int sign = 1;
    for (int c = 0; c < d; ++c) {
      if (used & (1u << c)) continue;
      // sign alternates over the columns still available
      const GradedPoly* x = entry(row, c);
      if (x && !x->isZero()) {
        GradedPoly t = *x * minor(row + 1, used | (1u << c));
        if (sign > 0)
          s += t;
        else
          s -= t;
      }
      sign = -sign;
    }
    memo.emplace(used, s);
    return s;
  };
  return minor(0, 0);
}

std::vector<Partition> pieri(const Partition& lambda, int k, int maxParts) {
  // mu_1 >= lambda_1 >= mu_2 >= lambda_2 >= ..., one extra row allowed
  std::vector<Partition> out;
  const int rows = static_cast<int>(lambda.size()) + 1;
  Partition mu(rows, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == rows) {
      if (left == 0) {
        Partition p = normalizePartition(mu);
        if (maxParts < 0 || static_cast<int>(p.size()) <= maxParts) out.push_back(std::move(p));
      }
      return;
    }
    int lo = i < static_cast<int>(lambda.size()) ? lambda[i] : 0;
    int hi = i == 0 ? lo + left : std::min(lambda[i - 1], lo + left);
    for (int v = lo; v <= hi; ++v) {
      mu[i] = v;
      rec(i + 1, left - (v - lo));
    }
  };
  rec(0, k);
  return out;
}

namespace {
std::mutex gMemoMutex;
std::map<std::pair<std::vector<int>, int>, SchurCounts> gMemo;
}  // namespace

SchurCounts straightenMonomial(const std::vector<int>& exps, int maxParts) {
  std::vector<int> key = exps;
  while (!key.empty() && key.back() == 0) key.pop_back();
  {
    std::lock_guard<std::mutex> lk(gMemoMutex);
    auto it = gMemo.find({key, maxParts});
    if (it != gMemo.end()) return it->second;
  }
  SchurCounts cur{{Partition{}, Rational(1)}};
  for (size_t i = 0; i < key.size(); ++i)
    for (int rep = 0; rep < key[i]; ++rep) {
      SchurCounts next;
      for (auto& [lam, c] : cur)
        for (auto& mu : pieri(lam, static_cast<int>(i) + 1, maxParts)) next[mu] += c;
      cur = std::move(next);
    }
  std::lock_guard<std::mutex> lk(gMemoMutex);
  gMemo.emplace(std::make_pair(key, maxParts), cur);
  return cur;
}

SchurExpansion straighten(const GradedPoly& p, const std::vector<size_t>& hIdx, int maxParts) {
  SchurExpansion out;
  for (auto& [m, c] : p.terms()) {
    std::vector<int> exps(hIdx.size(), 0);
    Mono rest = m;
    for (size_t i = 0; i < hIdx.size(); ++i) {
      exps[i] = m[hIdx[i]];
      rest[hIdx[i]] = 0;
    }
    for (auto& [lam, k] : straightenMonomial(exps, maxParts)) {
      auto it = out.find(lam);
      if (it == out.end()) it = out.emplace(lam, GradedPoly(p.vars(), p.trunc())).first;
      it->second.addTerm(rest, c * k);
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.isZero() ? out.erase(it) : std::next(it);
  return out;
}

GradedPoly grassmannPush(const SchurExpansion& e, int j, int r, const std::vector<GradedPoly>& cMinusW) {
  if (cMinusW.empty()) throw std::invalid_argument("grassmannPush: empty Chern data");
  if (r < j) throw std::invalid_argument("grassmannPush: rank below subspace dimension");
  GradedPoly out(cMinusW[0].vars(), cMinusW[0].trunc());
  for (auto& [lam, c] : e) {
    if (static_cast<int>(lam.size()) > j) continue;  // vanishes on a rank-j bundle
    std::vector<int> seq(j, 0);
    for (size_t i = 0; i < lam.size(); ++i) seq[i] = lam[i];
    for (auto& s : seq) s -= r - j;
    GradedPoly d = deltaDet(seq, cMinusW);
    if (!d.isZero()) out += c * d;
  }
  return out;
}

OracleResult schubertOracle(int j, int n, const std::vector<int>& specials) {
  if (j < 0 || j > n) throw std::invalid_argument("schubertOracle: bad Grassmannian");
  const int w = n - j;
  int total = 0;
  for (int s : specials) total += s;
  if (total != j * w) return {Rational(0), true};

  // all partitions in the j x w box
  std::vector<Partition> box;
  std::vector<int> cur(j, 0);
  std::function<void(int, int)> gen = [&](int i, int cap) {
    if (i == j) {
      box.push_back(normalizePartition(cur));
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      cur[i] = v;
      gen(i + 1, v);
    }
  };
  gen(0, w);
  auto padded = [&](const Partition& p) {
    std::vector<int> v(j, 0);
    std::copy(p.begin(), p.end(), v.begin());
    return v;
  };
  // mu / lambda is a horizontal strip of size k: lambda_i <= mu_i, mu_{i+1} <= lambda_i
  auto strip = [&](const Partition& lam, const Partition& mu, int k) {
    auto a = padded(lam), b = padded(mu);
    int diff = 0;
    for (int i = 0; i < j; ++i) {
      if (b[i] < a[i]) return false;
      if (i + 1 < j && b[i + 1] > a[i]) return false;
      diff += b[i] - a[i];
    }
    return diff == k;
  };
  std::map<Partition, Rational> v{{Partition{}, Rational(1)}};
  for (int k : specials) {
    if (k < 0 || k > w) return {Rational(0), false};
    std::map<Partition, Rational> next;
    for (auto& [lam, c] : v)
      for (auto& mu : box)
        if (strip(lam, mu, k)) next[mu] += c;
    v = std::move(next);
  }
  Partition top(j, w);
  top = normalizePartition(top);
  auto it = v.find(top);
  return {it == v.end() ? Rational(0) : it->second, false};
}

}  // namespace wc

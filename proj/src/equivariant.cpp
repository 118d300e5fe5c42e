#include "wallcross/equivariant.hpp"

#include <cstdlib>
#include <stdexcept>

#include "wallcross/chern.hpp"

namespace wc {

bool EquivKClass::trivialChern() const {
  for (size_t k = 1; k < ch.size(); ++k)
    if (!ch[k].isZero()) return false;
  return true;
}

std::vector<std::string> tNames(int j) {
  std::vector<std::string> v;
  for (int i = 1; i <= j; ++i) v.push_back("t" + std::to_string(i));
  return v;
}

static std::vector<Rational> unitWeight(size_t n, size_t i, long sign) {
  std::vector<Rational> w(n, Rational(0));
  w.at(i) = sign;
  return w;
}

EquivKClass nClassSheafToExc(const WallData& w, const std::vector<std::string>& tvars, size_t i, int B) {
  EquivKClass K;
  K.rank = w.gamma1 + w.m * w.r;
  K.tvars = tvars;
  K.weight = unitWeight(tvars.size(), i, -1);
  K.ch.push_back(w.ring->constant(B, K.rank));
  for (int k = 1; k <= B; ++k) {
    GradedPoly c = w.ring->gamma(k + 1, B) + w.ring->nu(k, B) * Rational(w.m);
    if (k % 2) c *= -1;
    K.ch.push_back(c);
  }
  return K;
}

EquivKClass nClassExcToSheaf(const WallData& w, const std::vector<std::string>& tvars, size_t i, int B) {
  EquivKClass K;
  K.rank = w.gamma1 + (w.m + 1) * w.r;
  K.tvars = tvars;
  K.weight = unitWeight(tvars.size(), i, 1);
  K.ch.push_back(w.ring->constant(B, K.rank));
  for (int k = 1; k <= B; ++k)
    K.ch.push_back(w.ring->gamma(k + 1, B) + w.ring->nu(k, B) * Rational(w.m + 1));
  return K;
}

EquivKClass nClassExcToExc(const SlantRingPtr& ring, const std::vector<std::string>& tvars, size_t a,
                           size_t b, int B) {
  if (a == b) throw std::invalid_argument("nClassExcToExc: a == b is the trace part");
  EquivKClass K;
  K.rank = -1;
  K.tvars = tvars;
  K.weight.assign(tvars.size(), Rational(0));
  K.weight.at(a) = 1;
  K.weight.at(b) = -1;
  K.ch.push_back(ring->constant(B, -1));
  for (int k = 1; k <= B; ++k) K.ch.push_back(ring->zero(B));
  return K;
}

// the single variable carrying the weight, and its coefficient
static std::pair<size_t, Rational> singleWeight(const EquivKClass& K) {
  long found = -1;
  for (size_t i = 0; i < K.weight.size(); ++i) {
    if (K.weight[i] == 0) continue;
    if (found >= 0) throw std::invalid_argument("weight involves several equivariant variables");
    found = static_cast<long>(i);
  }
  if (found < 0) throw std::domain_error("localization error: zero weight");
  return {static_cast<size_t>(found), K.weight[static_cast<size_t>(found)]};
}

static LaurentInT pureWeightPower(const EquivKClass& K, long e) {
  const auto& vt = K.ch[0].vars();
  int B = K.baseTrunc();
  LaurentInT w = LaurentInT::linear(K.tvars, vt, B, K.weight);
  return w.pow(static_cast<int>(e));
}

LaurentInT eulerClass(const EquivKClass& K) {
  int B = K.baseTrunc();
  const auto& vt = K.ch[0].vars();
  if (K.trivialChern() && K.rank >= 0) return pureWeightPower(K, K.rank);
  auto [i, c] = singleWeight(K);
  std::vector<std::string> one{K.tvars[i]};
  auto cs = chernFromCh(K.ch);
  LaurentInT eu(one, vt, B);
  for (int k = 0; k <= B && k < static_cast<int>(cs.size()); ++k) {
    long e = K.rank - k;
    Rational f = 1;
    for (long s = 0; s < std::labs(e); ++s) f *= c;
    if (e < 0) f = 1 / f;
    eu.addTerm({static_cast<int>(e)}, cs[k] * f);
  }
  return eu.relabel(K.tvars);
}

LaurentInT inverseEuler(const EquivKClass& K) {
  if (K.trivialChern() && K.rank <= 0) return pureWeightPower(K, -K.rank);
  auto [i, c] = singleWeight(K);
  (void)c;
  LaurentInT eu = eulerClass(K);
  std::vector<std::string> one{K.tvars[i]};
  // back to a one-variable series for the inversion
  LaurentInT single(one, eu.base(), eu.baseTrunc());
  for (auto& [k, p] : eu.coeffs()) single.addTerm({k[i]}, p);
  return invertAtInfinity(single).relabel(K.tvars);
}

std::vector<LaurentInT> twistedCh(const EquivKClass& K, int kmax, int totalCap) {
  const auto& vt = K.ch[0].vars();
  int B = K.baseTrunc();
  LaurentInT w = LaurentInT::linear(K.tvars, vt, B, K.weight, totalCap);
  std::vector<LaurentInT> wp{LaurentInT::fromPoly(GradedPoly::constant(vt, B, 1), K.tvars, totalCap)};
  for (int k = 1; k <= kmax; ++k) wp.push_back(wp.back() * w);
  std::vector<LaurentInT> out;
  for (int k = 0; k <= kmax; ++k) {
    LaurentInT s(K.tvars, vt, B, totalCap);
    for (int l = 0; l <= k && l < static_cast<int>(K.ch.size()); ++l) {
      if (K.ch[l].isZero()) continue;
      s += wp[k - l] * K.ch[l] * (1 / factorial(k - l));
    }
    out.push_back(s);
  }
  return out;
}

LaurentInT vandermonde(const SlantRingPtr& ring, const std::vector<std::string>& tvars, int B) {
  LaurentInT v = LaurentInT::fromPoly(ring->one(B), tvars);
  for (size_t a = 0; a < tvars.size(); ++a)
    for (size_t b = 0; b < tvars.size(); ++b)
      if (a != b) v *= inverseEuler(nClassExcToExc(ring, tvars, a, b, B));
  return v;
}

LaurentInT psiKernel(int j, const WallData& w, int B) {
  if (j <= 0) throw std::invalid_argument("psiKernel: j must be positive");
  auto tv = tNames(j);
  LaurentInT k = vandermonde(w.ring, tv, B);
  for (size_t i = 0; i < tv.size(); ++i) {
    k *= inverseEuler(nClassSheafToExc(w, tv, i, B));
    k *= inverseEuler(nClassExcToSheaf(w, tv, i, B));
  }
  return k * (1 / factorial(j));
}

}  // namespace wc

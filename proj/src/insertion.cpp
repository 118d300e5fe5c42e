#include "wallcross/insertion.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wallcross/chern.hpp"

namespace wc {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

int parseInt(const std::string& s, const std::string& what) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer in " + what + ": '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("bad integer in " + what + ": '" + s + "'");
  return v;
}

using Series1 = std::vector<GradedPoly>;  // coefficients of x^0..x^K, degree 0 in the ring

Series1 mulSeries(const Series1& a, const Series1& b) {
  Series1 c(a.size(), GradedPoly(a[0].vars(), a[0].trunc()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; i + k < a.size(); ++k)
      if (!a[i].isZero() && !b[k].isZero()) c[i + k] += a[i] * b[k];
  return c;
}

// log of a series with constant term 1
Series1 logSeries(const Series1& f) {
  Series1 L(f.size(), GradedPoly(f[0].vars(), f[0].trunc()));
  for (size_t n = 1; n < f.size(); ++n) {
    GradedPoly s = f[n] * Rational(static_cast<long>(n));
    for (size_t k = 1; k < n; ++k) s -= L[k] * f[n - k] * Rational(static_cast<long>(k));
    L[n] = s * (Rational(1) / static_cast<long>(n));
  }
  return L;
}

Series1 rationalSeries(const SlantRing& ring, const std::vector<Rational>& c) {
  Series1 s;
  for (auto& x : c) s.push_back(ring.constant(0, x));
  return s;
}

// x / (1 - e^{-x})
std::vector<Rational> toddCoeffs(int K) {
  // (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
  std::vector<Rational> d(K + 1), inv(K + 1);
  for (int k = 0; k <= K; ++k) d[k] = Rational((k % 2) ? -1 : 1) / factorial(k + 1);
  inv[0] = 1;
  for (int n = 1; n <= K; ++n) {
    Rational s = 0;
    for (int k = 1; k <= n; ++k) s += d[k] * inv[n - k];
    inv[n] = -s;
  }
  return inv;
}

std::vector<LaurentInT> chProduct(const std::vector<LaurentInT>& a, const std::vector<LaurentInT>& b) {
  std::vector<LaurentInT> c;
  for (size_t k = 0; k < a.size(); ++k) {
    LaurentInT s = a[0] * Rational(0);
    for (size_t l = 0; l <= k; ++l) s += a[l] * b[k - l];
    c.push_back(s);
  }
  return c;
}

std::vector<LaurentInT> lift(const std::vector<GradedPoly>& v) {
  std::vector<LaurentInT> out;
  for (auto& p : v) out.push_back(LaurentInT::fromPoly(p, {}));
  return out;
}

}  // namespace

InsertionModel InsertionModel::parse(const std::string& desc) {
  InsertionModel m;
  std::stringstream ss(desc);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    any = true;
    auto setSeries = [&](Series s) {
      if (m.series != Series::None || m.opaqueDegree)
        throw std::invalid_argument("insertion: more than one base factor in '" + desc + "'");
      m.series = s;
    };
    if (part == "chi_y") {
      setSeries(Series::ChiY);
    } else if (part == "todd") {
      setSeries(Series::Todd);
    } else if (part == "chern") {
      setSeries(Series::Chern);
    } else if (part.rfind("opaque:", 0) == 0) {
      if (m.series != Series::None || m.opaqueDegree)
        throw std::invalid_argument("insertion: more than one base factor in '" + desc + "'");
      int d = parseInt(part.substr(7), "opaque degree");
      if (d < 0) throw std::invalid_argument("insertion: negative opaque degree");
      m.opaqueDegree = d;
    } else if (part.rfind("mu:[C]", 0) == 0) {
      std::string rest = part.substr(6);
      int k = 1;
      if (!rest.empty()) {
        if (rest[0] != '^') throw std::invalid_argument("insertion: expected mu:[C]^k");
        k = parseInt(rest.substr(1), "mu power");
      }
      if (k < 0) throw std::invalid_argument("insertion: negative mu power");
      m.muPower += k;
    } else {
      throw std::invalid_argument("unknown insertion component '" + part + "'");
    }
  }
  if (!any) throw std::invalid_argument("empty insertion descriptor");
  return m;
}

std::string InsertionModel::descriptor() const {
  std::vector<std::string> parts;
  switch (series) {
    case Series::ChiY: parts.push_back("chi_y"); break;
    case Series::Todd: parts.push_back("todd"); break;
    case Series::Chern: parts.push_back("chern"); break;
    case Series::None: break;
  }
  if (opaqueDegree) parts.push_back("opaque:" + std::to_string(*opaqueDegree));
  if (muPower) parts.push_back("mu:[C]^" + std::to_string(muPower));
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s.empty() ? "1" : s;
}

std::vector<GradedPoly> logCoefficients(const InsertionModel& ins, const SlantRing& ring, int K) {
  if (K < 0) K = 0;
  switch (ins.series) {
    case InsertionModel::Series::None:
      return Series1(K + 1, ring.zero(0));
    case InsertionModel::Series::Chern: {
      std::vector<Rational> c(K + 1, Rational(0));
      for (int k = 1; k <= K; ++k) c[k] = Rational((k % 2) ? 1 : -1) / k;
      return rationalSeries(ring, c);
    }
    case InsertionModel::Series::Todd:
      return logSeries(rationalSeries(ring, toddCoeffs(K)));
    case InsertionModel::Series::ChiY: {
      // f/f(0) = todd(x) (1 + (y/u)(1 - e^{-x})), y/u = u^{-1} - 1
      Series1 todd = rationalSeries(ring, toddCoeffs(K));
      GradedPoly yOverU = ring.u(0, -1) - ring.one(0);
      Series1 second(K + 1, ring.zero(0));
      second[0] = ring.one(0);
      for (int k = 1; k <= K; ++k) second[k] = yOverU * (Rational((k % 2) ? 1 : -1) / factorial(k));
      return logSeries(mulSeries(todd, second));
    }
  }
  throw std::logic_error("unreachable");
}

GradedPoly constantTerm(const InsertionModel& ins, const SlantRing& ring, int trunc) {
  if (ins.series == InsertionModel::Series::ChiY) return ring.u(trunc);
  return ring.one(trunc);
}

LaurentInT multiplicativeClass(const InsertionModel& ins, const SlantRing& ring, long rank,
                               const std::vector<LaurentInT>& ch, int cap) {
  if (ch.empty()) throw std::invalid_argument("multiplicativeClass: empty character");
  const auto& tv = ch[0].tvars();
  int B = ch[0].baseTrunc();
  LaurentInT one = LaurentInT::fromPoly(ring.one(B), tv, cap);
  if (!ins.multiplicative()) return one;
  auto a = logCoefficients(ins, ring, cap);
  // L_k = a_k k! ch_k is homogeneous of degree k; E = exp(L) by n E_n = sum_k k L_k E_{n-k}
  std::vector<LaurentInT> L(cap + 1, one * Rational(0)), E(cap + 1, one * Rational(0));
  for (int k = 1; k <= cap && k < static_cast<int>(ch.size()); ++k)
    L[k] = ch[k].withTotalCap(cap) * (a[k].withTrunc(B) * factorial(k));
  E[0] = one;
  for (int n = 1; n <= cap; ++n) {
    LaurentInT s = one * Rational(0);
    for (int k = 1; k <= n; ++k)
      if (!L[k].isZero() && !E[n - k].isZero()) s += L[k] * E[n - k] * Rational(k);
    E[n] = s * (Rational(1) / n);
  }
  LaurentInT sum = one * Rational(0);
  for (auto& e : E) sum += e;
  if (ins.series == InsertionModel::Series::ChiY) sum *= ring.u(B, static_cast<int>(rank));
  return sum;
}

LaurentInT multiplicativeClass(const InsertionModel& ins, const SlantRing& ring, const EquivKClass& K,
                               int cap) {
  return multiplicativeClass(ins, ring, K.rank, twistedCh(K, cap, cap), cap);
}

LaurentInT transformDirectSum(const InsertionModel& ins, const WallData& w,
                              const std::vector<std::string>& tvars, int B, int cap) {
  const SlantRing& ring = *w.ring;
  LaurentInT P = LaurentInT::fromPoly(ring.one(B), tvars, cap);
  if (!ins.multiplicative()) return P;
  for (size_t a = 0; a < tvars.size(); ++a) {
    P *= multiplicativeClass(ins, ring, nClassSheafToExc(w, tvars, a, B), cap);
    P *= multiplicativeClass(ins, ring, nClassExcToSheaf(w, tvars, a, B), cap);
    // A(-O): the trace part of RHom(C_m, C_m)
    if (ins.series == InsertionModel::Series::ChiY) P *= ring.u(B, -1);
  }
  for (size_t a = 0; a < tvars.size(); ++a)
    for (size_t b = 0; b < tvars.size(); ++b)
      if (a != b) P *= multiplicativeClass(ins, ring, nClassExcToExc(w.ring, tvars, a, b, B), cap);
  return P;
}

GradedPoly transformTwist(const InsertionModel& ins, const SlantRing& ring, int T) {
  (void)ins;
  return ring.one(T);
}

std::vector<GradedPoly> chOfV(const SlantRing& ring, int jp, int T) {
  std::vector<GradedPoly> c(T + 1, ring.zero(T));
  c[0] = ring.one(T);
  for (int k = 1; k <= jp && k <= T; ++k) c[k] = ring.x(k, T);
  return chFromChern(c, ring.constant(T, jp));
}

GradedPoly transformGrassmann(const InsertionModel& ins, const SlantRing& ring, long r, int jp, int T) {
  if (!ins.multiplicative()) return ring.one(T);
  std::vector<GradedPoly> n(T + 1, ring.zero(T)), W(T + 1, ring.zero(T));
  W[0] = ring.constant(T, r);
  for (int k = 1; k <= T; ++k) {
    n[k] = ring.gamma(k + 1, T) * Rational((k % 2) ? -1 : 1);
    W[k] = ring.gamma(k + 1, T) + ring.nu(k, T);
  }
  auto V = chOfV(ring, jp, T);
  std::vector<GradedPoly> Vd = V;
  for (int k = 1; k <= T; k += 2) Vd[k] *= -1;
  auto nV = chProduct(lift(n), lift(V));
  auto WVd = chProduct(lift(W), lift(Vd));
  auto VVd = chProduct(lift(V), lift(Vd));
  for (auto& c : VVd) c *= -1;
  LaurentInT R = multiplicativeClass(ins, ring, 0, nV, T);
  R *= multiplicativeClass(ins, ring, r * jp, WVd, T);
  R *= multiplicativeClass(ins, ring, -static_cast<long>(jp) * jp, VVd, T);
  return R.coefficient({});
}

LaurentInT substituteDirectSum(const GradedPoly& Q, const SlantRing& ring,
                               const std::vector<std::string>& tvars, int B, int cap) {
  const auto& vt = ring.table();
  const size_t nv = vt->size();
  // group by the gamma part of each monomial
  std::map<Mono, GradedPoly> groups;
  for (auto& [m, c] : Q.terms()) {
    int deg = Q.degreeOf(m);
    if (deg > cap) continue;
    Mono g(nv, 0), rest = m;
    int restDeg = 0;
    for (size_t i = 0; i < nv; ++i) {
      if (ring.isGamma(i)) {
        g[i] = m[i];
        rest[i] = 0;
      } else {
        restDeg += m[i] * (*vt)[i].degree;
      }
    }
    if (restDeg > B) continue;
    auto it = groups.find(g);
    if (it == groups.end()) it = groups.emplace(g, ring.zero(B)).first;
    it->second.addTerm(rest, c);
  }
  std::vector<std::map<int, LaurentInT>> powers(nv);
  auto image = [&](size_t idx) {
    int i = ring.gammaIndexOf(idx);
    LaurentInT im = LaurentInT::fromPoly(ring.gamma(i, B), tvars, cap);
    Rational c = Rational(((i - 1) % 2) ? 1 : -1) / factorial(i - 1);  // -(-1)^{i-1}/(i-1)!
    for (size_t a = 0; a < tvars.size(); ++a)
      im += LaurentInT::monomial(tvars, vt, B, a, i - 1, c, cap);
    return im;
  };
  std::function<const LaurentInT&(size_t, int)> power = [&](size_t idx, int e) -> const LaurentInT& {
    auto& mp = powers[idx];
    auto it = mp.find(e);
    if (it != mp.end()) return it->second;
    LaurentInT p = e == 1 ? image(idx) : power(idx, e - 1) * power(idx, 1);
    return mp.emplace(e, std::move(p)).first->second;
  };
  LaurentInT out(tvars, vt, B, cap);
  for (auto& [g, rest] : groups) {
    if (rest.isZero()) continue;
    LaurentInT t = LaurentInT::fromPoly(rest, tvars, cap);
    for (size_t i = 0; i < nv && !t.isZero(); ++i)
      if (g[i]) t *= power(i, g[i]);
    out += t;
  }
  return out;
}

namespace {
std::vector<std::optional<GradedPoly>> keepAll(const SlantRing& ring) {
  return std::vector<std::optional<GradedPoly>>(ring.table()->size());
}
}  // namespace

GradedPoly substituteTwist(const GradedPoly& Q, const SlantRing& ring, int a) {
  int T = Q.trunc();
  auto im = keepAll(ring);
  for (int i = 2; i <= ring.maxDeg() + 1; ++i) {
    if (i - 1 > T) break;
    im[ring.gammaIdx(i)] = ring.gamma(i, T) - ring.nu(i - 1, T) * Rational(a);
  }
  return Q.substitute(im, ring.table(), T);
}

GradedPoly substituteGrassmann(const GradedPoly& Q, const SlantRing& ring, int jp) {
  int T = Q.trunc();
  auto chV = chOfV(ring, jp, T);
  auto im = keepAll(ring);
  for (int i = 2; i <= ring.maxDeg() + 1; ++i) {
    if (i - 1 > T) break;
    im[ring.gammaIdx(i)] = ring.gamma(i, T) - chV[i - 1];
  }
  return Q.substitute(im, ring.table(), T);
}

GradedPoly muC(const SlantRing& ring, long gamma1, int T) {
  return ring.nu(1, T) * rat(gamma1, 2) - ring.gamma(2, T);
}

LaurentInT muCrossing(const SlantRing& ring, long r, int T) {
  if (r != 2) throw std::invalid_argument("muCrossing: the rules are stated for rank 2");
  std::vector<std::string> tv{"t"};
  return LaurentInT::monomial(tv, ring.table(), T, 0, 1, -1) +
         LaurentInT::fromPoly(ring.nu(1, T) * Rational(-1, 2), tv);
}

GradedPoly initialIntegrand(const InsertionModel& ins, const SlantRing& ring, long gamma1, int T) {
  return muC(ring, gamma1, T).pow(ins.muPower);
}

GradedPoly eliminateOnPullbackLocus(const GradedPoly& Q, const SlantRing& ring) {
  int T = Q.trunc();
  auto im = keepAll(ring);
  for (int i = 2; i <= ring.maxDeg() + 1; ++i) im[ring.gammaIdx(i)] = ring.zero(T);
  im[ring.nuIdx(1)] = ring.zero(T);
  return Q.substitute(im, ring.table(), T);
}

GradedPoly relationOnLevelOne(int i, long r, const SlantRing& ring, int T) {
  if (i <= r) throw std::invalid_argument("relationOnLevelOne: i must exceed the rank");
  std::vector<GradedPoly> kappa(r + 1, ring.zero(T));
  kappa[0] = ring.constant(T, r);
  for (int k = 1; k <= r; ++k) kappa[k] = ring.nu(k, T) + ring.gamma(k + 1, T);
  auto c = chernFromCh(kappa);
  c.resize(i + 1, ring.zero(T));
  auto ch = chFromChern(c, ring.constant(T, r));
  return ch[i] - ring.gamma(i + 1, T);
}

GradedPoly imposeLevelOneRelations(const GradedPoly& Q, long r, const SlantRing& ring) {
  int T = Q.trunc();
  auto im = keepAll(ring);
  bool any = false;
  for (int i = static_cast<int>(r) + 1; i <= std::min(T, ring.maxDeg()); ++i) {
    im[ring.nuIdx(i)] = relationOnLevelOne(i, r, ring, T);
    any = true;
  }
  return any ? Q.substitute(im, ring.table(), T) : Q;
}

}  // namespace wc

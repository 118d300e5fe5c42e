#include "wallcross/chern.hpp"

#include <sstream>
#include <stdexcept>

namespace wc {

ChernCharacter::ChernCharacter(SurfacePtr s, Rational r, DivisorClass c1, Rational c2)
    : surface(std::move(s)), rank(std::move(r)), ch1(std::move(c1)), ch2(std::move(c2)) {
  if (ch1.surface != surface) throw std::invalid_argument("ch1 lives on a different surface");
}

Rational ChernCharacter::c2() const { return pair(ch1, ch1) / 2 - ch2; }

ChernCharacter& ChernCharacter::operator+=(const ChernCharacter& o) {
  if (surface != o.surface) throw std::invalid_argument("Chern characters on different surfaces");
  rank += o.rank;
  ch1 += o.ch1;
  ch2 += o.ch2;
  return *this;
}

ChernCharacter& ChernCharacter::operator-=(const ChernCharacter& o) {
  if (surface != o.surface) throw std::invalid_argument("Chern characters on different surfaces");
  rank -= o.rank;
  ch1 -= o.ch1;
  ch2 -= o.ch2;
  return *this;
}

ChernCharacter operator*(const Rational& c, ChernCharacter a) {
  a.rank *= c;
  a.ch1 = c * a.ch1;
  a.ch2 *= c;
  return a;
}

bool ChernCharacter::operator==(const ChernCharacter& o) const {
  return surface == o.surface && rank == o.rank && ch1 == o.ch1 && ch2 == o.ch2;
}

bool ChernCharacter::operator<(const ChernCharacter& o) const {
  if (rank != o.rank) return rank < o.rank;
  for (size_t i = 0; i < ch1.v.size(); ++i)
    if (ch1.v[i] != o.ch1.v[i]) return ch1.v[i] < o.ch1.v[i];
  return ch2 < o.ch2;
}

std::string ChernCharacter::toString() const {
  std::ostringstream os;
  os << "(" << rank.get_str() << ", " << ch1.toString() << ", " << ch2.get_str() << ")";
  return os.str();
}

nlohmann::json ChernCharacter::toJson() const {
  nlohmann::json j;
  j["rank"] = rank.get_str();
  j["ch1"] = nlohmann::json::array();
  for (auto& x : ch1.v) j["ch1"].push_back(x.get_str());
  j["ch2"] = ch2.get_str();
  return j;
}

ChernCharacter ChernCharacter::fromJson(const SurfacePtr& s, const nlohmann::json& j) {
  auto rat = [](const nlohmann::json& v) {
    return v.is_string() ? parseRational(v.get<std::string>()) : Rational(v.get<long>());
  };
  std::vector<Rational> c1;
  for (auto& x : j.at("ch1")) c1.push_back(rat(x));
  return ChernCharacter(s, rat(j.at("rank")), DivisorClass(s, c1), rat(j.at("ch2")));
}

ChernCharacter fromRankC1C2(const SurfacePtr& s, int rank, const DivisorClass& c1, const Rational& c2) {
  return ChernCharacter(s, rank, c1, pair(c1, c1) / 2 - c2);
}

ChernCharacter structureSheaf(const SurfacePtr& s) {
  return ChernCharacter(s, 1, DivisorClass::zero(s), 0);
}

ChernCharacter pointClass(const SurfacePtr& s) { return ChernCharacter(s, 0, DivisorClass::zero(s), 1); }

ChernCharacter twist(const ChernCharacter& c, const DivisorClass& D) {
  // ch * exp(D), truncated in degree 2
  ChernCharacter r = c;
  r.ch1 = c.ch1 + c.rank * D;
  r.ch2 = c.ch2 + pair(D, c.ch1) + c.rank * pair(D, D) / 2;
  return r;
}

ChernCharacter pullback(const ChernCharacter& c, const SurfacePtr& blown) {
  return ChernCharacter(blown, c.rank, pullback(c.ch1, blown), c.ch2);
}

ChernCharacter exceptionalChern(const SurfacePtr& blown, int m) {
  if (blown->blowupDepth != 1) throw std::invalid_argument("exceptionalChern: non-blowup surface");
  return ChernCharacter(blown, 0, exceptionalCurve(blown), -(Rational(m) + Rational(1, 2)));
}

Rational exceptionalCoefficient(const ChernCharacter& c) { return c.ch1.v.back(); }

Rational gammaOne(const ChernCharacter& c) { return pair(c.ch1, exceptionalCurve(c.surface)); }

bool isAdmissible(const ChernCharacter& c, int r) {
  if (c.surface->blowupDepth != 1) return false;
  if (c.rank != r) return false;
  return exceptionalCoefficient(c).get_den() == 1;
}

ChernCharacter pushforwardToBase(const ChernCharacter& c) {
  if (c.surface->blowupDepth != 1 || exceptionalCoefficient(c).get_den() != 1)
    throw std::invalid_argument("pushforwardToBase: non-admissible Chern character");
  Rational k = exceptionalCoefficient(c);
  return ChernCharacter(c.surface->base, c.rank, pullbackPart(c.ch1), c.ch2 + k / 2);
}

Rational eulerPairing(const KClassOnFiber& a, const KClassOnFiber& b) {
  if (a.surface != b.surface) throw std::invalid_argument("eulerPairing: different surfaces");
  // ch(a)^v ch(b)
  Rational r0 = a.rank * b.rank;
  DivisorClass r1 = a.rank * b.ch1 - b.rank * a.ch1;
  Rational r2 = a.rank * b.ch2 + b.rank * a.ch2 - pair(a.ch1, b.ch1);
  return toddTopPairing(a.surface)(r0, r1, r2);
}

Rational eulerCharacteristic(const KClassOnFiber& a) {
  return eulerPairing(structureSheaf(a.surface), a);
}

long vdim(const ChernCharacter& c, bool fixedDet, int irregularity) {
  if (c.rank == 0) throw std::invalid_argument("vdim: rank 0");
  Rational v = -eulerPairing(c, c) + c.surface->chiO;
  if (!fixedDet) v += irregularity;
  if (v.get_den() != 1) throw std::logic_error("vdim: non-integral value " + v.get_str());
  return v.get_num().get_si();
}

std::vector<GradedPoly> chernFromCh(const std::vector<GradedPoly>& ch) {
  size_t n = ch.size();
  if (n == 0) return {};
  const auto& vt = ch[0].vars();
  int D = ch[0].trunc();
  std::vector<GradedPoly> p(n, GradedPoly(vt, D)), c(n, GradedPoly(vt, D));
  for (size_t k = 1; k < n; ++k) p[k] = ch[k] * factorial(static_cast<int>(k));
  c[0] = GradedPoly::constant(vt, D, 1);
  for (size_t k = 1; k < n; ++k) {
    GradedPoly s(vt, D);
    for (size_t i = 1; i <= k; ++i) {
      GradedPoly t = c[k - i] * p[i];
      if (i % 2 == 0) t *= -1;
      s += t;
    }
    c[k] = s * Rational(1, static_cast<long>(k));
  }
  return c;
}

std::vector<GradedPoly> chFromChern(const std::vector<GradedPoly>& c, const GradedPoly& rank) {
  size_t n = c.size();
  if (n == 0) return {};
  const auto& vt = rank.vars();
  int D = rank.trunc();
  std::vector<GradedPoly> p(n, GradedPoly(vt, D)), ch(n, GradedPoly(vt, D));
  ch[0] = rank;
  for (size_t k = 1; k < n; ++k) {
    GradedPoly s = c[k] * Rational(static_cast<long>(k));
    if (k % 2 == 0) s *= -1;
    for (size_t i = 1; i < k; ++i) {
      GradedPoly t = c[i] * p[k - i];
      if (i % 2 == 0) t *= -1;
      s += t;
    }
    p[k] = s;
    ch[k] = s * (1 / factorial(static_cast<int>(k)));
  }
  return ch;
}

std::vector<GradedPoly> inverseTotalClass(const std::vector<GradedPoly>& c) {
  size_t n = c.size();
  if (n == 0) return {};
  const auto& vt = c[0].vars();
  int D = c[0].trunc();
  std::vector<GradedPoly> s(n, GradedPoly(vt, D));
  s[0] = GradedPoly::constant(vt, D, 1);
  for (size_t k = 1; k < n; ++k) {
    GradedPoly acc(vt, D);
    for (size_t i = 1; i <= k; ++i) acc -= c[i] * s[k - i];
    s[k] = acc;
  }
  return s;
}

}  // namespace wc

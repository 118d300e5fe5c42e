#include "wallcross/geometry.hpp"

#include <sstream>
#include <stdexcept>

namespace wc {

void SurfaceModel::validate() const {
  size_t n = basis.size();
  if (n == 0) throw std::invalid_argument("surface basis is empty");
  if (matrix.size() != n || K.size() != n) throw std::invalid_argument("surface data size mismatch");
  for (size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) throw std::invalid_argument("intersection matrix not square");
    for (size_t j = 0; j < n; ++j)
      if (matrix[i][j] != matrix[j][i]) throw std::invalid_argument("intersection matrix not symmetric");
  }
}

static Rational jsonRational(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parseRational(v.get<std::string>());
  throw std::invalid_argument("expected integer or \"p/q\" string");
}

SurfacePtr SurfaceModel::fromJson(const nlohmann::json& j) {
  auto s = std::make_shared<SurfaceModel>();
  s->basis = j.at("basis").get<std::vector<std::string>>();
  for (auto& row : j.at("matrix")) {
    std::vector<Rational> r;
    for (auto& x : row) r.push_back(jsonRational(x));
    s->matrix.push_back(r);
  }
  for (auto& x : j.at("K")) s->K.push_back(jsonRational(x));
  s->chiO = j.at("chiO").get<int>();
  s->validate();
  return s;
}

nlohmann::json SurfaceModel::toJson() const {
  nlohmann::json j;
  j["basis"] = basis;
  j["matrix"] = nlohmann::json::array();
  for (auto& row : matrix) {
    nlohmann::json r = nlohmann::json::array();
    for (auto& x : row) r.push_back(toString(x));
    j["matrix"].push_back(r);
  }
  j["K"] = nlohmann::json::array();
  for (auto& x : K) j["K"].push_back(toString(x));
  j["chiO"] = chiO;
  return j;
}

SurfacePtr projectivePlaneModel() {
  auto s = std::make_shared<SurfaceModel>();
  s->basis = {"H"};
  s->matrix = {{Rational(1)}};
  s->K = {Rational(-3)};
  s->chiO = 1;
  return s;
}

DivisorClass::DivisorClass(SurfacePtr s, std::vector<Rational> coeffs)
    : surface(std::move(s)), v(std::move(coeffs)) {
  if (v.size() != surface->dim()) throw std::invalid_argument("divisor length does not match basis");
}

DivisorClass DivisorClass::zero(const SurfacePtr& s) {
  return DivisorClass(s, std::vector<Rational>(s->dim(), Rational(0)));
}

DivisorClass DivisorClass::basisVector(const SurfacePtr& s, size_t i) {
  auto d = zero(s);
  d.v.at(i) = 1;
  return d;
}

static void sameSurface(const DivisorClass& a, const DivisorClass& b) {
  if (a.surface != b.surface) throw std::invalid_argument("basis mismatch: divisors on different surfaces");
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  sameSurface(*this, o);
  for (size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  sameSurface(*this, o);
  for (size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
  return *this;
}

DivisorClass operator*(const Rational& c, DivisorClass a) {
  for (auto& x : a.v) x *= c;
  return a;
}

std::string DivisorClass::toString() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!first) os << (v[i] < 0 ? " - " : " + ");
    else if (v[i] < 0) os << "-";
    first = false;
    Rational a = abs(v[i]);
    if (a != 1) os << a.get_str() << "*";
    os << surface->basis[i];
  }
  if (first) os << "0";
  return os.str();
}

SurfacePtr blowup(const SurfacePtr& s) {
  if (s->blowupDepth != 0) throw std::invalid_argument("unsupported: surface is already a blowup");
  auto b = std::make_shared<SurfaceModel>();
  size_t n = s->dim();
  b->basis = s->basis;
  b->basis.push_back("C");
  b->matrix.assign(n + 1, std::vector<Rational>(n + 1, Rational(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) b->matrix[i][j] = s->matrix[i][j];
  b->matrix[n][n] = -1;
  b->K = s->K;
  b->K.push_back(1);
  b->chiO = s->chiO;
  b->blowupDepth = 1;
  b->base = s;
  return b;
}

Rational pair(const DivisorClass& a, const DivisorClass& b) {
  sameSurface(a, b);
  Rational r = 0;
  const auto& M = a.surface->matrix;
  for (size_t i = 0; i < a.v.size(); ++i) {
    if (a.v[i] == 0) continue;
    for (size_t j = 0; j < b.v.size(); ++j) r += a.v[i] * M[i][j] * b.v[j];
  }
  return r;
}

DivisorClass canonicalClass(const SurfacePtr& s) { return DivisorClass(s, s->K); }

DivisorClass exceptionalCurve(const SurfacePtr& blown) {
  if (blown->blowupDepth != 1) throw std::invalid_argument("not a blowup model");
  return DivisorClass::basisVector(blown, blown->dim() - 1);
}

DivisorClass pullback(const DivisorClass& d, const SurfacePtr& blown) {
  if (blown->base != d.surface) throw std::invalid_argument("pullback: surface is not the base of the blowup");
  auto v = d.v;
  v.push_back(0);
  return DivisorClass(blown, v);
}

DivisorClass pullbackPart(const DivisorClass& d) {
  const auto& s = d.surface;
  if (s->blowupDepth != 1) throw std::invalid_argument("pullbackPart: not a blowup model");
  std::vector<Rational> v(d.v.begin(), d.v.end() - 1);
  return DivisorClass(s->base, v);
}

Rational ToddPairing::operator()(const Rational& rank, const DivisorClass& ch1,
                                 const Rational& ch2) const {
  DivisorClass halfK = Rational(-1, 2) * canonicalClass(surface);
  return ch2 + pair(ch1, halfK) + rank * surface->chiO;
}

ToddPairing toddTopPairing(const SurfacePtr& s) { return ToddPairing{s}; }

}  // namespace wc

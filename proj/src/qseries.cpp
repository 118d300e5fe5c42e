#include "wallcross/qseries.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace wc {

QSeries::QSeries(int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("q-series order must be non-negative");
}

QSeries QSeries::one(int order) { return monomial(0, 0, 1, order); }

QSeries QSeries::monomial(int quarterExp, int xExp, const Rational& c, int order) {
  QSeries s(order);
  s.add(quarterExp, xExp, c);
  return s;
}

Rational QSeries::coeff(int quarterExp, int xExp) const {
  auto it = c_.find(quarterExp);
  if (it == c_.end()) return 0;
  auto jt = it->second.find(xExp);
  return jt == it->second.end() ? Rational(0) : jt->second;
}

QSeries::Coeff QSeries::coeffPoly(int quarterExp) const {
  auto it = c_.find(quarterExp);
  return it == c_.end() ? Coeff{} : it->second;
}

void QSeries::add(int quarterExp, int xExp, const Rational& c) {
  if (quarterExp < 0) throw std::invalid_argument("negative q power");
  if (quarterExp > maxQuarter() || c == 0) return;
  auto& row = c_[quarterExp];
  auto& v = row[xExp];
  v += c;
  if (v == 0) {
    row.erase(xExp);
    if (row.empty()) c_.erase(quarterExp);
  }
}

QSeries QSeries::operator+(const QSeries& o) const {
  QSeries r = withOrder(std::min(order_, o.order_));
  for (auto& [q, row] : o.c_)
    for (auto& [x, v] : row) r.add(q, x, v);
  return r;
}

QSeries QSeries::operator-(const QSeries& o) const {
  QSeries r = withOrder(std::min(order_, o.order_));
  for (auto& [q, row] : o.c_)
    for (auto& [x, v] : row) r.add(q, x, -v);
  return r;
}

QSeries QSeries::operator*(const QSeries& o) const {
  QSeries r(std::min(order_, o.order_));
  for (auto& [qa, ra] : c_) {
    if (qa > r.maxQuarter()) break;
    for (auto& [qb, rb] : o.c_) {
      if (qa + qb > r.maxQuarter()) break;
      for (auto& [xa, va] : ra)
        for (auto& [xb, vb] : rb) r.add(qa + qb, xa + xb, va * vb);
    }
  }
  return r;
}

bool QSeries::operator==(const QSeries& o) const { return order_ == o.order_ && c_ == o.c_; }

QSeries QSeries::inverse() const {
  auto c0 = coeffPoly(0);
  if (c0.size() != 1 || c0.begin()->first != 0)
    throw std::domain_error("q-series inverse needs a nonzero constant leading term");
  Rational inv = 1 / c0.begin()->second;
  // f = c (1 + g) with g of positive q order
  QSeries g(order_);
  for (auto& [q, row] : c_)
    if (q > 0)
      for (auto& [x, v] : row) g.add(q, x, -v * inv);
  QSeries result = one(order_), power = one(order_);
  while (!power.isZero()) {
    power = power * g;
    result = result + power;
  }
  QSeries out(order_);
  for (auto& [q, row] : result.c_)
    for (auto& [x, v] : row) out.add(q, x, v * inv);
  return out;
}

QSeries QSeries::withOrder(int order) const {
  QSeries r(order);
  for (auto& [q, row] : c_)
    for (auto& [x, v] : row) r.add(q, x, v);
  return r;
}

QSeries QSeries::specializeX(const Rational& x) const {
  QSeries r(order_);
  for (auto& [q, row] : c_)
    for (auto& [e, v] : row) {
      Rational p = 1;
      mpq_class base = e >= 0 ? x : Rational(1 / x);
      for (int i = 0; i < std::abs(e); ++i) p *= base;
      r.add(q, 0, v * p);
    }
  return r;
}

std::string quarterExponent(int k) { return toString(rat(k, 4)); }

nlohmann::json QSeries::toJson(const std::string& var) const {
  auto out = nlohmann::json::array();
  for (auto& [q, row] : c_) {
    nlohmann::json coeff;
    if (row.size() == 1 && row.begin()->first == 0) {
      coeff = toString(row.begin()->second);
    } else {
      coeff = nlohmann::json::object();
      for (auto& [x, v] : row) coeff[var + "^" + std::to_string(x)] = toString(v);
    }
    out.push_back({{"exponent", quarterExponent(q)}, {"coeff", coeff}});
  }
  return out;
}

QSeries geometricInverse(int qExp, int xExp, int order) {
  if (qExp < 1) throw std::invalid_argument("geometric inverse needs a positive q power");
  QSeries r(order);
  for (int k = 0; k * qExp <= order; ++k) r.add(4 * k * qExp, k * xExp, 1);
  return r;
}

QSeries zA(int a, int order) {
  if (a != 0 && a != 1) throw std::invalid_argument("Z_a needs a in {0,1}");
  QSeries num(order);
  for (long n = -order - 1; n <= order + 1; ++n) {
    long s = 2 * n + a;
    if (s * s > 4L * order) continue;
    num.add(static_cast<int>(s * s), static_cast<int>((s * s - s) / 2), 1);
  }
  QSeries den = QSeries::one(order);
  for (int n = 1; n <= order; ++n) {
    auto g = geometricInverse(n, 2 * n, order);
    den = den * g * g;
  }
  return num * den;
}

namespace {

long sigma(long n) {
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

// coefficients of prod_k (1 - q^k)^{-e} up to q^order: n a_n = e sum sigma(k) a_{n-k}
std::vector<Rational> etaPower(long e, int order) {
  std::vector<Rational> a(order + 1, 0);
  a[0] = 1;
  for (int n = 1; n <= order; ++n) {
    Rational s = 0;
    for (int k = 1; k <= n; ++k) s += Rational(sigma(k)) * a[n - k];
    a[n] = Rational(e) * s / Rational(n);
  }
  return a;
}

}  // namespace

QSeries blowupEulerFactor(int a, int order) {
  if (a != 0 && a != 1) throw std::invalid_argument("blowup factor needs a in {0,1}");
  auto den = etaPower(2, order);
  std::vector<Rational> out(4 * order + 1, 0);
  // (n + a/2)^2 = (2n + a)^2 / 4
  for (long n = -order - 1; n <= order + 1; ++n) {
    long e = (2 * n + a) * (2 * n + a);
    for (int k = 0; 4 * k + e <= 4L * order; ++k) out[4 * k + e] += den[k];
  }
  QSeries r(order);
  for (int i = 0; i <= 4 * order; ++i) r.add(i, 0, out[i]);
  return r;
}

QSeries goettscheEuler(long chi, int order) {
  auto a = etaPower(chi, order);
  QSeries r(order);
  for (int n = 0; n <= order; ++n) r.add(4 * n, 0, a[n]);
  return r;
}

QSeries goettschePoincare(long b1, long b2, long b3, long b4, int order) {
  const long b[5] = {1, b1, b2, b3, b4};
  QSeries r = QSeries::one(order);
  for (int k = 1; k <= order; ++k)
    for (int i = 0; i <= 4; ++i) {
      long e = (i % 2 == 1 ? 1 : -1) * b[i];
      int zExp = 2 * k - 2 + i;
      if (e < 0) {
        auto g = geometricInverse(k, zExp, order);
        for (long c = 0; c < -e; ++c) r = r * g;
      } else if (e > 0) {
        QSeries f(order);
        for (long l = 0; l <= e; ++l)
          f.add(static_cast<int>(4 * k * l), static_cast<int>(zExp * l),
                (l % 2 ? -1 : 1) * binomial(static_cast<int>(e), static_cast<int>(l)));
        r = r * f;
      }
    }
  return r;
}

nlohmann::json RatioReport::toJson() const {
  return {{"chi", chi}, {"order", order}, {"ok", ok}, {"firstMismatch", firstMismatch}};
}

RatioReport blowupRatioCheck(long chi, int order) {
  RatioReport rep;
  rep.chi = chi;
  rep.order = order;
  auto ratio = goettscheEuler(chi + 1, order) * goettscheEuler(chi, order).inverse();
  QSeries expect = QSeries::one(order);
  for (int k = 1; k <= order; ++k) expect = expect * geometricInverse(k, 0, order);
  for (int n = 0; n <= order; ++n)
    if (ratio.coeffPoly(4 * n) != expect.coeffPoly(4 * n)) {
      rep.firstMismatch = n;
      break;
    }
  rep.ok = rep.firstMismatch < 0 && ratio == expect;
  return rep;
}

}  // namespace wc

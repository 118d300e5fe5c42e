#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "wallcross/rational.hpp"

namespace wc {

// Truncated series in q^{1/4} with Laurent-polynomial coefficients in one
// auxiliary variable (x, y or z depending on the caller).
class QSeries {
 public:
  using Coeff = std::map<int, Rational>;  // x exponent -> value

  explicit QSeries(int order = 0);
  static QSeries one(int order);
  static QSeries monomial(int quarterExp, int xExp, const Rational& c, int order);

  int order() const { return order_; }
  int maxQuarter() const { return 4 * order_; }
  const std::map<int, Coeff>& terms() const { return c_; }
  Rational coeff(int quarterExp, int xExp = 0) const;
  Coeff coeffPoly(int quarterExp) const;

  void add(int quarterExp, int xExp, const Rational& c);
  QSeries operator+(const QSeries& o) const;
  QSeries operator-(const QSeries& o) const;
  QSeries operator*(const QSeries& o) const;
  bool operator==(const QSeries& o) const;
  bool isZero() const { return c_.empty(); }

  // Requires the q^0 part to be a nonzero constant.
  QSeries inverse() const;
  QSeries withOrder(int order) const;
  QSeries specializeX(const Rational& x) const;

  // [{"exponent": "9/4", "coeff": "2"} ...]; coeff is an object of x powers when x survives
  nlohmann::json toJson(const std::string& var = "x") const;

 private:
  int order_;
  std::map<int, Coeff> c_;
};

std::string quarterExponent(int quarterExp);

// (1 - x^xe q^qe)^{-1} by geometric expansion, qe >= 1.
QSeries geometricInverse(int qExp, int xExp, int order);

// Numerator theta sum over (2n+a)^2 <= 4 order, over the product of (1 - x^{2n} q^n)^2.
QSeries zA(int a, int order);
// Sum_n q^{(n+a/2)^2} / prod (1-q^n)^2, expanded on its own.
QSeries blowupEulerFactor(int a, int order);

// prod_k (1 - q^k)^{-chi}, via the divisor-sum recursion.
QSeries goettscheEuler(long chi, int order);
// Hilbert scheme Poincare series in z (coefficient variable) and t (series variable).
// b0 = 1 is implied.
QSeries goettschePoincare(long b1, long b2, long b3, long b4, int order);

struct RatioReport {
  long chi = 0;
  int order = 0;
  bool ok = false;
  int firstMismatch = -1;  // q exponent
  nlohmann::json toJson() const;
};
// euler(chi + 1) / euler(chi) against prod (1 - q^k)^{-1}.
RatioReport blowupRatioCheck(long chi, int order);

}  // namespace wc

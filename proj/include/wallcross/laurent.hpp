#pragma once

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "wallcross/graded_poly.hpp"

namespace wc {

constexpr int kNoCap = INT_MAX / 4;

// Series in the equivariant variables t_1..t_j (any integer exponents) with coefficients in a
// truncated GradedPoly ring. Optional total-degree cap for power-series-type factors.
class LaurentInT {
 public:
  using Key = std::vector<int>;
  using CoeffMap = std::map<Key, GradedPoly>;

  LaurentInT() = default;
  LaurentInT(std::vector<std::string> tvars, VarTablePtr base, int baseTrunc, int totalCap = kNoCap);

  static LaurentInT fromPoly(const GradedPoly& p, std::vector<std::string> tvars,
                             int totalCap = kNoCap);
  // c * t_i^e
  static LaurentInT monomial(std::vector<std::string> tvars, VarTablePtr base, int baseTrunc,
                             size_t var, int e, const Rational& c = 1, int totalCap = kNoCap);
  // sum_i w_i t_i
  static LaurentInT linear(std::vector<std::string> tvars, VarTablePtr base, int baseTrunc,
                           const std::vector<Rational>& w, int totalCap = kNoCap);

  const std::vector<std::string>& tvars() const { return tvars_; }
  size_t tcount() const { return tvars_.size(); }
  const VarTablePtr& base() const { return base_; }
  int baseTrunc() const { return baseTrunc_; }
  int totalCap() const { return totalCap_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool isZero() const { return coeffs_.empty(); }
  size_t termCount() const;

  GradedPoly coefficient(const Key& k) const;
  GradedPoly zeroPoly() const { return GradedPoly(base_, baseTrunc_); }

  void addTerm(const Key& k, const GradedPoly& c);

  LaurentInT& operator+=(const LaurentInT& o);
  LaurentInT& operator-=(const LaurentInT& o);
  LaurentInT& operator*=(const Rational& c);
  LaurentInT& operator*=(const GradedPoly& p);
  LaurentInT operator-() const;
  friend LaurentInT operator+(LaurentInT a, const LaurentInT& b) { return a += b; }
  friend LaurentInT operator-(LaurentInT a, const LaurentInT& b) { return a -= b; }
  friend LaurentInT operator*(LaurentInT a, const Rational& c) { return a *= c; }
  friend LaurentInT operator*(LaurentInT a, const GradedPoly& p) { return a *= p; }
  friend LaurentInT operator*(const LaurentInT& a, const LaurentInT& b);
  LaurentInT& operator*=(const LaurentInT& o) { return *this = *this * o; }

  LaurentInT pow(int n) const;

  // Drop terms: total degree above cap / exponent of one variable above e.
  LaurentInT withTotalCap(int cap) const;
  LaurentInT withExpAbove(size_t var, int e) const;
  LaurentInT withBaseTrunc(int D) const;

  int maxExp(size_t var) const;
  int minExp(size_t var) const;

  // coefficient of t_var^{-1}; the variable is removed from the list
  LaurentInT residue(size_t var) const;
  GradedPoly residueToPoly() const;  // single variable case

  // Substitute t_var -> c * t_var (rescaling, c != 0).
  LaurentInT rescale(size_t var, const Rational& c) const;
  // Exchange two t variables (for symmetry tests).
  LaurentInT swapVars(size_t a, size_t b) const;
  // Reorder/rename variables into a new list containing all used ones.
  LaurentInT relabel(const std::vector<std::string>& newVars) const;

  bool operator==(const LaurentInT& o) const;
  bool operator!=(const LaurentInT& o) const { return !(*this == o); }
  std::string toString() const;

 private:
  void checkCompatible(const LaurentInT& o) const;
  int keyDegree(const Key& k) const;

  std::vector<std::string> tvars_;
  VarTablePtr base_;
  int baseTrunc_ = 0;
  int totalCap_ = kNoCap;
  CoeffMap coeffs_;
};

// Inverse of a one-variable series expanded in descending powers of t.
LaurentInT invertAtInfinity(const LaurentInT& f);

// Coefficient of t_var^{-1} in a*b, without forming the full product.
LaurentInT residuePairing(const LaurentInT& a, const LaurentInT& b, size_t var);

}  // namespace wc

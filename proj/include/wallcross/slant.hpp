#pragma once

#include <memory>

#include "wallcross/graded_poly.hpp"

namespace wc {

// Variables of the slant algebra: nu_i = ch_i(E)/[pt] (degree i), gamma_i = ch_i(E)/[C]
// (degree i-1, i >= 2; gamma_1 is a numeric constant of the space), the degree-0 Laurent
// variable u = 1 - y, and Chern classes x_1..x_s of an auxiliary bundle V.
class SlantRing {
 public:
  SlantRing(int maxDeg, int xCount);

  int maxDeg() const { return maxDeg_; }
  int xCount() const { return xCount_; }
  const VarTablePtr& table() const { return table_; }

  size_t nuIdx(int i) const;     // 1 <= i <= maxDeg
  size_t gammaIdx(int i) const;  // 2 <= i <= maxDeg + 1
  size_t uIdx() const { return uIdx_; }
  size_t xIdx(int k) const;  // 1 <= k <= xCount

  GradedPoly zero(int D) const { return GradedPoly(table_, D); }
  GradedPoly one(int D) const { return GradedPoly::constant(table_, D, 1); }
  GradedPoly constant(int D, const Rational& c) const { return GradedPoly::constant(table_, D, c); }
  GradedPoly nu(int i, int D) const;  // nu_0 is not a variable; callers pass the rank
  GradedPoly gamma(int i, int D) const;
  GradedPoly u(int D, int power = 1) const;
  GradedPoly x(int k, int D) const;

  bool isNu(size_t idx) const { return idx >= nu0_ && idx < nu0_ + static_cast<size_t>(maxDeg_); }
  bool isGamma(size_t idx) const { return idx >= g0_ && idx < g0_ + static_cast<size_t>(maxDeg_); }
  bool isX(size_t idx) const { return idx >= x0_ && idx < x0_ + static_cast<size_t>(xCount_); }
  int nuIndexOf(size_t idx) const { return static_cast<int>(idx - nu0_) + 1; }
  int gammaIndexOf(size_t idx) const { return static_cast<int>(idx - g0_) + 2; }
  int xIndexOf(size_t idx) const { return static_cast<int>(idx - x0_) + 1; }

 private:
  int maxDeg_, xCount_;
  size_t nu0_ = 0, g0_ = 0, uIdx_ = 0, x0_ = 0;
  VarTablePtr table_;
};

using SlantRingPtr = std::shared_ptr<const SlantRing>;
SlantRingPtr makeSlantRing(int maxDeg, int xCount = 0);

}  // namespace wc

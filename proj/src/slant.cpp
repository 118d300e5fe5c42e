#include "wallcross/slant.hpp"

#include <stdexcept>
#include <string>

namespace wc {

SlantRing::SlantRing(int maxDeg, int xCount) : maxDeg_(maxDeg), xCount_(xCount) {
  if (maxDeg < 1 || xCount < 0) throw std::invalid_argument("SlantRing: bad sizes");
  std::vector<Variable> vs;
  nu0_ = vs.size();
  for (int i = 1; i <= maxDeg; ++i) vs.push_back({"nu" + std::to_string(i), i, false});
  g0_ = vs.size();
  for (int i = 2; i <= maxDeg + 1; ++i) vs.push_back({"gamma" + std::to_string(i), i - 1, false});
  uIdx_ = vs.size();
  vs.push_back({"u", 0, true});
  x0_ = vs.size();
  for (int k = 1; k <= xCount; ++k) vs.push_back({"x" + std::to_string(k), k, false});
  table_ = makeVarTable(std::move(vs));
}

size_t SlantRing::nuIdx(int i) const {
  if (i < 1 || i > maxDeg_) throw std::out_of_range("nu index " + std::to_string(i));
  return nu0_ + static_cast<size_t>(i - 1);
}

size_t SlantRing::gammaIdx(int i) const {
  if (i < 2 || i > maxDeg_ + 1) throw std::out_of_range("gamma index " + std::to_string(i));
  return g0_ + static_cast<size_t>(i - 2);
}

size_t SlantRing::xIdx(int k) const {
  if (k < 1 || k > xCount_) throw std::out_of_range("x index " + std::to_string(k));
  return x0_ + static_cast<size_t>(k - 1);
}

GradedPoly SlantRing::nu(int i, int D) const {
  if (i > D) return zero(D);
  return GradedPoly::variable(table_, D, nuIdx(i));
}

GradedPoly SlantRing::gamma(int i, int D) const {
  if (i - 1 > D) return zero(D);
  return GradedPoly::variable(table_, D, gammaIdx(i));
}

GradedPoly SlantRing::u(int D, int power) const { return GradedPoly::variable(table_, D, uIdx_, power); }

GradedPoly SlantRing::x(int k, int D) const {
  if (k > D) return zero(D);
  return GradedPoly::variable(table_, D, xIdx(k));
}

SlantRingPtr makeSlantRing(int maxDeg, int xCount) {
  return std::make_shared<const SlantRing>(maxDeg, xCount);
}

}  // namespace wc

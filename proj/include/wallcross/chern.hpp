#pragma once

#include <vector>

#include <json.hpp>

#include "wallcross/geometry.hpp"
#include "wallcross/graded_poly.hpp"

namespace wc {

struct ChernCharacter {
  SurfacePtr surface;
  Rational rank = 0;
  DivisorClass ch1;
  Rational ch2 = 0;

  ChernCharacter() = default;
  ChernCharacter(SurfacePtr s, Rational r, DivisorClass c1, Rational c2);

  Rational c2() const;  // ch1^2/2 - ch2
  ChernCharacter& operator+=(const ChernCharacter& o);
  ChernCharacter& operator-=(const ChernCharacter& o);
  friend ChernCharacter operator+(ChernCharacter a, const ChernCharacter& b) { return a += b; }
  friend ChernCharacter operator-(ChernCharacter a, const ChernCharacter& b) { return a -= b; }
  friend ChernCharacter operator*(const Rational& c, ChernCharacter a);
  bool operator==(const ChernCharacter& o) const;
  bool operator!=(const ChernCharacter& o) const { return !(*this == o); }
  bool operator<(const ChernCharacter& o) const;  // total order for labels

  std::string toString() const;
  nlohmann::json toJson() const;
  static ChernCharacter fromJson(const SurfacePtr& s, const nlohmann::json& j);
};

// Formal difference of sheaf classes on the fiber surface.
using KClassOnFiber = ChernCharacter;

ChernCharacter fromRankC1C2(const SurfacePtr& s, int rank, const DivisorClass& c1, const Rational& c2);
ChernCharacter structureSheaf(const SurfacePtr& s);
ChernCharacter pointClass(const SurfacePtr& s);  // ch of a skyscraper
ChernCharacter twist(const ChernCharacter& c, const DivisorClass& D);
ChernCharacter pullback(const ChernCharacter& c, const SurfacePtr& blown);
// e_m = ch(O_C(-m-1)) = [C] - (m + 1/2)[pt]
ChernCharacter exceptionalChern(const SurfacePtr& blown, int m);
// the [C]-coefficient k of ch1 = p^*c1 + k[C]; note k = -(ch1 . C)
Rational exceptionalCoefficient(const ChernCharacter& c);
// ch1 . C, the constant slant gamma_1
Rational gammaOne(const ChernCharacter& c);
bool isAdmissible(const ChernCharacter& c, int r);
ChernCharacter pushforwardToBase(const ChernCharacter& c);

Rational eulerPairing(const KClassOnFiber& a, const KClassOnFiber& b);
Rational eulerCharacteristic(const KClassOnFiber& a);
// fixed determinant: -chi(E,E) + chi(O); otherwise add the irregularity
long vdim(const ChernCharacter& c, bool fixedDet = true, int irregularity = 0);

// Newton conversions; ch[0] is the rank (a constant), c[0] = 1.
std::vector<GradedPoly> chernFromCh(const std::vector<GradedPoly>& ch);
std::vector<GradedPoly> chFromChern(const std::vector<GradedPoly>& c, const GradedPoly& rank);
// c(-V) from c(V): inverse of the total class, degree by degree
std::vector<GradedPoly> inverseTotalClass(const std::vector<GradedPoly>& c);

}  // namespace wc

#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "wallcross/rational.hpp"

namespace wc {

struct SurfaceModel;
using SurfacePtr = std::shared_ptr<const SurfaceModel>;

struct SurfaceModel {
  std::vector<std::string> basis;             // basis[0] is the polarization H
  std::vector<std::vector<Rational>> matrix;  // intersection form
  std::vector<Rational> K;
  int chiO = 1;
  int blowupDepth = 0;
  SurfacePtr base;  // set on a blowup model

  size_t dim() const { return basis.size(); }
  void validate() const;

  static SurfacePtr fromJson(const nlohmann::json& j);
  nlohmann::json toJson() const;
};

// {H}, H^2 = 1, K = -3H, chi = 1
SurfacePtr projectivePlaneModel();

struct DivisorClass {
  SurfacePtr surface;
  std::vector<Rational> v;

  DivisorClass() = default;
  DivisorClass(SurfacePtr s, std::vector<Rational> coeffs);
  static DivisorClass zero(const SurfacePtr& s);
  static DivisorClass basisVector(const SurfacePtr& s, size_t i);

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const Rational& c, DivisorClass a);
  bool operator==(const DivisorClass& o) const { return surface == o.surface && v == o.v; }

  std::string toString() const;
};

SurfacePtr blowup(const SurfacePtr& s);
Rational pair(const DivisorClass& a, const DivisorClass& b);
DivisorClass canonicalClass(const SurfacePtr& s);
DivisorClass exceptionalCurve(const SurfacePtr& blown);
DivisorClass pullback(const DivisorClass& d, const SurfacePtr& blown);
// drops the C-component
DivisorClass pullbackPart(const DivisorClass& d);

// ch -> int ch.td with td = 1 - K/2 + chi(O)[pt]
struct ToddPairing {
  SurfacePtr surface;
  Rational operator()(const Rational& rank, const DivisorClass& ch1, const Rational& ch2) const;
};
ToddPairing toddTopPairing(const SurfacePtr& s);

}  // namespace wc

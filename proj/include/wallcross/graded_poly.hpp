#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wallcross/rational.hpp"

namespace wc {

struct Variable {
  std::string name;
  int degree = 1;
  bool laurent = false;  // negative exponents allowed; only for degree-0 variables
};

class VarTable {
 public:
  explicit VarTable(std::vector<Variable> vars);

  size_t size() const { return vars_.size(); }
  const Variable& operator[](size_t i) const { return vars_[i]; }
  const std::vector<Variable>& vars() const { return vars_; }
  std::optional<size_t> find(const std::string& name) const;
  size_t index(const std::string& name) const;

  bool operator==(const VarTable& o) const;

 private:
  std::vector<Variable> vars_;
  std::map<std::string, size_t> byName_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;
using Mono = std::vector<int>;

VarTablePtr makeVarTable(std::vector<Variable> vars);

// Sparse truncated polynomial. Monomials of degree > trunc are never stored.
class GradedPoly {
 public:
  using TermMap = std::map<Mono, Rational>;

  GradedPoly() = default;
  GradedPoly(VarTablePtr vars, int trunc);

  static GradedPoly constant(VarTablePtr vars, int trunc, const Rational& c);
  static GradedPoly variable(VarTablePtr vars, int trunc, size_t idx, int power = 1);
  static GradedPoly variable(VarTablePtr vars, int trunc, const std::string& name, int power = 1);

  const VarTablePtr& vars() const { return vars_; }
  int trunc() const { return trunc_; }
  const TermMap& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool isZero() const { return terms_.empty(); }

  int degreeOf(const Mono& m) const;
  int maxDegree() const;  // -1 for zero
  int minDegree() const;
  Rational coeff(const Mono& m) const;
  Rational constantTerm() const;
  bool isConstant() const;

  void addTerm(const Mono& m, const Rational& c);
  void addTerm(Mono&& m, const Rational& c);

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const Rational& c);
  GradedPoly& operator*=(const GradedPoly& o);
  GradedPoly operator-() const;

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
  friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);

  GradedPoly pow(int n) const;
  GradedPoly withTrunc(int D) const;  // drops monomials above D; D may exceed the current trunc
  GradedPoly homogeneousPart(int d) const;

  // Ring homomorphism: variable i maps to images[i] (nullopt keeps the variable).
  // Targets live over `target` with truncation targetTrunc.
  GradedPoly substitute(const std::vector<std::optional<GradedPoly>>& images, VarTablePtr target,
                        int targetTrunc) const;
  // Re-express over a table containing all used variables by name.
  GradedPoly embed(VarTablePtr target, int targetTrunc) const;

  bool operator==(const GradedPoly& o) const;
  bool operator!=(const GradedPoly& o) const { return !(*this == o); }

  std::string toString() const;
  nlohmann::json toJson() const;
  static GradedPoly fromJson(const nlohmann::json& j);

 private:
  void checkCompatible(const GradedPoly& o) const;

  VarTablePtr vars_;
  int trunc_ = 0;
  TermMap terms_;
};

void requireSameTable(const VarTablePtr& a, const VarTablePtr& b);

}  // namespace wc

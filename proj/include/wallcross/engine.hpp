#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wallcross/chern.hpp"
#include "wallcross/insertion.hpp"

namespace wc {

enum class KernelMode { Iterated, Symmetrized, Both };
KernelMode parseKernelMode(const std::string& s);
std::string toString(KernelMode m);

// Level-m moduli space on the blowup, or the moduli space on the base surface.
struct SpaceLabel {
  enum class Kind { MLevel, Base };
  Kind kind = Kind::MLevel;
  int level = 0;
  ChernCharacter ch;

  long rank() const;
  long gamma1() const;  // 0 on the base
  bool operator==(const SpaceLabel& o) const;
  bool operator<(const SpaceLabel& o) const;
  nlohmann::json toJson() const;
  std::string toString() const;
};

struct IntegralTerm {
  SpaceLabel label;
  Rational coefficient = 1;
  GradedPoly integrand;  // truncated at the effective degree T of the label
  int T = 0;
};

// Data shared by every rule of one reduction.
struct EngineContext {
  SlantRingPtr ring;
  InsertionModel ins;
  KernelMode mode = KernelMode::Iterated;
  long r = 2;
  long delta = 0;  // T(label) = vdim(label) - delta
  bool fixedDet = true;

  int effectiveDegree(const SpaceLabel& l) const;
};

// Dimension drop of the wall term j at level m, gamma_1 of the upper class gUp.
long wallDrop(int j, long r, int m, long gUp);

// One-step operator: Res_t Q(E + C_m e^{-t}) P(t) K(t) on the class with gamma_1 = gUp + 1.
// Returns nullopt when the lower term is dimension filtered.
std::optional<GradedPoly> wallOmega(const EngineContext& ctx, const GradedPoly& Q, int m, long gUp, int Tup);
// Iterated residues against the full Vandermonde kernel, without any factorials.
std::optional<GradedPoly> wallResidueSymmetric(const EngineContext& ctx, const GradedPoly& Q, int m,
                                               long gUp, int Tup, int j);

struct WallTerm {
  int j = 0;
  int T = 0;
  GradedPoly integrand;  // includes every factorial of the chosen normalization
};

struct DualModeReport {
  std::string label;
  int j = 0;
  Rational ratio;        // symmetrized / iterated
  bool constant = true;  // symmetrized == ratio * iterated
  nlohmann::json toJson() const;
};

// All j >= 1 terms of the wall between level m+1 and m for an upper term.
std::vector<WallTerm> wallTerms(const EngineContext& ctx, const GradedPoly& Q, int m, long gUp, int Tup,
                                std::vector<DualModeReport>* reports = nullptr,
                                const std::string& where = "");

struct RuleRecord {
  std::string rule;
  SpaceLabel before;
  std::vector<IntegralTerm> after;
  nlohmann::json extra = nlohmann::json::object();
  nlohmann::json toJson() const;
};

std::vector<IntegralTerm> wallcrossStep(const EngineContext& ctx, const IntegralTerm& t,
                                        std::vector<DualModeReport>* reports = nullptr);
IntegralTerm twistStep(const EngineContext& ctx, const IntegralTerm& t);
IntegralTerm pushdownStep(const EngineContext& ctx, const IntegralTerm& t);
// F-slants and Chern classes x of V, pushed along the Grassmann bundle Gr(jp, W).
GradedPoly grassmannPushdown(const SlantRing& ring, const GradedPoly& Q, long r, int jp);

struct EliminationCheck {
  bool linear = true;         // walls(Qt) - walls(Q) == walls(Qt - Q)
  bool trivialCancels = true; // Qt == Q implies every generated pair cancels
  size_t pairs = 0;
};
std::vector<IntegralTerm> eliminateStep(const EngineContext& ctx, const IntegralTerm& t,
                                        EliminationCheck* check = nullptr,
                                        std::vector<DualModeReport>* reports = nullptr);

struct ReductionInput {
  SurfacePtr base;  // the surface X; the blowup is built internally
  long rank = 2;
  DivisorClass c1;  // on X
  Rational c2 = 0;
  int j = 0;        // start class p^*c - j e
  std::string insertion = "chi_y";
  int D = 4;
  KernelMode mode = KernelMode::Iterated;
  std::optional<int> startLevel;  // default: Gieseker threshold
  nlohmann::json toJson() const;
};

struct ReductionResult {
  VarTablePtr outVars;              // y, nu_2..nu_r
  std::map<int, GradedPoly> omega;  // n -> Omega_n
  std::map<int, int> truncation;    // n -> effective degree on M_X(c + n[pt])
  int startLevel = 0;
  int startT = 0;
  std::vector<RuleRecord> audit;
  std::vector<DualModeReport> dualReports;
  EliminationCheck elimination;
  std::vector<std::string> problems;  // verification failures

  bool ok() const { return problems.empty(); }
  nlohmann::json toJson() const;       // canonical, audit excluded
  std::string auditJsonLines() const;
};

int giesekerThreshold(long r, long gamma1, int T);
ReductionResult reduceToBase(const ReductionInput& in);

// Re-derive Omega from an audit log; returns the problems found (empty if consistent).
std::vector<std::string> verifyAuditLog(const std::string& jsonLines, const nlohmann::json& result);

struct DonaldsonResult {
  Rational coefficient;
  bool residual = false;  // a base term of positive degree survived
  ReductionResult reduction;
};
DonaldsonResult donaldsonBlowup(int powerOfC, KernelMode mode = KernelMode::Iterated);

}  // namespace wc

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wallcross/equivariant.hpp"

namespace wc {

// Phi = (multiplicative class A(-RHom(E,E)) | opaque base class | 1) * mu([C])^muPower.
struct InsertionModel {
  enum class Series { None, ChiY, Todd, Chern };
  Series series = Series::None;
  std::optional<int> opaqueDegree;  // "opaque:d"
  int muPower = 0;                  // "mu:[C]^k"

  // Comma separated components, e.g. "chi_y", "opaque:3", "mu:[C]^4", "todd,mu:[C]^1".
  static InsertionModel parse(const std::string& desc);
  std::string descriptor() const;

  bool multiplicative() const { return series != Series::None; }
  // Only the top-degree part of the integrand survives (an opaque class of fixed degree).
  bool degreeExact() const { return !multiplicative(); }
};

// log(f(x)/f(0)) = sum_{k>=1} a_k x^k; returned a_0..a_K as degree-0 polynomials (u only).
std::vector<GradedPoly> logCoefficients(const InsertionModel& ins, const SlantRing& ring, int K);
// f(0) as a degree-0 polynomial: u for chi_y, 1 otherwise.
GradedPoly constantTerm(const InsertionModel& ins, const SlantRing& ring, int trunc);

// A(K) = f(0)^rank exp(sum_k a_k k! ch_k) with ch[k] homogeneous of total degree k; capped at cap.
LaurentInT multiplicativeClass(const InsertionModel& ins, const SlantRing& ring, long rank,
                               const std::vector<LaurentInT>& ch, int cap);
LaurentInT multiplicativeClass(const InsertionModel& ins, const SlantRing& ring, const EquivKClass& K,
                               int cap);

// Phi(E + sum_a C_m e^{-t_a}) / Phi(E), base truncation B, total degree cap.
LaurentInT transformDirectSum(const InsertionModel& ins, const WallData& w,
                              const std::vector<std::string>& tvars, int B, int cap);
// Phi(E(C)) / Phi(E); identically 1 for the supported kinds (mu-classes live in the integrand).
GradedPoly transformTwist(const InsertionModel& ins, const SlantRing& ring, int T);
// Phi(F + V (x) O_C(-1)) / Phi(F) for F with gamma_1 = 0, V of rank jp with Chern classes x_k.
GradedPoly transformGrassmann(const InsertionModel& ins, const SlantRing& ring, long r, int jp, int T);

// Slant-variable substitutions.
// gamma_i -> gamma_i - sum_a (-t_a)^{i-1}/(i-1)!   (nu unchanged)
LaurentInT substituteDirectSum(const GradedPoly& Q, const SlantRing& ring,
                               const std::vector<std::string>& tvars, int B, int cap);
// Q(E(aC)) in terms of E: gamma_i -> gamma_i - a nu_{i-1}
GradedPoly substituteTwist(const GradedPoly& Q, const SlantRing& ring, int a);
// Q(F + V (x) O_C(-1)) in terms of F and x: gamma_i -> gamma_i - ch_{i-1}(V)
GradedPoly substituteGrassmann(const GradedPoly& Q, const SlantRing& ring, int jp);
// ch_k(V) from x_1..x_jp, k = 0..T
std::vector<GradedPoly> chOfV(const SlantRing& ring, int jp, int T);

// mu([C]) = gamma_1 nu_1 / 2 - gamma_2 (rank 2 normalization c2 - c1^2/4)
GradedPoly muC(const SlantRing& ring, long gamma1, int T);
// Image of mu_E([C]) under E -> E' + C_m e^{-t}: mu_{E'}([C]) - t - nu_1/2 (rank 2 only)
LaurentInT muCrossing(const SlantRing& ring, long r, int T);
GradedPoly initialIntegrand(const InsertionModel& ins, const SlantRing& ring, long gamma1, int T);

// gamma_i -> 0, nu_1 -> 0
GradedPoly eliminateOnPullbackLocus(const GradedPoly& Q, const SlantRing& ring);
// nu_i (i > r) as imposed by c_{>r}(W) = 0 with ch_k(W) = nu_k + gamma_{k+1}
GradedPoly relationOnLevelOne(int i, long r, const SlantRing& ring, int T);
// apply relationOnLevelOne to every nu_i, r < i <= T
GradedPoly imposeLevelOneRelations(const GradedPoly& Q, long r, const SlantRing& ring);

}  // namespace wc

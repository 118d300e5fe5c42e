#pragma once

#include <string>
#include <vector>

#include "wallcross/laurent.hpp"
#include "wallcross/slant.hpp"

namespace wc {

// Virtual bundle with Chern character in slant variables, twisted by a character whose first
// Chern class is the linear form `weight` in the equivariant variables.
struct EquivKClass {
  long rank = 0;
  std::vector<GradedPoly> ch;  // ch[k] for 0 <= k <= B; ch[0] is the constant rank
  std::vector<Rational> weight;
  std::vector<std::string> tvars;

  int baseTrunc() const { return ch.empty() ? 0 : ch[0].trunc(); }
  bool trivialChern() const;  // ch_k = 0 for k >= 1
};

// Data of the universal sheaf E on the lower space of a wall: rank r, gamma_1 = c1(E).C, level m.
struct WallData {
  SlantRingPtr ring;
  long r = 1;
  long gamma1 = 0;
  int m = 0;
};

std::vector<std::string> tNames(int j);

// N(E, C_m (x) e^{-t_i}):  ch_k = (-1)^k (gamma_{k+1} + m nu_k), weight -t_i
EquivKClass nClassSheafToExc(const WallData& w, const std::vector<std::string>& tvars, size_t i, int B);
// N(C_m (x) e^{-t_i}, E):  ch_k = gamma_{k+1} + (m+1) nu_k, weight +t_i
EquivKClass nClassExcToSheaf(const WallData& w, const std::vector<std::string>& tvars, size_t i, int B);
// N(C_m e^{-t_a}, C_m e^{-t_b}) = -O with weight t_a - t_b
EquivKClass nClassExcToExc(const SlantRingPtr& ring, const std::vector<std::string>& tvars, size_t a,
                           size_t b, int B);

// Eu = sum_i c_i w^{rho-i}; weight must be a multiple of a single t unless the class is a pure
// weight of non-positive rank.
LaurentInT eulerClass(const EquivKClass& K);
LaurentInT inverseEuler(const EquivKClass& K);

// ch_k(K (x) e^{w}) for 0 <= k <= kmax, as polynomials in t.
std::vector<LaurentInT> twistedCh(const EquivKClass& K, int kmax, int totalCap);

// (1/j!) prod_{a != b}(t_a - t_b) / prod_i Eu(N(E,C_m)e^{-t_i}) Eu(N(C_m,E)e^{t_i})
LaurentInT psiKernel(int j, const WallData& w, int B);
LaurentInT vandermonde(const SlantRingPtr& ring, const std::vector<std::string>& tvars, int B);

}  // namespace wc

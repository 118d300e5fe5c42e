#pragma once

#include <map>
#include <vector>

#include "wallcross/graded_poly.hpp"

namespace wc {

// Weakly decreasing, trailing zeros removed.
using Partition = std::vector<int>;
Partition normalizePartition(std::vector<int> parts);
bool isPartition(const std::vector<int>& seq);
int partitionSize(const Partition& p);

using SchurCounts = std::map<Partition, Rational>;
using SchurExpansion = std::map<Partition, GradedPoly>;

// det(x_{seq_i + j - i}) with x_0 = gens[0] (normally 1), x_k = 0 for k < 0 or k >= gens.size().
GradedPoly deltaDet(const std::vector<int>& seq, const std::vector<GradedPoly>& gens);

// Partitions obtained from lambda by adding a horizontal strip of size k, at most maxParts rows
// (maxParts < 0: no bound).
std::vector<Partition> pieri(const Partition& lambda, int k, int maxParts = -1);

// h_1^{a_1} h_2^{a_2} ... in the Delta basis; exps[i] is the exponent of h_{i+1}.
SchurCounts straightenMonomial(const std::vector<int>& exps, int maxParts = -1);

// Straighten the variables hIdx[0..] (h_1, h_2, ...) of p; the coefficients keep the other variables.
SchurExpansion straighten(const GradedPoly& p, const std::vector<size_t>& hIdx, int maxParts = -1);

// pi_* Delta_lambda(c(-V)) = Delta_{lambda - (r - j)}(c(-W)) for the Grassmann bundle of rank-j
// subspaces of a rank-r bundle W; cMinusW[k] = c_k(-W).
GradedPoly grassmannPush(const SchurExpansion& e, int j, int r, const std::vector<GradedPoly>& cMinusW);

struct OracleResult {
  Rational value;
  bool degreeMismatch = false;
};
// Integral over Gr(j, n) of prod sigma_{specials[i]}, by repeated Pieri inside the j x (n-j) box.
OracleResult schubertOracle(int j, int n, const std::vector<int>& specials);

}  // namespace wc

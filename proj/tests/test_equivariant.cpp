#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wallcross/chern.hpp"
#include "wallcross/equivariant.hpp"

using namespace wc;

namespace {

// Eu(K) = w^rho exp( sum_k (-1)^{k-1} (k-1)! ch_k w^{-k} ), expanded directly.
LaurentInT eulerByLog(const EquivKClass& K, size_t var, const Rational& c) {
  int B = K.baseTrunc();
  const auto& vt = K.ch[0].vars();
  LaurentInT L(K.tvars, vt, B);
  for (int k = 1; k <= B; ++k) {
    Rational s = factorial(k - 1) * ((k % 2) ? 1 : -1);
    Rational ck = 1;
    for (int i = 0; i < k; ++i) ck *= c;
    L += LaurentInT::monomial(K.tvars, vt, B, var, -k, s / ck) * K.ch[k];
  }
  // L is nilpotent in the base, so exp terminates after B terms
  LaurentInT e = LaurentInT::fromPoly(GradedPoly::constant(vt, B, 1), K.tvars), p = e;
  for (int n = 1; n <= B; ++n) {
    p = p * L * (Rational(1) / n);
    e += p;
  }
  Rational lead = 1;
  for (long i = 0; i < std::labs(K.rank); ++i) lead *= c;
  if (K.rank < 0) lead = 1 / lead;
  return e * LaurentInT::monomial(K.tvars, vt, B, var, static_cast<int>(K.rank), lead);
}

WallData wall(const SlantRingPtr& R, long r, long g, int m) {
  WallData w;
  w.ring = R;
  w.r = r;
  w.gamma1 = g;
  w.m = m;
  return w;
}

}  // namespace

TEST_CASE("euler class of two Chern roots") {
  auto vt = makeVarTable({{"a", 1}, {"b", 1}});
  const int B = 4;
  auto a = GradedPoly::variable(vt, B, "a"), b = GradedPoly::variable(vt, B, "b");
  std::vector<std::string> tv{"t1", "t2"};
  for (int sgn : {1, -1, 3}) {
    EquivKClass K;
    K.rank = 2;
    K.tvars = tv;
    K.weight = {Rational(0), Rational(sgn)};
    for (int k = 0; k <= B; ++k) K.ch.push_back((a.pow(k) + b.pow(k)) * (1 / factorial(k)));
    auto w = LaurentInT::linear(tv, vt, B, K.weight);
    auto one = LaurentInT::fromPoly(GradedPoly::constant(vt, B, 1), tv);
    auto expected = (w + one * a) * (w + one * b);
    CHECK(eulerClass(K) == expected);
    CHECK(eulerClass(K) * inverseEuler(K) == one);

    // the negative class has the inverse Euler class as its Euler class
    EquivKClass N = K;
    N.rank = -2;
    for (auto& c : N.ch) c *= -1;
    CHECK(inverseEuler(N) == expected);
  }
}

TEST_CASE("euler class agrees with the exp-log expansion") {
  auto R = makeSlantRing(5);
  const int B = 4;
  auto tv = tNames(2);
  for (long r = 1; r <= 3; ++r)
    for (long g = 0; g <= 2; ++g)
      for (int m = -1; m <= 1; ++m) {
        auto w = wall(R, r, g, m);
        for (size_t i = 0; i < 2; ++i) {
          auto A = nClassSheafToExc(w, tv, i, B);
          auto Bc = nClassExcToSheaf(w, tv, i, B);
          CHECK(eulerClass(A) == eulerByLog(A, i, -1));
          CHECK(eulerClass(Bc) == eulerByLog(Bc, i, 1));
          auto one = LaurentInT::fromPoly(R->one(B), tv);
          CHECK(eulerClass(A) * inverseEuler(A) == one);
          CHECK(eulerClass(Bc) * inverseEuler(Bc) == one);
        }
      }
}

TEST_CASE("normal class ranks and leading terms") {
  auto R = makeSlantRing(4);
  const int B = 3;
  auto tv = tNames(1);
  for (long r = 1; r <= 3; ++r)
    for (long g = 0; g <= 2; ++g)
      for (int m = 0; m <= 2; ++m) {
        auto w = wall(R, r, g, m);
        auto A = nClassSheafToExc(w, tv, 0, B);
        auto Bc = nClassExcToSheaf(w, tv, 0, B);
        CHECK(A.rank + Bc.rank == 2 * g + (2 * m + 1) * r);
        // kernel ~ (-1)^{rank A} t^{-(rank A + rank B)}
        auto K = psiKernel(1, w, B);
        long top = -(A.rank + Bc.rank);
        CHECK(K.maxExp(0) == top);
        CHECK(K.coefficient({static_cast<int>(top)}) == R->constant(B, (A.rank % 2) ? -1 : 1));
      }
}

TEST_CASE("rank one kernel by hand") {
  auto R = makeSlantRing(4);
  const int B = 2;
  auto w = wall(R, 1, 0, 0);
  auto K = psiKernel(1, w, B);
  auto t = [&](int e) { return LaurentInT::monomial(tNames(1), R->table(), B, 0, e); };
  CHECK((K * t(0)).residueToPoly() == R->one(B));
  CHECK((K * t(1)).residueToPoly() == -(R->gamma(2, B) * Rational(2) + R->nu(1, B)));
}

TEST_CASE("vandermonde and kernel symmetry") {
  auto R = makeSlantRing(4);
  const int B = 2;
  auto tv = tNames(3);
  auto V = vandermonde(R, tv, B);
  // prod_{a != b} (t_a - t_b) = -prod_{a<b}(t_a - t_b)^2 for three variables
  auto lin = [&](int a, int b) {
    std::vector<Rational> c(3, Rational(0));
    c[a] = 1;
    c[b] = -1;
    return LaurentInT::linear(tv, R->table(), B, c);
  };
  auto sq = lin(0, 1) * lin(0, 2) * lin(1, 2);
  CHECK(V == -(sq * sq));
  for (size_t a = 0; a < 3; ++a)
    for (size_t b = a + 1; b < 3; ++b) CHECK(V.swapVars(a, b) == V);

  auto K = psiKernel(2, wall(R, 2, 1, 0), B);
  CHECK(K.swapVars(0, 1) == K);
}

TEST_CASE("iterated residues of the kernel do not depend on the order") {
  auto R = makeSlantRing(4);
  const int B = 2;
  auto w = wall(R, 2, 0, 0);
  auto K = psiKernel(2, w, B);
  auto tv = tNames(2);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(0, 7);
  for (int trial = 0; trial < 8; ++trial) {
    auto f = LaurentInT::monomial(tv, R->table(), B, 0, e(rng)) *
             LaurentInT::monomial(tv, R->table(), B, 1, e(rng));
    auto I = K * f;
    auto r01 = I.residue(0).residueToPoly();
    auto r10 = I.residue(1).residueToPoly();
    CHECK(r01 == r10);
  }
}

TEST_CASE("zero weight is a localization error") {
  auto R = makeSlantRing(3);
  auto w = wall(R, 1, 0, 0);
  auto A = nClassSheafToExc(w, tNames(1), 0, 2);
  A.weight[0] = 0;
  CHECK_THROWS_AS(inverseEuler(A), std::domain_error);
}

#include <catch2/catch_amalgamated.hpp>

#include "wallcross/chern.hpp"
#include "wallcross/schur.hpp"

using namespace wc;

namespace {

struct HRing {
  static constexpr int N = 8;
  VarTablePtr vt;
  int D;
  std::vector<GradedPoly> h;
  std::vector<size_t> idx;
  explicit HRing(int D_) : D(D_) {
    std::vector<Variable> vs;
    for (int k = 1; k <= N; ++k) vs.push_back({"h" + std::to_string(k), k, false});
    vt = makeVarTable(vs);
    h.push_back(GradedPoly::constant(vt, D, 1));
    for (int k = 1; k <= N; ++k) {
      h.push_back(GradedPoly::variable(vt, D, k - 1));
      idx.push_back(static_cast<size_t>(k - 1));
    }
  }
};

// all partitions of n with at most `parts` parts, each at most cap
std::vector<Partition> partitionsOf(int n, int parts, int cap) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int mx) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == parts) return;
    for (int v = std::min(left, mx); v >= 1; --v) {
      cur.push_back(v);
      rec(left - v, v);
      cur.pop_back();
    }
  };
  rec(n, cap);
  return out;
}

}  // namespace

TEST_CASE("delta determinants") {
  HRing R(6);
  CHECK(deltaDet({1}, R.h) == R.h[1]);
  CHECK(deltaDet({1, 1}, R.h) == R.h[1] * R.h[1] - R.h[2]);
  CHECK(deltaDet({0, 2}, R.h) == R.h[2] - R.h[1] * R.h[1]);
  CHECK(deltaDet({0, 2}, R.h) == -deltaDet({1, 1}, R.h));
  CHECK(deltaDet({}, R.h) == R.h[0]);
  CHECK(deltaDet({-1}, R.h).isZero());
  auto& h = R.h;
  // Delta_{2,1,0}: rows (h2 h3 h4), (h0 h1 h2), (0 0 h0) -> h0 (h2 h1 - h3 h0)
  CHECK(deltaDet({2, 1, 0}, h) == h[2] * h[1] - h[3]);
}

TEST_CASE("straightening examples") {
  CHECK(straightenMonomial({1}) == SchurCounts{{{1}, 1}});
  CHECK(straightenMonomial({2}) == SchurCounts{{{2}, 1}, {{1, 1}, 1}});
  CHECK(straightenMonomial({1, 1}) == SchurCounts{{{3}, 1}, {{2, 1}, 1}});
  CHECK(straightenMonomial({3}, 2) == SchurCounts{{{3}, 1}, {{2, 1}, 2}});
  CHECK(straightenMonomial({}) == SchurCounts{{{}, 1}});
}

TEST_CASE("straighten then evaluate returns the input") {
  HRing R(7);
  for (int n = 0; n <= 6; ++n)
    for (auto& lam : partitionsOf(n, 7, 7)) {
      auto e = straighten(deltaDet(lam, R.h), R.idx);
      REQUIRE(e.size() == 1);
      CHECK(e.begin()->first == lam);
      CHECK(e.begin()->second == GradedPoly::constant(R.vt, R.D, 1));
    }
  // a random h-monomial survives the round trip
  auto p = R.h[2] * R.h[1] * R.h[1] * Rational(3) - R.h[4] + R.h[3] * R.h[2];
  GradedPoly back(R.vt, R.D);
  for (auto& [lam, c] : straighten(p, R.idx)) back += c * deltaDet(lam, R.h);
  CHECK(back == p);
}

TEST_CASE("non-partition sequences are signed straightened values or zero") {
  HRing R(8);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      auto v = deltaDet({a, b}, R.h);
      if (isPartition({a, b})) continue;
      // row swap: (a, b) ~ -(b - 1, a + 1)
      if (b - 1 == a) {
        CHECK(v.isZero());
      } else {
        CHECK(v == -deltaDet({b - 1, a + 1}, R.h));
        auto e = straighten(v, R.idx);
        REQUIRE(e.size() == 1);
        CHECK(e.begin()->first == normalizePartition({b - 1, a + 1}));
        CHECK(e.begin()->second == GradedPoly::constant(R.vt, R.D, -1));
      }
    }
}

TEST_CASE("schubert oracle values") {
  CHECK(schubertOracle(2, 4, {1, 1, 1, 1}).value == 2);
  CHECK(schubertOracle(2, 5, {1, 1, 1, 1, 1, 1}).value == 5);
  for (int n = 1; n <= 6; ++n) CHECK(schubertOracle(1, n, std::vector<int>(n - 1, 1)).value == 1);
  CHECK(schubertOracle(2, 4, {2, 2}).value == 1);
  CHECK(schubertOracle(2, 4, {2, 1, 1}).value == 1);
  auto bad = schubertOracle(2, 4, {1, 1});
  CHECK(bad.degreeMismatch);
  CHECK(bad.value == 0);
}

namespace {
// every top-degree monomial in special classes, pushed with trivial base, against the oracle
int compareWithOracle(int j, int n) {
  HRing R(j * (n - j));
  std::vector<GradedPoly> cMinusW(R.h.size(), GradedPoly(R.vt, R.D));
  cMinusW[0] = GradedPoly::constant(R.vt, R.D, 1);
  int checked = 0;
  for (auto& lam : partitionsOf(j * (n - j), j * (n - j), n - j)) {
    GradedPoly mono = GradedPoly::constant(R.vt, R.D, 1);
    for (int k : lam) mono *= R.h[k];
    auto pushed = grassmannPush(straighten(mono, R.idx, j), j, n, cMinusW);
    auto oracle = schubertOracle(j, n, lam);
    CHECK(pushed == GradedPoly::constant(R.vt, R.D, oracle.value));
    ++checked;
  }
  return checked;
}
}  // namespace

TEST_CASE("grassmann pushforward matches the schubert oracle") {
  CHECK(compareWithOracle(2, 4) > 0);
  CHECK(compareWithOracle(2, 5) > 0);
  CHECK(compareWithOracle(3, 6) > 0);
  CHECK(compareWithOracle(1, 5) > 0);
}

TEST_CASE("projective bundle pushforward gives Segre classes") {
  // j = 1, r = 2: pi_* h_k = c_{k-1}(-W)
  auto vt = makeVarTable({{"w1", 1}, {"w2", 2}, {"h1", 1}});
  const int D = 5;
  std::vector<GradedPoly> cW{GradedPoly::constant(vt, D, 1), GradedPoly::variable(vt, D, "w1"),
                             GradedPoly::variable(vt, D, "w2")};
  for (int k = 3; k <= D; ++k) cW.push_back(GradedPoly(vt, D));
  auto cMinusW = inverseTotalClass(cW);
  size_t h1 = vt->index("h1");
  auto h = GradedPoly::variable(vt, D, h1);
  for (int k = 0; k <= 4; ++k) {
    auto pushed = grassmannPush(straighten(h.pow(k), {h1}, 1), 1, 2, cMinusW);
    if (k == 0)
      CHECK(pushed.isZero());
    else
      CHECK(pushed == cMinusW[k - 1]);
  }
  // Delta_{2,2} over Gr(2,4) with trivial base
  std::vector<GradedPoly> triv{GradedPoly::constant(vt, D, 1)};
  CHECK(grassmannPush({{{2, 2}, GradedPoly::constant(vt, D, 1)}}, 2, 4, triv) ==
        GradedPoly::constant(vt, D, 1));
}

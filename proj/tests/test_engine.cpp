#include <catch2/catch_amalgamated.hpp>

#include "wallcross/engine.hpp"

using namespace wc;

namespace {

ReductionInput rankInput(long r, int j, const Rational& c2, const std::string& ins, int D,
                         KernelMode mode = KernelMode::Iterated) {
  ReductionInput in;
  in.base = projectivePlaneModel();
  in.rank = r;
  in.c1 = DivisorClass::zero(in.base);
  in.c2 = c2;
  in.j = j;
  in.insertion = ins;
  in.D = D;
  in.mode = mode;
  return in;
}

// number of partitions, by the pentagonal-free recursion over the largest part
long partitions(int n) {
  std::vector<std::vector<long>> p(n + 1, std::vector<long>(n + 1, 0));
  for (int k = 0; k <= n; ++k) p[0][k] = 1;
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= n; ++k) p[m][k] = p[m][k - 1] + (m >= k ? p[m - k][k] : 0);
  return p[n][n];
}

EngineContext contextFor(long r, const std::string& ins, int maxDeg, long delta = 0) {
  EngineContext ctx;
  ctx.ring = makeSlantRing(maxDeg, maxDeg);
  ctx.ins = InsertionModel::parse(ins);
  ctx.r = r;
  ctx.delta = delta;
  return ctx;
}

IntegralTerm levelTerm(const ChernCharacter& ch, int level, const GradedPoly& q, int T) {
  IntegralTerm t;
  t.label.kind = SpaceLabel::Kind::MLevel;
  t.label.level = level;
  t.label.ch = ch;
  t.integrand = q;
  t.T = T;
  return t;
}

}  // namespace

TEST_CASE("dimension drop of a wall term") {
  auto X = projectivePlaneModel();
  auto Xh = blowup(X);
  auto c = pullback(fromRankC1C2(X, 2, DivisorClass::zero(X), 5), Xh);
  for (int m = 0; m <= 3; ++m)
    for (int j = 1; j <= 3; ++j) {
      // rank 2, gamma_1 = 0: j^2 + 4j(m + 1/2)
      CHECK(wallDrop(j, 2, m, 0) == j * j + 2 * j * (2 * m + 1));
      auto lower = c - Rational(j) * exceptionalChern(Xh, m);
      CHECK(vdim(c) - vdim(lower) == wallDrop(j, 2, m, 0));
    }
  auto c1 = pullback(fromRankC1C2(X, 3, DivisorClass::basisVector(X, 0), 4), Xh) - Rational(2) * exceptionalChern(Xh, 0);
  CHECK(vdim(c1) - vdim(c1 - exceptionalChern(Xh, 1)) == wallDrop(1, 3, 1, 2));
  CHECK(giesekerThreshold(2, 0, 4) == 1);
  CHECK(giesekerThreshold(2, 0, 2) == 0);
  CHECK(giesekerThreshold(1, 0, 8) == 4);
}

TEST_CASE("Donaldson wall term, twist and pushdown by hand") {
  auto X = projectivePlaneModel();
  auto Xh = blowup(X);
  auto pc = pullback(fromRankC1C2(X, 2, DivisorClass::zero(X), 3), Xh);
  auto ctx = contextFor(2, "opaque:5,mu:[C]^4", 4, vdim(pc) - 4);
  const auto& R = *ctx.ring;
  auto out = wallcrossStep(ctx, levelTerm(pc, 1, muC(R, 0, 4).pow(4), 4));
  REQUIRE(out.size() == 2);
  CHECK(out[0].label.level == 0);
  CHECK(out[0].label.ch == pc);
  const auto& w = out[1];
  CHECK(w.label.ch == pc - exceptionalChern(Xh, 0));
  CHECK(w.label.gamma1() == 1);
  CHECK(w.T == 1);
  // 4 mu(C) - c1/[pt] + 2 ch2/[C] on M^0(p^*c - e)
  auto expect = muC(R, 1, 1) * Rational(4) - R.nu(1, 1) + R.gamma(2, 1) * Rational(2);
  CHECK(w.integrand == expect);

  auto tw = twistStep(ctx, w);
  CHECK(tw.label.level == 1);
  CHECK(tw.label.ch == pc + exceptionalChern(Xh, 0) + pointClass(Xh));
  CHECK(tw.label.gamma1() == -1);
  CHECK(tw.integrand == muC(R, -1, 1) * Rational(4) + R.nu(1, 1) + R.gamma(2, 1) * Rational(2));

  auto pd = pushdownStep(ctx, tw);
  CHECK(pd.label.ch == pc + pointClass(Xh));
  CHECK(pd.T == 0);
  CHECK(pd.integrand == R.constant(0, -2));
}

TEST_CASE("Donaldson blowup coefficients") {
  const Rational expect[] = {1, 0, 0, 0, -2};
  for (int i = 0; i <= 4; ++i) {
    for (auto mode : {KernelMode::Iterated, KernelMode::Symmetrized}) {
      auto d = donaldsonBlowup(i, mode);
      CHECK(d.coefficient == expect[i]);
      CHECK_FALSE(d.residual);
      CHECK(d.reduction.ok());
    }
  }
  CHECK_THROWS(donaldsonBlowup(5));
}

TEST_CASE("rank one chi_y series is the partition generating function") {
  for (int j = 0; j <= 1; ++j) {
    auto res = reduceToBase(rankInput(1, j, 8, "chi_y", 8));
    REQUIRE(res.ok());
    auto y = GradedPoly::variable(res.outVars, 0, "y");
    for (int n = 0; n <= 4; ++n) {
      // X^[N] -> X^[N-n]; the start class p^*c - e sits one step further
      auto it = res.omega.find(n + j);
      REQUIRE(it != res.omega.end());
      CHECK(it->second.withTrunc(0) == y.pow(n) * Rational(partitions(n)));
      CHECK(res.truncation.at(n + j) == 8 - 2 * n);
    }
  }
}

TEST_CASE("Omega is independent of ch2 and of the start level") {
  for (int j = 0; j <= 1; ++j) {
    auto a = reduceToBase(rankInput(2, j, 6, "chi_y", 6));
    auto b = reduceToBase(rankInput(2, j, 8, "chi_y", 6));
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a.omega == b.omega);
    CHECK(a.truncation == b.truncation);
    for (auto& [n, p] : a.omega)
      for (auto& [m, c] : p.terms()) {
        (void)c;
        // only y and nu_2
        CHECK(m.size() == 2);
      }
    auto in = rankInput(2, j, 6, "chi_y", 6);
    in.startLevel = a.startLevel + 1;
    auto higher = reduceToBase(in);
    CHECK(higher.omega == a.omega);
    in.startLevel = a.startLevel + 3;
    CHECK(reduceToBase(in).omega == a.omega);
  }
}

TEST_CASE("rank two chi_y corrections") {
  auto a = reduceToBase(rankInput(2, 0, 6, "chi_y", 6));
  auto y = GradedPoly::variable(a.outVars, 0, "y");
  auto one = GradedPoly::constant(a.outVars, 0, 1);
  CHECK(a.omega.at(0).withTrunc(0) == one);
  CHECK(a.omega.at(1).withTrunc(0) == y + y.pow(2) * Rational(2) + y.pow(3));
  auto b = reduceToBase(rankInput(2, 1, 6, "chi_y", 6));
  CHECK(b.omega.at(1).withTrunc(0) == one + y);
  CHECK(b.omega.at(2).withTrunc(0) == (y.pow(2) + y.pow(3)) * Rational(2));
  // the Euler specialization y = 1 of the chi_y corrections
  auto e = reduceToBase(rankInput(2, 0, 5, "chern", 5));
  CHECK(e.omega.at(1) == GradedPoly::constant(e.outVars, e.truncation.at(1), 4));
}

TEST_CASE("kernel modes agree up to 1/j!") {
  struct Params {
    long r;
    int m;
    long g;
  };
  // formal parameters with small drops so that j = 2, 3 survive
  for (auto p : {Params{1, 0, -1}, Params{3, 0, -2}, Params{2, 0, -1}}) {
    auto ctx = contextFor(p.r, "chi_y", 6);
    ctx.mode = KernelMode::Both;
    const auto& R = *ctx.ring;
    auto Q = R.gamma(2, 6) * R.nu(1, 6) + R.gamma(3, 6) * Rational(3) - R.nu(2, 6) * R.u(6) + R.one(6);
    std::vector<DualModeReport> reps;
    auto terms = wallTerms(ctx, Q, p.m, p.g, 6, &reps, "formal");
    REQUIRE(reps.size() == terms.size());
    for (auto& d : reps) {
      CHECK(d.constant);
      CHECK(d.ratio == 1 / factorial(d.j));
    }
    CHECK(terms.size() >= 2);
  }
}

TEST_CASE("projective bundle pushdown gives Segre classes of W") {
  const int T = 5;
  auto ctx = contextFor(2, "opaque:0", T);
  const auto& R = *ctx.ring;
  // s = c(-W), W of rank 2 with ch_k = nu_k + gamma_{k+1}
  std::vector<GradedPoly> chW(T + 1, R.zero(T));
  chW[0] = R.constant(T, 2);
  for (int k = 1; k <= T; ++k) chW[k] = R.nu(k, T) + R.gamma(k + 1, T);
  auto c = chernFromCh(chW);
  std::vector<GradedPoly> s(T + 1, R.zero(T));
  s[0] = R.one(T);
  // c_{>2}(W) is not imposed on formal slant data, so the full recursion is used
  for (int k = 1; k <= T; ++k)
    for (int i = 1; i <= k; ++i) s[k] -= c[i] * s[k - i];
  auto xi = -R.x(1, T);
  for (int k = 0; k <= 4; ++k) {
    auto pushed = grassmannPushdown(R, xi.pow(k), 2, 1);
    if (k == 0)
      CHECK(pushed.isZero());
    else
      CHECK(pushed == s[k - 1]);
  }
  // through pushdownStep: gamma_2(E) = gamma_2(F) + xi
  auto X = projectivePlaneModel();
  auto Xh = blowup(X);
  auto hat = pullback(fromRankC1C2(X, 2, DivisorClass::zero(X), 6), Xh) + exceptionalChern(Xh, 0);
  for (int k = 1; k <= 4; ++k) {
    // the opaque class fixes the degree: run each power at its own effective degree
    ctx.delta = vdim(hat) - k;
    auto out = pushdownStep(ctx, levelTerm(hat, 1, R.gamma(2, k).pow(k), k));
    CHECK(out.T == k - 1);
    GradedPoly expect = R.zero(T);
    for (int l = 1; l <= k; ++l) expect += binomial(k, l) * (R.gamma(2, T).pow(k - l) * s[l - 1]);
    CHECK(out.integrand == expect.withTrunc(k - 1));
  }
  ctx.delta = vdim(hat) - T;
  CHECK_THROWS(pushdownStep(ctx, levelTerm(hat + exceptionalChern(Xh, 0), 1, R.one(T), T)));
}

TEST_CASE("elimination step") {
  auto X = projectivePlaneModel();
  auto Xh = blowup(X);
  auto pc = pullback(fromRankC1C2(X, 2, DivisorClass::zero(X), 6), Xh);
  const int T = 6;
  auto ctx = contextFor(2, "chi_y", T, vdim(pc) - T);
  const auto& R = *ctx.ring;

  SECTION("integrand in nu_2 only") {
    EliminationCheck chk;
    auto q = R.nu(2, T) * R.nu(2, T) + R.u(T, 2);
    auto out = eliminateStep(ctx, levelTerm(pc, 0, q, T), &chk);
    REQUIRE(!out.empty());
    CHECK(out[0].label.kind == SpaceLabel::Kind::Base);
    CHECK(out[0].integrand == q);
    for (size_t i = 1; i + 1 < out.size(); i += 2) {
      CHECK(out[i].label == out[i + 1].label);
      CHECK(out[i].integrand == out[i + 1].integrand);
      CHECK(out[i].coefficient == -out[i + 1].coefficient);
    }
    CHECK(chk.trivialCancels);
  }
  SECTION("gamma_2 alone") {
    auto out = eliminateStep(ctx, levelTerm(pc, 0, R.gamma(2, T), T));
    CHECK(out[0].integrand.isZero());
  }
  SECTION("higher nu are rewritten and the round trip is linear") {
    EliminationCheck chk;
    auto q = R.nu(3, T) * R.nu(2, T) + R.nu(4, T) + R.gamma(2, T);
    auto out = eliminateStep(ctx, levelTerm(pc, 0, q, T), &chk);
    CHECK(chk.linear);
    CHECK(chk.pairs > 0);
    const auto& p0 = out[0].integrand;
    for (auto& [m, c] : p0.terms()) {
      (void)c;
      for (size_t v = 0; v < m.size(); ++v)
        if (m[v]) CHECK((v == R.uIdx() || (R.isNu(v) && R.nuIndexOf(v) == 2)));
    }
    // outputs are fixed points
    auto again = eliminateStep(ctx, levelTerm(pc, 0, p0, T));
    CHECK(again[0].integrand == p0);
  }
  CHECK_THROWS(eliminateStep(ctx, levelTerm(pc - exceptionalChern(Xh, 0), 0, R.one(T), T)));
}

TEST_CASE("twist step relabels and keeps the degree") {
  auto X = projectivePlaneModel();
  auto Xh = blowup(X);
  auto c = pullback(fromRankC1C2(X, 2, DivisorClass::zero(X), 6), Xh) - Rational(3) * exceptionalChern(Xh, 0);
  auto ctx = contextFor(2, "chi_y", 4, vdim(c) - 4);
  const auto& R = *ctx.ring;
  auto q = R.gamma(3, 4) * R.nu(1, 4) + R.gamma(2, 4);
  auto t = twistStep(ctx, levelTerm(c, 0, q, 4));
  CHECK(t.label.gamma1() == 3 - 2);
  CHECK(t.T == 4);
  CHECK(substituteTwist(t.integrand, R, 1) == q);
}

TEST_CASE("audit log replays the result") {
  auto res = reduceToBase(rankInput(2, 1, 6, "chi_y", 6));
  auto log = res.auditJsonLines();
  CHECK(verifyAuditLog(log, res.toJson()).empty());
  // drop the last eliminate record
  auto pos = log.rfind("\"rule\":\"eliminate\"");
  REQUIRE(pos != std::string::npos);
  auto lineStart = log.rfind('\n', pos);
  auto lineEnd = log.find('\n', pos);
  std::string tampered = log.substr(0, lineStart + 1) + log.substr(lineEnd + 1);
  CHECK_FALSE(verifyAuditLog(tampered, res.toJson()).empty());
  CHECK_FALSE(verifyAuditLog("", res.toJson()).empty());
}

TEST_CASE("reduction is deterministic") {
  auto a = reduceToBase(rankInput(2, 0, 7, "todd,mu:[C]^2", 5));
  auto b = reduceToBase(rankInput(2, 0, 7, "todd,mu:[C]^2", 5));
  CHECK(a.toJson().dump() == b.toJson().dump());
  CHECK(a.auditJsonLines() == b.auditJsonLines());
  CHECK_THROWS(reduceToBase(rankInput(2, 0, 1, "chi_y", 6)));  // vdim below the truncation
}

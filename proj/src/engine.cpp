#include "wallcross/engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "wallcross/schur.hpp"

namespace wc {

KernelMode parseKernelMode(const std::string& s) {
  if (s == "iterated") return KernelMode::Iterated;
  if (s == "symmetrized") return KernelMode::Symmetrized;
  if (s == "both") return KernelMode::Both;
  throw std::invalid_argument("unknown kernel mode '" + s + "'");
}

std::string toString(KernelMode m) {
  switch (m) {
    case KernelMode::Iterated: return "iterated";
    case KernelMode::Symmetrized: return "symmetrized";
    case KernelMode::Both: return "both";
  }
  return "?";
}

namespace {

long toLong(const Rational& q, const char* what) {
  if (q.get_den() != 1) throw std::logic_error(std::string(what) + " is not an integer: " + q.get_str());
  return q.get_num().get_si();
}

// t-exponent -> coefficient of 1/Eu(N(E,C_m)e^{-t}) * 1/Eu(N(C_m,E)e^{t})
std::map<int, GradedPoly> kernelCoefficients(const WallData& w, int B) {
  std::vector<std::string> tv{"t"};
  LaurentInT K = inverseEuler(nClassSheafToExc(w, tv, 0, B)) * inverseEuler(nClassExcToSheaf(w, tv, 0, B));
  std::map<int, GradedPoly> out;
  for (auto& [k, c] : K.coeffs()) out.emplace(k[0], c);
  return out;
}

// sum_e G_e prod_a K[-1 - e_a], where G = F * vand (vand may be null)
GradedPoly residueAgainstKernel(const LaurentInT& F, const LaurentInT* vand, const std::map<int, GradedPoly>& K,
                                const GradedPoly& zero) {
  std::map<LaurentInT::Key, GradedPoly> G;
  auto add = [&](const LaurentInT::Key& e, const GradedPoly& c) {
    for (int ea : e)
      if (!K.count(-1 - ea)) return;
    auto it = G.find(e);
    if (it == G.end())
      G.emplace(e, c);
    else
      it->second += c;
  };
  for (auto& [kf, cf] : F.coeffs()) {
    if (!vand) {
      add(kf, cf);
      continue;
    }
    LaurentInT::Key e(kf.size());
    for (auto& [kv, cv] : vand->coeffs()) {
      for (size_t a = 0; a < e.size(); ++a) e[a] = kf[a] + kv[a];
      add(e, cf * cv.constantTerm());
    }
  }
  GradedPoly out = zero;
  for (auto& [e, g] : G) {
    if (g.isZero()) continue;
    GradedPoly p = g;
    for (int ea : e) {
      p *= K.at(-1 - ea);
      if (p.isZero()) break;
    }
    out += p;
  }
  return out;
}

GradedPoly filtered(const EngineContext& ctx, const GradedPoly& Q, int T) {
  GradedPoly q = Q.withTrunc(T);
  if (ctx.ins.degreeExact()) return q.homogeneousPart(T);
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// labels

long SpaceLabel::rank() const { return toLong(ch.rank, "rank"); }

long SpaceLabel::gamma1() const {
  if (kind == Kind::Base) return 0;
  return toLong(gammaOne(ch), "gamma_1");
}

bool SpaceLabel::operator==(const SpaceLabel& o) const {
  return kind == o.kind && level == o.level && ch == o.ch;
}

bool SpaceLabel::operator<(const SpaceLabel& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (level != o.level) return level < o.level;
  return ch < o.ch;
}

nlohmann::json SpaceLabel::toJson() const {
  nlohmann::json j;
  j["kind"] = kind == Kind::Base ? "base" : "level";
  if (kind == Kind::MLevel) {
    j["level"] = level;
    j["gamma1"] = gamma1();
  }
  j["ch"] = ch.toJson();
  return j;
}

std::string SpaceLabel::toString() const {
  if (kind == Kind::Base) return "X" + ch.toString();
  return "M" + std::to_string(level) + ch.toString();
}

int EngineContext::effectiveDegree(const SpaceLabel& l) const {
  return static_cast<int>(vdim(l.ch, fixedDet) - delta);
}

long wallDrop(int j, long r, int m, long gUp) { return static_cast<long>(j) * j + j * (2 * gUp + (2L * m + 1) * r); }

// ---------------------------------------------------------------------------------------------
// wall operator

std::optional<GradedPoly> wallOmega(const EngineContext& ctx, const GradedPoly& Q, int m, long gUp, int Tup) {
  long B = Tup - wallDrop(1, ctx.r, m, gUp);
  if (B < 0) return std::nullopt;
  const int b = static_cast<int>(B);
  WallData w{ctx.ring, ctx.r, gUp + 1, m};
  std::vector<std::string> tv{"t1"};
  LaurentInT F = substituteDirectSum(Q, *ctx.ring, tv, b, Tup);
  if (ctx.ins.multiplicative()) F *= transformDirectSum(ctx.ins, w, tv, b, Tup);
  return residueAgainstKernel(F, nullptr, kernelCoefficients(w, b), ctx.ring->zero(b));
}

std::optional<GradedPoly> wallResidueSymmetric(const EngineContext& ctx, const GradedPoly& Q, int m, long gUp,
                                               int Tup, int j) {
  long B = Tup - wallDrop(j, ctx.r, m, gUp);
  if (B < 0) return std::nullopt;
  const int b = static_cast<int>(B);
  WallData w{ctx.ring, ctx.r, gUp + j, m};
  auto tv = tNames(j);
  LaurentInT F = substituteDirectSum(Q, *ctx.ring, tv, b, Tup);
  if (ctx.ins.multiplicative()) F *= transformDirectSum(ctx.ins, w, tv, b, Tup);
  LaurentInT V = vandermonde(ctx.ring, tv, b);
  return residueAgainstKernel(F, &V, kernelCoefficients(w, b), ctx.ring->zero(b));
}

nlohmann::json DualModeReport::toJson() const {
  return {{"label", label}, {"j", j}, {"ratio", ratio.get_str()}, {"constant", constant}};
}

namespace {

// symmetrized == ratio * iterated; the ratio is read off the first monomial
DualModeReport compareModes(const GradedPoly& sym, const GradedPoly& iter, int j, const std::string& where) {
  DualModeReport rep;
  rep.label = where;
  rep.j = j;
  if (iter.isZero()) {
    rep.ratio = 0;
    rep.constant = sym.isZero();
    return rep;
  }
  auto& [m, c] = *iter.terms().begin();
  rep.ratio = sym.coeff(m) / c;
  rep.constant = sym == iter * rep.ratio;
  return rep;
}

}  // namespace

std::vector<WallTerm> wallTerms(const EngineContext& ctx, const GradedPoly& Q, int m, long gUp, int Tup,
                                std::vector<DualModeReport>* reports, const std::string& where) {
  std::map<int, WallTerm> iter, sym;
  if (ctx.mode != KernelMode::Symmetrized) {
    GradedPoly W = Q;
    int T = Tup;
    long g = gUp;
    for (int j = 1;; ++j) {
      auto next = wallOmega(ctx, W, m, g, T);
      if (!next) break;
      T -= static_cast<int>(wallDrop(1, ctx.r, m, g));
      ++g;
      W = *next;
      iter[j] = WallTerm{j, T, W * (1 / factorial(j))};
    }
  }
  if (ctx.mode != KernelMode::Iterated) {
    for (int j = 1; wallDrop(j, ctx.r, m, gUp) <= Tup; ++j) {
      auto res = wallResidueSymmetric(ctx, Q, m, gUp, Tup, j);
      Rational f = factorial(j);
      sym[j] = WallTerm{j, static_cast<int>(Tup - wallDrop(j, ctx.r, m, gUp)), *res * (1 / (f * f))};
    }
  }
  const auto& chosen = ctx.mode == KernelMode::Symmetrized ? sym : iter;
  if (ctx.mode == KernelMode::Both && reports) {
    for (auto& [j, s] : sym) {
      auto it = iter.find(j);
      GradedPoly other = it == iter.end() ? s.integrand * Rational(0) : it->second.integrand;
      reports->push_back(compareModes(s.integrand, other, j, where));
    }
  }
  std::vector<WallTerm> out;
  for (auto& [j, w] : chosen) out.push_back(w);
  return out;
}

// ---------------------------------------------------------------------------------------------
// rules

nlohmann::json RuleRecord::toJson() const {
  nlohmann::json j;
  j["rule"] = rule;
  j["labelBefore"] = before.toJson();
  j["labelsAfter"] = nlohmann::json::array();
  j["coefficientDelta"] = nlohmann::json::array();
  for (auto& t : after) {
    j["labelsAfter"].push_back(t.label.toJson());
    j["coefficientDelta"].push_back(
        {{"coefficient", t.coefficient.get_str()}, {"T", t.T}, {"integrand", t.integrand.toString()}});
  }
  for (auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

std::vector<IntegralTerm> wallcrossStep(const EngineContext& ctx, const IntegralTerm& t,
                                        std::vector<DualModeReport>* reports) {
  if (t.label.kind != SpaceLabel::Kind::MLevel || t.label.level < 1)
    throw std::invalid_argument("wallcrossStep: needs a level m+1 >= 1 term");
  const int m = t.label.level - 1;
  const long g = t.label.gamma1();
  std::vector<IntegralTerm> out;
  IntegralTerm same = t;
  same.label.level = m;
  out.push_back(same);
  auto em = exceptionalChern(t.label.ch.surface, m);
  for (auto& w : wallTerms(ctx, t.integrand, m, g, t.T, reports, t.label.toString())) {
    IntegralTerm lo;
    lo.label.kind = SpaceLabel::Kind::MLevel;
    lo.label.level = m;
    lo.label.ch = t.label.ch - Rational(w.j) * em;
    lo.T = w.T;
    if (ctx.effectiveDegree(lo.label) != w.T)
      throw std::logic_error("wallcrossStep: drop formula disagrees with vdim at " + lo.label.toString());
    lo.coefficient = t.coefficient;
    lo.integrand = filtered(ctx, w.integrand, w.T);
    out.push_back(lo);
  }
  return out;
}

IntegralTerm twistStep(const EngineContext& ctx, const IntegralTerm& t) {
  if (t.label.kind != SpaceLabel::Kind::MLevel || t.label.level != 0)
    throw std::invalid_argument("twistStep: needs a level 0 term");
  IntegralTerm o = t;
  o.label.level = 1;
  o.label.ch = twist(t.label.ch, exceptionalCurve(t.label.ch.surface));
  if (ctx.effectiveDegree(o.label) != t.T) throw std::logic_error("twistStep: vdim changed under twist");
  // E = E'(-C)
  o.integrand = substituteTwist(t.integrand, *ctx.ring, -1) * transformTwist(ctx.ins, *ctx.ring, t.T);
  return o;
}

GradedPoly grassmannPushdown(const SlantRing& ring, const GradedPoly& Q, long r, int jp) {
  const int T = Q.trunc();
  const int nx = std::min(T, ring.xCount());
  // x_k = c_k(V) in terms of h_k = c_k(-V), stored in the same slots
  std::vector<GradedPoly> h(T + 1, ring.zero(T));
  h[0] = ring.one(T);
  for (int k = 1; k <= nx; ++k) h[k] = ring.x(k, T);
  auto cV = inverseTotalClass(h);
  std::vector<std::optional<GradedPoly>> im(ring.table()->size());
  std::vector<size_t> hIdx;
  for (int k = 1; k <= nx; ++k) {
    im[ring.xIdx(k)] = cV[k];
    hIdx.push_back(ring.xIdx(k));
  }
  GradedPoly Qh = Q.substitute(im, ring.table(), T);
  auto e = straighten(Qh, hIdx, jp);
  std::vector<GradedPoly> chW(T + 1, ring.zero(T));
  chW[0] = ring.constant(T, r);
  for (int k = 1; k <= T; ++k) chW[k] = ring.nu(k, T) + ring.gamma(k + 1, T);
  auto cMinusW = inverseTotalClass(chernFromCh(chW));
  return grassmannPush(e, jp, static_cast<int>(r), cMinusW);
}

IntegralTerm pushdownStep(const EngineContext& ctx, const IntegralTerm& t) {
  if (t.label.kind != SpaceLabel::Kind::MLevel || t.label.level != 1)
    throw std::invalid_argument("pushdownStep: needs a level 1 term");
  const long g = t.label.gamma1();
  const long jp = -g;
  if (jp <= 0 || jp >= ctx.r) throw std::invalid_argument("pushdownStep: need 0 < j < r");
  IntegralTerm o = t;
  o.label.ch = t.label.ch - Rational(jp) * exceptionalChern(t.label.ch.surface, 0);
  o.T = ctx.effectiveDegree(o.label);
  if (o.T != t.T - jp * (ctx.r - jp)) throw std::logic_error("pushdownStep: Grassmann fiber dimension mismatch");
  GradedPoly Q = substituteGrassmann(t.integrand, *ctx.ring, static_cast<int>(jp));
  Q *= transformGrassmann(ctx.ins, *ctx.ring, ctx.r, static_cast<int>(jp), t.T);
  if (o.T < 0) {
    o.integrand = ctx.ring->zero(0);
    return o;
  }
  o.integrand = filtered(ctx, grassmannPushdown(*ctx.ring, Q, ctx.r, static_cast<int>(jp)), o.T);
  return o;
}

std::vector<IntegralTerm> eliminateStep(const EngineContext& ctx, const IntegralTerm& t, EliminationCheck* check,
                                        std::vector<DualModeReport>* reports) {
  if (t.label.kind != SpaceLabel::Kind::MLevel || t.label.level != 0 || t.label.gamma1() != 0)
    throw std::invalid_argument("eliminateStep: needs a pullback class at level 0");
  const GradedPoly& Q = t.integrand;
  GradedPoly Qt = imposeLevelOneRelations(Q, ctx.r, *ctx.ring);
  std::vector<IntegralTerm> out;
  IntegralTerm base;
  base.label.kind = SpaceLabel::Kind::Base;
  base.label.ch = pushforwardToBase(t.label.ch);
  base.T = ctx.effectiveDegree(base.label);
  if (base.T != t.T) throw std::logic_error("eliminateStep: vdim differs on the base");
  base.coefficient = t.coefficient;
  base.integrand = eliminateOnPullbackLocus(Qt, *ctx.ring);
  out.push_back(base);

  // M^0 -> M^1 with Qt, then M^1 -> M^0 with Q
  std::string where = t.label.toString();
  auto up = wallTerms(ctx, Qt, 0, 0, t.T, reports, where);
  auto down = wallTerms(ctx, Q, 0, 0, t.T, reports, where);
  std::map<int, GradedPoly> diff;
  const bool trivial = Qt == Q;
  if (check && !trivial)
    for (auto& w : wallTerms(ctx, Qt - Q, 0, 0, t.T, nullptr)) diff.emplace(w.j, w.integrand);
  auto e0 = exceptionalChern(t.label.ch.surface, 0);
  std::map<int, std::pair<const WallTerm*, const WallTerm*>> pairs;
  for (auto& w : up) pairs[w.j].first = &w;
  for (auto& w : down) pairs[w.j].second = &w;
  for (auto& [j, pr] : pairs) {
    if (!pr.first || !pr.second) throw std::logic_error("eliminateStep: unmatched wall term");
    IntegralTerm a;
    a.label.kind = SpaceLabel::Kind::MLevel;
    a.label.level = 0;
    a.label.ch = t.label.ch - Rational(j) * e0;
    a.T = pr.first->T;
    a.coefficient = t.coefficient;
    a.integrand = filtered(ctx, pr.first->integrand, a.T);
    IntegralTerm b = a;
    b.coefficient = -t.coefficient;
    b.integrand = filtered(ctx, pr.second->integrand, a.T);
    if (check) {
      ++check->pairs;
      GradedPoly net = pr.first->integrand - pr.second->integrand;
      if (trivial) {
        if (!net.isZero()) check->trivialCancels = false;
      } else {
        auto it = diff.find(j);
        GradedPoly expect = it == diff.end() ? net * Rational(0) : it->second;
        if (net != expect) check->linear = false;
      }
    }
    out.push_back(a);
    out.push_back(b);
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// reduction

int giesekerThreshold(long r, long gamma1, int T) {
  if (gamma1 < 0) throw std::invalid_argument("giesekerThreshold: negative gamma_1");
  int m = 0;
  while (wallDrop(1, r, m, gamma1) <= T) ++m;
  return m;
}

nlohmann::json ReductionInput::toJson() const {
  nlohmann::json j;
  j["surface"] = base ? base->toJson() : nlohmann::json();
  j["rank"] = rank;
  std::vector<std::string> c1s;
  for (auto& q : c1.v) c1s.push_back(q.get_str());
  j["c1"] = c1s;
  j["c2"] = c2.get_str();
  j["j"] = this->j;
  j["insertion"] = insertion;
  j["D"] = D;
  j["mode"] = toString(mode);
  if (startLevel) j["startLevel"] = *startLevel;
  return j;
}

nlohmann::json ReductionResult::toJson() const {
  nlohmann::json j;
  j["startLevel"] = startLevel;
  j["startT"] = startT;
  nlohmann::json om = nlohmann::json::object();
  for (auto& [n, p] : omega) {
    om[std::to_string(n)] = {{"T", truncation.at(n)}, {"series", p.toJson()}, {"text", p.toString()}};
  }
  j["omega"] = om;
  j["dualMode"] = nlohmann::json::array();
  for (auto& d : dualReports) j["dualMode"].push_back(d.toJson());
  j["elimination"] = {{"linear", elimination.linear},
                      {"trivialCancels", elimination.trivialCancels},
                      {"pairs", elimination.pairs}};
  j["problems"] = problems;
  return j;
}

std::string ReductionResult::auditJsonLines() const {
  std::ostringstream os;
  for (auto& r : audit) os << r.toJson().dump() << "\n";
  return os.str();
}

namespace {

VarTablePtr omegaTable(long r) {
  std::vector<Variable> vs{{"y", 0, false}};
  for (long i = 2; i <= r; ++i) vs.push_back({"nu" + std::to_string(i), static_cast<int>(i), false});
  return makeVarTable(vs);
}

// u -> 1 - y; only nu_2..nu_r may remain
GradedPoly toOmega(const SlantRing& ring, const GradedPoly& q, long r, const VarTablePtr& out,
                   std::vector<std::string>& problems, int n) {
  const int T = q.trunc();
  GradedPoly res(out, T);
  GradedPoly oneMinusY = GradedPoly::constant(out, T, 1) - GradedPoly::variable(out, T, "y");
  for (auto& [m, c] : q.terms()) {
    GradedPoly term = GradedPoly::constant(out, T, c);
    for (size_t v = 0; v < m.size(); ++v) {
      if (!m[v]) continue;
      if (v == ring.uIdx()) {
        if (m[v] < 0) {
          problems.push_back("Omega_" + std::to_string(n) + " has a negative power of u");
          return res;
        }
        term *= oneMinusY.pow(m[v]);
      } else if (ring.isNu(v) && ring.nuIndexOf(v) >= 2 && ring.nuIndexOf(v) <= r) {
        term *= GradedPoly::variable(out, T, "nu" + std::to_string(ring.nuIndexOf(v)), m[v]);
      } else {
        problems.push_back("Omega_" + std::to_string(n) + " contains " + (*ring.table())[v].name);
        return res;
      }
    }
    res += term;
  }
  return res;
}

struct OrderKey {
  int T;
  long phi;  // gamma_1 + r * level
  int atZero;
  SpaceLabel label;
  bool operator<(const OrderKey& o) const {
    if (T != o.T) return T > o.T;
    if (phi != o.phi) return phi > o.phi;
    if (atZero != o.atZero) return atZero > o.atZero;
    return o.label < label;
  }
};

}  // namespace

ReductionResult reduceToBase(const ReductionInput& in) {
  if (!in.base) throw std::invalid_argument("reduceToBase: no surface");
  if (in.rank < 1) throw std::invalid_argument("reduceToBase: rank must be positive");
  if (in.j < 0) throw std::invalid_argument("reduceToBase: negative exceptional multiplicity");
  auto Xh = blowup(in.base);
  ChernCharacter c = fromRankC1C2(in.base, static_cast<int>(in.rank), in.c1, in.c2);
  ChernCharacter start = pullback(c, Xh) - Rational(in.j) * exceptionalChern(Xh, 0);
  if (!isAdmissible(start, static_cast<int>(in.rank))) throw std::invalid_argument("reduceToBase: non-admissible class");
  auto ins = InsertionModel::parse(in.insertion);
  const long vd = vdim(start);
  long T0;
  if (ins.multiplicative())
    T0 = in.D;
  else if (ins.opaqueDegree)
    T0 = vd - *ins.opaqueDegree;
  else
    T0 = ins.muPower;
  if (T0 < 0 || T0 > vd) throw std::invalid_argument("reduceToBase: truncation outside [0, vdim]");

  EngineContext ctx;
  ctx.ring = makeSlantRing(std::max<int>(1, static_cast<int>(T0)), std::max<int>(1, static_cast<int>(T0)));
  ctx.ins = ins;
  ctx.mode = in.mode;
  ctx.r = in.rank;
  ctx.delta = vd - T0;

  ReductionResult res;
  res.outVars = omegaTable(in.rank);
  res.startT = static_cast<int>(T0);
  const long g0 = toLong(gammaOne(start), "gamma_1");
  res.startLevel = in.startLevel ? *in.startLevel : giesekerThreshold(in.rank, g0, res.startT);

  IntegralTerm first;
  first.label.kind = SpaceLabel::Kind::MLevel;
  first.label.level = res.startLevel;
  first.label.ch = start;
  first.T = res.startT;
  first.integrand = filtered(ctx, initialIntegrand(ins, *ctx.ring, g0, res.startT), res.startT);
  res.audit.push_back({"start", first.label, {first}});

  auto keyOf = [&](const IntegralTerm& t) {
    long lv = t.label.level;
    return OrderKey{t.T, t.label.gamma1() + ctx.r * lv, lv == 0 ? 1 : 0, t.label};
  };
  std::map<OrderKey, IntegralTerm> work;
  std::map<SpaceLabel, IntegralTerm> baseTerms;
  auto push = [&](const OrderKey& from, IntegralTerm t) {
    if (t.T < 0 || t.integrand.isZero() || t.coefficient == 0) return;
    t.integrand *= t.coefficient;
    t.coefficient = 1;
    if (t.label.kind == SpaceLabel::Kind::Base) {
      auto it = baseTerms.find(t.label);
      if (it == baseTerms.end())
        baseTerms.emplace(t.label, t);
      else
        it->second.integrand += t.integrand;
      return;
    }
    OrderKey k = keyOf(t);
    if (!(from < k)) throw std::logic_error("reduceToBase: measure did not descend at " + t.label.toString());
    auto it = work.find(k);
    if (it == work.end())
      work.emplace(k, t);
    else
      it->second.integrand += t.integrand;
  };
  {
    OrderKey top = keyOf(first);
    top.T += 1;
    push(top, first);
  }

  while (!work.empty()) {
    auto node = work.extract(work.begin());
    const OrderKey key = node.key();
    IntegralTerm t = std::move(node.mapped());
    if (t.integrand.isZero()) continue;
    const int lv = t.label.level;
    const long g = t.label.gamma1();
    RuleRecord rec;
    rec.before = t.label;
    if (lv >= 1 && g >= 0) {
      rec.rule = "wallcross";
      rec.after = wallcrossStep(ctx, t, &res.dualReports);
    } else if (lv == 1 && g < 0) {
      rec.rule = "pushdown";
      rec.after = {pushdownStep(ctx, t)};
    } else if (lv == 0 && g >= 1) {
      rec.rule = "twist";
      rec.after = {twistStep(ctx, t)};
    } else if (lv == 0 && g == 0) {
      rec.rule = "eliminate";
      rec.after = eliminateStep(ctx, t, &res.elimination, &res.dualReports);
    } else {
      throw std::logic_error("reduceToBase: no rule applies to " + t.label.toString());
    }
    for (auto& o : rec.after) {
      if (o.label.kind != SpaceLabel::Kind::Base) continue;
      long n = toLong(o.label.ch.ch2 - c.ch2, "base shift");
      std::vector<std::string> ignored;
      GradedPoly q = o.integrand * o.coefficient;
      rec.extra["n"] = n;
      rec.extra["omegaDelta"] = toOmega(*ctx.ring, q, in.rank, res.outVars, ignored, static_cast<int>(n)).toJson();
    }
    for (auto& o : rec.after) push(key, o);
    res.audit.push_back(std::move(rec));
  }

  const Rational ch2c = c.ch2;
  for (auto& [label, t] : baseTerms) {
    long n = toLong(label.ch.ch2 - ch2c, "base shift");
    auto om = toOmega(*ctx.ring, t.integrand, in.rank, res.outVars, res.problems, static_cast<int>(n));
    if (om.isZero()) continue;
    res.omega[static_cast<int>(n)] = om;
    res.truncation[static_cast<int>(n)] = t.T;
  }
  for (auto& d : res.dualReports)
    if (!d.constant) res.problems.push_back("kernel modes disagree by a non-constant factor at " + d.label);
  if (!res.elimination.linear) res.problems.push_back("round-trip wall terms do not cancel linearly");
  if (!res.elimination.trivialCancels) res.problems.push_back("round-trip wall terms of an unchanged integrand do not cancel");
  return res;
}

std::vector<std::string> verifyAuditLog(const std::string& jsonLines, const nlohmann::json& result) {
  std::vector<std::string> problems;
  std::istringstream is(jsonLines);
  std::string line;
  std::set<std::string> produced, consumed;
  std::map<long, GradedPoly> sums;
  size_t n = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    ++n;
    const std::string where = "audit line " + std::to_string(n);
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
      const std::string before = rec.at("labelBefore").dump();
      if (rec.at("rule") == "start") {
        produced.insert(before);
        continue;
      }
      if (!produced.count(before)) problems.push_back(where + ": rule applied to a label that was never produced");
      if (!consumed.insert(before).second) problems.push_back(where + ": label reduced twice");
      for (auto& l : rec.at("labelsAfter"))
        if (l.value("kind", "") != "base") produced.insert(l.dump());
      if (rec.contains("omegaDelta")) {
        long k = rec.at("n").get<long>();
        GradedPoly d = GradedPoly::fromJson(rec.at("omegaDelta"));
        auto it = sums.find(k);
        if (it == sums.end())
          sums.emplace(k, d);
        else
          it->second += d;
      }
    } catch (const std::exception& e) {
      problems.push_back(where + ": " + e.what());
    }
  }
  if (n == 0) problems.push_back("empty audit log");
  try {
    const auto& om = result.at("omega");
    for (auto& [k, v] : om.items()) {
      GradedPoly want = GradedPoly::fromJson(v.at("series"));
      auto it = sums.find(std::stol(k));
      if (it == sums.end() || !(it->second.withTrunc(want.trunc()) == want))
        problems.push_back("Omega_" + k + " is not re-derived by the audit log");
    }
    for (auto& [k, p] : sums)
      if (!p.isZero() && !om.contains(std::to_string(k)))
        problems.push_back("audit log produces Omega_" + std::to_string(k) + " missing from the result");
  } catch (const std::exception& e) {
    problems.push_back(std::string("result: ") + e.what());
  }
  return problems;
}

DonaldsonResult donaldsonBlowup(int powerOfC, KernelMode mode) {
  if (powerOfC < 0 || powerOfC > 4) throw std::invalid_argument("donaldsonBlowup: power must be in 0..4");
  ReductionInput in;
  in.base = projectivePlaneModel();
  in.rank = 2;
  in.c1 = DivisorClass::zero(in.base);
  in.c2 = 3;  // vdim 9
  in.j = 0;
  const long vd = 9;
  in.insertion = "opaque:" + std::to_string(vd - powerOfC);
  if (powerOfC > 0) in.insertion += ",mu:[C]^" + std::to_string(powerOfC);
  in.mode = mode;
  DonaldsonResult out;
  out.reduction = reduceToBase(in);
  out.coefficient = 0;
  for (auto& [n, p] : out.reduction.omega) {
    if (out.reduction.truncation.at(n) == 0)
      out.coefficient += p.constantTerm();
    else if (!p.isZero())
      out.residual = true;
  }
  return out;
}

}  // namespace wc

#include "wallcross/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wc {

LaurentInT::LaurentInT(std::vector<std::string> tvars, VarTablePtr base, int baseTrunc,
                       int totalCap)
    : tvars_(std::move(tvars)), base_(std::move(base)), baseTrunc_(baseTrunc), totalCap_(totalCap) {}

LaurentInT LaurentInT::fromPoly(const GradedPoly& p, std::vector<std::string> tvars, int totalCap) {
  LaurentInT r(tvars, p.vars(), p.trunc(), totalCap);
  r.addTerm(Key(r.tcount(), 0), p);
  return r;
}

LaurentInT LaurentInT::monomial(std::vector<std::string> tvars, VarTablePtr base, int baseTrunc,
                                size_t var, int e, const Rational& c, int totalCap) {
  LaurentInT r(std::move(tvars), base, baseTrunc, totalCap);
  Key k(r.tcount(), 0);
  k.at(var) = e;
  r.addTerm(k, GradedPoly::constant(base, baseTrunc, c));
  return r;
}

LaurentInT LaurentInT::linear(std::vector<std::string> tvars, VarTablePtr base, int baseTrunc,
                              const std::vector<Rational>& w, int totalCap) {
  LaurentInT r(std::move(tvars), base, baseTrunc, totalCap);
  if (w.size() != r.tcount()) throw std::invalid_argument("linear form length");
  for (size_t i = 0; i < w.size(); ++i) {
    Key k(r.tcount(), 0);
    k[i] = 1;
    r.addTerm(k, GradedPoly::constant(base, baseTrunc, w[i]));
  }
  return r;
}

size_t LaurentInT::termCount() const {
  size_t n = 0;
  for (auto& [k, c] : coeffs_) n += c.size();
  return n;
}

int LaurentInT::keyDegree(const Key& k) const { return std::accumulate(k.begin(), k.end(), 0); }

GradedPoly LaurentInT::coefficient(const Key& k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? zeroPoly() : it->second;
}

void LaurentInT::addTerm(const Key& k, const GradedPoly& c) {
  if (k.size() != tvars_.size()) throw std::invalid_argument("t-exponent length");
  if (c.isZero()) return;
  requireSameTable(c.vars(), base_);
  int room = totalCap_ == kNoCap ? kNoCap : totalCap_ - keyDegree(k);
  if (room < 0) return;
  int lim = std::min(room, baseTrunc_);
  GradedPoly cc = c;
  if (c.trunc() != baseTrunc_ || c.maxDegree() > lim) cc = c.withTrunc(lim).withTrunc(baseTrunc_);
  if (cc.isZero()) return;
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) {
    coeffs_.emplace(k, std::move(cc));
  } else {
    it->second += cc;
    if (it->second.isZero()) coeffs_.erase(it);
  }
}

void LaurentInT::checkCompatible(const LaurentInT& o) const {
  if (tvars_ != o.tvars_) throw std::invalid_argument("mismatched t-variable lists");
  requireSameTable(base_, o.base_);
  if (baseTrunc_ != o.baseTrunc_) throw std::invalid_argument("mismatched base truncation degrees");
}

LaurentInT& LaurentInT::operator+=(const LaurentInT& o) {
  if (!base_) return *this = o;
  if (!o.base_) return *this;
  checkCompatible(o);
  for (auto& [k, c] : o.coeffs_) addTerm(k, c);
  return *this;
}

LaurentInT& LaurentInT::operator-=(const LaurentInT& o) {
  if (!o.base_) return *this;
  if (!base_) return *this = -o;
  checkCompatible(o);
  for (auto& [k, c] : o.coeffs_) addTerm(k, -c);
  return *this;
}

LaurentInT& LaurentInT::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, p] : coeffs_) p *= c;
  return *this;
}

LaurentInT& LaurentInT::operator*=(const GradedPoly& p) {
  CoeffMap old;
  old.swap(coeffs_);
  for (auto& [k, c] : old) addTerm(k, c * p);
  return *this;
}

LaurentInT LaurentInT::operator-() const {
  LaurentInT r = *this;
  for (auto& [k, c] : r.coeffs_) c = -c;
  return r;
}

LaurentInT operator*(const LaurentInT& a, const LaurentInT& b) {
  a.checkCompatible(b);
  LaurentInT r(a.tvars_, a.base_, a.baseTrunc_, std::min(a.totalCap_, b.totalCap_));
  LaurentInT::Key k(a.tcount());
  for (auto& [ka, ca] : a.coeffs_) {
    for (auto& [kb, cb] : b.coeffs_) {
      for (size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
      if (r.totalCap_ != kNoCap) {
        int room = r.totalCap_ - r.keyDegree(k);
        if (room < 0) continue;
        if (room < a.baseTrunc_) {
          r.addTerm(k, ca.withTrunc(room).withTrunc(a.baseTrunc_) * cb);
          continue;
        }
      }
      r.addTerm(k, ca * cb);
    }
  }
  return r;
}

LaurentInT LaurentInT::pow(int n) const {
  if (n < 0) throw std::domain_error("negative power; use invertAtInfinity");
  LaurentInT r = fromPoly(GradedPoly::constant(base_, baseTrunc_, 1), tvars_, totalCap_);
  LaurentInT b = *this;
  while (n > 0) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

LaurentInT LaurentInT::withTotalCap(int cap) const {
  LaurentInT r(tvars_, base_, baseTrunc_, std::min(cap, totalCap_));
  for (auto& [k, c] : coeffs_) r.addTerm(k, c);
  return r;
}

LaurentInT LaurentInT::withExpAbove(size_t var, int e) const {
  LaurentInT r(tvars_, base_, baseTrunc_, totalCap_);
  for (auto& [k, c] : coeffs_)
    if (k.at(var) <= e) r.coeffs_.emplace(k, c);
  return r;
}

LaurentInT LaurentInT::withBaseTrunc(int D) const {
  LaurentInT r(tvars_, base_, D, totalCap_);
  for (auto& [k, c] : coeffs_) r.addTerm(k, c.withTrunc(D));
  return r;
}

int LaurentInT::maxExp(size_t var) const {
  int m = INT_MIN;
  for (auto& [k, c] : coeffs_) m = std::max(m, k.at(var));
  return m;
}

int LaurentInT::minExp(size_t var) const {
  int m = INT_MAX;
  for (auto& [k, c] : coeffs_) m = std::min(m, k.at(var));
  return m;
}

LaurentInT LaurentInT::residue(size_t var) const {
  std::vector<std::string> rest = tvars_;
  rest.erase(rest.begin() + static_cast<long>(var));
  LaurentInT r(rest, base_, baseTrunc_);
  for (auto& [k, c] : coeffs_) {
    if (k.at(var) != -1) continue;
    Key kk = k;
    kk.erase(kk.begin() + static_cast<long>(var));
    r.addTerm(kk, c);
  }
  return r;
}

GradedPoly LaurentInT::residueToPoly() const {
  if (tcount() != 1) throw std::invalid_argument("residueToPoly needs exactly one t-variable");
  return coefficient(Key{-1});
}

LaurentInT LaurentInT::rescale(size_t var, const Rational& c) const {
  if (c == 0) throw std::invalid_argument("rescale by zero");
  LaurentInT r(tvars_, base_, baseTrunc_, totalCap_);
  for (auto& [k, p] : coeffs_) {
    Rational f = 1;
    int e = k.at(var);
    for (int i = 0; i < std::abs(e); ++i) f *= c;
    if (e < 0) f = 1 / f;
    r.addTerm(k, p * f);
  }
  return r;
}

LaurentInT LaurentInT::swapVars(size_t a, size_t b) const {
  LaurentInT r(tvars_, base_, baseTrunc_, totalCap_);
  for (auto& [k, p] : coeffs_) {
    Key kk = k;
    std::swap(kk.at(a), kk.at(b));
    r.addTerm(kk, p);
  }
  return r;
}

LaurentInT LaurentInT::relabel(const std::vector<std::string>& newVars) const {
  std::vector<size_t> pos(tvars_.size());
  for (size_t i = 0; i < tvars_.size(); ++i) {
    auto it = std::find(newVars.begin(), newVars.end(), tvars_[i]);
    if (it == newVars.end()) throw std::invalid_argument("relabel: missing " + tvars_[i]);
    pos[i] = static_cast<size_t>(it - newVars.begin());
  }
  LaurentInT r(newVars, base_, baseTrunc_, totalCap_);
  for (auto& [k, p] : coeffs_) {
    Key kk(newVars.size(), 0);
    for (size_t i = 0; i < k.size(); ++i) kk[pos[i]] = k[i];
    r.addTerm(kk, p);
  }
  return r;
}

bool LaurentInT::operator==(const LaurentInT& o) const {
  if (tvars_ != o.tvars_) return false;
  if (coeffs_.size() != o.coeffs_.size()) return false;
  for (auto& [k, c] : coeffs_) {
    auto it = o.coeffs_.find(k);
    if (it == o.coeffs_.end() || !(it->second == c)) return false;
  }
  return true;
}

std::string LaurentInT::toString() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.toString() << ")";
    for (size_t i = 0; i < tvars_.size(); ++i)
      if (it->first[i] != 0) os << "*" << tvars_[i] << "^" << it->first[i];
  }
  return os.str();
}

LaurentInT invertAtInfinity(const LaurentInT& f) {
  if (f.tcount() != 1) throw std::invalid_argument("invertAtInfinity: one t-variable expected");
  if (f.isZero()) throw std::domain_error("invertAtInfinity: zero series");
  auto lead = f.coeffs().rbegin();
  int k = lead->first[0];
  const GradedPoly& ck = lead->second;
  if (!ck.isConstant()) throw std::domain_error("invertAtInfinity: leading coefficient is not a unit rational");
  Rational c = ck.constantTerm();
  // f = c t^k (1 + g)
  LaurentInT g(f.tvars(), f.base(), f.baseTrunc());
  for (auto& [key, p] : f.coeffs()) {
    if (key[0] == k) continue;
    GradedPoly q = p * (1 / c);
    if (q.minDegree() == 0)
      throw std::domain_error("invertAtInfinity: non-nilpotent lower-order coefficient");
    g.addTerm({key[0] - k}, q);
  }
  LaurentInT one = LaurentInT::fromPoly(GradedPoly::constant(f.base(), f.baseTrunc(), 1), f.tvars());
  LaurentInT sum = one;
  LaurentInT term = one;
  LaurentInT neg = -g;
  for (int n = 1; n <= f.baseTrunc() + 1; ++n) {
    term = term * neg;
    if (term.isZero()) break;
    sum += term;
  }
  return sum * LaurentInT::monomial(f.tvars(), f.base(), f.baseTrunc(), 0, -k, 1 / c);
}

LaurentInT residuePairing(const LaurentInT& a, const LaurentInT& b, size_t var) {
  if (a.tvars() != b.tvars()) throw std::invalid_argument("residuePairing: t-variable lists");
  std::vector<std::string> rest = a.tvars();
  rest.erase(rest.begin() + static_cast<long>(var));
  LaurentInT r(rest, a.base(), a.baseTrunc());
  // group b by exponent of var
  std::map<int, std::vector<const std::pair<const LaurentInT::Key, GradedPoly>*>> bBy;
  for (auto& kv : b.coeffs()) bBy[kv.first[var]].push_back(&kv);
  std::map<LaurentInT::Key, GradedPoly> acc;
  for (auto& [ka, ca] : a.coeffs()) {
    auto it = bBy.find(-1 - ka[var]);
    if (it == bBy.end()) continue;
    for (auto* kvb : it->second) {
      LaurentInT::Key k(rest.size());
      for (size_t i = 0, j = 0; i < ka.size(); ++i) {
        if (i == var) continue;
        k[j++] = ka[i] + kvb->first[i];
      }
      GradedPoly prod = ca * kvb->second;
      auto ai = acc.find(k);
      if (ai == acc.end()) acc.emplace(k, std::move(prod));
      else ai->second += prod;
    }
  }
  for (auto& [k, c] : acc) r.addTerm(k, c);
  return r;
}

}  // namespace wc

#include "wallcross/graded_poly.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>

namespace wc {

VarTable::VarTable(std::vector<Variable> vars) : vars_(std::move(vars)) {
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].laurent && vars_[i].degree != 0)
      throw std::invalid_argument("laurent variable must have degree 0: " + vars_[i].name);
    if (vars_[i].degree < 0) throw std::invalid_argument("negative degree: " + vars_[i].name);
    if (!byName_.emplace(vars_[i].name, i).second)
      throw std::invalid_argument("duplicate variable " + vars_[i].name);
  }
}

std::optional<size_t> VarTable::find(const std::string& name) const {
  auto it = byName_.find(name);
  if (it == byName_.end()) return std::nullopt;
  return it->second;
}

size_t VarTable::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw std::out_of_range("unknown variable " + name);
  return *i;
}

bool VarTable::operator==(const VarTable& o) const {
  if (vars_.size() != o.vars_.size()) return false;
  for (size_t i = 0; i < vars_.size(); ++i) {
    const auto &a = vars_[i], &b = o.vars_[i];
    if (a.name != b.name || a.degree != b.degree || a.laurent != b.laurent) return false;
  }
  return true;
}

VarTablePtr makeVarTable(std::vector<Variable> vars) {
  return std::make_shared<const VarTable>(std::move(vars));
}

void requireSameTable(const VarTablePtr& a, const VarTablePtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw std::invalid_argument("incompatible variable tables");
}

GradedPoly::GradedPoly(VarTablePtr vars, int trunc) : vars_(std::move(vars)), trunc_(trunc) {}

GradedPoly GradedPoly::constant(VarTablePtr vars, int trunc, const Rational& c) {
  GradedPoly p(vars, trunc);
  p.addTerm(Mono(vars->size(), 0), c);
  return p;
}

GradedPoly GradedPoly::variable(VarTablePtr vars, int trunc, size_t idx, int power) {
  GradedPoly p(vars, trunc);
  Mono m(vars->size(), 0);
  m.at(idx) = power;
  p.addTerm(std::move(m), 1);
  return p;
}

GradedPoly GradedPoly::variable(VarTablePtr vars, int trunc, const std::string& name, int power) {
  size_t i = vars->index(name);
  return variable(std::move(vars), trunc, i, power);
}

int GradedPoly::degreeOf(const Mono& m) const {
  int d = 0;
  for (size_t i = 0; i < m.size(); ++i) d += m[i] * (*vars_)[i].degree;
  return d;
}

int GradedPoly::maxDegree() const {
  int d = -1;
  for (auto& [m, c] : terms_) d = std::max(d, degreeOf(m));
  return d;
}

int GradedPoly::minDegree() const {
  int d = INT_MAX;
  for (auto& [m, c] : terms_) d = std::min(d, degreeOf(m));
  return terms_.empty() ? -1 : d;
}

Rational GradedPoly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational GradedPoly::constantTerm() const {
  if (!vars_) return 0;
  return coeff(Mono(vars_->size(), 0));
}

bool GradedPoly::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono(vars_->size(), 0));
}

void GradedPoly::addTerm(const Mono& m, const Rational& c) {
  if (c == 0) return;
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i] < 0 && !(*vars_)[i].laurent)
      throw std::domain_error("negative exponent on polynomial variable " + (*vars_)[i].name);
  if (degreeOf(m) > trunc_) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void GradedPoly::addTerm(Mono&& m, const Rational& c) {
  if (c == 0) return;
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i] < 0 && !(*vars_)[i].laurent)
      throw std::domain_error("negative exponent on polynomial variable " + (*vars_)[i].name);
  if (degreeOf(m) > trunc_) return;
  auto [it, fresh] = terms_.emplace(std::move(m), c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void GradedPoly::checkCompatible(const GradedPoly& o) const {
  requireSameTable(vars_, o.vars_);
  if (trunc_ != o.trunc_)
    throw std::invalid_argument("mismatched truncation degrees " + std::to_string(trunc_) + " vs " +
                                std::to_string(o.trunc_));
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  if (!vars_) return *this = o;
  if (!o.vars_) return *this;
  checkCompatible(o);
  for (auto& [m, c] : o.terms_) {
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  if (!o.vars_) return *this;
  if (!vars_) return *this = -o;
  checkCompatible(o);
  for (auto& [m, c] : o.terms_) {
    auto [it, fresh] = terms_.emplace(m, -c);
    if (!fresh) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
  a.checkCompatible(b);
  GradedPoly r(a.vars_, a.trunc_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  std::vector<std::pair<const Mono*, const Rational*>> bt;
  std::vector<int> bdeg;
  bt.reserve(b.terms_.size());
  for (auto& [m, c] : b.terms_) {
    bt.emplace_back(&m, &c);
    bdeg.push_back(b.degreeOf(m));
  }
  const size_t n = a.vars_->size();
  Mono prod(n);
  Rational tmp;
  for (auto& [ma, ca] : a.terms_) {
    int da = a.degreeOf(ma);
    for (size_t k = 0; k < bt.size(); ++k) {
      if (da + bdeg[k] > r.trunc_) continue;
      const Mono& mb = *bt[k].first;
      for (size_t i = 0; i < n; ++i) prod[i] = ma[i] + mb[i];
      tmp = ca * *bt[k].second;
      auto [it, fresh] = r.terms_.emplace(prod, tmp);
      if (!fresh) {
        it->second += tmp;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

GradedPoly& GradedPoly::operator*=(const GradedPoly& o) { return *this = *this * o; }

GradedPoly GradedPoly::pow(int n) const {
  if (n < 0) throw std::domain_error("negative power of a polynomial");
  GradedPoly r = constant(vars_, trunc_, 1);
  GradedPoly b = *this;
  while (n > 0) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

GradedPoly GradedPoly::withTrunc(int D) const {
  GradedPoly r(vars_, D);
  for (auto& [m, c] : terms_)
    if (degreeOf(m) <= D) r.terms_.emplace(m, c);
  return r;
}

GradedPoly GradedPoly::homogeneousPart(int d) const {
  GradedPoly r(vars_, trunc_);
  for (auto& [m, c] : terms_)
    if (degreeOf(m) == d) r.terms_.emplace(m, c);
  return r;
}

GradedPoly GradedPoly::substitute(const std::vector<std::optional<GradedPoly>>& images,
                                  VarTablePtr target, int targetTrunc) const {
  if (images.size() != vars_->size()) throw std::invalid_argument("substitute: image count");
  for (size_t i = 0; i < images.size(); ++i) {
    if (!images[i]) {
      if (!target->find((*vars_)[i].name))
        throw std::invalid_argument("substitute: kept variable missing in target: " +
                                    (*vars_)[i].name);
    } else {
      requireSameTable(images[i]->vars(), target);
    }
  }
  // cache powers per variable
  std::vector<std::map<int, GradedPoly>> powers(images.size());
  auto power = [&](size_t i, int e) -> const GradedPoly& {
    auto it = powers[i].find(e);
    if (it != powers[i].end()) return it->second;
    GradedPoly base(target, targetTrunc);
    if (images[i]) {
      if (e < 0) throw std::domain_error("substitute: negative power of substituted variable");
      base = images[i]->withTrunc(targetTrunc).pow(e);
    } else {
      base = variable(target, targetTrunc, target->index((*vars_)[i].name), e);
    }
    return powers[i].emplace(e, std::move(base)).first->second;
  };
  GradedPoly out(target, targetTrunc);
  for (auto& [m, c] : terms_) {
    GradedPoly t = constant(target, targetTrunc, c);
    for (size_t i = 0; i < m.size() && !t.isZero(); ++i)
      if (m[i] != 0) t *= power(i, m[i]);
    out += t;
  }
  return out;
}

GradedPoly GradedPoly::embed(VarTablePtr target, int targetTrunc) const {
  std::vector<size_t> map(vars_->size());
  for (size_t i = 0; i < vars_->size(); ++i) {
    map[i] = target->index((*vars_)[i].name);
    if ((*target)[map[i]].degree != (*vars_)[i].degree)
      throw std::invalid_argument("embed: degree mismatch for " + (*vars_)[i].name);
  }
  GradedPoly out(target, targetTrunc);
  for (auto& [m, c] : terms_) {
    Mono t(target->size(), 0);
    for (size_t i = 0; i < m.size(); ++i) t[map[i]] = m[i];
    out.addTerm(std::move(t), c);
  }
  return out;
}

bool GradedPoly::operator==(const GradedPoly& o) const {
  if (!vars_ || !o.vars_) return terms_.empty() && o.terms_.empty();
  requireSameTable(vars_, o.vars_);
  return terms_ == o.terms_;
}

std::string GradedPoly::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // descending degree reads better
  std::vector<std::pair<const Mono*, const Rational*>> ts;
  for (auto& [m, c] : terms_) ts.emplace_back(&m, &c);
  std::stable_sort(ts.begin(), ts.end(), [&](auto& a, auto& b) {
    return degreeOf(*a.first) < degreeOf(*b.first);
  });
  for (auto& [mp, cp] : ts) {
    const Mono& m = *mp;
    Rational c = *cp;
    bool isConst = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational a = abs(c);
    if (isConst) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    bool firstVar = true;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!firstVar) os << "*";
      firstVar = false;
      os << (*vars_)[i].name;
      if (m[i] != 1) os << "^" << m[i];
    }
  }
  return os.str();
}

nlohmann::json GradedPoly::toJson() const {
  nlohmann::json j;
  j["vars"] = nlohmann::json::array();
  for (auto& v : vars_->vars()) {
    nlohmann::json e = {{"name", v.name}, {"degree", v.degree}};
    if (v.laurent) e["laurent"] = true;
    j["vars"].push_back(e);
  }
  j["trunc"] = trunc_;
  j["terms"] = nlohmann::json::array();
  for (auto& [m, c] : terms_)
    j["terms"].push_back({{"exps", m}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  return j;
}

GradedPoly GradedPoly::fromJson(const nlohmann::json& j) {
  std::vector<Variable> vs;
  for (auto& v : j.at("vars")) {
    Variable var{v.at("name").get<std::string>(), v.at("degree").get<int>(), false};
    var.laurent = v.value("laurent", false);
    vs.push_back(var);
  }
  auto table = makeVarTable(std::move(vs));
  GradedPoly p(table, j.at("trunc").get<int>());
  for (auto& t : j.at("terms")) {
    Mono m = t.at("exps").get<Mono>();
    if (m.size() != table->size()) throw std::invalid_argument("exponent vector length");
    Rational c(mpz_class(t.at("num").get<std::string>()), mpz_class(t.at("den").get<std::string>()));
    c.canonicalize();
    p.addTerm(std::move(m), c);
  }
  return p;
}

}  // namespace wc

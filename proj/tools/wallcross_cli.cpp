#include <openssl/evp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "wallcross/chern.hpp"
#include "wallcross/engine.hpp"
#include "wallcross/qseries.hpp"
#include "wallcross/schur.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
const char* kCacheSchema = "wallcross-cache/1";

// JSON config files are rewritten as TOML and handed to the stock parser.
class JsonOrTomlConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
      std::istringstream is(text);
      return CLI::ConfigTOML::from_config(is);
    }
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    std::ostringstream toml;
    emit(j, "", toml);
    std::istringstream is(toml.str());
    return CLI::ConfigTOML::from_config(is);
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return json(v.get<std::string>()).dump();
    if (v.is_array()) {
      std::string s = "[";
      for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + scalar(v[i]);
      return s + "]";
    }
    return v.dump();
  }
  static void emit(const json& obj, const std::string& section, std::ostream& os) {
    if (!section.empty()) os << "[" << section << "]\n";
    for (auto& [k, v] : obj.items())
      if (!v.is_object()) os << k << " = " << scalar(v) << "\n";
    for (auto& [k, v] : obj.items())
      if (v.is_object()) emit(v, section.empty() ? k : section + "." + k, os);
  }
};

std::string sha256Hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

struct CacheEntry {
  json result;
  std::string audit;
};

class Cache {
 public:
  explicit Cache(std::string dir) : dir_(std::move(dir)) {}
  bool enabled() const { return !dir_.empty(); }

  static std::string keyFor(const std::string& sub, const json& cfg) { return sha256Hex(sub + "\n" + cfg.dump()); }

  std::optional<CacheEntry> load(const std::string& key, const std::string& sub, const json& cfg) const {
    if (!enabled()) return std::nullopt;
    auto p = path(key);
    if (!fs::exists(p)) return std::nullopt;
    std::string why;
    try {
      std::ifstream in(p);
      json e = json::parse(in);
      if (!e.is_object() || e.value("schema", "") != kCacheSchema) why = "schema";
      else if (e.value("key", "") != key || e.value("subcommand", "") != sub) why = "key";
      else if (e.at("config") != cfg) why = "config";
      else if (!e.contains("result") || !(e["result"].is_object() || e["result"].is_array())) why = "result";
      else if (!e.contains("audit") || !e["audit"].is_string()) why = "audit";
      else return CacheEntry{e["result"], e["audit"].get<std::string>()};
    } catch (const std::exception& ex) {
      why = ex.what();
    }
    std::cerr << "warning: cache entry " << p << " is invalid (" << why << "); recomputing\n";
    return std::nullopt;
  }

  void store(const std::string& key, const std::string& sub, const json& cfg, const CacheEntry& v) const {
    if (!enabled()) return;
    try {
      fs::create_directories(dir_);
      json e{{"schema", kCacheSchema}, {"key", key}, {"subcommand", sub}, {"config", cfg},
             {"result", v.result}, {"audit", v.audit}};
      auto p = path(key);
      auto tmp = p;
      tmp += ".tmp";
      {
        std::ofstream out(tmp);
        out << e.dump() << "\n";
        if (!out) throw std::runtime_error("write failed");
      }
      fs::rename(tmp, p);
    } catch (const std::exception& ex) {
      std::cerr << "warning: could not write cache entry: " << ex.what() << "\n";
    }
  }

  std::string dir() const { return dir_; }

 private:
  fs::path path(const std::string& key) const { return fs::path(dir_) / (key + ".json"); }
  std::string dir_;
};

struct Globals {
  std::string format = "table";
  std::string cacheDir;
  bool noCache = false;
};

struct EngineOpts {
  std::string surface;
  long rank = 2;
  std::vector<std::string> c1{"0"};
  std::string c2 = "3";
  int j = 0;
  std::string insertion = "chi_y";
  int D = 4;
  std::string mode = "iterated";
  int startLevel = -1;
  std::string auditLog;
  bool verifyLog = false;
};

SurfacePtr loadSurface(const std::string& path) {
  if (path.empty()) return projectivePlaneModel();
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open surface model " + path);
  return SurfaceModel::fromJson(json::parse(in));
}

DivisorClass parseDivisor(const SurfacePtr& s, const std::vector<std::string>& coeffs) {
  if (coeffs.size() == 1 && parseRational(coeffs[0]) == 0) return DivisorClass::zero(s);
  if (coeffs.size() != s->dim())
    throw std::invalid_argument("c1 needs " + std::to_string(s->dim()) + " coefficients");
  std::vector<Rational> v;
  for (auto& c : coeffs) v.push_back(parseRational(c));
  return DivisorClass(s, v);
}

std::string auditPathFor(const EngineOpts& o, const Cache& cache, const std::string& key) {
  if (!o.auditLog.empty()) return o.auditLog;
  fs::path dir = cache.enabled() ? fs::path(cache.dir()) : fs::temp_directory_path();
  return (dir / ("wallcross-" + key.substr(0, 16) + ".audit.jsonl")).string();
}

struct RunOutput {
  json result;
  int status = kExitOk;
};

// Cached computation; the audit log is written on every run, hit or miss.
RunOutput runEngine(const std::string& sub, const json& cfg, const EngineOpts& o, const Cache& cache,
                    const std::function<CacheEntry()>& producer) {
  auto key = Cache::keyFor(sub, cfg);
  auto entry = cache.load(key, sub, cfg);
  if (entry) {
    std::cerr << "cache: hit " << key.substr(0, 16) << "\n";
  } else {
    entry = producer();
    cache.store(key, sub, cfg, *entry);
  }
  RunOutput out{entry->result};
  auto logPath = auditPathFor(o, cache, key);
  {
    std::ofstream log(logPath);
    log << entry->audit;
    if (!log) throw std::runtime_error("cannot write audit log " + logPath);
  }
  std::cerr << "audit log: " << logPath << "\n";

  const json& red = out.result.contains("reduction") ? out.result["reduction"] : out.result;
  for (auto& p : red["problems"]) std::cerr << "problem: " << p.get<std::string>() << "\n";
  if (!red["problems"].empty()) out.status = kExitVerify;
  for (auto& d : red["dualMode"])
    if (!d["constant"].get<bool>()) {
      std::cerr << "dual-mode mismatch at " << d["label"].get<std::string>() << "\n";
      out.status = kExitVerify;
    }
  if (o.verifyLog) {
    std::ifstream in(logPath);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto problems = verifyAuditLog(text, red);
    for (auto& p : problems) std::cerr << "audit: " << p << "\n";
    if (problems.empty()) std::cerr << "audit: log replays to the reported coefficients\n";
    else out.status = kExitVerify;
  }
  return out;
}

ReductionInput reductionInput(const EngineOpts& o) {
  ReductionInput in;
  in.base = loadSurface(o.surface);
  in.rank = o.rank;
  in.c1 = parseDivisor(in.base, o.c1);
  in.c2 = parseRational(o.c2);
  in.j = o.j;
  in.insertion = o.insertion;
  in.D = o.D;
  in.mode = parseKernelMode(o.mode);
  if (o.startLevel >= 0) in.startLevel = o.startLevel;
  return in;
}

void printOmegaTable(const json& omega, std::ostream& os) {
  os << std::left << std::setw(4) << "n" << std::setw(5) << "T" << "Omega_n\n";
  for (auto& [n, v] : omega.items())
    os << std::setw(4) << n << std::setw(5) << v["T"].get<int>() << v["text"].get<std::string>() << "\n";
}

void addEngineOptions(CLI::App* sc, EngineOpts& o) {
  sc->add_option("--surface", o.surface, "surface model JSON (default: projective plane)");
  sc->add_option("--rank", o.rank, "rank r")->check(CLI::PositiveNumber);
  sc->add_option("--c1", o.c1, "c1 on the surface basis, comma separated")->delimiter(',');
  sc->add_option("--c2", o.c2, "c2 (rational)");
  sc->add_option("--j", o.j, "multiplicity of the exceptional class")->check(CLI::NonNegativeNumber);
  sc->add_option("--insertion", o.insertion, "insertion descriptor");
  sc->add_option("--D", o.D, "truncation degree")->check(CLI::NonNegativeNumber);
  sc->add_option("--mode", o.mode, "kernel mode")->check(CLI::IsMember({"iterated", "symmetrized", "both"}));
  sc->add_option("--start-level", o.startLevel, "start level (default: Gieseker threshold)");
  sc->add_option("--audit-log", o.auditLog, "audit log path");
  sc->add_flag("--verify-log", o.verifyLog, "replay the audit log against the result");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blowup wall-crossing calculator"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonOrTomlConfig>());
  app.set_config("--config", "", "TOML or JSON config; sections are named after subcommands");

  Globals g;
  if (const char* env = std::getenv("WALLCROSS_CACHE_DIR")) g.cacheDir = env;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--cache-dir", g.cacheDir, "result cache directory (default: $WALLCROSS_CACHE_DIR)");
  app.add_flag("--no-cache", g.noCache, "disable the result cache");

  EngineOpts wcOpts, omOpts, donOpts;
  auto* scWall = app.add_subcommand("wallcross", "reduce a blowup integral to the base surface");
  addEngineOptions(scWall, wcOpts);
  auto* scOmega = app.add_subcommand("omega", "only the correction series Omega_n");
  addEngineOptions(scOmega, omOpts);

  int power = 0;
  auto* scDon = app.add_subcommand("donaldson", "blowup coefficient of a Donaldson-type integral");
  scDon->add_option("--power", power, "power of mu(C)")->required()->check(CLI::Range(0, 4));
  scDon->add_option("--mode", donOpts.mode, "kernel mode")->check(CLI::IsMember({"iterated", "symmetrized", "both"}));
  scDon->add_option("--audit-log", donOpts.auditLog, "audit log path");
  scDon->add_flag("--verify-log", donOpts.verifyLog, "replay the audit log against the result");

  auto* scQ = app.add_subcommand("qseries", "generating series");
  scQ->require_subcommand(1);
  int qa = 0, qorder = 10;
  std::string xSpec;
  auto* scZa = scQ->add_subcommand("za", "Z_a(x, q)");
  scZa->add_option("--a", qa, "a in {0,1}")->check(CLI::IsMember({0, 1}));
  scZa->add_option("--order", qorder, "order in q")->check(CLI::NonNegativeNumber);
  scZa->add_option("--x-spec", xSpec, "specialize x to this value");
  long chi = 0;
  std::vector<long> betti;
  auto* scG = scQ->add_subcommand("goettsche", "Hilbert scheme series");
  auto* chiOpt = scG->add_option("--chi", chi, "Euler characteristic");
  auto* bettiOpt = scG->add_option("--betti", betti, "b1,b2,b3,b4 (Poincare series in z)")->delimiter(',')->expected(4);
  chiOpt->excludes(bettiOpt);
  scG->add_option("--order", qorder, "order in q")->check(CLI::NonNegativeNumber);
  auto* scR = scQ->add_subcommand("ratio", "Euler series ratio under one blowup");
  scR->add_option("--chi", chi, "Euler characteristic of the base");
  scR->add_option("--order", qorder, "order in q")->check(CLI::NonNegativeNumber);

  auto* scS = app.add_subcommand("schur", "Schur straightening and Grassmannian integrals");
  scS->require_subcommand(1);
  std::vector<int> exps, specials;
  int maxParts = -1, gj = 1, gn = 2;
  auto* scSt = scS->add_subcommand("straighten", "h_1^a1 h_2^a2 ... in the Schur basis");
  scSt->add_option("--exps", exps, "exponents a1,a2,...")->delimiter(',')->required();
  scSt->add_option("--max-parts", maxParts, "drop partitions with more rows");
  auto* scSb = scS->add_subcommand("schubert", "integral of special Schubert classes over Gr(j, n)");
  scSb->add_option("--j", gj, "subspace dimension")->check(CLI::PositiveNumber);
  scSb->add_option("--n", gn, "ambient dimension")->check(CLI::PositiveNumber);
  scSb->add_option("--specials", specials, "indices of sigma_k")->delimiter(',');

  EngineOpts vd;
  vd.c2 = "0";
  std::optional<int> chiO;
  bool freeDet = false;
  int irregularity = 0;
  auto* scV = app.add_subcommand("vdim", "virtual dimension");
  scV->add_option("--surface", vd.surface, "surface model JSON (default: projective plane)");
  scV->add_option("--rank", vd.rank, "rank r")->check(CLI::PositiveNumber);
  scV->add_option("--c1", vd.c1, "c1 on the surface basis")->delimiter(',');
  scV->add_option("--c2", vd.c2, "c2 (rational)");
  scV->add_option("--chiO", chiO, "override chi(O_X)");
  scV->add_flag("--free-det", freeDet, "do not fix the determinant");
  scV->add_option("--irregularity", irregularity, "q(X), used with --free-det");

  for (auto* sc : {scWall, scOmega, scDon, scQ, scS, scV}) sc->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Cache cache(g.noCache ? "" : g.cacheDir);
  const bool asJson = g.format == "json";
  try {
    if (scWall->parsed() || scOmega->parsed()) {
      const bool full = scWall->parsed();
      const EngineOpts& o = full ? wcOpts : omOpts;
      auto in = reductionInput(o);
      auto cfg = in.toJson();
      auto run = runEngine("reduce", cfg, o, cache, [&] {
        auto res = reduceToBase(in);
        return CacheEntry{res.toJson(), res.auditJsonLines()};
      });
      json out = full ? json{{"input", cfg}, {"result", run.result}}
                      : json{{"input", cfg}, {"omega", run.result["omega"]}};
      if (asJson) {
        std::cout << out.dump(2) << "\n";
      } else if (full) {
        auto& r = run.result;
        std::cout << "start level " << r["startLevel"] << ", effective degree " << r["startT"] << "\n";
        std::cout << "elimination pairs " << r["elimination"]["pairs"] << ", linear "
                  << r["elimination"]["linear"] << "\n";
        std::map<std::string, std::map<std::string, int>> ratios;
        for (auto& d : r["dualMode"]) ++ratios[std::to_string(d["j"].get<int>())][d["ratio"].get<std::string>()];
        for (auto& [jj, m] : ratios)
          for (auto& [q, cnt] : m) std::cout << "kernel ratio j=" << jj << ": " << q << " (" << cnt << " terms)\n";
        printOmegaTable(r["omega"], std::cout);
      } else {
        printOmegaTable(run.result["omega"], std::cout);
      }
      return run.status;
    }

    if (scDon->parsed()) {
      json cfg{{"power", power}, {"mode", donOpts.mode}};
      auto mode = parseKernelMode(donOpts.mode);
      auto run = runEngine("donaldson", cfg, donOpts, cache, [&] {
        auto d = donaldsonBlowup(power, mode);
        json r{{"power", power},
               {"coefficient", toString(d.coefficient)},
               {"residual", d.residual},
               {"reduction", d.reduction.toJson()}};
        return CacheEntry{r, d.reduction.auditJsonLines()};
      });
      if (run.result["residual"].get<bool>()) run.status = kExitVerify;
      if (asJson) std::cout << run.result.dump(2) << "\n";
      else std::cout << "coefficient " << run.result["coefficient"].get<std::string>() << "\n";
      return run.status;
    }

    if (scQ->parsed()) {
      json out;
      int status = kExitOk;
      if (scZa->parsed()) {
        auto z = zA(qa, qorder);
        if (!xSpec.empty()) z = z.specializeX(parseRational(xSpec));
        out = z.toJson("x");
      } else if (scG->parsed()) {
        if (betti.empty()) out = goettscheEuler(chi, qorder).toJson();
        else out = goettschePoincare(betti[0], betti[1], betti[2], betti[3], qorder).toJson("z");
      } else {
        auto rep = blowupRatioCheck(chi, qorder);
        out = rep.toJson();
        if (!rep.ok) status = kExitVerify;
      }
      if (asJson || !out.is_array()) {
        std::cout << out.dump(2) << "\n";
      } else {
        for (auto& t : out)
          std::cout << std::left << std::setw(8) << t["exponent"].get<std::string>()
                    << (t["coeff"].is_string() ? t["coeff"].get<std::string>() : t["coeff"].dump()) << "\n";
      }
      return status;
    }

    if (scS->parsed()) {
      json out;
      if (scSt->parsed()) {
        out = json::array();
        for (auto& [lam, c] : straightenMonomial(exps, maxParts))
          out.push_back({{"partition", lam}, {"coeff", toString(c)}});
      } else {
        auto r = schubertOracle(gj, gn, specials);
        out = {{"value", toString(r.value)}, {"degreeMismatch", r.degreeMismatch}};
      }
      if (asJson) {
        std::cout << out.dump(2) << "\n";
      } else if (out.is_array()) {
        for (auto& t : out) std::cout << t["partition"].dump() << "  " << t["coeff"].get<std::string>() << "\n";
      } else {
        std::cout << out["value"].get<std::string>() << (out["degreeMismatch"].get<bool>() ? " (degree mismatch)" : "")
                  << "\n";
      }
      return kExitOk;
    }

    if (scV->parsed()) {
      auto base = loadSurface(vd.surface);
      if (chiO) {
        auto s = std::make_shared<SurfaceModel>(*base);
        s->chiO = *chiO;
        base = s;
      }
      auto ch = fromRankC1C2(base, static_cast<int>(vd.rank), parseDivisor(base, vd.c1), parseRational(vd.c2));
      long v = vdim(ch, !freeDet, irregularity);
      if (asJson) std::cout << json{{"vdim", v}}.dump(2) << "\n";
      else std::cout << v << "\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

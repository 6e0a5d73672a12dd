// Batch front end. Exit codes: 0 verified, 2 refuted, 3 incomplete, 1 input error.

#include "logpar/cohomology.hpp"
#include "logpar/correspondence.hpp"
#include "logpar/io.hpp"
#include "logpar/random_instances.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace {

using namespace logpar;

constexpr const char* kSchema = "logpar-report/1";
constexpr std::int64_t kDefaultPhiBound = 3;

enum Exit { kVerified = 0, kInputError = 1, kRefuted = 2, kIncomplete = 3 };

struct Options {
  std::string subcommand;
  std::vector<std::string> instances;
  std::optional<std::uint64_t> seed;
  std::string out;
  int jobs = 1;
  std::optional<std::int64_t> phi_bound;
  std::string lambda = "0";
  std::string weight;
  std::string method = "both";
  bool no_log_variables = false;
  std::vector<int> truncations;
  std::optional<int> level_window;
  std::optional<int> window;
  std::size_t count = 10;
  std::optional<std::int64_t> axiom_window;
};

// The standard log point with square roots: P = N, Lambda = (1/2)N, A = Q.
Json default_instance() {
  return Json::parse(R"({"monoid": {"rank": 1, "generators": [[1]]}, "lambda": {"kind": "fraction", "n": 2}})");
}

struct Outcome {
  Json report;
  int exit = kVerified;
};

class Run {
 public:
  Run(const Options& opts, Json doc) : opts_(opts) {
    if (opts_.window) doc["lambda"]["search_radius"] = *opts_.window;
    doc_ = std::move(doc);
  }

  Outcome execute() {
    Outcome out;
    Json& r = out.report;
    r["schema"] = kSchema;
    r["operation"] = opts_.subcommand;
    r["instance_hash"] = fnv1a_hex(opts_.subcommand + "\n" + doc_.dump() + "\n" + parameters().dump());
    r["witnesses"] = Json::object();
    r["bounds_used"] = Json::object();
    try {
      const Instance inst(doc_);
      out.exit = dispatch(inst, r);
    } catch (const SchemaError& e) {
      out.exit = fail(r, "input-error", kInputError, {{"pointer", e.pointer()}, {"message", e.what()}});
    } catch (const InputError& e) {
      out.exit = fail(r, "input-error", kInputError, {{"pointer", ""}, {"message", e.what()}});
    } catch (const Incomplete& e) {
      r["verdict"] = "incomplete";
      r["incomplete"] = {{"bound", e.bound()}, {"flag", e.flag()}, {"message", e.what()}};
      out.exit = kIncomplete;
    } catch (const WitnessFailed& e) {
      out.exit = fail(r, "refuted", kRefuted, {{"message", e.what()}});
    } catch (const MethodDisagreement& e) {
      out.exit = fail(r, "refuted", kRefuted, {{"message", e.what()}});
    } catch (const std::exception& e) {
      out.exit = fail(r, "input-error", kInputError, {{"pointer", ""}, {"message", std::string("internal: ") + e.what()}});
    }
    if (!r.contains("verdict")) r["verdict"] = out.exit == kVerified ? "verified" : out.exit == kRefuted ? "refuted" : "incomplete";
    r["bounds_used"]["phi_bound"] = phi_bound();
    if (opts_.seed) r["bounds_used"]["seed"] = *opts_.seed;
    return out;
  }

 private:
  static int fail(Json& r, const char* verdict, int code, Json error) {
    r["verdict"] = verdict;
    r["error"] = std::move(error);
    return code;
  }

  Json parameters() const {
    return {{"seed", opts_.seed ? Json(*opts_.seed) : Json()}, {"phi_bound", phi_bound()},
            {"lambda", opts_.lambda},  {"weight", opts_.weight},
            {"method", opts_.method},  {"log_variables", !opts_.no_log_variables},
            {"truncations", opts_.truncations}, {"level_window", opts_.level_window ? Json(*opts_.level_window) : Json()},
            {"count", opts_.count},    {"axiom_window", opts_.axiom_window ? Json(*opts_.axiom_window) : Json()}};
  }

  std::int64_t phi_bound() const {
    if (opts_.phi_bound) return *opts_.phi_bound;
    if (const char* env = std::getenv("LOGPAR_BOUND_PHI")) {
      try {
        return std::stoll(env);
      } catch (const std::exception&) {
        throw InputError("LOGPAR_BOUND_PHI is not an integer");
      }
    }
    if (doc_.contains("parameters") && doc_["parameters"].contains("phi_bound") &&
        doc_["parameters"]["phi_bound"].is_number_integer())
      return doc_["parameters"]["phi_bound"].get<std::int64_t>();
    return kDefaultPhiBound;
  }

  Rng rng() const {
    if (!opts_.seed) throw InputError("instance has no payload for " + opts_.subcommand + "; pass --seed for a random one");
    return Rng(*opts_.seed);
  }

  EquivariantModule module_or_random(const Instance& inst, Json& r) const {
    if (inst.has("module")) return inst.module(inst.document().at("module"), "/module");
    if (inst.has("sheaf")) return psi(inst.sheaf(inst.document().at("sheaf"), "/sheaf"));
    Rng g = rng();
    EquivariantModule f = random_presentation(g, inst.ring(), 3, 3, phi_bound());
    r["witnesses"]["random_module"] = inst.to_json(f);
    return f;
  }

  ParabolicSheaf sheaf_or_random(const Instance& inst, Json& r) const {
    if (inst.has("sheaf")) return inst.sheaf(inst.document().at("sheaf"), "/sheaf");
    Rng g = rng();
    ParabolicSheaf e = random_sheaf(g, inst.ring(), 3);
    r["witnesses"]["random_sheaf"] = inst.to_json(e);
    return e;
  }

  Json map_json(const Instance& inst, const FreeMap& map) const {
    Json out{{"source", Json::array()}, {"target", Json::array()}, {"entries", Json::array()}};
    for (const auto& w : map.source()) out["source"].push_back(inst.to_json(w));
    for (const auto& w : map.target()) out["target"].push_back(inst.to_json(w));
    for (std::size_t j = 0; j < map.cols(); ++j)
      for (std::size_t i = 0; i < map.rows(); ++i)
        for (std::size_t k = 0; k < map.entry(i, j).size(); ++k)
          if (!map.entry(i, j)[k].is_zero())
            out["entries"].push_back({{"row", i}, {"col", j}, {"a", map.entry(i, j)[k].str()},
                                      {"s", inst.to_json(map.entry_sections(i, j).monomials[k])}});
    return out;
  }

  Json axioms_json(const AxiomReport& rep) const {
    Json v = Json::array();
    for (const auto& x : rep.violations)
      v.push_back({{"condition", x.condition}, {"where", x.where}, {"lhs", to_json(x.lhs)}, {"rhs", to_json(x.rhs)}});
    return {{"passed", rep.passed}, {"squares_checked", rep.squares_checked}, {"violations", std::move(v)}};
  }

  int dispatch(const Instance& inst, Json& r) const {
    const std::string& op = opts_.subcommand;
    if (op == "check-sheaf") return check_sheaf(inst, r);
    if (op == "phi") return run_phi(inst, r);
    if (op == "psi") return run_psi(inst, r);
    if (op == "roundtrip") return roundtrip(inst, r);
    if (op == "sections") return sections(inst, r);
    if (op == "cohomology") return cohomology(inst, r);
    if (op == "kernel") return kernel(inst, r);
    if (op == "compare-root") return compare_root(inst, r);
    if (op == "lambda-member") return lambda_member(inst, r);
    if (op == "enumerate") return enumerate(inst, r);
    throw InputError("unknown subcommand " + op);
  }

  std::int64_t axiom_window(const Instance& inst, Json& r) const {
    const std::int64_t w = opts_.axiom_window ? *opts_.axiom_window : default_axiom_window(inst.monoid());
    r["bounds_used"]["axiom_window"] = w;
    return w;
  }

  int check_sheaf(const Instance& inst, Json& r) const {
    const ParabolicSheaf e = sheaf_or_random(inst, r);
    const AxiomReport rep = check_axioms(e, axiom_window(inst, r));
    r["result"] = axioms_json(rep);
    if (!rep.passed) r["witnesses"]["violations"] = r["result"]["violations"];
    return rep.passed ? kVerified : kRefuted;
  }

  int run_phi(const Instance& inst, Json& r) const {
    const EquivariantModule f = module_or_random(inst, r);
    const FineWeightSystem sys = inst.has("system") ? inst.system(inst.document().at("system"), "/system") : covering_system(f);
    const ParabolicSheaf e = phi(f, sys);
    const AxiomReport rep = check_axioms(e, axiom_window(inst, r));
    r["result"] = {{"sheaf", inst.to_json(e)}, {"axioms", axioms_json(rep)}};
    return rep.passed ? kVerified : kRefuted;
  }

  int run_psi(const Instance& inst, Json& r) const {
    const ParabolicSheaf e = sheaf_or_random(inst, r);
    r["result"] = {{"module", inst.to_json(psi(e))}};
    return kVerified;
  }

  int roundtrip(const Instance& inst, Json& r) const {
    const bool has_sheaf = inst.has("sheaf"), has_module = inst.has("module");
    Json result = Json::object();
    if (has_sheaf || !has_module) {
      const ParabolicSheaf e = sheaf_or_random(inst, r);
      const IsoWitness w = roundtrip_parabolic(e);
      Json maps = Json::array();
      for (const auto& m : w.piece_maps) maps.push_back(to_json(m));
      r["witnesses"]["unit"] = std::move(maps);
      result["parabolic"] = {{"valid", w.valid}, {"squares_checked", w.squares_checked}};
    }
    if (has_module || !has_sheaf) {
      const EquivariantModule f = has_module ? inst.module(inst.document().at("module"), "/module") : [&] {
        Rng g = rng();
        g.discard(1000003);  // a stream independent of the random sheaf
        EquivariantModule x = random_presentation(g, inst.ring(), 3, 3, phi_bound());
        r["witnesses"]["random_module"] = inst.to_json(x);
        return x;
      }();
      const IsoWitness w = roundtrip_module(f);
      r["witnesses"]["counit"] = map_json(inst, *w.forward);
      r["witnesses"]["counit_inverse"] = map_json(inst, *w.backward);
      result["module"] = {{"valid", w.valid}, {"squares_checked", w.squares_checked}};
    }
    r["result"] = std::move(result);
    return kVerified;
  }

  int sections(const Instance& inst, Json& r) const {
    const Weight t = inst.weight_text(opts_.lambda, "--lambda");
    if (inst.has("module")) {
      const EquivariantModule f = inst.module(inst.document().at("module"), "/module");
      r["result"] = {{"twist", inst.to_json(t)}, {"module", to_json(global_sections(f, t))}};
      return kVerified;
    }
    const ClassSections& sec = gamma_sections(*inst.ring(), t);
    Json mons = Json::array();
    for (const auto& mu : sec.monomials) mons.push_back(inst.to_json(mu));
    r["result"] = {{"weight", inst.to_json(t)}, {"minimal_monomials", std::move(mons)}, {"module", to_json(sec.module)},
                   {"lattice_only_module", to_json(lattice_only_sections(*inst.ring(), t))}};
    return kVerified;
  }

  int cohomology(const Instance& inst, Json& r) const {
    CohomologyOptions o;
    if (opts_.method == "recursion") o.method = CohomologyMethod::Recursion;
    else if (opts_.method == "koszul" || opts_.method == "truncated-koszul") o.method = CohomologyMethod::Koszul;
    else if (opts_.method == "both") o.method = CohomologyMethod::Both;
    else throw InputError("--method must be recursion, koszul or both");
    o.log_variables = !opts_.no_log_variables;
    o.truncations = opts_.truncations;
    if (opts_.level_window) o.level_window = *opts_.level_window;
    const Weight lambda = inst.weight_text(opts_.lambda, "--lambda");
    const CohomologyReport rep = group_cohomology(*inst.ring(), lambda, o);

    Json classes = Json::array();
    for (const auto& c : rep.classes) {
      Json phases = Json::array();
      for (const auto& p : c.phases) phases.push_back(p.representative().str());
      Json slices = Json::array();
      for (const auto& s : c.character.slices) {
        std::vector<bool> tv(s.transition_vanishes.begin(), s.transition_vanishes.end());
        slices.push_back({{"truncation", s.truncation}, {"dims", s.dims}, {"transition_vanishes", tv}});
      }
      classes.push_back({{"class", inst.to_json(c.monomial_class)}, {"phases", std::move(phases)},
                         {"multiplicity", c.multiplicity}, {"trivial", c.character.trivial},
                         {"recursion", c.character.recursion}, {"slices", std::move(slices)}});
    }
    bool vanishing = rep.stabilized;
    for (std::size_t m = 1; m < rep.dims.size(); ++m) vanishing = vanishing && rep.dims[m] == 0;
    r["result"] = {{"lambda", inst.to_json(lambda)}, {"method", to_string(rep.method)},
                   {"log_variables", rep.log_variables}, {"dims", rep.dims},
                   {"positive_degrees_vanish", vanishing}, {"stabilized", rep.stabilized},
                   {"complete", rep.complete}, {"classes", std::move(classes)}};
    r["bounds_used"]["level_window"] = o.level_window;
    r["bounds_used"]["truncations"] = o.truncations;
    if (o.log_variables && !vanishing) {
      r["witnesses"]["nonvanishing_dims"] = rep.dims;
      return kRefuted;
    }
    if (!rep.complete) {
      r["verdict"] = "incomplete";
      r["incomplete"] = {{"bound", rep.bound}, {"flag", "--level-window"},
                         {"message", "irrational Lambda has infinitely many classes; only those up to the level window were scanned"}};
      return kIncomplete;
    }
    return kVerified;
  }

  int kernel(const Instance& inst, Json& r) const {
    const EquivariantModule f = module_or_random(inst, r);
    KernelOptions o;
    if (opts_.level_window) o.level_window = *opts_.level_window;
    r["bounds_used"]["level_window"] = o.level_window;
    const FreeMap k = kernel_presentation(f.relations(), o);
    r["result"] = {{"syzygies", map_json(inst, k)}, {"count", k.cols()}};
    return kVerified;
  }

  int compare_root(const Instance& inst, Json& r) const {
    const EquivariantModule f = module_or_random(inst, r);
    const RootStackReport rep = compare_root_stack(f);
    Json grading = Json::array();
    for (const auto& g : rep.grading) grading.push_back(inst.to_json(g));
    r["result"] = {{"n", rep.n}, {"grading", std::move(grading)}, {"graded_components", rep.graded_components},
                   {"phi_pieces", rep.phi_pieces}, {"squares_checked", rep.squares_checked}, {"matched", rep.matched}};
    r["bounds_used"]["root_box_phi"] = rep.box_bound;
    if (!rep.matched) {
      r["witnesses"]["mismatch"] = rep.mismatch;
      return kRefuted;
    }
    return kVerified;
  }

  int lambda_member(const Instance& inst, Json& r) const {
    if (opts_.weight.empty()) throw InputError("lambda-member needs --weight");
    const Weight w = inst.weight_text(opts_.weight, "--weight");
    r["bounds_used"]["search_radius"] = inst.lambda().search_radius();
    const MembershipVerdict v = inst.lambda().lambda_member(w);
    if (v == MembershipVerdict::Incomplete)
      throw Incomplete("saturated-class-window=" + std::to_string(inst.lambda().search_radius()), "--window",
                       "membership of " + w.str() + " undecided within the search window");
    r["result"] = {{"weight", inst.to_json(w)}, {"member", v == MembershipVerdict::Member}};
    return kVerified;
  }

  int enumerate(const Instance& inst, Json& r) const {
    const WeightFieldElement bound{Rational(phi_bound())};
    auto stream = inst.lambda().enumerate_window(bound);
    Json list = Json::array();
    for (const auto& w : stream.take(opts_.count)) list.push_back(inst.to_json(w));
    r["bounds_used"]["count"] = opts_.count;
    r["result"] = {{"elements", std::move(list)}};
    return kVerified;
  }

  const Options& opts_;
  Json doc_;
};

Outcome run_instance(const Options& opts, const std::string& path) {
  Json doc;
  if (path.empty()) {
    doc = default_instance();
  } else {
    std::ifstream in(path);
    if (!in) {
      Outcome o;
      o.report = {{"schema", kSchema}, {"operation", opts.subcommand}, {"verdict", "input-error"},
                  {"error", {{"pointer", ""}, {"message", "cannot read instance file " + path}}}};
      o.exit = kInputError;
      return o;
    }
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      Outcome o;
      o.report = {{"schema", kSchema}, {"operation", opts.subcommand}, {"verdict", "input-error"},
                  {"error", {{"pointer", ""}, {"message", std::string("not valid JSON: ") + e.what()}}}};
      o.exit = kInputError;
      return o;
    }
  }
  return Run(opts, std::move(doc)).execute();
}

// Input errors dominate, then refutations, then incomplete runs.
int combine(int a, int b) {
  auto rank = [](int code) { return code == kInputError ? 3 : code == kRefuted ? 2 : code == kIncomplete ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

}  // namespace

int main(int argc, char** argv) {
  Options opts;
  CLI::App app{"Parabolic sheaves and equivariant modules on a log chart"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--instance", opts.instances, "Instance JSON file (repeatable)");
  app.add_option("--seed", opts.seed, "Seed for random instances");
  app.add_option("--out", opts.out, "Also write the report to this file");
  app.add_option("--jobs", opts.jobs, "Run independent instances concurrently")->check(CLI::PositiveNumber);
  app.add_option("--phi-bound", opts.phi_bound, "phi bound for windows and random instances (env LOGPAR_BOUND_PHI)");
  app.add_option("--lambda", opts.lambda, "Weight for sections and cohomology, comma-separated ambient coordinates");
  app.add_option("--weight", opts.weight, "Weight for lambda-member");
  app.add_option("--method", opts.method, "Cohomology method: recursion, koszul, both");
  app.add_flag("--no-log-variables", opts.no_log_variables, "Drop the log variables T from the coefficients");
  app.add_option("--truncations", opts.truncations, "Koszul truncation degrees")->delimiter(',');
  app.add_option("--level-window", opts.level_window, "Irrational Lambda: classes scanned up to this level");
  app.add_option("--window", opts.window, "Saturated Lambda: shift window for class membership");
  app.add_option("--count", opts.count, "Number of elements for enumerate");
  app.add_option("--axiom-window", opts.axiom_window, "phi window for sheaf axiom checks");
  const std::pair<const char*, const char*> commands[] = {
      {"check-sheaf", "Check the sheaf axioms of the instance's sheaf"},
      {"phi", "Parabolic sheaf of the instance's module"},
      {"psi", "Equivariant module of the instance's sheaf"},
      {"roundtrip", "Certify psi(phi(F)) = F and phi(psi(E)) = E"},
      {"sections", "Sections of L_lambda, or of the module twisted by lambda"},
      {"cohomology", "Cohomology of the character lattice with coefficients in L_lambda"},
      {"kernel", "Syzygies of the module's relations"},
      {"compare-root", "Compare phi with the graded module on the root stack"},
      {"lambda-member", "Is --weight in Lambda?"},
      {"enumerate", "First --count elements of Lambda with phi at most --phi-bound"}};
  for (const auto& [name, help] : commands)
    app.add_subcommand(name, help)->callback([&opts, name = name] { opts.subcommand = name; });
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInputError;
  }

  std::vector<std::string> paths = opts.instances;
  if (paths.empty()) paths.push_back("");
  std::vector<Outcome> outcomes(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paths.size(); i = next++) outcomes[i] = run_instance(opts, paths[i]);
  };
  std::vector<std::thread> pool;
  const int threads = std::min<int>(opts.jobs, static_cast<int>(paths.size()));
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kVerified;
  Json body;
  if (outcomes.size() == 1) {
    body = outcomes[0].report;
    code = outcomes[0].exit;
  } else {
    body = Json::array();
    for (auto& o : outcomes) {
      body.push_back(o.report);
      code = combine(code, o.exit);
    }
  }
  const std::string text = body.dump(2) + "\n";
  std::cout << text;
  if (!opts.out.empty()) {
    std::ofstream f(opts.out);
    if (!f) {
      std::cerr << "cannot write " << opts.out << "\n";
      return kInputError;
    }
    f << text;
  }
  return code;
}

// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact;
// the only tolerances are the wall-clock budgets below.

#include "logpar/cohomology.hpp"
#include "logpar/correspondence.hpp"
#include "logpar/errors.hpp"
#include "logpar/io.hpp"
#include "logpar/random_instances.hpp"
#include "oracles/ringb_oracle.hpp"
#include "oracles/weights_oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace {

using namespace logpar;

constexpr double kRoundtripParabolicBudget = 60.0;  // seconds
constexpr double kRoundtripModuleBudget = 60.0;
constexpr double kRootStackBudget = 30.0;

constexpr int kSheavesPerConfig = 100;
constexpr int kPresentationsPerConfig = 100;
constexpr int kLambdasPerConfig = 20;
constexpr int kTriplesPerConfig = 20;
constexpr int kRootStackSheaves = 30;
constexpr int kInductionsPerConfig = 50;
constexpr std::int64_t kPhiBound = 3;
constexpr long kOracleBox = 6;
constexpr int kTripleAttempts = 50;

struct Config {
  std::string label;
  RingPtr ring;
};

// P in {N, N^2, A1} x Lambda in {(1/2)P, (1/3)P, sat(P + one sqrt2 weight)} x m in {1, 2}.
std::vector<Config> configurations() {
  struct Monoid {
    const char* name;
    const char* generators;
    const char* irrational;
  };
  const Monoid monoids[] = {{"N", "[[1]]", R"([["a"]])"},
                            {"N2", "[[1,0],[0,1]]", R"([["a","2a"]])"},
                            {"A1", "[[2,0],[1,1],[0,2]]", R"([["a","a"]])"}};
  std::vector<Config> out;
  for (const auto& p : monoids)
    for (const char* lambda : {"half", "third", "sat"})
      for (int m : {1, 2}) {
        std::ostringstream doc;
        doc << R"({"monoid": {"rank": )" << (std::string(p.name) == "N" ? 1 : 2) << R"(, "generators": )" << p.generators
            << R"(}, "lambda": )";
        if (std::string(lambda) == "half") doc << R"({"kind": "fraction", "n": 2})";
        else if (std::string(lambda) == "third") doc << R"({"kind": "fraction", "n": 3})";
        else doc << R"({"kind": "saturated", "generators": )" << p.irrational << "}";
        doc << R"(, "coefficients": {"nilpotency": )" << m << "}}";
        const Instance inst(Json::parse(doc.str()));
        out.push_back({std::string(p.name) + "/" + lambda + "/m" + std::to_string(m), inst.ring()});
      }
  return out;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string first_failure;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome within_budget(Outcome o, double elapsed, double budget) {
  char buf[96];
  std::snprintf(buf, sizeof buf, " in %.1f s (budget %.0f s)", elapsed, budget);
  o.detail += buf;
  if (elapsed >= budget) o.fail("over the time budget");
  return o;
}

Outcome roundtrip_parabolic_criterion(const std::vector<Config>& configs) {
  Outcome o;
  Rng rng(1001);
  const auto start = Clock::now();
  std::size_t count = 0;
  for (const auto& c : configs)
    for (int t = 0; t < kSheavesPerConfig; ++t) {
      const ParabolicSheaf e = random_sheaf(rng, c.ring, 3);
      try {
        if (!roundtrip_parabolic(e).valid) o.fail(c.label + ": invalid witness");
      } catch (const WitnessFailed& err) {
        o.fail(c.label + ": " + err.what());
      }
      ++count;
    }
  o.detail = std::to_string(count) + " sheaves";
  return within_budget(o, seconds_since(start), kRoundtripParabolicBudget);
}

Outcome roundtrip_module_criterion(const std::vector<Config>& configs) {
  Outcome o;
  Rng rng(1002);
  const auto start = Clock::now();
  std::size_t count = 0;
  for (const auto& c : configs)
    for (int t = 0; t < kPresentationsPerConfig; ++t) {
      const EquivariantModule f = random_presentation(rng, c.ring, 3, 3, kPhiBound);
      try {
        if (!roundtrip_module(f).valid) o.fail(c.label + ": invalid witness");
      } catch (const WitnessFailed& err) {
        o.fail(c.label + ": " + err.what());
      }
      ++count;
    }
  o.detail = std::to_string(count) + " presentations";
  return within_budget(o, seconds_since(start), kRoundtripModuleBudget);
}

Outcome cohomology_criterion(const std::vector<Config>& configs) {
  Outcome o;
  Rng rng(1003);
  std::size_t lambdas = 0, classes = 0, incomplete = 0;
  for (const auto& c : configs) {
    const auto window = window_elements(c.ring->lambda(), kPhiBound);
    const int r = c.ring->lambda().rank();
    for (int t = 0; t < kLambdasPerConfig; ++t) {
      const Weight lambda = window[draw(rng, window.size())] - window[draw(rng, window.size())];
      const CohomologyReport rep = group_cohomology(*c.ring, lambda);  // recursion and Koszul
      ++lambdas;
      if (!rep.complete) ++incomplete;
      const std::string where = c.label + " lambda=" + lambda.str();
      for (std::size_t m = 1; m < rep.dims.size(); ++m)
        if (rep.dims[m] != 0) o.fail(where + ": H^" + std::to_string(m) + " != 0");
      if (!rep.stabilized) o.fail(where + ": not stabilized");
      for (const auto& cls : rep.classes) {
        ++classes;
        for (std::size_t m = 1; m < cls.character.recursion.size(); ++m)
          if (cls.character.recursion[m] != 0) o.fail(where + ": recursion H^m != 0");
        std::vector<int> truncations;
        for (const auto& s : cls.character.slices) {
          truncations.push_back(s.truncation);
          for (std::size_t m = 1; m < s.transition_vanishes.size(); ++m)
            if (!s.transition_vanishes[m]) o.fail(where + ": Koszul transition nonzero at d=" + std::to_string(s.truncation));
        }
        if (truncations != std::vector<int>{r + 2, r + 3}) o.fail(where + ": unexpected Koszul slices");
      }
    }
  }
  // Negative control: trivial character, no log variables.
  const auto control = configurations().front().ring;  // N, (1/2)N, A = Q
  CohomologyOptions plain;
  plain.log_variables = false;
  const CohomologyReport circle = group_cohomology(*control, Weight::zero(1), plain);
  const bool control_ok = circle.dims.size() == 2 && circle.dims[1] == 1;
  if (!control_ok) o.fail("negative control: H^1 without log variables is not 1");
  o.detail = std::to_string(lambdas) + " weights, " + std::to_string(classes) + " classes, " +
             std::to_string(incomplete) + " scanned to the level window (irrational Lambda); control H^1 = " +
             (circle.dims.size() > 1 ? std::to_string(circle.dims[1]) : "?");
  return o;
}

Outcome exactness_criterion(const std::vector<Config>& configs) {
  Outcome o;
  Rng rng(1004);
  std::size_t triples = 0, resampled = 0, twists = 0;
  for (const auto& c : configs) {
    const auto window = window_elements(c.ring->lambda(), kPhiBound);
    for (int t = 0; t < kTriplesPerConfig; ++t) {
      bool done = false;
      for (int attempt = 0; attempt < kTripleAttempts && !done; ++attempt) {
        std::vector<Weight> target(1 + draw(rng, 2));
        for (auto& w : target) w = window[draw(rng, window.size())].frac();
        const FreeMap map = random_map(rng, c.ring, target, 1 + draw(rng, 3), kPhiBound);
        try {
          const TripleExactness rep = check_exactness(image_triple(map));
          const std::string where = c.label + " " + map.str();
          if (!rep.module_maps) o.fail(where + ": maps not well defined");
          if (!rep.module_exact) o.fail(where + ": not exact as modules");
          if (!rep.sections_exact) o.fail(where + ": sections not exact");
          twists += rep.twists.size();
          done = true;
        } catch (const Incomplete&) {
          ++resampled;  // kernel generators beyond the level window
        }
      }
      if (!done) o.fail(c.label + ": no triple within the level window after resampling");
      ++triples;
    }
  }
  o.detail = std::to_string(triples) + " triples, " + std::to_string(twists) + " twists, " + std::to_string(resampled) +
             " resampled";
  return o;
}

Outcome colimit_criterion(const std::vector<Config>& configs) {
  Outcome o;
  std::size_t weights = 0, compared = 0;
  for (const auto& c : configs) {
    const WeightMonoid& lambda = c.ring->lambda();
    const DualElement& deg = c.ring->log_degree();
    std::map<Weight, bool, WeightKeyLess> seen;
    for (const auto& w : window_elements(lambda, kPhiBound)) {
      ++weights;
      const Weight cls = w.frac();
      if (seen.count(cls)) continue;
      seen[cls] = true;
      ++compared;
      const auto sec = c.ring->sections(w);
      const auto expected = oracle::class_invariants(lambda, cls, kOracleBox, c.ring->order(),
                                                     [&](const LatticePoint& h) { return deg(h); });
      const auto got = sec->module.invariants();
      if (std::vector<long>(got.begin(), got.end()) != expected) o.fail(c.label + " " + w.str() + ": module differs");
      auto minimal = oracle::minimal_by_comparison(lambda, oracle::class_monomials(lambda, cls, kOracleBox));
      if (minimal.size() != sec->monomials.size()) o.fail(c.label + " " + w.str() + ": minimal monomials differ");
      for (const auto& mu : minimal)
        if (std::find(sec->monomials.begin(), sec->monomials.end(), mu) == sec->monomials.end())
          o.fail(c.label + " " + w.str() + ": missing minimal monomial " + mu.str());
    }
  }
  o.detail = std::to_string(weights) + " weights with phi <= 3, " + std::to_string(compared) + " classes";
  return o;
}

Outcome root_stack_criterion() {
  Outcome o;
  Rng rng(1006);
  const auto start = Clock::now();
  std::size_t squares = 0;
  const char* monoids[] = {"[[1]]", "[[1,0],[0,1]]", "[[2,0],[1,1],[0,2]]"};
  for (int n : {2, 3, 4})
    for (int t = 0; t < kRootStackSheaves; ++t) {
      const int p = t % 3, m = 1 + (t / 3) % 2;
      std::ostringstream doc;
      doc << R"({"monoid": {"rank": )" << (p == 0 ? 1 : 2) << R"(, "generators": )" << monoids[p]
          << R"(}, "lambda": {"kind": "fraction", "n": )" << n << R"(}, "coefficients": {"nilpotency": )" << m << "}}";
      const Instance inst(Json::parse(doc.str()));
      const ParabolicSheaf e = random_sheaf(rng, inst.ring(), 3);
      const RootStackReport rep = compare_root_stack(psi(e));
      squares += rep.squares_checked;
      if (!rep.matched) o.fail("n=" + std::to_string(n) + ": " + rep.mismatch);
    }
  o.detail = std::to_string(3 * kRootStackSheaves) + " sheaves, " + std::to_string(squares) + " squares";
  return within_budget(o, seconds_since(start), kRootStackBudget);
}

Outcome induction_criterion(const std::vector<Config>& configs) {
  Outcome o;
  Rng rng(1007);
  std::size_t inclusions = 0;
  for (const auto& c : configs) {
    const auto window = window_elements(c.ring->lambda(), kPhiBound);
    for (int t = 0; t < kInductionsPerConfig; ++t) {
      const ParabolicSheaf e = random_sheaf(rng, c.ring, 3);
      std::vector<Weight> reps = e.system().representatives();
      FineWeightSystem larger = e.system();
      for (int extra = 0; extra < 2; ++extra) {
        const Weight w = window[draw(rng, window.size())];
        if (larger.index_of(w)) continue;
        reps.push_back(w);
        larger = FineWeightSystem(c.ring->lambda(), reps);
      }
      const ParabolicSheaf induced = induce(e, larger);
      if (!identical(restrict(induced, e.system()), e)) o.fail(c.label + ": restrict(induce(E)) != E");
      if (t < 5 && !check_axioms(induced).passed) o.fail(c.label + ": induced sheaf violates the axioms");
      ++inclusions;
    }
  }
  o.detail = std::to_string(inclusions) + " sheaves, each with its own enlargement of R";
  return o;
}

Outcome saturated_stream_criterion() {
  Outcome o;
  const Instance inst(Json::parse(R"({"monoid": {"rank": 1, "generators": [[1]]},
                                      "lambda": {"kind": "saturated", "generators": [["a"]]}})"));
  const auto got = inst.lambda().enumerate_window(1).take(10);
  const auto expected = oracle::unit_interval_sqrt2_elements(10);
  if (got.size() != expected.size()) o.fail("stream ended early");
  std::string listed;
  for (std::size_t i = 0; i < std::min(got.size(), expected.size()); ++i) {
    listed += (i ? ", " : "") + got[i].str();
    if (got[i].coords[0].coefficient(0) != expected[i].rational ||
        got[i].coords[0].coefficient(1) != expected[i].irrational)
      o.fail("element " + std::to_string(i) + " is " + got[i].str());
  }
  o.detail = listed;
  return o;
}

}  // namespace

int main() {
  const auto configs = configurations();
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "roundtrip of parabolic sheaves", [&] { return roundtrip_parabolic_criterion(configs); }},
      {2, "roundtrip of equivariant modules", [&] { return roundtrip_module_criterion(configs); }},
      {3, "cohomology vanishing with log variables", [&] { return cohomology_criterion(configs); }},
      {4, "exactness of sections on short exact triples", [&] { return exactness_criterion(configs); }},
      {5, "sections against brute-force class slices", [&] { return colimit_criterion(configs); }},
      {6, "root stack comparison", [] { return root_stack_criterion(); }},
      {7, "restriction after induction", [&] { return induction_criterion(configs); }},
      {8, "saturated sqrt2 stream on [0,1]", [] { return saturated_stream_criterion(); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("CRITERION %d %s: %s | %s | %.1f s%s%s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                seconds_since(start), o.pass ? "" : " | first failure: ", o.first_failure.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

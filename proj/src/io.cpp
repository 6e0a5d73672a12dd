#include "logpar/io.hpp"

#include "logpar/linalg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace logpar {

namespace {

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }
std::string child(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

const Json& require(const Json& obj, const std::string& key, const std::string& pointer) {
  if (!obj.is_object()) throw SchemaError(pointer, "expected an object");
  if (!obj.contains(key)) throw SchemaError(child(pointer, key), "missing");
  return obj.at(key);
}

const Json& require_array(const Json& j, const std::string& pointer) {
  if (!j.is_array()) throw SchemaError(pointer, "expected an array");
  return j;
}

std::int64_t integer(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer()) throw SchemaError(pointer, "expected an integer");
  return j.get<std::int64_t>();
}

// Exact scalars are strings; small integers may also be written as numbers.
std::string scalar_text(const Json& j, const std::string& pointer) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  throw SchemaError(pointer, "expected an exact scalar as a string");
}

template <class F>
auto guarded(const std::string& pointer, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const InputError& e) {
    throw SchemaError(pointer, e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(pointer, e.what());
  }
}

GroundPtr read_ground(const Json& doc) {
  if (!doc.contains("ground")) return sqrt2_ground();
  const Json& g = doc.at("ground");
  std::vector<Integer> poly;
  const Json& coeffs = require_array(require(g, "minpoly", "/ground"), "/ground/minpoly");
  for (std::size_t k = 0; k < coeffs.size(); ++k) poly.emplace_back(integer(coeffs[k], child("/ground/minpoly", k)));
  const Json& interval = require_array(require(g, "interval", "/ground"), "/ground/interval");
  if (interval.size() != 2) throw SchemaError("/ground/interval", "expected [lower, upper]");
  const Rational lo = guarded("/ground/interval/0", [&] { return parse_rational(scalar_text(interval[0], "/ground/interval/0")); });
  const Rational hi = guarded("/ground/interval/1", [&] { return parse_rational(scalar_text(interval[1], "/ground/interval/1")); });
  auto ground = guarded("/ground", [&] { return std::make_shared<const AlgebraicGround>(poly, lo, hi); });
  if (ground->degree() != 2) throw SchemaError("/ground/minpoly", "only quadratic grounds are supported");
  if (ground->same_as(*sqrt2_ground())) return sqrt2_ground();
  return ground;
}

std::shared_ptr<const ToricMonoid> read_monoid(const Json& doc) {
  const Json& m = require(doc, "monoid", "");
  const std::int64_t rank = integer(require(m, "rank", "/monoid"), "/monoid/rank");
  const Json& gens = require_array(require(m, "generators", "/monoid"), "/monoid/generators");
  std::vector<LatticePoint> points;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::string at = child("/monoid/generators", k);
    const Json& g = require_array(gens[k], at);
    if (static_cast<std::int64_t>(g.size()) != rank) throw SchemaError(at, "generator has the wrong dimension");
    LatticePoint p;
    for (std::size_t i = 0; i < g.size(); ++i) p.push_back(integer(g[i], child(at, i)));
    points.push_back(std::move(p));
  }
  SaturationLattice lattice = SaturationLattice::Generated;
  if (m.contains("saturation")) {
    const std::string s = m.at("saturation").is_string() ? m.at("saturation").get<std::string>() : "";
    if (s == "ambient") lattice = SaturationLattice::Ambient;
    else if (s != "generated") throw SchemaError("/monoid/saturation", "expected \"generated\" or \"ambient\"");
  }
  return guarded("/monoid", [&] { return std::make_shared<const ToricMonoid>(ToricMonoid::make(points, lattice)); });
}

Mat<Rational> inverse_of(const Mat<Rational>& m) {
  return *solve<Rational>(m, Mat<Rational>::Identity(m.rows(), m.cols()));
}

std::string dump_scalar(const WeightFieldElement& x) { return x.str(); }

}  // namespace

Instance::Instance(Json doc) : doc_(std::move(doc)) {
  if (!doc_.is_object()) throw SchemaError("", "instance must be a JSON object");
  ground_ = read_ground(doc_);
  monoid_ = read_monoid(doc_);
  const Json& lam = require(doc_, "lambda", "");
  const Json& kind = require(lam, "kind", "/lambda");
  std::optional<WeightMonoid> lambda;
  if (kind == "fraction") {
    const std::int64_t n = integer(require(lam, "n", "/lambda"), "/lambda/n");
    if (n < 1) throw SchemaError("/lambda/n", "must be positive");
    lambda = WeightMonoid::fraction(monoid_, static_cast<int>(n));
  } else if (kind == "saturated") {
    const Json& gens = require_array(require(lam, "generators", "/lambda"), "/lambda/generators");
    std::vector<Weight> extra;
    const Mat<Rational> inv = inverse_of(monoid_->basis());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const std::string at = child("/lambda/generators", k);
      const Json& g = require_array(gens[k], at);
      if (static_cast<int>(g.size()) != monoid_->rank()) throw SchemaError(at, "generator has the wrong dimension");
      Weight w = Weight::zero(monoid_->rank());
      for (int i = 0; i < monoid_->rank(); ++i) {
        const auto x = guarded(child(at, static_cast<std::size_t>(i)), [&] {
          return parse_weight_scalar(scalar_text(g[static_cast<std::size_t>(i)], at), ground_);
        });
        for (int r = 0; r < monoid_->rank(); ++r)
          w.coords[static_cast<std::size_t>(r)] += WeightFieldElement(inv(r, i)) * x;
      }
      extra.push_back(std::move(w));
    }
    int radius = 4;
    if (lam.contains("search_radius")) radius = static_cast<int>(integer(lam.at("search_radius"), "/lambda/search_radius"));
    lambda = guarded("/lambda", [&] { return WeightMonoid::saturated(monoid_, extra, radius); });
  } else {
    throw SchemaError("/lambda/kind", "expected \"fraction\" or \"saturated\"");
  }

  int nilpotency = 1;
  std::optional<DualElement> degree;
  if (doc_.contains("coefficients")) {
    const Json& c = doc_.at("coefficients");
    if (c.contains("nilpotency")) nilpotency = static_cast<int>(integer(c.at("nilpotency"), "/coefficients/nilpotency"));
    if (nilpotency < 1 || nilpotency > 16) throw SchemaError("/coefficients/nilpotency", "must lie in 1..16");
    if (c.contains("log_degree")) {
      const Json& d = require_array(c.at("log_degree"), "/coefficients/log_degree");
      if (static_cast<int>(d.size()) != monoid_->rank()) throw SchemaError("/coefficients/log_degree", "wrong dimension");
      // Ambient covector c; on the basis vector p_i it takes the value c . p_i.
      DualElement deg;
      for (int i = 0; i < monoid_->rank(); ++i) {
        Rational v = 0;
        for (int k = 0; k < monoid_->rank(); ++k)
          v += Rational(integer(d[static_cast<std::size_t>(k)], child("/coefficients/log_degree", static_cast<std::size_t>(k)))) *
               monoid_->basis()(k, i);
        if (denominator(v) != 1) throw SchemaError("/coefficients/log_degree", "not integral on the basis of P^gp");
        deg.coords.push_back(to_int64(floor_of(v)));
      }
      degree = deg;
    }
  }
  const WeightMonoid lam_value = *lambda;
  ring_ = guarded("/coefficients", [&] {
    return std::make_shared<const RingB>(lam_value, CoefficientRing(nilpotency), degree);
  });
}

Instance Instance::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read instance file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("not valid JSON: ") + e.what());
  }
  return Instance(std::move(doc));
}

Weight Instance::weight(const Json& coords, const std::string& pointer) const {
  const Json& c = require_array(coords, pointer);
  const int r = monoid_->rank();
  if (static_cast<int>(c.size()) != r) throw SchemaError(pointer, "weight has the wrong dimension");
  const Mat<Rational> inv = inverse_of(monoid_->basis());
  Weight w = Weight::zero(r);
  for (int i = 0; i < r; ++i) {
    const std::string at = child(pointer, static_cast<std::size_t>(i));
    const auto x = guarded(at, [&] { return parse_weight_scalar(scalar_text(c[static_cast<std::size_t>(i)], at), ground_); });
    for (int k = 0; k < r; ++k) w.coords[static_cast<std::size_t>(k)] += WeightFieldElement(inv(k, i)) * x;
  }
  return w;
}

Weight Instance::group_weight(const Json& coords, const std::string& pointer) const {
  const Weight w = weight(coords, pointer);
  switch (lambda().class_in_group(CharacterClass(w))) {
    case MembershipVerdict::Member:
      return w;
    case MembershipVerdict::NotMember:
      throw SchemaError(pointer, "weight is not in the group generated by Lambda");
    case MembershipVerdict::Incomplete:
      break;
  }
  throw Incomplete("saturated-class-window=" + std::to_string(lambda().search_radius()), "--window",
                   pointer + ": group membership undecided within the search window");
}

Weight Instance::weight_text(const std::string& text, const std::string& pointer) const {
  Json coords = Json::array();
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) coords.push_back(part);
  return weight(coords, pointer);
}

Json Instance::to_json(const Weight& w) const {
  Json out = Json::array();
  for (int i = 0; i < monoid_->rank(); ++i) {
    WeightFieldElement x;
    for (int k = 0; k < monoid_->rank(); ++k)
      x += WeightFieldElement(monoid_->basis()(i, k)) * w.coords[static_cast<std::size_t>(k)];
    out.push_back(dump_scalar(x));
  }
  return out;
}

FineWeightSystem Instance::system(const Json& reps, const std::string& pointer) const {
  const Json& list = require_array(reps, pointer);
  std::vector<Weight> ws;
  for (std::size_t k = 0; k < list.size(); ++k) ws.push_back(group_weight(list[k], child(pointer, k)));
  return guarded(pointer, [&] { return FineWeightSystem(lambda(), ws); });
}

EquivariantModule Instance::module(const Json& payload, const std::string& pointer) const {
  const int m = ring_->order();
  const Json& gens_json = require_array(require(payload, "gens", pointer), child(pointer, "gens"));
  std::vector<Weight> gens;
  for (std::size_t k = 0; k < gens_json.size(); ++k) {
    const std::string at = child(child(pointer, "gens"), k);
    gens.push_back(group_weight(require(gens_json[k], "weight", at), child(at, "weight")));
  }
  struct Term {
    std::size_t row, col;
    AElem a;
    Weight monomial;
    std::string at;
  };
  std::vector<Term> terms;
  std::size_t columns = 0;
  if (payload.contains("rels")) {
    const Json& rels = require_array(payload.at("rels"), child(pointer, "rels"));
    for (std::size_t k = 0; k < rels.size(); ++k) {
      const std::string at = child(child(pointer, "rels"), k);
      const Json& e = rels[k];
      const std::int64_t row = integer(require(e, "row", at), child(at, "row"));
      const std::int64_t col = integer(require(e, "col", at), child(at, "col"));
      if (row < 0 || static_cast<std::size_t>(row) >= gens.size()) throw SchemaError(child(at, "row"), "no such generator");
      if (col < 0) throw SchemaError(child(at, "col"), "must be non-negative");
      const AElem a = guarded(child(at, "a"), [&] { return parse_aelem(scalar_text(require(e, "a", at), child(at, "a")), m); });
      Weight mono = e.contains("s") ? group_weight(e.at("s"), child(at, "s")) : Weight::zero(monoid_->rank());
      if (e.contains("p")) {
        const Json& p = require_array(e.at("p"), child(at, "p"));
        LatticePoint amb;
        for (std::size_t i = 0; i < p.size(); ++i) amb.push_back(integer(p[i], child(child(at, "p"), i)));
        const auto coords = guarded(child(at, "p"), [&] { return monoid_->from_ambient(amb); });
        if (!coords) throw SchemaError(child(at, "p"), "not in the group of P");
        mono = mono + *coords;
      }
      terms.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col), a, mono, at});
      columns = std::max(columns, static_cast<std::size_t>(col) + 1);
    }
  }
  std::vector<std::optional<Weight>> sources;
  if (payload.contains("rel_weights")) {
    const Json& rw = require_array(payload.at("rel_weights"), child(pointer, "rel_weights"));
    for (std::size_t k = 0; k < rw.size(); ++k) sources.emplace_back(group_weight(rw[k], child(child(pointer, "rel_weights"), k)));
    if (sources.size() < columns) throw SchemaError(child(pointer, "rel_weights"), "fewer weights than relation columns");
  }
  sources.resize(std::max(columns, sources.size()));
  // A relation's weight defaults to the one making its first term homogeneous.
  for (const auto& t : terms)
    if (!sources[t.col]) sources[t.col] = gens[t.row] - t.monomial;
  std::vector<Weight> src;
  for (std::size_t j = 0; j < sources.size(); ++j) {
    if (!sources[j]) throw SchemaError(child(pointer, "rel_weights"), "relation " + std::to_string(j) + " has no weight");
    src.push_back(*sources[j]);
  }
  FreeMap rel(ring_, src, gens);
  for (const auto& t : terms) guarded(t.at, [&] { rel.add_term(t.row, t.col, t.a, t.monomial); return 0; });
  return EquivariantModule(std::move(rel));
}

ParabolicSheaf Instance::sheaf(const Json& payload, const std::string& pointer) const {
  const int m = ring_->order();
  const std::string reps_at = child(pointer, "representatives");
  const FineWeightSystem sys = system(require(payload, "representatives", pointer), reps_at);
  if (sys.size() != payload.at("representatives").size())
    throw SchemaError(reps_at, "two representatives lie in the same class");
  const Json& pieces_json = require_array(require(payload, "pieces", pointer), child(pointer, "pieces"));
  if (pieces_json.size() != sys.size()) throw SchemaError(child(pointer, "pieces"), "expected one piece per representative");
  auto read_matrix = [&](const Json& rows_json, Index rows, Index cols, const std::string& at, bool by_columns) {
    const Json& outer = require_array(rows_json, at);
    AMatrix out(m, rows, cols);
    if (static_cast<Index>(outer.size()) != (by_columns ? cols : rows)) throw SchemaError(at, "wrong number of entries");
    for (std::size_t x = 0; x < outer.size(); ++x) {
      const std::string ax = child(at, x);
      const Json& inner = require_array(outer[x], ax);
      if (static_cast<Index>(inner.size()) != (by_columns ? rows : cols)) throw SchemaError(ax, "wrong length");
      for (std::size_t y = 0; y < inner.size(); ++y) {
        const std::string ay = child(ax, y);
        const AElem a = guarded(ay, [&] { return parse_aelem(scalar_text(inner[y], ay), m); });
        if (by_columns) out(static_cast<Index>(y), static_cast<Index>(x)) = a;
        else out(static_cast<Index>(x), static_cast<Index>(y)) = a;
      }
    }
    return out;
  };
  std::vector<FGModule> pieces;
  for (std::size_t k = 0; k < pieces_json.size(); ++k) {
    const std::string at = child(child(pointer, "pieces"), k);
    const std::int64_t g = integer(require(pieces_json[k], "gens", at), child(at, "gens"));
    if (g < 0) throw SchemaError(child(at, "gens"), "must be non-negative");
    Index ncols = 0;
    if (pieces_json[k].contains("rels")) ncols = static_cast<Index>(require_array(pieces_json[k].at("rels"), child(at, "rels")).size());
    AMatrix rel = pieces_json[k].contains("rels") ? read_matrix(pieces_json[k].at("rels"), g, ncols, child(at, "rels"), true)
                                                  : AMatrix(m, g, 0);
    pieces.emplace_back(std::move(rel));
  }
  std::vector<Transition> transitions;
  if (payload.contains("transitions")) {
    const Json& ts = require_array(payload.at("transitions"), child(pointer, "transitions"));
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const std::string at = child(child(pointer, "transitions"), k);
      const std::int64_t from = integer(require(ts[k], "from", at), child(at, "from"));
      const std::int64_t to = integer(require(ts[k], "to", at), child(at, "to"));
      if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= sys.size() || static_cast<std::size_t>(to) >= sys.size())
        throw SchemaError(at, "no such representative");
      const Weight jump = group_weight(require(ts[k], "jump", at), child(at, "jump"));
      AMatrix mat = read_matrix(require(ts[k], "matrix", at), pieces[static_cast<std::size_t>(to)].generators(),
                                pieces[static_cast<std::size_t>(from)].generators(), child(at, "matrix"), false);
      transitions.push_back({static_cast<std::size_t>(from), static_cast<std::size_t>(to), jump, std::move(mat)});
    }
  }
  // A piece without an explicit zero loop gets the identity.
  for (std::size_t a = 0; a < pieces.size(); ++a) {
    const bool given = std::any_of(transitions.begin(), transitions.end(),
                                   [&](const Transition& t) { return t.from == a && t.to == a && t.jump.is_zero(); });
    if (!given) transitions.push_back({a, a, Weight::zero(monoid_->rank()), AMatrix::identity(m, pieces[a].generators())});
  }
  return guarded(pointer, [&] { return ParabolicSheaf(ring_, sys, std::move(pieces), transitions); });
}

Json Instance::to_json(const EquivariantModule& f) const {
  Json out;
  out["gens"] = Json::array();
  for (const auto& w : f.generators()) out["gens"].push_back({{"weight", to_json(w)}});
  out["rel_weights"] = Json::array();
  for (const auto& w : f.relation_weights()) out["rel_weights"].push_back(to_json(w));
  out["rels"] = Json::array();
  const FreeMap& rel = f.relations();
  for (std::size_t j = 0; j < rel.cols(); ++j)
    for (std::size_t i = 0; i < rel.rows(); ++i) {
      const auto& coeffs = rel.entry(i, j);
      for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (!coeffs[k].is_zero())
          out["rels"].push_back({{"row", i}, {"col", j}, {"a", coeffs[k].str()}, {"s", to_json(rel.entry_sections(i, j).monomials[k])}});
    }
  return out;
}

Json Instance::to_json(const ParabolicSheaf& e) const {
  Json out;
  out["representatives"] = Json::array();
  for (const auto& r : e.system().representatives()) out["representatives"].push_back(to_json(r));
  out["pieces"] = Json::array();
  for (const auto& piece : e.pieces()) {
    Json rels = Json::array();
    const AMatrix& r = piece.relations();
    for (Index j = 0; j < r.cols(); ++j) {
      Json col = Json::array();
      for (Index i = 0; i < r.rows(); ++i) col.push_back(r(i, j).str());
      rels.push_back(std::move(col));
    }
    out["pieces"].push_back({{"gens", piece.generators()}, {"rels", std::move(rels)}, {"shape", piece.describe()}});
  }
  out["transitions"] = Json::array();
  for (const auto& t : e.transitions())
    out["transitions"].push_back({{"from", t.from}, {"to", t.to}, {"jump", to_json(t.jump)}, {"matrix", logpar::to_json(t.matrix)}});
  return out;
}

Json to_json(const AMatrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const FGModule& m) {
  return {{"shape", m.describe()}, {"generators", m.generators()}, {"dimension", m.dimension()}, {"invariants", m.invariants()}};
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace logpar

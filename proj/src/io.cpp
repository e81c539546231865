#include "qpmut/io.hpp"

#include <set>

namespace qpmut {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& why) {
  fail(ErrorKind::Parse, (where.empty() ? "/" : where) + ": " + why);
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

int as_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) bad(where, "expected an integer");
  const auto x = v.get<long long>();
  if (x < -1000000 || x > 1000000) bad(where, "integer out of range");
  return static_cast<int>(x);
}

std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) bad(where, "expected a string");
  return v.get<std::string>();
}

const Json& as_array(const Json& v, const std::string& where) {
  if (!v.is_array()) bad(where, "expected an array");
  return v;
}

// Re-raises a library error with a position prefix, keeping its kind.
template <typename F>
auto at(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const QpError& e) {
    throw QpError(e.kind(), where + ": " + e.what());
  }
}

std::pair<Quiver, DegreeMap> read_quiver(const Json& doc, const std::string& where, bool with_degrees) {
  const std::string vw = where + "/vertices";
  std::set<VertexId> vset;
  std::vector<VertexId> verts;
  const Json& vs = as_array(member(doc, "vertices", where), vw);
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const int v = as_int(vs[k], vw + "/" + std::to_string(k));
    if (!vset.insert(v).second) bad(vw + "/" + std::to_string(k), "duplicate vertex " + std::to_string(v));
    verts.push_back(v);
  }
  const std::string aw = where + "/arrows";
  std::vector<Arrow> arrows;
  DegreeMap degrees;
  std::set<ArrowId> ids;
  const Json& as = as_array(member(doc, "arrows", where), aw);
  for (std::size_t k = 0; k < as.size(); ++k) {
    const std::string here = aw + "/" + std::to_string(k);
    Arrow a{as_string(member(as[k], "id", here), here + "/id"), as_int(member(as[k], "src", here), here + "/src"),
            as_int(member(as[k], "tgt", here), here + "/tgt")};
    if (a.id.empty()) bad(here + "/id", "empty arrow id");
    if (!ids.insert(a.id).second) bad(here + "/id", "duplicate arrow id \"" + a.id + "\"");
    if (!vset.contains(a.src))
      fail(ErrorKind::Lookup, here + "/src: " + std::to_string(a.src) + " is not a vertex");
    if (!vset.contains(a.tgt))
      fail(ErrorKind::Lookup, here + "/tgt: " + std::to_string(a.tgt) + " is not a vertex");
    int deg = 0;
    if (with_degrees && as[k].contains("deg")) deg = as_int(as[k]["deg"], here + "/deg");
    degrees[a.id] = deg;
    arrows.push_back(std::move(a));
  }
  return {Quiver(std::move(verts), std::move(arrows)), std::move(degrees)};
}

Rational read_coeff(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (!v.is_string()) bad(where, "expected a rational string");
  return at(where, [&] { return parse_rational(v.get<std::string>()); });
}

}  // namespace

Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, what + ": invalid JSON at byte " + std::to_string(e.byte));
  }
}

GradedQP qp_from_json(const Json& doc) {
  auto [quiver, degrees] = read_quiver(doc, "", true);
  Potential w;
  if (doc.contains("potential")) {
    const Json& terms = as_array(doc["potential"], "/potential");
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string here = "/potential/" + std::to_string(k);
      const Rational c = read_coeff(member(terms[k], "coeff", here), here + "/coeff");
      const Json& cyc = as_array(member(terms[k], "cycle", here), here + "/cycle");
      std::vector<ArrowId> raw;
      for (std::size_t j = 0; j < cyc.size(); ++j)
        raw.push_back(as_string(cyc[j], here + "/cycle/" + std::to_string(j)));
      w.add(at(here + "/cycle", [&] { return canonicalize_word(quiver, raw); }), c);
    }
  }
  return GradedQP(std::move(quiver), std::move(w), std::move(degrees));
}

GradedQP parse_qp(std::string_view text) { return qp_from_json(parse_json(text, "QP document")); }

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json quiver_to_json(const Quiver& q) {
  Json arrows = Json::array();
  for (const Arrow& a : q.arrows()) arrows.push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
  return {{"vertices", q.vertices()}, {"arrows", std::move(arrows)}};
}

Quiver quiver_from_json(const Json& doc, const std::string& where) { return read_quiver(doc, where, false).first; }

Json potential_to_json(const Potential& w) {
  Json terms = Json::array();
  for (const auto& [word, c] : w.terms()) terms.push_back({{"coeff", to_string(c)}, {"cycle", word.arrows()}});
  return terms;
}

Json qp_to_json(const GradedQP& qp) {
  Json arrows = Json::array();
  for (const Arrow& a : qp.quiver.arrows())
    arrows.push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}, {"deg", qp.degree(a.id)}});
  return {{"vertices", qp.quiver.vertices()}, {"arrows", std::move(arrows)}, {"potential", potential_to_json(qp.potential)}};
}

DegreeMap degrees_from_json(const Json& doc) {
  if (doc.is_object() && doc.contains("arrows")) return qp_from_json(doc).degrees;
  if (!doc.is_object()) bad("", "expected an object mapping arrow ids to degrees");
  DegreeMap d;
  for (const auto& [key, value] : doc.items()) d[key] = as_int(value, "/" + key);
  return d;
}

Json degrees_to_json(const DegreeMap& d) {
  Json out = Json::object();
  for (const auto& [a, deg] : d) out[a] = deg;
  return out;
}

MutationSequence sequence_from_json(const Json& doc) {
  MutationSequence out;
  const Json& steps = as_array(doc, "");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const std::string here = "/" + std::to_string(k);
    MutationStep s;
    s.vertex = as_int(member(steps[k], "vertex", here), here + "/vertex");
    if (steps[k].contains("direction"))
      s.direction = at(here + "/direction", [&] {
        return parse_direction(as_string(steps[k]["direction"], here + "/direction"));
      });
    out.push_back(s);
  }
  return out;
}

Json step_to_json(const MutationStep& s) { return {{"vertex", s.vertex}, {"direction", to_string(s.direction)}}; }

Json sequence_to_json(const MutationSequence& s) {
  Json out = Json::array();
  for (const MutationStep& step : s) out.push_back(step_to_json(step));
  return out;
}

PresentedAlgebra algebra_from_json(const Json& doc) {
  Quiver q = read_quiver(member(doc, "quiver", ""), "/quiver", false).first;
  std::set<Relation> rels;
  if (doc.contains("relations")) {
    const Json& rs = as_array(doc["relations"], "/relations");
    for (std::size_t k = 0; k < rs.size(); ++k) {
      const std::string here = "/relations/" + std::to_string(k);
      const Json& pair = as_array(rs[k], here);
      if (pair.size() != 2) bad(here, "a relation lists exactly two arrows");
      rels.emplace(as_string(pair[0], here + "/0"), as_string(pair[1], here + "/1"));
    }
  }
  return at("/relations", [&] { return PresentedAlgebra(std::move(q), std::move(rels)); });
}

Json algebra_to_json(const PresentedAlgebra& alg) {
  Json rels = Json::array();
  for (const auto& [a, b] : alg.relations) rels.push_back({a, b});
  return {{"quiver", quiver_to_json(alg.quiver)}, {"relations", std::move(rels)}};
}

Json path_sum_to_json(const PathSum& sum) {
  Json out = Json::array();
  for (const auto& [path, c] : sum) out.push_back({{"coeff", to_string(c)}, {"path", path}});
  return out;
}

Json cycle_to_json(const UndirectedCycle& c) {
  Json out = Json::array();
  for (const CycleStep& s : c) out.push_back({{"arrow", s.arrow}, {"forward", s.forward}});
  return out;
}

Json weight_to_json(const WeightResult& w) {
  Json out{{"weight", w.weight}, {"canonical", w.canonical}, {"p", w.p}, {"q", w.q}};
  if (w.sequence)
    out["witness"] = {{"description", w.witness}, {"sequence", sequence_to_json(*w.sequence)}};
  else
    out["witness"] = {{"description", w.witness}};
  return out;
}

Json grading_verdict_to_json(const GradingVerdict& v) {
  Json out{{"equivalent", v.equivalent}};
  if (v.equivalent) {
    Json offsets = Json::object();
    for (const auto& [vertex, r] : v.offsets) offsets[std::to_string(vertex)] = r;
    out["offsets"] = std::move(offsets);
    if (v.automorphism) {
      Json verts = Json::object();
      for (const auto& [a, b] : v.automorphism->vertices) verts[std::to_string(a)] = b;
      Json arrows = Json::object();
      for (const auto& [a, b] : v.automorphism->arrows) arrows[a] = b;
      out["automorphism"] = {{"vertices", std::move(verts)}, {"arrows", std::move(arrows)}};
    }
  } else {
    out["violatedCycle"] = cycle_to_json(v.violated_cycle);
  }
  return out;
}

Json ar_summary_to_json(const ArSummary& s) {
  if (!s.applicable) return {{"applicable", false}, {"reason", "weight 0: piecewise hereditary, formula not applicable"}};
  return {{"total", s.total}, {"zainfinf", s.zainfinf}, {"zainf", s.zainf}};
}

Json polynomial_to_json(const Polynomial& p) { return Json(p); }

}  // namespace qpmut

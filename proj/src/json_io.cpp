#include "modal/json_io.hpp"

#include <algorithm>

#include "modal/error.hpp"
#include "modal/syntax.hpp"

namespace modal {

namespace {

std::size_t as_index(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InputError(std::string(what) + " must be a non-negative integer, got " + j.dump());
  }
  return j.get<std::size_t>();
}

const char* status_name(StabilizationResult::Status s) {
  switch (s) {
    case StabilizationResult::Status::Found:
      return "found";
    case StabilizationResult::Status::NotFound:
      return "not_found";
    case StabilizationResult::Status::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Valid:
      return "valid";
    case Verdict::Countermodel:
      return "countermodel";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

Json to_json(const WorldSet& s) {
  Json out = Json::array();
  s.for_each([&](std::size_t w) { out.push_back(w); });
  return out;
}

Json to_json(const Frame& f) {
  Json edges = Json::array();
  for (auto [from, to] : f.edges()) edges.push_back({from, to});
  return {{"worlds", f.world_count()}, {"edges", edges}};
}

Json to_json(const Valuation& v) {
  Json out = Json::object();
  for (const auto& [name, set] : v.entries()) out[name] = to_json(set);
  return out;
}

Json to_json(const ValidityReport& r) {
  Json out = {{"verdict", to_string(r.verdict)},
              {"exhaustive", r.exhaustive},
              {"valuations_tried", r.valuations_tried}};
  if (r.countermodel) out["countermodel"] = to_json(*r.countermodel);
  if (r.failing_world) out["failing_world"] = *r.failing_world;
  return out;
}

Json to_json(const LemmaCertificate& c) {
  Json refl = Json::array();
  auto points = c.chain.reflexive_points;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (auto p : points) refl.push_back(p);

  Json iterates = Json::array();
  for (const auto& s : c.iterates) iterates.push_back(to_json(s));
  Json s_values = Json::array();
  for (const auto& s : c.s_values) s_values.push_back(to_json(s));
  Json s_global = Json::object();
  for (const auto& [m, holds] : c.s_global) s_global[std::to_string(m)] = holds;
  Json claim = Json::object();
  for (const auto& [l, set] : c.claim_table) claim[std::to_string(l)] = to_json(set);

  return {{"n", c.n},
          {"chain", {{"size", c.chain.size}, {"reflexive_points", refl}}},
          {"valuation", to_json(c.valuation)},
          {"iterates", iterates},
          {"s_values", s_values},
          {"fails_at_zero", c.fails_at_zero},
          {"global_next", c.global_next},
          {"s_global", s_global},
          {"claim_table", claim},
          {"valid", c.valid()}};
}

Json to_json(const ConsequenceResult& r) {
  Json out = {{"holds", r.holds}, {"complete", r.complete}, {"pairs_tried", r.pairs_tried}};
  if (r.countermodel) {
    out["countermodel"] = {{"frame_index", r.countermodel->frame_index},
                           {"valuation", to_json(r.countermodel->valuation)},
                           {"failing_world", r.countermodel->failing_world}};
  }
  return out;
}

Json to_json(const FixpointResult& r) {
  Json orbit = Json::array();
  for (const auto& s : r.orbit) orbit.push_back(to_json(s));
  return {{"index", r.index}, {"fixpoint", to_json(r.fixpoint)}, {"orbit", orbit}};
}

Json to_json(const StabilizationResult& r) {
  Json refs = Json::array();
  for (const auto& ref : r.refutations) {
    refs.push_back({{"k", ref.k},
                    {"frame_index", ref.frame_index},
                    {"valuation", to_json(ref.valuation)},
                    {"failing_world", ref.failing_world}});
  }
  Json out = {{"status", status_name(r.status)}, {"refutations", refs}};
  if (r.status != StabilizationResult::Status::NotFound) out["n"] = r.n;
  return out;
}

WorldSet world_set_from_json(const Json& j, std::size_t worlds) {
  if (!j.is_array()) throw InputError("world set must be an array, got " + j.dump());
  std::vector<std::size_t> members;
  for (const auto& w : j) members.push_back(as_index(w, "world"));
  return WorldSet::from_indices(worlds, members);
}

Frame frame_from_json(const Json& j, std::size_t max_worlds) {
  if (!j.is_object() || !j.contains("worlds")) {
    throw InputError("frame must be an object with a \"worlds\" field");
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "worlds" && key != "edges") throw InputError("unknown frame field \"" + key + "\"");
  }
  std::size_t n = as_index(j.at("worlds"), "\"worlds\"");
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    const Json& e = j.at("edges");
    if (!e.is_array()) throw InputError("\"edges\" must be an array");
    for (const auto& pair : e) {
      if (!pair.is_array() || pair.size() != 2) {
        throw InputError("edge must be a two-element array, got " + pair.dump());
      }
      edges.emplace_back(as_index(pair[0], "edge endpoint"), as_index(pair[1], "edge endpoint"));
    }
  }
  return Frame::from_edges(n, edges, max_worlds);
}

Valuation valuation_from_json(const Json& j, std::size_t worlds) {
  if (!j.is_object()) throw InputError("valuation must be an object");
  Valuation::Map m;
  for (const auto& [name, set] : j.items()) {
    bool ok = !name.empty() && name[0] >= 'a' && name[0] <= 'z';
    for (char c : name) ok = ok && ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_');
    if (!ok) throw InputError("invalid variable name \"" + name + "\"");
    m.emplace(name, world_set_from_json(set, worlds));
  }
  return Valuation(std::move(m));
}

ConsequenceProblem problem_from_json(TermStore& store, const Json& j) {
  if (!j.is_object()) throw InputError("problem must be an object");
  if (!j.contains("conclusion") || !j.at("conclusion").is_string()) {
    throw InputError("problem needs a \"conclusion\" string");
  }
  auto macros = default_macros();
  ConsequenceProblem p;
  if (j.contains("premises")) {
    if (!j.at("premises").is_array()) throw InputError("\"premises\" must be an array");
    for (const auto& s : j.at("premises")) {
      if (!s.is_string()) throw InputError("premise must be a string");
      p.premises.push_back(parse_statement(store, s.get<std::string>(), macros));
    }
  }
  p.conclusion = parse_statement(store, j.at("conclusion").get<std::string>(), macros);
  if (j.contains("frames")) {
    if (!j.at("frames").is_array()) throw InputError("\"frames\" must be an array");
    for (const auto& f : j.at("frames")) p.frames.push_back(frame_from_json(f));
  }
  if (j.contains("cap_bits")) p.options.cap_bits = as_index(j.at("cap_bits"), "\"cap_bits\"");
  return p;
}

}  // namespace modal

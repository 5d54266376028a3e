#include "dihyp/serialize.hpp"

#include <cctype>

namespace dihyp {

Json digraph_to_json(const Digraph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (const std::string& name : g.names()) j["vertices"].push_back(name);
  j["edges"] = Json::array();
  for (const Edge& e : g.edges()) {
    Json je;
    je["from"] = g.name(e.from);
    je["to"] = g.name(e.to);
    if (e.label) je["label"] = *e.label;
    j["edges"].push_back(std::move(je));
  }
  return j;
}

Digraph digraph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw InputError("digraph JSON needs \"vertices\" and \"edges\"");
  Digraph g;
  for (const Json& v : j.at("vertices")) {
    if (!v.is_string()) throw InputError("vertex names must be strings");
    g.add_vertex(v.get<std::string>());
  }
  for (const Json& e : j.at("edges")) {
    if (!e.is_object() || !e.contains("from") || !e.contains("to"))
      throw InputError("edges need \"from\" and \"to\"");
    std::optional<std::string> label;
    if (e.contains("label")) label = e.at("label").get<std::string>();
    std::string from = e.at("from").get<std::string>();
    std::string to = e.at("to").get<std::string>();
    if (!g.has_vertex(from) || !g.has_vertex(to))
      throw InputError("edge endpoint not in vertex list: " + from + " -> " +
                       to);
    g.add_edge(from, to, std::move(label));
  }
  return g;
}

Digraph digraph_from_dot(const std::string& text) {
  Digraph g;
  std::size_t pos = 0;
  auto fail = [](const std::string& why) {
    throw InputError("malformed DOT: " + why);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(
                                    text[pos])))
      ++pos;
  };
  auto expect = [&](const std::string& token) {
    skip_ws();
    if (text.compare(pos, token.size(), token) != 0)
      fail("expected '" + token + "'");
    pos += token.size();
  };
  auto quoted = [&]() -> std::string {
    skip_ws();
    if (pos >= text.size() || text[pos] != '"') fail("expected quoted name");
    std::size_t close = text.find('"', pos + 1);
    if (close == std::string::npos) fail("unterminated quote");
    std::string s = text.substr(pos + 1, close - pos - 1);
    pos = close + 1;
    return s;
  };
  expect("digraph");
  skip_ws();
  // Optional graph name.
  while (pos < text.size() && text[pos] != '{') ++pos;
  expect("{");
  while (true) {
    skip_ws();
    if (pos >= text.size()) fail("unterminated graph block");
    if (text[pos] == '}') break;
    std::string from = quoted();
    skip_ws();
    if (pos < text.size() && text.compare(pos, 2, "->") == 0) {
      pos += 2;
      std::string to = quoted();
      std::optional<std::string> label;
      skip_ws();
      if (pos < text.size() && text[pos] == '[') {
        expect("[");
        expect("label=");
        label = quoted();
        expect("]");
      }
      g.add_vertex(from);
      g.add_vertex(to);
      g.add_edge(from, to, std::move(label));
    } else {
      g.add_vertex(from);
    }
    expect(";");
  }
  return g;
}

Digraph parse_digraph(const std::string& text) {
  std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && text[i] == '{') {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("malformed digraph JSON");
    return digraph_from_json(j);
  }
  if (i != std::string::npos && text.compare(i, 7, "digraph") == 0)
    return digraph_from_dot(text);
  return Digraph::from_edge_list(text);
}

std::string rational_str(const Rational& x) {
  return x.str();
}

Json ext_distance_to_json(const ExtDistance& d) {
  if (d.is_finite()) return Json(d.value());
  return Json("inf");
}

Json path_to_json(const Digraph& g, const Path& p) {
  Json j = Json::array();
  for (int v : p.v) j.push_back(g.name(v));
  return j;
}

Json triangle_to_json(const Digraph& g, const GeodesicTriangle& t) {
  Json j;
  j["p"] = path_to_json(g, t.p);
  j["q"] = path_to_json(g, t.q);
  j["r"] = path_to_json(g, t.r);
  j["size"] = t.size();
  return j;
}

Json thinness_report_to_json(const Digraph& g, const ThinnessReport& r) {
  Json j;
  j["delta_star"] = ext_distance_to_json(r.delta_star);
  j["lower_bound_only"] = r.lower_bound_only;
  j["truncation_margin"] = r.truncation_margin;
  if (r.witness) {
    Json w;
    w["P"] = g.name(r.witness->P);
    w["Q"] = g.name(r.witness->Q);
    w["R"] = g.name(r.witness->R);
    w["side"] = side_role_name(r.witness->role);
    w["offending_vertex"] = g.name(r.witness->offending_vertex);
    w["required_radius"] = ext_distance_to_json(r.witness->required_radius);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json constants_report_to_json(const ConstantsReport& r) {
  Json j;
  j["alpha"] = r.alpha;
  j["delta"] = r.delta;
  j["lambda"] = rational_str(r.lambda);
  j["K"] = rational_str(r.K);
  j["derivation"] = r.derivation;
  return j;
}

Json greens_constants_to_json(const GreensConstants& c) {
  Json j;
  j["A_size"] = c.A_size;
  j["alpha"] = c.alpha;
  j["delta"] = c.delta;
  j["lambda"] = rational_str(c.lambda);
  j["K"] = rational_str(c.K);
  j["W"] = rational_str(c.W);
  return j;
}

Json certificate_to_json(const Digraph& g, const TessellationCertificate& c) {
  Json j;
  j["top"] = path_to_json(g, c.top);
  j["bottom"] = path_to_json(g, c.bottom);
  j["triangles"] = Json::array();
  for (const GeodesicTriangle& t : c.triangles)
    j["triangles"].push_back(triangle_to_json(g, t));
  j["steps"] = Json::array();
  for (const CertStep& s : c.steps) {
    Json js;
    js["prefix"] = path_to_json(g, s.prefix);
    js["triangle"] = s.tri;
    js["inverted"] = s.inverted;
    js["suffix"] = path_to_json(g, s.suffix);
    j["steps"].push_back(std::move(js));
  }
  j["triangle_count"] = c.triangles.size();
  j["max_size"] = c.max_size();
  return j;
}

namespace {

const char* verdict_kind_str(VerdictKind k) {
  switch (k) {
    case VerdictKind::yes:
      return "yes";
    case VerdictKind::no:
      return "no";
    default:
      return "unknown";
  }
}

}  // namespace

Json greens_verdict_to_json(const MonoidPresentation& p,
                            const GreensVerdict& v) {
  Json j;
  j["relation"] = v.relation;
  j["verdict"] = verdict_kind_str(v.kind);
  if (v.kind == VerdictKind::no)
    j["verdict"] = v.certified ? "no" : "no-within-bound";
  j["certified"] = v.certified;
  j["bound"] = v.bound;
  j["witnesses"] = Json::array();
  for (const Word& w : v.witnesses) j["witnesses"].push_back(p.word_str(w));
  return j;
}

Json dehn_table_to_json(const DehnTable& t) {
  Json j;
  j["values"] = Json::array();
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    Json entry;
    entry["n"] = i + 1;
    entry["delta"] = ext_distance_to_json(t.values[i]);
    j["values"].push_back(std::move(entry));
  }
  j["hit_cap"] = t.hit_cap;
  return j;
}

Json cayley_ball_to_json(const CayleyBall& ball) {
  Json j = digraph_to_json(ball.graph);
  j["identity"] = ball.graph.name(ball.identity);
  j["radius"] = ball.radius;
  return j;
}

Json run_report(const std::string& subcommand, const Json& inputs,
                const Json& parameters, const Json& payload,
                double elapsed_ms) {
  Json j;
  j["tool"] = "dihyp";
  j["version"] = "1.0.0";
  j["subcommand"] = subcommand;
  j["inputs"] = inputs;
  j["parameters"] = parameters;
  j["payload"] = payload;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

}  // namespace dihyp

#include "feyncat/serialize.hpp"

#include <json.hpp>
#include <sstream>

namespace feyncat {

using nlohmann::json;

namespace {

json corolla_json(const Corolla& c) {
  json j;
  j["id"] = c.id;
  j["flags"] = c.flags;
  if (c.genus) j["genus"] = *c.genus;
  return j;
}

json aggregate_json(const Aggregate& x) {
  json cs = json::array();
  for (const auto& c : x.corollas()) cs.push_back(corolla_json(c));
  return json{{"corollas", cs}};
}

Aggregate aggregate_of(const json& j) {
  std::vector<Corolla> cs;
  for (const auto& c : j.at("corollas")) {
    Corolla k;
    k.id = c.value("id", "");
    k.flags = c.at("flags").get<std::vector<std::string>>();
    if (c.contains("genus")) k.genus = c.at("genus").get<int>();
    cs.push_back(std::move(k));
  }
  return Aggregate(std::move(cs));
}

json morphism_json(const GraphMorphism& phi) {
  json fm = json::object();
  for (int t = 0; t < phi.target().flag_count(); ++t)
    fm[phi.target().label(t)] = phi.source().label(phi.flag_image(t));
  json edges = json::array();
  for (auto [a, b] : phi.ghost_edges())
    edges.push_back({phi.source().label(a), phi.source().label(b)});
  return json{{"source", aggregate_json(phi.source())},
              {"target", aggregate_json(phi.target())},
              {"flag_map", fm},
              {"vertex_map", phi.vertex_map()},
              {"ghost_edges", edges}};
}

template <class F>
auto guarded(const std::string& text, F f) {
  try {
    return f(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, e.what());
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void emit_vertices(std::ostringstream& o, const Aggregate& x, const std::string& prefix,
                   const std::vector<std::string>& dec, const std::string& indent) {
  for (int v = 0; v < x.size(); ++v) {
    std::string label = x[v].id;
    if (x[v].genus) label += " g=" + std::to_string(*x[v].genus);
    if (v < static_cast<int>(dec.size())) label += "\n" + dec[v];
    o << indent << prefix << "v" << v << " [shape=circle,label=" << quote(label) << "];\n";
  }
}

}  // namespace

std::string to_json(const Aggregate& x, int indent) { return aggregate_json(x).dump(indent); }

std::string to_json(const GraphMorphism& phi, int indent) { return morphism_json(phi).dump(indent); }

std::string to_json(const Aggregate& x, const std::vector<std::string>& decoration, int indent) {
  return json{{"object", aggregate_json(x)}, {"decoration", decoration}}.dump(indent);
}

Aggregate aggregate_from_json(const std::string& text) {
  return guarded(text, [](const json& j) { return aggregate_of(j); });
}

GraphMorphism morphism_from_json(const std::string& text) {
  return guarded(text, [](const json& j) {
    Aggregate src = aggregate_of(j.at("source"));
    Aggregate tgt = aggregate_of(j.at("target"));
    std::map<Label, Label> fm = j.at("flag_map").get<std::map<std::string, std::string>>();
    std::vector<std::pair<Label, Label>> edges;
    for (const auto& e : j.at("ghost_edges")) edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    return GraphMorphism::from_labels(src, tgt, fm, j.at("vertex_map").get<std::vector<int>>(), edges);
  });
}

std::pair<Aggregate, std::vector<std::string>> decorated_from_json(const std::string& text) {
  return guarded(text, [](const json& j) {
    return std::make_pair(aggregate_of(j.at("object")), j.at("decoration").get<std::vector<std::string>>());
  });
}

std::string to_dot(const Aggregate& x, const std::vector<std::string>& decoration) {
  std::ostringstream o;
  o << "graph aggregate {\n";
  emit_vertices(o, x, "", decoration, "  ");
  for (int f = 0; f < x.flag_count(); ++f) {
    o << "  f" << f << " [shape=point];\n";
    o << "  v" << x.vertex_of(f) << " -- f" << f << " [label=" << quote(x.label(f)) << "];\n";
  }
  o << "}\n";
  return o.str();
}

std::string to_dot(const GraphMorphism& phi, const std::vector<std::string>& source_dec,
                   const std::vector<std::string>& target_dec) {
  const Aggregate& x = phi.source();
  const Aggregate& y = phi.target();
  std::ostringstream o;
  o << "digraph morphism {\n  compound=true;\n";
  o << "  subgraph cluster_source {\n    label=\"source\";\n";
  emit_vertices(o, x, "s", source_dec, "    ");
  for (int f = 0; f < x.flag_count(); ++f) {
    if (phi.partner(f) >= 0) continue;
    o << "    sf" << f << " [shape=point];\n";
    o << "    sv" << x.vertex_of(f) << " -> sf" << f << " [dir=none,label=" << quote(x.label(f)) << "];\n";
  }
  for (auto [a, b] : phi.ghost_edges())
    o << "    sv" << x.vertex_of(a) << " -> sv" << x.vertex_of(b) << " [dir=none,style=dashed,label="
      << quote(x.label(a) + "~" + x.label(b)) << "];\n";
  o << "  }\n  subgraph cluster_target {\n    label=\"target\";\n";
  emit_vertices(o, y, "t", target_dec, "    ");
  for (int f = 0; f < y.flag_count(); ++f) {
    o << "    tf" << f << " [shape=point];\n";
    o << "    tv" << y.vertex_of(f) << " -> tf" << f << " [dir=none,label=" << quote(y.label(f)) << "];\n";
  }
  o << "  }\n";
  for (int u = 0; u < x.size(); ++u)
    o << "  sv" << u << " -> tv" << phi.vertex_image(u) << " [style=dotted,color=gray];\n";
  for (int t = 0; t < y.flag_count(); ++t)
    o << "  tf" << t << " -> sf" << phi.flag_image(t) << " [style=dotted,color=blue];\n";
  o << "}\n";
  return o.str();
}

}  // namespace feyncat

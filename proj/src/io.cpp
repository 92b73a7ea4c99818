#include "mrd/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace mrd::io {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  fail(Errc::schema, "at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

std::string escape_key(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

std::string at(const std::string& where, const std::string& key) {
  return where + "/" + escape_key(key);
}

std::string at(const std::string& where, std::size_t k) {
  return where + "/" + std::to_string(k);
}

const Json& field(const Json& j, const std::string& where, const std::string& key) {
  if (!j.is_object()) schema(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(at(where, key), "missing field");
  return *it;
}

const Json& array_field(const Json& j, const std::string& where, const std::string& key) {
  const Json& a = field(j, where, key);
  if (!a.is_array()) schema(at(where, key), "expected an array");
  return a;
}

std::string string_of(const Json& j, const std::string& where) {
  if (!j.is_string()) schema(where, "expected a string");
  return j.get<std::string>();
}

long long int_of(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema(where, "expected an integer");
  return j.get<long long>();
}

std::vector<std::string> strings_of(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(string_of(j[k], at(where, k)));
  return out;
}

boost::multiprecision::cpp_int big_of(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return boost::multiprecision::cpp_int(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t k = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (k == s.size()) schema(where, "expected an integer string");
    for (std::size_t q = k; q < s.size(); ++q)
      if (s[q] < '0' || s[q] > '9') schema(where, "expected an integer string");
    return boost::multiprecision::cpp_int(s);
  }
  schema(where, "expected an integer");
}

Json emit_big(const boost::multiprecision::cpp_int& v) {
  if (v >= std::numeric_limits<long long>::min() &&
      v <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(v));
  return Json(v.str());
}

Rational rational_of(const Json& j, const std::string& where) {
  if (j.is_number_integer() || j.is_string()) return Rational(big_of(j, where));
  if (!j.is_array() || j.size() != 2) schema(where, "expected [numerator, denominator]");
  auto num = big_of(j[0], at(where, 0));
  auto den = big_of(j[1], at(where, 1));
  if (den == 0) schema(at(where, 1), "zero denominator");
  return Rational(num, den);
}

Json emit_rational(const Rational& q) {
  return Json::array({emit_big(boost::multiprecision::numerator(q)),
                      emit_big(boost::multiprecision::denominator(q))});
}

Json names_of(const std::vector<std::string>& names, const IndexSet& x) {
  Json out = Json::array();
  for (int i : x) out.push_back(names[i]);
  return out;
}

}  // namespace

Json vertex_names(const Digraph& d, const IndexSet& x) {
  return names_of(d.vertex_names(), x);
}

Json element_names(const Matroid& m, const IndexSet& x) { return names_of(m.names(), x); }

IndexSet parse_vertex_set(const Digraph& d, const Json& j, const std::string& where) {
  IndexSet out = d.no_vertices();
  auto names = strings_of(j, where);
  for (std::size_t k = 0; k < names.size(); ++k) {
    auto v = d.find_vertex(names[k]);
    if (!v) schema(at(where, k), "unknown vertex '" + names[k] + "'");
    out.insert(*v);
  }
  return out;
}

IndexSet parse_element_set(const Matroid& m, const Json& j, const std::string& where) {
  IndexSet out = m.empty_set();
  auto names = strings_of(j, where);
  for (std::size_t k = 0; k < names.size(); ++k) {
    auto i = m.find(names[k]);
    if (!i) schema(at(where, k), "unknown element '" + names[k] + "'");
    out.insert(*i);
  }
  return out;
}

Matroid parse_matroid(const Json& j, const std::string& where) {
  std::string kind = string_of(field(j, where, "kind"), at(where, "kind"));
  if (kind == "direct_sum") {
    const Json& ch = array_field(j, where, "children");
    std::vector<Matroid> children;
    for (std::size_t k = 0; k < ch.size(); ++k)
      children.push_back(parse_matroid(ch[k], at(at(where, "children"), k)));
    return Matroid::direct_sum(std::move(children));
  }
  if (kind == "minor") {
    Matroid parent = parse_matroid(field(j, where, "parent"), at(where, "parent"));
    IndexSet keep = parse_element_set(parent, field(j, where, "keep"), at(where, "keep"));
    IndexSet contract = parent.empty_set();
    if (j.contains("contract"))
      contract = parse_element_set(parent, j["contract"], at(where, "contract"));
    return Matroid::minor(parent, keep, contract);
  }
  auto ground = strings_of(field(j, where, "ground"), at(where, "ground"));
  if (kind == "free") return Matroid::free(std::move(ground));
  if (kind == "uniform")
    return Matroid::uniform(std::move(ground),
                            static_cast<int>(int_of(field(j, where, "rank"), at(where, "rank"))));
  if (kind == "partition") {
    const Json& bl = array_field(j, where, "blocks");
    std::vector<std::vector<std::string>> blocks;
    std::vector<int> caps;
    for (std::size_t k = 0; k < bl.size(); ++k) {
      std::string w = at(at(where, "blocks"), k);
      blocks.push_back(strings_of(field(bl[k], w, "elements"), at(w, "elements")));
      caps.push_back(static_cast<int>(int_of(field(bl[k], w, "cap"), at(w, "cap"))));
    }
    return Matroid::partition(std::move(ground), blocks, std::move(caps));
  }
  if (kind == "linear") {
    const Json& cols = array_field(j, where, "columns");
    std::vector<std::vector<Rational>> columns;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::string w = at(at(where, "columns"), k);
      if (!cols[k].is_array()) schema(w, "expected a column array");
      std::vector<Rational> col;
      for (std::size_t q = 0; q < cols[k].size(); ++q)
        col.push_back(rational_of(cols[k][q], at(w, q)));
      columns.push_back(std::move(col));
    }
    if (columns.size() != ground.size())
      schema(at(where, "columns"), "expected one column per ground element");
    return Matroid::linear(std::move(ground), std::move(columns));
  }
  if (kind == "explicit") {
    const Json& cs = array_field(j, where, "circuits");
    std::vector<std::vector<std::string>> circuits;
    for (std::size_t k = 0; k < cs.size(); ++k)
      circuits.push_back(strings_of(cs[k], at(at(where, "circuits"), k)));
    return Matroid::explicit_circuits(std::move(ground), circuits);
  }
  schema(at(where, "kind"), "unknown matroid kind '" + kind + "'");
}

Json emit_matroid(const Matroid& m) {
  Json j = Json::object();
  j["kind"] = m.kind_name();
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kinds::DirectSum>) {
          Json ch = Json::array();
          for (const auto& c : k.children) ch.push_back(emit_matroid(c));
          j["children"] = ch;
        } else if constexpr (std::is_same_v<K, kinds::Minor>) {
          j["parent"] = emit_matroid(*k.parent);
          j["keep"] = element_names(*k.parent, k.keep);
          j["contract"] = element_names(*k.parent, k.contract);
        } else {
          j["ground"] = m.names();
          if constexpr (std::is_same_v<K, kinds::Uniform>) {
            j["rank"] = k.rank;
          } else if constexpr (std::is_same_v<K, kinds::Partition>) {
            Json bl = Json::array();
            for (std::size_t b = 0; b < k.blocks.size(); ++b)
              bl.push_back({{"elements", element_names(m, k.blocks[b])}, {"cap", k.caps[b]}});
            j["blocks"] = bl;
          } else if constexpr (std::is_same_v<K, kinds::Linear>) {
            Json cols = Json::array();
            for (const auto& c : k.columns) {
              Json col = Json::array();
              for (const auto& q : c) col.push_back(emit_rational(q));
              cols.push_back(col);
            }
            j["columns"] = cols;
          } else if constexpr (std::is_same_v<K, kinds::Explicit>) {
            Json cs = Json::array();
            for (const auto& c : k.circuits) cs.push_back(element_names(m, c));
            j["circuits"] = cs;
          }
        }
      },
      m.kind());
  return j;
}

InstanceDoc parse_instance(const Json& j) {
  if (!j.is_object()) schema("", "expected an instance object");
  std::string name;
  if (j.contains("name")) name = string_of(j["name"], "/name");
  Json metadata = Json::object();
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) schema("/metadata", "expected an object");
    metadata = j["metadata"];
  }
  const Json& dj = field(j, "", "digraph");
  auto vertices = strings_of(field(dj, "/digraph", "vertices"), "/digraph/vertices");
  const Json& ej = array_field(dj, "/digraph", "edges");
  std::vector<EdgeSpec> edges;
  for (std::size_t k = 0; k < ej.size(); ++k) {
    std::string w = at("/digraph/edges", k);
    edges.push_back({string_of(field(ej[k], w, "id"), at(w, "id")),
                     string_of(field(ej[k], w, "tail"), at(w, "tail")),
                     string_of(field(ej[k], w, "head"), at(w, "head"))});
  }
  {
    std::vector<std::string> known(vertices);
    std::sort(known.begin(), known.end());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      std::string w = at("/digraph/edges", k);
      if (!std::binary_search(known.begin(), known.end(), edges[k].tail))
        schema(at(w, "tail"), "unknown vertex '" + edges[k].tail + "'");
      if (!std::binary_search(known.begin(), known.end(), edges[k].head))
        schema(at(w, "head"), "unknown vertex '" + edges[k].head + "'");
    }
  }
  Digraph d(std::move(vertices), edges);
  Matroid m = parse_matroid(field(j, "", "matroid"), "/matroid");
  const Json& pj = field(j, "", "pi");
  if (!pj.is_object()) schema("/pi", "expected an object");
  std::vector<IndexSet> pi(m.size(), d.no_vertices());
  std::vector<bool> seen(m.size(), false);
  for (auto it = pj.begin(); it != pj.end(); ++it) {
    std::string w = at("/pi", it.key());
    auto i = m.find(it.key());
    if (!i) schema(w, "unknown element '" + it.key() + "'");
    pi[*i] = parse_vertex_set(d, it.value(), w);
    if (pi[*i].empty()) schema(w, "root set must be nonempty");
    seen[*i] = true;
  }
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!seen[i]) schema(at("/pi", m.name(static_cast<ElemId>(i))), "missing root set");
  return InstanceDoc{name, metadata, RootedDigraph(std::move(d), std::move(m), std::move(pi))};
}

InstanceDoc parse_instance_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::schema, std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(j);
}

Json emit_instance(const InstanceDoc& doc) {
  const auto& r = doc.rooted;
  const auto& d = r.digraph();
  Json j = Json::object();
  j["name"] = doc.name;
  j["metadata"] = doc.metadata;
  Json edges = Json::array();
  for (int e : d.alive_edges())
    edges.push_back({{"id", d.edge_name(e)},
                     {"tail", d.vertex_name(d.tail(e))},
                     {"head", d.vertex_name(d.head(e))}});
  j["digraph"] = {{"vertices", d.vertex_names()}, {"edges", edges}};
  j["matroid"] = emit_matroid(r.matroid());
  Json pi = Json::object();
  for (std::size_t i = 0; i < r.matroid().size(); ++i)
    pi[r.matroid().name(static_cast<ElemId>(i))] =
        vertex_names(d, r.pi(static_cast<ElemId>(i)));
  j["pi"] = pi;
  return j;
}

Json emit_path(const Digraph& d, const Path& p) {
  Json edges = Json::array();
  for (EdgeId e : p.edges()) edges.push_back(d.edge_name(e));
  return {{"start", d.vertex_name(p.start())}, {"edges", edges}};
}

Path parse_path(const Digraph& d, const Json& j, const std::string& where) {
  std::string start = string_of(field(j, where, "start"), at(where, "start"));
  auto v = d.find_vertex(start);
  if (!v) schema(at(where, "start"), "unknown vertex '" + start + "'");
  auto names = strings_of(field(j, where, "edges"), at(where, "edges"));
  std::vector<EdgeId> edges;
  for (std::size_t k = 0; k < names.size(); ++k) {
    auto e = d.find_edge(names[k]);
    if (!e) schema(at(at(where, "edges"), k), "unknown edge '" + names[k] + "'");
    edges.push_back(*e);
  }
  try {
    return Path::from_edges(d, *v, std::move(edges));
  } catch (const Error& e) {
    schema(where, e.what());
  }
}

Json emit_linkage(const RootedDigraph& r, const Linkage& lk) {
  Json j = Json::object();
  for (const auto& [i, p] : lk.paths) j[r.matroid().name(i)] = emit_path(r.digraph(), p);
  return j;
}

Linkage parse_linkage(const RootedDigraph& r, const Json& j, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object");
  Linkage lk;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto i = r.matroid().find(it.key());
    if (!i) schema(at(where, it.key()), "unknown element '" + it.key() + "'");
    lk.paths.emplace(*i, parse_path(r.digraph(), it.value(), at(where, it.key())));
  }
  return lk;
}

Json emit_packing(const RootedDigraph& r, const Packing& p) {
  const auto& d = r.digraph();
  Json j = Json::object();
  for (std::size_t i = 0; i < p.branchings.size(); ++i) {
    Json edges = Json::array();
    for (int e : p.branchings[i].edges) edges.push_back(d.edge_name(e));
    j[r.matroid().name(static_cast<ElemId>(i))] = {
        {"vertices", vertex_names(d, p.branchings[i].vertices)}, {"edges", edges}};
  }
  return j;
}

Packing parse_packing(const RootedDigraph& r, const Json& j, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object");
  const auto& d = r.digraph();
  const auto& m = r.matroid();
  Packing p;
  p.branchings.assign(m.size(), Branching{d.no_vertices(), d.no_edges()});
  std::vector<bool> seen(m.size(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string w = at(where, it.key());
    auto i = m.find(it.key());
    if (!i) schema(w, "unknown element '" + it.key() + "'");
    p.branchings[*i].vertices =
        parse_vertex_set(d, field(it.value(), w, "vertices"), at(w, "vertices"));
    auto names = strings_of(field(it.value(), w, "edges"), at(w, "edges"));
    for (std::size_t k = 0; k < names.size(); ++k) {
      auto e = d.find_edge(names[k]);
      if (!e) schema(at(at(w, "edges"), k), "unknown edge '" + names[k] + "'");
      p.branchings[*i].edges.insert(*e);
    }
    seen[*i] = true;
  }
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!seen[i]) schema(at(where, m.name(static_cast<ElemId>(i))), "missing branching");
  return p;
}

Json emit_trace(const RootedDigraph& r, const ExtensionTrace& t) {
  Json j = Json::array();
  for (const auto& st : t)
    j.push_back({{"elem", r.matroid().name(st.elem)},
                 {"edge", r.digraph().edge_name(st.edge)}});
  return j;
}

ExtensionTrace parse_trace(const RootedDigraph& r, const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected an array");
  ExtensionTrace t;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string w = at(where, k);
    std::string en = string_of(field(j[k], w, "elem"), at(w, "elem"));
    std::string ed = string_of(field(j[k], w, "edge"), at(w, "edge"));
    auto i = r.matroid().find(en);
    if (!i) schema(at(w, "elem"), "unknown element '" + en + "'");
    auto e = r.digraph().find_edge(ed);
    if (!e) schema(at(w, "edge"), "unknown edge '" + ed + "'");
    t.push_back({*i, *e});
  }
  return t;
}

Json emit_certificate(const RootedDigraph& r, const TGoodCertificate& c) {
  const auto& d = r.digraph();
  const auto& m = r.matroid();
  Json entries = Json::array();
  for (const auto& [i, e] : c.entry_edges)
    entries.push_back({{"elem", m.name(i)}, {"edge", d.edge_name(e)}});
  Json paths = Json::array();
  for (const auto& [i, p] : c.paths) {
    Json pj = emit_path(d, p);
    pj["elem"] = m.name(i);
    paths.push_back(pj);
  }
  return {{"X", vertex_names(d, c.x)},
          {"conditions", c.conditions},
          {"inner_base", element_names(m, c.inner_base)},
          {"entry_edges", entries},
          {"paths", paths}};
}

TGoodCertificate parse_certificate(const RootedDigraph& r, const Json& j,
                                   const std::string& where) {
  const auto& d = r.digraph();
  const auto& m = r.matroid();
  TGoodCertificate c;
  c.x = parse_vertex_set(d, field(j, where, "X"), at(where, "X"));
  const Json& cj = array_field(j, where, "conditions");
  if (cj.size() != 4) schema(at(where, "conditions"), "expected four flags");
  for (std::size_t k = 0; k < 4; ++k) {
    if (!cj[k].is_boolean()) schema(at(at(where, "conditions"), k), "expected a boolean");
    c.conditions[k] = cj[k].get<bool>();
  }
  c.inner_base =
      parse_element_set(m, field(j, where, "inner_base"), at(where, "inner_base"));
  const Json& ej = array_field(j, where, "entry_edges");
  for (std::size_t k = 0; k < ej.size(); ++k) {
    std::string w = at(at(where, "entry_edges"), k);
    std::string en = string_of(field(ej[k], w, "elem"), at(w, "elem"));
    std::string ed = string_of(field(ej[k], w, "edge"), at(w, "edge"));
    auto i = m.find(en);
    if (!i) schema(at(w, "elem"), "unknown element '" + en + "'");
    auto e = d.find_edge(ed);
    if (!e) schema(at(w, "edge"), "unknown edge '" + ed + "'");
    c.entry_edges.emplace_back(*i, *e);
  }
  const Json& pj = array_field(j, where, "paths");
  for (std::size_t k = 0; k < pj.size(); ++k) {
    std::string w = at(at(where, "paths"), k);
    std::string en = string_of(field(pj[k], w, "elem"), at(w, "elem"));
    auto i = m.find(en);
    if (!i) schema(at(w, "elem"), "unknown element '" + en + "'");
    c.paths.emplace_back(*i, parse_path(d, pj[k], w));
  }
  return c;
}

Json emit_rounds(const RootedDigraph& r, const std::vector<RoundInfo>& rounds) {
  const auto& m = r.matroid();
  Json j = Json::array();
  for (const auto& info : rounds) {
    Json inj = Json::array();
    for (const auto& [s, i] : info.injected)
      inj.push_back({{"from", "u_" + m.name(s)}, {"to", "w_" + m.name(i)}});
    j.push_back({{"U", vertex_names(r.digraph(), info.unreachable)},
                 {"F", element_names(m, info.f)},
                 {"injected", inj}});
  }
  return j;
}

Json emit_report(const VerifyReport& rep) {
  return {{"ok", rep.ok()},
          {"edge_disjoint", rep.edge_disjoint},
          {"branching_shape", rep.branching_shape},
          {"root_set", rep.root_set},
          {"independence", rep.independence},
          {"maximality", rep.maximality},
          {"failures", rep.failures}};
}

std::string emit_instance_dot(const InstanceDoc& doc) {
  const auto& r = doc.rooted;
  const auto& d = r.digraph();
  auto quoted = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "digraph " << quoted(doc.name.empty() ? "instance" : doc.name) << " {\n";
  for (std::size_t v = 0; v < d.vertex_count(); ++v) {
    std::string roots;
    for (int i : r.s_at(static_cast<VertexId>(v)))
      roots += (roots.empty() ? "" : ",") + r.matroid().name(i);
    std::string label = quoted(d.vertex_name(static_cast<VertexId>(v)));
    if (!roots.empty()) label.insert(label.size() - 1, "\\n{" + roots + "}");
    os << "  " << quoted(d.vertex_name(static_cast<VertexId>(v)))
       << " [label=" << label << "];\n";
  }
  for (int e : d.alive_edges())
    os << "  " << quoted(d.vertex_name(d.tail(e))) << " -> "
       << quoted(d.vertex_name(d.head(e))) << " [label=" << quoted(d.edge_name(e))
       << "];\n";
  os << "}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::schema, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Why solve() refuses r: the first dependent vertex, or the first vertex
/// failing the linkage condition with the engine's certificate.
Json precondition_report(const RootedDigraph& r) {
  const auto& d = r.digraph();
  if (auto v = r.first_dependent_vertex())
    return {{"status", "precondition"},
            {"condition", "independence"},
            {"vertex", d.vertex_name(*v)},
            {"elements", element_names(r.matroid(), r.s_at(*v))}};
  auto rep = check_linkage_condition(r);
  if (!rep.ok) {
    VertexId v = *rep.failing_vertex;
    const auto& w = rep.witnesses.at(v);
    return {{"status", "precondition"},
            {"condition", "linkage"},
            {"vertex", d.vertex_name(v)},
            {"rank", w.rank},
            {"need_rank", r.matroid().rank(r.need_at(v))},
            {"linkage", emit_linkage(r, w.linkage)},
            {"certificate", emit_certificate(r, w.certificate)}};
  }
  return {{"status", "ok"}};
}

}  // namespace mrd::io

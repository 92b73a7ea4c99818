// mrd: command line front end for the packing solver, the linkage engine and
// the exhaustive oracles. JSON on stdout, a one-line summary on stderr.
//
// Exit codes: 0 success/true, 1 property false, 2 precondition failure,
// 3 input error, 4 guard exceeded, 5 internal defect.

#include <algorithm>
#include <atomic>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mrd/fixtures.hpp"
#include "mrd/oracle.hpp"

using namespace mrd;
using io::Json;

namespace {

enum Exit { kOk = 0, kFalse = 1, kPrecondition = 2, kInput = 3, kGuard = 4, kDefect = 5 };

int exit_for(Errc c) {
  switch (c) {
    case Errc::precondition: return kPrecondition;
    case Errc::guard_exceeded: return kGuard;
    case Errc::internal_defect: return kDefect;
    default: return kInput;
  }
}

std::string slurp(const std::string& path) {
  if (path.empty() || path == "-")
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  return io::read_file(path);
}

io::InstanceDoc load(const std::string& path) { return io::parse_instance_text(slurp(path)); }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::schema, std::string("malformed JSON: ") + e.what());
  }
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

IndexSet vertex_set(const Digraph& d, const std::string& s) {
  auto names = split_names(s);
  if (names.empty()) fail(Errc::empty_set, "--set names no vertices");
  return d.vertex_set_of(names);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }
void say(const std::string& s) { std::cerr << s << "\n"; }

struct SolveOutcome {
  int code = kOk;
  Json out;
  std::string summary;
};

SolveOutcome solve_one(const std::string& path) {
  SolveOutcome res;
  try {
    auto doc = load(path);
    const auto& r = doc.rooted;
    Json pre = io::precondition_report(r);
    if (pre["status"] != "ok") {
      pre["name"] = doc.name;
      res = {kPrecondition, pre,
             doc.name + ": precondition fails (" + pre["condition"].get<std::string>() +
                 ") at " + pre["vertex"].get<std::string>()};
      return res;
    }
    auto s = solve(r);
    res.out = {{"name", doc.name},
               {"status", "ok"},
               {"packing", io::emit_packing(r, s.packing)},
               {"trace", io::emit_trace(r, s.trace)}};
    res.summary = doc.name + ": solved with " + std::to_string(s.trace.size()) +
                  " extensions over " + std::to_string(r.digraph().edge_count()) + " edges";
  } catch (const Error& e) {
    res = {exit_for(e.code()),
           {{"name", path}, {"status", "error"}, {"code", std::string(to_string(e.code()))},
            {"message", e.what()}},
           path + ": " + e.what()};
  }
  return res;
}

int cmd_solve(const std::vector<std::string>& files, unsigned jobs) {
  std::vector<std::string> inputs = files.empty() ? std::vector<std::string>{"-"} : files;
  if (inputs.size() == 1) {
    auto r = solve_one(inputs.front());
    emit(r.out);
    say(r.summary);
    return r.code;
  }
  std::vector<SolveOutcome> results(inputs.size());
  std::atomic<std::size_t> next{0};
  unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(inputs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next++) < inputs.size();) results[k] = solve_one(inputs[k]);
    });
  for (auto& t : pool) t.join();
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
    return a.out["name"].template get<std::string>() < b.out["name"].template get<std::string>();
  });
  Json arr = Json::array();
  int code = kOk;
  for (auto& r : results) {
    arr.push_back(r.out);
    say(r.summary);
    code = std::max(code, r.code);
  }
  emit(arr);
  return code;
}

int cmd_verify(const std::string& inst, const std::string& packing) {
  auto doc = load(inst);
  auto p = io::parse_packing(doc.rooted, parse_json(slurp(packing)));
  auto rep = verify_packing(doc.rooted, p);
  emit(io::emit_report(rep));
  say(doc.name + (rep.ok() ? ": packing verified" : ": packing rejected"));
  return rep.ok() ? kOk : kFalse;
}

int cmd_check(const std::string& inst) {
  auto doc = load(inst);
  Json pre = io::precondition_report(doc.rooted);
  emit(pre);
  if (pre["status"] == "ok") {
    say(doc.name + ": independent, linkage condition holds");
    return kOk;
  }
  say(doc.name + ": " + pre["condition"].get<std::string>() + " fails at " +
      pre["vertex"].get<std::string>());
  return kPrecondition;
}

int cmd_max_linkage(const std::string& inst, const std::string& set, bool rounds) {
  auto doc = load(inst);
  const auto& r = doc.rooted;
  IndexSet t = vertex_set(r.digraph(), set);
  auto ml = max_linkage(r, t, {rounds});
  Json out = {{"targets", io::vertex_names(r.digraph(), t)},
              {"rank", ml.rank},
              {"need_rank", r.matroid().rank(r.need(t))},
              {"elements", io::element_names(r.matroid(), ml.elements)},
              {"linkage", io::emit_linkage(r, ml.linkage)},
              {"certificate", io::emit_certificate(r, ml.certificate)}};
  if (rounds) out["rounds"] = io::emit_rounds(r, ml.rounds);
  emit(out);
  say(doc.name + ": linkable rank " + std::to_string(ml.rank));
  return kOk;
}

int cmd_tight(const std::string& inst, const std::string& set) {
  auto doc = load(inst);
  const auto& r = doc.rooted;
  IndexSet x = vertex_set(r.digraph(), set);
  bool tight = is_tight(r, x);
  emit({{"set", io::vertex_names(r.digraph(), x)}, {"tight", tight}});
  say(doc.name + (tight ? ": tight" : ": not tight"));
  return tight ? kOk : kFalse;
}

int cmd_dangerous(const std::string& inst, const std::string& elem, const std::string& edge,
                  const std::string& set) {
  auto doc = load(inst);
  const auto& r = doc.rooted;
  ElemId i = r.matroid().index_of(elem);
  if (!set.empty()) {
    IndexSet x = vertex_set(r.digraph(), set);
    bool dangerous = is_dangerous(r, x, i);
    emit({{"set", io::vertex_names(r.digraph(), x)}, {"elem", elem}, {"dangerous", dangerous}});
    say(doc.name + (dangerous ? ": dangerous" : ": not dangerous"));
    return dangerous ? kOk : kFalse;
  }
  if (edge.empty()) fail(Errc::schema, "dangerous needs --edge or --set");
  ExtensionStep step{i, r.digraph().edge_index(edge)};
  auto x = find_dangerous_for(r, step);
  Json out = {{"elem", elem}, {"edge", edge}, {"dangerous", x.has_value()}};
  if (x) out["set"] = io::vertex_names(r.digraph(), *x);
  emit(out);
  say(doc.name + (x ? ": edge enters a dangerous set" : ": no dangerous set entered"));
  return x ? kOk : kFalse;
}

int cmd_gen(const std::string& family, std::uint64_t seed, int n, int k,
            const fixtures::RandomBounds& bounds) {
  io::InstanceDoc doc = family == "fig1"   ? fixtures::fig1_truncate(n)
                        : family == "fig2" ? fixtures::fig2_truncate(n)
                        : family == "fig3" ? fixtures::fig3_truncate(n, k)
                                           : fixtures::gen_random(seed, bounds);
  emit(io::emit_instance(doc));
  say("generated " + doc.name);
  return kOk;
}

oracle::Guard parse_guard(const std::string& text) {
  oracle::Guard g;
  for (const auto& item : split_names(text)) {
    auto eq = item.find('=');
    if (eq == std::string::npos) fail(Errc::schema, "--guard expects key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::size_t value = std::stoul(item.substr(eq + 1));
    if (key == "vertices") g.max_vertices = value;
    else if (key == "edges") g.max_edges = value;
    else if (key == "elements") g.max_elements = value;
    else if (key == "packing-edges") g.max_packing_edges = value;
    else if (key == "packing-elements") g.max_packing_elements = value;
    else fail(Errc::schema, "unknown guard key '" + key + "'");
  }
  oracle::check_guard(g);
  return g;
}

int cmd_oracle(const std::string& query, const std::string& inst, const std::string& set,
               const std::string& vertex, const std::string& elem, const std::string& edge,
               const std::string& guard) {
  oracle::Guard g = parse_guard(guard);
  auto doc = load(inst);
  const auto& r = doc.rooted;
  const auto& d = r.digraph();
  if (query == "max-linkage") {
    IndexSet t = vertex_set(d, set);
    auto res = oracle::brute_force_max_linkable(r, t, g);
    emit({{"targets", io::vertex_names(d, t)},
          {"rank", res.rank},
          {"elements", io::element_names(r.matroid(), res.set)}});
    say(doc.name + ": oracle linkable rank " + std::to_string(res.rank));
    return kOk;
  }
  if (query == "largest-t-good") {
    VertexId t = d.vertex_index(vertex);
    auto x = oracle::brute_force_largest_t_good(r, t, g);
    emit({{"t", vertex}, {"set", io::vertex_names(d, x)}});
    say(doc.name + ": oracle largest t-good set has " + std::to_string(x.size()) + " vertices");
    return kOk;
  }
  if (query == "tight") {
    IndexSet x = vertex_set(d, set);
    bool tight = oracle::brute_force_tight(r, x, g);
    emit({{"set", io::vertex_names(d, x)}, {"tight", tight}});
    say(doc.name + (tight ? ": oracle says tight" : ": oracle says not tight"));
    return tight ? kOk : kFalse;
  }
  if (query == "dangerous" && !set.empty()) {
    IndexSet x = vertex_set(d, set);
    bool dangerous = oracle::brute_force_is_dangerous(r, x, r.matroid().index_of(elem), g);
    emit({{"set", io::vertex_names(d, x)}, {"elem", elem}, {"dangerous", dangerous}});
    say(doc.name + (dangerous ? ": oracle says dangerous" : ": oracle says not dangerous"));
    return dangerous ? kOk : kFalse;
  }
  if (query == "dangerous") {
    if (edge.empty()) fail(Errc::schema, "oracle dangerous needs --edge or --set");
    auto x = oracle::brute_force_dangerous(r, r.matroid().index_of(elem), d.edge_index(edge), g);
    Json out = {{"elem", elem}, {"edge", edge}, {"dangerous", x.has_value()}};
    if (x) out["set"] = io::vertex_names(d, *x);
    emit(out);
    say(doc.name + (x ? ": oracle found a dangerous set" : ": oracle found no dangerous set"));
    return x ? kOk : kFalse;
  }
  if (query == "packing") {
    auto p = oracle::brute_force_packing(r, g);
    Json out = {{"found", p.has_value()}};
    if (p) out["packing"] = io::emit_packing(r, *p);
    emit(out);
    say(doc.name + (p ? ": oracle found a packing" : ": oracle found no packing"));
    return p ? kOk : kFalse;
  }
  fail(Errc::schema, "unknown oracle query '" + query + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal independent branching packings in matroid-rooted digraphs"};
  app.require_subcommand(1);

  std::string inst, set, vertex, elem, edge, guard, packing, query;
  std::vector<std::string> files;
  bool rounds = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* solve_cmd = app.add_subcommand("solve", "Compute a maximal independent branching packing");
  solve_cmd->add_option("files", files, "Instance files (stdin when omitted)");
  solve_cmd->add_option("-j,--jobs", jobs, "Worker threads for batch runs");

  auto* verify_cmd = app.add_subcommand("verify", "Check a packing against an instance");
  verify_cmd->add_option("instance", inst)->required();
  verify_cmd->add_option("packing", packing)->required();

  auto* check_cmd = app.add_subcommand("check", "Check independence and the linkage condition");
  check_cmd->add_option("instance", inst);

  auto* ml_cmd = app.add_subcommand("max-linkage", "Maximum-span linkage into a target set");
  ml_cmd->add_option("instance", inst);
  ml_cmd->add_option("--set", set, "Comma-separated target vertices")->required();
  ml_cmd->add_flag("--emit-rounds", rounds, "Dump U, F and injected arcs per round");

  auto* tight_cmd = app.add_subcommand("tight", "Is a vertex set tight");
  tight_cmd->add_option("instance", inst);
  tight_cmd->add_option("--set", set)->required();

  auto* dang_cmd = app.add_subcommand(
      "dangerous", "Find a dangerous set entered by an edge, or test a given set");
  dang_cmd->add_option("instance", inst);
  dang_cmd->add_option("--elem", elem)->required();
  dang_cmd->add_option("--edge", edge);
  dang_cmd->add_option("--set", set);

  std::string family = "random";
  std::uint64_t seed = 0;
  int n = 2, k = 1;
  fixtures::RandomBounds bounds;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--family", family)->check(CLI::IsMember({"random", "fig1", "fig2", "fig3"}));
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--n", n);
  gen_cmd->add_option("--k", k);
  gen_cmd->add_option("--max-vertices", bounds.max_vertices);
  gen_cmd->add_option("--max-edges", bounds.max_edges);
  gen_cmd->add_option("--max-rank", bounds.max_rank);
  gen_cmd->add_option("--max-elements", bounds.max_elements);

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive reference answers");
  oracle_cmd->add_option("query", query)
      ->required()
      ->check(CLI::IsMember({"max-linkage", "largest-t-good", "tight", "dangerous", "packing"}));
  oracle_cmd->add_option("instance", inst);
  oracle_cmd->add_option("--set", set);
  oracle_cmd->add_option("--vertex", vertex);
  oracle_cmd->add_option("--elem", elem);
  oracle_cmd->add_option("--edge", edge);
  oracle_cmd->add_option("--guard", guard,
                         "Overrides, e.g. vertices=10,edges=20 (capped at compile time)");

  auto* dot_cmd = app.add_subcommand("dot", "Render an instance as Graphviz DOT");
  dot_cmd->add_option("instance", inst);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*solve_cmd) return cmd_solve(files, jobs);
    if (*verify_cmd) return cmd_verify(inst, packing);
    if (*check_cmd) return cmd_check(inst);
    if (*ml_cmd) return cmd_max_linkage(inst, set, rounds);
    if (*tight_cmd) return cmd_tight(inst, set);
    if (*dang_cmd) return cmd_dangerous(inst, elem, edge, set);
    if (*gen_cmd) return cmd_gen(family, seed, n, k, bounds);
    if (*oracle_cmd) return cmd_oracle(query, inst, set, vertex, elem, edge, guard);
    if (*dot_cmd) {
      std::cout << io::emit_instance_dot(load(inst));
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}

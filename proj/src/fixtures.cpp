#include "mrd/fixtures.hpp"

#include <random>

namespace mrd::fixtures {

namespace {

std::string arrow(const std::string& a, const std::string& b) { return a + ">" + b; }

RootedDigraph build(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges,
                    Matroid m, const std::vector<std::vector<std::string>>& roots) {
  Digraph d(std::move(vertices), edges);
  std::vector<IndexSet> pi;
  for (const auto& r : roots) pi.push_back(d.vertex_set_of(r));
  return RootedDigraph(std::move(d), std::move(m), std::move(pi));
}

}  // namespace

io::InstanceDoc fig1_truncate(int n) {
  if (n < 2) fail(Errc::precondition, "fig1_truncate needs n >= 2");
  auto u = [](int k) { return "u" + std::to_string(k); };
  auto v = [](int k) { return "v" + std::to_string(k); };
  std::vector<std::string> vertices;
  for (int k = 0; k <= n; ++k) vertices.push_back(u(k));
  for (int k = 0; k <= n; ++k) vertices.push_back(v(k));
  std::vector<EdgeSpec> edges;
  auto add = [&](const std::string& a, const std::string& b) {
    edges.push_back({arrow(a, b), a, b});
  };
  add(u(1), v(0));
  add(v(1), u(0));
  for (int k = 0; k + 1 <= n; ++k) add(u(k), u(k + 1));
  for (int k = 0; k + 1 <= n; ++k) add(v(k), v(k + 1));
  for (int k = 0; 2 * k + 3 <= n; ++k) add(u(2 * k + 3), u(2 * k + 1));
  for (int k = 0; 2 * k + 3 <= n; ++k) add(v(2 * k + 3), v(2 * k + 1));
  std::vector<std::string> even_u, even_v;
  for (int k = 0; k <= n; k += 2) {
    even_u.push_back(u(k));
    even_v.push_back(v(k));
  }
  io::Json interior = io::Json::array();
  for (const char* side : {"u", "v"})
    for (int k = 0; k <= n; ++k)
      if (k % 2 == 0 || k + 2 <= n) interior.push_back(side + std::to_string(k));
  io::InstanceDoc doc{"fig1_truncate(" + std::to_string(n) + ")",
                      {{"generator", "fig1_truncate"},
                       {"parameters", {{"n", n}}},
                       {"interior", interior}},
                      build(std::move(vertices), edges, Matroid::free({"0", "1"}),
                            {even_u, even_v})};
  return doc;
}

io::InstanceDoc fig2_truncate(int n) {
  if (n < 1) fail(Errc::precondition, "fig2_truncate needs n >= 1");
  auto u = [](int k) { return "u" + std::to_string(k); };
  auto v = [](int k) { return "v" + std::to_string(k); };
  std::vector<std::string> vertices;
  for (int k = 0; k <= n; ++k) vertices.push_back(u(k));
  for (int k = 0; k <= n; ++k) vertices.push_back(v(k));
  vertices.push_back("w");
  std::vector<EdgeSpec> edges;
  for (int k = 0; k <= n; ++k) edges.push_back({arrow(u(k), v(k)), u(k), v(k)});
  for (int k = 0; k <= n; ++k) edges.push_back({arrow(v(k), "w"), v(k), "w"});

  std::size_t dim = static_cast<std::size_t>(n) + 2;
  auto unit = [&](int k) {
    std::vector<Rational> c(dim, Rational(0));
    c[static_cast<std::size_t>(k)] = 1;
    return c;
  };
  std::vector<std::string> names;
  std::vector<std::vector<Rational>> columns;
  std::vector<std::vector<std::string>> roots;
  for (int k = 0; k <= n; ++k) {
    names.push_back("a" + std::to_string(k));
    columns.push_back(unit(k));
    roots.push_back({u(k)});
    auto plus = unit(k);
    plus[static_cast<std::size_t>(k) + 1] = 1;
    auto minus = unit(k);
    minus[static_cast<std::size_t>(k) + 1] = -1;
    names.push_back("b" + std::to_string(k) + "+");
    columns.push_back(plus);
    roots.push_back({v(k)});
    names.push_back("b" + std::to_string(k) + "-");
    columns.push_back(minus);
    roots.push_back({v(k)});
  }
  names.push_back("tail");
  columns.push_back(unit(n + 1));
  roots.push_back({"w"});
  return io::InstanceDoc{
      "fig2_truncate(" + std::to_string(n) + ")",
      {{"generator", "fig2_truncate"}, {"parameters", {{"n", n}}}},
      build(std::move(vertices), edges,
            Matroid::linear(std::move(names), std::move(columns)), roots)};
}

io::InstanceDoc fig3_truncate(int n, int k) {
  if (n < 1 || k < 1) fail(Errc::precondition, "fig3_truncate needs n >= 1 and k >= 1");
  auto cell = [](int m, int j) {
    return "(" + std::to_string(m) + "," + std::to_string(j) + ")";
  };
  std::vector<std::string> vertices{"t"};
  for (int j = 0; j <= n; ++j)
    for (int m = 0; m <= j; ++m) vertices.push_back(cell(m, j));
  std::vector<EdgeSpec> edges;
  for (int j = 0; j + 1 <= n; ++j)
    for (int m = 0; m <= j; ++m)
      for (int c = 0; c < k; ++c)
        edges.push_back({arrow(cell(m, j + 1), cell(m, j)) + "#" + std::to_string(c),
                         cell(m, j + 1), cell(m, j)});
  for (int j = 0; j <= n; ++j)
    for (int m = 0; m + 1 <= j; ++m)
      edges.push_back({arrow(cell(m, j), cell(m + 1, j)), cell(m, j), cell(m + 1, j)});
  for (int j = 0; j <= n; ++j)
    for (int m = 0; 2 * m + 2 <= j; ++m)
      edges.push_back(
          {arrow(cell(2 * m + 2, j), cell(2 * m, j)), cell(2 * m + 2, j), cell(2 * m, j)});
  for (int m = 0; m <= n; ++m) edges.push_back({arrow(cell(m, m), "t"), cell(m, m), "t"});
  for (int j = 0; j <= n; ++j)
    for (int m = 0; 2 * m + 1 <= j; ++m)
      edges.push_back({arrow("t", cell(2 * m + 1, j)), "t", cell(2 * m + 1, j)});
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> roots;
  for (int j = 0; j <= n; ++j) {
    names.push_back(std::to_string(j));
    roots.push_back({cell(0, j)});
  }
  return io::InstanceDoc{
      "fig3_truncate(" + std::to_string(n) + "," + std::to_string(k) + ")",
      {{"generator", "fig3_truncate"}, {"parameters", {{"n", n}, {"k", k}}}},
      build(std::move(vertices), edges, Matroid::free(std::move(names)), roots)};
}

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  /// Uniform integer in [lo, hi].
  int pick(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(int percent) { return pick(1, 100) <= percent; }

 private:
  std::mt19937_64 rng_;
};

std::vector<std::string> element_names(int count, int offset = 0) {
  std::vector<std::string> out;
  for (int k = 0; k < count; ++k) out.push_back("x" + std::to_string(offset + k));
  return out;
}

Matroid simple_matroid(Draw& g, int count, int offset, int max_rank) {
  auto names = element_names(count, offset);
  if (g.coin(50) && count <= max_rank) return Matroid::free(names);
  return Matroid::uniform(names, g.pick(1, std::min(max_rank, count)));
}

Matroid random_matroid(Draw& g, const RandomBounds& b, std::string& kind) {
  int count = g.pick(1, b.max_elements);
  switch (g.pick(0, 5)) {
    case 0:
      kind = "free";
      count = std::min(count, b.max_rank);
      return Matroid::free(element_names(count));
    case 1:
      kind = "uniform";
      return Matroid::uniform(element_names(count), g.pick(1, std::min(b.max_rank, count)));
    case 2: {
      kind = "partition";
      int nblocks = g.pick(1, std::min(3, count));
      std::vector<std::vector<std::string>> blocks(nblocks);
      auto names = element_names(count);
      for (int k = 0; k < count; ++k)
        blocks[k < nblocks ? k : g.pick(0, nblocks - 1)].push_back(names[k]);
      std::vector<int> caps;
      for (int k = 0; k < nblocks; ++k) caps.push_back(g.pick(1, 2));
      return Matroid::partition(names, blocks, caps);
    }
    case 3:
    case 4: {
      int dim = g.pick(1, b.max_rank);
      std::vector<std::vector<Rational>> cols;
      for (int k = 0; k < count; ++k) {
        std::vector<Rational> c;
        for (int q = 0; q < dim; ++q) c.emplace_back(g.pick(-2, 2), g.pick(1, 2));
        cols.push_back(std::move(c));
      }
      Matroid lin = Matroid::linear(element_names(count), std::move(cols));
      if (g.coin(50)) {
        kind = "linear";
        return lin;
      }
      kind = "explicit";
      std::vector<std::vector<std::string>> circuits;
      for (const auto& c : enumerate_circuits(lin)) {
        std::vector<std::string> names;
        for (int i : c) names.push_back(lin.name(i));
        circuits.push_back(std::move(names));
      }
      return Matroid::explicit_circuits(lin.names(), circuits);
    }
    default: {
      kind = "direct_sum";
      int first = g.pick(1, std::max(1, count - 1));
      int second = std::max(1, count - first);
      return Matroid::direct_sum({simple_matroid(g, first, 0, 2),
                                  simple_matroid(g, second, first, 2)});
    }
  }
}

}  // namespace

io::InstanceDoc gen_random(std::uint64_t seed, const RandomBounds& b) {
  if (b.max_vertices < 2 || b.max_vertices > 8 || b.max_edges < 1 || b.max_edges > 16 ||
      b.max_rank < 1 || b.max_rank > 4 || b.max_elements < 1 || b.max_elements > 6)
    fail(Errc::guard_exceeded,
         "random bounds must satisfy 2<=|V|<=8, 1<=|A|<=16, 1<=rank<=4, |S|<=6");
  Draw g(seed);
  for (int attempt = 0; attempt < b.max_attempts; ++attempt) {
    int nv = g.pick(2, b.max_vertices);
    int ne = g.pick(1, b.max_edges);
    std::vector<std::string> vertices;
    for (int k = 0; k < nv; ++k) vertices.push_back("v" + std::to_string(k));
    std::vector<EdgeSpec> edges;
    for (int k = 0; k < ne; ++k) {
      int a = g.pick(0, nv - 1);
      int c = g.pick(0, nv - 2);
      if (c >= a) ++c;
      edges.push_back({"e" + std::to_string(k), vertices[a], vertices[c]});
    }
    std::string kind;
    Matroid m = random_matroid(g, b, kind);
    std::vector<std::vector<std::string>> roots;
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::vector<std::string> r{vertices[g.pick(0, nv - 1)]};
      if (g.coin(20)) {
        const auto& extra = vertices[g.pick(0, nv - 1)];
        if (extra != r.front()) r.push_back(extra);
      }
      roots.push_back(std::move(r));
    }
    if (m.rank() > b.max_rank) continue;
    RootedDigraph r = build(vertices, edges, m, roots);
    if (!r.check_independent() || !check_linkage_condition(r).ok) continue;
    return io::InstanceDoc{
        "random-" + std::to_string(seed),
        {{"generator", "gen_random"},
         {"parameters",
          {{"seed", seed},
           {"max_vertices", b.max_vertices},
           {"max_edges", b.max_edges},
           {"max_rank", b.max_rank}}},
         {"matroid_kind", kind},
         {"rejections", attempt}},
        std::move(r)};
  }
  fail(Errc::guard_exceeded, "gen_random: no admissible instance within the attempt budget");
}

}  // namespace mrd::fixtures

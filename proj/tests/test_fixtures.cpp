#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace mrd;
using namespace mrd::testing;

TEST_CASE("fig1 sizes") {
  auto r3 = fixtures::fig1_truncate(3).rooted;
  CHECK(r3.digraph().vertex_count() == 8);
  // u1v0, v1u0, three forward edges per side, one back edge per side.
  CHECK(r3.digraph().edge_count() == 2 + 6 + 2);
  CHECK(r3.digraph().find_edge("u3>u1"));
  CHECK(r3.digraph().find_edge("v1>u0"));
  auto r2 = fixtures::fig1_truncate(2).rooted;
  CHECK(r2.digraph().vertex_count() == 6);
  CHECK(r2.digraph().edge_count() == 6);
  CHECK(r2.pi(0) == vset(r2, {"u0", "u2"}));
  CHECK_THROWS_AS(fixtures::fig1_truncate(1), Error);
}

TEST_CASE("fig1 interior vertices are exactly where the linkage condition holds") {
  for (int n = 2; n <= 7; ++n) {
    auto doc = fixtures::fig1_truncate(n);
    const auto& r = doc.rooted;
    std::set<std::string> interior;
    for (const auto& name : doc.metadata["interior"]) interior.insert(name.get<std::string>());
    for (std::size_t v = 0; v < r.digraph().vertex_count(); ++v) {
      auto vid = static_cast<VertexId>(v);
      bool holds = max_linkage(r, r.single(vid)).rank == r.matroid().rank(r.need_at(vid));
      CHECK_MESSAGE(holds == interior.count(r.digraph().vertex_name(vid)) > 0,
                    "n=" << n << " vertex " << r.digraph().vertex_name(vid));
    }
  }
}

TEST_CASE("fig2 construction") {
  auto r = fixtures::fig2_truncate(2).rooted;
  CHECK(r.digraph().vertex_count() == 7);
  CHECK(r.digraph().edge_count() == 6);
  CHECK(r.check_independent());
  CHECK(check_linkage_condition(r).ok);
  for (int k = 0; k <= 2; ++k) {
    auto s = r.s_at(r.digraph().vertex_index("u" + std::to_string(k)));
    REQUIRE(s.size() == 1);
    CHECK(r.matroid().name(s.first()) == "a" + std::to_string(k));
  }
  // Adding a_n to S(v_n) would be dependent.
  CHECK_FALSE(r.step_defined({r.matroid().index_of("a2"), r.digraph().edge_index("u2>v2")}));
}

TEST_CASE("fig3 construction") {
  auto r = fixtures::fig3_truncate(2, 2).rooted;
  CHECK(r.digraph().vertex_count() == 1 + 6);
  CHECK(r.digraph().find_edge("t>(1,1)"));
  CHECK(r.digraph().find_edge("t>(1,2)"));
  CHECK(r.digraph().find_edge("(2,2)>(0,2)"));
  CHECK(r.digraph().find_edge("(0,2)>(0,1)#1"));
  CHECK(r.matroid().size() == 3);
  CHECK(r.pi(2) == vset(r, {"(0,2)"}));
  auto c0 = vset(r, {"(0,0)", "(0,1)", "(0,2)"});
  CHECK(r.digraph().in_edges(c0).contains(r.digraph().edge_index("(2,2)>(0,2)")));
  CHECK_THROWS_AS(fixtures::fig3_truncate(1, 0), Error);
}

TEST_CASE("random generator is reproducible and admissible") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto a = fixtures::gen_random(seed);
    auto b = fixtures::gen_random(seed);
    CHECK(io::emit_instance(a).dump() == io::emit_instance(b).dump());
    const auto& r = a.rooted;
    CHECK(r.check_independent());
    CHECK(check_linkage_condition(r).ok);
    CHECK(r.digraph().vertex_count() <= 8);
    CHECK(r.digraph().edge_count() <= 16);
    CHECK(r.matroid().rank() <= 4);
    CHECK(a.metadata.contains("rejections"));
  }
  fixtures::RandomBounds too_big;
  too_big.max_vertices = 9;
  CHECK_THROWS_AS(fixtures::gen_random(1, too_big), Error);
}

#include "doctest.h"

#include <algorithm>
#include <set>

#include "forage/error.hpp"
#include "forage/graph.hpp"

#include "test_util.hpp"

using namespace forage;
using namespace forage::testutil;

TEST_CASE("edge kinds partition into content and structural") {
    CHECK(is_content_kind(EdgeKind::Post));
    CHECK(is_content_kind(EdgeKind::Repost));
    CHECK(is_content_kind(EdgeKind::Reply));
    CHECK(is_content_kind(EdgeKind::Mention));
    CHECK_FALSE(is_content_kind(EdgeKind::Follow));
    CHECK_FALSE(is_content_kind(EdgeKind::Friendship));
    CHECK(parse_edge_kind("repost") == EdgeKind::Repost);
    CHECK_FALSE(parse_edge_kind("retweet").has_value());
}

TEST_CASE("a standalone post becomes a self-loop content edge") {
    const std::vector<PostRecord> records{post("p0", "alice", "hello")};
    const SocialGraph g = SocialGraph::build(records);
    CHECK(g.user_count() == 1);
    CHECK(g.content_edge_count() == 1);
    const ContentEdge& e = g.content_edge(0);
    CHECK(e.source == e.target);
    CHECK(g.user_name(e.source) == "alice");
    CHECK(e.raw_text == "hello");
}

TEST_CASE("a reply points at the parent's author and is adjacent to it") {
    const std::vector<PostRecord> records{
        post("t1", "alice", "hello"),
        reply("t2", "bob", "t1", "hi alice"),
    };
    const SocialGraph g = SocialGraph::build(records);
    CHECK(g.user_count() == 2);
    CHECK(g.content_edge_count() == 2);

    const ContentEdge& r = g.content_edge(1);
    CHECK(g.user_name(r.source) == "bob");
    CHECK(g.user_name(r.target) == "alice");

    const auto n0 = adjacent_content_edges(g, 0);
    const auto n1 = adjacent_content_edges(g, 1);
    CHECK(n0 == std::vector<EdgeId>{1});
    CHECK(n1 == std::vector<EdgeId>{0});
}

TEST_CASE("a follow record only adds a structural edge") {
    const std::vector<PostRecord> records{
        post("p0", "alice"),
        follow("f0", "bob", "alice"),
    };
    const SocialGraph g = SocialGraph::build(records);
    CHECK(g.content_edge_count() == 1);
    CHECK(g.structural_edges().size() == 1);
    CHECK(g.edge_count() == 2);
}

TEST_CASE("content edge ids are dense and in input order") {
    std::vector<PostRecord> records;
    records.push_back(post("a", "u1"));
    records.push_back(follow("f", "u1", "u2"));
    records.push_back(post("b", "u2"));
    records.push_back(reply("c", "u1", "a"));
    const SocialGraph g = SocialGraph::build(records);
    REQUIRE(g.content_edge_count() == 3);
    CHECK(g.content_edge(0).post_id == "a");
    CHECK(g.content_edge(1).post_id == "b");
    CHECK(g.content_edge(2).post_id == "c");
    for (EdgeId e = 0; e < 3; ++e) CHECK(g.content_edge(e).id == e);
}

TEST_CASE("duplicate post ids are rejected naming the offender") {
    const std::vector<PostRecord> records{post("same", "a"), post("same", "b")};
    CHECK_THROWS_WITH_AS(static_cast<void>(SocialGraph::build(records)),
                         doctest::Contains("same"), UsageError);
}

TEST_CASE("unknown edge kinds are rejected") {
    PostRecord bad = post("p0", "alice");
    bad.kind = "retweet";
    const std::vector<PostRecord> records{bad};
    CHECK_THROWS_AS(static_cast<void>(SocialGraph::build(records)), UsageError);
}

TEST_CASE("structural records need a target user") {
    PostRecord bad;
    bad.id = "f0";
    bad.author = "alice";
    bad.kind = "follow";
    const std::vector<PostRecord> records{bad};
    CHECK_THROWS_AS(static_cast<void>(SocialGraph::build(records)), UsageError);
}

TEST_CASE("dangling parent references keep the edge and bump the counter") {
    const std::vector<PostRecord> records{reply("r0", "bob", "unseen")};
    const SocialGraph g = SocialGraph::build(records);
    CHECK(g.content_edge_count() == 1);
    CHECK(g.warnings().dangling_parents == 1);
    CHECK(g.content_edge(0).source == g.content_edge(0).target);
}

TEST_CASE("an isolated post has no adjacent content edges") {
    const std::vector<PostRecord> records{post("p0", "solo"), post("p1", "other")};
    const SocialGraph g = SocialGraph::build(records);
    CHECK(adjacent_content_edges(g, 0).empty());
    CHECK(adjacent_content_edges(g, 1).empty());
}

TEST_CASE("a star of replies to one author is mutually adjacent") {
    std::vector<PostRecord> records{post("root", "hub")};
    records.push_back(reply("r1", "a", "root"));
    records.push_back(reply("r2", "b", "root"));
    records.push_back(reply("r3", "c", "root"));
    const SocialGraph g = SocialGraph::build(records);

    // Brute-force oracle over all edge pairs: adjacency iff a shared endpoint.
    for (EdgeId e1 = 0; e1 < g.content_edge_count(); ++e1) {
        std::set<EdgeId> expected;
        const ContentEdge& a = g.content_edge(e1);
        for (EdgeId e2 = 0; e2 < g.content_edge_count(); ++e2) {
            if (e1 == e2) continue;
            const ContentEdge& b = g.content_edge(e2);
            if (a.source == b.source || a.source == b.target || a.target == b.source ||
                a.target == b.target) {
                expected.insert(e2);
            }
        }
        const auto got = adjacent_content_edges(g, e1);
        CHECK(std::set<EdgeId>(got.begin(), got.end()) == expected);
    }
    // Each reply touches the hub, so every reply neighbors the other two.
    CHECK(adjacent_content_edges(g, 1).size() == 3);
}

TEST_CASE("structural edges sharing a vertex are excluded from adjacency") {
    std::vector<PostRecord> records{post("p0", "alice"), follow("f0", "alice", "bob")};
    const SocialGraph g = SocialGraph::build(records);
    CHECK(adjacent_content_edges(g, 0).empty());
}

TEST_CASE("querying adjacency of a non-existent edge is an error") {
    const std::vector<PostRecord> records{post("p0", "a")};
    const SocialGraph g = SocialGraph::build(records);
    CHECK_THROWS_AS(static_cast<void>(adjacent_content_edges(g, 7)), UsageError);
    CHECK_THROWS_AS(static_cast<void>(g.content_edge(7)), UsageError);
}

TEST_CASE("adjacency is symmetric and content-only on random graphs") {
    Rng rng(20240601);
    for (int trial = 0; trial < 20; ++trial) {
        const int n_posts = static_cast<int>(uniform_int(rng, 1, 100));
        const SocialGraph g = random_graph(rng, n_posts, 8);

        for (EdgeId e1 = 0; e1 < g.content_edge_count(); ++e1) {
            const auto n1 = g.adjacent_content_edges(e1);
            CHECK(std::find(n1.begin(), n1.end(), e1) == n1.end());
            for (const EdgeId e2 : n1) {
                const auto n2 = g.adjacent_content_edges(e2);
                CHECK(std::find(n2.begin(), n2.end(), e1) != n2.end());
                CHECK(e2 < g.content_edge_count());
            }
        }
    }
}

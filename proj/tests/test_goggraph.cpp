#include "doctest.h"
#include "gog/error.hpp"
#include "gog/goggraph.hpp"

using namespace gog;

namespace {

const char* kBs23 = R"(# BS(2,3)
vertex v rank=1 gens=a
edge t v v minus="a^2" plus="a^3"
)";

const char* kTrefoil = R"(vertex v rank=1 gens=a
vertex w rank=1 gens=b
edge e v w minus="a^2" plus="b^3"
)";

}  // namespace

TEST_CASE("parse a one-loop graph") {
    const GraphOfGroups g = parse_graph(kBs23);
    REQUIRE(g.vertices().size() == 1);
    REQUIRE(g.edges().size() == 1);
    CHECK(g.edge(0).is_loop());
    CHECK_FALSE(g.is_bad(0));
    CHECK(g.label(0, EdgeEnd::minus).arrow);
    CHECK(g.label(0, EdgeEnd::plus).arrow);
    CHECK(g.maximal_tree().empty());
    CHECK_FALSE(g.is_tree());
    CHECK(g.is_reduced());
}

TEST_CASE("parse a two-vertex tree") {
    const GraphOfGroups g = parse_graph(kTrefoil);
    CHECK(g.is_tree());
    CHECK(g.label(0, EdgeEnd::minus).arrow);
    CHECK(g.label(0, EdgeEnd::plus).arrow);
    CHECK(g.maximal_tree() == std::vector<EdgeIndex>{0});
}

TEST_CASE("parse errors") {
    auto error_at = [](const char* text) -> std::pair<std::size_t, std::size_t> {
        try {
            parse_graph(text);
        } catch (const ParseError& e) {
            return {e.line(), e.column()};
        }
        return {0, 0};
    };
    CHECK(error_at("vertex v rank=1 gens=a\nedge e v v minus=\"a a^-1\" plus=\"a\"\n") ==
          std::pair<std::size_t, std::size_t>{2, 19});
    CHECK(error_at("vertex v rank=2 gens=a\n").first == 1);
    CHECK(error_at("vertex v rank=1 gens=a\nedge e v w minus=\"a\" plus=\"a\"\n") ==
          std::pair<std::size_t, std::size_t>{2, 10});
    CHECK(error_at("vertex v rank=1 gens=a\nedge e v v minus=\"q\" plus=\"a\"\n") ==
          std::pair<std::size_t, std::size_t>{2, 19});
    CHECK(error_at("vertex v rank=1 gens=a\nvertex w rank=1 gens=b\nedge e v v minus=\"b\" plus=\"a\"\n").first == 3);
    CHECK(error_at("vertices v\n") == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(error_at("vertex v rank=1 gens=a\nvertex w rank=1 gens=a\n").first == 2);
    CHECK_THROWS_AS(parse_graph("vertex v rank=1 gens=a\nvertex w rank=1 gens=b\n"), GraphError);
    CHECK_THROWS_AS(parse_graph("# nothing\n"), GraphError);
}

TEST_CASE("maximal tree is breadth first with least edge index") {
    const GraphOfGroups theta = parse_graph(R"(vertex v rank=1 gens=a
vertex w rank=1 gens=b
edge e1 v w minus="a^2" plus="b^2"
edge e2 v w minus="a^3" plus="b^3"
edge e3 v w minus="a^5" plus="b^5"
)");
    CHECK(maximal_tree(theta) == std::vector<EdgeIndex>{0});
    CHECK(theta.in_tree(0));
    CHECK_FALSE(theta.in_tree(2));

    const GraphOfGroups chain = parse_graph(R"(vertex u rank=1 gens=a
vertex v rank=1 gens=b
vertex w rank=1 gens=c
edge f v w minus="b^2" plus="c^2"
edge e u v minus="a^2" plus="b^3"
)");
    CHECK(chain.maximal_tree().size() == 2);
}

TEST_CASE("labels survive a serialize round trip") {
    for (const char* text : {kBs23, kTrefoil,
                             "vertex v rank=2 gens=a,b\nvertex w rank=1 gens=x\n"
                             "edge e v w minus=\"a b a^-1 b^-1\" plus=\"x^2\"\nedge f w w minus=\"x\" plus=\"x^-1\"\n"}) {
        const GraphOfGroups g = parse_graph(text);
        const GraphOfGroups h = parse_graph(serialize_graph(g));
        REQUIRE(g.edges().size() == h.edges().size());
        for (EdgeIndex e = 0; e < g.edges().size(); ++e) {
            for (EdgeEnd end : {EdgeEnd::minus, EdgeEnd::plus}) {
                CHECK(g.label(e, end).bad == h.label(e, end).bad);
                CHECK(g.label(e, end).arrow == h.label(e, end).arrow);
                CHECK((!g.label(e, end).bad || !g.label(e, end).arrow));
            }
        }
        CHECK(serialize_graph(h) == serialize_graph(g));
        CHECK(graph_to_json(g).dump() == graph_to_json(h).dump());
    }
}

TEST_CASE("reduction contracts reducible edges") {
    const GraphOfGroups g = parse_graph(R"(vertex v rank=2 gens=a,c
vertex w rank=1 gens=b
edge e v w minus="a c" plus="b"
edge f w w minus="b^2" plus="b^-3"
)");
    CHECK(g.is_reducible(0));
    CHECK_FALSE(g.is_reduced());
    const ReductionResult r = reduce_graph(g);
    CHECK(r.graph.is_reduced());
    REQUIRE(r.graph.vertices().size() == 1);
    REQUIRE(r.graph.edges().size() == 1);
    CHECK(r.graph.format(r.graph.edge(0).minus) == "a c a c");
    CHECK(r.graph.format(r.graph.edge(0).plus) == "c^-1 a^-1 c^-1 a^-1 c^-1 a^-1");
    REQUIRE(r.log.size() == 1);
    CHECK(r.log[0].removed_vertex == "w");
    CHECK(r.log[0].image == "a c");
    CHECK(r.log[0].rewrites.size() == 2);

    const GraphOfGroups reduced = parse_graph(kBs23);
    const ReductionResult same = reduce_graph(reduced);
    CHECK(same.log.empty());
    CHECK(serialize_graph(same.graph) == serialize_graph(reduced));
}

TEST_CASE("a chain of surjective inclusions collapses to the trivial graph") {
    const GraphOfGroups g = parse_graph(R"(vertex u rank=1 gens=a
vertex v rank=1 gens=b
vertex w rank=1 gens=c
edge e u v minus="a" plus="b"
edge f v w minus="b^2" plus="c"
)");
    const ReductionResult r = reduce_graph(g);
    CHECK(r.graph.is_trivial());
    CHECK(r.log.size() == 2);
    CHECK(r.graph.vertex(0).id == "u");
}

TEST_CASE("both ends bad contracts into the lower vertex") {
    const GraphOfGroups g = parse_graph(R"(vertex u rank=1 gens=a
vertex v rank=1 gens=b
edge e v u minus="b^-1" plus="a"
)");
    const ReductionResult r = reduce_graph(g);
    REQUIRE(r.graph.is_trivial());
    CHECK(r.graph.vertex(0).id == "u");
}

#pragma once

// Finite graphs of groups with free vertex groups and infinite cyclic edge
// groups. Each edge carries two inclusion words: `minus` in the from-vertex
// alphabet and `plus` in the to-vertex alphabet, identifying minus^k with
// plus^k.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gog/freewords.hpp"

namespace gog {

using EdgeIndex = std::size_t;

struct Vertex {
    std::string id;
    std::vector<GeneratorIndex> generators;

    std::size_t rank() const { return generators.size(); }
};

struct Edge {
    std::string id;
    VertexIndex from = 0;
    VertexIndex to = 0;
    FreeWord minus;
    FreeWord plus;

    bool is_loop() const { return from == to; }
};

enum class EdgeEnd { minus, plus };

/// A nontrivial element of one vertex group.
struct VertexElement {
    VertexIndex vertex = 0;
    FreeWord word;
};

/// Derived per-end labels.
///   bad:   the inclusion is onto (rank-1 vertex, word a generator^{+-1})
///   arrow: the inclusion word is a proper power, pointing at that end's vertex
struct EndLabel {
    bool bad = false;
    bool arrow = false;
    RootDecomposition root;
};

/// An edge traversed in a chosen direction. Forward runs from -> to.
struct OrientedEdge {
    EdgeIndex edge = 0;
    bool reversed = false;

    OrientedEdge reverse() const { return {edge, !reversed}; }
    auto operator<=>(const OrientedEdge&) const = default;
};

class GraphOfGroups {
public:
    const GeneratorTable& generators() const { return generators_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Vertex& vertex(VertexIndex v) const { return vertices_[v]; }
    const Edge& edge(EdgeIndex e) const { return edges_[e]; }

    std::optional<VertexIndex> find_vertex(std::string_view id) const;
    std::optional<EdgeIndex> find_edge(std::string_view id) const;

    const EndLabel& label(EdgeIndex e, EdgeEnd end) const;
    bool is_bad(EdgeIndex e) const;
    /// Bad and not a self loop.
    bool is_reducible(EdgeIndex e) const;
    bool is_reduced() const;

    /// Spanning tree: breadth first from vertex 0, incident edges by index.
    const std::vector<EdgeIndex>& maximal_tree() const { return tree_; }
    bool in_tree(EdgeIndex e) const { return in_tree_[e]; }
    bool is_tree() const { return edges_.size() + 1 == vertices_.size(); }
    /// Single vertex and no edges.
    bool is_trivial() const { return vertices_.size() == 1 && edges_.empty(); }
    bool all_rank_one() const;

    VertexIndex origin(OrientedEdge oe) const { return oe.reversed ? edges_[oe.edge].to : edges_[oe.edge].from; }
    VertexIndex terminus(OrientedEdge oe) const { return oe.reversed ? edges_[oe.edge].from : edges_[oe.edge].to; }
    const FreeWord& origin_word(OrientedEdge oe) const {
        return oe.reversed ? edges_[oe.edge].plus : edges_[oe.edge].minus;
    }
    const FreeWord& terminus_word(OrientedEdge oe) const {
        return oe.reversed ? edges_[oe.edge].minus : edges_[oe.edge].plus;
    }
    const EndLabel& origin_label(OrientedEdge oe) const {
        return label(oe.edge, oe.reversed ? EdgeEnd::plus : EdgeEnd::minus);
    }
    const EndLabel& terminus_label(OrientedEdge oe) const {
        return label(oe.edge, oe.reversed ? EdgeEnd::minus : EdgeEnd::plus);
    }

    /// Oriented edges leaving v, ordered by (edge index, direction). A loop
    /// contributes both of its orientations.
    std::vector<OrientedEdge> outgoing(VertexIndex v) const;

    std::string format(const FreeWord& w) const { return format_word(w, generators_); }
    std::string format(OrientedEdge oe) const;

private:
    friend class GraphBuilder;
    GraphOfGroups() = default;

    GeneratorTable generators_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<EndLabel> labels_;  // 2 per edge: minus, plus
    std::vector<EdgeIndex> tree_;
    std::vector<bool> in_tree_;
};

/// Incremental construction with validation in build().
class GraphBuilder {
public:
    VertexIndex add_vertex(std::string id, const std::vector<std::string>& generator_names);
    EdgeIndex add_edge(std::string id, VertexIndex from, VertexIndex to, FreeWord minus, FreeWord plus);

    const GeneratorTable& generators() const { return graph_.generators_; }
    std::optional<VertexIndex> find_vertex(std::string_view id) const { return graph_.find_vertex(id); }

    /// Throws GraphError on identity or misplaced inclusion words, an empty or
    /// disconnected graph, duplicate ids, and edge ids that shadow a generator
    /// name (edge ids double as stable-letter names).
    GraphOfGroups build() &&;

private:
    GraphOfGroups graph_;
};

/// Parses the line-oriented format:
///   vertex <id> rank=<n> gens=<name>(,<name>)*
///   edge <id> <from> <to> minus="<word>" plus="<word>"
/// Throws ParseError with line and column; GraphError for whole-graph problems.
GraphOfGroups parse_graph(std::string_view text);

/// Same format; derived labels are emitted as comments.
std::string serialize_graph(const GraphOfGroups& g);

nlohmann::ordered_json graph_to_json(const GraphOfGroups& g);

// ---------------------------------------------------------------------------
// Reduction

/// One contraction of a reducible edge. The removed vertex group is cyclic on
/// `generator`, which is identified with `image` in the survivor's alphabet.
struct Contraction {
    std::string edge;
    std::string removed_vertex;
    std::string survivor;
    std::string generator;
    std::string image;
    struct Rewrite {
        std::string edge;
        EdgeEnd end;
        std::string before;
        std::string after;
    };
    std::vector<Rewrite> rewrites;
};

struct ContractionOrder {
    /// Without a seed the reducible edge of least index is contracted first;
    /// with one, a pseudo-random reducible edge is chosen at each step.
    std::optional<std::uint64_t> seed;
};

struct ReductionResult {
    GraphOfGroups graph;
    std::vector<Contraction> log;
};

ReductionResult reduce_graph(const GraphOfGroups& g, ContractionOrder order = {});

/// Edge indices of the spanning tree of g (same as g.maximal_tree()).
std::vector<EdgeIndex> maximal_tree(const GraphOfGroups& g);

}  // namespace gog

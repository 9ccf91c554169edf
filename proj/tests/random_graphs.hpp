#pragma once

// Seeded random graphs for property tests.

#include <random>
#include <string>
#include <vector>

#include "gog/goggraph.hpp"

namespace randomgraph {

using gog::FreeWord;
using gog::GraphBuilder;
using gog::GraphOfGroups;
using gog::Letter;
using gog::VertexIndex;

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// A nontrivial reduced word of length <= max_len over the given generators.
inline FreeWord random_word(std::mt19937_64& rng, const std::vector<gog::GeneratorIndex>& gens, long max_len) {
    for (;;) {
        std::vector<Letter> letters;
        const long len = uniform(rng, 1, max_len);
        for (long i = 0; i < len; ++i) {
            letters.emplace_back(gens[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(gens.size()) - 1))],
                                 uniform(rng, 0, 1) == 1);
        }
        FreeWord w = gog::reduce(letters);
        if (!w.is_identity()) return w;
    }
}

struct Sketch {
    std::vector<long> ranks;
    struct E {
        VertexIndex from, to;
    };
    std::vector<E> edges;
};

inline GraphOfGroups realize(std::mt19937_64& rng, const Sketch& s, long max_len) {
    GraphBuilder b;
    std::vector<std::vector<gog::GeneratorIndex>> gens(s.ranks.size());
    for (std::size_t v = 0; v < s.ranks.size(); ++v) {
        std::vector<std::string> names;
        for (long j = 0; j < s.ranks[v]; ++j) names.push_back("x" + std::to_string(v) + "_" + std::to_string(j));
        b.add_vertex("v" + std::to_string(v), names);
        for (const auto& n : names) gens[v].push_back(*b.generators().find(n));
    }
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        const auto [from, to] = s.edges[e];
        b.add_edge("e" + std::to_string(e), from, to, random_word(rng, gens[from], max_len),
                   random_word(rng, gens[to], max_len));
    }
    return std::move(b).build();
}

/// Tree on 1..max_vertices vertices, ranks 1..max_rank.
inline GraphOfGroups random_tree(std::mt19937_64& rng, long max_vertices = 5, long max_rank = 3, long max_len = 6) {
    Sketch s;
    const long n = uniform(rng, 1, max_vertices);
    for (long v = 0; v < n; ++v) s.ranks.push_back(uniform(rng, 1, max_rank));
    for (long v = 1; v < n; ++v) {
        s.edges.push_back({static_cast<VertexIndex>(uniform(rng, 0, v - 1)), static_cast<VertexIndex>(v)});
    }
    return realize(rng, s, max_len);
}

/// One edge: an amalgam of two vertices or a loop.
inline GraphOfGroups random_one_edge(std::mt19937_64& rng, long max_rank = 3, long max_len = 6) {
    Sketch s;
    if (uniform(rng, 0, 1) == 0) {
        s.ranks = {uniform(rng, 1, max_rank), uniform(rng, 1, max_rank)};
        s.edges = {{0, 1}};
    } else {
        s.ranks = {uniform(rng, 1, max_rank)};
        s.edges = {{0, 0}};
    }
    return realize(rng, s, max_len);
}

/// Connected graph with up to max_vertices vertices and max_edges edges in
/// which at least one edge is reducible: a rank-1 vertex attached through a
/// generator.
inline GraphOfGroups random_reducible(std::mt19937_64& rng, long max_vertices = 4, long max_edges = 5) {
    for (;;) {
        Sketch s;
        const long n = uniform(rng, 2, max_vertices);
        for (long v = 0; v < n; ++v) s.ranks.push_back(uniform(rng, 0, 2) == 0 ? 2 : 1);
        for (long v = 1; v < n; ++v) {
            s.edges.push_back({static_cast<VertexIndex>(uniform(rng, 0, v - 1)), static_cast<VertexIndex>(v)});
        }
        const long extra = uniform(rng, 0, max_edges - (n - 1));
        for (long i = 0; i < extra; ++i) {
            s.edges.push_back({static_cast<VertexIndex>(uniform(rng, 0, n - 1)),
                               static_cast<VertexIndex>(uniform(rng, 0, n - 1))});
        }
        GraphOfGroups g = realize(rng, s, 3);
        // Force a reducible edge: make the last tree edge's terminus end a
        // single generator when that vertex has rank 1.
        GraphBuilder b;
        for (const auto& v : g.vertices()) {
            std::vector<std::string> names;
            for (auto gi : v.generators) names.push_back(g.generators()[gi].name);
            b.add_vertex(v.id, names);
        }
        bool forced = false;
        for (std::size_t e = 0; e < g.edges().size(); ++e) {
            const gog::Edge& edge = g.edge(e);
            FreeWord plus = edge.plus;
            if (!forced && !edge.is_loop() && g.vertex(edge.to).rank() == 1) {
                plus = FreeWord::generator(g.vertex(edge.to).generators.front()).pow(uniform(rng, 0, 1) ? 1 : -1);
                forced = true;
            }
            b.add_edge(edge.id, edge.from, edge.to, edge.minus, plus);
        }
        if (!forced) continue;
        GraphOfGroups out = std::move(b).build();
        if (!out.is_reduced()) return out;
    }
}

}  // namespace randomgraph

#pragma once

// Generate-and-filter path enumeration: every sequence of oriented edges of
// length <= edge count is produced blindly, then filtered. Used to check the
// pruned searches in the path finder.

#include <algorithm>
#include <set>
#include <vector>

#include "gog/freewords.hpp"
#include "gog/goggraph.hpp"

namespace naive {

using gog::GraphOfGroups;
using gog::OrientedEdge;
using Path = std::vector<OrientedEdge>;

inline std::vector<Path> all_sequences(const GraphOfGroups& g) {
    std::vector<OrientedEdge> pool;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        pool.push_back({e, false});
        pool.push_back({e, true});
    }
    std::vector<Path> out;
    std::vector<Path> layer{{}};
    for (std::size_t len = 1; len <= g.edges().size(); ++len) {
        std::vector<Path> next;
        for (const Path& p : layer) {
            for (OrientedEdge oe : pool) {
                Path q = p;
                q.push_back(oe);
                next.push_back(q);
            }
        }
        layer = std::move(next);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

inline bool edge_once_and_connected(const GraphOfGroups& g, const Path& p) {
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!seen.insert(p[i].edge).second) return false;
        if (i > 0 && g.terminus(p[i - 1]) != g.origin(p[i])) return false;
    }
    return true;
}

inline bool meet(const GraphOfGroups& g, OrientedEdge in, OrientedEdge out) {
    return gog::cyclic_meet(g.terminus_word(in), g.origin_word(out)).has_value();
}

inline Path reverse(const Path& p) {
    Path out;
    for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(it->reverse());
    return out;
}

inline Path cyclic_class_key(const Path& p) {
    std::vector<Path> all;
    for (const Path& q : {p, reverse(p)}) {
        for (std::size_t r = 0; r < q.size(); ++r) {
            Path rot;
            for (std::size_t i = 0; i < q.size(); ++i) rot.push_back(q[(i + r) % q.size()]);
            all.push_back(rot);
        }
    }
    return *std::min_element(all.begin(), all.end());
}

/// Closed edge-once paths whose cyclic transitions all meet, one key per
/// rotation/reversal class.
inline std::set<Path> complete_paths(const GraphOfGroups& g) {
    std::set<Path> out;
    for (const Path& p : all_sequences(g)) {
        if (!edge_once_and_connected(g, p)) continue;
        if (g.terminus(p.back()) != g.origin(p.front())) continue;
        bool ok = true;
        for (std::size_t i = 0; i < p.size() && ok; ++i) ok = meet(g, p[i], p[(i + 1) % p.size()]);
        if (ok) out.insert(cyclic_class_key(p));
    }
    return out;
}

/// Arrows exactly at the origin of the first edge and the terminus of the
/// last, consecutive transitions meeting; one key per reversal class.
inline std::set<Path> full_nonmaximal_paths(const GraphOfGroups& g) {
    std::set<Path> out;
    for (const Path& p : all_sequences(g)) {
        if (!edge_once_and_connected(g, p)) continue;
        bool ok = g.origin_label(p.front()).arrow && g.terminus_label(p.back()).arrow;
        for (std::size_t i = 0; i < p.size() && ok; ++i) {
            if (i > 0 && g.origin_label(p[i]).arrow) ok = false;
            if (i + 1 < p.size() && g.terminus_label(p[i]).arrow) ok = false;
            if (i + 1 < p.size() && !meet(g, p[i], p[i + 1])) ok = false;
        }
        if (ok) out.insert(std::min(p, reverse(p)));
    }
    return out;
}

}  // namespace naive

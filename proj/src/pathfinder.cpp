#include "gog/pathfinder.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "gog/error.hpp"

namespace gog {

std::string format_ratio(const Ratio& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Transition make_transition(VertexIndex v, const FreeWord& from, const FreeWord& to, const CyclicMeet& meet) {
    return {v, from, to, meet, Ratio(meet.sign * meet.exp_u, meet.exp_v)};
}

std::vector<VertexIndex> ConjugacyPath::vertices(const GraphOfGroups& g) const {
    std::vector<VertexIndex> out{g.origin(edges.front())};
    for (const OrientedEdge& e : edges) out.push_back(g.terminus(e));
    return out;
}

Ratio ConjugacyPath::ratio() const {
    Ratio r = enter.ratio;
    for (const Transition& t : transitions) r *= t.ratio;
    return r * leave.ratio;
}

namespace {

PresentationWord crossing(const GraphOfGroups& g, OrientedEdge e) {
    if (g.in_tree(e.edge)) return {};
    return PresentationWord::stable(e.edge, e.reversed);
}

std::optional<Transition> try_transition(VertexIndex v, const FreeWord& from, const FreeWord& to) {
    auto meet = cyclic_meet(from, to);
    if (!meet) return std::nullopt;
    return make_transition(v, from, to, *meet);
}

std::vector<OrientedEdge> reversed(const std::vector<OrientedEdge>& p) {
    std::vector<OrientedEdge> out;
    for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(it->reverse());
    return out;
}

std::vector<OrientedEdge> least_rotation_or_reversal(const std::vector<OrientedEdge>& p) {
    std::vector<OrientedEdge> best = p;
    for (const auto& q : {p, reversed(p)}) {
        for (std::size_t r = 0; r < q.size(); ++r) {
            std::vector<OrientedEdge> rot(q.begin() + static_cast<long>(r), q.end());
            rot.insert(rot.end(), q.begin(), q.begin() + static_cast<long>(r));
            best = std::min(best, rot);
        }
    }
    return best;
}

// Depth-first over edge-once paths starting with `first`. `visit` sees every
// path and returns whether to extend it; `allow` filters each extension.
void walk(const GraphOfGroups& g, OrientedEdge first,
          const std::function<bool(const std::vector<OrientedEdge>&, OrientedEdge)>& allow,
          const std::function<bool(const std::vector<OrientedEdge>&)>& visit) {
    std::vector<OrientedEdge> path{first};
    std::vector<bool> used(g.edges().size(), false);
    used[first.edge] = true;
    std::function<void()> rec = [&] {
        if (!visit(path)) return;
        for (OrientedEdge next : g.outgoing(g.terminus(path.back()))) {
            if (used[next.edge] || !allow(path, next)) continue;
            used[next.edge] = true;
            path.push_back(next);
            rec();
            path.pop_back();
            used[next.edge] = false;
        }
    };
    rec();
}

std::vector<OrientedEdge> all_oriented_edges(const GraphOfGroups& g) {
    std::vector<OrientedEdge> out;
    for (EdgeIndex e = 0; e < g.edges().size(); ++e) {
        out.push_back({e, false});
        out.push_back({e, true});
    }
    return out;
}

bool meets(const GraphOfGroups& g, OrientedEdge in, OrientedEdge out) {
    return cyclic_meet(g.terminus_word(in), g.origin_word(out)).has_value();
}

}  // namespace

PathWitness assemble_witness(const GraphOfGroups& g, const std::vector<OrientedEdge>& edges,
                             const std::vector<const Transition*>& steps) {
    if (steps.size() != edges.size() + 1) throw PreconditionError("witness needs one more transition than edges");
    long s = 1;
    Ratio running(1);
    for (const Transition* t : steps) {
        running *= t->ratio;
        s = std::lcm(s, running.denominator());
    }
    PathWitness w;
    w.m = s;
    w.n = (Ratio(s) * running).numerator();
    for (std::size_t k = 0; k < steps.size(); ++k) {
        w.conjugator = PresentationWord::from_word(steps[k]->meet.word_conjugator()) * w.conjugator;
        if (k < edges.size()) w.conjugator = crossing(g, edges[k]) * w.conjugator;
    }
    return w;
}

PathWitness assemble_witness(const GraphOfGroups& g, const ConjugacyPath& p) {
    std::vector<const Transition*> steps{&p.enter};
    for (const Transition& t : p.transitions) steps.push_back(&t);
    steps.push_back(&p.leave);
    return assemble_witness(g, p.edges, steps);
}

std::optional<ConjugacyPath> check_conjugacy_path(const GraphOfGroups& g, const VertexElement& start,
                                                  const VertexElement& end, const std::vector<OrientedEdge>& edges) {
    if (edges.empty()) throw PreconditionError("a conjugacy path needs at least one edge");
    for (const OrientedEdge& e : edges) {
        if (e.edge >= g.edges().size()) throw PreconditionError("edge index out of range");
    }
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (g.terminus(edges[i - 1]) != g.origin(edges[i])) throw PreconditionError("edge path is not connected");
    }
    if (g.origin(edges.front()) != start.vertex) throw PreconditionError("start element is not at the path's origin");
    if (g.terminus(edges.back()) != end.vertex) throw PreconditionError("end element is not at the path's terminus");
    for (const VertexElement* x : {&start, &end}) {
        if (x->word.is_identity()) throw DegenerateInputError("conjugacy path endpoints must be nontrivial");
        if (vertex_of(x->word, g.generators()) != x->vertex) {
            throw AlphabetError("endpoint word is not in its vertex alphabet");
        }
    }

    auto enter = try_transition(start.vertex, start.word, g.origin_word(edges.front()));
    if (!enter) return std::nullopt;
    ConjugacyPath p{edges, start, end, *enter, {}, {}};
    for (std::size_t i = 1; i < edges.size(); ++i) {
        auto t = try_transition(g.origin(edges[i]), g.terminus_word(edges[i - 1]), g.origin_word(edges[i]));
        if (!t) return std::nullopt;
        p.transitions.push_back(std::move(*t));
    }
    auto leave = try_transition(end.vertex, g.terminus_word(edges.back()), end.word);
    if (!leave) return std::nullopt;
    p.leave = std::move(*leave);
    return p;
}

// ---------------------------------------------------------------------------

CompletePathList enumerate_complete_paths(const GraphOfGroups& g, EnumerationOptions options) {
    CompletePathList out;
    if (g.edges().size() > options.max_edges_warn) {
        out.warning = "closed-path enumeration over " + std::to_string(g.edges().size()) +
                      " edges; the search grows factorially with the edge count";
    }
    std::set<std::vector<OrientedEdge>> seen;
    for (OrientedEdge first : all_oriented_edges(g)) {
        walk(
            g, first, [&](const auto& path, OrientedEdge next) { return meets(g, path.back(), next); },
            [&](const std::vector<OrientedEdge>& path) {
                const OrientedEdge last = path.back();
                if (g.terminus(last) == g.origin(first) && meets(g, last, first) &&
                    least_rotation_or_reversal(path) == path && seen.insert(path).second) {
                    const VertexIndex base = g.origin(first);
                    auto p = check_conjugacy_path(g, {base, g.origin_word(first)}, {base, g.terminus_word(last)}, path);
                    if (!p) throw InternalInconsistency("closed path lost a transition on re-check");
                    auto closure = try_transition(base, g.terminus_word(last), g.origin_word(first));
                    CompletePath c{std::move(*p), std::move(*closure), Ratio(1), false, 0, 0, {}, {}};
                    std::vector<const Transition*> steps{&c.path.enter};
                    for (const Transition& t : c.path.transitions) steps.push_back(&t);
                    steps.push_back(&c.closure);
                    c.ratio = c.path.enter.ratio;
                    for (const Transition& t : c.path.transitions) c.ratio *= t.ratio;
                    c.ratio *= c.closure.ratio;
                    c.level = boost::abs(c.ratio) == Ratio(1);
                    const PathWitness w = assemble_witness(g, path, steps);
                    c.i = w.m;
                    c.j = w.n;
                    c.witness = w.conjugator;
                    std::vector<VertexIndex> vs = c.path.vertices(g);
                    std::sort(vs.begin(), vs.end());
                    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
                    c.bases = std::move(vs);
                    out.paths.push_back(std::move(c));
                }
                return true;
            });
    }
    std::sort(out.paths.begin(), out.paths.end(),
              [](const CompletePath& a, const CompletePath& b) { return a.path.edges < b.path.edges; });
    return out;
}

// ---------------------------------------------------------------------------

std::vector<NonMaximalPath> enumerate_full_nonmaximal_paths(const GraphOfGroups& g) {
    std::vector<NonMaximalPath> out;
    for (OrientedEdge first : all_oriented_edges(g)) {
        if (!g.origin_label(first).arrow) continue;
        walk(
            g, first,
            [&](const auto& path, OrientedEdge next) {
                return !g.origin_label(next).arrow && meets(g, path.back(), next);
            },
            [&](const std::vector<OrientedEdge>& path) {
                const OrientedEdge last = path.back();
                if (!g.terminus_label(last).arrow) return true;
                if (path <= reversed(path)) {
                    auto p = check_conjugacy_path(g, {g.origin(first), g.origin_word(first)},
                                                  {g.terminus(last), g.terminus_word(last)}, path);
                    if (!p) throw InternalInconsistency("non-maximal path lost a transition on re-check");
                    out.push_back({NonMaximalPath::Kind::full, std::move(*p), g.origin_label(first).root.exponent,
                                   g.terminus_label(last).root.exponent});
                }
                return false;  // an arrow here cannot sit mid-path
            });
    }
    std::sort(out.begin(), out.end(),
              [](const NonMaximalPath& a, const NonMaximalPath& b) { return a.path.edges < b.path.edges; });
    return out;
}

std::optional<HyperbolicityCertificate> certify_hyperbolic(const GraphOfGroups& g) {
    if (!enumerate_complete_paths(g).paths.empty()) return std::nullopt;
    if (!enumerate_full_nonmaximal_paths(g).empty()) return std::nullopt;
    return HyperbolicityCertificate(serialize_graph(g));
}

std::optional<NonMaximalPath> find_semi_nonmaximal_path_to(const GraphOfGroups& g, const VertexElement& target,
                                                           const HyperbolicityCertificate& certificate) {
    if (certificate.fingerprint() != serialize_graph(g)) {
        throw PreconditionError("hyperbolicity was certified for a different graph");
    }
    if (target.word.is_identity()) throw DegenerateInputError("target must be nontrivial");
    std::optional<std::vector<OrientedEdge>> best;
    for (OrientedEdge first : all_oriented_edges(g)) {
        if (!g.origin_label(first).arrow || g.terminus_label(first).arrow) continue;
        walk(
            g, first,
            [&](const auto& path, OrientedEdge next) {
                return !g.origin_label(next).arrow && !g.terminus_label(next).arrow && meets(g, path.back(), next);
            },
            [&](const std::vector<OrientedEdge>& path) {
                const OrientedEdge last = path.back();
                if (g.terminus(last) == target.vertex && cyclic_meet(g.terminus_word(last), target.word)) {
                    if (!best || path.size() < best->size() || (path.size() == best->size() && path < *best)) {
                        best = path;
                    }
                }
                return !best || path.size() < best->size();
            });
    }
    if (!best) return std::nullopt;
    const OrientedEdge first = best->front();
    auto p = check_conjugacy_path(g, {g.origin(first), g.origin_word(first)}, target, *best);
    if (!p) throw InternalInconsistency("semi non-maximal path lost a transition on re-check");
    return NonMaximalPath{NonMaximalPath::Kind::semi, std::move(*p), g.origin_label(first).root.exponent, 0};
}

}  // namespace gog

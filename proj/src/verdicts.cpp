#include "gog/verdicts.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

#include "gog/error.hpp"

namespace gog {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InternalInconsistency("witness failed verification: " + what);
}

bool complete_path_holds(const BassSerreEngine& E, const CompletePath& c) {
    return verify_witness(E, {c.witness, c.base_element(), c.i, c.base_element(), c.j});
}

bool path_holds(const BassSerreEngine& E, const ConjugacyPath& p) {
    const PathWitness w = assemble_witness(E.graph(), p);
    return verify_witness(E, {w.conjugator, p.start, w.m, p.end, w.n});
}

// Incident inclusion words at v, with their edges.
std::vector<std::pair<EdgeIndex, const FreeWord*>> incident_words(const GraphOfGroups& g, VertexIndex v) {
    std::vector<std::pair<EdgeIndex, const FreeWord*>> out;
    for (EdgeIndex e = 0; e < g.edges().size(); ++e) {
        const Edge& edge = g.edge(e);
        if (edge.from == v) out.emplace_back(e, &edge.minus);
        if (edge.to == v) out.emplace_back(e, &edge.plus);
    }
    return out;
}

}  // namespace

BalanceVerdict is_balanced(const GraphOfGroups& g, EnumerationOptions options) {
    BalanceVerdict v;
    for (CompletePath& c : enumerate_complete_paths(g, options).paths) {
        if (c.level) continue;
        const Ratio r = boost::abs(c.ratio);
        v.balanced = false;
        v.bs_subgroup = "BS(" + std::to_string(r.denominator()) + "," + std::to_string(r.numerator()) + ")";
        v.ratio_sign = c.ratio < 0 ? -1 : 1;
        BassSerreEngine E(g);
        require(complete_path_holds(E, c), "non-level complete path");
        v.witness = std::move(c);
        break;
    }
    return v;
}

HyperbolicityVerdict is_word_hyperbolic(const GraphOfGroups& g, EnumerationOptions options) {
    HyperbolicityVerdict v;
    CompletePathList complete = enumerate_complete_paths(g, options);
    v.warning = complete.warning;
    if (!complete.paths.empty()) {
        v.complete_witness = std::move(complete.paths.front());
    } else {
        std::vector<NonMaximalPath> full = enumerate_full_nonmaximal_paths(g);
        if (!full.empty()) v.full_witness = std::move(full.front());
    }
    if (v.complete_witness || v.full_witness) {
        v.hyperbolic = false;
        v.contains_baumslag_solitar = true;
        BassSerreEngine E(g);
        if (v.complete_witness) require(complete_path_holds(E, *v.complete_witness), "complete path");
        if (v.full_witness) require(path_holds(E, v.full_witness->path), "full non-maximal path");
    }
    return v;
}

// In a free group the intersector of a nontrivial element is its maximal
// cyclic subgroup, so I(g_v) = G_v exactly when G_v has rank 1.
AcylindricityVerdict is_acyl_hyperbolic(const GraphOfGroups& g) {
    if (!g.is_reduced()) throw GraphError("acylindrical hyperbolicity test needs a reduced graph");
    AcylindricityVerdict v;
    if (g.is_trivial()) {
        v.status = AcylindricityVerdict::Status::trivial_graph;
        return v;
    }
    v.single_bad_loop = g.vertices().size() == 1 && g.edges().size() == 1 && g.is_bad(0);
    BassSerreEngine E(g);
    for (VertexIndex vi = 0; vi < g.vertices().size(); ++vi) {
        const auto words = incident_words(g, vi);
        const RootDecomposition first = root(*words.front().second);
        const FreeWord base_root = first.root_element();
        long common = 1;
        for (const auto& [e, w] : words) {
            const RootDecomposition r = root(*w);
            const FreeWord re = r.root_element();
            if (re != base_root && re != base_root.inverse()) {
                v.status = AcylindricityVerdict::Status::acylindrically_hyperbolic;
                v.failure = {vi, AcylindricityVerdict::Failure::Condition::edge_groups_meet_trivially,
                             {words.front().first, e}};
                v.s_normal_generators.clear();
                return v;
            }
            common = std::lcm(common, std::labs(r.exponent));
        }
        if (g.vertex(vi).rank() >= 2) {
            v.status = AcylindricityVerdict::Status::acylindrically_hyperbolic;
            v.failure = {vi, AcylindricityVerdict::Failure::Condition::intersector_proper, {}};
            v.s_normal_generators.clear();
            return v;
        }
        const FreeWord gv = base_root.pow(common);
        for (const auto& [e, w] : words) {
            const long k = common / root(*w).exponent * (root(*w).root_element() == base_root ? 1 : -1);
            require(E.equal(E.vertex_element(vi, gv), E.vertex_element(vi, w->pow(k))),
                    "g_v lies in every incident edge group");
        }
        v.s_normal_generators.push_back(gv);
    }
    v.status = AcylindricityVerdict::Status::not_acylindrically_hyperbolic;
    return v;
}

TrichotomyVerdict trichotomy_of_reduced(const GraphOfGroups& g, const AcylindricityVerdict& acyl) {
    TrichotomyVerdict t;
    using S = AcylindricityVerdict::Status;
    using B = TrichotomyVerdict::Branch;
    if (acyl.status == S::trivial_graph) {
        t.branch = B::trivial_graph;
        return t;
    }
    if (acyl.status == S::acylindrically_hyperbolic) {
        t.branch = B::acylindrically_hyperbolic;
        return t;
    }
    if (!g.is_tree()) {
        t.branch = B::surjects_z;
        return t;
    }
    t.branch = B::cyclic_normal_subgroup;

    // Every vertex has rank 1 here. Carry one element across the tree,
    // g = x_v^p[v] with x_v the generator at v, raising it until it is a
    // power of every g_v.
    const std::size_t nv = g.vertices().size();
    auto generator_exponent = [&](const FreeWord& w) {
        const RootDecomposition r = root(w);
        return r.primitive == FreeWord::generator(r.primitive[0].generator()) ? r.exponent : -r.exponent;
    };
    std::vector<long> L(nv, 1);
    for (VertexIndex v = 0; v < nv; ++v) {
        for (const auto& [e, w] : incident_words(g, v)) L[v] = std::lcm(L[v], std::labs(generator_exponent(*w)));
    }
    std::vector<long> p(nv, 0);
    std::vector<bool> seen(nv, false);
    p[0] = L[0];
    seen[0] = true;
    std::vector<VertexIndex> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const VertexIndex v = queue[qi];
        for (OrientedEdge oe : g.outgoing(v)) {
            const VertexIndex w = g.terminus(oe);
            if (seen[w]) continue;
            const long k = generator_exponent(g.origin_word(oe));
            const long l = generator_exponent(g.terminus_word(oe));
            const long q = l * (p[v] / k);
            const long f = std::lcm(std::labs(q), L[w]) / std::labs(q);
            for (VertexIndex u = 0; u < nv; ++u) p[u] *= f;
            p[w] = q * f;
            seen[w] = true;
            queue.push_back(w);
        }
    }

    BassSerreEngine E(g);
    auto gen = [&](VertexIndex v) { return FreeWord::generator(g.vertex(v).generators.front()); };
    const GroupElement el = E.vertex_element(0, gen(0).pow(p[0]));
    for (VertexIndex v = 0; v < nv; ++v) {
        require(E.equal(el, E.vertex_element(v, gen(v).pow(p[v]))), "common power across the tree");
    }
    long P = 1;
    for (GeneratorIndex gi = 0; gi < g.generators().size(); ++gi) {
        const GroupElement x = E.vertex_element(g.generators()[gi].vertex, FreeWord::generator(gi));
        long k = 1;
        for (; k <= 64; ++k) {
            const GroupElement gk = E.pow(el, k);
            const GroupElement c = E.multiply(E.multiply(x, gk), x.inverse());
            if (E.equal(c, gk) || E.equal(c, gk.inverse())) break;
        }
        require(k <= 64, "normality under every generator");
        P = std::lcm(P, k);
    }
    t.normal_generator = VertexElement{0, gen(0).pow(p[0])};
    t.power = P;
    return t;
}

TrichotomyVerdict trichotomy(const GraphOfGroups& g) {
    const ReductionResult r = reduce_graph(g);
    return trichotomy_of_reduced(r.graph, is_acyl_hyperbolic(r.graph));
}

bool rel_hyp_obstruction(const GraphOfGroups& g) { return !g.is_trivial() && g.all_rank_one(); }

std::vector<ModulusEntry> modulus(const CompletePathList& paths) {
    std::vector<ModulusEntry> out;
    for (const CompletePath& c : paths.paths) {
        ModulusEntry m{c.base_element(), boost::abs(c.ratio)};
        const bool dup = std::any_of(out.begin(), out.end(), [&](const ModulusEntry& o) {
            return o.base.vertex == m.base.vertex && o.base.word == m.base.word && o.ratio == m.ratio;
        });
        if (!dup) out.push_back(std::move(m));
    }
    return out;
}

// ---------------------------------------------------------------------------

ConjugacyAnswer power_conjugate(const BassSerreEngine& E, const VertexElement& x, const VertexElement& y) {
    const GraphOfGroups& g = E.graph();
    for (const VertexElement* z : {&x, &y}) {
        if (z->word.is_identity()) throw DegenerateInputError("power conjugacy needs nontrivial elements");
        if (z->vertex >= g.vertices().size() || vertex_of(z->word, g.generators()) != z->vertex) {
            throw AlphabetError("element is not in the named vertex group");
        }
    }

    ConjugacyAnswer best;
    auto key = [](const ConjugacyAnswer& a) {
        return std::make_tuple(std::labs(a.m), std::labs(a.n), a.path->edges.size(), a.path->edges);
    };

    auto consider = [&](ConjugacyPath p) {
        PathWitness w = assemble_witness(g, p);
        require(verify_witness(E, {w.conjugator, x, w.m, y, w.n}), "conjugacy path");
        const long d = std::gcd(w.m, w.n);
        if (d > 1 && verify_witness(E, {w.conjugator, x, w.m / d, y, w.n / d})) {
            w.m /= d;
            w.n /= d;
        }
        ConjugacyAnswer a{true, w.m, w.n, std::move(w.conjugator), ConjugacyAnswer::Route::path, std::move(p), {}};
        if (!best.exists || key(a) < key(best)) best = std::move(a);
    };

    std::vector<OrientedEdge> path;
    std::vector<bool> used(g.edges().size(), false);
    std::function<void()> extend = [&] {
        const OrientedEdge last = path.back();
        if (g.terminus(last) == y.vertex && cyclic_meet(g.terminus_word(last), y.word)) {
            auto p = check_conjugacy_path(g, x, y, path);
            if (!p) throw InternalInconsistency("conjugacy path lost a transition on re-check");
            consider(std::move(*p));
        }
        for (OrientedEdge next : g.outgoing(g.terminus(last))) {
            if (used[next.edge] || !cyclic_meet(g.terminus_word(last), g.origin_word(next))) continue;
            used[next.edge] = true;
            path.push_back(next);
            extend();
            path.pop_back();
            used[next.edge] = false;
        }
    };
    for (OrientedEdge first : g.outgoing(x.vertex)) {
        if (!cyclic_meet(x.word, g.origin_word(first))) continue;
        used[first.edge] = true;
        path.push_back(first);
        extend();
        path.pop_back();
        used[first.edge] = false;
    }
    if (best.exists) return best;

    if (x.vertex == y.vertex) {
        if (auto meet = cyclic_meet(x.word, y.word)) {
            const auto [m, n] = meet->minimal_exponents();
            ConjugacyAnswer a{true, m, n, PresentationWord::from_word(meet->word_conjugator()),
                              ConjugacyAnswer::Route::same_vertex, std::nullopt, *meet};
            require(verify_witness(E, {a.conjugator, x, a.m, y, a.n}), "meet in one vertex group");
            return a;
        }
    }
    return {};
}

// ---------------------------------------------------------------------------

AnalysisReport analyze(const GraphOfGroups& g, EnumerationOptions options) {
    AnalysisReport r{reduce_graph(g), {}, {}, {}, {}, false, {}, {}};
    const GraphOfGroups& red = r.reduction.graph;
    const CompletePathList complete = enumerate_complete_paths(red, options);
    r.warning = complete.warning;
    r.balance = is_balanced(red, options);
    r.hyperbolicity = is_word_hyperbolic(red, options);
    r.acylindricity = is_acyl_hyperbolic(red);
    r.trichotomy = trichotomy_of_reduced(red, r.acylindricity);
    r.rel_hyp_obstruction = rel_hyp_obstruction(red);
    r.modulus = modulus(complete);

    if (!r.balance.balanced && r.hyperbolicity.hyperbolic) {
        throw InternalInconsistency("an unbalanced group was reported hyperbolic");
    }
    if (r.hyperbolicity.hyperbolic &&
        r.acylindricity.status == AcylindricityVerdict::Status::not_acylindrically_hyperbolic) {
        throw InternalInconsistency("a hyperbolic group was reported not acylindrically hyperbolic");
    }
    return r;
}

std::string to_string(AcylindricityVerdict::Status s) {
    switch (s) {
        case AcylindricityVerdict::Status::acylindrically_hyperbolic: return "acylindrically_hyperbolic";
        case AcylindricityVerdict::Status::not_acylindrically_hyperbolic: return "not_acylindrically_hyperbolic";
        case AcylindricityVerdict::Status::trivial_graph: return "trivial_graph";
    }
    return {};
}

std::string to_string(TrichotomyVerdict::Branch b) {
    switch (b) {
        case TrichotomyVerdict::Branch::acylindrically_hyperbolic: return "acylindrically_hyperbolic";
        case TrichotomyVerdict::Branch::surjects_z: return "surjects_Z";
        case TrichotomyVerdict::Branch::cyclic_normal_subgroup: return "cyclic_normal_subgroup";
        case TrichotomyVerdict::Branch::trivial_graph: return "trivial_graph";
    }
    return {};
}

std::string to_string(ConjugacyAnswer::Route r) {
    switch (r) {
        case ConjugacyAnswer::Route::none: return "none";
        case ConjugacyAnswer::Route::same_vertex: return "same_vertex";
        case ConjugacyAnswer::Route::path: return "path";
    }
    return {};
}

}  // namespace gog

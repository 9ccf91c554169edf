#include "gog/report.hpp"

#include <sstream>

#include "gog/error.hpp"

namespace gog {

namespace {

std::string edge_name(const GraphOfGroups& g, OrientedEdge oe) { return g.format(oe); }

Json edges_json(const GraphOfGroups& g, const std::vector<OrientedEdge>& edges) {
    Json out = Json::array();
    for (OrientedEdge oe : edges) out.push_back(edge_name(g, oe));
    return out;
}

Json vertices_json(const GraphOfGroups& g, const ConjugacyPath& p) {
    Json out = Json::array();
    for (VertexIndex v : p.vertices(g)) out.push_back(g.vertex(v).id);
    return out;
}

Json contraction_json(const Contraction& c) {
    Json rewrites = Json::array();
    for (const auto& r : c.rewrites) {
        rewrites.push_back(Json{{"edge", r.edge},
                                {"end", r.end == EdgeEnd::minus ? "minus" : "plus"},
                                {"before", r.before},
                                {"after", r.after}});
    }
    return Json{{"edge", c.edge},         {"removed_vertex", c.removed_vertex}, {"survivor", c.survivor},
                {"generator", c.generator}, {"image", c.image},                 {"rewrites", rewrites}};
}

PresentationWord element_power(const VertexElement& x, long k) { return PresentationWord::from_word(x.word.pow(k)); }

struct Relation {
    PresentationWord lhs;
    PresentationWord rhs;
    std::string text;
};

// Rendered with its factors kept apart, e.g. "(t) (a)^2 (t)^-1 = (a)^3".
Relation conjugation(const GraphOfGroups& g, const PresentationWord& w, const VertexElement& x, long m,
                     const VertexElement& y, long n) {
    const std::string ws = "(" + format_presentation(w, g) + ")";
    return {w * element_power(x, m) * w.inverse(), element_power(y, n),
            ws + " (" + g.format(x.word) + ")^" + std::to_string(m) + " " + ws + "^-1 = (" + g.format(y.word) + ")^" +
                std::to_string(n)};
}

bool relation_holds(const BassSerreEngine& E, const Relation& r) {
    return E.equal(E.evaluate(r.lhs), E.evaluate(r.rhs));
}

WitnessCheck check(const BassSerreEngine& E, const Relation& r) { return {r.text, relation_holds(E, r)}; }

Json hit_json(const GraphOfGroups& g, const OracleHit& h) {
    return Json{{"conjugator", format_presentation(h.conjugator, g)}, {"m", h.m}, {"n", h.n}};
}

}  // namespace

Json element_json(const GraphOfGroups& g, const VertexElement& x) {
    return Json{{"vertex", g.vertex(x.vertex).id}, {"word", g.format(x.word)}};
}

Json transition_json(const GraphOfGroups& g, const Transition& t) {
    return Json{{"vertex", g.vertex(t.vertex).id},
                {"from", g.format(t.from)},
                {"to", g.format(t.to)},
                {"conjugator", g.format(t.meet.word_conjugator())},
                {"sign", t.meet.sign},
                {"exp_from", t.meet.exp_u},
                {"exp_to", t.meet.exp_v},
                {"ratio", format_ratio(t.ratio)}};
}

Json conjugacy_path_json(const GraphOfGroups& g, const ConjugacyPath& p) {
    Json certs = Json::array();
    certs.push_back(transition_json(g, p.enter));
    for (const Transition& t : p.transitions) certs.push_back(transition_json(g, t));
    certs.push_back(transition_json(g, p.leave));
    const PathWitness w = assemble_witness(g, p);
    return Json{{"edges", edges_json(g, p.edges)},
                {"vertices", vertices_json(g, p)},
                {"start", element_json(g, p.start)},
                {"end", element_json(g, p.end)},
                {"certificates", certs},
                {"ratio", format_ratio(p.ratio())},
                {"witness", {{"m", w.m}, {"n", w.n}, {"conjugator", format_presentation(w.conjugator, g)}}}};
}

Json complete_path_json(const GraphOfGroups& g, const CompletePath& c) {
    Json certs = Json::array();
    certs.push_back(transition_json(g, c.path.enter));
    for (const Transition& t : c.path.transitions) certs.push_back(transition_json(g, t));
    certs.push_back(transition_json(g, c.closure));
    Json bases = Json::array();
    for (VertexIndex v : c.bases) bases.push_back(g.vertex(v).id);
    return Json{{"edges", edges_json(g, c.path.edges)},
                {"vertices", vertices_json(g, c.path)},
                {"base", element_json(g, c.base_element())},
                {"certificates", certs},
                {"ratio", format_ratio(c.ratio)},
                {"level", c.level},
                {"i", c.i},
                {"j", c.j},
                {"witness", format_presentation(c.witness, g)},
                {"bases", bases}};
}

Json nonmaximal_path_json(const GraphOfGroups& g, const NonMaximalPath& p) {
    Json doc = conjugacy_path_json(g, p.path);
    Json arrows = Json::object();
    arrows["initial"] = Json{{"vertex", g.vertex(g.origin(p.path.edges.front())).id}, {"root_exponent", p.initial_arrow}};
    if (p.kind == NonMaximalPath::Kind::full) {
        arrows["final"] = Json{{"vertex", g.vertex(g.terminus(p.path.edges.back())).id}, {"root_exponent", p.final_arrow}};
    }
    Json out{{"kind", p.kind == NonMaximalPath::Kind::full ? "full" : "semi"}};
    for (auto& [k, v] : doc.items()) out[k] = v;
    out["arrows"] = arrows;
    return out;
}

Json analysis_json(const AnalysisReport& r) {
    const GraphOfGroups& g = r.reduction.graph;
    Json a;
    a["balanced"] = r.balance.balanced;
    a["bs_subgroup"] = r.balance.bs_subgroup ? Json(*r.balance.bs_subgroup) : Json(nullptr);
    a["ratio_sign"] = r.balance.witness ? Json(r.balance.ratio_sign) : Json(nullptr);
    a["balance_witness"] = r.balance.witness ? complete_path_json(g, *r.balance.witness) : Json(nullptr);

    a["word_hyperbolic"] = r.hyperbolicity.hyperbolic;
    a["contains_baumslag_solitar"] = r.hyperbolicity.contains_baumslag_solitar;
    if (r.hyperbolicity.complete_witness) {
        a["hyperbolicity_witness"] = Json{{"kind", "complete"}, {"path", complete_path_json(g, *r.hyperbolicity.complete_witness)}};
    } else if (r.hyperbolicity.full_witness) {
        a["hyperbolicity_witness"] =
            Json{{"kind", "full_nonmaximal"}, {"path", nonmaximal_path_json(g, *r.hyperbolicity.full_witness)}};
    } else {
        a["hyperbolicity_witness"] = nullptr;
    }

    using S = AcylindricityVerdict::Status;
    const AcylindricityVerdict& acyl = r.acylindricity;
    a["acyl_hyperbolic"] = acyl.status == S::trivial_graph ? Json(nullptr) : Json(acyl.status == S::acylindrically_hyperbolic);
    Json ac{{"status", to_string(acyl.status)}};
    if (acyl.failure) {
        Json edges = Json::array();
        for (EdgeIndex e : acyl.failure->edges) edges.push_back(g.edge(e).id);
        ac["failure"] = Json{{"vertex", g.vertex(acyl.failure->vertex).id},
                             {"condition", acyl.failure->condition ==
                                                   AcylindricityVerdict::Failure::Condition::edge_groups_meet_trivially
                                               ? "edge_groups_meet_trivially"
                                               : "intersector_proper"},
                             {"edges", edges}};
    } else {
        ac["failure"] = nullptr;
    }
    Json gens = Json::array();
    for (VertexIndex v = 0; v < acyl.s_normal_generators.size(); ++v) {
        gens.push_back(element_json(g, {v, acyl.s_normal_generators[v]}));
    }
    ac["s_normal_generators"] = gens;
    ac["single_bad_loop"] = acyl.single_bad_loop;
    a["acylindricity"] = ac;

    a["trichotomy"] = to_string(r.trichotomy.branch);
    if (r.trichotomy.normal_generator) {
        a["trichotomy_witness"] = Json{{"element", element_json(g, *r.trichotomy.normal_generator)},
                                       {"power", r.trichotomy.power}};
    } else {
        a["trichotomy_witness"] = nullptr;
    }
    a["rel_hyp_obstruction"] = r.rel_hyp_obstruction;
    Json mod = Json::array();
    for (const ModulusEntry& m : r.modulus) mod.push_back(Json{{"base", element_json(g, m.base)}, {"ratio", format_ratio(m.ratio)}});
    a["modulus"] = mod;

    Json notes = Json::array();
    if (g.is_trivial()) {
        notes.push_back("the graph reduces to a single vertex, so G is free of rank " +
                        std::to_string(g.vertex(0).rank()) + "; no acylindricity verdict is drawn from the edge criterion");
    }
    if (r.trichotomy.branch == TrichotomyVerdict::Branch::surjects_z ||
        r.trichotomy.branch == TrichotomyVerdict::Branch::cyclic_normal_subgroup) {
        notes.push_back("G is not simple");
    }
    if (r.warning) notes.push_back(*r.warning);
    a["notes"] = notes;
    return a;
}

std::vector<WitnessCheck> recheck_witnesses(const AnalysisReport& r) {
    const GraphOfGroups& g = r.reduction.graph;
    BassSerreEngine E(g);
    std::vector<WitnessCheck> out;
    auto complete = [&](const CompletePath& c) {
        out.push_back(check(E, conjugation(g, c.witness, c.base_element(), c.i, c.base_element(), c.j)));
    };
    if (r.balance.witness) complete(*r.balance.witness);
    if (r.hyperbolicity.complete_witness) complete(*r.hyperbolicity.complete_witness);
    if (r.hyperbolicity.full_witness) {
        const ConjugacyPath& p = r.hyperbolicity.full_witness->path;
        const PathWitness w = assemble_witness(g, p);
        out.push_back(check(E, conjugation(g, w.conjugator, p.start, w.m, p.end, w.n)));
    }
    for (VertexIndex v = 0; v < r.acylindricity.s_normal_generators.size(); ++v) {
        const FreeWord& gv = r.acylindricity.s_normal_generators[v];
        for (EdgeIndex e = 0; e < g.edges().size(); ++e) {
            for (EdgeEnd end : {EdgeEnd::minus, EdgeEnd::plus}) {
                const Edge& edge = g.edge(e);
                if ((end == EdgeEnd::minus ? edge.from : edge.to) != v) continue;
                const FreeWord& w = end == EdgeEnd::minus ? edge.minus : edge.plus;
                const RootDecomposition rw = root(w);
                const long k = (std::labs(root(gv).exponent) / std::labs(rw.exponent)) *
                               ((root(gv).exponent > 0) == (rw.exponent > 0) ? 1 : -1);
                out.push_back(check(E, conjugation(g, {}, {v, gv}, 1, {v, w}, k)));
            }
        }
    }
    if (r.trichotomy.normal_generator) {
        const VertexElement& x = *r.trichotomy.normal_generator;
        const long P = r.trichotomy.power;
        for (GeneratorIndex gi = 0; gi < g.generators().size(); ++gi) {
            const PresentationWord s = PresentationWord::from_word(FreeWord::generator(gi));
            Relation rel = conjugation(g, s, x, P, x, P);
            if (!relation_holds(E, rel)) rel = conjugation(g, s, x, P, x, -P);
            out.push_back(check(E, rel));
        }
    }
    return out;
}

Json verification_json(const std::vector<WitnessCheck>& checks) {
    Json list = Json::array();
    bool all = true;
    for (const WitnessCheck& c : checks) {
        list.push_back(Json{{"claim", c.claim}, {"holds", c.holds}});
        all = all && c.holds;
    }
    return Json{{"status", all ? "verified" : "failed"}, {"checks", list}};
}

Json document_header(const std::string& command, const std::string& input_digest) {
    return Json{{"schema_version", kSchemaVersion},
                {"tool_version", kToolVersion},
                {"command", command},
                {"input_digest", input_digest}};
}

Json check_document(const GraphOfGroups& g, const std::string& input_digest, EnumerationOptions options) {
    const AnalysisReport r = analyze(g, options);
    const std::vector<WitnessCheck> checks = recheck_witnesses(r);
    for (const WitnessCheck& c : checks) {
        if (!c.holds) throw InternalInconsistency("witness failed re-verification: " + c.claim);
    }
    Json doc = document_header("check", input_digest);
    doc["graph"] = graph_to_json(g);
    Json contractions = Json::array();
    for (const Contraction& c : r.reduction.log) contractions.push_back(contraction_json(c));
    doc["reduction"] = Json{{"contractions", contractions}, {"graph", graph_to_json(r.reduction.graph)}};
    doc["analysis"] = analysis_json(r);
    doc["verification"] = verification_json(checks);
    return doc;
}

Json paths_document(const GraphOfGroups& g, const std::string& input_digest, PathKind kind, EnumerationOptions options) {
    Json doc = document_header("paths", input_digest);
    Json paths = Json::array();
    Json warnings = Json::array();
    if (kind == PathKind::complete) {
        const CompletePathList list = enumerate_complete_paths(g, options);
        for (const CompletePath& c : list.paths) paths.push_back(complete_path_json(g, c));
        if (list.warning) warnings.push_back(*list.warning);
        doc["kind"] = "complete";
    } else {
        for (const NonMaximalPath& p : enumerate_full_nonmaximal_paths(g)) paths.push_back(nonmaximal_path_json(g, p));
        doc["kind"] = "nonmaximal";
    }
    doc["count"] = paths.size();
    doc["paths"] = paths;
    doc["warnings"] = warnings;
    return doc;
}

Json conj_document(const BassSerreEngine& E, const std::string& input_digest, const VertexElement& x,
                   const VertexElement& y, std::optional<OracleBounds> oracle) {
    const GraphOfGroups& g = E.graph();
    const ConjugacyAnswer a = power_conjugate(E, x, y);
    Json doc = document_header("conj", input_digest);
    doc["from"] = element_json(g, x);
    doc["to"] = element_json(g, y);
    Json ans{{"exists", a.exists}};
    std::vector<WitnessCheck> checks;
    if (a.exists) {
        ans["m"] = a.m;
        ans["n"] = a.n;
        ans["conjugator"] = format_presentation(a.conjugator, g);
        ans["route"] = to_string(a.route);
        ans["path"] = a.path ? conjugacy_path_json(g, *a.path) : Json(nullptr);
        checks.push_back(check(E, conjugation(g, a.conjugator, x, a.m, y, a.n)));
        if (!checks.back().holds) throw InternalInconsistency("witness failed re-verification: " + checks.back().claim);
    }
    doc["answer"] = ans;
    doc["verification"] = verification_json(checks);
    if (oracle) {
        const auto hit = brute_force_power_conjugacy(E, x, y, *oracle);
        doc["oracle"] = Json{{"bounds", {{"max_syllables", oracle->max_syllables}, {"max_exponent", oracle->max_exponent}}},
                             {"hit", hit ? hit_json(g, *hit) : Json(nullptr)},
                             {"agrees", a.exists || !hit}};
    }
    return doc;
}

Json oracle_document(const BassSerreEngine& E, const std::string& input_digest, const std::string& relation) {
    const auto eq = relation.find('=');
    if (eq == std::string::npos || relation.find('=', eq + 1) != std::string::npos) {
        throw ParseError(1, 1, "relation must have the form '<word> = <word>'");
    }
    const GraphOfGroups& g = E.graph();
    const PresentationWord lhs = parse_presentation(std::string_view(relation).substr(0, eq), g, 1, 1);
    const PresentationWord rhs = parse_presentation(std::string_view(relation).substr(eq + 1), g, 1, eq + 2);
    const GroupElement l = E.normalize(E.evaluate(lhs));
    const GroupElement r = E.normalize(E.evaluate(rhs));
    Json doc = document_header("oracle", input_digest);
    doc["relation"] = relation;
    doc["lhs_normal_form"] = E.format(l);
    doc["rhs_normal_form"] = E.format(r);
    doc["holds"] = E.equal(l, r);
    return doc;
}

VertexElement parse_vertex_element(const GraphOfGroups& g, std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError(1, 1, "expected '<vertex>:<word>'");
    const auto v = g.find_vertex(text.substr(0, colon));
    if (!v) throw ParseError(1, 1, "unknown vertex '" + std::string(text.substr(0, colon)) + "'");
    FreeWord w;
    try {
        w = parse_word(text.substr(colon + 1), g.generators(), 1, colon + 2);
    } catch (const AlphabetError& e) {
        throw ParseError(1, colon + 2, e.what());
    }
    if (w.is_identity()) throw ParseError(1, colon + 2, "element must be nontrivial");
    if (vertex_of(w, g.generators()) != *v) {
        throw ParseError(1, colon + 2, "word is not in the alphabet of vertex '" + g.vertex(*v).id + "'");
    }
    return {*v, std::move(w)};
}

// ---------------------------------------------------------------------------

namespace {

std::string scalar(const Json& j) {
    if (j.is_null()) return "none";
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

bool all_scalars(const Json& arr) {
    for (const auto& x : arr) {
        if (x.is_structured()) return false;
    }
    return true;
}

void render(std::ostream& os, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            os << pad << key << ":\n";
            render(os, value, indent + 1);
        } else if (value.is_array() && all_scalars(value)) {
            os << pad << key << ": ";
            if (value.empty()) os << "(none)";
            for (std::size_t i = 0; i < value.size(); ++i) os << (i ? ", " : "") << scalar(value[i]);
            os << "\n";
        } else if (value.is_array()) {
            os << pad << key << ": " << value.size() << "\n";
            for (std::size_t i = 0; i < value.size(); ++i) {
                os << pad << "  [" << i + 1 << "]\n";
                render(os, value[i], indent + 2);
            }
        } else {
            os << pad << key << ": " << scalar(value) << "\n";
        }
    }
}

}  // namespace

std::string render_text(const Json& doc) {
    std::ostringstream os;
    render(os, doc, 0);
    return os.str();
}

}  // namespace gog

#include "gog/goggraph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <random>
#include <sstream>

#include "gog/error.hpp"

namespace gog {

std::optional<VertexIndex> GraphOfGroups::find_vertex(std::string_view id) const {
    for (VertexIndex v = 0; v < vertices_.size(); ++v) {
        if (vertices_[v].id == id) return v;
    }
    return std::nullopt;
}

std::optional<EdgeIndex> GraphOfGroups::find_edge(std::string_view id) const {
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
        if (edges_[e].id == id) return e;
    }
    return std::nullopt;
}

const EndLabel& GraphOfGroups::label(EdgeIndex e, EdgeEnd end) const {
    return labels_[2 * e + (end == EdgeEnd::plus ? 1 : 0)];
}

bool GraphOfGroups::is_bad(EdgeIndex e) const {
    return label(e, EdgeEnd::minus).bad || label(e, EdgeEnd::plus).bad;
}

bool GraphOfGroups::is_reducible(EdgeIndex e) const { return is_bad(e) && !edges_[e].is_loop(); }

bool GraphOfGroups::is_reduced() const {
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
        if (is_reducible(e)) return false;
    }
    return true;
}

bool GraphOfGroups::all_rank_one() const {
    return std::all_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.rank() == 1; });
}

std::vector<OrientedEdge> GraphOfGroups::outgoing(VertexIndex v) const {
    std::vector<OrientedEdge> out;
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
        if (edges_[e].from == v) out.push_back({e, false});
        if (edges_[e].to == v) out.push_back({e, true});
    }
    return out;
}

std::string GraphOfGroups::format(OrientedEdge oe) const {
    return oe.reversed ? edges_[oe.edge].id + "^-1" : edges_[oe.edge].id;
}

// ---------------------------------------------------------------------------

VertexIndex GraphBuilder::add_vertex(std::string id, const std::vector<std::string>& generator_names) {
    if (graph_.find_vertex(id)) throw GraphError("duplicate vertex id '" + id + "'");
    if (generator_names.empty()) throw GraphError("vertex '" + id + "' needs at least one generator");
    const VertexIndex v = graph_.vertices_.size();
    Vertex vertex{std::move(id), {}};
    for (const std::string& name : generator_names) {
        if (graph_.find_edge(name)) throw GraphError("generator name '" + name + "' is also an edge id");
        vertex.generators.push_back(graph_.generators_.add(name, v));
    }
    graph_.vertices_.push_back(std::move(vertex));
    return v;
}

EdgeIndex GraphBuilder::add_edge(std::string id, VertexIndex from, VertexIndex to, FreeWord minus, FreeWord plus) {
    if (graph_.find_edge(id)) throw GraphError("duplicate edge id '" + id + "'");
    if (graph_.generators_.find(id)) throw GraphError("edge id '" + id + "' is also a generator name");
    if (from >= graph_.vertices_.size() || to >= graph_.vertices_.size()) {
        throw GraphError("edge '" + id + "' references an unknown vertex");
    }
    graph_.edges_.push_back(Edge{std::move(id), from, to, std::move(minus), std::move(plus)});
    return graph_.edges_.size() - 1;
}

GraphOfGroups GraphBuilder::build() && {
    GraphOfGroups& g = graph_;
    if (g.vertices_.empty()) throw GraphError("graph has no vertices");

    for (const Edge& e : g.edges_) {
        for (auto [word, vertex, side] : {std::tuple{&e.minus, e.from, "minus"}, std::tuple{&e.plus, e.to, "plus"}}) {
            if (word->is_identity()) {
                throw GraphError("edge '" + e.id + "' has an identity " + side +
                                 " inclusion word; edge groups must be infinite cyclic");
            }
            if (vertex_of(*word, g.generators_) != vertex) {
                throw GraphError("edge '" + e.id + "': " + side + " word is not in the alphabet of vertex '" +
                                 g.vertices_[vertex].id + "'");
            }
        }
    }

    g.labels_.clear();
    for (const Edge& e : g.edges_) {
        for (auto [word, vertex] : {std::pair{&e.minus, e.from}, std::pair{&e.plus, e.to}}) {
            EndLabel label;
            label.root = root(*word);
            label.bad = g.vertices_[vertex].rank() == 1 && word->size() == 1;
            label.arrow = !label.root.is_maximal();
            g.labels_.push_back(std::move(label));
        }
    }

    // Breadth-first spanning tree; doubles as the connectivity check.
    g.tree_.clear();
    g.in_tree_.assign(g.edges_.size(), false);
    std::vector<bool> seen(g.vertices_.size(), false);
    std::deque<VertexIndex> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        const VertexIndex v = queue.front();
        queue.pop_front();
        for (EdgeIndex e = 0; e < g.edges_.size(); ++e) {
            const Edge& edge = g.edges_[e];
            if (edge.from != v && edge.to != v) continue;
            const VertexIndex other = edge.from == v ? edge.to : edge.from;
            if (seen[other]) continue;
            seen[other] = true;
            g.tree_.push_back(e);
            g.in_tree_[e] = true;
            queue.push_back(other);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw GraphError("graph is disconnected");
    return std::move(graph_);
}

std::vector<EdgeIndex> maximal_tree(const GraphOfGroups& g) { return g.maximal_tree(); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Token> split_line(std::string_view line, std::size_t line_no) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        const std::size_t start = i;
        bool quoted = false;
        while (i < line.size() && (quoted || !std::isspace(static_cast<unsigned char>(line[i])))) {
            if (line[i] == '"') quoted = !quoted;
            if (!quoted && line[i] == '#') break;
            ++i;
        }
        if (quoted) throw ParseError(line_no, start + 1, "unterminated string");
        tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return tokens;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
    });
}

struct Attribute {
    std::string value;
    std::size_t value_column;
};

std::map<std::string, Attribute> parse_attributes(const std::vector<Token>& tokens, std::size_t first,
                                                  std::size_t line_no) {
    std::map<std::string, Attribute> attrs;
    for (std::size_t i = first; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        const auto eq = t.text.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError(line_no, t.column, "expected key=value");
        std::string key = t.text.substr(0, eq);
        std::string value = t.text.substr(eq + 1);
        std::size_t value_column = t.column + eq + 1;
        if (!value.empty() && value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') throw ParseError(line_no, value_column, "malformed string");
            value = value.substr(1, value.size() - 2);
            ++value_column;
        }
        if (attrs.contains(key)) throw ParseError(line_no, t.column, "duplicate attribute '" + key + "'");
        attrs.emplace(std::move(key), Attribute{std::move(value), value_column});
    }
    return attrs;
}

const Attribute& require(const std::map<std::string, Attribute>& attrs, const std::string& key, std::size_t line_no,
                         std::size_t column) {
    auto it = attrs.find(key);
    if (it == attrs.end()) throw ParseError(line_no, column, "missing attribute '" + key + "'");
    return it->second;
}

FreeWord parse_inclusion_word(const GraphBuilder& builder, const Attribute& attr, VertexIndex vertex,
                              std::size_t line_no) {
    FreeWord w;
    try {
        w = parse_word(attr.value, builder.generators(), line_no, attr.value_column);
    } catch (const AlphabetError& e) {
        throw ParseError(line_no, attr.value_column, e.what());
    }
    if (w.is_identity()) {
        throw ParseError(line_no, attr.value_column, "identity inclusion word; edge groups must be infinite cyclic");
    }
    if (vertex_of(w, builder.generators()) != vertex) {
        throw ParseError(line_no, attr.value_column, "word is not in the alphabet of the edge's endpoint vertex");
    }
    return w;
}

}  // namespace

GraphOfGroups parse_graph(std::string_view text) {
    GraphBuilder builder;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::vector<Token> tokens = split_line(line, line_no);
        if (tokens.empty()) continue;
        const std::string& keyword = tokens[0].text;

        if (keyword == "vertex") {
            if (tokens.size() < 2 || !is_identifier(tokens[1].text)) {
                throw ParseError(line_no, tokens.size() < 2 ? line.size() + 1 : tokens[1].column,
                                 "expected a vertex id");
            }
            const auto attrs = parse_attributes(tokens, 2, line_no);
            const Attribute& gens = require(attrs, "gens", line_no, line.size() + 1);
            const Attribute& rank = require(attrs, "rank", line_no, line.size() + 1);
            for (const auto& [key, attr] : attrs) {
                if (key != "gens" && key != "rank") {
                    throw ParseError(line_no, attr.value_column, "unknown vertex attribute '" + key + "'");
                }
            }
            std::vector<std::string> names;
            std::size_t start = 0;
            while (start <= gens.value.size()) {
                const std::size_t comma = gens.value.find(',', start);
                std::string name = gens.value.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                if (!is_identifier(name)) {
                    throw ParseError(line_no, gens.value_column + start, "invalid generator name '" + name + "'");
                }
                if (builder.generators().find(name)) {
                    throw ParseError(line_no, gens.value_column + start, "duplicate generator name '" + name + "'");
                }
                names.push_back(std::move(name));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            std::size_t declared = 0;
            try {
                std::size_t used = 0;
                declared = std::stoul(rank.value, &used);
                if (used != rank.value.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ParseError(line_no, rank.value_column, "rank must be a positive integer");
            }
            if (declared != names.size()) {
                throw ParseError(line_no, rank.value_column,
                                 "rank " + rank.value + " does not match " + std::to_string(names.size()) +
                                     " generator(s)");
            }
            if (builder.find_vertex(tokens[1].text)) {
                throw ParseError(line_no, tokens[1].column, "duplicate vertex id '" + tokens[1].text + "'");
            }
            try {
                builder.add_vertex(tokens[1].text, names);
            } catch (const GraphError& e) {
                throw ParseError(line_no, gens.value_column, e.what());
            }
        } else if (keyword == "edge") {
            if (tokens.size() < 4) throw ParseError(line_no, line.size() + 1, "expected: edge <id> <from> <to> ...");
            if (!is_identifier(tokens[1].text)) throw ParseError(line_no, tokens[1].column, "expected an edge id");
            auto from = builder.find_vertex(tokens[2].text);
            if (!from) throw ParseError(line_no, tokens[2].column, "unknown vertex '" + tokens[2].text + "'");
            auto to = builder.find_vertex(tokens[3].text);
            if (!to) throw ParseError(line_no, tokens[3].column, "unknown vertex '" + tokens[3].text + "'");
            const auto attrs = parse_attributes(tokens, 4, line_no);
            for (const auto& [key, attr] : attrs) {
                if (key != "minus" && key != "plus") {
                    throw ParseError(line_no, attr.value_column, "unknown edge attribute '" + key + "'");
                }
            }
            FreeWord minus = parse_inclusion_word(builder, require(attrs, "minus", line_no, line.size() + 1), *from,
                                                  line_no);
            FreeWord plus = parse_inclusion_word(builder, require(attrs, "plus", line_no, line.size() + 1), *to,
                                                 line_no);
            try {
                builder.add_edge(tokens[1].text, *from, *to, std::move(minus), std::move(plus));
            } catch (const GraphError& e) {
                throw ParseError(line_no, tokens[1].column, e.what());
            }
        } else {
            throw ParseError(line_no, tokens[0].column, "unknown declaration '" + keyword + "'");
        }
    }
    return std::move(builder).build();
}

namespace {

std::string describe_end(const EndLabel& l) {
    std::string s = l.bad ? "bad" : "good";
    if (l.arrow) s += ", arrow k=" + std::to_string(std::labs(l.root.exponent));
    return s;
}

}  // namespace

std::string serialize_graph(const GraphOfGroups& g) {
    std::ostringstream out;
    out << "# vertices=" << g.vertices().size() << " edges=" << g.edges().size()
        << " reduced=" << (g.is_reduced() ? "yes" : "no") << " tree=" << (g.is_tree() ? "yes" : "no") << '\n';
    for (const Vertex& v : g.vertices()) {
        out << "vertex " << v.id << " rank=" << v.rank() << " gens=";
        for (std::size_t i = 0; i < v.generators.size(); ++i) {
            out << (i ? "," : "") << g.generators()[v.generators[i]].name;
        }
        out << '\n';
    }
    for (EdgeIndex e = 0; e < g.edges().size(); ++e) {
        const Edge& edge = g.edge(e);
        out << "edge " << edge.id << ' ' << g.vertex(edge.from).id << ' ' << g.vertex(edge.to).id << " minus=\""
            << g.format(edge.minus) << "\" plus=\"" << g.format(edge.plus) << "\"  # minus: "
            << describe_end(g.label(e, EdgeEnd::minus)) << "; plus: " << describe_end(g.label(e, EdgeEnd::plus))
            << (g.in_tree(e) ? "; tree" : "; stable") << '\n';
    }
    return out.str();
}

nlohmann::ordered_json graph_to_json(const GraphOfGroups& g) {
    using nlohmann::ordered_json;
    ordered_json vertices = ordered_json::array();
    for (const Vertex& v : g.vertices()) {
        ordered_json gens = ordered_json::array();
        for (GeneratorIndex gi : v.generators) gens.push_back(g.generators()[gi].name);
        vertices.push_back(ordered_json{{"id", v.id}, {"rank", v.rank()}, {"generators", gens}});
    }
    ordered_json edges = ordered_json::array();
    for (EdgeIndex e = 0; e < g.edges().size(); ++e) {
        const Edge& edge = g.edge(e);
        auto end_json = [&](EdgeEnd end) {
            const EndLabel& l = g.label(e, end);
            return ordered_json{{"bad", l.bad}, {"arrow", l.arrow}, {"root_exponent", l.root.exponent}};
        };
        edges.push_back(ordered_json{{"id", edge.id},
                                     {"from", g.vertex(edge.from).id},
                                     {"to", g.vertex(edge.to).id},
                                     {"minus", g.format(edge.minus)},
                                     {"plus", g.format(edge.plus)},
                                     {"labels", {{"minus", end_json(EdgeEnd::minus)}, {"plus", end_json(EdgeEnd::plus)}}},
                                     {"in_tree", g.in_tree(e)}});
    }
    ordered_json tree = ordered_json::array();
    for (EdgeIndex e : g.maximal_tree()) tree.push_back(g.edge(e).id);
    return ordered_json{{"vertices", vertices},      {"edges", edges},
                        {"maximal_tree", tree},      {"is_tree", g.is_tree()},
                        {"reduced", g.is_reduced()}, {"trivial", g.is_trivial()}};
}

// ---------------------------------------------------------------------------
// Reduction

namespace {

struct WorkEdge {
    std::string id;
    VertexIndex from;
    VertexIndex to;
    FreeWord minus;
    FreeWord plus;
    bool alive = true;
};

bool end_is_bad(const GraphOfGroups& g, VertexIndex v, const FreeWord& w) {
    return g.vertex(v).rank() == 1 && w.size() == 1;
}

}  // namespace

ReductionResult reduce_graph(const GraphOfGroups& g, ContractionOrder order) {
    std::vector<bool> vertex_alive(g.vertices().size(), true);
    std::vector<WorkEdge> edges;
    for (const Edge& e : g.edges()) edges.push_back({e.id, e.from, e.to, e.minus, e.plus, true});

    std::optional<std::mt19937_64> rng;
    if (order.seed) rng.emplace(*order.seed);

    std::vector<Contraction> log;
    while (true) {
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const WorkEdge& e = edges[i];
            if (!e.alive || e.from == e.to) continue;
            if (end_is_bad(g, e.from, e.minus) || end_is_bad(g, e.to, e.plus)) {
                candidates.push_back(i);
            }
        }
        if (candidates.empty()) break;
        std::size_t pick = candidates.front();
        if (rng) pick = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(*rng)];

        WorkEdge& e = edges[pick];
        const bool minus_bad = end_is_bad(g, e.from, e.minus);
        const bool plus_bad = end_is_bad(g, e.to, e.plus);
        // With both ends bad, contract into the lower vertex index.
        bool remove_to = plus_bad;
        if (minus_bad && plus_bad) remove_to = e.to > e.from;
        const VertexIndex removed = remove_to ? e.to : e.from;
        const VertexIndex survivor = remove_to ? e.from : e.to;
        const FreeWord& removed_word = remove_to ? e.plus : e.minus;
        const FreeWord survivor_word = remove_to ? e.minus : e.plus;

        // removed_word = x^s with s = +-1, and x^s = survivor_word, so x = survivor_word^s.
        const Letter x = removed_word[0];
        const long s = x.sign();
        Contraction c{e.id,
                      g.vertex(removed).id,
                      g.vertex(survivor).id,
                      g.generators()[x.generator()].name,
                      g.format(survivor_word.pow(s)),
                      {}};
        e.alive = false;
        vertex_alive[removed] = false;

        for (WorkEdge& other : edges) {
            if (!other.alive) continue;
            for (auto [vertex, word, end] : {std::tuple{&other.from, &other.minus, EdgeEnd::minus},
                                             std::tuple{&other.to, &other.plus, EdgeEnd::plus}}) {
                if (*vertex != removed) continue;
                // Every word at a rank-1 vertex is a power of its generator.
                long k = 0;
                for (Letter l : word->letters()) k += l.sign();
                FreeWord rewritten = survivor_word.pow(s * k);
                c.rewrites.push_back({other.id, end, g.format(*word), g.format(rewritten)});
                *word = std::move(rewritten);
                *vertex = survivor;
            }
        }
        log.push_back(std::move(c));
    }

    // Rebuild over the survivors, preserving declaration order and names.
    GraphBuilder builder;
    std::vector<VertexIndex> new_index(g.vertices().size(), 0);
    for (VertexIndex v = 0; v < g.vertices().size(); ++v) {
        if (!vertex_alive[v]) continue;
        std::vector<std::string> names;
        for (GeneratorIndex gi : g.vertex(v).generators) names.push_back(g.generators()[gi].name);
        new_index[v] = builder.add_vertex(g.vertex(v).id, names);
    }
    auto translate = [&](const FreeWord& w) {
        std::vector<Letter> letters;
        for (Letter l : w.letters()) {
            letters.emplace_back(*builder.generators().find(g.generators()[l.generator()].name), l.is_inverse());
        }
        return reduce(letters);
    };
    for (const WorkEdge& e : edges) {
        if (!e.alive) continue;
        builder.add_edge(e.id, new_index[e.from], new_index[e.to], translate(e.minus), translate(e.plus));
    }
    return {std::move(builder).build(), std::move(log)};
}

}  // namespace gog

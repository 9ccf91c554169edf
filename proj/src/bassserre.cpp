#include "gog/bassserre.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

#include "gog/error.hpp"

namespace gog {

// ---------------------------------------------------------------------------
// PresentationWord

PresentationWord::PresentationWord(std::vector<Symbol> symbols) {
    symbols_.reserve(symbols.size());
    for (const Symbol& s : symbols) {
        if (!symbols_.empty() && symbols_.back().cancels(s)) {
            symbols_.pop_back();
        } else {
            symbols_.push_back(s);
        }
    }
}

PresentationWord PresentationWord::from_word(const FreeWord& w) {
    PresentationWord out;
    for (Letter l : w.letters()) out.symbols_.push_back({Symbol::Kind::generator, l.generator(), l.is_inverse()});
    return out;
}

PresentationWord PresentationWord::stable(EdgeIndex e, bool inverse) {
    PresentationWord out;
    out.symbols_.push_back({Symbol::Kind::stable, e, inverse});
    return out;
}

PresentationWord PresentationWord::inverse() const {
    PresentationWord out;
    out.symbols_.reserve(symbols_.size());
    for (auto it = symbols_.rbegin(); it != symbols_.rend(); ++it) out.symbols_.push_back(it->inverted());
    return out;
}

PresentationWord PresentationWord::pow(long k) const {
    const PresentationWord base = k < 0 ? inverse() : *this;
    PresentationWord out;
    for (long i = 0; i < std::labs(k); ++i) out = out * base;
    return out;
}

PresentationWord operator*(const PresentationWord& lhs, const PresentationWord& rhs) {
    std::vector<Symbol> all = lhs.symbols_;
    all.insert(all.end(), rhs.symbols_.begin(), rhs.symbols_.end());
    return PresentationWord(std::move(all));
}

namespace {

std::string symbol_name(const Symbol& s, const GraphOfGroups& g) {
    return s.kind == Symbol::Kind::generator ? g.generators()[s.index].name : g.edge(s.index).id;
}

}  // namespace

std::string format_presentation(const PresentationWord& w, const GraphOfGroups& g) {
    if (w.is_identity()) return "1";
    std::ostringstream out;
    const auto& s = w.symbols();
    for (std::size_t i = 0; i < s.size();) {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        const long run = static_cast<long>(j - i) * (s[i].inverse ? -1 : 1);
        if (i) out << ' ';
        out << symbol_name(s[i], g);
        if (run != 1) out << '^' << run;
        i = j;
    }
    return out.str();
}

PresentationWord parse_presentation(std::string_view text, const GraphOfGroups& g, std::size_t line,
                                    std::size_t column_base) {
    std::vector<Symbol> symbols;
    for (const WordToken& tok : tokenize_word(text, line, column_base)) {
        Symbol s;
        if (auto gen = g.generators().find(tok.name)) {
            s = {Symbol::Kind::generator, *gen, false};
        } else if (auto e = g.find_edge(tok.name)) {
            s = {Symbol::Kind::stable, *e, false};
        } else if (auto te = tok.name.starts_with("t_") ? g.find_edge(tok.name.substr(2)) : std::nullopt) {
            s = {Symbol::Kind::stable, *te, false};
        } else {
            throw ParseError(line, tok.column, "unknown generator or stable letter '" + tok.name + "'");
        }
        if (tok.exponent < 0) s = s.inverted();
        for (long k = 0; k < std::labs(tok.exponent); ++k) symbols.push_back(s);
    }
    return PresentationWord(std::move(symbols));
}

std::size_t syllable_count(const PresentationWord& w, const GraphOfGroups& g) {
    std::size_t count = 0;
    std::optional<VertexIndex> run;
    for (const Symbol& s : w.symbols()) {
        if (s.kind == Symbol::Kind::stable) {
            ++count;
            run.reset();
            continue;
        }
        const VertexIndex v = g.generators()[s.index].vertex;
        if (run != v) ++count;
        run = v;
    }
    return count;
}

// ---------------------------------------------------------------------------
// DecompositionTree

DecompositionTree decompose(const GraphOfGroups& g) {
    DecompositionTree t;
    std::vector<std::size_t> component(g.vertices().size());
    for (VertexIndex v = 0; v < g.vertices().size(); ++v) {
        t.nodes.push_back({DecompositionNode::Kind::vertex, v, {}});
        component[v] = v;
    }
    // Union by relabelling; graphs are small.
    auto merge = [&](std::size_t from, std::size_t to, std::size_t node) {
        for (std::size_t& c : component) {
            if (c == from || c == to) c = node;
        }
    };
    for (EdgeIndex e : g.maximal_tree()) {
        const std::size_t a = component[g.edge(e).from];
        const std::size_t b = component[g.edge(e).to];
        t.nodes.push_back({DecompositionNode::Kind::amalgam, e, {a, b}});
        merge(a, b, t.nodes.size() - 1);
    }
    for (EdgeIndex e = 0; e < g.edges().size(); ++e) {
        if (g.in_tree(e)) continue;
        const std::size_t base = component[0];
        t.nodes.push_back({DecompositionNode::Kind::hnn, e, {base}});
        merge(base, base, t.nodes.size() - 1);
    }
    t.root = component[0];
    return t;
}

std::string DecompositionTree::describe(const GraphOfGroups& g) const {
    std::function<std::string(std::size_t)> rec = [&](std::size_t i) -> std::string {
        const DecompositionNode& n = nodes[i];
        switch (n.kind) {
            case DecompositionNode::Kind::vertex:
                return g.vertex(n.index).id;
            case DecompositionNode::Kind::amalgam:
                return "amalgam[" + g.edge(n.index).id + "](" + rec(n.children[0]) + ", " + rec(n.children[1]) + ")";
            case DecompositionNode::Kind::hnn:
                return "hnn[" + g.edge(n.index).id + "](" + rec(n.children[0]) + ")";
        }
        return {};
    };
    return rec(root);
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::inverse() const {
    std::vector<FreeWord> f;
    std::vector<OrientedEdge> e;
    f.reserve(factors_.size());
    e.reserve(edges_.size());
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) f.push_back(it->inverse());
    for (auto it = edges_.rbegin(); it != edges_.rend(); ++it) e.push_back(it->reverse());
    return GroupElement(engine_, std::move(f), std::move(e), false);
}

GroupElement operator*(const GroupElement& lhs, const GroupElement& rhs) {
    if (lhs.engine_ != rhs.engine_) throw TreeMismatchError("elements belong to different graphs of groups");
    std::vector<FreeWord> f(rhs.factors_.begin(), rhs.factors_.end() - 1);
    f.push_back(lhs.factors_.front() * rhs.factors_.back());
    f.insert(f.end(), lhs.factors_.begin() + 1, lhs.factors_.end());
    std::vector<OrientedEdge> e = rhs.edges_;
    e.insert(e.end(), lhs.edges_.begin(), lhs.edges_.end());
    return GroupElement(lhs.engine_, std::move(f), std::move(e), false);
}

bool GroupElement::same_form(const GroupElement& other) const {
    if (!canonical_ || !other.canonical_) throw PreconditionError("syllable comparison needs canonical forms");
    return factors_ == other.factors_ && edges_ == other.edges_;
}

std::string GroupElement::key() const {
    std::vector<std::int32_t> codes;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        for (Letter l : factors_[i].letters()) codes.push_back(l.code());
        codes.push_back(-1);
        if (i < edges_.size()) codes.push_back(static_cast<std::int32_t>(2 * edges_[i].edge + edges_[i].reversed));
    }
    std::string out(codes.size() * sizeof(std::int32_t), '\0');
    std::memcpy(out.data(), codes.data(), out.size());
    return out;
}

// ---------------------------------------------------------------------------
// BassSerreEngine

BassSerreEngine::BassSerreEngine(GraphOfGroups g) : graph_(std::move(g)), tree_(decompose(graph_)) {
    tree_path_.assign(graph_.vertices().size(), {});
    std::vector<bool> known(graph_.vertices().size(), false);
    known[0] = true;
    for (EdgeIndex e : graph_.maximal_tree()) {
        const Edge& edge = graph_.edge(e);
        if (known[edge.from]) {
            tree_path_[edge.to] = tree_path_[edge.from];
            tree_path_[edge.to].push_back({e, false});
            known[edge.to] = true;
        } else {
            tree_path_[edge.from] = tree_path_[edge.to];
            tree_path_[edge.from].push_back({e, true});
            known[edge.from] = true;
        }
    }
}

void BassSerreEngine::check(const GroupElement& x) const {
    if (x.engine_ != this) throw TreeMismatchError("element belongs to a different graph of groups");
}

GroupElement BassSerreEngine::identity() const { return GroupElement(this, {FreeWord{}}, {}, true); }

GroupElement BassSerreEngine::vertex_element(VertexIndex v, const FreeWord& w) const {
    auto owner = vertex_of(w, graph_.generators());
    if (owner && *owner != v) {
        throw AlphabetError("word is not in the alphabet of vertex '" + graph_.vertex(v).id + "'");
    }
    const auto& path = tree_path_[v];
    std::vector<OrientedEdge> edges = path;
    for (auto it = path.rbegin(); it != path.rend(); ++it) edges.push_back(it->reverse());
    std::vector<FreeWord> factors(edges.size() + 1);
    factors[path.size()] = w;
    return normalize(GroupElement(this, std::move(factors), std::move(edges), false));
}

GroupElement BassSerreEngine::stable_letter(EdgeIndex e) const {
    const Edge& edge = graph_.edge(e);
    std::vector<OrientedEdge> edges = tree_path_[edge.from];
    edges.push_back({e, false});
    const auto& back = tree_path_[edge.to];
    for (auto it = back.rbegin(); it != back.rend(); ++it) edges.push_back(it->reverse());
    std::vector<FreeWord> factors(edges.size() + 1);
    return normalize(GroupElement(this, std::move(factors), std::move(edges), false));
}

GroupElement BassSerreEngine::evaluate(const PresentationWord& w) const {
    GroupElement out = identity();
    // Read right to left, merging runs of one vertex into single factors.
    const auto& s = w.symbols();
    std::size_t i = s.size();
    while (i > 0) {
        const Symbol& sym = s[i - 1];
        if (sym.kind == Symbol::Kind::stable) {
            GroupElement t = stable_letter(sym.index);
            out = (sym.inverse ? t.inverse() : t) * out;
            --i;
            continue;
        }
        const VertexIndex v = graph_.generators()[sym.index].vertex;
        std::size_t j = i;
        while (j > 0 && s[j - 1].kind == Symbol::Kind::generator && graph_.generators()[s[j - 1].index].vertex == v) {
            --j;
        }
        std::vector<Letter> letters;
        for (std::size_t k = j; k < i; ++k) letters.emplace_back(s[k].index, s[k].inverse);
        out = vertex_element(v, reduce(letters)) * out;
        i = j;
    }
    return normalize(out);
}

GroupElement BassSerreEngine::from_path(std::vector<FreeWord> factors, std::vector<OrientedEdge> edges) const {
    if (factors.size() != edges.size() + 1) throw PreconditionError("a path needs one more factor than edges");
    VertexIndex at = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i > 0) {
            const OrientedEdge& e = edges[i - 1];
            if (e.edge >= graph_.edges().size()) throw PreconditionError("edge index out of range");
            if (graph_.origin(e) != at) throw PreconditionError("edge path is not connected");
            at = graph_.terminus(e);
        }
        auto owner = vertex_of(factors[i], graph_.generators());
        if (owner && *owner != at) {
            throw AlphabetError("factor " + std::to_string(i) + " is not in the vertex group at its position");
        }
    }
    if (at != 0) throw PreconditionError("edge path is not a loop at the base vertex");
    return GroupElement(this, std::move(factors), std::move(edges), false);
}

GroupElement BassSerreEngine::normalize(const GroupElement& x) const {
    check(x);
    if (x.canonical_) return x;
    const GraphOfGroups& g = graph_;

    // Remove pinches  y^-1 terminus_word(y)^k y,  scanning right to left.
    std::vector<FreeWord> f{x.factors_.front()};
    std::vector<OrientedEdge> y;
    for (std::size_t i = 0; i < x.edges_.size(); ++i) {
        const OrientedEdge e = x.edges_[i];
        const FreeWord& next = x.factors_[i + 1];
        if (!y.empty() && y.back() == e.reverse()) {
            if (auto k = power_of(g.terminus_word(y.back()), f.back())) {
                FreeWord merged = next * g.origin_word(y.back()).pow(*k) * f[f.size() - 2];
                f.pop_back();
                f.pop_back();
                y.pop_back();
                f.push_back(std::move(merged));
                continue;
            }
        }
        y.push_back(e);
        f.push_back(next);
    }

    // Choose coset representatives from the left end inwards.
    for (std::size_t i = y.size(); i >= 1; --i) {
        const CosetDecomposition d = left_coset_decompose(f[i], g.terminus_word(y[i - 1]));
        if (d.power != 0) {
            f[i] = d.representative;
            f[i - 1] = g.origin_word(y[i - 1]).pow(d.power) * f[i - 1];
        }
    }
    return GroupElement(this, std::move(f), std::move(y), true);
}

GroupElement BassSerreEngine::pow(const GroupElement& x, long k) const {
    GroupElement base = normalize(k < 0 ? x.inverse() : x);
    GroupElement out = identity();
    for (unsigned long e = static_cast<unsigned long>(std::labs(k)); e; e >>= 1) {
        if (e & 1) out = multiply(out, base);
        if (e > 1) base = multiply(base, base);
    }
    return out;
}

bool BassSerreEngine::equal(const GroupElement& x, const GroupElement& y) const {
    check(x);
    check(y);
    return normalize(x).same_form(normalize(y));
}

PresentationWord BassSerreEngine::to_presentation(const GroupElement& x) const {
    check(x);
    PresentationWord out;
    for (std::size_t i = x.factors_.size(); i-- > 0;) {
        out = out * PresentationWord::from_word(x.factors_[i]);
        if (i > 0) {
            const OrientedEdge& e = x.edges_[i - 1];
            if (!graph_.in_tree(e.edge)) out = out * PresentationWord::stable(e.edge, e.reversed);
        }
    }
    return out;
}

std::string BassSerreEngine::format(const GroupElement& x) const {
    return format_presentation(to_presentation(x), graph_);
}

// ---------------------------------------------------------------------------

bool verify_witness(const BassSerreEngine& engine, const ConjugacyClaim& claim) {
    const GroupElement w = engine.evaluate(claim.conjugator);
    const GroupElement lhs = w * engine.vertex_element(claim.x.vertex, claim.x.word.pow(claim.m)) * w.inverse();
    const GroupElement rhs = engine.vertex_element(claim.y.vertex, claim.y.word.pow(claim.n));
    return engine.equal(lhs, rhs);
}

namespace {

struct Syllable {
    PresentationWord word;
    GroupElement value;
    std::optional<VertexIndex> vertex;  // empty for stable letters
};

struct Candidate {
    PresentationWord word;
    GroupElement value;
    std::optional<VertexIndex> first;  // leftmost syllable's vertex
    std::optional<VertexIndex> last;   // rightmost syllable's vertex
    std::size_t last_syllable = 0;     // index into the syllable list
};

void vertex_words(const GraphOfGroups& g, VertexIndex v, std::size_t max_len, std::vector<FreeWord>& out) {
    std::vector<Letter> alphabet;
    for (GeneratorIndex gi : g.vertex(v).generators) {
        alphabet.emplace_back(gi, false);
        alphabet.emplace_back(gi, true);
    }
    std::vector<Letter> current;
    std::function<void()> rec = [&] {
        if (!current.empty()) out.push_back(reduce(current));
        if (current.size() == max_len) return;
        for (Letter l : alphabet) {
            if (!current.empty() && current.back().cancels(l)) continue;
            current.push_back(l);
            rec();
            current.pop_back();
        }
    };
    rec();
}

using OrderKey = std::tuple<std::size_t, std::size_t, std::vector<std::int64_t>>;

OrderKey order_key(const PresentationWord& w, const GraphOfGroups& g) {
    std::vector<std::int64_t> codes;
    const auto gens = static_cast<std::int64_t>(g.generators().size());
    for (const Symbol& s : w.symbols()) {
        const auto idx = static_cast<std::int64_t>(s.index);
        codes.push_back(s.kind == Symbol::Kind::generator ? 2 * idx + s.inverse : 2 * gens + 2 * idx + s.inverse);
    }
    return {syllable_count(w, g), w.size(), std::move(codes)};
}

long exponent_rank(long m) { return 2 * std::labs(m) - (m > 0 ? 1 : 0); }

std::vector<long> exponent_sequence(long max_exponent) {
    std::vector<long> out;
    for (long k = 1; k <= max_exponent; ++k) {
        out.push_back(k);
        out.push_back(-k);
    }
    return out;
}

// All syllable sequences with at most `depth` syllables, the identity first.
std::vector<Candidate> enumerate_conjugators(const BassSerreEngine& engine, const std::vector<Syllable>& syllables,
                                             std::size_t depth) {
    std::vector<Candidate> out{{PresentationWord{}, engine.identity(), std::nullopt, std::nullopt, 0}};
    std::size_t layer_begin = 0;
    std::size_t layer_end = 1;
    for (std::size_t d = 1; d <= depth; ++d) {
        for (std::size_t c = layer_begin; c < layer_end; ++c) {
            for (std::size_t s = 0; s < syllables.size(); ++s) {
                const Syllable& syl = syllables[s];
                if (d > 1) {
                    const Syllable& last = syllables[out[c].last_syllable];
                    if (syl.vertex && last.vertex && *syl.vertex == *last.vertex) continue;
                    if (!syl.vertex && !last.vertex && syl.word == last.word.inverse()) continue;
                }
                // Append on the right. `out` may reallocate, so no reference into it is held.
                Candidate next{out[c].word * syl.word, engine.multiply(out[c].value, syl.value),
                               d == 1 ? syl.vertex : out[c].first, syl.vertex, s};
                out.push_back(std::move(next));
            }
        }
        layer_begin = layer_end;
        layer_end = out.size();
    }
    return out;
}

}  // namespace

std::vector<OracleHit> brute_force_power_conjugacy_all(const BassSerreEngine& engine, const VertexElement& x,
                                                       const VertexElement& y, OracleBounds bounds) {
    if (bounds.max_syllables < 1 || bounds.max_exponent < 1) throw PreconditionError("oracle bounds must be >= 1");
    if (x.word.is_identity() || y.word.is_identity()) throw DegenerateInputError("oracle needs nontrivial elements");
    const GraphOfGroups& g = engine.graph();

    std::vector<Syllable> syllables;
    for (VertexIndex v = 0; v < g.vertices().size(); ++v) {
        std::vector<FreeWord> words;
        vertex_words(g, v, bounds.max_syllables, words);
        for (const FreeWord& w : words) {
            syllables.push_back({PresentationWord::from_word(w), engine.vertex_element(v, w), v});
        }
    }
    for (EdgeIndex e = 0; e < g.edges().size(); ++e) {
        if (g.in_tree(e)) continue;
        const GroupElement t = engine.stable_letter(e);
        syllables.push_back({PresentationWord::stable(e), t, std::nullopt});
        syllables.push_back({PresentationWord::stable(e, true), engine.normalize(t.inverse()), std::nullopt});
    }

    // w = w2 w1:  w1 x^m w1^-1 == w2^-1 y^n w2.
    const std::size_t right_depth = (bounds.max_syllables + 1) / 2;
    const std::size_t left_depth = bounds.max_syllables / 2;
    const std::vector<Candidate> right = enumerate_conjugators(engine, syllables, right_depth);
    const std::vector<Candidate> left =
        left_depth == right_depth ? right : enumerate_conjugators(engine, syllables, left_depth);
    const std::vector<long> exponents = exponent_sequence(bounds.max_exponent);

    std::vector<GroupElement> x_powers;
    std::vector<GroupElement> y_powers;
    for (long k : exponents) {
        x_powers.push_back(engine.vertex_element(x.vertex, x.word.pow(k)));
        y_powers.push_back(engine.vertex_element(y.vertex, y.word.pow(k)));
    }

    struct Entry {
        std::size_t hash;
        std::uint32_t exponent;  // index into exponents
        std::uint32_t candidate;
        bool operator<(const Entry& o) const {
            return std::tie(hash, exponent, candidate) < std::tie(o.hash, o.exponent, o.candidate);
        }
    };
    std::vector<Entry> table;
    table.reserve(right.size() * exponents.size());
    const std::hash<std::string> hasher;
    for (std::size_t c = 0; c < right.size(); ++c) {
        const GroupElement inv = right[c].value.inverse();
        for (std::size_t k = 0; k < exponents.size(); ++k) {
            const GroupElement conj = engine.normalize(right[c].value * x_powers[k] * inv);
            table.push_back({hasher(conj.key()), static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(c)});
        }
    }
    std::sort(table.begin(), table.end());

    struct Best {
        OrderKey key;
        PresentationWord word;
    };
    std::map<std::pair<long, long>, Best> best;
    for (const Candidate& l : left) {
        const GroupElement inv = l.value.inverse();
        for (std::size_t kn = 0; kn < exponents.size(); ++kn) {
            const GroupElement target = engine.normalize(inv * y_powers[kn] * l.value);
            const std::string target_key = target.key();
            const std::size_t h = hasher(target_key);
            auto lo = std::lower_bound(table.begin(), table.end(), Entry{h, 0, 0});
            for (auto it = lo; it != table.end() && it->hash == h; ++it) {
                const Candidate& r = right[it->candidate];
                const long m = exponents[it->exponent];
                const long n = exponents[kn];
                PresentationWord w = l.word * r.word;
                OrderKey key = order_key(w, g);
                auto found = best.find({m, n});
                if (found != best.end() && !(key < found->second.key)) continue;
                // Guard against hash collisions.
                const GroupElement conj = engine.normalize(r.value * x_powers[it->exponent] * r.value.inverse());
                if (conj.key() != target_key) continue;
                best[{m, n}] = Best{std::move(key), std::move(w)};
            }
        }
    }

    std::vector<std::pair<Best, OracleHit>> hits;
    for (auto& [mn, b] : best) hits.push_back({b, OracleHit{b.word, mn.first, mn.second}});
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
        if (a.first.key != b.first.key) return a.first.key < b.first.key;
        return std::pair{exponent_rank(a.second.m), exponent_rank(a.second.n)} <
               std::pair{exponent_rank(b.second.m), exponent_rank(b.second.n)};
    });
    std::vector<OracleHit> out;
    for (auto& [b, hit] : hits) out.push_back(std::move(hit));
    return out;
}

std::optional<OracleHit> brute_force_power_conjugacy(const BassSerreEngine& engine, const VertexElement& x,
                                                     const VertexElement& y, OracleBounds bounds) {
    const bool same = x.vertex == y.vertex && x.word == y.word;
    for (OracleHit& hit : brute_force_power_conjugacy_all(engine, x, y, bounds)) {
        if (same && hit.m == hit.n) continue;
        return std::move(hit);
    }
    return std::nullopt;
}

}  // namespace gog

#pragma once

// Fundamental group of a graph of groups, based at vertex 0.
//
// Elements are stored as loops  f_n y_n f_{n-1} ... y_1 f_0  where y_i is an
// oriented edge from v_{i-1} to v_i, f_i is a word in G_{v_i} and
// v_0 = v_n = base. Along an oriented edge y,
//     y * origin_word(y)^k * y^-1 = terminus_word(y)^k.
// The presentation seen by users has the vertex generators plus one stable
// letter per non-tree edge e: v -> w, with  t_e minus^k t_e^-1 = plus^k,
// and tree edges identifying minus with plus.
//
// Canonical form: no pinch  y^-1 (terminus_word(y)^k) y,  and every f_i with
// i >= 1 is the shortlex-least element of its left coset f_i <terminus_word(y_i)>.
// Canonical forms are unique, so equality is syllable-wise comparison.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gog/freewords.hpp"
#include "gog/goggraph.hpp"

namespace gog {

// ---------------------------------------------------------------------------
// Words in the presentation alphabet

struct Symbol {
    enum class Kind : std::uint8_t { generator, stable };
    Kind kind = Kind::generator;
    std::size_t index = 0;  // generator index or edge index
    bool inverse = false;

    Symbol inverted() const { return {kind, index, !inverse}; }
    bool cancels(const Symbol& other) const {
        return kind == other.kind && index == other.index && inverse != other.inverse;
    }
    bool operator==(const Symbol&) const = default;
};

/// Freely reduced word over vertex generators and stable letters, written
/// left to right.
class PresentationWord {
public:
    PresentationWord() = default;
    explicit PresentationWord(std::vector<Symbol> symbols);

    static PresentationWord from_word(const FreeWord& w);
    static PresentationWord stable(EdgeIndex e, bool inverse = false);

    const std::vector<Symbol>& symbols() const { return symbols_; }
    bool is_identity() const { return symbols_.empty(); }
    std::size_t size() const { return symbols_.size(); }

    PresentationWord inverse() const;
    PresentationWord pow(long k) const;
    friend PresentationWord operator*(const PresentationWord& lhs, const PresentationWord& rhs);
    bool operator==(const PresentationWord&) const = default;

private:
    std::vector<Symbol> symbols_;
};

/// Stable letters print as the edge id; t_<edge id> is accepted on input too.
std::string format_presentation(const PresentationWord& w, const GraphOfGroups& g);

/// Same token syntax as vertex words. Words may mix vertices.
PresentationWord parse_presentation(std::string_view text, const GraphOfGroups& g, std::size_t line = 1,
                                    std::size_t column_base = 1);

/// Number of maximal runs of generators from one vertex, plus stable letters.
std::size_t syllable_count(const PresentationWord& w, const GraphOfGroups& g);

// ---------------------------------------------------------------------------
// Decomposition as iterated amalgams and HNN extensions

struct DecompositionNode {
    enum class Kind : std::uint8_t { vertex, amalgam, hnn };
    Kind kind = Kind::vertex;
    std::size_t index = 0;  // vertex index for leaves, edge index otherwise
    std::vector<std::size_t> children;
};

/// Leaves are vertex groups; tree edges amalgamate in breadth-first order,
/// then non-tree edges add HNN extensions in edge order.
struct DecompositionTree {
    std::vector<DecompositionNode> nodes;
    std::size_t root = 0;

    std::string describe(const GraphOfGroups& g) const;
};

DecompositionTree decompose(const GraphOfGroups& g);

// ---------------------------------------------------------------------------

class BassSerreEngine;

class GroupElement {
public:
    bool canonical() const { return canonical_; }
    const std::vector<FreeWord>& factors() const { return factors_; }
    const std::vector<OrientedEdge>& edges() const { return edges_; }
    /// Number of edges in the loop.
    std::size_t length() const { return edges_.size(); }
    bool in_base_vertex_group() const { return edges_.empty(); }

    GroupElement inverse() const;
    friend GroupElement operator*(const GroupElement& lhs, const GroupElement& rhs);

    /// Syllable-wise comparison; both sides must be canonical.
    bool same_form(const GroupElement& other) const;
    /// Compact encoding of the syllables, for hashing canonical forms.
    std::string key() const;

private:
    friend class BassSerreEngine;
    GroupElement(const BassSerreEngine* engine, std::vector<FreeWord> factors, std::vector<OrientedEdge> edges,
                 bool canonical)
        : engine_(engine), factors_(std::move(factors)), edges_(std::move(edges)), canonical_(canonical) {}

    const BassSerreEngine* engine_ = nullptr;
    std::vector<FreeWord> factors_;      // factors_[0] is the rightmost
    std::vector<OrientedEdge> edges_;    // edges_[i] sits between factors_[i] and factors_[i+1]
    bool canonical_ = false;
};

/// Elements remember the engine that made them and must not outlive it.
class BassSerreEngine {
public:
    explicit BassSerreEngine(GraphOfGroups g);

    BassSerreEngine(const BassSerreEngine&) = delete;
    BassSerreEngine& operator=(const BassSerreEngine&) = delete;

    const GraphOfGroups& graph() const { return graph_; }
    const DecompositionTree& decomposition() const { return tree_; }

    GroupElement identity() const;
    /// Throws AlphabetError if the word is not in the vertex alphabet.
    GroupElement vertex_element(VertexIndex v, const FreeWord& w) const;
    GroupElement vertex_element(const VertexElement& x) const { return vertex_element(x.vertex, x.word); }
    /// Identity for tree edges.
    GroupElement stable_letter(EdgeIndex e) const;
    GroupElement evaluate(const PresentationWord& w) const;
    /// A loop at the base vertex given by its syllables. Throws AlphabetError
    /// when a factor is not in the vertex group the path is at, and
    /// PreconditionError if the path is not a loop at the base.
    GroupElement from_path(std::vector<FreeWord> factors, std::vector<OrientedEdge> edges) const;

    GroupElement normalize(const GroupElement& x) const;
    GroupElement multiply(const GroupElement& x, const GroupElement& y) const { return normalize(x * y); }
    GroupElement pow(const GroupElement& x, long k) const;
    /// Throws TreeMismatchError for elements of another engine.
    bool equal(const GroupElement& x, const GroupElement& y) const;

    PresentationWord to_presentation(const GroupElement& x) const;
    std::string format(const GroupElement& x) const;

private:
    void check(const GroupElement& x) const;

    GraphOfGroups graph_;
    DecompositionTree tree_;
    std::vector<std::vector<OrientedEdge>> tree_path_;  // base -> v along the maximal tree
};

// ---------------------------------------------------------------------------
// Witness checks and bounded search

/// w x^m w^-1 = y^n
struct ConjugacyClaim {
    PresentationWord conjugator;
    VertexElement x;
    long m = 1;
    VertexElement y;
    long n = 1;
};

bool verify_witness(const BassSerreEngine& engine, const ConjugacyClaim& claim);

struct OracleBounds {
    std::size_t max_syllables = 4;
    long max_exponent = 6;
};

struct OracleHit {
    PresentationWord conjugator;
    long m = 0;
    long n = 0;
};

/// Conjugators are products of at most max_syllables syllables, each a nonempty
/// vertex word of length <= max_syllables or a stable letter^{+-1}; exponents
/// range over 1 <= |m|,|n| <= max_exponent. One hit per exponent pair, with the
/// least conjugator by (syllables, letters, lexicographic), stable letters
/// ordering after generators. Hits are sorted by that order, then by m in the
/// sequence 1, -1, 2, -2, ...
std::vector<OracleHit> brute_force_power_conjugacy_all(const BassSerreEngine& engine, const VertexElement& x,
                                                       const VertexElement& y, OracleBounds bounds);

/// First hit of the above, skipping the trivial m == n hits when x and y are
/// the same element. Absence only refutes within the bounds.
std::optional<OracleHit> brute_force_power_conjugacy(const BassSerreEngine& engine, const VertexElement& x,
                                                     const VertexElement& y, OracleBounds bounds);

}  // namespace gog

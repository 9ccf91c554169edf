#pragma once

// Conjugacy paths through a graph of groups: edge paths along which a power
// of a vertex element can be conjugated from one vertex group to another.
//
// For a path e_1 ... e_n from g in G_{v_0} to g' in G_{v_n}:
//   - some power of g is conjugate into <origin_word(e_1)>,
//   - at each intermediate vertex <terminus_word(e_i)> meets a conjugate
//       of <origin_word(e_{i+1})>,
//   - some power of g' is conjugate into <terminus_word(e_n)>.
// Every enumeration below uses each unoriented edge at most once.

#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "gog/bassserre.hpp"
#include "gog/freewords.hpp"
#include "gog/goggraph.hpp"

namespace gog {

using Ratio = boost::rational<long>;

std::string format_ratio(const Ratio& r);

/// Passing from <from> to <to> inside one vertex group: H from^m H^-1 = to^n
/// with n/m = ratio.
struct Transition {
    VertexIndex vertex = 0;
    FreeWord from;
    FreeWord to;
    CyclicMeet meet;
    Ratio ratio;
};

Transition make_transition(VertexIndex v, const FreeWord& from, const FreeWord& to, const CyclicMeet& meet);

struct ConjugacyPath {
    std::vector<OrientedEdge> edges;
    VertexElement start;
    VertexElement end;
    Transition enter;                     // start -> origin_word(e_1)
    std::vector<Transition> transitions;  // terminus_word(e_i) -> origin_word(e_{i+1})
    Transition leave;                     // terminus_word(e_n) -> end

    /// v_0, ..., v_n.
    std::vector<VertexIndex> vertices(const GraphOfGroups& g) const;
    /// Product of every transition ratio: start^m ~ end^(m * ratio).
    Ratio ratio() const;
};

/// Exponents and conjugator carrying a power of the start element around a
/// sequence of transitions: W start^m W^-1 = end^n.
struct PathWitness {
    long m = 0;
    long n = 0;
    PresentationWord conjugator;
};

/// m is the least positive exponent that stays integral at every step.
PathWitness assemble_witness(const GraphOfGroups& g, const std::vector<OrientedEdge>& edges,
                             const std::vector<const Transition*>& steps);
PathWitness assemble_witness(const GraphOfGroups& g, const ConjugacyPath& p);

/// Present iff the start meets the first edge word, consecutive edge words
/// meet at every intermediate vertex and the last edge word meets the end.
/// Throws PreconditionError on an empty or disconnected path, or endpoints on
/// the wrong vertices; DegenerateInputError on identity endpoints.
std::optional<ConjugacyPath> check_conjugacy_path(const GraphOfGroups& g, const VertexElement& start,
                                                  const VertexElement& end, const std::vector<OrientedEdge>& edges);

// ---------------------------------------------------------------------------
// Complete paths

/// A closed path whose endpoints are the first and last edge words and whose
/// closing transition back to origin_word(e_1) also holds, so
/// g^i ~ g^j for g = origin_word(e_1).
struct CompletePath {
    ConjugacyPath path;
    Transition closure;  // terminus_word(e_n) -> origin_word(e_1)
    Ratio ratio;
    bool level = false;
    long i = 0;
    long j = 0;
    PresentationWord witness;          // witness g^i witness^-1 = g^j
    std::vector<VertexIndex> bases;    // vertices at which the rotated path is also complete

    VertexElement base_element() const { return path.start; }
};

struct EnumerationOptions {
    std::size_t max_edges_warn = 12;
};

struct CompletePathList {
    std::vector<CompletePath> paths;
    std::optional<std::string> warning;
};

/// All complete paths, one per class under rotation and reversal, each given
/// in its lexicographically least rotation or reversal.
CompletePathList enumerate_complete_paths(const GraphOfGroups& g, EnumerationOptions options = {});

// ---------------------------------------------------------------------------
// Non-maximal paths

struct NonMaximalPath {
    enum class Kind { semi, full };
    Kind kind = Kind::full;
    ConjugacyPath path;
    /// Root exponents behind the arrows: at the origin of e_1, and for full
    /// paths at the terminus of e_n.
    long initial_arrow = 0;
    long final_arrow = 0;
};

/// Reduced paths whose only arrows sit at the origin end of e_1 and the
/// terminus end of e_n, with consecutive edge words meeting at every intermediate vertex.
/// Endpoints are the first and last edge words. One per reversal class.
std::vector<NonMaximalPath> enumerate_full_nonmaximal_paths(const GraphOfGroups& g);

/// Obtainable only from certify_hyperbolic, which checks that the graph has no
/// complete and no full non-maximal paths.
class HyperbolicityCertificate {
public:
    const std::string& fingerprint() const { return fingerprint_; }

private:
    friend std::optional<HyperbolicityCertificate> certify_hyperbolic(const GraphOfGroups& g);
    explicit HyperbolicityCertificate(std::string fingerprint) : fingerprint_(std::move(fingerprint)) {}
    std::string fingerprint_;
};

std::optional<HyperbolicityCertificate> certify_hyperbolic(const GraphOfGroups& g);

/// A path whose only arrow is at the origin end of e_1, ending at a vertex
/// element some power of which is conjugate into <terminus_word(e_n)>. The
/// shortest such path, ties broken lexicographically. Throws
/// PreconditionError if the certificate was issued for another graph.
std::optional<NonMaximalPath> find_semi_nonmaximal_path_to(const GraphOfGroups& g, const VertexElement& target,
                                                           const HyperbolicityCertificate& certificate);

}  // namespace gog

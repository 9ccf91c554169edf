#pragma once

// Group-level verdicts for graphs of free groups with infinite cyclic edge
// groups: balance, word hyperbolicity, acylindrical hyperbolicity, the
// splitting trichotomy, the GBS relative-hyperbolicity obstruction, and
// power conjugacy of vertex elements. Every witness is checked in the
// normal-form engine before it is returned; a failed check throws
// InternalInconsistency.

#include <optional>
#include <string>
#include <vector>

#include "gog/bassserre.hpp"
#include "gog/goggraph.hpp"
#include "gog/pathfinder.hpp"

namespace gog {

struct BalanceVerdict {
    bool balanced = true;
    /// First non-level complete path.
    std::optional<CompletePath> witness;
    /// BS(m,n) with m/n = |R| in lowest terms, and the sign of R.
    std::optional<std::string> bs_subgroup;
    int ratio_sign = 1;
};

/// Works on reduced and unreduced graphs alike.
BalanceVerdict is_balanced(const GraphOfGroups& g, EnumerationOptions options = {});

struct HyperbolicityVerdict {
    bool hyperbolic = true;
    std::optional<CompletePath> complete_witness;
    std::optional<NonMaximalPath> full_witness;
    /// Set whenever a witness exists: either path yields a Baumslag-Solitar subgroup.
    bool contains_baumslag_solitar = false;
    std::optional<std::string> warning;
};

HyperbolicityVerdict is_word_hyperbolic(const GraphOfGroups& g, EnumerationOptions options = {});

struct AcylindricityVerdict {
    enum class Status { acylindrically_hyperbolic, not_acylindrically_hyperbolic, trivial_graph };
    Status status = Status::acylindrically_hyperbolic;

    /// When acylindrically hyperbolic: the vertex where the test fails, and why.
    struct Failure {
        VertexIndex vertex = 0;
        enum class Condition { edge_groups_meet_trivially, intersector_proper } condition;
        std::vector<EdgeIndex> edges;  // two incident edges with trivially meeting images, if that failed
    };
    std::optional<Failure> failure;

    /// When not: per vertex, a generator g_v of the common intersection of the
    /// incident edge groups. <g_v> is s-normal in G.
    std::vector<FreeWord> s_normal_generators;
    /// A single vertex with a single bad loop.
    bool single_bad_loop = false;
};

/// Requires a reduced graph (GraphError otherwise).
AcylindricityVerdict is_acyl_hyperbolic(const GraphOfGroups& reduced);

struct TrichotomyVerdict {
    enum class Branch { acylindrically_hyperbolic, surjects_z, cyclic_normal_subgroup, trivial_graph };
    Branch branch = Branch::acylindrically_hyperbolic;
    /// Cyclic normal subgroup branch: vertex 0 element g with <g^power> normal.
    std::optional<VertexElement> normal_generator;
    long power = 1;
};

/// Reduces the graph first.
TrichotomyVerdict trichotomy(const GraphOfGroups& g);
TrichotomyVerdict trichotomy_of_reduced(const GraphOfGroups& reduced, const AcylindricityVerdict& acyl);

/// Present iff every vertex of the reduced graph has rank 1 and the graph is not trivial.
bool rel_hyp_obstruction(const GraphOfGroups& reduced);

struct ModulusEntry {
    VertexElement base;
    Ratio ratio;  // |R| of a complete path based at `base`
};

std::vector<ModulusEntry> modulus(const CompletePathList& paths);

// ---------------------------------------------------------------------------

struct ConjugacyAnswer {
    bool exists = false;
    long m = 0;
    long n = 0;
    PresentationWord conjugator;  // conjugator x^m conjugator^-1 = y^n
    enum class Route { none, same_vertex, path };
    Route route = Route::none;
    std::optional<ConjugacyPath> path;
    std::optional<CyclicMeet> same_vertex;
};

/// Some nonzero powers of x and y conjugate in G. A conjugacy path is used
/// when one exists, otherwise a meet inside the common vertex group. Among
/// paths the one with the least (|m|, |n|, length, edges) wins, and (m, n) are
/// divided by their gcd when the reduced relation still holds.
ConjugacyAnswer power_conjugate(const BassSerreEngine& engine, const VertexElement& x, const VertexElement& y);

// ---------------------------------------------------------------------------

struct AnalysisReport {
    ReductionResult reduction;
    BalanceVerdict balance;
    HyperbolicityVerdict hyperbolicity;
    AcylindricityVerdict acylindricity;
    TrichotomyVerdict trichotomy;
    bool rel_hyp_obstruction = false;
    std::vector<ModulusEntry> modulus;
    std::optional<std::string> warning;
};

/// Reduces g with the default contraction order and runs every decider on the
/// result. Also checks that an unbalanced group is not hyperbolic and that a
/// hyperbolic one is acylindrically hyperbolic or trivial.
AnalysisReport analyze(const GraphOfGroups& g, EnumerationOptions options = {});

std::string to_string(AcylindricityVerdict::Status s);
std::string to_string(TrichotomyVerdict::Branch b);
std::string to_string(ConjugacyAnswer::Route r);

}  // namespace gog

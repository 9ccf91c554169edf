#pragma once

// Fixed graphs shared by the unit tests and the acceptance runner.

#include <string>
#include <vector>

namespace suite {

struct NamedGraph {
    std::string name;
    std::string text;
    std::vector<std::string> elements;  // "vertex:word" query points
};

inline std::string bs_loop(long m, long n) {
    return "vertex v rank=1 gens=a\nedge t v v minus=\"a^" + std::to_string(m) + "\" plus=\"a^" + std::to_string(n) +
           "\"\n";
}

inline const char* kTrefoil = R"(vertex v rank=1 gens=a
vertex w rank=1 gens=b
edge e v w minus="a^2" plus="b^3"
)";

inline const char* kFreeAmalgam = R"(vertex v rank=2 gens=a,b
vertex w rank=2 gens=x,y
edge e v w minus="a" plus="x"
)";

inline const char* kChainReducible = R"(vertex u rank=1 gens=a
vertex v rank=1 gens=b
vertex w rank=1 gens=c
edge e u v minus="a^2" plus="b"
edge f v w minus="b" plus="c^3"
)";

inline const char* kChainGood = R"(vertex u rank=1 gens=a
vertex v rank=1 gens=b
vertex w rank=1 gens=c
edge e u v minus="a^2" plus="b^2"
edge f v w minus="b^3" plus="c^2"
)";

inline const char* kTheta = R"(vertex v rank=1 gens=a
vertex w rank=1 gens=b
edge e1 v w minus="a^2" plus="b^2"
edge e2 v w minus="a^2" plus="b^3"
edge e3 v w minus="a^3" plus="b^3"
)";

inline const char* kFreeHnn = R"(vertex v rank=2 gens=a,b
edge t v v minus="a" plus="b"
)";

inline const char* kCommutatorAmalgam = R"(vertex v rank=2 gens=a,b
vertex w rank=1 gens=x
edge e v w minus="a b a^-1 b^-1" plus="x^2"
)";

inline const char* kRootAmalgam = R"(vertex v rank=2 gens=a,b
vertex w rank=1 gens=x
edge e v w minus="a" plus="x^2"
)";

inline const char* kProductAmalgam = R"(vertex v rank=2 gens=a,b
vertex w rank=1 gens=x
edge e v w minus="a b" plus="x^2"
edge s w w minus="x^3" plus="x^3"
)";

/// The twelve-graph oracle suite.
inline std::vector<NamedGraph> oracle_suite() {
    return {
        {"bs(2,3)", bs_loop(2, 3), {"v:a", "v:a^2"}},
        {"bs(3,3)", bs_loop(3, 3), {"v:a", "v:a^3"}},
        {"bs(1,2)", bs_loop(1, 2), {"v:a", "v:a^3"}},
        {"bs(2,-2)", bs_loop(2, -2), {"v:a", "v:a^2"}},
        {"trefoil", kTrefoil, {"v:a", "w:b", "v:a^2"}},
        {"free amalgam", kFreeAmalgam, {"v:a", "v:b", "w:y", "v:a b"}},
        {"reducible chain", kChainReducible, {"u:a", "v:b", "w:c"}},
        {"good chain", kChainGood, {"u:a", "v:b", "w:c"}},
        {"theta", kTheta, {"v:a", "w:b"}},
        {"free hnn", kFreeHnn, {"v:a", "v:b", "v:a b"}},
        {"commutator amalgam", kCommutatorAmalgam, {"v:a", "v:a b a^-1 b^-1", "w:x"}},
        {"product amalgam", kProductAmalgam, {"v:a b", "v:a", "w:x"}},
    };
}

}  // namespace suite

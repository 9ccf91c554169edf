#pragma once

// Exact word algebra in finite-rank free groups.
//
// Letters are stored as a single integer code 2*generator + (inverse ? 1 : 0),
// so comparing codes gives the fixed lexicographic order: generators by
// declaration order, and a positive letter before the inverse of the same
// generator.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gog {

using GeneratorIndex = std::size_t;
using VertexIndex = std::size_t;

class Letter {
public:
    constexpr Letter() = default;
    constexpr Letter(GeneratorIndex generator, bool inverse)
        : code_(static_cast<std::int32_t>(2 * generator + (inverse ? 1 : 0))) {}

    static constexpr Letter from_code(std::int32_t code) {
        Letter l;
        l.code_ = code;
        return l;
    }

    constexpr GeneratorIndex generator() const { return static_cast<GeneratorIndex>(code_ >> 1); }
    constexpr bool is_inverse() const { return (code_ & 1) != 0; }
    constexpr int sign() const { return is_inverse() ? -1 : 1; }
    constexpr std::int32_t code() const { return code_; }
    constexpr Letter inverse() const { return from_code(code_ ^ 1); }

    constexpr bool cancels(Letter other) const { return (code_ ^ other.code_) == 1; }

    constexpr auto operator<=>(const Letter&) const = default;

private:
    std::int32_t code_ = 0;
};

/// A generator of some vertex group. Names are unique across the whole graph.
struct Generator {
    std::string name;
    VertexIndex vertex = 0;
};

class GeneratorTable {
public:
    GeneratorIndex add(std::string name, VertexIndex vertex);

    std::optional<GeneratorIndex> find(std::string_view name) const;
    const Generator& operator[](GeneratorIndex g) const { return generators_[g]; }
    std::size_t size() const { return generators_.size(); }
    auto begin() const { return generators_.begin(); }
    auto end() const { return generators_.end(); }

private:
    std::vector<Generator> generators_;
    std::unordered_map<std::string, GeneratorIndex> by_name_;
};

/// A freely reduced word. The empty word is the identity.
class FreeWord {
public:
    FreeWord() = default;

    static FreeWord generator(GeneratorIndex g) { return FreeWord({Letter(g, false)}); }

    std::span<const Letter> letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }

    FreeWord inverse() const;
    FreeWord pow(long k) const;

    friend FreeWord operator*(const FreeWord& lhs, const FreeWord& rhs);
    friend bool operator==(const FreeWord&, const FreeWord&) = default;

    /// Length first, then lexicographic on letter codes.
    friend std::strong_ordering shortlex_compare(const FreeWord& lhs, const FreeWord& rhs);

private:
    explicit FreeWord(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
    friend FreeWord reduce(std::span<const Letter> letters);

    std::vector<Letter> letters_;
};

inline bool shortlex_less(const FreeWord& a, const FreeWord& b) { return shortlex_compare(a, b) < 0; }

/// Free reduction; no alphabet checks.
FreeWord reduce(std::span<const Letter> letters);

/// Free reduction of letters that must all come from one vertex alphabet.
/// Throws AlphabetError on mixed alphabets.
FreeWord reduce(std::span<const Letter> letters, const GeneratorTable& table);

/// Vertex owning the letters of `w`; nullopt for the identity.
/// Throws AlphabetError when letters come from several vertices.
std::optional<VertexIndex> vertex_of(const FreeWord& w, const GeneratorTable& table);

/// Throws AlphabetError unless every nontrivial word lives on one common vertex.
void require_same_alphabet(std::initializer_list<const FreeWord*> words, const GeneratorTable& table);

// ---------------------------------------------------------------------------
// Word syntax: whitespace-separated tokens `name`, `name^-1`, `name^k`,
// `name^-k` (k >= 1). An empty string or a lone `1` denotes the identity.

struct WordToken {
    std::string name;
    long exponent = 1;
    std::size_t column = 1;  // 1-based offset of the token inside the parsed text
};

/// Tokenizes word syntax. Throws ParseError (line as given) on malformed tokens.
std::vector<WordToken> tokenize_word(std::string_view text, std::size_t line = 1, std::size_t column_base = 1);

/// Parses and reduces a word. Unknown names raise ParseError; letters from
/// several vertices raise AlphabetError.
FreeWord parse_word(std::string_view text, const GeneratorTable& table, std::size_t line = 1,
                    std::size_t column_base = 1);

/// Renders with run-length exponents, e.g. "a^2 b^-1 a". Identity renders as "1".
std::string format_word(const FreeWord& w, const GeneratorTable& table);

// ---------------------------------------------------------------------------

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicReduction {
    FreeWord conjugator;
    FreeWord core;
};

CyclicReduction cyclic_reduction(const FreeWord& w);

/// w = conjugator * primitive^exponent * conjugator^-1, primitive cyclically
/// reduced, not a proper power, and the shortlex-least among its cyclic
/// permutations and those of its inverse.
struct RootDecomposition {
    FreeWord conjugator;
    FreeWord primitive;
    long exponent = 0;

    FreeWord recompose() const;
    /// The primitive root element conjugator * primitive * conjugator^-1.
    FreeWord root_element() const;
    bool is_maximal() const { return exponent == 1 || exponent == -1; }
};

/// Throws DegenerateInputError on the identity.
RootDecomposition root(const FreeWord& w);

/// h with h u h^-1 = v, or nullopt when u and v are not conjugate.
std::optional<FreeWord> conjugate_in_free(const FreeWord& u, const FreeWord& v);

/// Evidence that some conjugate of <u> meets <v> nontrivially.
///
/// With ru = root(u), rv = root(v):
///   conjugator * ru.primitive * conjugator^-1 == rv.primitive^sign
/// and H = word_conjugator() satisfies H u^m H^-1 = v^n whenever
///   sign * exp_u * m == exp_v * n.
struct CyclicMeet {
    FreeWord conjugator;
    int sign = 1;
    long exp_u = 0;
    long exp_v = 0;
    RootDecomposition root_u;
    RootDecomposition root_v;

    FreeWord word_conjugator() const;
    /// Smallest m > 0 and the matching n with H u^m H^-1 = v^n.
    std::pair<long, long> minimal_exponents() const;
};

/// Throws DegenerateInputError if either word is the identity.
std::optional<CyclicMeet> cyclic_meet(const FreeWord& u, const FreeWord& v);

/// x = u^power * representative, representative the shortlex-least element of <u>x.
struct CosetDecomposition {
    FreeWord representative;
    long power = 0;
};

/// Right coset <u>x. Throws DegenerateInputError if u is the identity.
CosetDecomposition coset_decompose(const FreeWord& u, const FreeWord& x);
FreeWord coset_canonical(const FreeWord& u, const FreeWord& x);

/// Left coset x<u>: x = representative * u^power.
CosetDecomposition left_coset_decompose(const FreeWord& x, const FreeWord& u);

/// k with h == u^k, or nullopt if h is not in <u>.
std::optional<long> power_of(const FreeWord& u, const FreeWord& h);

}  // namespace gog

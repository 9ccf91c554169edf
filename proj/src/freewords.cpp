#include "gog/freewords.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "gog/error.hpp"

namespace gog {

GeneratorIndex GeneratorTable::add(std::string name, VertexIndex vertex) {
    if (by_name_.contains(name)) {
        throw GraphError("duplicate generator name '" + name + "'");
    }
    const GeneratorIndex index = generators_.size();
    by_name_.emplace(name, index);
    generators_.push_back(Generator{std::move(name), vertex});
    return index;
}

std::optional<GeneratorIndex> GeneratorTable::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------

FreeWord reduce(std::span<const Letter> letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (Letter l : letters) {
        if (!out.empty() && out.back().cancels(l)) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return FreeWord(std::move(out));
}

FreeWord reduce(std::span<const Letter> letters, const GeneratorTable& table) {
    std::optional<VertexIndex> vertex;
    for (Letter l : letters) {
        if (l.generator() >= table.size()) throw AlphabetError("letter outside the generator table");
        const VertexIndex v = table[l.generator()].vertex;
        if (vertex && *vertex != v) {
            throw AlphabetError("word mixes generators of different vertex groups ('" +
                                table[letters.front().generator()].name + "' and '" +
                                table[l.generator()].name + "')");
        }
        vertex = v;
    }
    return reduce(letters);
}

std::optional<VertexIndex> vertex_of(const FreeWord& w, const GeneratorTable& table) {
    if (w.is_identity()) return std::nullopt;
    reduce(w.letters(), table);  // validates
    return table[w[0].generator()].vertex;
}

void require_same_alphabet(std::initializer_list<const FreeWord*> words, const GeneratorTable& table) {
    std::optional<VertexIndex> common;
    for (const FreeWord* w : words) {
        auto v = vertex_of(*w, table);
        if (!v) continue;
        if (common && *common != *v) throw AlphabetError("words belong to different vertex groups");
        common = v;
    }
}

FreeWord FreeWord::inverse() const {
    std::vector<Letter> out(letters_.size());
    std::transform(letters_.rbegin(), letters_.rend(), out.begin(), [](Letter l) { return l.inverse(); });
    return FreeWord(std::move(out));
}

FreeWord operator*(const FreeWord& lhs, const FreeWord& rhs) {
    std::size_t cancel = 0;
    const std::size_t n = lhs.size();
    while (cancel < n && cancel < rhs.size() && lhs.letters_[n - 1 - cancel].cancels(rhs.letters_[cancel])) {
        ++cancel;
    }
    std::vector<Letter> out;
    out.reserve(n + rhs.size() - 2 * cancel);
    out.insert(out.end(), lhs.letters_.begin(), lhs.letters_.end() - static_cast<std::ptrdiff_t>(cancel));
    out.insert(out.end(), rhs.letters_.begin() + static_cast<std::ptrdiff_t>(cancel), rhs.letters_.end());
    return FreeWord(std::move(out));
}

FreeWord FreeWord::pow(long k) const {
    if (k == 0 || is_identity()) return {};
    if (k < 0) return inverse().pow(-k);
    if (k == 1) return *this;
    // c r^k c^-1 is already reduced when r is cyclically reduced.
    const CyclicReduction cr = cyclic_reduction(*this);
    std::vector<Letter> out;
    out.reserve(2 * cr.conjugator.size() + static_cast<std::size_t>(k) * cr.core.size());
    out.insert(out.end(), cr.conjugator.letters_.begin(), cr.conjugator.letters_.end());
    for (long i = 0; i < k; ++i) out.insert(out.end(), cr.core.letters_.begin(), cr.core.letters_.end());
    const FreeWord cinv = cr.conjugator.inverse();
    out.insert(out.end(), cinv.letters_.begin(), cinv.letters_.end());
    return FreeWord(std::move(out));
}

std::strong_ordering shortlex_compare(const FreeWord& lhs, const FreeWord& rhs) {
    if (auto c = lhs.size() <=> rhs.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(lhs.letters_.begin(), lhs.letters_.end(), rhs.letters_.begin(),
                                                  rhs.letters_.end());
}

// ---------------------------------------------------------------------------

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

}  // namespace

std::vector<WordToken> tokenize_word(std::string_view text, std::size_t line, std::size_t column_base) {
    std::vector<WordToken> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        const std::size_t column = column_base + start;
        if (text[i] == '1' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
            ++i;  // explicit identity
            continue;
        }
        if (!is_name_start(text[i])) throw ParseError(line, column, "expected a generator name");
        while (i < text.size() && is_name_char(text[i])) ++i;
        WordToken tok{std::string(text.substr(start, i - start)), 1, column};
        if (i < text.size() && text[i] == '^') {
            ++i;
            bool negative = false;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
                negative = text[i] == '-';
                ++i;
            }
            const std::size_t digits = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (digits == i) throw ParseError(line, column_base + digits, "expected an exponent after '^'");
            long k = 0;
            try {
                k = std::stol(std::string(text.substr(digits, i - digits)));
            } catch (const std::out_of_range&) {
                throw ParseError(line, column_base + digits, "exponent out of range");
            }
            if (k == 0) throw ParseError(line, column_base + digits, "exponent must be nonzero");
            tok.exponent = negative ? -k : k;
        }
        if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
            throw ParseError(line, column_base + i, std::string("unexpected character '") + text[i] + "'");
        }
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

FreeWord parse_word(std::string_view text, const GeneratorTable& table, std::size_t line, std::size_t column_base) {
    std::vector<Letter> letters;
    for (const WordToken& tok : tokenize_word(text, line, column_base)) {
        auto g = table.find(tok.name);
        if (!g) throw ParseError(line, tok.column, "unknown generator '" + tok.name + "'");
        const Letter l(*g, tok.exponent < 0);
        for (long k = 0; k < std::labs(tok.exponent); ++k) letters.push_back(l);
    }
    return reduce(letters, table);
}

std::string format_word(const FreeWord& w, const GeneratorTable& table) {
    if (w.is_identity()) return "1";
    std::ostringstream out;
    std::size_t i = 0;
    bool first = true;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        const long run = static_cast<long>(j - i) * w[i].sign();
        if (!first) out << ' ';
        first = false;
        out << table[w[i].generator()].name;
        if (run != 1) out << '^' << run;
        i = j;
    }
    return out.str();
}

// ---------------------------------------------------------------------------

CyclicReduction cyclic_reduction(const FreeWord& w) {
    const auto letters = w.letters();
    std::size_t strip = 0;
    const std::size_t n = letters.size();
    while (2 * strip + 1 < n && letters[strip].cancels(letters[n - 1 - strip])) ++strip;
    return {reduce(letters.subspan(0, strip)), reduce(letters.subspan(strip, n - 2 * strip))};
}

namespace {

// Cyclic permutation starting at offset j: x^-1 w x with x = w[0, j).
FreeWord rotate_word(const FreeWord& w, std::size_t j) {
    std::vector<Letter> out(w.letters().begin() + static_cast<std::ptrdiff_t>(j), w.letters().end());
    out.insert(out.end(), w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(j));
    return reduce(out);
}

FreeWord prefix(const FreeWord& w, std::size_t j) { return reduce(w.letters().subspan(0, j)); }

std::size_t smallest_period(std::span<const Letter> r) {
    const std::size_t n = r.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i) periodic = r[i] == r[i - d];
        if (periodic) return d;
    }
    return n;
}

}  // namespace

FreeWord RootDecomposition::recompose() const { return conjugator * primitive.pow(exponent) * conjugator.inverse(); }

FreeWord RootDecomposition::root_element() const { return conjugator * primitive * conjugator.inverse(); }

RootDecomposition root(const FreeWord& w) {
    if (w.is_identity()) throw DegenerateInputError("root of the identity is undefined");
    const CyclicReduction cr = cyclic_reduction(w);
    const std::size_t period = smallest_period(cr.core.letters());
    const FreeWord q = prefix(cr.core, period);
    const long multiplicity = static_cast<long>(cr.core.size() / period);
    const FreeWord qinv = q.inverse();

    RootDecomposition best;
    bool have = false;
    for (int pass = 0; pass < 2; ++pass) {
        const FreeWord& base = pass == 0 ? q : qinv;
        for (std::size_t j = 0; j < base.size(); ++j) {
            FreeWord p = rotate_word(base, j);
            if (have && !shortlex_less(p, best.primitive)) continue;
            // base = x p x^-1 with x = base[0, j)
            best.primitive = std::move(p);
            best.conjugator = cr.conjugator * prefix(base, j);
            best.exponent = pass == 0 ? multiplicity : -multiplicity;
            have = true;
        }
    }
    return best;
}

std::optional<FreeWord> conjugate_in_free(const FreeWord& u, const FreeWord& v) {
    if (u.is_identity() || v.is_identity()) {
        if (u.is_identity() && v.is_identity()) return FreeWord{};
        return std::nullopt;
    }
    const CyclicReduction cu = cyclic_reduction(u);
    const CyclicReduction cv = cyclic_reduction(v);
    if (cu.core.size() != cv.core.size()) return std::nullopt;
    for (std::size_t j = 0; j < cu.core.size(); ++j) {
        if (rotate_word(cu.core, j) == cv.core) {
            // cv.core = x^-1 cu.core x, x = cu.core[0, j)
            const FreeWord x = prefix(cu.core, j);
            return cv.conjugator * x.inverse() * cu.conjugator.inverse();
        }
    }
    return std::nullopt;
}

FreeWord CyclicMeet::word_conjugator() const {
    return root_v.conjugator * conjugator * root_u.conjugator.inverse();
}

std::pair<long, long> CyclicMeet::minimal_exponents() const {
    const long g = std::gcd(exp_u, exp_v);
    const long m = std::labs(exp_v) / g;
    const long n = sign * exp_u * (exp_v < 0 ? -1 : 1) / g;
    return {m, n};
}

std::optional<CyclicMeet> cyclic_meet(const FreeWord& u, const FreeWord& v) {
    if (u.is_identity() || v.is_identity()) throw DegenerateInputError("cyclic_meet needs nontrivial words");
    RootDecomposition ru = root(u);
    RootDecomposition rv = root(v);
    for (int sign : {1, -1}) {
        const FreeWord target = sign == 1 ? rv.primitive : rv.primitive.inverse();
        if (auto h = conjugate_in_free(ru.primitive, target)) {
            return CyclicMeet{std::move(*h), sign, ru.exponent, rv.exponent, std::move(ru), std::move(rv)};
        }
    }
    return std::nullopt;
}

CosetDecomposition coset_decompose(const FreeWord& u, const FreeWord& x) {
    if (u.is_identity()) throw DegenerateInputError("coset of the trivial subgroup requested");
    // u^k x = c r^k y with u = c r c^-1, r cyclically reduced and y = c^-1 x.
    // r^k cancels against y only along the common prefix of y and the periodic
    // word r^-k; past that prefix every further power lengthens the product
    // by |r|, so the scan stops one step beyond it.
    const CyclicReduction cr = cyclic_reduction(u);
    const std::size_t period = cr.core.size();
    const FreeWord tail = cr.conjugator.inverse() * x;
    const FreeWord core_inv = cr.core.inverse();
    CosetDecomposition best{x, 0};
    for (int sign : {1, -1}) {
        const FreeWord& step = sign > 0 ? cr.core : core_inv;
        const FreeWord& against = sign > 0 ? core_inv : cr.core;
        std::size_t overlap = 0;
        while (overlap < tail.size() && tail[overlap] == against[overlap % period]) ++overlap;
        const long last = static_cast<long>(overlap / period) + 1;
        FreeWord power;  // r^(sign*k), never cancels internally
        for (long k = 1; k <= last; ++k) {
            power = power * step;
            FreeWord candidate = cr.conjugator * (power * tail);
            if (shortlex_less(candidate, best.representative)) {
                best.representative = std::move(candidate);
                best.power = -sign * k;
            }
        }
    }
    return best;
}

FreeWord coset_canonical(const FreeWord& u, const FreeWord& x) { return coset_decompose(u, x).representative; }

CosetDecomposition left_coset_decompose(const FreeWord& x, const FreeWord& u) {
    const CosetDecomposition d = coset_decompose(u, x.inverse());
    return {d.representative.inverse(), -d.power};
}

std::optional<long> power_of(const FreeWord& u, const FreeWord& h) {
    if (u.is_identity()) throw DegenerateInputError("power of the identity requested");
    if (h.is_identity()) return 0;
    // h = u^k forces |h| = 2|c| + |k||r|.
    const CyclicReduction cr = cyclic_reduction(u);
    const long rest = static_cast<long>(h.size()) - 2 * static_cast<long>(cr.conjugator.size());
    const long core = static_cast<long>(cr.core.size());
    if (rest <= 0 || rest % core != 0) return std::nullopt;
    const long k = rest / core;
    for (long candidate : {k, -k}) {
        if (u.pow(candidate) == h) return candidate;
    }
    return std::nullopt;
}

}  // namespace gog

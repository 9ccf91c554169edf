#include "cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "gog/error.hpp"
#include "gog/report.hpp"

namespace gog {

namespace {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 digest failed");
    }
    std::ostringstream os;
    os << "sha256:";
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

OracleBounds parse_bounds(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ParseError(1, 1, "--oracle-bounds expects S,E");
    try {
        const long s = std::stol(text.substr(0, comma));
        const long e = std::stol(text.substr(comma + 1));
        if (s < 1 || e < 1) throw ParseError(1, 1, "oracle bounds must be at least 1");
        return {static_cast<std::size_t>(s), e};
    } catch (const std::logic_error&) {
        throw ParseError(1, 1, "--oracle-bounds expects two integers S,E");
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verdicts for graphs of free groups with infinite cyclic edge groups", "gog"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    bool no_timing = false;
    std::size_t max_edges_warn = EnumerationOptions{}.max_edges_warn;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--no-timing", no_timing, "Omit timing so output is byte-stable");
    app.add_option("--max-edges-warn", max_edges_warn, "Warn when path enumeration runs over more edges");

    std::string file;
    auto* check = app.add_subcommand("check", "Run every decider and report witnesses");
    check->add_option("file", file, "Graph file")->required();

    std::string kind = "complete";
    auto* paths = app.add_subcommand("paths", "List complete or full non-maximal paths");
    paths->add_option("file", file, "Graph file")->required();
    paths->add_option("--kind", kind, "complete or nonmaximal")->check(CLI::IsMember({"complete", "nonmaximal"}));

    std::string from, to, bounds;
    auto* conj = app.add_subcommand("conj", "Decide whether powers of two vertex elements are conjugate");
    conj->add_option("file", file, "Graph file")->required();
    conj->add_option("--from", from, "<vertex>:<word>")->required();
    conj->add_option("--to", to, "<vertex>:<word>")->required();
    conj->add_option("--oracle-bounds", bounds, "Also run a bounded search: S,E");

    std::string relation;
    auto* oracle = app.add_subcommand("oracle", "Evaluate a relation between group words");
    oracle->add_option("file", file, "Graph file")->required();
    oracle->add_option("--relation", relation, "\"<word> = <word>\"")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        const std::string text = read_file(file);
        const std::string digest = sha256_hex(text);
        const GraphOfGroups g = parse_graph(text);
        const EnumerationOptions options{max_edges_warn};

        Json doc;
        if (check->parsed()) {
            doc = check_document(g, digest, options);
        } else if (paths->parsed()) {
            doc = paths_document(g, digest, kind == "complete" ? PathKind::complete : PathKind::nonmaximal, options);
        } else if (conj->parsed()) {
            BassSerreEngine engine(g);
            const VertexElement x = parse_vertex_element(engine.graph(), from);
            const VertexElement y = parse_vertex_element(engine.graph(), to);
            std::optional<OracleBounds> ob;
            if (!bounds.empty()) ob = parse_bounds(bounds);
            doc = conj_document(engine, digest, x, y, ob);
        } else {
            BassSerreEngine engine(g);
            doc = oracle_document(engine, digest, relation);
        }
        if (!no_timing) {
            const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
            doc["timing"] = Json{{"total_ms", std::round(ms.count() * 1000.0) / 1000.0}};
        }
        if (format == "json") {
            out << doc.dump(2) << "\n";
        } else {
            out << render_text(doc);
        }
        return 0;
    } catch (const InternalInconsistency& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace gog

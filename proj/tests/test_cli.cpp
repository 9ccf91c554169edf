#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "doctest.h"

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = gog::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(GOG_TEST_DATA) + "/" + name; }

nlohmann::ordered_json json_of(std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "json", "--no-timing"});
    const Run r = run(args);
    REQUIRE(r.code == 0);
    return nlohmann::ordered_json::parse(r.out);
}

}  // namespace

TEST_CASE("check on BS(2,3)") {
    const auto doc = json_of({"check", data("bs23.gog")});
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["input_digest"].get<std::string>().rfind("sha256:", 0) == 0);
    const auto& a = doc["analysis"];
    CHECK(a["balanced"] == false);
    CHECK(a["bs_subgroup"] == "BS(2,3)");
    CHECK(a["word_hyperbolic"] == false);
    CHECK(a["acyl_hyperbolic"] == false);
    CHECK(a["trichotomy"] == "surjects_Z");
    CHECK(a["rel_hyp_obstruction"] == true);
    CHECK(doc["verification"]["status"] == "verified");
    CHECK_FALSE(doc.contains("timing"));
}

TEST_CASE("check on the trefoil") {
    const auto doc = json_of({"check", data("trefoil.gog")});
    const auto& a = doc["analysis"];
    CHECK(a["balanced"] == true);
    CHECK(a["word_hyperbolic"] == false);
    CHECK(a["trichotomy"] == "cyclic_normal_subgroup");
    CHECK(a["trichotomy_witness"]["element"]["word"] == "a^2");
}

TEST_CASE("malformed input exits 2 with a location") {
    const Run r = run({"check", data("malformed.gog")});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(r.err.find("column") != std::string::npos);
    CHECK(run({"check", data("missing.gog")}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("paths listings") {
    {
        const auto doc = json_of({"paths", data("bs23.gog"), "--kind", "complete"});
        REQUIRE(doc["count"] == 1);
        CHECK(doc["paths"][0]["ratio"] == "3/2");
        CHECK(doc["paths"][0]["level"] == false);
    }
    CHECK(json_of({"paths", data("chain.gog"), "--kind=complete"})["count"] == 0);
    {
        const auto doc = json_of({"paths", data("trefoil.gog"), "--kind", "nonmaximal"});
        REQUIRE(doc["count"] == 1);
        CHECK(doc["paths"][0]["kind"] == "full");
    }
    const auto warned = json_of({"--max-edges-warn", "0", "paths", data("bs23.gog")});
    CHECK(warned["warnings"].size() == 1);
}

TEST_CASE("conj with and without the oracle") {
    {
        const auto doc = json_of({"conj", data("trefoil.gog"), "--from", "v:a", "--to", "w:b", "--oracle-bounds", "1,6"});
        CHECK(doc["answer"]["exists"] == true);
        CHECK(doc["answer"]["m"] == 2);
        CHECK(doc["answer"]["n"] == 3);
        CHECK(doc["oracle"]["agrees"] == true);
        CHECK(doc["oracle"]["hit"]["m"] == 2);
    }
    {
        const auto doc =
            json_of({"conj", data("free_amalgam.gog"), "--from", "v:b", "--to", "w:y", "--oracle-bounds", "2,3"});
        CHECK(doc["answer"]["exists"] == false);
        CHECK(doc["oracle"]["hit"].is_null());
        CHECK(doc["oracle"]["agrees"] == true);
    }
    {
        const auto doc = json_of({"conj", data("bs23.gog"), "--from", "v:a", "--to", "v:a"});
        CHECK(doc["answer"]["m"] == 2);
        CHECK(doc["answer"]["n"] == 3);
        CHECK(doc["answer"]["conjugator"] == "t");
    }
    CHECK(run({"conj", data("trefoil.gog"), "--from", "q:a", "--to", "w:b"}).code == 2);
    CHECK(run({"conj", data("trefoil.gog"), "--from", "v:b", "--to", "w:b"}).code == 2);
    CHECK(run({"conj", data("trefoil.gog"), "--from", "v:z", "--to", "w:b"}).code == 2);
}

TEST_CASE("oracle relations") {
    CHECK(json_of({"oracle", data("bs23.gog"), "--relation", "t a^2 t^-1 = a^3"})["holds"] == true);
    CHECK(json_of({"oracle", data("bs23.gog"), "--relation", "t_t a^2 t_t^-1 = a^4"})["holds"] == false);
    CHECK(json_of({"oracle", data("trefoil.gog"), "--relation", "b a^2 b^-1 = a^2"})["holds"] == true);
    CHECK(run({"oracle", data("bs23.gog"), "--relation", "t a^2 t^-1"}).code == 2);
    CHECK(run({"oracle", data("bs23.gog"), "--relation", "s a = a"}).code == 2);
}

TEST_CASE("reports are deterministic and round-trip") {
    for (const char* f : {"bs23.gog", "trefoil.gog", "free_amalgam.gog", "chain.gog"}) {
        const Run a = run({"--format", "json", "--no-timing", "check", data(f)});
        const Run b = run({"--format", "json", "--no-timing", "check", data(f)});
        CHECK(a.out == b.out);
        CHECK(nlohmann::ordered_json::parse(a.out).dump(2) + "\n" == a.out);
    }
    const auto timed = nlohmann::ordered_json::parse(run({"--format", "json", "check", data("bs23.gog")}).out);
    CHECK(timed.contains("timing"));
}

TEST_CASE("text and JSON reports carry the same verdicts") {
    for (const char* f : {"bs23.gog", "trefoil.gog", "free_amalgam.gog", "chain.gog"}) {
        CAPTURE(f);
        const auto doc = json_of({"check", data(f)});
        const std::string text = run({"--no-timing", "check", data(f)}).out;
        for (const char* key : {"balanced", "bs_subgroup", "word_hyperbolic", "acyl_hyperbolic", "trichotomy",
                                "rel_hyp_obstruction"}) {
            const auto& v = doc["analysis"][key];
            const std::string shown = v.is_null() ? "none" : v.is_string() ? v.get<std::string>() : v.dump();
            CHECK(text.find(std::string("  ") + key + ": " + shown + "\n") != std::string::npos);
        }
        for (const auto& c : doc["verification"]["checks"]) {
            CHECK(text.find(c["claim"].get<std::string>()) != std::string::npos);
        }
    }
}

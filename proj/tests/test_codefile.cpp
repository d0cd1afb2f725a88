#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "cshield/codefile.hpp"
#include "cshield/construct.hpp"
#include "cshield/oblivious.hpp"
#include "helpers/reference_codes.hpp"

using namespace cshield;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}
std::string codes_dir() { return CSHIELD_CODES_DIR; }
}  // namespace

TEST_CASE("bundled files parse into the expected codes", "[codefile]") {
    SECTION("shor16 passes the structural check") {
        const CodeFile file = parse_code_file(slurp(codes_dir() + "/shor16.code"));
        CHECK(file.name == "shor16");
        CHECK(file.n == 16);
        const StabilizerGroup s = to_group(file);
        CHECK(obliviousness_check(s).verdict);
    }
    SECTION("qrm16 has all-positive signs") {
        const CodeFile file = parse_code_file(slurp(codes_dir() + "/qrm16.code"));
        const StabilizerGroup s = to_group(file);
        for (const auto& g : s.generators) CHECK(g.sign == +1);
        CHECK_FALSE(obliviousness_check(s).verdict);
    }
    SECTION("seed513 is a valid non-CSS group") {
        const CodeFile file = parse_code_file(slurp(codes_dir() + "/seed513.code"));
        CHECK(file.kind == CodeFile::Kind::stab);
        CHECK(validate(to_group(file)).verdict);
    }
    SECTION("code512 matches the reference construction") {
        const CodeFile file = parse_code_file(slurp(codes_dir() + "/code512.code"));
        const CssCode css = to_css_code(file);
        CHECK(css.y == BinaryVector::from_string("10101"));
        CHECK(obliviousness_check(to_stabilizer_group(css)).verdict);
    }
    SECTION("dualrail has one negative Z generator") {
        const CodeFile file = parse_code_file(slurp(codes_dir() + "/dualrail.code"));
        const StabilizerGroup s = to_group(file);
        REQUIRE(s.generators.size() == 1);
        CHECK(s.generators[0].sign == -1);
    }
}

TEST_CASE("serialize(parse(file)) reproduces every bundled file byte for byte", "[codefile]") {
    for (const char* name : {"shor16", "qrm16", "seed513", "code512", "dualrail"}) {
        const std::string text = slurp(codes_dir() + "/" + name + ".code");
        CHECK(serialize(parse_code_file(text)) == text);
    }
}

TEST_CASE("parse errors carry line numbers", "[codefile]") {
    SECTION("missing header") {
        CHECK_THROWS_AS(parse_code_file("gen + X:1 Z:0\n"), SyntaxError);
    }
    SECTION("bad bitstring length") {
        try {
            parse_code_file("code t\nn 3\nkind css\nzgen 11\n");
            FAIL("expected SyntaxError");
        } catch (const SyntaxError& e) {
            CHECK(e.line == 4);
        }
    }
    SECTION("unknown directive") {
        CHECK_THROWS_AS(parse_code_file("code t\nn 2\nkind css\nwat 11\n"), SyntaxError);
    }
    SECTION("bad sign token") {
        CHECK_THROWS_AS(parse_code_file("code t\nn 1\nkind stab\ngen * X:1 Z:0\n"), SyntaxError);
    }
    SECTION("duplicate character vector") {
        CHECK_THROWS_AS(parse_code_file("code t\nn 2\nkind css\ny 00\ny 00\n"), SyntaxError);
    }
    SECTION("comments and blank lines are fine") {
        const CodeFile file = parse_code_file("# header\ncode t # trailing\n\nn 2\nkind css\nzgen 11\n");
        CHECK(file.zgens.row_count() == 1);
    }
}

TEST_CASE("validation failures name the offending pair", "[codefile]") {
    const std::string text = "code bad\nn 1\nkind stab\ngen + X:1 Z:0\ngen + X:0 Z:1\n";
    try {
        to_group(parse_code_file(text));
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("0 and 1 anticommute") != std::string::npos);
    }
}

TEST_CASE("parser survives malformed input", "[codefile][property]") {
    std::mt19937_64 rng(127);
    const std::string alphabet = "codegnkistabxzy 01+-#:\nqw";
    for (int trial = 0; trial < 500; ++trial) {
        std::string text;
        const std::size_t len = rng() % 120;
        for (std::size_t i = 0; i < len; ++i) text.push_back(alphabet[rng() % alphabet.size()]);
        try {
            parse_code_file(text);
        } catch (const Error&) {
            // malformed input must fail through the error hierarchy, never crash
        }
    }
    SUCCEED("no crashes");
}

TEST_CASE("round trip on generated files", "[codefile][property]") {
    // a lifted code written out and re-read is the same file
    ConstructionSpec spec;
    spec.seed = testhelpers::seed513_group();
    spec.m_copies = 2;
    const StabilizerGroup lifted = construct_stabilizer_lift(spec);
    CodeFile file;
    file.name = "lifted";
    file.n = lifted.n;
    file.kind = CodeFile::Kind::stab;
    file.gens = lifted.generators;
    const CodeFile reparsed = parse_code_file(serialize(file));
    CHECK(reparsed == file);
}

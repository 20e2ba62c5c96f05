#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gla/cli.hpp"
#include "gla/io.hpp"

using namespace gla;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = std::string("/tmp/gla_test_") + name;
    std::ofstream f(path);
    f << text;
    return path;
}

const char* kFree2 =
    "gla 1\n"
    "p 5\n"
    "class 3\n"
    "gens\n"
    "x 1\n"
    "y 1\n"
    "rels\n";

struct CliResult {
    int code;
    std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse: minimal free file") {
    auto f = parse_algebra(kFree2);
    CHECK(f.p == 5);
    CHECK(f.class_c == 3);
    CHECK(f.algebra->dims() == GradedDims{0, 2, 1, 2});
    CHECK(f.relations.empty());
    CHECK(f.algebra == f.free_alg);
}

TEST_CASE("parse: relation quotient and normalization") {
    auto f = parse_algebra(
        "# comment\n"
        "gla 1\n"
        "p 5\n"
        "class 3\n"
        "gens\n"
        "y 1\n"
        "x 1   # generators may come in any order\n"
        "rels\n"
        "6*[x,y]\n");
    CHECK(f.algebra->dims() == GradedDims{0, 2, 0, 0});
    // canonical generator order and reduced coefficient
    CHECK(f.gens[0].name == "x");
    REQUIRE(f.relations.size() == 1);
    CHECK(f.relations[0].coords(2) == Vec{4});  // 6*[x,y] = -[y,x] = 4*[y,x]
}

TEST_CASE("parse: error reporting") {
    CHECK_THROWS_WITH_AS(parse_algebra("gla 2\n"), doctest::Contains("line 1"),
                         const Error&);
    CHECK_THROWS_WITH_AS(
        parse_algebra("gla 1\np 6\nclass 3\ngens\nx 1\nrels\n"),
        doctest::Contains("not prime"), const Error&);
    CHECK_THROWS_WITH_AS(
        parse_algebra("gla 1\np 5\nclass 4\ngens\nx 1\nrels\n"),
        doctest::Contains("class"), const Error&);
    CHECK_THROWS_WITH_AS(
        parse_algebra("gla 1\np 5\nclass 3\ngens\nx 1\nrels\n1*[x,z]\n"),
        doctest::Contains("unknown generator"), const Error&);
    // inhomogeneous relation
    CHECK_THROWS_WITH_AS(
        parse_algebra("gla 1\np 5\nclass 3\ngens\nx 1\ny 1\nrels\n1*x + 1*[x,y]\n"),
        doctest::Contains("not homogeneous"), const Error&);
    CHECK_THROWS_WITH_AS(
        parse_algebra("gla 1\np 5\nclass 3\ngens\nx 1\nx 1\nrels\n"),
        doctest::Contains("duplicate"), const Error&);
}

TEST_CASE("print/parse round trip is byte-exact") {
    std::vector<std::string> sources = {
        kFree2,
        "gla 1\np 7\nclass 2\ngens\na 1\nb 1\nc 2\nrels\n1*[a,b] + 3*c\n",
        "gla 1\np 5\nclass 3\ngens\nx 1\ny 1\nz 1\nrels\n"
        "1*[[x,y],z] + 2*[[y,x],x]\n2*[z,y]\n",
    };
    for (const auto& src : sources) {
        auto f = parse_algebra(src);
        std::string once = print_algebra(f);
        auto g = parse_algebra(once);
        CHECK(print_algebra(g) == once);
        CHECK(g.algebra->dims() == f.algebra->dims());
    }
}

TEST_CASE("to_file reconstructs presented algebras") {
    auto f = parse_algebra(
        "gla 1\np 5\nclass 3\ngens\nx 1\ny 1\nrels\n1*[[x,y],y]\n");
    auto g = to_file(f.algebra);
    CHECK(g.algebra->dims() == f.algebra->dims());
    CHECK(print_algebra(g) == print_algebra(f));
}

TEST_CASE("cli: delta on the free two-generator file") {
    auto path = write_temp("free2.gla", kFree2);
    auto r = cli({"delta", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("o=(2,0,0) ideal=(0,0) d2=2 d3=2") != std::string::npos);
}

TEST_CASE("cli: strong and css verdicts drive the exit status") {
    auto path = write_temp(
        "weak.gla",
        "gla 1\np 5\nclass 2\ngens\nx 1\ny 1\nz 1\nrels\n1*[y,x]\n1*[z,x]\n1*[z,y]\n");
    auto weak = cli({"strong", path, "--gens", "1*x", "--level", "2"});
    CHECK(weak.code == 1);
    CHECK(weak.out.find("strong=no") != std::string::npos);
    CHECK(weak.out.find("witness") != std::string::npos);

    auto path2 = write_temp("free2b.gla", kFree2);
    auto ok = cli({"strong", path2, "--gens", "1*x"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("strong=yes exact=yes") != std::string::npos);

    auto c = cli({"css", path, "--gens", "1*x", "--level", "2"});
    CHECK(c.code == 0);
    CHECK(c.out.find("dims=(3,0,0)") != std::string::npos);
}

TEST_CASE("cli: kc-check, adjoin, divisor, functor-f, gamma") {
    auto path = write_temp("free2c.gla", kFree2);
    CHECK(cli({"kc-check", path}).out.find("member=yes") != std::string::npos);

    auto adj = cli({"adjoin", path, "--degree", "2", "--out", "/tmp/gla_test_adj.gla"});
    CHECK(adj.code == 0);
    CHECK(adj.out.find("dims=(2,2,4) delta=3") != std::string::npos);
    CHECK(cli({"delta", "/tmp/gla_test_adj.gla"}).out.find("d3=3") != std::string::npos);

    auto dv = cli({"divisor", path, "--b", "1*x", "--e", "1*[[x,y],y]"});
    CHECK(dv.code == 0);
    CHECK(dv.out.find("dims=(2,2,3) delta=2") != std::string::npos);
    // solvable problem: error with nonzero status
    auto bad = cli({"divisor", path, "--b", "1*x", "--e", "1*[y,x]"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("error:") != std::string::npos);

    auto k2 = write_temp("k2.gla", "gla 1\np 5\nclass 2\ngens\nx 1\ny 1\nrels\n");
    auto ff = cli({"functor-f", k2});
    CHECK(ff.code == 0);
    CHECK(ff.out.find("dims=(2,1,2)") != std::string::npos);

    auto base = write_temp("k2base.gla", "gla 1\np 5\nclass 2\ngens\nx 1\nrels\n");
    auto g = cli({"gamma", base, k2});
    CHECK(g.code == 0);
    CHECK(g.out.find("kernel3=0") != std::string::npos);
}

TEST_CASE("cli: amalgam with a shared base by generator names") {
    auto a = write_temp("am_a.gla", "gla 1\np 5\nclass 3\ngens\nb 1\nu 1\nrels\n");
    auto c = write_temp("am_c.gla", "gla 1\np 5\nclass 3\ngens\nb 1\nv 1\nrels\n");
    auto base = write_temp("am_b.gla", "gla 1\np 5\nclass 3\ngens\nb 1\nrels\n");
    auto r = cli({"amalgam", a, c, "--base", base});
    CHECK(r.code == 0);
    CHECK(r.out.find("dims=(3,3,8) delta=3") != std::string::npos);  // free on 3 gens
    auto s = cli({"amalgam", a, c, "--base", base, "--mode", "strong"});
    // conflict-free: the strong amalgam coincides with the free one
    CHECK(s.out.find("dims=(3,3,8) delta=3") != std::string::npos);
}

TEST_CASE("cli: generic-build replay is byte-identical") {
    std::vector<std::string> args = {"generic-build", "--seed", "42",
                                     "--steps", "4", "--catalog", "free1,free2,div",
                                     "--out", "/tmp/gla_test_gen.gla"};
    auto r1 = cli(args);
    std::ifstream f1("/tmp/gla_test_gen.gla");
    std::stringstream s1;
    s1 << f1.rdbuf();
    auto r2 = cli(args);
    std::ifstream f2("/tmp/gla_test_gen.gla");
    std::stringstream s2;
    s2 << f2.rdbuf();
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
    CHECK(s1.str() == s2.str());
    CHECK_FALSE(s1.str().empty());
}

TEST_CASE("cli: bch checks and p<5 rejection") {
    auto path = write_temp("free2d.gla", kFree2);
    auto r = cli({"bch", path, "--seed", "9", "--trials", "50"});
    CHECK(r.code == 0);
    CHECK(r.out.find("check associativity pass") != std::string::npos);
    CHECK(r.out.find("check recovery-roundtrip pass") != std::string::npos);
    auto rt = cli({"bch", path, "--seed", "9", "--trials", "20", "--check-roundtrip"});
    CHECK(rt.code == 0);
    CHECK(rt.out.find("associativity") == std::string::npos);

    auto p3 = write_temp("p3.gla", "gla 1\np 3\nclass 3\ngens\nx 1\nrels\n");
    auto bad = cli({"bch", p3, "--seed", "1"});
    CHECK(bad.code == 2);
}

TEST_CASE("cli: verify is deterministic") {
    std::ostringstream e1, e2;
    auto r1 = cli({"verify", "--seed", "42", "--trials", "10"});
    auto r2 = cli({"verify", "--seed", "42", "--trials", "10"});
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.out.find("verdict pass") != std::string::npos);
    // missing mandatory seed is a usage error
    CHECK(cli({"verify"}).code == 2);
}

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "pcsp/io.hpp"
#include "pcsp/oracle.hpp"

using namespace pcsp;
using io::ParseError;

namespace {

int error_line(const std::string& text) {
    try {
        io::parse_problem(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST_CASE("parse a minimal problem") {
    const Problem p = io::parse_problem("problem tiny\nvar x : a b\n");
    CHECK(p.name() == "tiny");
    CHECK(p.variables().size() == 1);
    CHECK(p.constraints().empty());
    CHECK(p.variable("x").domain().size() == 2);
}

TEST_CASE("parse constraints with comments and multi-line tuple blocks") {
    const Problem p = io::parse_problem(
        "# a toy\n"
        "problem toy\n"
        "var x : a b\n"
        "var y : a b   # two labels\n"
        "\n"
        "constraint k1 0.8 on x y forbid {\n"
        "    a a ;\n"
        "    b b\n"
        "}\n"
        "constraint k2 1 on y allow { a ; }\n"
        "constraint k3 0.5 on x forbid {}\n");
    CHECK(p.constraints().size() == 3);
    const ValuedConstraint* k1 = p.find_constraint("k1");
    REQUIRE(k1 != nullptr);
    CHECK(k1->necessity() == deg("0.8"));
    CHECK(k1->constraint().tuples().size() == 2);
    CHECK(k1->constraint().mode() == ConstraintMode::Forbid);
    const ValuedConstraint* k2 = p.find_constraint("k2");
    REQUIRE(k2 != nullptr);
    CHECK(k2->constraint().tuples().size() == 1);
    CHECK(k2->constraint().mode() == ConstraintMode::Allow);
    const ValuedConstraint* k3 = p.find_constraint("k3");
    REQUIRE(k3 != nullptr);
    CHECK(k3->constraint().tuples().empty());
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(error_line("var x : a\n") == 1);
    CHECK(error_line("problem p\nwhatever\n") == 2);
    CHECK(error_line("problem p\nvar x :\n") == 2);
    CHECK(error_line("problem p\nvar x : a a\n") == 2);
    CHECK(error_line("problem p\nvar x : a\nvar x : b\n") == 3);
    CHECK(error_line("problem p\nvar x : a\nconstraint k 1.5 on x forbid {}\n") == 3);
    CHECK(error_line("problem p\nvar x : a\nconstraint k 1 on y forbid {}\n") == 3);
    CHECK(error_line("problem p\nvar x : a\nconstraint k 1 on x forbid { a a }\n") == 3);
    CHECK(error_line("problem p\nvar x : a\nconstraint k 1 on x forbid { b }\n") == 3);
    CHECK(error_line("problem p\nvar x : a\nconstraint k 1 on x allow { a }\n"
                     "constraint k 1 on x allow { a }\n") == 4);
    CHECK(error_line("problem p\nvar x : a\nconstraint k 1 on x x forbid {}\n") == 3);
    CHECK(error_line("problem p\nvar x : a\nconstraint k 1 on x forbid { a\n") == 3);
    CHECK(error_line("problem p\nvar x : a\nconstraint k 1 on x forbid { a } junk\n") == 3);
    CHECK(error_line("problem p\nproblem q\n") == 2);
    CHECK(error_line("") == 1);
}

TEST_CASE("parse rejects unterminated tuple blocks at their opening line") {
    CHECK(error_line("problem p\nvar x : a\nconstraint k 1 on x forbid {\n a ;\n") == 3);
}

TEST_CASE("the menu problem round trips through text") {
    const std::string text = io::write_problem(menu());
    const Problem again = io::parse_problem(text);
    CHECK(again == menu());
    CHECK(io::write_problem(again) == text);
}

TEST_CASE("random problems round trip through text") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const Problem p = io::random_problem(property_spec(seed, 5));
        CHECK(io::parse_problem(io::write_problem(p)) == p);
    }
}

TEST_CASE("the menu matches its expectations") {
    const Problem& p = menu();
    CHECK(p.name() == "menu");
    REQUIRE(p.variables().size() == 4);
    CHECK(p.variables()[0].name() == "drink");
    CHECK(p.variables()[1].name() == "entrance");
    CHECK(p.variables()[2].name() == "dish");
    CHECK(p.variables()[3].name() == "dessert");
    REQUIRE(p.constraints().size() == 15);

    const std::pair<const char*, const char*> necessities[] = {
        {"a", "0.8"}, {"b", "0.3"}, {"c", "0.2"}, {"d", "0.7"}, {"e", "0.9"},
        {"f", "0.2"}, {"g", "0.9"}, {"h", "0.9"}, {"i", "0.5"}, {"j", "0.4"},
        {"k", "0.6"}, {"l", "0.5"}, {"m", "1"},   {"n", "0.8"}, {"o", "0.2"},
    };
    for (const auto& [id, necessity] : necessities) {
        const ValuedConstraint* vc = p.find_constraint(id);
        REQUIRE_MESSAGE(vc != nullptr, id);
        CHECK_MESSAGE(vc->necessity() == deg(necessity), id);
    }
    CHECK(p.find_constraint("m")->constraint().arity() == 1);
    CHECK(p.find_constraint("o")->constraint().mode() == ConstraintMode::Allow);
}

TEST_CASE("menu fixture file matches the builtin") {
#ifdef PCSP_DATA_DIR
    std::ifstream in(std::string(PCSP_DATA_DIR) + "/menu.pcsp");
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(io::parse_problem(buffer.str()) == menu());
    CHECK(buffer.str() == io::write_problem(menu()));
#endif
}

TEST_CASE("random problems are deterministic in the seed") {
    io::GeneratorSpec spec;
    spec.seed = 42;
    spec.n_vars = 4;
    spec.domain_size = 3;
    spec.n_constraints = 5;
    spec.max_arity = 3;
    spec.tightness = 0.6;
    spec.necessity_levels = {deg("0.2"), deg("0.5"), deg("1")};
    const Problem a = io::random_problem(spec);
    const Problem b = io::random_problem(spec);
    CHECK(a == b);
    spec.seed = 43;
    CHECK(io::random_problem(spec) != a);
}

TEST_CASE("random problems respect their spec") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const io::GeneratorSpec spec = property_spec(seed, 5);
        const Problem p = io::random_problem(spec);
        CHECK(p.variables().size() == static_cast<std::size_t>(spec.n_vars));
        CHECK(p.constraints().size() == static_cast<std::size_t>(spec.n_constraints));
        for (const auto& var : p.variables()) {
            CHECK(var.domain().size() == static_cast<std::size_t>(spec.domain_size));
        }
        for (const auto& vc : p.constraints()) {
            const std::size_t arity = vc.constraint().arity();
            CHECK(arity >= 1);
            CHECK(arity <= static_cast<std::size_t>(spec.max_arity));
            CHECK(vc.constraint().mode() == ConstraintMode::Forbid);
            double cross = 1.0;
            for (std::size_t i = 0; i < arity; ++i) cross *= spec.domain_size;
            CHECK(vc.constraint().tuples().size() ==
                  static_cast<std::size_t>(std::llround(spec.tightness * cross)));
            const bool known = std::find(spec.necessity_levels.begin(),
                                         spec.necessity_levels.end(),
                                         vc.necessity()) != spec.necessity_levels.end();
            CHECK(known);
        }
    }
}

TEST_CASE("tightness extremes pin the consistency degree") {
    io::GeneratorSpec spec;
    spec.seed = 7;
    spec.n_vars = 3;
    spec.domain_size = 3;
    spec.n_constraints = 4;
    spec.max_arity = 2;

    spec.tightness = 0.0;
    CHECK(oracle::enumerate_best(io::random_problem(spec)).consistency == Degree::one());

    spec.tightness = 1.0;
    spec.necessity_levels = {Degree::one()};
    CHECK(oracle::enumerate_best(io::random_problem(spec)).consistency == Degree::zero());
}

TEST_CASE("generator rejects impossible specs") {
    io::GeneratorSpec spec;
    spec.max_arity = 5;
    spec.n_vars = 3;
    CHECK_THROWS_AS(io::random_problem(spec), Error);
    spec = {};
    spec.necessity_levels = {Degree::zero()};
    CHECK_THROWS_AS(io::random_problem(spec), Error);
    spec = {};
    spec.necessity_levels.clear();
    CHECK_THROWS_AS(io::random_problem(spec), Error);
    spec = {};
    spec.tightness = 1.5;
    CHECK_THROWS_AS(io::random_problem(spec), Error);
    spec = {};
    spec.n_vars = 0;
    CHECK_THROWS_AS(io::random_problem(spec), Error);
}

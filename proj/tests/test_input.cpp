#include <doctest.h>

#include "projkit/error.hpp"
#include "projkit/input.hpp"
#include "support.hpp"

using namespace projkit;
using projkit::testing::q;

namespace {

ErrorKind kind_of(const std::string &text)
{
    try {
        parse_input(text);
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::PreconditionViolated;
}

} // namespace

TEST_CASE("parse_input: full document")
{
    const InputDocument doc = parse_input(R"ini(order = 9
; a comment
[params]
k = -2/3

[structure]
A = "k*exp(x)"
D = "1"

[field X]
a = "0"
b = "1"

[field V]
a = 2*x
b = "y + k"

[pencil]
P0 = "1"
Q0 = "k*x"
Pinf = "0"
Qinf = "1"
)ini");
    CHECK(doc.order == 9);
    CHECK(doc.params.at("k") == q(-2, 3));
    REQUIRE(doc.structure);
    CHECK((*doc.structure)[0] == "k*exp(x)");
    CHECK((*doc.structure)[1] == "0");
    REQUIRE(doc.fields.size() == 2);
    CHECK(doc.fields[0].first == "X");
    CHECK(doc.fields[1].first == "V");
    CHECK(doc.fields[1].second[0] == "2*x");

    const ProjectiveStructure pi = doc.structure_at(doc.order);
    CHECK(pi.order() == 9);
    CHECK(pi.A().coeff(1, 0) == q(-2, 3));
    CHECK(pi.D().constant_term() == 1);
    CHECK(pi.C().is_zero());
    CHECK(doc.field_at("V", 9).b.constant_term() == q(-2, 3));
    CHECK(doc.pencil_at(9).omega0().Q().coeff(1, 0) == q(-2, 3));
}

TEST_CASE("parse_input: defaults and missing sections")
{
    const InputDocument doc = parse_input("[structure]\nA = \"x\"\n");
    CHECK(doc.order == kDefaultOrder);
    CHECK(doc.fields.empty());
    CHECK_FALSE(doc.pencil);
    CHECK_THROWS_AS(doc.pencil_at(6), Error);
    CHECK_THROWS_AS(doc.field_at("X", 6), Error);

    const InputDocument empty = parse_input("");
    CHECK_FALSE(empty.structure);
    CHECK_THROWS_AS(empty.structure_at(6), Error);
}

TEST_CASE("parse_input: errors")
{
    CHECK(kind_of("[structure]\nA = \"x +\"\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("[structure]\nA = \"a*x\"\n") == ErrorKind::UnboundParameter);
    CHECK(kind_of("[structure]\nE = \"x\"\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("[pencil]\nP0 = \"1\"\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("[surface]\nA = 1\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("order = twelve\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("order = 0\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("[params]\nk = 1/0\n") == ErrorKind::NonUnitDivisor);
    CHECK(kind_of("[structure]\nA = 1\n[structure]\nB = 2\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("[field X]\nc = 1\n") == ErrorKind::SyntaxError);
    CHECK(kind_of("this is not ini\n") == ErrorKind::SyntaxError);
}

#include <doctest.h>

#include <algorithm>
#include <set>

#include <json.hpp>

#include "projkit/error.hpp"
#include "projkit/verify.hpp"
#include "support.hpp"

using namespace projkit;
using projkit::testing::q;
using projkit::testing::RandomSource;

namespace {

const Check *find_check(const Report &r, const std::string &prefix)
{
    for (const auto &c : r.checks) {
        if (c.name.rfind(prefix, 0) == 0) {
            return &c;
        }
    }
    return nullptr;
}

bool all_pass(const Report &r)
{
    return std::all_of(r.checks.begin(), r.checks.end(), [](const Check &c) { return c.verdict == Verdict::Pass; });
}

ErrorKind kind_of(const std::function<void()> &f)
{
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::PreconditionViolated;
}

} // namespace

TEST_CASE("registry matches the manifest and its expressions parse")
{
    std::vector<std::string> ids;
    for (const auto &c : registry()) {
        ids.push_back(c.id);
    }
    std::vector<std::string> manifest = case_manifest();
    std::sort(manifest.begin(), manifest.end());
    CHECK(ids == manifest);
    CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == 14);

    for (const auto &c : registry()) {
        CAPTURE(c.id);
        const ParamEnv env = resolve_params(c, {});
        CHECK_NOTHROW(build_structure(c, env, 6));
        CHECK(build_fields(c, env, 6).size() == c.fields.size());
        if (c.pencil) {
            CHECK(build_pencil(c, env, 6).has_value());
        }
        CHECK(c.samples.size() >= 1);
        for (const auto &s : c.samples) {
            CHECK_NOTHROW(resolve_params(c, s.env));
        }
        if (!c.params.empty()) {
            CHECK(c.samples.size() >= 3);
        }
    }
}

TEST_CASE("run_case: examples")
{
    const Report ib = run_case("thm41.i.b", {}, 12);
    CHECK(ib.ok());
    CHECK(all_pass(ib));
    CHECK(ib.params.at("g0") == 1);
    CHECK(ib.params.at("g1") == 1);
    CHECK(find_check(ib, "pencil reproduces structure")->verdict == Verdict::Pass);

    const Report iv = run_case("thm31.iv", {}, 12);
    CHECK(all_pass(iv));
    CHECK(find_check(iv, "symmetry dimension")->detail.find("dimension 8 at order 12, 8 at order 13") !=
          std::string::npos);
    CHECK(find_check(iv, "linearizable")->verdict == Verdict::Pass);

    const Report iia = run_case("thm41.ii.a", {{"gamma", q(1)}}, 12);
    CHECK(all_pass(iia));
    CHECK(find_check(iia, "(alpha, beta) lies")->detail == "(alpha, beta) = (1, -1)");
    const ProjectiveStructure pi = build_structure(find_case("thm41.ii.a"), resolve_params(find_case("thm41.ii.a"), {}));
    CHECK(agree(pi.A(), expand("exp(x)")));
    CHECK(agree(pi.B(), expand("-1")));

    const Report ib31 = run_case("thm31.i.b", {}, 8);
    CHECK(ib31.ok());
    const Check *liou = find_check(ib31, "liouville");
    REQUIRE(liou);
    CHECK(liou->verdict == Verdict::PaperInconsistent);
    CHECK(find_check(ib31, "not linearizable")->verdict == Verdict::Pass);
}

TEST_CASE("run_case: errors")
{
    CHECK(kind_of([] { run_case("thm31.v", {}, 6); }) == ErrorKind::UnknownCase);
    CHECK(kind_of([] { run_case("thm31.ii.a", {{"alpha", q(0)}, {"beta", q(2)}}, 6); }) ==
          ErrorKind::InadmissibleParameters);
    CHECK(kind_of([] { run_case("thm31.ii.a", {{"alpha", q(0)}, {"beta", q(1, 2)}}, 6); }) ==
          ErrorKind::InadmissibleParameters);
    CHECK(kind_of([] { run_case("thm41.ii.a", {{"gamma", q(0)}}, 6); }) == ErrorKind::InadmissibleParameters);
    CHECK(kind_of([] { run_case("thm41.ii.b.1", {{"lambda", q(0)}}, 6); }) == ErrorKind::InadmissibleParameters);
    CHECK(kind_of([] { run_case("thm31.iii", {{"alpha", q(1)}}, 6); }) == ErrorKind::InadmissibleParameters);
    CHECK(kind_of([] { run_case("sl2.exotic", {{"c3", q(1)}}, 6); }) == ErrorKind::InadmissibleParameters);
    // (0, 1/2) is excluded only with alpha = 0.
    CHECK(run_case("thm31.ii.a", {{"alpha", q(1)}, {"beta", q(1, 2)}}, 6).ok());
}

TEST_CASE("cubic_curve_residual")
{
    CHECK(cubic_curve_residual(q(0)) == 0);
    CHECK(cubic_curve_point(q(0))[0] == 0);
    CHECK(cubic_curve_point(q(0))[1] == 2);
    CHECK(cubic_curve_residual(q(1)) == 0);
    CHECK(cubic_curve_point(q(1))[0] == 1);
    CHECK(cubic_curve_point(q(1))[1] == -1);
    CHECK(cubic_curve_point(q(1, 2))[0] == q(-1, 4));
    CHECK(cubic_curve_point(q(1, 2))[1] == q(5, 4));
    CHECK(cubic_curve(q(0), q(1, 2)) == 0);
    CHECK(cubic_curve(q(1), q(0)) != 0);

    RandomSource rng(60);
    for (int k = 0; k < 50; ++k) {
        const Rational g = rng.rational(9);
        CHECK(cubic_curve_residual(g) == 0);
    }
}

TEST_CASE("alpha_ode_solve")
{
    const Jet2 one = alpha_ode_solve(q(1), {q(1), q(0), q(0), q(0)}, 12);
    CHECK(agree(one, Jet2::constant(q(1))));
    CHECK(kind_of([] { alpha_ode_solve(q(1), {q(0), q(1), q(0), q(0)}, 8); }) == ErrorKind::PreconditionViolated);

    RandomSource rng(61);
    for (int k = 0; k < 8; ++k) {
        const Rational c = rng.nonzero_rational();
        const std::array<Rational, 4> j{q(1), rng.rational(), rng.rational(), rng.rational()};
        const Jet2 a = alpha_ode_solve(c, j, 12);
        CHECK(alpha_ode_residual(c, a).is_zero());
        CHECK(alpha_ode_residual(c, a).effective_order() == 8);
        // Independent oracle: the equation at x = 0 in derivative values gives alpha''''(0).
        const Rational c2 = c * c, c4 = c2 * c2;
        const Rational a4 = -(c4 * (j[0] * j[2] - j[1] * j[1]) - 3 * c2 * (j[0] * j[3] - j[1] * j[2]) +
                              j[1] * j[3] - 3 * j[2] * j[2]) /
                            (2 * j[0]);
        CHECK(a.coeff(4, 0) == a4 / 24);
        CHECK(a.coeff(2, 0) == j[2] / 2);
        CHECK(a.coeff(3, 0) == j[3] / 6);
    }
}

TEST_CASE("affine_family_checks")
{
    CHECK(all_pass(affine_family_checks({}, 10)));
    const Report degenerate = affine_family_checks({{"gamma0", q(0)}, {"delta0", q(0)}}, 10);
    CHECK(all_pass(degenerate));
    const Report c2 = affine_family_checks({{"c", q(2)}, {"j1", q(1, 2)}, {"a", q(-3)}}, 10);
    CHECK(all_pass(c2));
    CHECK(find_check(c2, "(i.b) extension: -d/dx")->verdict == Verdict::Pass);
    CHECK(kind_of([] { affine_family_checks({{"alpha0", q(4)}}, 8); }) == ErrorKind::PreconditionViolated);
    CHECK(kind_of([] { affine_family_checks({{"j2", q(1)}}, 8); }) == ErrorKind::PreconditionViolated);
    CHECK(kind_of([] { affine_family_checks({{"c", q(0)}}, 8); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("flat_criteria_checks")
{
    // g = 1: (0, 0, 1, 1) normalizes to (2/27, -1/3, 0, 1) (by hand: phi' = -1/3),
    // so the printed identity leaves 3(-1/3)(4/729) + (-2/9)^2 = 32/729.
    const Report r = flat_criteria_checks({{"g1", q(0)}}, 12);
    CHECK(r.ok());
    const Check *printed = find_check(r, "(i.a.1) flatness identity 3(4B+1)");
    REQUIRE(printed);
    CHECK(printed->verdict == Verdict::PaperInconsistent);
    CHECK(printed->residual_leading_term == "32/729");
    CHECK(find_check(r, "(i.a.1) flatness identity 27(4B+1)")->verdict == Verdict::Pass);
    CHECK(find_check(r, "(i.a.1) f'")->verdict == Verdict::Pass);
    // g' = 0 at the origin: the (i.a.2) root cannot be rebuilt.
    CHECK(find_check(r, "(i.a.2) g'")->verdict == Verdict::Recorded);
    CHECK(find_check(r, "(i.b) Riccati pencil reproduces")->verdict == Verdict::Pass);

    const Report d = flat_criteria_checks({}, 12);
    CHECK(find_check(d, "(i.a.2) flatness identity")->verdict == Verdict::Pass);
    CHECK(find_check(d, "(i.a.2) g'")->verdict == Verdict::Pass);
    CHECK(kind_of([] { flat_criteria_checks({{"g0", q(0)}}, 8); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("exotic_sl2_check")
{
    const Report zero = exotic_sl2_check(q(0), q(0), 10);
    CHECK(all_pass(zero));
    CHECK(find_check(zero, "invariant structures contain")->verdict == Verdict::Pass);
    const Report one = exotic_sl2_check(q(1), q(0), 10);
    CHECK(all_pass(one));
    CHECK(find_check(one, "invariant structures form a single point")->detail == "dimension 0");
    CHECK(find_check(one, "[X, Z] = Y")->verdict == Verdict::Pass);
}

TEST_CASE("run_all: deterministic, order-robust, no failures")
{
    const auto a = run_all(6);
    const auto b = run_all(6);
    CHECK(to_json(a) == to_json(b));
    CHECK(to_text(a) == to_text(b));
    const auto c = run_all(12);
    REQUIRE(a.size() == c.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CAPTURE(a[k].case_id);
        CHECK(a[k].case_id == c[k].case_id);
        CHECK(a[k].ok());
        CHECK(c[k].ok());
        REQUIRE(a[k].checks.size() == c[k].checks.size());
        for (std::size_t j = 0; j < a[k].checks.size(); ++j) {
            CHECK(a[k].checks[j].name == c[k].checks[j].name);
            CHECK(a[k].checks[j].verdict == c[k].checks[j].verdict);
        }
    }
    CHECK(std::is_sorted(c.begin(), c.end(), [](const Report &x, const Report &y) { return x.case_id < y.case_id; }));
    std::set<std::string> seen;
    for (const auto &r : c) {
        seen.insert(r.case_id);
    }
    for (const auto &id : known_ids()) {
        CHECK(seen.count(id) == 1);
    }

    const auto doc = nlohmann::json::parse(to_json(c));
    REQUIRE(doc.is_array());
    for (const auto &obj : doc) {
        CHECK(obj.contains("case"));
        CHECK(obj.contains("params"));
        CHECK(obj.contains("order"));
        for (const auto &chk : obj["checks"]) {
            CHECK(chk.contains("name"));
            CHECK(chk.contains("verdict"));
            CHECK(chk.contains("residual_leading_term"));
        }
    }
}

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: acceptance [--expect-fail N]... [path-to-projkit-cli]
// With --expect-fail the exit status is 0 only when exactly the listed
// criteria fail; their lines still read FAIL.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <set>
#include <string>
#include <vector>

#include "projkit/error.hpp"
#include "projkit/expr.hpp"
#include "projkit/flat.hpp"
#include "projkit/structure.hpp"
#include "projkit/symmetry.hpp"
#include "projkit/verify.hpp"
#include "support.hpp"

using namespace projkit;
using projkit::testing::q;
using projkit::testing::RandomSource;

namespace {

constexpr int kOrder = 12;

struct Outcome {
    bool pass = true;
    std::string detail;
};

Jet2 ex(const std::string &text, int order = kOrder, const ParamEnv &env = {}) { return expand(text, env, order); }

ProjectiveStructure structure(const std::string &A, const std::string &B, const std::string &C, const std::string &D,
                              int order = kOrder)
{
    return {ex(A, order), ex(B, order), ex(C, order), ex(D, order)};
}

VectorField field(const std::string &a, const std::string &b, int order) { return {ex(a, order), ex(b, order)}; }

Jet2 random_x_germ(RandomSource &rng, int order)
{
    Jet2 u = rng.xjet(order, 4, false);
    u.set_coeff(1, 0, rng.nonzero_rational());
    return u;
}

DiffeoGerm random_germ(RandomSource &rng, int order)
{
    for (;;) {
        try {
            return {rng.jet(order, 3, false), rng.jet(order, 3, false)};
        } catch (const Error &) {
        }
    }
}

ProjectiveStructure random_structure(RandomSource &rng, int order, bool x_only)
{
    auto pick = [&] { return x_only ? rng.xjet(order, 4) : rng.jet(order, 3); };
    return {pick(), pick(), pick(), pick()};
}

// f(x) -> f(k x)
Jet2 scaled_argument(const Jet2 &f, const Rational &k)
{
    Jet2 out(f.order());
    Rational p = 1;
    for (int i = 0; i <= f.order(); ++i) {
        out.set_coeff(i, 0, f.coeff(i, 0) * p);
        p *= k;
    }
    return out.with_effective_order(f.effective_order());
}

std::string count(int good, int total) { return std::to_string(good) + "/" + std::to_string(total); }

Outcome liouville_normal_form()
{
    RandomSource rng(101);
    int good = 0;
    for (int t = 0; t < 10; ++t) {
        const Jet2 A = rng.xjet(kOrder, 5), B = rng.xjet(kOrder, 5);
        const LiouvillePair L = liouville({A, B, Jet2(kOrder), Jet2::constant(q(1), kOrder)});
        good += agree(L.L1, -3 * d_dx(A)) && agree(L.L2, -3 * d_dx(B)) ? 1 : 0;
    }
    return {good == 10, count(good, 10) + " random (A, B) of degree <= 5"};
}

Outcome liouville_constant_c()
{
    RandomSource rng(102);
    int good = 0;
    for (int t = 0; t < 10; ++t) {
        const LiouvillePair L =
            liouville({rng.xjet(kOrder, 5), rng.xjet(kOrder, 5), Jet2::constant(rng.rational(), kOrder), Jet2(kOrder)});
        good += L.L1.is_zero() && L.L2.is_zero() ? 1 : 0;
    }
    return {good == 10, count(good, 10) + " random (A, B, c)"};
}

Outcome model_ib()
{
    RandomSource rng(103);
    int good = 0;
    const Jet2 E = ex("exp(x)"), E2 = ex("exp(2*x)");
    for (int t = 0; t < 5; ++t) {
        const ProjectiveStructure pi(rng.xjet(kOrder, 5), Jet2(kOrder), E, Jet2(kOrder));
        const LiouvillePair L = liouville(pi);
        good += agree(L.L1, -E) && agree(L.L2, 2 * E2) && !is_linearizable(pi) ? 1 : 0;
    }
    const Report rep = run_case("thm31.i.b", {}, kOrder, false);
    std::string verdict = "missing";
    for (const auto &c : rep.checks) {
        if (c.name.rfind("liouville", 0) == 0) {
            verdict = to_string(c.verdict);
        }
    }
    return {good == 5 && verdict == "paper-inconsistent",
            "(L1, L2) = (-e^x, 2e^{2x}) and not linearizable on " + count(good, 5) + "; report verdict " + verdict};
}

Outcome pullback_oracle()
{
    RandomSource rng(104);
    const int n = 10;
    int laws = 0;
    for (int t = 0; t < 10; ++t) {
        const ProjectiveStructure pi = random_structure(rng, n, true);
        const Jet2 &A = pi.A(), &B = pi.B(), &C = pi.C(), &D = pi.D();

        const Jet2 psi = random_x_germ(rng, n);
        const Jet2 dpsi = d_dx(psi), ddpsi = d_dx(dpsi);
        auto at_psi = [&](const Jet2 &F) { return substitute(F, psi, Jet2::y(n)); };
        const ProjectiveStructure law1(at_psi(A) * dpsi * dpsi, at_psi(B) * dpsi + ddpsi / dpsi, at_psi(C),
                                       at_psi(D) / dpsi);
        laws += agree(pullback(DiffeoGerm::x_change(psi), pi), law1) ? 1 : 0;

        const Jet2 phi = rng.xjet(n, 5, false);
        const Jet2 f1 = d_dx(phi), f2 = d_dx(f1);
        const ProjectiveStructure law2(A + B * f1 + C * f1 * f1 + D * f1 * f1 * f1 - f2,
                                       B + Rational(2) * C * f1 + Rational(3) * D * f1 * f1, C + Rational(3) * D * f1,
                                       D);
        laws += agree(pullback(DiffeoGerm::y_shift(phi), pi), law2) ? 1 : 0;

        const Rational a = rng.nonzero_rational();
        const ProjectiveStructure law3(A / Jet2::constant(a, n), B, a * C, a * a * D);
        laws += agree(pullback(DiffeoGerm::y_scaling(a, n), pi), law3) ? 1 : 0;
    }
    int functorial = 0, invariant = 0;
    for (int t = 0; t < 20; ++t) {
        const int m = 8;
        const ProjectiveStructure pi = random_structure(rng, m, false);
        const DiffeoGerm f = random_germ(rng, m), g = random_germ(rng, m);
        functorial += agree(pullback(compose(f, g), pi), pullback(g, pullback(f, pi))) ? 1 : 0;
        invariant += is_linearizable(pullback(g, pi)) == is_linearizable(pi) &&
                             is_linearizable(pullback(g, ProjectiveStructure(m)))
                         ? 1
                         : 0;
    }
    return {laws == 30 && functorial == 20 && invariant == 20,
            "laws " + count(laws, 30) + ", functoriality " + count(functorial, 20) + ", linearizability " +
                count(invariant, 20)};
}

Outcome c_star()
{
    RandomSource rng(105);
    int good = 0, total = 0;
    for (const Rational &l : {q(2), q(1, 3)}) {
        for (int t = 0; t < 3; ++t) {
            const Jet2 A = rng.xjet(kOrder, 5), B = rng.xjet(kOrder, 5);
            const ProjectiveStructure pi(A, B, Jet2(kOrder), Jet2::constant(q(1), kOrder));
            const ProjectiveStructure expected(Rational(l * l * l) * scaled_argument(A, l * l),
                                               Rational(l * l) * scaled_argument(B, l * l), Jet2(kOrder),
                                               Jet2::constant(q(1), kOrder));
            const ProjectiveStructure got = pullback(DiffeoGerm::linear(l * l, l, kOrder), pi);
            good += agree(got, expected) && agree(c_star_action(l, pi), expected) ? 1 : 0;
            ++total;
        }
    }
    return {good == total, count(good, total) + " structures for lambda in {2, 1/3}"};
}

Outcome symmetry_verification()
{
    int fields_ok = 0, fields_total = 0, relations_ok = 0, relations_total = 0;
    std::string bad;
    for (const auto &record : registry()) {
        for (const auto &sample : record.samples) {
            const ParamEnv env = resolve_params(record, sample.env);
            const ProjectiveStructure pi = build_structure(record, env, kOrder);
            const auto fs = build_fields(record, env, kOrder + 2);
            for (std::size_t k = 0; k < fs.size(); ++k) {
                ++fields_total;
                if (is_symmetry(fs[k], pi)) {
                    ++fields_ok;
                } else {
                    bad += " " + record.id + ":" + record.fields[k].name;
                }
            }
            bool rel = true;
            if (fs.size() == 2) {
                rel = agree(lie_bracket(fs[0], fs[1]), fs[0]);
            } else if (fs.size() == 3) {
                rel = independent_count(fs) == 3;
                for (std::size_t i = 0; i < 3; ++i) {
                    for (std::size_t j = i + 1; j < 3; ++j) {
                        auto ext = fs;
                        ext.push_back(lie_bracket(fs[i], fs[j]));
                        rel = rel && independent_count(ext) == 3;
                    }
                }
            } else if (fs.size() == 8) {
                rel = independent_count(fs) == 8;
            }
            if (fs.size() > 1) {
                ++relations_total;
                relations_ok += rel ? 1 : 0;
                if (!rel) {
                    bad += " " + record.id + ":relations";
                }
            }
        }
    }
    return {fields_ok == fields_total && relations_ok == relations_total,
            "fields " + count(fields_ok, fields_total) + ", bracket relations " + count(relations_ok, relations_total) +
                (bad.empty() ? "" : "; failing:" + bad)};
}

Outcome symmetry_dimensions()
{
    struct Item {
        std::string label;
        ProjectiveStructure pi;
        std::size_t expected;
    };
    const auto &iia = find_case("thm31.ii.a");
    const auto &iib = find_case("thm31.ii.b");
    const std::vector<Item> items{
        {"(0,0,0,0)", ProjectiveStructure(kOrder), 8},
        {"(0,1/2,0,e^-2x)", structure("0", "1/2", "0", "exp(-2*x)"), 3},
        {"(ii.a)(1,0)", build_structure(iia, resolve_params(iia, {{"alpha", q(1)}, {"beta", q(0)}}), kOrder), 2},
        {"(ii.b) alpha=1", build_structure(iib, resolve_params(iib, {{"alpha", q(1)}}), kOrder), 2},
        {"(x,0,0,1)", structure("x", "0", "0", "1"), 1},
    };
    bool pass = true;
    std::string detail;
    for (const auto &it : items) {
        const SymDimReport rep = symmetry_dim(it.pi, kOrder);
        const std::size_t v = rep.value();
        const bool in_list = v == 0 || v == 1 || v == 2 || v == 3 || v == 8;
        const bool ok = rep.stabilized && in_list && v == it.expected;
        pass = pass && ok;
        detail += (detail.empty() ? "" : ", ") + it.label + " -> " + std::to_string(rep.dim_at_order) + "/" +
                  std::to_string(rep.dim_at_next);
    }
    return {pass, detail + " at orders 12/13"};
}

Outcome invariant_structures_criterion()
{
    const int n = 8;
    const InvariantSpace dy = invariant_structures({field("0", "1", n + 1)}, n);
    bool x_only = dy.consistent && dy.dimension() == static_cast<std::size_t>(4 * (n + 1));
    for (const auto &b : dy.basis) {
        x_only = x_only && !b.depends_on_y();
    }
    x_only = x_only && !dy.contains(structure("y", "0", "0", "0", n));

    const InvariantSpace aff = invariant_structures({field("0", "1", kOrder + 2), field("1", "y", kOrder + 2)}, kOrder);
    bool four = aff.consistent && aff.dimension() == 4;
    for (const auto &g : {structure("exp(x)", "0", "0", "0"), structure("0", "1", "0", "0"),
                          structure("0", "0", "exp(-x)", "0"), structure("0", "0", "0", "exp(-2*x)"),
                          structure("3*exp(x)", "-2", "1/2*exp(-x)", "5*exp(-2*x)")}) {
        four = four && aff.contains(g);
    }
    four = four && !aff.contains(structure("x", "0", "0", "0"));
    return {x_only && four, "{d/dy}: dimension " + std::to_string(dy.dimension()) + " = 4(N+1), all x-only; " +
                                "{d/dy, d/dx + y d/dy}: dimension " + std::to_string(aff.dimension())};
}

Outcome pencil_round_trip()
{
    int cases = 0, samples = 0, good = 0;
    std::string bad;
    for (const auto &record : registry()) {
        if (record.id.rfind("thm41.", 0) != 0 || !record.pencil) {
            continue;
        }
        ++cases;
        for (std::size_t s = 0; s < record.samples.size() && s < 3; ++s) {
            ++samples;
            const ParamEnv env = resolve_params(record, record.samples[s].env);
            const ProjectiveStructure pi = build_structure(record, env, kOrder);
            const Pencil pencil = *build_pencil(record, env, kOrder + 1);
            bool ok = agree(structure_from_pencil(pencil), pi);
            for (const auto &z : {PencilPoint::at(q(0)), PencilPoint::at(q(1)), PencilPoint::at(q(-1)),
                                  PencilPoint::at(q(2)), PencilPoint::infinity()}) {
                ok = ok && is_geodesic_any_chart(member(pencil, z), pi);
            }
            int constant = 0;
            for (const Rational &p0 : {q(1, 3), q(-2), q(3, 2), q(5)}) {
                if (constant == 2) {
                    break;
                }
                try {
                    const Jet2 y = geodesic_solve(pi, q(0), p0, kOrder);
                    const Jet2 z = pencil_parameter(pencil, y);
                    ok = ok && (z - Jet2::constant(z.constant_term(), z.order())).is_zero();
                    ++constant;
                } catch (const Error &e) {
                    if (e.kind() != ErrorKind::PreconditionViolated) {
                        ok = false;
                        break;
                    }
                }
            }
            ok = ok && constant == 2;
            good += ok ? 1 : 0;
            if (!ok) {
                bad += " " + record.id;
            }
        }
    }
    // (iii) needs gamma = 1/sqrt(2): the (ii.a) pencil structure is polynomial in
    // gamma, so agreement at 7 rationals carries over to that value.
    bool iii = true;
    for (const auto &c : run_case("thm41.iii", {}, kOrder, false).checks) {
        if (c.name.rfind("(ii.a) pencil structure", 0) == 0 || c.name.rfind("curve formula", 0) == 0) {
            iii = iii && c.verdict == Verdict::Pass;
        }
    }
    return {good == samples && cases == 7 && iii,
            std::to_string(cases) + " cases with rational pencils, " + count(good, samples) + " samples; (iii) via " +
                "the gamma-polynomial identity " + (iii ? "holds" : "fails") + (bad.empty() ? "" : "; failing:" + bad)};
}

Outcome cubic_curve_criterion()
{
    int zeros = 0;
    for (const Rational &g : {q(-2), q(-1), q(-1, 2), q(0), q(1, 3), q(1, 2), q(1)}) {
        zeros += sgn(cubic_curve_residual(g)) == 0 ? 1 : 0;
    }
    const auto p0 = cubic_curve_point(q(0));
    const bool origin = sgn(p0[0]) == 0 && p0[1] == 2;
    const bool limit = sgn(cubic_curve(q(0), q(1, 2))) == 0;
    const ProjectiveStructure iii = build_structure(find_case("thm41.iii"), {}, kOrder);
    const bool matches = agree(iii, structure("0", "1/2", "0", "exp(-2*x)"));
    return {zeros == 7 && origin && limit && matches, "residual zero at " + count(zeros, 7) +
                                                          " rationals; gamma = 0 -> (" + to_string(p0[0]) + ", " +
                                                          to_string(p0[1]) + "); (0, 1/2) on curve and is (iii)"};
}

Outcome flatness_identities()
{
    RandomSource rng(111);
    int printed = 0, corrected = 0, second = 0;
    std::string lead;
    for (int t = 0; t < 3; ++t) {
        const ParamEnv env{{"g0", rng.nonzero_rational()}, {"g1", rng.nonzero_rational()}, {"g2", rng.rational()},
                           {"g3", rng.rational()}};
        const Report rep = flat_criteria_checks(env, kOrder);
        for (const auto &c : rep.checks) {
            if (c.name.rfind("(i.a.1) flatness identity 3(4B+1)", 0) == 0) {
                printed += c.verdict == Verdict::Pass ? 1 : 0;
                if (c.verdict != Verdict::Pass && lead.empty()) {
                    lead = c.residual_leading_term;
                }
            } else if (c.name.rfind("(i.a.1) flatness identity 27(4B+1)", 0) == 0) {
                corrected += c.verdict == Verdict::Pass ? 1 : 0;
            } else if (c.name.rfind("(i.a.2) flatness identity", 0) == 0) {
                second += c.verdict == Verdict::Pass ? 1 : 0;
            }
        }
    }
    std::string detail = "printed 3(4B+1)A^2 + (4B^2+5B-3B'+1)^2 vanishes on " + count(printed, 3) +
                         "; 108BA^2 + (4B^2-3B')^2 on " + count(second, 3);
    if (printed < 3) {
        detail += "; first leading term " + lead + "; with 27(4B+1) in place of 3(4B+1) the identity holds on " +
                  count(corrected, 3) + " (printed coefficient is inconsistent with the pencil)";
    }
    return {printed == 3 && second == 3, detail};
}

Outcome alpha_ode()
{
    RandomSource rng(112);
    int good = 0;
    int min_eff = 1 << 20;
    for (int t = 0; t < 5; ++t) {
        Rational j2;
        do {
            j2 = rng.rational();
        } while (j2 == 1);
        const Rational j1 = rng.rational(), j3 = rng.rational();
        const Jet2 a = alpha_ode_solve(q(1), {q(1), j1, j2, j3}, kOrder);
        const Jet2 res = alpha_ode_residual(q(1), a);
        min_eff = std::min(min_eff, res.effective_order());
        const Report rep = affine_family_checks({{"c", q(1)}, {"j1", j1}, {"j2", j2}, {"j3", j3}}, kOrder);
        bool ok = res.is_zero() && res.effective_order() >= 8;
        for (const auto &c : rep.checks) {
            ok = ok && c.verdict == Verdict::Pass;
        }
        good += ok ? 1 : 0;
    }
    return {good == 5, count(good, 5) + " jets; ODE residual zero to effective order " + std::to_string(min_eff) +
                           "; symmetry and alpha'/alpha relation hold"};
}

Outcome exotic_sl2()
{
    std::string detail;
    bool pass = true;
    for (const auto &[c1, c2] : std::initializer_list<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {0, 0}}) {
        const Report rep = exotic_sl2_check(q(c1), q(c2), kOrder);
        bool ok = true;
        for (const auto &c : rep.checks) {
            ok = ok && c.verdict == Verdict::Pass;
        }
        pass = pass && ok;
        detail += (detail.empty() ? "" : ", ") + std::string("(") + std::to_string(c1) + "," + std::to_string(c2) +
                  ") " + (ok ? "ok" : "failed");
    }
    return {pass, detail + "; dimension 0 off the origin, contains (0,1/2,0,e^-2x) at (0,0)"};
}

Outcome dual_oracle()
{
    RandomSource rng(114);
    int minus = 0, plus = 0;
    for (int t = 0; t < 20; ++t) {
        const VectorField v{rng.jet(10, 3), rng.jet(10, 3)};
        const ProjectiveStructure pi = random_structure(rng, 10, false);
        const DeterminingResidual r = residual(v, pi);
        const ProjectiveStructure eps = infinitesimal_pullback(v, pi);
        bool m = true, p = true;
        for (std::size_t k = 0; k < 4; ++k) {
            m = m && agree(r.r[k], -eps[k]);
            p = p && agree(r.r[k], eps[k]);
        }
        minus += m ? 1 : 0;
        plus += p ? 1 : 0;
    }
    return {minus == 20, "residual = -(eps part) on " + count(minus, 20) + " pairs (literal + sign on " +
                             count(plus, 20) + "; residual sign follows the determining-equation convention)"};
}

std::string run_cli(const std::string &command)
{
    std::unique_ptr<FILE, int (*)(FILE *)> pipe(popen(command.c_str(), "r"), pclose);
    if (!pipe) {
        return {};
    }
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) {
        out.append(buf.data(), n);
    }
    return out;
}

Outcome determinism(const std::string &cli)
{
    if (cli.empty()) {
        const std::string a = to_json(run_all(kOrder)), b = to_json(run_all(kOrder));
        return {a == b, "no CLI path given; in-process run_all JSON compared, " + std::to_string(a.size()) + " bytes"};
    }
    const std::string cmd = "\"" + cli + "\" verify-paper --json";
    const std::string a = run_cli(cmd), b = run_cli(cmd);
    return {!a.empty() && a == b, "verify-paper --json twice: " + std::to_string(a.size()) + " bytes, " +
                                      (a == b ? "identical" : "different")};
}

} // namespace

int main(int argc, char **argv)
{
    std::string cli;
    std::set<std::size_t> expected_failures;
    for (int k = 1; k < argc; ++k) {
        const std::string arg = argv[k];
        if (arg == "--expect-fail" && k + 1 < argc) {
            expected_failures.insert(std::stoul(argv[++k]));
        } else {
            cli = arg;
        }
    }
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Liouville invariants of (A(x), B(x), 0, 1)", liouville_normal_form},
        {"Liouville invariants vanish for constant C", liouville_constant_c},
        {"model (A(x), 0, e^x, 0)", model_ib},
        {"pullback transformation laws and properties", pullback_oracle},
        {"C* action on (A(x), B(x), 0, 1)", c_star},
        {"listed vector fields are symmetries", symmetry_verification},
        {"symmetry dimensions", symmetry_dimensions},
        {"invariant structures", invariant_structures_criterion},
        {"pencil round trip", pencil_round_trip},
        {"nodal cubic curve", cubic_curve_criterion},
        {"printed flatness identities", flatness_identities},
        {"alpha equation end to end", alpha_ode},
        {"exotic sl2 actions", exotic_sl2},
        {"dual-number oracle", dual_oracle},
        {"determinism of verify-paper --json", [&] { return determinism(cli); }},
    };
    std::set<std::size_t> failed;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) {
            failed.insert(k + 1);
        }
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (o.pass ? "PASS" : "FAIL") << "  " << (k + 1 < 10 ? " " : "") << k + 1 << "  " << criteria[k].first
             << "  (" << o.detail << ")  [" << secs << " s]";
        std::cout << line.str() << std::endl;
    }
    std::cout << criteria.size() - failed.size() << "/" << criteria.size() << " criteria pass" << std::endl;
    if (!expected_failures.empty()) {
        const bool match = failed == expected_failures;
        std::cout << (match ? "failures match the expected list" : "failures differ from the expected list") << std::endl;
        return match ? 0 : 1;
    }
    return failed.empty() ? 0 : 1;
}

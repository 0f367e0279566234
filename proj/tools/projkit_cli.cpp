#include <chrono>
#include <ctime>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "projkit/error.hpp"
#include "projkit/flat.hpp"
#include "projkit/input.hpp"
#include "projkit/report.hpp"
#include "projkit/structure.hpp"
#include "projkit/symmetry.hpp"
#include "projkit/verify.hpp"

using namespace projkit;

namespace {

constexpr int kHolds = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kFailure = 3;

struct Options {
    std::string file;
    int order = -1;
    std::string field;
    std::string psi = "x";
    std::string phi = "0";
    std::string scale = "1";
    std::string z;
    std::string case_id;
    std::vector<std::string> params;
    bool json = false;
    bool timestamps = false;
};

// --order wins over the file's own order.
int effective_order(const Options &opt, const InputDocument &doc) { return opt.order > 0 ? opt.order : doc.order; }

std::string utc_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

int cmd_invariants(const Options &opt)
{
    const InputDocument doc = load_input(opt.file);
    const LiouvillePair L = liouville(doc.structure_at(effective_order(opt, doc)));
    std::cout << "L1 = " << L.L1 << "\nL2 = " << L.L2 << '\n';
    return kHolds;
}

int cmd_linearizable(const Options &opt)
{
    const InputDocument doc = load_input(opt.file);
    const int n = effective_order(opt, doc);
    const bool lin = is_linearizable(doc.structure_at(n));
    std::cout << (lin ? "linearizable" : "not linearizable") << " (to order " << n << ")\n";
    return lin ? kHolds : kNegative;
}

int cmd_symcheck(const Options &opt)
{
    const InputDocument doc = load_input(opt.file);
    const int n = effective_order(opt, doc);
    const DeterminingResidual res = residual(doc.field_at(opt.field, n + 2), doc.structure_at(n));
    if (res.is_zero()) {
        std::cout << opt.field << " is a symmetry (to order " << res.effective_order() << ")\n";
        return kHolds;
    }
    std::cout << opt.field << " is not a symmetry\n";
    for (std::size_t k = 0; k < 4; ++k) {
        std::cout << "r" << k << " = " << res.r[k] << '\n';
    }
    return kNegative;
}

int cmd_symdim(const Options &opt)
{
    const InputDocument doc = load_input(opt.file);
    const int n = effective_order(opt, doc);
    const SymDimReport rep = symmetry_dim(doc.structure_at(n), n);
    std::cout << "dimension " << rep.value() << (rep.stabilized ? "" : " (upper bound, not stabilized)") << '\n'
              << "order " << rep.order << ": " << rep.dim_at_order << '\n'
              << "order " << rep.order + 1 << ": " << rep.dim_at_next << '\n';
    return rep.stabilized ? kHolds : kNegative;
}

int cmd_pullback(const Options &opt)
{
    const InputDocument doc = load_input(opt.file);
    const int n = effective_order(opt, doc);
    const Rational a = parse_rational(opt.scale);
    // (x, y) -> (psi(x), a (y + phi(x)))
    const DiffeoGerm germ = compose(compose(DiffeoGerm::y_scaling(a, n), DiffeoGerm::x_change(expand(opt.psi, doc.params, n))),
                                    DiffeoGerm::y_shift(expand(opt.phi, doc.params, n)));
    std::cout << pullback(germ, doc.structure_at(n)) << '\n';
    return kHolds;
}

int cmd_pencil(const Options &opt)
{
    const InputDocument doc = load_input(opt.file);
    const int n = effective_order(opt, doc);
    std::cout << structure_from_pencil(doc.pencil_at(n + 1)) << '\n';
    return kHolds;
}

int cmd_geodesic(const Options &opt)
{
    const InputDocument doc = load_input(opt.file);
    const int n = effective_order(opt, doc);
    const Pencil pencil = doc.pencil_at(n + 1);
    const ProjectiveStructure pi = doc.structure ? doc.structure_at(n) : structure_from_pencil(pencil);
    const Foliation F = member(pencil, parse_pencil_point(opt.z));
    const bool swap = F.vertical_at_origin();
    const Jet2 res = swap ? geodesic_residual(swap_axes(F), swap_axes(pi)) : geodesic_residual(F, pi);
    if (res.is_zero()) {
        std::cout << "member z = " << opt.z << " is geodesic" << (swap ? " (swapped chart)" : "") << '\n';
        return kHolds;
    }
    std::cout << "member z = " << opt.z << " is not geodesic\nresidual = " << res << '\n';
    return kNegative;
}

int cmd_verify(const Options &opt)
{
    const int n = opt.order > 0 ? opt.order : kDefaultOrder;
    std::vector<Report> reports;
    if (opt.case_id.empty()) {
        if (!opt.params.empty()) {
            throw Error(ErrorKind::InadmissibleParameters, "--param needs --case");
        }
        reports = run_all(n);
    } else {
        ParamEnv env;
        for (const auto &p : opt.params) {
            const auto eq = p.find('=');
            if (eq == std::string::npos) {
                throw Error(ErrorKind::SyntaxError, "--param expects NAME=RATIONAL, got '" + p + "'");
            }
            env[p.substr(0, eq)] = parse_rational(p.substr(eq + 1));
        }
        reports.push_back(run_case(opt.case_id, env, n));
    }
    std::cout << (opt.json ? to_json(reports, opt.timestamps ? utc_now() : std::string()) : to_text(reports));
    for (const auto &r : reports) {
        if (!r.ok()) {
            return kNegative;
        }
    }
    return kHolds;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact jet computations for projective structures y'' = A + B y' + C y'^2 + D y'^3"};
    app.require_subcommand(1);
    Options opt;

    const auto with_file = [&](CLI::App *sub) {
        sub->add_option("FILE", opt.file, "input document")->required()->check(CLI::ExistingFile);
        sub->add_option("--order", opt.order, "truncation order (default: the file's, else 12)")
            ->check(CLI::Range(2, 60));
    };

    auto *invariants = app.add_subcommand("invariants", "print the Liouville invariants L1, L2");
    with_file(invariants);
    auto *linearizable = app.add_subcommand("linearizable", "exit 0 when both Liouville invariants vanish");
    with_file(linearizable);
    auto *symcheck = app.add_subcommand("symcheck", "exit 0 when the named field is a symmetry");
    with_file(symcheck);
    symcheck->add_option("--field", opt.field, "name of a [field NAME] section")->required();
    auto *symdim = app.add_subcommand("symdim", "dimension of the symmetry algebra");
    with_file(symdim);
    auto *pull = app.add_subcommand("pullback", "pull back along (x, y) -> (psi(x), scale (y + phi(x)))");
    with_file(pull);
    pull->add_option("--psi", opt.psi, "x-change psi(x), psi(0) = 0")->capture_default_str();
    pull->add_option("--phi", opt.phi, "y-shift phi(x), phi(0) = 0")->capture_default_str();
    pull->add_option("--scale", opt.scale, "nonzero rational y-scaling")->capture_default_str();
    auto *pencil = app.add_subcommand("pencil", "structure whose geodesics are the pencil members");
    with_file(pencil);
    auto *geodesic = app.add_subcommand("geodesic", "exit 0 when member z of the pencil is geodesic");
    with_file(geodesic);
    geodesic->add_option("--z", opt.z, "member: a rational or inf")->required();
    auto *verify = app.add_subcommand("verify-paper", "run the case registry");
    verify->add_option("--case", opt.case_id, "case id (default: every case at its samples)");
    verify->add_option("--order", opt.order, "truncation order")->check(CLI::Range(4, 40));
    verify->add_option("--param", opt.params, "NAME=RATIONAL, repeatable");
    verify->add_flag("--json", opt.json, "machine-readable output");
    verify->add_flag("--timestamps", opt.timestamps, "add a generation time to JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kHolds : kUsage;
    }

    try {
        if (invariants->parsed()) {
            return cmd_invariants(opt);
        }
        if (linearizable->parsed()) {
            return cmd_linearizable(opt);
        }
        if (symcheck->parsed()) {
            return cmd_symcheck(opt);
        }
        if (symdim->parsed()) {
            return cmd_symdim(opt);
        }
        if (pull->parsed()) {
            return cmd_pullback(opt);
        }
        if (pencil->parsed()) {
            return cmd_pencil(opt);
        }
        if (geodesic->parsed()) {
            return cmd_geodesic(opt);
        }
        return cmd_verify(opt);
    } catch (const Error &e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kFailure;
    }
}

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "projkit/expr.hpp"
#include "projkit/flat.hpp"
#include "projkit/report.hpp"
#include "projkit/structure.hpp"
#include "projkit/symmetry.hpp"

namespace projkit {

struct ParamSpec {
    std::string name;
    Rational fallback;
    std::string note;
};

/// Components of a vector field as expressions.
struct FieldSpec {
    std::string name;
    std::string a;
    std::string b;
};

/// omega_0 = P0 dx + Q0 dy, omega_inf = Pinf dx + Qinf dy.
struct PencilSpec {
    std::string P0, Q0, Pinf, Qinf;
};

/// What the symmetry-dimension check compares against.
struct DimensionExpectation {
    enum Kind { None, Record, Expect } kind = None;
    std::size_t value = 0;
};

struct CaseSample {
    ParamEnv env;
    /// Whether run_all computes the symmetry dimension for this sample.
    bool dimension = false;
};

struct CaseRecord {
    std::string id;
    std::vector<ParamSpec> params;
    std::array<std::string, 4> structure;
    std::vector<FieldSpec> fields;
    std::optional<PencilSpec> pencil;
    /// Reason the parameters are excluded, if they are.
    std::function<std::optional<std::string>(const ParamEnv &)> excluded;
    std::function<DimensionExpectation(const ParamEnv &)> dimension;
    /// Case-specific checks appended after the generic ones.
    std::function<void(const ParamEnv &, int, std::vector<Check> &)> extra;
    std::vector<CaseSample> samples;
};

/// Ids of every registered normal-form case.
const std::vector<std::string> &case_manifest();
const std::vector<CaseRecord> &registry();
/// Throws UnknownCase.
const CaseRecord &find_case(const std::string &id);
/// Registered case ids followed by the auxiliary report ids accepted by run_case.
std::vector<std::string> known_ids();

/// Defaults filled in; throws InadmissibleParameters for unknown names or
/// excluded values.
ParamEnv resolve_params(const CaseRecord &record, const ParamEnv &env);

ProjectiveStructure build_structure(const CaseRecord &record, const ParamEnv &env, int order = kDefaultOrder);
std::vector<VectorField> build_fields(const CaseRecord &record, const ParamEnv &env, int order = kDefaultOrder);
std::optional<Pencil> build_pencil(const CaseRecord &record, const ParamEnv &env, int order = kDefaultOrder);

/// Runs a registered case or one of the auxiliary reports ("aff.family",
/// "cubic.curve", "flat.criteria", "sl2.exotic", "sl2.pi0"). The symmetry
/// dimension of a registered case is only computed when with_dimension is set.
Report run_case(const std::string &id, const ParamEnv &env = {}, int order = kDefaultOrder,
                bool with_dimension = true);

/// 27 a^2 + 4 b^3 - 12 b^2 + 9 b - 2
Rational cubic_curve(const Rational &alpha, const Rational &beta);
/// cubic_curve at (g (2 g^2 - 1), 2 - 3 g^2).
Rational cubic_curve_residual(const Rational &gamma);
std::array<Rational, 2> cubic_curve_point(const Rational &gamma);

/// Series in x solving the fourth-order alpha equation with the given
/// derivative values alpha(0), alpha'(0), alpha''(0), alpha'''(0).
/// Throws PreconditionViolated when alpha(0) = 0.
Jet2 alpha_ode_solve(const Rational &c, const std::array<Rational, 4> &jet3, int order = kDefaultOrder);
Jet2 alpha_ode_residual(const Rational &c, const Jet2 &alpha);

/// Parameters: alpha0 (pinned to 1), beta0, gamma0, delta0 for the explicit
/// family; c, j1, j2, j3 for the exponential family (alpha(0) = 1 and the
/// listed derivative values); a for the (alpha0 e^-x, 0, e^x, 0) check.
Report affine_family_checks(const ParamEnv &env = {}, int order = kDefaultOrder);
/// Parameters g0..g3 (the function g) and a0..a3 (A for the Riccati pencil).
Report flat_criteria_checks(const ParamEnv &env = {}, int order = kDefaultOrder);
Report exotic_sl2_check(const Rational &c1, const Rational &c2, int order = kDefaultOrder);

/// Every case at its samples plus the auxiliary reports, sorted by id.
std::vector<Report> run_all(int order = kDefaultOrder);

} // namespace projkit

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "projkit/expr.hpp"
#include "projkit/jet.hpp"

namespace projkit {

enum class Verdict {
    Pass,
    Fail,
    /// The computation disagrees with a printed value that is itself
    /// inconsistent; the computed value is recorded in the detail.
    PaperInconsistent,
    /// Measured without an expectation to compare against.
    Recorded,
};

std::string to_string(Verdict v);

struct Check {
    std::string name;
    Verdict verdict = Verdict::Pass;
    /// Lowest nonzero residual term when the check failed, else empty.
    std::string residual_leading_term;
    std::string detail;
};

struct Report {
    std::string case_id;
    ParamEnv params;
    int order = kDefaultOrder;
    std::vector<Check> checks;

    /// No check failed.
    bool ok() const;
};

/// Pass when the residual vanishes to its effective order, otherwise Fail with
/// its leading term.
Check residual_check(std::string name, const Jet2 &residual, std::string detail = {});
Check bool_check(std::string name, bool holds, std::string detail = {});

std::string to_text(const Report &r);
std::string to_text(const std::vector<Report> &reports);

/// One object per report: {case, params, order, checks: [{name, verdict,
/// residual_leading_term, detail}]}. A non-empty timestamp is added as a
/// top-level "generated_at" field of every report.
std::string to_json(const std::vector<Report> &reports, const std::string &timestamp = {});

} // namespace projkit

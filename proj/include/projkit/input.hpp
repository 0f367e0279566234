#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "projkit/expr.hpp"
#include "projkit/flat.hpp"
#include "projkit/structure.hpp"
#include "projkit/symmetry.hpp"

namespace projkit {

/// An input file:
///
///   order = 12
///   [params]
///   g = 1/2
///   [structure]
///   A = "g*exp(x)"
///   [field X]
///   a = "0"
///   b = "1"
///   [pencil]
///   P0 = "1"
///   Q0 = "x"
///   Pinf = "0"
///   Qinf = "1"
///
/// Comments are whole lines starting with ';' or '#'. Omitted structure and
/// field components are zero; a pencil needs all four entries.
struct InputDocument {
    int order = kDefaultOrder;
    ParamEnv params;
    std::optional<std::array<std::string, 4>> structure;
    std::vector<std::pair<std::string, std::array<std::string, 2>>> fields;
    std::optional<std::array<std::string, 4>> pencil;

    /// Each throws PreconditionViolated when the section is missing.
    ProjectiveStructure structure_at(int order) const;
    VectorField field_at(const std::string &name, int order) const;
    Pencil pencil_at(int order) const;
};

/// Throws SyntaxError for malformed documents or expressions and
/// UnboundParameter for expressions that use parameters missing from
/// [params].
InputDocument parse_input(std::string_view text);
InputDocument load_input(const std::string &path);

} // namespace projkit

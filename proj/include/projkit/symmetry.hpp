#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "projkit/jet.hpp"
#include "projkit/slope_poly.hpp"
#include "projkit/structure.hpp"

namespace projkit {

/// a d/dx + b d/dy
struct VectorField {
    Jet2 a;
    Jet2 b;

    VectorField() = default;
    VectorField(Jet2 a_, Jet2 b_);

    int order() const { return a.order(); }
    int effective_order() const { return std::min(a.effective_order(), b.effective_order()); }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
};

/// v(F) = a F_x + b F_y
Jet2 apply(const VectorField &v, const Jet2 &F);
VectorField operator+(const VectorField &v, const VectorField &w);
VectorField operator-(const VectorField &v, const VectorField &w);
VectorField operator*(const Rational &c, const VectorField &v);
bool agree(const VectorField &v, const VectorField &w);
std::string to_string(const VectorField &v);

/// Second-prolongation expression as a polynomial in the slope, before the
/// cubic truncation; entry 4 is the p^4 coefficient.
SlopePoly<Jet2> prolongation(const VectorField &v, const ProjectiveStructure &pi);

/// Slope coefficients of the determining equations. Construction from
/// prolongation() checks that the p^4 coefficient vanishes.
struct DeterminingResidual {
    std::array<Jet2, 4> r;

    bool is_zero() const;
    int effective_order() const;
};

DeterminingResidual residual(const VectorField &v, const ProjectiveStructure &pi);
bool is_symmetry(const VectorField &v, const ProjectiveStructure &pi);

/// eps-part of the pullback of pi along id + eps v, computed over dual jets.
/// The determining residual equals its negative.
ProjectiveStructure infinitesimal_pullback(const VectorField &v, const ProjectiveStructure &pi);

VectorField lie_bracket(const VectorField &v, const VectorField &w);

/// Number of linearly independent fields among vs (as jets to their common
/// effective order).
std::size_t independent_count(const std::vector<VectorField> &vs);

struct SymDimReport {
    int order = 0;
    std::size_t dim_at_order = 0;
    std::size_t dim_at_next = 0;
    bool stabilized = false;
    /// dim_at_next, which is an upper bound unless stabilized.
    std::size_t value() const { return dim_at_next; }
};

/// Dimension of the space of polynomial symmetry candidates of degree <= N,
/// projected to their 2-jets, at N and N + 1. Needs pi known to order N.
SymDimReport symmetry_dim(const ProjectiveStructure &pi, int order = kDefaultOrder);
/// Dimension at a single truncation order.
std::size_t symmetry_dim_at(const ProjectiveStructure &pi, int order);

/// Affine space of structures (coefficients of degree <= N) whose residual
/// vanishes up to degree N - 1 for every field.
struct InvariantSpace {
    int order = 0;
    bool consistent = false;
    ProjectiveStructure particular;
    std::vector<ProjectiveStructure> basis;

    std::size_t dimension() const { return basis.size(); }
    /// Whether pi (to degree N) lies in the space.
    bool contains(const ProjectiveStructure &pi) const;
};

/// Fields must be known to order N + 1.
InvariantSpace invariant_structures(const std::vector<VectorField> &fields, int order = kDefaultOrder);

} // namespace projkit

#pragma once

#include <string>

#include "projkit/jet.hpp"
#include "projkit/structure.hpp"
#include "projkit/symmetry.hpp"

namespace projkit {

/// P dx + Q dy, with no constraint at the origin.
struct OneForm {
    Jet2 P;
    Jet2 Q;

    bool is_zero() const { return P.is_zero() && Q.is_zero(); }
};

OneForm operator+(const OneForm &a, const OneForm &b);
OneForm operator*(const Jet2 &h, const OneForm &w);
std::string to_string(const OneForm &w);

/// Foliation defined by P dx + Q dy with (P(0), Q(0)) != (0, 0).
class Foliation {
public:
    /// Throws PreconditionViolated when the form vanishes at the origin.
    Foliation(Jet2 P, Jet2 Q);
    explicit Foliation(const OneForm &w) : Foliation(w.P, w.Q) {}

    const Jet2 &P() const { return form_.P; }
    const Jet2 &Q() const { return form_.Q; }
    const OneForm &form() const { return form_; }
    bool vertical_at_origin() const { return sgn(form_.Q.constant_term()) == 0; }

private:
    OneForm form_;
};

/// A member of P^1: a finite rational or infinity.
struct PencilPoint {
    bool infinite = false;
    Rational value;

    static PencilPoint at(const Rational &z) { return {false, z}; }
    static PencilPoint infinity() { return {true, Rational(0)}; }
};

std::string to_string(const PencilPoint &z);
/// "inf" or a rational literal.
PencilPoint parse_pencil_point(const std::string &text);

/// omega_z = omega_0 + z omega_inf with Q0 Pinf - P0 Qinf a unit.
class Pencil {
public:
    /// Throws DegenerateWedge when the wedge vanishes at the origin.
    Pencil(Foliation omega0, Foliation omega_inf);

    const Foliation &omega0() const { return omega0_; }
    const Foliation &omega_inf() const { return omega_inf_; }
    /// Q0 Pinf - P0 Qinf
    Jet2 wedge() const;

private:
    Foliation omega0_;
    Foliation omega_inf_;
};

Foliation member(const Pencil &pencil, const PencilPoint &z);

/// Leaf slope s = -P/Q. Throws VerticalAtOrigin when Q(0) = 0.
Jet2 slope(const Foliation &F);

/// s_x + s s_y - (A + B s + C s^2 + D s^3) for the leaf slope s.
Jet2 geodesic_residual(const Foliation &F, const ProjectiveStructure &pi);
bool is_geodesic(const Foliation &F, const ProjectiveStructure &pi);

/// The same foliation written with x and y exchanged.
Foliation swap_axes(const Foliation &F);
/// is_geodesic, moving to swapped coordinates when F is vertical at the origin.
bool is_geodesic_any_chart(const Foliation &F, const ProjectiveStructure &pi);

/// The structure whose geodesics are the leaves of every member.
ProjectiveStructure structure_from_pencil(const Pencil &pencil);

/// Lie derivative of P dx + Q dy along v.
OneForm lie_derivative_form(const VectorField &v, const OneForm &w);

/// z(x) = -(P0 + Q0 y') / (Pinf + Qinf y') along the graph of y(x); constant
/// when the graph is a leaf of some member. The curve must pass through the
/// origin and the denominator must be a unit there.
Jet2 pencil_parameter(const Pencil &pencil, const Jet2 &curve);

} // namespace projkit

#include "projkit/flat.hpp"

#include <sstream>

#include "projkit/error.hpp"

namespace projkit {

OneForm operator+(const OneForm &a, const OneForm &b) { return {a.P + b.P, a.Q + b.Q}; }

OneForm operator*(const Jet2 &h, const OneForm &w) { return {h * w.P, h * w.Q}; }

std::string to_string(const OneForm &w)
{
    std::ostringstream os;
    os << "P = " << w.P << "\nQ = " << w.Q;
    return os.str();
}

Foliation::Foliation(Jet2 P, Jet2 Q)
{
    const int n = std::min(P.order(), Q.order());
    form_ = {P.reordered(n), Q.reordered(n)};
    if (sgn(form_.P.constant_term()) == 0 && sgn(form_.Q.constant_term()) == 0) {
        throw Error(ErrorKind::PreconditionViolated, "the 1-form vanishes at the origin");
    }
}

std::string to_string(const PencilPoint &z) { return z.infinite ? "inf" : to_string(z.value); }

PencilPoint parse_pencil_point(const std::string &text)
{
    if (text == "inf") {
        return PencilPoint::infinity();
    }
    return PencilPoint::at(parse_rational(text));
}

Pencil::Pencil(Foliation omega0, Foliation omega_inf) : omega0_(std::move(omega0)), omega_inf_(std::move(omega_inf))
{
    if (sgn(wedge().constant_term()) == 0) {
        throw Error(ErrorKind::DegenerateWedge, "omega_0 and omega_inf are tangent at the origin");
    }
}

Jet2 Pencil::wedge() const { return omega0_.Q() * omega_inf_.P() - omega0_.P() * omega_inf_.Q(); }

Foliation member(const Pencil &pencil, const PencilPoint &z)
{
    if (z.infinite) {
        return pencil.omega_inf();
    }
    return Foliation(pencil.omega0().P() + z.value * pencil.omega_inf().P(),
                     pencil.omega0().Q() + z.value * pencil.omega_inf().Q());
}

Jet2 slope(const Foliation &F)
{
    if (F.vertical_at_origin()) {
        throw Error(ErrorKind::VerticalAtOrigin, "foliation is vertical at the origin");
    }
    return -(F.P() / F.Q());
}

Jet2 geodesic_residual(const Foliation &F, const ProjectiveStructure &pi)
{
    const Jet2 s = slope(F);
    const Jet2 f = pi.A() + s * (pi.B() + s * (pi.C() + s * pi.D()));
    return d_dx(s) + s * d_dy(s) - f;
}

bool is_geodesic(const Foliation &F, const ProjectiveStructure &pi) { return geodesic_residual(F, pi).is_zero(); }

Foliation swap_axes(const Foliation &F) { return {transpose(F.Q()), transpose(F.P())}; }

bool is_geodesic_any_chart(const Foliation &F, const ProjectiveStructure &pi)
{
    if (F.vertical_at_origin()) {
        return is_geodesic(swap_axes(F), swap_axes(pi));
    }
    return is_geodesic(F, pi);
}

ProjectiveStructure structure_from_pencil(const Pencil &pencil)
{
    const Jet2 W = pencil.wedge();
    if (sgn(W.constant_term()) == 0) {
        throw Error(ErrorKind::DegenerateWedge, "omega_0 and omega_inf are tangent at the origin");
    }
    const Jet2 &P0 = pencil.omega0().P(), &Q0 = pencil.omega0().Q();
    const Jet2 &Pi = pencil.omega_inf().P(), &Qi = pencil.omega_inf().Q();

    // R = P0 + Q0 p, S = Pinf + Qinf p; f = [R (S_x + S_y p) - (R_x + R_y p) S] / W.
    const SlopePoly<Jet2> R{P0, Q0}, S{Pi, Qi};
    const SlopePoly<Jet2> dS{d_dx(Pi), d_dx(Qi) + d_dy(Pi), d_dy(Qi)};
    const SlopePoly<Jet2> dR{d_dx(P0), d_dx(Q0) + d_dy(P0), d_dy(Q0)};
    const SlopePoly<Jet2> numer = R * dS - dR * S;
    if (numer.degree() > 3) {
        throw std::logic_error("pencil numerator has degree above 3 in the slope");
    }
    const Jet2 inv = reciprocal(W);
    return {numer[0] * inv, numer[1] * inv, numer[2] * inv, numer[3] * inv};
}

OneForm lie_derivative_form(const VectorField &v, const OneForm &w)
{
    return {apply(v, w.P) + w.P * d_dx(v.a) + w.Q * d_dx(v.b), apply(v, w.Q) + w.P * d_dy(v.a) + w.Q * d_dy(v.b)};
}

Jet2 pencil_parameter(const Pencil &pencil, const Jet2 &curve)
{
    const Jet2 p = d_dx(curve);
    const Jet2 num = along_graph(pencil.omega0().P(), curve) + along_graph(pencil.omega0().Q(), curve) * p;
    const Jet2 den = along_graph(pencil.omega_inf().P(), curve) + along_graph(pencil.omega_inf().Q(), curve) * p;
    if (sgn(den.constant_term()) == 0) {
        throw Error(ErrorKind::PreconditionViolated, "the curve is tangent to omega_inf at the origin");
    }
    return -(num / den);
}

} // namespace projkit

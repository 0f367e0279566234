#include "projkit/structure.hpp"

#include <algorithm>
#include <sstream>

#include "projkit/error.hpp"

namespace projkit {

namespace {

int min_order(const Jet2 &a, const Jet2 &b, const Jet2 &c, const Jet2 &d)
{
    return std::min({a.order(), b.order(), c.order(), d.order()});
}

// Coefficients of the transformed equation over any jet-like ring.
//
// For (X, Y) = Phi(x, y) and slope p, the image curve has slope
// Yd / Xd with Xd = X_x + X_y p, Yd = Y_x + Y_y p, and its second derivative
// satisfies J * y'' = f(X, Y, Yd/Xd) Xd^3 - (Y_xx + 2 Y_xy p + Y_yy p^2) Xd
//                     + (X_xx + 2 X_xy p + X_yy p^2) Yd.
template <class Fn>
std::array<Fn, 4> transform(const std::array<Fn, 4> &bar, const Fn &X, const Fn &Y)
{
    const Fn Xx = d_dx(X), Xy = d_dy(X), Yx = d_dx(Y), Yy = d_dy(Y);
    const Fn J = Xx * Yy - Xy * Yx;

    const SlopePoly<Fn> Xd{Xx, Xy};
    const SlopePoly<Fn> Yd{Yx, Yy};
    const SlopePoly<Fn> Xsec{d_dx(Xx), d_dy(Xx) * Rational(2), d_dy(Xy)};
    const SlopePoly<Fn> Ysec{d_dx(Yx), d_dy(Yx) * Rational(2), d_dy(Yy)};

    const SlopePoly<Fn> Xd2 = Xd * Xd;
    const SlopePoly<Fn> Yd2 = Yd * Yd;
    SlopePoly<Fn> numer = bar[0] * (Xd2 * Xd) + bar[1] * (Xd2 * Yd) + bar[2] * (Xd * Yd2) + bar[3] * (Yd2 * Yd)
                          - Ysec * Xd + Xsec * Yd;
    if (numer.degree() > 3) {
        throw Error(ErrorKind::PreconditionViolated, "transformed equation is not cubic in the slope");
    }
    std::array<Fn, 4> out;
    for (std::size_t k = 0; k < 4; ++k) {
        out[k] = numer[k] / J;
    }
    return out;
}

Jet2 require_x_only(const Jet2 &u, const char *what)
{
    if (u.depends_on_y()) {
        throw Error(ErrorKind::PreconditionViolated, std::string(what) + " must depend on x only");
    }
    return u;
}

} // namespace

ProjectiveStructure::ProjectiveStructure(int order)
    : coeffs_{Jet2(order), Jet2(order), Jet2(order), Jet2(order)}
{
}

ProjectiveStructure::ProjectiveStructure(Jet2 A, Jet2 B, Jet2 C, Jet2 D)
{
    const int n = min_order(A, B, C, D);
    coeffs_ = {A.reordered(n), B.reordered(n), C.reordered(n), D.reordered(n)};
}

int ProjectiveStructure::effective_order() const
{
    int e = coeffs_[0].effective_order();
    for (const auto &c : coeffs_) {
        e = std::min(e, c.effective_order());
    }
    return e;
}

bool ProjectiveStructure::depends_on_y() const
{
    return std::any_of(coeffs_.begin(), coeffs_.end(), [](const Jet2 &c) { return c.depends_on_y(); });
}

ProjectiveStructure ProjectiveStructure::reordered(int order) const
{
    return {coeffs_[0].reordered(order), coeffs_[1].reordered(order), coeffs_[2].reordered(order),
            coeffs_[3].reordered(order)};
}

ProjectiveStructure operator+(const ProjectiveStructure &a, const ProjectiveStructure &b)
{
    return {a.A() + b.A(), a.B() + b.B(), a.C() + b.C(), a.D() + b.D()};
}

ProjectiveStructure operator-(const ProjectiveStructure &a, const ProjectiveStructure &b)
{
    return {a.A() - b.A(), a.B() - b.B(), a.C() - b.C(), a.D() - b.D()};
}

ProjectiveStructure operator*(const Rational &c, const ProjectiveStructure &a)
{
    return {c * a.A(), c * a.B(), c * a.C(), c * a.D()};
}

bool agree(const ProjectiveStructure &a, const ProjectiveStructure &b)
{
    for (std::size_t k = 0; k < 4; ++k) {
        if (!agree(a[k], b[k])) {
            return false;
        }
    }
    return true;
}

std::string to_string(const ProjectiveStructure &pi)
{
    std::ostringstream os;
    os << "A = " << pi.A() << "\nB = " << pi.B() << "\nC = " << pi.C() << "\nD = " << pi.D();
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const ProjectiveStructure &pi) { return os << to_string(pi); }

DiffeoGerm::DiffeoGerm(Jet2 x_map, Jet2 y_map)
{
    const int n = std::min(x_map.order(), y_map.order());
    x_ = x_map.reordered(n);
    y_ = y_map.reordered(n);
    if (sgn(x_.constant_term()) != 0 || sgn(y_.constant_term()) != 0) {
        throw Error(ErrorKind::NonZeroConstantTerm, "a germ must fix the origin");
    }
    const Rational det = x_.coeff(1, 0) * y_.coeff(0, 1) - x_.coeff(0, 1) * y_.coeff(1, 0);
    if (sgn(det) == 0) {
        throw Error(ErrorKind::DegenerateJacobian, "Jacobian determinant vanishes at the origin");
    }
}

DiffeoGerm DiffeoGerm::identity(int order) { return {Jet2::x(order), Jet2::y(order)}; }

DiffeoGerm DiffeoGerm::x_change(const Jet2 &psi)
{
    return {require_x_only(psi, "psi"), Jet2::y(psi.order())};
}

DiffeoGerm DiffeoGerm::y_shift(const Jet2 &phi)
{
    return {Jet2::x(phi.order()), Jet2::y(phi.order()) + require_x_only(phi, "phi")};
}

DiffeoGerm DiffeoGerm::y_scaling(const Rational &a, int order) { return linear(Rational(1), a, order); }

DiffeoGerm DiffeoGerm::linear(const Rational &k, const Rational &a, int order)
{
    return {Jet2::monomial(1, 0, k, order), Jet2::monomial(0, 1, a, order)};
}

DiffeoGerm compose(const DiffeoGerm &outer, const DiffeoGerm &inner)
{
    return {substitute(outer.x_map(), inner.x_map(), inner.y_map()),
            substitute(outer.y_map(), inner.x_map(), inner.y_map())};
}

LiouvillePair liouville(const ProjectiveStructure &pi)
{
    const Jet2 &A = pi.A(), &B = pi.B(), &C = pi.C(), &D = pi.D();
    const Jet2 Ax = d_dx(A), Ay = d_dy(A);
    const Jet2 Bx = d_dx(B), By = d_dy(B);
    const Jet2 Cx = d_dx(C), Cy = d_dy(C);
    const Jet2 Dx = d_dx(D), Dy = d_dy(D);

    Jet2 L1 = Rational(2) * d_dy(Bx) - d_dx(Cx) - Rational(3) * d_dy(Ay) - Rational(6) * A * Dx
              - Rational(3) * Ax * D + Rational(3) * d_dy(A * C) + B * Cx - Rational(2) * B * By;
    Jet2 L2 = Rational(2) * d_dy(Cx) - d_dy(By) - Rational(3) * d_dx(Dx) + Rational(6) * Ay * D
              + Rational(3) * A * Dy - Rational(3) * d_dx(B * D) - By * C + Rational(2) * C * Cx;
    return {std::move(L1), std::move(L2)};
}

bool is_linearizable(const ProjectiveStructure &pi)
{
    const LiouvillePair L = liouville(pi);
    return L.L1.is_zero() && L.L2.is_zero();
}

ProjectiveStructure pullback(const DiffeoGerm &phi, const ProjectiveStructure &pi)
{
    const int n = std::min(phi.order(), pi.order());
    const Jet2 X = phi.x_map().reordered(n);
    const Jet2 Y = phi.y_map().reordered(n);
    if (sgn(X.coeff(1, 0) * Y.coeff(0, 1) - X.coeff(0, 1) * Y.coeff(1, 0)) == 0) {
        throw Error(ErrorKind::DegenerateJacobian, "Jacobian determinant vanishes at the origin");
    }
    std::array<Jet2, 4> bar;
    for (std::size_t k = 0; k < 4; ++k) {
        bar[k] = substitute(pi[k].reordered(n), X, Y);
    }
    auto out = transform(bar, X, Y);
    return {out[0], out[1], out[2], out[3]};
}

std::array<DualJet, 4> pullback(const DualJet &x_map, const DualJet &y_map, const ProjectiveStructure &pi)
{
    const Jet2 &X = x_map.value, &Y = y_map.value;
    if (sgn(X.coeff(1, 0) * Y.coeff(0, 1) - X.coeff(0, 1) * Y.coeff(1, 0)) == 0) {
        throw Error(ErrorKind::DegenerateJacobian, "Jacobian determinant vanishes at the origin");
    }
    std::array<DualJet, 4> bar;
    for (std::size_t k = 0; k < 4; ++k) {
        bar[k] = compose(pi[k], x_map, y_map);
    }
    return transform(bar, x_map, y_map);
}

ProjectiveStructure c_star_action(const Rational &lambda, const ProjectiveStructure &pi)
{
    const Jet2 one = Jet2::constant(Rational(1), pi.order());
    if (pi.A().depends_on_y() || pi.B().depends_on_y() || !pi.C().is_zero() || !agree(pi.D(), one)) {
        throw Error(ErrorKind::NotInNormalForm, "expected (A(x), B(x), 0, 1)");
    }
    if (sgn(lambda) == 0) {
        throw Error(ErrorKind::PreconditionViolated, "lambda must be nonzero");
    }
    const Rational l2 = lambda * lambda;
    return {l2 * lambda * rescale_x(pi.A(), l2), l2 * rescale_x(pi.B(), l2), pi.C(), pi.D()};
}

ProjectiveStructure swap_axes(const ProjectiveStructure &pi)
{
    return {-transpose(pi.D()), -transpose(pi.C()), -transpose(pi.B()), -transpose(pi.A())};
}

Normalization normalize_D1(const ProjectiveStructure &pi)
{
    if (pi.depends_on_y()) {
        throw Error(ErrorKind::PreconditionViolated, "normalize_D1 needs x-only coefficients");
    }
    if (sgn(pi.D().constant_term()) == 0) {
        throw Error(ErrorKind::PreconditionViolated, "normalize_D1 needs D(0) != 0");
    }
    const int n = pi.order();
    const Jet2 psi = comp_inverse(integrate_x(reciprocal(pi.D())));
    const DiffeoGerm step1 = DiffeoGerm::x_change(psi);
    const ProjectiveStructure pi1 = pullback(step1, pi);

    const Jet2 phi = integrate_x(pi1.C() * make_rational(-1, 3));
    const DiffeoGerm step2 = DiffeoGerm::y_shift(phi);
    const ProjectiveStructure pi2 = pullback(step2, pi1);

    const int e = pi2.effective_order();
    const Jet2 zero = Jet2(n).with_effective_order(e);
    const Jet2 one = Jet2::constant(Rational(1), n).with_effective_order(e);
    if (!agree(pi2.C(), zero) || !agree(pi2.D(), one)) {
        throw Error(ErrorKind::PreconditionViolated, "normalization did not reach C = 0, D = 1");
    }
    return {ProjectiveStructure(pi2.A(), pi2.B(), zero, one), compose(step1, step2), Rational(1)};
}

Normalization normalize_ib(const ProjectiveStructure &pi)
{
    if (pi.depends_on_y()) {
        throw Error(ErrorKind::PreconditionViolated, "normalize_ib needs x-only coefficients");
    }
    if (!pi.D().is_zero()) {
        throw Error(ErrorKind::PreconditionViolated, "normalize_ib needs D = 0");
    }
    const Rational c0 = pi.C().constant_term();
    if (sgn(c0) == 0 || sgn(pi.C().coeff(1, 0)) == 0) {
        throw Error(ErrorKind::PreconditionViolated, "normalize_ib needs C(0) != 0 and C'(0) != 0");
    }
    const int n = pi.order();
    const Rational a = 1 / c0;
    const DiffeoGerm step1 = DiffeoGerm::y_scaling(a, n);
    const ProjectiveStructure pi1 = pullback(step1, pi);

    const Jet2 G = comp_inverse(pi1.C() - Rational(1));
    const Jet2 ex = exp_series(Jet2::x(n));
    const Jet2 psi = substitute(G, ex - Rational(1), Jet2(n));
    const DiffeoGerm step2 = DiffeoGerm::x_change(psi);
    const ProjectiveStructure pi2 = pullback(step2, pi1);

    const Jet2 phi = integrate_x(pi2.B() / (pi2.C() * Rational(-2)));
    const DiffeoGerm step3 = DiffeoGerm::y_shift(phi);
    const ProjectiveStructure pi3 = pullback(step3, pi2);

    const int e = pi3.effective_order();
    const Jet2 zero = Jet2(n).with_effective_order(e);
    const Jet2 C = ex.with_effective_order(e);
    if (!agree(pi3.B(), zero) || !agree(pi3.C(), C) || !agree(pi3.D(), zero)) {
        throw Error(ErrorKind::PreconditionViolated, "normalization did not reach B = 0, C = e^x, D = 0");
    }
    return {ProjectiveStructure(pi3.A(), zero, C, zero), compose(step1, compose(step2, step3)), a};
}

Jet2 along_graph(const Jet2 &F, const Jet2 &curve)
{
    if (sgn(curve.constant_term()) == 0) {
        return substitute(F, Jet2::x(curve.order()), curve);
    }
    if (F.depends_on_y()) {
        throw Error(ErrorKind::PreconditionViolated,
                    "a curve off the x-axis needs coefficients independent of y");
    }
    return F.reordered(curve.order()).with_effective_order(std::min(F.effective_order(), curve.effective_order()));
}

Jet2 geodesic_solve(const ProjectiveStructure &pi_in, const Rational &y0, const Rational &p0, int order)
{
    if (sgn(y0) != 0 && pi_in.depends_on_y()) {
        throw Error(ErrorKind::PreconditionViolated,
                    "a nonzero initial height needs coefficients independent of y");
    }
    const ProjectiveStructure pi = pi_in.reordered(order);
    const int last = std::min(order - 2, pi.effective_order());

    Jet2 y(order);
    y.set_coeff(0, 0, y0);
    if (order >= 1) {
        y.set_coeff(1, 0, p0);
    }
    for (int k = 0; k <= last; ++k) {
        // f_k only involves y up to degree k + 1, which is already fixed.
        const Jet2 p = d_dx(y);
        const Jet2 f = along_graph(pi.A(), y) + along_graph(pi.B(), y) * p
                       + along_graph(pi.C(), y) * p * p + along_graph(pi.D(), y) * p * p * p;
        y.set_coeff(k + 2, 0, f.coeff(k, 0) / ((k + 1) * (k + 2)));
    }
    return y.with_effective_order(std::min(order, last + 2));
}

} // namespace projkit

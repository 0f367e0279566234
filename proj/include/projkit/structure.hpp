#pragma once

#include <array>
#include <ostream>
#include <string>

#include "projkit/dual.hpp"
#include "projkit/jet.hpp"
#include "projkit/slope_poly.hpp"

namespace projkit {

/// Germ of the second-order ODE y'' = A + B p + C p^2 + D p^3, p = y'.
class ProjectiveStructure {
public:
    ProjectiveStructure() : ProjectiveStructure(kDefaultOrder) {}
    explicit ProjectiveStructure(int order);
    /// Mixed orders are truncated to the smallest one.
    ProjectiveStructure(Jet2 A, Jet2 B, Jet2 C, Jet2 D);

    const Jet2 &A() const { return coeffs_[0]; }
    const Jet2 &B() const { return coeffs_[1]; }
    const Jet2 &C() const { return coeffs_[2]; }
    const Jet2 &D() const { return coeffs_[3]; }
    const Jet2 &operator[](std::size_t k) const { return coeffs_[k]; }
    const std::array<Jet2, 4> &coefficients() const { return coeffs_; }

    int order() const { return coeffs_[0].order(); }
    int effective_order() const;
    bool depends_on_y() const;

    /// Right-hand side as a cubic in the slope.
    SlopePoly<Jet2> rhs() const { return SlopePoly<Jet2>{coeffs_[0], coeffs_[1], coeffs_[2], coeffs_[3]}; }

    ProjectiveStructure reordered(int order) const;

    friend ProjectiveStructure operator+(const ProjectiveStructure &a, const ProjectiveStructure &b);
    friend ProjectiveStructure operator-(const ProjectiveStructure &a, const ProjectiveStructure &b);
    friend ProjectiveStructure operator*(const Rational &c, const ProjectiveStructure &a);

private:
    std::array<Jet2, 4> coeffs_;
};

/// All four coefficients agree to the common effective order.
bool agree(const ProjectiveStructure &a, const ProjectiveStructure &b);
std::string to_string(const ProjectiveStructure &pi);
std::ostream &operator<<(std::ostream &os, const ProjectiveStructure &pi);

/// Local diffeomorphism (x, y) -> (X(x, y), Y(x, y)) fixing the origin.
class DiffeoGerm {
public:
    /// Throws NonZeroConstantTerm if a component moves the origin and
    /// DegenerateJacobian if the linear part is singular.
    DiffeoGerm(Jet2 x_map, Jet2 y_map);

    static DiffeoGerm identity(int order = kDefaultOrder);
    /// (psi(x), y)
    static DiffeoGerm x_change(const Jet2 &psi);
    /// (x, y + phi(x))
    static DiffeoGerm y_shift(const Jet2 &phi);
    /// (x, a y)
    static DiffeoGerm y_scaling(const Rational &a, int order = kDefaultOrder);
    /// (k x, a y)
    static DiffeoGerm linear(const Rational &k, const Rational &a, int order = kDefaultOrder);

    const Jet2 &x_map() const { return x_; }
    const Jet2 &y_map() const { return y_; }
    int order() const { return x_.order(); }

private:
    Jet2 x_;
    Jet2 y_;
};

/// (outer o inner)(x, y) = outer(inner(x, y)).
DiffeoGerm compose(const DiffeoGerm &outer, const DiffeoGerm &inner);

struct LiouvillePair {
    Jet2 L1;
    Jet2 L2;
};

LiouvillePair liouville(const ProjectiveStructure &pi);

/// Both Liouville invariants vanish up to their effective order.
bool is_linearizable(const ProjectiveStructure &pi);

/// Structure whose geodesics are the preimages under phi of the geodesics of
/// pi. With phi = (psi(x), y), (x, y + phi(x)) or (x, a y) this reproduces
/// the classical transformation laws coefficient by coefficient.
ProjectiveStructure pullback(const DiffeoGerm &phi, const ProjectiveStructure &pi);

/// The same transformation carried out over dual jets, for maps
/// (X0 + eps X1, Y0 + eps Y1). Returns the four transformed coefficients.
std::array<DualJet, 4> pullback(const DualJet &x_map, const DualJet &y_map, const ProjectiveStructure &pi);

/// (A(x), B(x), 0, 1) -> (l^3 A(l^2 x), l^2 B(l^2 x), 0, 1).
/// Throws NotInNormalForm unless C = 0, D = 1 and A, B depend on x only.
ProjectiveStructure c_star_action(const Rational &lambda, const ProjectiveStructure &pi);

/// Structure describing x as a function of y.
ProjectiveStructure swap_axes(const ProjectiveStructure &pi);

struct Normalization {
    ProjectiveStructure structure;
    DiffeoGerm germ;
    Rational scale{1};
};

/// (A, B, C, D) with x-only coefficients and D(0) != 0 -> (A*, B*, 0, 1).
/// The returned germ satisfies pullback(germ, pi) == structure.
Normalization normalize_D1(const ProjectiveStructure &pi);

/// (A, B, C, 0) with x-only coefficients, C(0) != 0, C'(0) != 0
/// -> (A*, 0, e^x, 0). `scale` is the factor a of the y-scaling used.
Normalization normalize_ib(const ProjectiveStructure &pi);

/// Series solution y(x) of y'' = f(x, y, y') with y(0) = y0, y'(0) = p0.
/// A nonzero y0 requires coefficients independent of y.
Jet2 geodesic_solve(const ProjectiveStructure &pi, const Rational &y0, const Rational &p0,
                    int order = kDefaultOrder);

/// F(x, y(x)) for a univariate curve y; see geodesic_solve for the y0 rule.
Jet2 along_graph(const Jet2 &F, const Jet2 &curve);

} // namespace projkit

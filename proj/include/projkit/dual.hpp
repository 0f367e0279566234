#pragma once

#include "projkit/jet.hpp"

namespace projkit {

/// Jets extended by a nilpotent eps with eps^2 = 0: value + eps * tangent.
/// Used to push a computation along the infinitesimal flow of a vector field.
struct DualJet {
    Jet2 value;
    Jet2 tangent;

    DualJet() = default;
    DualJet(Jet2 v, Jet2 t) : value(std::move(v)), tangent(std::move(t)) {}
    explicit DualJet(const Jet2 &v) : value(v), tangent(Jet2(v.order())) {}

    friend DualJet operator+(const DualJet &a, const DualJet &b)
    {
        return {a.value + b.value, a.tangent + b.tangent};
    }
    friend DualJet operator-(const DualJet &a, const DualJet &b)
    {
        return {a.value - b.value, a.tangent - b.tangent};
    }
    friend DualJet operator*(const DualJet &a, const DualJet &b)
    {
        return {a.value * b.value, a.value * b.tangent + a.tangent * b.value};
    }
    friend DualJet operator*(const DualJet &a, const Rational &c) { return {a.value * c, a.tangent * c}; }
    friend DualJet operator/(const DualJet &a, const DualJet &b)
    {
        const Jet2 inv = reciprocal(b.value);
        return {a.value * inv, (a.tangent * b.value - a.value * b.tangent) * inv * inv};
    }
};

inline bool is_zero(const DualJet &u) { return u.value.is_zero() && u.tangent.is_zero(); }

inline DualJet d_dx(const DualJet &u) { return {d_dx(u.value), d_dx(u.tangent)}; }
inline DualJet d_dy(const DualJet &u) { return {d_dy(u.value), d_dy(u.tangent)}; }

/// F(X, Y) for a plain jet F and dual arguments:
/// F(X0, Y0) + eps * (F_x(X0, Y0) X1 + F_y(X0, Y0) Y1).
inline DualJet compose(const Jet2 &F, const DualJet &X, const DualJet &Y)
{
    Jet2 value = substitute(F, X.value, Y.value);
    Jet2 tangent = substitute(d_dx(F), X.value, Y.value) * X.tangent + substitute(d_dy(F), X.value, Y.value) * Y.tangent;
    return {std::move(value), std::move(tangent)};
}

inline Jet2 compose(const Jet2 &F, const Jet2 &X, const Jet2 &Y) { return substitute(F, X, Y); }

} // namespace projkit

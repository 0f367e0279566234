#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "projkit/rational.hpp"

namespace projkit {

inline constexpr int kDefaultOrder = 12;

/// Truncated bivariate power series at the origin with exact rational
/// coefficients.
///
/// A Jet2 carries two orders. The nominal order N bounds the stored total
/// degree. The effective order E <= N is the highest total degree whose
/// coefficients are actually known: differentiation lowers it by one, and
/// binary operations take the minimum of their operands. Coefficients above
/// E are kept at zero and must not be trusted; comparisons look only up to E.
/// E == -1 means no coefficient is known.
class Jet2 {
public:
    Jet2() : Jet2(kDefaultOrder) {}
    explicit Jet2(int order);

    static Jet2 constant(const Rational &c, int order = kDefaultOrder);
    static Jet2 x(int order = kDefaultOrder);
    static Jet2 y(int order = kDefaultOrder);
    static Jet2 monomial(int i, int j, const Rational &c, int order = kDefaultOrder);

    int order() const noexcept { return order_; }
    int effective_order() const noexcept { return effective_; }

    /// Coefficient of x^i y^j; zero for exponents beyond the order.
    const Rational &coeff(int i, int j) const;
    void set_coeff(int i, int j, const Rational &c);
    const Rational &constant_term() const { return coeff(0, 0); }

    /// Same data reported at a lower effective order.
    Jet2 with_effective_order(int effective) const;
    /// Re-embed at another nominal order: truncates when lowering, and pads
    /// with unknown coefficients when raising.
    Jet2 reordered(int order) const;

    /// Zero up to the effective order.
    bool is_zero() const;
    bool depends_on_y() const;
    bool depends_on_x() const;

    /// Lowest-degree nonzero known coefficient (total degree, then i).
    struct Term {
        int i;
        int j;
        Rational c;
    };
    std::optional<Term> leading_term() const;

    Jet2 &operator+=(const Jet2 &other);
    Jet2 &operator-=(const Jet2 &other);
    Jet2 &operator*=(const Jet2 &other);
    Jet2 &operator*=(const Rational &c);

    friend Jet2 operator+(Jet2 lhs, const Jet2 &rhs) { return lhs += rhs; }
    friend Jet2 operator-(Jet2 lhs, const Jet2 &rhs) { return lhs -= rhs; }
    friend Jet2 operator*(const Jet2 &lhs, const Jet2 &rhs);
    friend Jet2 operator*(Jet2 lhs, const Rational &c) { return lhs *= c; }
    friend Jet2 operator*(const Rational &c, Jet2 rhs) { return rhs *= c; }
    friend Jet2 operator/(const Jet2 &lhs, const Jet2 &rhs);
    friend Jet2 operator-(Jet2 u);

    friend Jet2 operator+(Jet2 lhs, const Rational &c);
    friend Jet2 operator+(const Rational &c, Jet2 rhs) { return std::move(rhs) + c; }
    friend Jet2 operator-(Jet2 lhs, const Rational &c) { return std::move(lhs) + Rational(-c); }
    friend Jet2 operator-(const Rational &c, Jet2 rhs) { return -std::move(rhs) + c; }

    /// Strict equality: same orders and same stored coefficients.
    friend bool operator==(const Jet2 &a, const Jet2 &b);

    /// Homogeneous part of total degree d of lhs*rhs.
    friend void accumulate_product_degree(Jet2 &target, const Jet2 &lhs, const Jet2 &rhs, int d);

private:
    static std::size_t index(int i, int j)
    {
        const int d = i + j;
        return static_cast<std::size_t>(d * (d + 1) / 2 + j);
    }
    static std::size_t size_for(int order) { return static_cast<std::size_t>((order + 1) * (order + 2) / 2); }
    void clear_unknown();

    int order_;
    int effective_;
    std::vector<Rational> coeffs_;
};

/// Equality up to the smaller effective order of the two operands.
bool agree(const Jet2 &a, const Jet2 &b);
inline bool is_zero(const Jet2 &u) { return u.is_zero(); }

Jet2 neg(const Jet2 &u);
Jet2 add(const Jet2 &u, const Jet2 &v);
Jet2 mul(const Jet2 &u, const Jet2 &v);
/// Throws NonUnitDivisor when v has zero constant term.
Jet2 div(const Jet2 &u, const Jet2 &v);
Jet2 reciprocal(const Jet2 &v);
Jet2 pow(const Jet2 &u, long exponent);

Jet2 d_dx(const Jet2 &u);
Jet2 d_dy(const Jet2 &u);
/// Antiderivative in x with zero integration constant.
Jet2 integrate_x(const Jet2 &u);

/// F(u(x,y), v(x,y)); u and v must vanish at the origin.
Jet2 substitute(const Jet2 &F, const Jet2 &u, const Jet2 &v);
/// Swap the roles of x and y.
Jet2 transpose(const Jet2 &u);
/// u(x) -> u(k x).
Jet2 rescale_x(const Jet2 &u, const Rational &k);

/// Compositional inverse of a univariate series in x with u(0) = 0, u'(0) != 0.
Jet2 comp_inverse(const Jet2 &u);
Jet2 exp_series(const Jet2 &u);
/// Principal square root; the constant term must be a rational square.
Jet2 sqrt_series(const Jet2 &u);

/// Monomial list "c * x^i y^j" sorted by total degree then i, followed by
/// the truncation marker O(E+1).
std::string to_string(const Jet2 &u);
std::ostream &operator<<(std::ostream &os, const Jet2 &u);
std::string term_to_string(const Jet2::Term &t);

} // namespace projkit

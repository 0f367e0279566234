#include "projkit/jet.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "projkit/error.hpp"

namespace projkit {

namespace {

const Rational &zero_rational()
{
    static const Rational zero(0);
    return zero;
}

void check_order(int order)
{
    if (order < 0) {
        throw Error(ErrorKind::PreconditionViolated, "negative truncation order");
    }
}

// Nonzero known coefficients of u as (i, j, &c), sorted by total degree.
struct Entry {
    int i;
    int j;
    const Rational *c;
};

std::vector<Entry> nonzero_entries(const Jet2 &u, int max_degree)
{
    std::vector<Entry> out;
    const int top = std::min(max_degree, u.effective_order());
    for (int d = 0; d <= top; ++d) {
        for (int j = 0; j <= d; ++j) {
            const Rational &c = u.coeff(d - j, j);
            if (sgn(c) != 0) {
                out.push_back({d - j, j, &c});
            }
        }
    }
    return out;
}

} // namespace

Jet2::Jet2(int order) : order_(order), effective_(order)
{
    check_order(order);
    coeffs_.resize(size_for(order));
}

Jet2 Jet2::constant(const Rational &c, int order)
{
    Jet2 u(order);
    u.coeffs_[0] = c;
    return u;
}

Jet2 Jet2::x(int order) { return monomial(1, 0, Rational(1), order); }

Jet2 Jet2::y(int order) { return monomial(0, 1, Rational(1), order); }

Jet2 Jet2::monomial(int i, int j, const Rational &c, int order)
{
    Jet2 u(order);
    if (i + j <= order) {
        u.coeffs_[index(i, j)] = c;
    }
    return u;
}

const Rational &Jet2::coeff(int i, int j) const
{
    if (i < 0 || j < 0 || i + j > order_) {
        return zero_rational();
    }
    return coeffs_[index(i, j)];
}

void Jet2::set_coeff(int i, int j, const Rational &c)
{
    if (i < 0 || j < 0 || i + j > effective_) {
        throw Error(ErrorKind::PreconditionViolated, "coefficient index beyond effective order");
    }
    coeffs_[index(i, j)] = c;
}

Jet2 Jet2::with_effective_order(int effective) const
{
    Jet2 out = *this;
    out.effective_ = std::min(effective_, std::max(effective, -1));
    out.clear_unknown();
    return out;
}

Jet2 Jet2::reordered(int order) const
{
    check_order(order);
    Jet2 out(order);
    out.effective_ = std::min(effective_, order);
    const std::size_t n = std::min(coeffs_.size(), out.coeffs_.size());
    std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n), out.coeffs_.begin());
    out.clear_unknown();
    return out;
}

void Jet2::clear_unknown()
{
    for (std::size_t k = size_for(effective_); k < coeffs_.size(); ++k) {
        coeffs_[k] = 0;
    }
}

bool Jet2::is_zero() const
{
    const std::size_t known = size_for(effective_);
    for (std::size_t k = 0; k < known; ++k) {
        if (sgn(coeffs_[k]) != 0) {
            return false;
        }
    }
    return true;
}

bool Jet2::depends_on_y() const
{
    for (int d = 1; d <= effective_; ++d) {
        for (int j = 1; j <= d; ++j) {
            if (sgn(coeff(d - j, j)) != 0) {
                return true;
            }
        }
    }
    return false;
}

bool Jet2::depends_on_x() const
{
    return transpose(*this).depends_on_y();
}

std::optional<Jet2::Term> Jet2::leading_term() const
{
    for (int d = 0; d <= effective_; ++d) {
        for (int i = 0; i <= d; ++i) {
            const Rational &c = coeff(i, d - i);
            if (sgn(c) != 0) {
                return Term{i, d - i, c};
            }
        }
    }
    return std::nullopt;
}

Jet2 &Jet2::operator+=(const Jet2 &other)
{
    if (other.order_ < order_) {
        *this = reordered(other.order_);
    }
    effective_ = std::min(effective_, other.effective_);
    const std::size_t known = size_for(effective_);
    for (std::size_t k = 0; k < known; ++k) {
        coeffs_[k] += other.coeffs_[k];
    }
    clear_unknown();
    return *this;
}

Jet2 &Jet2::operator-=(const Jet2 &other)
{
    if (other.order_ < order_) {
        *this = reordered(other.order_);
    }
    effective_ = std::min(effective_, other.effective_);
    const std::size_t known = size_for(effective_);
    for (std::size_t k = 0; k < known; ++k) {
        coeffs_[k] -= other.coeffs_[k];
    }
    clear_unknown();
    return *this;
}

Jet2 &Jet2::operator*=(const Jet2 &other)
{
    *this = *this * other;
    return *this;
}

Jet2 &Jet2::operator*=(const Rational &c)
{
    for (auto &coef : coeffs_) {
        coef *= c;
    }
    return *this;
}

Jet2 operator-(Jet2 u)
{
    for (auto &c : u.coeffs_) {
        c = -c;
    }
    return u;
}

Jet2 operator+(Jet2 lhs, const Rational &c)
{
    if (lhs.effective_ >= 0) {
        lhs.coeffs_[0] += c;
    }
    return lhs;
}

Jet2 operator*(const Jet2 &lhs, const Jet2 &rhs)
{
    const int order = std::min(lhs.order_, rhs.order_);
    Jet2 out(order);
    out.effective_ = std::min({lhs.effective_, rhs.effective_, order});
    const int top = out.effective_;
    const auto a = nonzero_entries(lhs, top);
    const auto b = nonzero_entries(rhs, top);
    Rational tmp;
    for (const auto &ea : a) {
        const int room = top - ea.i - ea.j;
        for (const auto &eb : b) {
            if (eb.i + eb.j > room) {
                break;
            }
            mpq_mul(tmp.get_mpq_t(), ea.c->get_mpq_t(), eb.c->get_mpq_t());
            out.coeffs_[Jet2::index(ea.i + eb.i, ea.j + eb.j)] += tmp;
        }
    }
    return out;
}

void accumulate_product_degree(Jet2 &target, const Jet2 &lhs, const Jet2 &rhs, int d)
{
    Rational tmp;
    for (int da = 0; da <= d; ++da) {
        const int db = d - da;
        for (int ja = 0; ja <= da; ++ja) {
            const Rational &ca = lhs.coeff(da - ja, ja);
            if (sgn(ca) == 0) {
                continue;
            }
            for (int jb = 0; jb <= db; ++jb) {
                const Rational &cb = rhs.coeff(db - jb, jb);
                if (sgn(cb) == 0) {
                    continue;
                }
                mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
                target.coeffs_[Jet2::index(d - ja - jb, ja + jb)] += tmp;
            }
        }
    }
}

Jet2 operator/(const Jet2 &lhs, const Jet2 &rhs) { return lhs * reciprocal(rhs); }

bool operator==(const Jet2 &a, const Jet2 &b)
{
    return a.order_ == b.order_ && a.effective_ == b.effective_ && a.coeffs_ == b.coeffs_;
}

bool agree(const Jet2 &a, const Jet2 &b)
{
    const int top = std::min(a.effective_order(), b.effective_order());
    for (int d = 0; d <= top; ++d) {
        for (int j = 0; j <= d; ++j) {
            if (a.coeff(d - j, j) != b.coeff(d - j, j)) {
                return false;
            }
        }
    }
    return true;
}

Jet2 neg(const Jet2 &u) { return -u; }

Jet2 add(const Jet2 &u, const Jet2 &v) { return u + v; }

Jet2 mul(const Jet2 &u, const Jet2 &v) { return u * v; }

Jet2 div(const Jet2 &u, const Jet2 &v) { return u / v; }

Jet2 reciprocal(const Jet2 &v)
{
    if (v.effective_order() < 0 || sgn(v.constant_term()) == 0) {
        throw Error(ErrorKind::NonUnitDivisor, "divisor has zero constant term");
    }
    const Rational inv0 = Rational(1) / v.constant_term();
    Jet2 r = Jet2::constant(inv0, v.order()).with_effective_order(v.effective_order());
    for (int d = 1; d <= r.effective_order(); ++d) {
        Jet2 partial(r.order());
        accumulate_product_degree(partial, v, r, d);
        for (int j = 0; j <= d; ++j) {
            r.set_coeff(d - j, j, -inv0 * partial.coeff(d - j, j));
        }
    }
    return r;
}

Jet2 pow(const Jet2 &u, long exponent)
{
    if (exponent < 0) {
        return pow(reciprocal(u), -exponent);
    }
    Jet2 result = Jet2::constant(Rational(1), u.order()).with_effective_order(u.effective_order());
    Jet2 base = u;
    unsigned long e = static_cast<unsigned long>(exponent);
    while (e != 0) {
        if (e & 1UL) {
            result *= base;
        }
        e >>= 1;
        if (e != 0) {
            base *= base;
        }
    }
    return result;
}

Jet2 d_dx(const Jet2 &u)
{
    Jet2 out(u.order());
    out = out.with_effective_order(u.effective_order() - 1);
    for (int d = 0; d <= out.effective_order(); ++d) {
        for (int j = 0; j <= d; ++j) {
            const int i = d - j;
            const Rational &c = u.coeff(i + 1, j);
            if (sgn(c) != 0) {
                out.set_coeff(i, j, c * (i + 1));
            }
        }
    }
    return out;
}

Jet2 d_dy(const Jet2 &u)
{
    Jet2 out(u.order());
    out = out.with_effective_order(u.effective_order() - 1);
    for (int d = 0; d <= out.effective_order(); ++d) {
        for (int j = 0; j <= d; ++j) {
            const Rational &c = u.coeff(d - j, j + 1);
            if (sgn(c) != 0) {
                out.set_coeff(d - j, j, c * (j + 1));
            }
        }
    }
    return out;
}

Jet2 integrate_x(const Jet2 &u)
{
    const int effective = std::min(u.effective_order() + 1, u.order());
    Jet2 out = Jet2(u.order()).with_effective_order(effective);
    for (int d = 1; d <= effective; ++d) {
        for (int j = 0; j < d; ++j) {
            const int i = d - j;
            const Rational &c = u.coeff(i - 1, j);
            if (sgn(c) != 0) {
                out.set_coeff(i, j, c / i);
            }
        }
    }
    return out;
}

Jet2 substitute(const Jet2 &F, const Jet2 &u, const Jet2 &v)
{
    if ((u.effective_order() >= 0 && sgn(u.constant_term()) != 0) ||
        (v.effective_order() >= 0 && sgn(v.constant_term()) != 0)) {
        throw Error(ErrorKind::NonZeroConstantTerm, "substituted series must vanish at the origin");
    }
    const int order = std::min({F.order(), u.order(), v.order()});
    const int effective = std::min({F.effective_order(), u.effective_order(), v.effective_order(), order});
    const Jet2 uu = u.reordered(order).with_effective_order(effective);
    const Jet2 vv = v.reordered(order).with_effective_order(effective);

    std::vector<Jet2> vpow;
    vpow.reserve(static_cast<std::size_t>(effective) + 1);
    vpow.push_back(Jet2::constant(Rational(1), order).with_effective_order(effective));
    for (int j = 1; j <= effective; ++j) {
        vpow.push_back(vpow.back() * vv);
    }

    // Horner in u over the inner sums sum_j F_ij v^j.
    Jet2 acc = Jet2(order).with_effective_order(effective);
    for (int i = effective; i >= 0; --i) {
        Jet2 inner = Jet2(order).with_effective_order(effective);
        for (int j = 0; i + j <= effective; ++j) {
            const Rational &c = F.coeff(i, j);
            if (sgn(c) != 0) {
                inner += c * vpow[static_cast<std::size_t>(j)];
            }
        }
        acc = acc * uu + inner;
    }
    return acc;
}

Jet2 transpose(const Jet2 &u)
{
    Jet2 out = Jet2(u.order()).with_effective_order(u.effective_order());
    for (int d = 0; d <= u.effective_order(); ++d) {
        for (int j = 0; j <= d; ++j) {
            out.set_coeff(j, d - j, u.coeff(d - j, j));
        }
    }
    return out;
}

Jet2 rescale_x(const Jet2 &u, const Rational &k)
{
    Jet2 out = u;
    for (int d = 0; d <= u.effective_order(); ++d) {
        for (int i = 1; i <= d; ++i) {
            const Rational &c = u.coeff(i, d - i);
            if (sgn(c) != 0) {
                out.set_coeff(i, d - i, c * pow(k, i));
            }
        }
    }
    return out;
}

Jet2 comp_inverse(const Jet2 &u)
{
    if (u.depends_on_y()) {
        throw Error(ErrorKind::NotInvertible, "series depends on y");
    }
    if (u.effective_order() < 1 || sgn(u.constant_term()) != 0 || sgn(u.coeff(1, 0)) == 0) {
        throw Error(ErrorKind::NotInvertible, "need zero constant term and nonzero linear coefficient");
    }
    const Rational inv1 = Rational(1) / u.coeff(1, 0);
    const Jet2 x = Jet2::x(u.order()).with_effective_order(u.effective_order());
    const Jet2 zero = Jet2(u.order()).with_effective_order(u.effective_order());
    Jet2 v = inv1 * x;
    // Each pass fixes one more degree of the inverse.
    for (int k = 1; k < u.effective_order(); ++k) {
        v -= inv1 * (substitute(u, v, zero) - x);
    }
    return v;
}

Jet2 exp_series(const Jet2 &u)
{
    if (u.effective_order() >= 0 && sgn(u.constant_term()) != 0) {
        throw Error(ErrorKind::NonZeroConstantTerm, "exp of a series with nonzero constant term");
    }
    // Euler operator: theta(E) = E * theta(u) fixes E degree by degree.
    Jet2 theta_u = u;
    for (int d = 1; d <= u.effective_order(); ++d) {
        for (int j = 0; j <= d; ++j) {
            const Rational &c = u.coeff(d - j, j);
            if (sgn(c) != 0) {
                theta_u.set_coeff(d - j, j, c * d);
            }
        }
    }
    Jet2 e = Jet2::constant(Rational(1), u.order()).with_effective_order(u.effective_order());
    for (int d = 1; d <= e.effective_order(); ++d) {
        Jet2 partial(u.order());
        accumulate_product_degree(partial, e, theta_u, d);
        for (int j = 0; j <= d; ++j) {
            e.set_coeff(d - j, j, partial.coeff(d - j, j) / d);
        }
    }
    return e;
}

Jet2 sqrt_series(const Jet2 &u)
{
    if (u.effective_order() < 0) {
        return u;
    }
    Rational root;
    if (sgn(u.constant_term()) == 0) {
        if (u.is_zero()) {
            return u;
        }
        throw Error(ErrorKind::NonSquareConstant, "square root of a series vanishing at the origin");
    }
    if (!rational_sqrt(u.constant_term(), root)) {
        throw Error(ErrorKind::NonSquareConstant,
                    "constant term " + to_string(u.constant_term()) + " is not a rational square");
    }
    const Rational inv2w0 = Rational(1) / (2 * root);
    Jet2 w = Jet2::constant(root, u.order()).with_effective_order(u.effective_order());
    for (int d = 1; d <= w.effective_order(); ++d) {
        Jet2 partial(u.order());
        accumulate_product_degree(partial, w, w, d);
        for (int j = 0; j <= d; ++j) {
            w.set_coeff(d - j, j, (u.coeff(d - j, j) - partial.coeff(d - j, j)) * inv2w0);
        }
    }
    return w;
}

std::string term_to_string(const Jet2::Term &t)
{
    std::string out = to_string(t.c);
    if (t.i == 0 && t.j == 0) {
        return out;
    }
    out += " *";
    if (t.i > 0) {
        out += " x";
        if (t.i > 1) {
            out += "^" + std::to_string(t.i);
        }
    }
    if (t.j > 0) {
        out += " y";
        if (t.j > 1) {
            out += "^" + std::to_string(t.j);
        }
    }
    return out;
}

std::string to_string(const Jet2 &u)
{
    std::string out;
    for (int d = 0; d <= u.effective_order(); ++d) {
        for (int i = 0; i <= d; ++i) {
            const Rational &c = u.coeff(i, d - i);
            if (sgn(c) == 0) {
                continue;
            }
            if (out.empty()) {
                out = term_to_string({i, d - i, c});
            } else if (sgn(c) < 0) {
                out += " - " + term_to_string({i, d - i, Rational(-c)});
            } else {
                out += " + " + term_to_string({i, d - i, c});
            }
        }
    }
    if (out.empty()) {
        out = "0";
    }
    out += " + O(" + std::to_string(u.effective_order() + 1) + ")";
    return out;
}

std::ostream &operator<<(std::ostream &os, const Jet2 &u) { return os << to_string(u); }

} // namespace projkit

#include "projkit/symmetry.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "projkit/dual.hpp"
#include "projkit/error.hpp"
#include "projkit/linalg.hpp"

namespace projkit {

VectorField::VectorField(Jet2 a_, Jet2 b_)
{
    const int n = std::min(a_.order(), b_.order());
    a = a_.reordered(n);
    b = b_.reordered(n);
}

Jet2 apply(const VectorField &v, const Jet2 &F) { return v.a * d_dx(F) + v.b * d_dy(F); }

VectorField operator+(const VectorField &v, const VectorField &w) { return {v.a + w.a, v.b + w.b}; }

VectorField operator-(const VectorField &v, const VectorField &w) { return {v.a - w.a, v.b - w.b}; }

VectorField operator*(const Rational &c, const VectorField &v) { return {c * v.a, c * v.b}; }

bool agree(const VectorField &v, const VectorField &w) { return agree(v.a, w.a) && agree(v.b, w.b); }

std::string to_string(const VectorField &v)
{
    std::ostringstream os;
    os << "a = " << v.a << "\nb = " << v.b;
    return os.str();
}

namespace {

// The slope polynomial f and the partials of it that enter the prolongation.
struct SlopeData {
    SlopePoly<Jet2> f, fx, fy, fp;

    explicit SlopeData(const ProjectiveStructure &pi)
        : f(pi.rhs()),
          fx{d_dx(pi.A()), d_dx(pi.B()), d_dx(pi.C()), d_dx(pi.D())},
          fy{d_dy(pi.A()), d_dy(pi.B()), d_dy(pi.C()), d_dy(pi.D())},
          fp{pi.B(), Rational(2) * pi.C(), Rational(3) * pi.D()}
    {
    }
};

SlopePoly<Jet2> prolongation(const VectorField &v, const SlopeData &s)
{
    const Jet2 &a = v.a, &b = v.b;
    const Jet2 ax = d_dx(a), ay = d_dy(a), bx = d_dx(b), by = d_dy(b);

    const SlopePoly<Jet2> base{d_dx(bx), Rational(2) * d_dy(bx) - d_dx(ax), d_dy(by) - Rational(2) * d_dy(ax),
                               -d_dy(ay)};
    const SlopePoly<Jet2> scale{by - Rational(2) * ax, Rational(-3) * ay};
    const SlopePoly<Jet2> shear{bx, by - ax, -ay};
    return base + scale * s.f - a * s.fx - b * s.fy - shear * s.fp;
}

DeterminingResidual residual(const VectorField &v, const SlopeData &s)
{
    const SlopePoly<Jet2> raw = prolongation(v, s);
    if (raw.size() > 4 && !raw[4].is_zero()) {
        throw std::logic_error("p^4 coefficient of the prolongation does not vanish");
    }
    return {{raw[0], raw[1], raw[2], raw[3]}};
}

} // namespace

SlopePoly<Jet2> prolongation(const VectorField &v, const ProjectiveStructure &pi)
{
    return prolongation(v, SlopeData(pi));
}

bool DeterminingResidual::is_zero() const
{
    return std::all_of(r.begin(), r.end(), [](const Jet2 &c) { return c.is_zero(); });
}

int DeterminingResidual::effective_order() const
{
    int e = r[0].effective_order();
    for (const auto &c : r) {
        e = std::min(e, c.effective_order());
    }
    return e;
}

DeterminingResidual residual(const VectorField &v, const ProjectiveStructure &pi)
{
    return residual(v, SlopeData(pi));
}

bool is_symmetry(const VectorField &v, const ProjectiveStructure &pi) { return residual(v, pi).is_zero(); }

ProjectiveStructure infinitesimal_pullback(const VectorField &v, const ProjectiveStructure &pi)
{
    const int n = std::min(v.order(), pi.order());
    const DualJet X(Jet2::x(n), v.a.reordered(n));
    const DualJet Y(Jet2::y(n), v.b.reordered(n));
    const auto out = pullback(X, Y, pi.reordered(n));
    return {out[0].tangent, out[1].tangent, out[2].tangent, out[3].tangent};
}

VectorField lie_bracket(const VectorField &v, const VectorField &w)
{
    return {apply(v, w.a) - apply(w, v.a), apply(v, w.b) - apply(w, v.b)};
}

namespace {

// Coefficients of the given jets up to total degree `top`, concatenated.
void append_coefficients(Vector &out, const Jet2 &u, int top)
{
    for (int d = 0; d <= top; ++d) {
        for (int j = 0; j <= d; ++j) {
            out.push_back(u.coeff(d - j, j));
        }
    }
}

std::size_t monomial_count(int top) { return top < 0 ? 0 : static_cast<std::size_t>((top + 1) * (top + 2) / 2); }

} // namespace

std::size_t independent_count(const std::vector<VectorField> &vs)
{
    if (vs.empty()) {
        return 0;
    }
    int top = vs.front().effective_order();
    for (const auto &v : vs) {
        top = std::min(top, v.effective_order());
    }
    Matrix m;
    for (const auto &v : vs) {
        Vector row;
        append_coefficients(row, v.a, top);
        append_coefficients(row, v.b, top);
        m.push_back(std::move(row));
    }
    return rank(m, 2 * monomial_count(top));
}

std::size_t symmetry_dim_at(const ProjectiveStructure &pi, int order)
{
    if (order < 2) {
        throw Error(ErrorKind::PreconditionViolated, "symmetry_dim needs order >= 2");
    }
    if (pi.effective_order() < order - 1) {
        throw Error(ErrorKind::PreconditionViolated, "structure is not known to order " + std::to_string(order - 1));
    }
    const SlopeData P(pi.reordered(order));
    const int top = order - 2;
    const std::size_t rows = 4 * monomial_count(top);

    // Columns: monomial fields x^i y^j d/dx and x^i y^j d/dy, with those of
    // degree <= 2 placed last so that the pivots found before them give the
    // rank of the remaining block.
    struct Column {
        int i, j;
        bool along_y;
    };
    std::vector<Column> high, low;
    for (int d = order; d >= 0; --d) {
        for (int j = 0; j <= d; ++j) {
            for (bool along_y : {false, true}) {
                (d <= 2 ? low : high).push_back({d - j, j, along_y});
            }
        }
    }
    std::vector<Column> columns = high;
    columns.insert(columns.end(), low.begin(), low.end());

    Matrix m(rows, Vector(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const Jet2 mono = Jet2::monomial(columns[c].i, columns[c].j, Rational(1), order);
        const VectorField v = columns[c].along_y ? VectorField(Jet2(order), mono) : VectorField(mono, Jet2(order));
        const DeterminingResidual r = residual(v, P);
        std::size_t row = 0;
        for (const auto &rk : r.r) {
            for (int d = 0; d <= top; ++d) {
                for (int j = 0; j <= d; ++j) {
                    m[row++][c] = rk.coeff(d - j, j);
                }
            }
        }
    }
    const Echelon e = row_echelon(m, columns.size());
    const std::size_t rank_all = e.pivots.size();
    const std::size_t rank_high =
        static_cast<std::size_t>(std::count_if(e.pivots.begin(), e.pivots.end(),
                                               [&](std::size_t p) { return p < high.size(); }));
    return low.size() + rank_high - rank_all;
}

SymDimReport symmetry_dim(const ProjectiveStructure &pi, int order)
{
    SymDimReport out;
    out.order = order;
    out.dim_at_order = symmetry_dim_at(pi, order);
    out.dim_at_next = symmetry_dim_at(pi, order + 1);
    out.stabilized = out.dim_at_order == out.dim_at_next;
    return out;
}

namespace {

Vector flatten(const ProjectiveStructure &pi, int top)
{
    Vector out;
    for (const auto &c : pi.coefficients()) {
        append_coefficients(out, c, top);
    }
    return out;
}

Vector flatten(const DeterminingResidual &r, int top)
{
    Vector out;
    for (const auto &c : r.r) {
        append_coefficients(out, c, top);
    }
    return out;
}

ProjectiveStructure combine(const std::vector<ProjectiveStructure> &basis, const Vector &t, int order)
{
    std::array<Jet2, 4> acc{Jet2(order), Jet2(order), Jet2(order), Jet2(order)};
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (sgn(t[i]) == 0) {
            continue;
        }
        for (std::size_t k = 0; k < 4; ++k) {
            acc[k] += t[i] * basis[i][k];
        }
    }
    return {acc[0], acc[1], acc[2], acc[3]};
}

} // namespace

InvariantSpace invariant_structures(const std::vector<VectorField> &fields, int order)
{
    if (order < 1) {
        throw Error(ErrorKind::PreconditionViolated, "invariant_structures needs order >= 1");
    }
    const int work = order + 1;
    std::vector<VectorField> vs;
    for (const auto &v : fields) {
        if (v.effective_order() < work) {
            throw Error(ErrorKind::PreconditionViolated,
                        "fields must be known to order " + std::to_string(work));
        }
        vs.push_back({v.a.reordered(work), v.b.reordered(work)});
    }

    const ProjectiveStructure zero(work);
    ProjectiveStructure particular = zero;
    std::vector<ProjectiveStructure> basis;
    for (std::size_t k = 0; k < 4; ++k) {
        for (int d = 0; d <= order; ++d) {
            for (int j = 0; j <= d; ++j) {
                std::array<Jet2, 4> c{Jet2(work), Jet2(work), Jet2(work), Jet2(work)};
                c[k] = Jet2::monomial(d - j, j, Rational(1), work);
                basis.emplace_back(c[0], c[1], c[2], c[3]);
            }
        }
    }

    const int top = order - 1;
    InvariantSpace out;
    out.order = order;
    for (const auto &v : vs) {
        const Vector rp = flatten(residual(v, particular), top);
        if (basis.empty()) {
            if (std::any_of(rp.begin(), rp.end(), [](const Rational &c) { return sgn(c) != 0; })) {
                return out;
            }
            continue;
        }
        const Vector r0 = flatten(residual(v, zero), top);
        Matrix m(rp.size(), Vector(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const Vector col = flatten(residual(v, basis[i]), top);
            for (std::size_t row = 0; row < col.size(); ++row) {
                m[row][i] = col[row] - r0[row];
            }
        }
        Vector rhs(rp.size());
        for (std::size_t row = 0; row < rp.size(); ++row) {
            rhs[row] = -rp[row];
        }
        const AffineSolution s = solve(m, rhs, basis.size());
        if (!s.consistent) {
            return out;
        }
        particular = particular + combine(basis, s.particular, work);
        std::vector<ProjectiveStructure> next;
        next.reserve(s.kernel.size());
        for (const auto &kv : s.kernel) {
            next.push_back(combine(basis, kv, work));
        }
        basis = std::move(next);
    }

    out.consistent = true;
    out.particular = particular.reordered(order);
    for (const auto &b : basis) {
        out.basis.push_back(b.reordered(order));
    }
    return out;
}

bool InvariantSpace::contains(const ProjectiveStructure &pi) const
{
    if (!consistent) {
        return false;
    }
    const int top = std::min(order, pi.effective_order());
    const Vector target = flatten(pi.reordered(order), top);
    const Vector base = flatten(particular, top);
    Matrix m(target.size(), Vector(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Vector col = flatten(basis[i], top);
        for (std::size_t row = 0; row < col.size(); ++row) {
            m[row][i] = col[row];
        }
    }
    Vector rhs(target.size());
    for (std::size_t row = 0; row < target.size(); ++row) {
        rhs[row] = target[row] - base[row];
    }
    return solve(m, rhs, basis.size()).consistent;
}

} // namespace projkit

#include "projkit/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace projkit {

namespace {

using IntRow = std::vector<Integer>;

// Scale a rational row to integers and divide out the content.
IntRow primitive(const Vector &row)
{
    Integer l = 1;
    for (const auto &c : row) {
        if (sgn(c) != 0) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        }
    }
    IntRow out(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (sgn(row[k]) != 0) {
            out[k] = row[k].get_num() * (l / row[k].get_den());
        }
    }
    return out;
}

void make_primitive(IntRow &row)
{
    Integer g = 0;
    for (const auto &c : row) {
        if (sgn(c) != 0) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) {
                return;
            }
        }
    }
    if (g > 1) {
        for (auto &c : row) {
            if (sgn(c) != 0) {
                mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
            }
        }
    }
}

// target <- p * target - a * pivot_row, where a = target[col], p = pivot_row[col].
void eliminate(IntRow &target, const IntRow &pivot_row, std::size_t col)
{
    if (sgn(target[col]) == 0) {
        return;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), target[col].get_mpz_t(), pivot_row[col].get_mpz_t());
    const Integer p = pivot_row[col] / g;
    const Integer a = target[col] / g;
    for (std::size_t k = 0; k < target.size(); ++k) {
        if (sgn(pivot_row[k]) == 0) {
            if (sgn(target[k]) != 0 && p != 1) {
                target[k] *= p;
            }
        } else {
            target[k] = p * target[k] - a * pivot_row[k];
        }
    }
    make_primitive(target);
}

void check_shape(const Matrix &m, std::size_t columns)
{
    for (const auto &row : m) {
        if (row.size() != columns) {
            throw std::invalid_argument("matrix row has the wrong length");
        }
    }
}

} // namespace

namespace {

Echelon eliminate_rows(const Matrix &m, std::size_t columns, bool reduced)
{
    check_shape(m, columns);
    std::vector<IntRow> rows;
    rows.reserve(m.size());
    for (const auto &r : m) {
        IntRow ir = primitive(r);
        if (std::any_of(ir.begin(), ir.end(), [](const Integer &c) { return sgn(c) != 0; })) {
            make_primitive(ir);
            rows.push_back(std::move(ir));
        }
    }

    std::vector<std::size_t> pivots;
    std::size_t top = 0;
    for (std::size_t col = 0; col < columns && top < rows.size(); ++col) {
        std::size_t best = rows.size();
        for (std::size_t r = top; r < rows.size(); ++r) {
            if (sgn(rows[r][col]) == 0) {
                continue;
            }
            if (best == rows.size() || mpz_cmpabs(rows[r][col].get_mpz_t(), rows[best][col].get_mpz_t()) > 0) {
                best = r;
            }
        }
        if (best == rows.size()) {
            continue;
        }
        std::swap(rows[top], rows[best]);
        for (std::size_t r = reduced ? 0 : top + 1; r < rows.size(); ++r) {
            if (r != top) {
                eliminate(rows[r], rows[top], col);
            }
        }
        pivots.push_back(col);
        ++top;
    }
    rows.resize(top);

    Echelon out;
    out.columns = columns;
    out.pivots = pivots;
    out.rows.reserve(top);
    for (std::size_t r = 0; r < top; ++r) {
        const Integer &p = rows[r][pivots[r]];
        Vector v(columns);
        for (std::size_t k = 0; k < columns; ++k) {
            if (sgn(rows[r][k]) != 0) {
                v[k] = make_rational(rows[r][k], p);
            }
        }
        out.rows.push_back(std::move(v));
    }
    return out;
}

} // namespace

Echelon row_reduce(const Matrix &m, std::size_t columns) { return eliminate_rows(m, columns, true); }

Echelon row_echelon(const Matrix &m, std::size_t columns) { return eliminate_rows(m, columns, false); }

std::size_t rank(const Matrix &m, std::size_t columns) { return row_echelon(m, columns).pivots.size(); }

namespace {

Matrix kernel_of(const Echelon &e)
{
    std::vector<bool> is_pivot(e.columns, false);
    for (auto p : e.pivots) {
        is_pivot[p] = true;
    }
    Matrix basis;
    for (std::size_t free = 0; free < e.columns; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        Vector v(e.columns);
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) {
            v[e.pivots[r]] = -e.rows[r][free];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace

Matrix nullspace(const Matrix &m, std::size_t columns) { return kernel_of(row_reduce(m, columns)); }

AffineSolution solve(const Matrix &m, const Vector &rhs, std::size_t columns)
{
    if (rhs.size() != m.size()) {
        throw std::invalid_argument("right-hand side has the wrong length");
    }
    check_shape(m, columns);
    Matrix augmented = m;
    for (std::size_t r = 0; r < m.size(); ++r) {
        augmented[r].push_back(rhs[r]);
    }
    const Echelon e = row_reduce(augmented, columns + 1);

    AffineSolution out;
    if (!e.pivots.empty() && e.pivots.back() == columns) {
        return out;
    }
    out.consistent = true;
    out.particular.assign(columns, Rational(0));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        out.particular[e.pivots[r]] = e.rows[r][columns];
    }

    Echelon homogeneous = e;
    homogeneous.columns = columns;
    for (auto &row : homogeneous.rows) {
        row.pop_back();
    }
    out.kernel = kernel_of(homogeneous);
    return out;
}

} // namespace projkit

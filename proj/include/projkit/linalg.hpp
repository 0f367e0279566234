#pragma once

#include <cstddef>
#include <vector>

#include "projkit/rational.hpp"

namespace projkit {

using Vector = std::vector<Rational>;
/// Row-major; every row has the same length.
using Matrix = std::vector<Vector>;

/// Row echelon form together with its pivot columns.
struct Echelon {
    Matrix rows;
    std::vector<std::size_t> pivots;
    std::size_t columns = 0;
};

/// Gauss-Jordan elimination carried out on primitive integer rows. The pivot
/// in each column is the candidate entry of largest magnitude.
Echelon row_reduce(const Matrix &m, std::size_t columns);
/// Forward elimination only: rows are in echelon form but not reduced.
Echelon row_echelon(const Matrix &m, std::size_t columns);
std::size_t rank(const Matrix &m, std::size_t columns);

/// Basis of { v : m v = 0 }, one vector per free column.
Matrix nullspace(const Matrix &m, std::size_t columns);

struct AffineSolution {
    bool consistent = false;
    Vector particular;
    Matrix kernel;
};

/// Solutions of m v = rhs as particular + span(kernel).
AffineSolution solve(const Matrix &m, const Vector &rhs, std::size_t columns);

} // namespace projkit

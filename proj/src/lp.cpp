#include "rauzy/lp.hpp"

#include <cassert>

namespace rauzy::lp {

namespace {

using Row = std::vector<Rational>;

// Row-reduce `rows` (each of width cols + 1, last entry = rhs) so that column
// `col` is a unit vector with its 1 in row `pivot`.
void pivot(std::vector<Row>& rows, std::size_t pivot_row, std::size_t col) {
    Row& p = rows[pivot_row];
    const Rational inv = 1 / p[col];
    for (auto& v : p)
        if (sgn(v) != 0)
            v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == pivot_row || sgn(rows[r][col]) == 0)
            continue;
        const Rational f = rows[r][col];
        Row& target = rows[r];
        for (std::size_t c = 0; c < target.size(); ++c)
            if (sgn(p[c]) != 0)
                target[c] -= f * p[c];
    }
}

// Phase-one simplex for A s = b, s >= 0 with b >= 0 (rows carry rhs last).
// Returns basic solution values for the `width` structural columns.
std::optional<std::vector<Rational>> phase_one(std::vector<Row> rows, std::size_t width) {
    const std::size_t m = rows.size();
    if (m == 0)
        return std::vector<Rational>(width);

    // Columns: [0, width) structural, [width, width + m) artificial, then rhs.
    const std::size_t total = width + m;
    std::vector<Row> tab(m + 1, Row(total + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) {
        const bool flip = sgn(rows[r][width]) < 0;
        for (std::size_t c = 0; c < width; ++c)
            tab[r][c] = flip ? -rows[r][c] : rows[r][c];
        tab[r][width + r] = 1;
        tab[r][total] = flip ? -rows[r][width] : rows[r][width];
        basis[r] = width + r;
    }
    Row& obj = tab[m];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < width; ++c)
            obj[c] -= tab[r][c];
    for (std::size_t r = 0; r < m; ++r)
        obj[total] -= tab[r][total];

    for (;;) {
        std::size_t enter = total;
        for (std::size_t c = 0; c < total; ++c)
            if (sgn(obj[c]) < 0) {
                enter = c;
                break;
            }
        if (enter == total)
            break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t r = 0; r < m; ++r) {
            if (sgn(tab[r][enter]) <= 0)
                continue;
            Rational ratio = tab[r][total] / tab[r][enter];
            if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                leave = r;
                best = std::move(ratio);
            }
        }
        // Phase one is bounded below by zero, so an entering column always
        // has a positive entry.
        assert(leave != m);
        pivot(tab, leave, enter);
        basis[leave] = enter;
    }

    if (sgn(obj[total]) != 0)
        return std::nullopt;

    std::vector<Rational> s(width);
    for (std::size_t r = 0; r < m; ++r)
        if (basis[r] < width)
            s[basis[r]] = tab[r][total];
    return s;
}

} // namespace

std::optional<std::vector<Rational>> find_feasible(std::size_t num_vars, std::span<const Constraint> constraints) {
    std::size_t slacks = 0;
    for (const auto& c : constraints)
        if (c.relation == Relation::GreaterEq)
            ++slacks;

    // Columns: [0, n) free variables, [n, n + slacks) surplus, rhs last.
    const std::size_t n = num_vars;
    const std::size_t width = n + slacks;
    std::vector<Row> rows;
    rows.reserve(constraints.size());
    std::size_t next_slack = n;
    for (const auto& c : constraints) {
        assert(c.coeffs.size() == n);
        Row row(width + 1);
        for (std::size_t j = 0; j < n; ++j)
            row[j] = c.coeffs[j];
        if (c.relation == Relation::GreaterEq)
            row[next_slack++] = -1;
        row[width] = c.rhs;
        rows.push_back(std::move(row));
    }

    // Eliminate free variables.
    std::vector<int> pivot_row_of(n, -1);
    std::vector<bool> used(rows.size(), false);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!used[r] && sgn(rows[r][j]) != 0) {
                pivot(rows, r, j);
                used[r] = true;
                pivot_row_of[j] = static_cast<int>(r);
                break;
            }
        }
    }

    std::vector<Row> residual;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (used[r])
            continue;
        Row row(slacks + 1);
        for (std::size_t c = 0; c < slacks; ++c)
            row[c] = rows[r][n + c];
        row[slacks] = rows[r][width];
        bool zero = true;
        for (std::size_t c = 0; c < slacks; ++c)
            if (sgn(row[c]) != 0) {
                zero = false;
                break;
            }
        if (zero) {
            if (sgn(row[slacks]) != 0)
                return std::nullopt;
            continue;
        }
        residual.push_back(std::move(row));
    }

    auto s = phase_one(std::move(residual), slacks);
    if (!s)
        return std::nullopt;

    // Non-pivot free variables are set to zero.
    std::vector<Rational> x(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (pivot_row_of[j] < 0)
            continue;
        const Row& row = rows[static_cast<std::size_t>(pivot_row_of[j])];
        Rational v = row[width];
        for (std::size_t c = 0; c < slacks; ++c)
            if (sgn(row[n + c]) != 0)
                v -= row[n + c] * (*s)[c];
        x[j] = std::move(v);
    }
    return x;
}

} // namespace rauzy::lp

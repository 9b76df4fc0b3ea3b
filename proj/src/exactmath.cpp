#include "stratasheaf/exactmath.hpp"

#include <cassert>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace stratasheaf {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols,
                     std::vector<Int> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw std::invalid_argument("IntMatrix: entry count mismatch");
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("IntMatrix: product shape mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
    if (cols_ != v.size())
        throw std::invalid_argument("IntMatrix: vector length mismatch");
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < cols_; ++j)
            os << at(i, j) << (j + 1 < cols_ ? " " : "");
        os << (i + 1 < rows_ ? ";\n" : "]");
    }
    return os.str();
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols,
                     std::vector<Rat> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw std::invalid_argument("RatMatrix: entry count mismatch");
    for (auto& e : entries_) e.canonicalize();
}

RatMatrix::RatMatrix(const IntMatrix& m) : rows_(m.rows()), cols_(m.cols()) {
    entries_.reserve(rows_ * cols_);
    for (const auto& e : m.entries()) entries_.emplace_back(e);
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("RatMatrix: product shape mismatch");
    RatMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

RatVector RatMatrix::operator*(const RatVector& v) const {
    if (cols_ != v.size())
        throw std::invalid_argument("RatMatrix: vector length mismatch");
    RatVector out(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

Rat RatMatrix::determinant() const {
    if (!is_square())
        throw std::invalid_argument("determinant: matrix not square");
    RatMatrix w = *this;
    const std::size_t n = rows_;
    Rat det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = npos;
        for (std::size_t r = c; r < n; ++r)
            if (w.at(r, c) != 0) { piv = r; break; }
        if (piv == npos) return Rat(0);
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(w.at(piv, j), w.at(c, j));
            det = -det;
        }
        det *= w.at(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (w.at(r, c) == 0) continue;
            Rat f = w.at(r, c) / w.at(c, c);
            for (std::size_t j = c; j < n; ++j) w.at(r, j) -= f * w.at(c, j);
        }
    }
    return det;
}

std::optional<RatMatrix> RatMatrix::inverse() const {
    if (!is_square())
        throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = rows_;
    RatMatrix w = *this;
    RatMatrix inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = npos;
        for (std::size_t r = c; r < n; ++r)
            if (w.at(r, c) != 0) { piv = r; break; }
        if (piv == npos) return std::nullopt;
        if (piv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w.at(piv, j), w.at(c, j));
                std::swap(inv.at(piv, j), inv.at(c, j));
            }
        Rat p = w.at(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            w.at(c, j) /= p;
            inv.at(c, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || w.at(r, c) == 0) continue;
            Rat f = w.at(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                w.at(r, j) -= f * w.at(c, j);
                inv.at(r, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

std::string RatMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < cols_; ++j)
            os << at(i, j) << (j + 1 < cols_ ? " " : "");
        os << (i + 1 < rows_ ? ";\n" : "]");
    }
    return os.str();
}

IntVector SmithDecomposition::diagonal() const {
    std::size_t n = std::min(d.rows(), d.cols());
    IntVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = d.at(i, i);
    return out;
}

namespace {

struct SnfWork {
    IntMatrix d, u, v;

    void row_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < d.cols(); ++j) std::swap(d.at(a, j), d.at(b, j));
        for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(a, j), u.at(b, j));
    }
    void col_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < d.rows(); ++i) std::swap(d.at(i, a), d.at(i, b));
        for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, a), v.at(i, b));
    }
    // row a -= q * row b
    void row_submul(std::size_t a, std::size_t b, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(a, j) -= q * d.at(b, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(a, j) -= q * u.at(b, j);
    }
    void col_submul(std::size_t a, std::size_t b, const Int& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < d.rows(); ++i) d.at(i, a) -= q * d.at(i, b);
        for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, a) -= q * v.at(i, b);
    }
    void row_negate(std::size_t a) {
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(a, j) = -d.at(a, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(a, j) = -u.at(a, j);
    }
};

Int tdiv(const Int& n, const Int& den) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), n.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    SnfWork w{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t steps = std::min(m, n);

    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // smallest-absolute-value nonzero pivot in the submatrix,
            // ties by row-major position
            std::size_t pr = npos, pc = npos;
            Int best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    const Int& e = w.d.at(i, j);
                    if (e == 0) continue;
                    Int ab = abs(e);
                    if (pr == npos || ab < best) {
                        best = ab;
                        pr = i;
                        pc = j;
                    }
                }
            if (pr == npos) goto done;  // submatrix all zero
            w.row_swap(t, pr);
            w.col_swap(t, pc);

            bool clean = true;
            for (std::size_t r = t + 1; r < m; ++r) {
                if (w.d.at(r, t) == 0) continue;
                w.row_submul(r, t, tdiv(w.d.at(r, t), w.d.at(t, t)));
                if (w.d.at(r, t) != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < n; ++c) {
                if (w.d.at(t, c) == 0) continue;
                w.col_submul(c, t, tdiv(w.d.at(t, c), w.d.at(t, t)));
                if (w.d.at(t, c) != 0) clean = false;
            }
            if (!clean) continue;

            // force the divisibility chain: if the pivot misses an entry,
            // pull that row up and keep reducing
            bool fixed = false;
            for (std::size_t r = t + 1; r < m && !fixed; ++r)
                for (std::size_t c = t + 1; c < n && !fixed; ++c)
                    if (w.d.at(r, c) % w.d.at(t, t) != 0) {
                        w.row_submul(t, r, Int(-1));  // row t += row r
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (w.d.at(t, t) < 0) w.row_negate(t);
    }
done:
    return SmithDecomposition{std::move(w.u), std::move(w.d), std::move(w.v)};
}

Int int_determinant(const IntMatrix& a) {
    Rat det = RatMatrix(a).determinant();
    assert(det.get_den() == 1);
    return det.get_num();
}

namespace {

// Row-reduce in place; returns pivot columns. Rows end in RREF.
std::vector<std::size_t> rref(RatMatrix& w) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < w.cols() && row < w.rows(); ++c) {
        std::size_t piv = npos;
        for (std::size_t r = row; r < w.rows(); ++r)
            if (w.at(r, c) != 0) { piv = r; break; }
        if (piv == npos) continue;
        if (piv != row)
            for (std::size_t j = 0; j < w.cols(); ++j)
                std::swap(w.at(piv, j), w.at(row, j));
        Rat p = w.at(row, c);
        for (std::size_t j = 0; j < w.cols(); ++j) w.at(row, j) /= p;
        for (std::size_t r = 0; r < w.rows(); ++r) {
            if (r == row || w.at(r, c) == 0) continue;
            Rat f = w.at(r, c);
            for (std::size_t j = 0; j < w.cols(); ++j)
                w.at(r, j) -= f * w.at(row, j);
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

std::vector<RatVector> kernel_basis(const RatMatrix& a) {
    RatMatrix w = a;
    std::vector<std::size_t> pivots = rref(w);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector v(a.cols(), Rat(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -w.at(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const RatMatrix& a) {
    RatMatrix w = a;
    return rref(w).size();
}

std::vector<RatVector> invariant_subspace(const std::vector<RatMatrix>& mats,
                                          std::size_t dimension) {
    for (const auto& m : mats)
        if (!m.is_square() || m.rows() != dimension)
            throw std::invalid_argument(
                "invariant_subspace: dimension mismatch");
    RatMatrix stacked(mats.size() * dimension, dimension);
    for (std::size_t k = 0; k < mats.size(); ++k)
        for (std::size_t i = 0; i < dimension; ++i)
            for (std::size_t j = 0; j < dimension; ++j) {
                Rat e = mats[k].at(i, j);
                if (i == j) e -= 1;
                stacked.at(k * dimension + i, j) = e;
            }
    return kernel_basis(stacked);
}

namespace {

// Dense exact simplex tableau, Bland's rule throughout.
struct Tableau {
    std::size_t m, n;                 // constraints, columns (excl. rhs)
    std::vector<RatVector> rows;      // m x (n+1), last entry = rhs
    RatVector cost;                   // n+1, last entry = -objective
    std::vector<std::size_t> basis;   // basic column per row

    void pivot(std::size_t r, std::size_t c) {
        Rat p = rows[r][c];
        for (auto& x : rows[r]) x /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (std::size_t j = 0; j <= n; ++j) rows[i][j] -= f * rows[r][j];
        }
        if (cost[c] != 0) {
            Rat f = cost[c];
            for (std::size_t j = 0; j <= n; ++j) cost[j] -= f * rows[r][j];
        }
        basis[r] = c;
    }

    void load_cost(const RatVector& raw) {
        cost.assign(n + 1, Rat(0));
        for (std::size_t j = 0; j < raw.size(); ++j) cost[j] = raw[j];
        for (std::size_t i = 0; i < m; ++i) {
            if (cost[basis[i]] == 0) continue;
            Rat f = cost[basis[i]];
            for (std::size_t j = 0; j <= n; ++j) cost[j] -= f * rows[i][j];
        }
    }

    // minimize; returns false iff unbounded
    bool solve(std::size_t allowed_cols) {
        for (;;) {
            std::size_t enter = npos;
            for (std::size_t j = 0; j < allowed_cols; ++j)
                if (cost[j] < 0) { enter = j; break; }
            if (enter == npos) return true;
            std::size_t leave = npos;
            Rat best;
            for (std::size_t i = 0; i < m; ++i) {
                if (rows[i][enter] <= 0) continue;
                Rat ratio = rows[i][n] / rows[i][enter];
                if (leave == npos || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == npos) return false;
            pivot(leave, enter);
        }
    }

    Rat value_of(std::size_t col) const {
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] == col) return rows[i][n];
        return Rat(0);
    }
};

}  // namespace

std::optional<RatVector> lp_strict_feasible(const LPProblem& p) {
    const std::size_t d = p.dimension;
    const std::size_t ne = p.equalities.size();
    const std::size_t ns = p.strict_inequalities.size();
    for (const auto& [a, b] : p.equalities)
        if (a.size() != d)
            throw std::invalid_argument("lp_strict_feasible: bad equality");
    for (const auto& a : p.strict_inequalities)
        if (a.size() != d)
            throw std::invalid_argument("lp_strict_feasible: bad inequality");

    // columns: x+ [0,d), x- [d,2d), t = 2d, slack per strict row,
    // clamp slack, then one artificial per row
    const std::size_t tcol = 2 * d;
    const std::size_t n_real = 2 * d + 1 + ns + 1;
    const std::size_t m = ne + ns + 1;
    const std::size_t n = n_real + m;

    Tableau tab;
    tab.m = m;
    tab.n = n;
    tab.rows.assign(m, RatVector(n + 1, Rat(0)));
    tab.basis.resize(m);

    std::size_t r = 0;
    for (const auto& [a, b] : p.equalities) {
        for (std::size_t j = 0; j < d; ++j) {
            tab.rows[r][j] = a[j];
            tab.rows[r][d + j] = -a[j];
        }
        tab.rows[r][n] = b;
        ++r;
    }
    for (std::size_t s = 0; s < ns; ++s) {
        const auto& a = p.strict_inequalities[s];
        for (std::size_t j = 0; j < d; ++j) {
            tab.rows[r][j] = a[j];
            tab.rows[r][d + j] = -a[j];
        }
        tab.rows[r][tcol] = -1;
        tab.rows[r][2 * d + 1 + s] = -1;
        ++r;
    }
    tab.rows[r][tcol] = 1;          // t + clamp = 1
    tab.rows[r][2 * d + 1 + ns] = 1;
    tab.rows[r][n] = 1;

    for (std::size_t i = 0; i < m; ++i) {
        if (tab.rows[i][n] < 0)
            for (auto& x : tab.rows[i]) x = -x;
        tab.rows[i][n_real + i] = 1;
        tab.basis[i] = n_real + i;
    }

    // phase 1: drive artificials to zero
    RatVector phase1(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n_real + i] = 1;
    tab.load_cost(phase1);
    bool ok = tab.solve(n);
    assert(ok);  // phase 1 objective is bounded below by 0
    if (-tab.cost[n] != 0) return std::nullopt;  // equalities inconsistent

    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < n_real) continue;
        for (std::size_t j = 0; j < n_real; ++j)
            if (tab.rows[i][j] != 0) {
                tab.pivot(i, j);
                break;
            }
        // a redundant all-zero row keeps its artificial basic at zero;
        // phase 2 never lets artificials re-enter
    }

    // phase 2: maximize t
    RatVector phase2(n, Rat(0));
    phase2[tcol] = -1;
    tab.load_cost(phase2);
    ok = tab.solve(n_real);
    assert(ok);  // t is clamped to 1, so the objective is bounded

    if (tab.value_of(tcol) <= 0) return std::nullopt;
    RatVector x(d);
    for (std::size_t j = 0; j < d; ++j) {
        x[j] = tab.value_of(j) - tab.value_of(d + j);
        x[j].canonicalize();
    }
    assert(lp_satisfies(p, x));
    return x;
}

bool lp_satisfies(const LPProblem& p, const RatVector& x) {
    if (x.size() != p.dimension) return false;
    for (const auto& [a, b] : p.equalities)
        if (dot(a, x) != b) return false;
    for (const auto& a : p.strict_inequalities)
        if (dot(a, x) <= 0) return false;
    return true;
}

Rat dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: length mismatch");
    Rat out(0);
    for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
    return out;
}

Rat dot(const IntVector& a, const RatVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: length mismatch");
    Rat out(0);
    for (std::size_t i = 0; i < a.size(); ++i) out += Rat(a[i]) * b[i];
    return out;
}

Rat parse_rational(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0 || s.empty())
        throw std::invalid_argument("not a rational: '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace stratasheaf

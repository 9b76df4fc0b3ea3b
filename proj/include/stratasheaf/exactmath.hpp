#pragma once

// Exact integer/rational linear algebra: matrices, kernels, Smith normal
// form, invariant subspaces, and strict linear feasibility. Everything here
// is arbitrary precision; no floating point is used anywhere.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stratasheaf {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }

    const std::vector<Int>& entries() const { return entries_; }

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntVector operator*(const IntVector& v) const;
    bool operator==(const IntMatrix& rhs) const = default;

    IntMatrix transposed() const;
    bool is_square() const { return rows_ == cols_; }

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> entries_;
};

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries);
    explicit RatMatrix(const IntMatrix& m);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }

    RatMatrix operator*(const RatMatrix& rhs) const;
    RatVector operator*(const RatVector& v) const;
    bool operator==(const RatMatrix& rhs) const = default;

    RatMatrix transposed() const;
    bool is_square() const { return rows_ == cols_; }

    Rat determinant() const;
    std::optional<RatMatrix> inverse() const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> entries_;
};

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... | dr,
/// diagonal entries nonnegative, trailing zeros.
struct SmithDecomposition {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;

    IntVector diagonal() const;
};

/// Deterministic SNF: pivot = smallest absolute value nonzero entry of the
/// working submatrix, ties broken row-major.
SmithDecomposition smith_normal_form(const IntMatrix& a);

Int int_determinant(const IntMatrix& a);

/// Canonical basis of {x : A x = 0}, derived from the reduced row echelon
/// form (one basis vector per free column, unit entry at that column).
std::vector<RatVector> kernel_basis(const RatMatrix& a);

std::size_t rank(const RatMatrix& a);

/// Basis of the common fixed subspace of the given square matrices,
/// i.e. the intersection of ker(M_i - I). Throws std::invalid_argument on
/// dimension mismatch.
std::vector<RatVector> invariant_subspace(const std::vector<RatMatrix>& mats,
                                          std::size_t dimension);

/// Strict feasibility problem: find x with <a, x> = b for every equality
/// and <a, x> > 0 for every strict row.
struct LPProblem {
    std::size_t dimension = 0;
    std::vector<std::pair<RatVector, Rat>> equalities;
    std::vector<RatVector> strict_inequalities;
};

/// Exact primal simplex with Bland's rule on the slack-maximization form
/// (maximize t subject to <a, x> >= t for every strict constraint, t <= 1).
/// Returns a witness iff the optimum slack is positive.
std::optional<RatVector> lp_strict_feasible(const LPProblem& p);

/// Substitution check used to re-verify witnesses independently of the
/// solver path.
bool lp_satisfies(const LPProblem& p, const RatVector& x);

// small helpers shared across modules
Rat dot(const RatVector& a, const RatVector& b);
Rat dot(const IntVector& a, const RatVector& b);
Rat parse_rational(const std::string& s);

}  // namespace stratasheaf

#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "dpa/errors.hpp"

// Truncated Fock-space primitives: ladder/displacement/parity matrices,
// tensor products and a small deterministic Hermitian eigensolver.
// Matrices built under a cutoff d act on span{|0>,...,|d-1>}; the creation
// matrix silently drops amplitude out of the top level (truncation
// convention), so a*a' commutation holds only for n <= d-2.

namespace dpa {

using cplx   = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermTol      = 1e-12;  // absolute, entrywise
inline constexpr double kDiagTol      = 1e-13;  // density diagonal floor
inline constexpr double kTwoOverPi    = 2.0 / 3.14159265358979323846;
inline constexpr double kPi           = 3.14159265358979323846;

struct FockCutoff {
    int d1;
    int d2;
    FockCutoff(int dim1, int dim2) : d1(dim1), d2(dim2) {
        if (d1 < 2 || d2 < 2)
            throw invalid_dimension_error("FockCutoff: per-mode dimension must be >= 2");
    }
    int product() const { return d1 * d2; }
};

// Four real quadratures (q1,p1,q2,p2), hbar = 1; beta_j = (q_j + i p_j)/sqrt(2).
struct PhasePoint {
    double q1 = 0, p1 = 0, q2 = 0, p2 = 0;
    cplx beta1() const { return {q1 / std::sqrt(2.0), p1 / std::sqrt(2.0)}; }
    cplx beta2() const { return {q2 / std::sqrt(2.0), p2 / std::sqrt(2.0)}; }
};

// a', entries (n+1,n) = sqrt(n+1); top level maps to nothing.
Matrix creation_matrix(int cutoff);
Matrix annihilation_matrix(int cutoff);

// diag((-1)^n)
Matrix parity_matrix(int cutoff);

// <m|D(beta)|n> in the associated-Laguerre closed form (exact
// infinite-space elements, not the exponential of the truncated generator).
Matrix displacement_matrix(cplx beta, int cutoff);

// (2/pi) D(beta) (-1)^n D(beta)'
Matrix displaced_parity(cplx beta, int cutoff);

Matrix kron(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol = kHermTol);

// Largest |(M'M - I)_{jk}| over the leading keep x keep block.
double subblock_identity_error(const Matrix& m, int keep);

struct EigenSystem {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k pairs with values[k]
};

// Cyclic Jacobi for Hermitian matrices of size <= 8, deterministic
// row-major sweep order.  Throws contract_violation on non-Hermitian input.
EigenSystem hermitian_eigensystem(const Matrix& m);
std::vector<double> hermitian_eigenvalues(const Matrix& m);

}  // namespace dpa

#include "dpa/fock.hpp"

#include <cmath>

namespace dpa {

Matrix creation_matrix(int cutoff) {
    if (cutoff < 2) throw invalid_dimension_error("creation_matrix: cutoff must be >= 2");
    Matrix m = Matrix::Zero(cutoff, cutoff);
    for (int n = 0; n + 1 < cutoff; ++n) m(n + 1, n) = std::sqrt(double(n + 1));
    return m;
}

Matrix annihilation_matrix(int cutoff) {
    return creation_matrix(cutoff).adjoint();
}

Matrix parity_matrix(int cutoff) {
    if (cutoff < 2) throw invalid_dimension_error("parity_matrix: cutoff must be >= 2");
    Matrix m = Matrix::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return m;
}

namespace {

// L_n^(k)(x), three-term recurrence
double assoc_laguerre(int n, int k, double x) {
    if (n == 0) return 1.0;
    double lm2 = 1.0;
    double lm1 = 1.0 + k - x;
    for (int i = 2; i <= n; ++i) {
        double l = ((2.0 * i - 1.0 + k - x) * lm1 - (i - 1.0 + k) * lm2) / i;
        lm2 = lm1;
        lm1 = l;
    }
    return lm1;
}

}  // namespace

Matrix displacement_matrix(cplx beta, int cutoff) {
    if (cutoff < 2) throw invalid_dimension_error("displacement_matrix: cutoff must be >= 2");
    if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag()))
        throw contract_violation("displacement_matrix: beta must be finite");
    const double b2 = std::norm(beta);
    const double e  = std::exp(-b2 / 2.0);
    Matrix d(cutoff, cutoff);
    for (int m = 0; m < cutoff; ++m) {
        for (int n = 0; n < cutoff; ++n) {
            if (m >= n) {
                // sqrt(n!/m!) beta^{m-n} folded into one stable product
                cplx f = e * assoc_laguerre(n, m - n, b2);
                for (int j = n + 1; j <= m; ++j) f *= beta / std::sqrt(double(j));
                d(m, n) = f;
            } else {
                cplx f = e * assoc_laguerre(m, n - m, b2);
                for (int j = m + 1; j <= n; ++j) f *= -std::conj(beta) / std::sqrt(double(j));
                d(m, n) = f;
            }
        }
    }
    return d;
}

Matrix displaced_parity(cplx beta, int cutoff) {
    Matrix d = displacement_matrix(beta, cutoff);
    return kTwoOverPi * (d * parity_matrix(cutoff) * d.adjoint());
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double subblock_identity_error(const Matrix& m, int keep) {
    keep = std::min<int>(keep, int(m.rows()));
    if (keep <= 0) return 0.0;
    Matrix g = m.adjoint() * m;
    Matrix block = g.topLeftCorner(keep, keep) - Matrix::Identity(keep, keep);
    return block.cwiseAbs().maxCoeff();
}

EigenSystem hermitian_eigensystem(const Matrix& m) {
    const int n = int(m.rows());
    if (n < 1 || n > 8)
        throw contract_violation("hermitian_eigensystem: size must be in [1,8]");
    if (!is_hermitian(m, kHermTol))
        throw contract_violation("hermitian_eigensystem: input is not Hermitian within 1e-12");

    Matrix a = (m + m.adjoint()) / 2.0;  // symmetrize away the tolerance slack
    Matrix v = Matrix::Identity(n, n);

    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double stop  = 1e-15 * scale;

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= stop) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= stop * 1e-2) continue;

                // phase e^{i alpha} reduces the 2x2 block to real symmetric
                const cplx phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t   = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c   = 1.0 / std::sqrt(1.0 + t * t);
                const double s   = t * c;

                // J: identity except J(p,p)=c, J(p,q)=s, J(q,p)=-s*phase, J(q,q)=c*phase
                const cplx jqp = -s * phase;
                const cplx jqq = c * phase;
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * jqp;
                    a(k, q) = akp * s + akq * jqq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(jqp) * aqk;
                    a(q, k) = s * apk + std::conj(jqq) * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * jqp;
                    v(k, q) = vkp * s + vkq * jqq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem sys;
    sys.values.resize(n);
    sys.vectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        sys.values[i] = a(order[i], order[i]).real();
        sys.vectors.col(i) = v.col(order[i]);
    }
    return sys;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
    return hermitian_eigensystem(m).values;
}

}  // namespace dpa

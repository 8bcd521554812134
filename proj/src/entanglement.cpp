#include "dpa/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace dpa {

namespace {

constexpr int kBasis[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

int basis_index(int a, int b) { return a * 2 + b; }

// (X^{T2})_{(k1 l2),(l1 k2)} = X_{(k1 k2),(l1 l2)}
Matrix4 partial_transpose2(const Matrix4& x) {
    Matrix4 pt;
    for (int i = 0; i < 4; ++i) {
        const int k1 = kBasis[i][0], k2p = kBasis[i][1];
        for (int j = 0; j < 4; ++j) {
            const int l1 = kBasis[j][0], l2p = kBasis[j][1];
            pt(i, j) = x(basis_index(k1, l2p), basis_index(l1, k2p));
        }
    }
    return pt;
}

SubspaceWitness finish_witness(Matrix4 raw) {
    const double t = raw.trace().real();
    if (!(t > 0) || t < 1e-100)
        throw contract_violation("subspace_witness: all four subspace populations vanish");
    SubspaceWitness w;
    w.t    = t;
    w.x    = raw / t;
    w.x_pt = partial_transpose2(w.x);

    Matrix xd = w.x_pt;
    const auto ev = hermitian_eigenvalues(xd);
    double neg = 0.0;
    for (int i = 0; i < 4; ++i) {
        w.eigenvalues_pt[i] = ev[i];
        if (ev[i] < -kNegativeEigTol) neg += ev[i];
    }
    double npt = -2.0 * neg;
    if (npt > 1.0 + 1e-9 || npt < -1e-9)
        throw contract_violation("subspace_witness: NPT out of [0,1] beyond tolerance");
    w.npt = std::clamp(npt, 0.0, 1.0);
    return w;
}

}  // namespace

SubspaceWitness subspace_witness(const TwoModeState& rho) {
    if (rho.cutoff().d1 < 3 || rho.cutoff().d2 < 3)
        throw invalid_dimension_error("subspace_witness: cutoff must be >= 3 per mode");
    Matrix4 raw;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            raw(i, j) = rho.element(kBasis[i][0], kBasis[i][1], kBasis[j][0], kBasis[j][1]);
    return finish_witness(raw);
}

SubspaceWitness subspace_witness(const TwoModeDensity& rho) {
    const int d1 = rho.cutoff.d1, d2 = rho.cutoff.d2;
    if (d1 < 3 || d2 < 3)
        throw invalid_dimension_error("subspace_witness: cutoff must be >= 3 per mode");
    Matrix4 raw;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            raw(i, j) = rho.matrix(kBasis[i][0] * d2 + kBasis[i][1], kBasis[j][0] * d2 + kBasis[j][1]);
    return finish_witness(raw);
}

double npt_closed(const StateSpec& spec, DpaParams params, Stage stage) {
    if (stage == Stage::before) {
        if (const auto* t = std::get_if<Tmsv>(&spec)) {
            const double lam = t->lambda();
            return 2.0 * lam / (1.0 + lam * lam);
        }
        return 0.0;
    }
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CoherentPair>) {
                return 2.0 / (std::norm(s.z1 + std::polar(1.0, -params.phi) * s.z2) + 2.0);
            } else if constexpr (std::is_same_v<T, ThermalPair>) {
                const double a = (1.0 + s.nbar1) * (1.0 + s.nbar2);
                const double g = s.nbar1 + s.nbar2 + 2.0 * s.nbar1 * s.nbar2;
                return (std::sqrt(4.0 * a * a + g * g) - g) / (2.0 * a + g);
            } else {
                return 1.0;
            }
        },
        spec);
}

namespace {

Matrix4 outer_normalized(const Eigen::Vector4cd& u) {
    Matrix4 x = u * u.adjoint();
    return Matrix4(x / x.trace().real());
}

// subspace column of the DPA image of |00>: (0, e^{i phi}, 1, 0)
Eigen::Vector4cd photon_added_vacuum(double phi) {
    return {cplx(0.0), std::polar(1.0, phi), cplx(1.0), cplx(0.0)};
}

}  // namespace

Matrix4 closed_xpt(const StateSpec& spec, DpaParams params, Stage stage) {
    const cplx ph = std::polar(1.0, params.phi);
    Matrix4 x;
    if (stage == Stage::before) {
        x = std::visit(
            [&](const auto& s) -> Matrix4 {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, CoherentPair>) {
                    Eigen::Vector4cd u{cplx(1.0), s.z2, s.z1, s.z1 * s.z2};
                    return outer_normalized(u);
                } else if constexpr (std::is_same_v<T, ThermalPair>) {
                    const double q1 = s.nbar1 / (s.nbar1 + 1.0), q2 = s.nbar2 / (s.nbar2 + 1.0);
                    Eigen::Vector4d diag{1.0, q2, q1, q1 * q2};
                    Matrix4 m       = Matrix4::Zero();
                    m.diagonal()    = (diag / diag.sum()).cast<cplx>();
                    return m;
                } else if constexpr (std::is_same_v<T, SqueezedPair>) {
                    Eigen::Vector4cd u{cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.0)};
                    return outer_normalized(u);
                } else if constexpr (std::is_same_v<T, Tmsv>) {
                    Eigen::Vector4cd u{cplx(1.0), cplx(0.0), cplx(0.0), cplx(s.lambda())};
                    return outer_normalized(u);
                } else {
                    Eigen::Vector4cd u{cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.0)};
                    return outer_normalized(u);
                }
            },
            spec);
    } else {
        x = std::visit(
            [&](const auto& s) -> Matrix4 {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, CoherentPair>) {
                    Eigen::Vector4cd u{cplx(0.0), ph, cplx(1.0), s.z2 + ph * s.z1};
                    return outer_normalized(u);
                } else if constexpr (std::is_same_v<T, ThermalPair>) {
                    // p01,01 = p10,10 = P1(0)P2(0); p11,11 = P1(0)P2(1)+P1(1)P2(0);
                    // p01,10 = e^{i phi} P1(0)P2(0)
                    const double a = 1.0 / ((1.0 + s.nbar1) * (1.0 + s.nbar2));
                    const double c = a * (s.nbar2 / (1.0 + s.nbar2) + s.nbar1 / (1.0 + s.nbar1));
                    Matrix4 m  = Matrix4::Zero();
                    m(1, 1)    = a;
                    m(2, 2)    = a;
                    m(3, 3)    = c;
                    m(1, 2)    = ph * a;
                    m(2, 1)    = std::conj(ph) * a;
                    return Matrix4(m / m.trace().real());
                } else {
                    return outer_normalized(photon_added_vacuum(params.phi));
                }
            },
            spec);
    }
    Matrix4 pt;
    for (int i = 0; i < 4; ++i) {
        const int k1 = kBasis[i][0], k2p = kBasis[i][1];
        for (int j = 0; j < 4; ++j) {
            const int l1 = kBasis[j][0], l2p = kBasis[j][1];
            pt(i, j) = x(basis_index(k1, l2p), basis_index(l1, k2p));
        }
    }
    return pt;
}

std::array<double, 4> closed_xpt_eigenvalues(const StateSpec& spec, DpaParams params,
                                             Stage stage) {
    std::array<double, 4> ev{};
    if (stage == Stage::before) {
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, ThermalPair>) {
                    const double a = (1.0 + s.nbar1) * (1.0 + s.nbar2);
                    const double b = (1.0 + 2.0 * s.nbar1) * (1.0 + 2.0 * s.nbar2);
                    ev = {s.nbar1 * s.nbar2 / b, s.nbar1 * (1.0 + s.nbar2) / b,
                          (1.0 + s.nbar1) * s.nbar2 / b, a / b};
                } else if constexpr (std::is_same_v<T, Tmsv>) {
                    const double lam = s.lambda(), den = 1.0 + lam * lam;
                    ev = {-lam / den, lam * lam / den, lam / den, 1.0 / den};
                } else {
                    ev = {0.0, 0.0, 0.0, 1.0};
                }
            },
            spec);
    } else {
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, CoherentPair>) {
                    const double n = normalization_closed(spec, params);
                    const double root = std::sqrt(1.0 - 4.0 / (n * n));
                    ev = {-1.0 / n, 0.5 * (1.0 - root), 1.0 / n, 0.5 * (1.0 + root)};
                } else if constexpr (std::is_same_v<T, ThermalPair>) {
                    const double a = (1.0 + s.nbar1) * (1.0 + s.nbar2);
                    const double g = s.nbar1 + s.nbar2 + 2.0 * s.nbar1 * s.nbar2;
                    const double den = 2.0 * a + g, root = std::sqrt(4.0 * a * a + g * g);
                    ev = {-0.5 * (root - g) / den, a / den, a / den, 0.5 * (root + g) / den};
                } else {
                    ev = {-0.5, 0.5, 0.5, 0.5};
                }
            },
            spec);
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace dpa

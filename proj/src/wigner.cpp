#include "dpa/wigner.hpp"

#include <cmath>

namespace dpa {

namespace {
constexpr double kSqrt2      = 1.4142135623730951;
constexpr double kSupportLog = -50.0;  // exp floor for block skipping
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 2) throw invalid_dimension_error("gauss_legendre: n must be >= 2");
    std::vector<double> x(n), w(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton from the Chebyshev-like initial guess
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p0 / pp;
            if (std::abs(z - z1) < 1e-15) {
                p0 = 1.0; p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1);
                }
                pp = n * (z * p0 - p1) / (z * z - 1.0);
                break;
            }
        }
        x[i]         = -z;
        x[n - 1 - i] = z;
        w[i]         = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    return {x, w};
}

WignerEvaluator::WignerEvaluator(StateSpec spec, DpaParams params, Stage stage)
    : spec_(std::move(spec)), params_(params), stage_(stage) {
    nbar_total_   = mean_photon_total(spec_);
    after_        = (stage_ == Stage::after);
    const cplx mph = std::polar(1.0, -params_.phi);  // e^{-i phi}
    const double n = normalization_closed(spec_, params_);

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CoherentPair> || std::is_same_v<T, VacuumPair>) {
                cplx z1 = 0, z2 = 0;
                if constexpr (std::is_same_v<T, CoherentPair>) {
                    z1 = s.z1;
                    z2 = s.z2;
                }
                aq1_ = ap1_ = aq2_ = ap2_ = 1.0;
                lq1_ = 2.0 * kSqrt2 * z1.real();
                lp1_ = 2.0 * kSqrt2 * z1.imag();
                lq2_ = 2.0 * kSqrt2 * z2.real();
                lp2_ = 2.0 * kSqrt2 * z2.imag();
                e0_  = -2.0 * (std::norm(z1) + std::norm(z2));
                u0_  = z1 + mph * z2;
                wq1_ = -kSqrt2;
                wp1_ = cplx(0, -kSqrt2);
                wq2_ = -kSqrt2 * mph;
                wp2_ = cplx(0, -kSqrt2) * mph;
                ct_  = 1.0 / n;
                st_  = 2.0 / n;
            } else if constexpr (std::is_same_v<T, ThermalPair>) {
                const double v1 = 2.0 * s.nbar1 + 1.0, v2 = 2.0 * s.nbar2 + 1.0;
                aq1_ = ap1_ = 1.0 / v1;
                aq2_ = ap2_ = 1.0 / v2;
                e0_         = -std::log(v1 * v2);
                const double e1 = (s.nbar1 + 1.0) / v1, e2 = (s.nbar2 + 1.0) / v2;
                wq1_ = e1 / kSqrt2;
                wp1_ = cplx(0, e1 / kSqrt2);
                wq2_ = mph * (e2 / kSqrt2);
                wp2_ = mph * cplx(0, e2 / kSqrt2);
                ct_  = 4.0 / n;
                st_  = (e1 + e2) / n;
            } else if constexpr (std::is_same_v<T, SqueezedPair>) {
                const double l1 = s.lambda1(), l2 = s.lambda2();
                aq1_ = (1.0 - l1) / (1.0 + l1);
                ap1_ = (1.0 + l1) / (1.0 - l1);
                aq2_ = (1.0 - l2) / (1.0 + l2);
                ap2_ = (1.0 + l2) / (1.0 - l2);
                // non-Gaussian factor uses e^{+i phi} on mode 2 (the printed
                // e^{-i phi} fails the vacuum reduction and the
                // displaced-parity cross-check)
                const cplx pph = std::polar(1.0, params_.phi);
                wq1_ = -1.0 / (kSqrt2 * (1.0 + l1));
                wp1_ = cplx(0, 1.0 / (kSqrt2 * (1.0 - l1)));
                wq2_ = pph * (-1.0 / (kSqrt2 * (1.0 + l2)));
                wp2_ = pph * cplx(0, 1.0 / (kSqrt2 * (1.0 - l2)));
                ct_  = 4.0 / n;
                st_  = 1.0;  // (kappa1+kappa2)/n
            } else if constexpr (std::is_same_v<T, Tmsv>) {
                const double lam = s.lambda(), kap = s.kappa();
                aq1_ = ap1_ = aq2_ = ap2_ = kap * (1.0 + lam * lam);
                cq_ = 4.0 * kap * lam;
                cp_ = -4.0 * kap * lam;
                wq1_ = (lam - mph) / kSqrt2;
                wp1_ = cplx(0, 1.0) * (lam + mph) / kSqrt2;
                wq2_ = (lam * mph - 1.0) / kSqrt2;
                wp2_ = cplx(0, 1.0) * (lam * mph + 1.0) / kSqrt2;
                ct_  = 4.0 * kap * kap / n;
                st_  = 1.0;  // 2 kappa / n
            }
        },
        spec_);
    e0_ += std::log(4.0 / (kPi * kPi));
}

double WignerEvaluator::operator()(const PhasePoint& pt) const {
    const double q1 = pt.q1, p1 = pt.p1, q2 = pt.q2, p2 = pt.p2;
    const double e = e0_ - aq1_ * q1 * q1 - ap1_ * p1 * p1 - aq2_ * q2 * q2 - ap2_ * p2 * p2 +
                     cq_ * q1 * q2 + cp_ * p1 * p2 + lq1_ * q1 + lp1_ * p1 + lq2_ * q2 +
                     lp2_ * p2;
    double f = 1.0;
    if (after_) {
        const cplx u = u0_ + wq1_ * q1 + wp1_ * p1 + wq2_ * q2 + wp2_ * p2;
        f            = ct_ * std::norm(u) - st_;
    }
    return std::exp(e) * f;
}

double WignerEvaluator::value(cplx beta1, cplx beta2) const {
    PhasePoint pt;
    pt.q1 = kSqrt2 * beta1.real();
    pt.p1 = kSqrt2 * beta1.imag();
    pt.q2 = kSqrt2 * beta2.real();
    pt.p2 = kSqrt2 * beta2.imag();
    return (*this)(pt);
}

double WignerEvaluator::block_weighted_sum(double q1, double p1, std::span<const double> q2,
                                           std::span<const double> wq,
                                           std::span<const double> p2,
                                           std::span<const double> wp, bool absolute) const {
    const double base = e0_ - aq1_ * q1 * q1 - ap1_ * p1 * p1 + lq1_ * q1 + lp1_ * p1;
    const double gq = cq_ * q1 + lq2_;  // linear coefficient seen by q2
    const double gp = cp_ * p1 + lp2_;

    // upper bound of the exponent over the block (vertex of each parabola)
    const double qmax = (aq2_ > 0) ? gq * gq / (4.0 * aq2_) : 0.0;
    const double pmax = (ap2_ > 0) ? gp * gp / (4.0 * ap2_) : 0.0;
    if (base + qmax + pmax < kSupportLog) return 0.0;

    const int nq = int(q2.size()), np = int(p2.size());
    thread_local std::vector<double> eq, ep, ur, ui, vr, vi;
    eq.resize(nq);
    ep.resize(np);
    for (int i = 0; i < nq; ++i) eq[i] = std::exp(-aq2_ * q2[i] * q2[i] + gq * q2[i]);
    for (int j = 0; j < np; ++j) ep[j] = std::exp(-ap2_ * p2[j] * p2[j] + gp * p2[j]) * wp[j];
    const double pref = std::exp(base);

    double total = 0.0;
    if (!after_) {
        double sp = 0.0;
        for (int j = 0; j < np; ++j) sp += ep[j];
        for (int i = 0; i < nq; ++i) total += wq[i] * eq[i];
        return pref * total * sp;  // before-stage W is positive, |.| is free
    }

    const cplx ub = u0_ + wq1_ * q1 + wp1_ * p1;
    ur.resize(nq);
    ui.resize(nq);
    vr.resize(np);
    vi.resize(np);
    for (int i = 0; i < nq; ++i) {
        const cplx u = ub + wq2_ * q2[i];
        ur[i] = u.real();
        ui[i] = u.imag();
    }
    for (int j = 0; j < np; ++j) {
        const cplx v = wp2_ * p2[j];
        vr[j] = v.real();
        vi[j] = v.imag();
    }
    for (int i = 0; i < nq; ++i) {
        double row = 0.0;
        const double a = ur[i], b = ui[i], ew = eq[i];
        for (int j = 0; j < np; ++j) {
            const double x = a + vr[j], y = b + vi[j];
            double f = ct_ * (x * x + y * y) - st_;
            f *= ew * ep[j];
            row += absolute ? std::abs(f) : f;
        }
        total += wq[i] * row;
    }
    return pref * total;
}

std::array<double, 4> WignerEvaluator::axis_center() const {
    if (const auto* c = std::get_if<CoherentPair>(&spec_))
        return {kSqrt2 * c->z1.real(), kSqrt2 * c->z1.imag(), kSqrt2 * c->z2.real(),
                kSqrt2 * c->z2.imag()};
    return {0, 0, 0, 0};
}

std::array<double, 4> WignerEvaluator::axis_sigma() const {
    // marginal width along each axis; cross terms couple q1-q2 and p1-p2
    const double aq1 = aq1_ - cq_ * cq_ / (4.0 * aq2_);
    const double aq2 = aq2_ - cq_ * cq_ / (4.0 * aq1_);
    const double ap1 = ap1_ - cp_ * cp_ / (4.0 * ap2_);
    const double ap2 = ap2_ - cp_ * cp_ / (4.0 * ap1_);
    return {1.0 / std::sqrt(2.0 * aq1), 1.0 / std::sqrt(2.0 * ap1),
            1.0 / std::sqrt(2.0 * aq2), 1.0 / std::sqrt(2.0 * ap2)};
}

double wigner_analytic(const StateSpec& spec, DpaParams params, Stage stage,
                       const PhasePoint& pt) {
    return WignerEvaluator(spec, params, stage)(pt);
}

// ---------------------------------------------------------------------------
// displaced-parity numeric path
// ---------------------------------------------------------------------------
double wigner_numeric(const TwoModeState& rho, const PhasePoint& pt) {
    const int d1 = rho.cutoff().d1, d2 = rho.cutoff().d2;
    const cplx b1 = pt.beta1(), b2 = pt.beta2();
    for (auto [b, d] : {std::pair{b1, d1}, std::pair{b2, d2}}) {
        if (std::norm(b) > d / 4.0)
            throw region_error("wigner_numeric: |beta|^2 beyond cutoff/4",
                               int(std::ceil(4.0 * std::norm(b))) + 4);
    }
    const Matrix pi1 = displaced_parity(b1, d1);
    const Matrix pi2 = displaced_parity(b2, d2);

    cplx val = 0.0;
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, TwoModeState::Pure>) {
                const Matrix m = pi1 * r.amps * pi2.transpose();
                val = (r.amps.conjugate().cwiseProduct(m)).sum();
            } else if constexpr (std::is_same_v<T, TwoModeState::DiagonalProduct>) {
                cplx s1 = 0, s2 = 0;
                for (int n = 0; n < d1; ++n) s1 += r.w1(n) * pi1(n, n);
                for (int n = 0; n < d2; ++n) s2 += r.w2(n) * pi2(n, n);
                val = s1 * s2;
            } else if constexpr (std::is_same_v<T, TwoModeState::DpaDiagonal>) {
                const cplx ph = std::polar(1.0, r.phi);
                cplx acc      = 0.0;
                for (int n1 = 0; n1 < d1; ++n1) {
                    for (int n2 = 0; n2 < d2; ++n2) {
                        const double w = r.w1(n1) * r.w2(n2);
                        cplx term      = 0.0;
                        if (n1 + 1 < d1)
                            term += (n1 + 1.0) * pi1(n1 + 1, n1 + 1) * pi2(n2, n2);
                        if (n2 + 1 < d2)
                            term += (n2 + 1.0) * pi1(n1, n1) * pi2(n2 + 1, n2 + 1);
                        if (n1 + 1 < d1 && n2 + 1 < d2) {
                            const cplx cross = ph * std::sqrt((n1 + 1.0) * (n2 + 1.0)) *
                                               pi1(n1 + 1, n1) * pi2(n2, n2 + 1);
                            term += cross + std::conj(cross);
                        }
                        acc += w * term;
                    }
                }
                val = acc / r.numerator;
            } else {
                // Tr[(Pi1 x Pi2) rho] via a mode-2 contraction first
                const Matrix& m = r.rho;
                Matrix c = Matrix::Zero(d1, d1);  // c(m1,n1)
                for (int m1 = 0; m1 < d1; ++m1)
                    for (int n1 = 0; n1 < d1; ++n1) {
                        cplx acc = 0.0;
                        for (int n2 = 0; n2 < d2; ++n2)
                            for (int m2 = 0; m2 < d2; ++m2)
                                acc += pi2(n2, m2) * m(m1 * d2 + m2, n1 * d2 + n2);
                        c(m1, n1) = acc;
                    }
                for (int n1 = 0; n1 < d1; ++n1)
                    for (int m1 = 0; m1 < d1; ++m1) val += pi1(n1, m1) * c(m1, n1);
            }
        },
        rho.rep());

    if (std::abs(val.imag()) > 1e-10)
        throw contract_violation("wigner_numeric: imaginary residue above 1e-10");
    return val.real();
}

// ---------------------------------------------------------------------------
// quadrature
// ---------------------------------------------------------------------------
namespace {

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

double tensor_integral(const WignerEvaluator& ev, const std::array<double, 4>& box, int n,
                       bool absolute) {
    auto [x0, w0] = gauss_legendre(n);
    std::array<std::vector<double>, 4> x, w;
    for (int a = 0; a < 4; ++a) {
        x[a].resize(n);
        w[a].resize(n);
        for (int i = 0; i < n; ++i) {
            x[a][i] = box[a] * x0[i];
            w[a][i] = box[a] * w0[i];
        }
    }
    std::vector<double> partial(std::size_t(n) * n, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            partial[std::size_t(i) * n + j] =
                w[0][i] * w[1][j] *
                ev.block_weighted_sum(x[0][i], x[1][j], x[2], w[2], x[3], w[3], absolute);
        }
    }
    // d2 beta_j = dq_j dp_j / 2
    return pairwise_sum(partial) / 4.0;
}

}  // namespace

double default_box_halfwidth(double nbar_total) {
    return std::max(5.0, 3.0 + 2.0 * std::sqrt(nbar_total + 1.0));
}

std::array<double, 4> quadrature_box(const WignerEvaluator& evaluator,
                                     const QuadratureConfig& config) {
    if (config.box_halfwidth != 0.0) {
        const double floor_box = 3.0 + 2.0 * std::sqrt(evaluator.nbar_total() + 1.0);
        if (config.box_halfwidth < floor_box)
            throw contract_violation("quadrature box below 3 + 2 sqrt(nbar_total+1)");
        return {config.box_halfwidth, config.box_halfwidth, config.box_halfwidth,
                config.box_halfwidth};
    }
    const auto c = evaluator.axis_center();
    const auto s = evaluator.axis_sigma();
    std::array<double, 4> box{};
    for (int a = 0; a < 4; ++a) box[a] = std::abs(c[a]) + 5.0 * s[a] + 2.0;
    return box;
}

WlnResult wln(const WignerEvaluator& evaluator, QuadratureConfig config) {
    if (config.nodes_per_axis < 2 || config.nodes_per_axis % 2 != 0)
        throw contract_violation("wln: nodes_per_axis must be even and >= 2");
    if (config.max_doublings < 0 || config.max_doublings > 8)
        throw contract_violation("wln: max_doublings out of range");
    const auto box = quadrature_box(evaluator, config);

    WlnResult res;
    int n = config.nodes_per_axis;
    double prev = 0.0;
    for (int step = 0; step <= config.max_doublings; ++step, n *= 2) {
        const double integral = tensor_integral(evaluator, box, n, true);
        const double est      = std::log(integral);
        res.node_ladder.push_back(n);
        res.estimates.push_back(est);
        if (step > 0) {
            res.last_delta = std::abs(est - prev);
            if (res.last_delta < config.tol_wln) {
                res.wln          = est;
                res.integral_abs = integral;
                res.nodes_used   = n;
                return res;
            }
        }
        prev = est;
    }
    throw convergence_error("wln: no convergence within the doubling cap",
                            res.estimates.back(), res.estimates[res.estimates.size() - 2]);
}

double integrate_signed(const WignerEvaluator& evaluator, QuadratureConfig config) {
    const auto box = quadrature_box(evaluator, config);
    return tensor_integral(evaluator, box, config.nodes_per_axis, false);
}

SectionGrid section_grid(const WignerEvaluator& evaluator, const SectionPlane& plane) {
    if (plane.axis_a == plane.axis_b || plane.axis_a < 0 || plane.axis_a > 3 ||
        plane.axis_b < 0 || plane.axis_b > 3)
        throw contract_violation("section_grid: invalid plane axes");
    if (plane.resolution < 2)
        throw contract_violation("section_grid: resolution must be >= 2");

    SectionGrid g;
    g.plane = plane;
    g.grid.resize(plane.resolution);
    const double step = 2.0 * plane.extent / (plane.resolution - 1);
    for (int i = 0; i < plane.resolution; ++i) g.grid[i] = -plane.extent + i * step;

    g.values.resize(plane.resolution, plane.resolution);
    for (int i = 0; i < plane.resolution; ++i) {
        for (int j = 0; j < plane.resolution; ++j) {
            std::array<double, 4> c = plane.fixed;
            c[plane.axis_a]         = g.grid[i];
            c[plane.axis_b]         = g.grid[j];
            g.values(i, j) = evaluator(PhasePoint{c[0], c[1], c[2], c[3]});
        }
    }
    return g;
}

}  // namespace dpa

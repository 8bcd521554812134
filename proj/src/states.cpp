#include "dpa/states.hpp"

#include <cmath>

namespace dpa {

Family family_of(const StateSpec& spec) {
    return std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CoherentPair>) return Family::coherent;
            else if constexpr (std::is_same_v<T, ThermalPair>) return Family::thermal;
            else if constexpr (std::is_same_v<T, SqueezedPair>) return Family::squeezed;
            else if constexpr (std::is_same_v<T, Tmsv>) return Family::tmsv;
            else return Family::vacuum;
        },
        spec);
}

double mean_photon_total(const StateSpec& spec) {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CoherentPair>)
                return std::norm(s.z1) + std::norm(s.z2);
            else if constexpr (std::is_same_v<T, ThermalPair>)
                return s.nbar1 + s.nbar2;
            else if constexpr (std::is_same_v<T, SqueezedPair>) {
                const double s1 = std::sinh(s.r1), s2 = std::sinh(s.r2);
                return s1 * s1 + s2 * s2;
            } else if constexpr (std::is_same_v<T, Tmsv>) {
                const double sh = std::sinh(s.r);
                return 2.0 * sh * sh;
            } else
                return 0.0;
        },
        spec);
}

StateSpec budget_to_spec(Family family, const EnergyBudget& budget, double split) {
    if (budget.nbar_total < 0)
        throw contract_violation("budget_to_spec: nbar_total must be >= 0");
    if (split < 0 || split > 1)
        throw contract_violation("budget_to_spec: split must be in [0,1]");
    if (budget.symmetric) split = 0.5;
    const double n1 = split * budget.nbar_total;
    const double n2 = (1.0 - split) * budget.nbar_total;
    switch (family) {
        case Family::coherent: return CoherentPair{std::sqrt(n1), std::sqrt(n2)};
        case Family::thermal: return ThermalPair{n1, n2};
        case Family::squeezed:
            return SqueezedPair{std::asinh(std::sqrt(n1)), std::asinh(std::sqrt(n2))};
        case Family::tmsv: return Tmsv{std::asinh(std::sqrt(budget.nbar_total / 2.0))};
        case Family::vacuum:
            if (budget.nbar_total != 0.0)
                throw contract_violation("budget_to_spec: vacuum carries no photons");
            return VacuumPair{};
    }
    throw contract_violation("budget_to_spec: unknown family");
}

// ---------------------------------------------------------------------------
// single-mode amplitude / weight builders and their weighted tails
// ---------------------------------------------------------------------------
namespace {

std::vector<double> coherent_abs2(double nbar, int d) {
    // |<n|z>|^2 = e^{-nbar} nbar^n / n!
    std::vector<double> p(d);
    p[0] = std::exp(-nbar);
    for (int n = 1; n < d; ++n) p[n] = p[n - 1] * nbar / n;
    return p;
}

Vector coherent_amps(cplx z, int d) {
    Vector c(d);
    c(0) = std::exp(-std::norm(z) / 2.0);
    for (int n = 1; n < d; ++n) c(n) = c(n - 1) * z / std::sqrt(double(n));
    return c;
}

Vector squeezed_amps(double r, int d) {
    const double lam = std::tanh(r);
    Vector s = Vector::Zero(d);
    s(0) = std::pow(1.0 - lam * lam, 0.25);
    for (int k = 1; 2 * k < d; ++k)
        s(2 * k) = s(2 * k - 2) * (lam / 2.0) * std::sqrt(double(2 * k) * (2 * k - 1)) / k;
    return s;
}

Eigen::VectorXd thermal_weights(double nbar, int d) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    if (nbar <= 0) {
        w(0) = 1.0;
        return w;
    }
    w(0) = 1.0 / (nbar + 1.0);
    const double q = nbar / (nbar + 1.0);
    for (int n = 1; n < d; ++n) w(n) = w(n - 1) * q;
    return w;
}

// sum_{n>=d} (n+1) p_n for each family's exact photon distribution
double thermal_weighted_tail(double nbar, int d) {
    if (nbar <= 0) return 0.0;
    const double q  = nbar / (nbar + 1.0);
    const double lg = d * std::log(q);
    if (lg < -700.0) return 0.0;
    return std::exp(lg) * ((d + 1) * (1.0 - q) + q) / ((nbar + 1.0) * (1.0 - q) * (1.0 - q));
}

double coherent_weighted_tail(double nbar, int d) {
    if (nbar <= 0) return 0.0;
    double lp  = -nbar;  // log Poisson(0)
    double sum = 0.0;
    for (int n = 1; n < d; ++n) lp += std::log(nbar / n);
    for (int n = d; n < d + 400; ++n) {
        lp += std::log(nbar / n);
        if (lp > -745.0) sum += (n + 1) * std::exp(lp);
    }
    return sum;
}

double squeezed_weighted_tail(double r, int d) {
    if (r == 0) return 0.0;
    const double lam = std::tanh(r);
    double p         = std::sqrt(1.0 - lam * lam);  // |s_0|^2
    double sum       = 0.0;
    for (int k = 1; k < (d + 1200) / 2; ++k) {
        p *= (lam * lam / 4.0) * (2.0 * k) * (2.0 * k - 1) / (double(k) * k);
        if (2 * k >= d) sum += (2 * k + 1) * p;
    }
    return sum;
}

double tmsv_weighted_tail(double r, int d) {
    // joint distribution sits on |n,n>; per-mode marginal is thermal with
    // nbar = sinh^2 r
    const double sh = std::sinh(r);
    return thermal_weighted_tail(sh * sh, d);
}

int size_cutoff(double (*wtail)(double, int), double param, double eps, int floor_d) {
    int d = std::max(2, floor_d);
    while (wtail(param, d) >= eps) {
        ++d;
        if (d > 4096)
            throw truncation_error("cutoff search exceeded 4096 levels", d);
    }
    return d;
}

int spec_floor(double nbar_mode) {
    const int formula = int(std::ceil(6.0 + 6.0 * nbar_mode + 5.0 * std::sqrt(nbar_mode + 1.0)));
    return std::max(12, formula);
}

}  // namespace

FockCutoff default_cutoff(const StateSpec& spec, double eps_trunc) {
    return std::visit(
        [&](const auto& s) -> FockCutoff {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CoherentPair>) {
                const double n1 = std::norm(s.z1), n2 = std::norm(s.z2);
                return {size_cutoff(coherent_weighted_tail, n1, eps_trunc, spec_floor(n1)),
                        size_cutoff(coherent_weighted_tail, n2, eps_trunc, spec_floor(n2))};
            } else if constexpr (std::is_same_v<T, ThermalPair>) {
                return {size_cutoff(thermal_weighted_tail, s.nbar1, eps_trunc, spec_floor(s.nbar1)),
                        size_cutoff(thermal_weighted_tail, s.nbar2, eps_trunc, spec_floor(s.nbar2))};
            } else if constexpr (std::is_same_v<T, SqueezedPair>) {
                const double m1 = std::sinh(s.r1) * std::sinh(s.r1);
                const double m2 = std::sinh(s.r2) * std::sinh(s.r2);
                return {size_cutoff(squeezed_weighted_tail, s.r1, eps_trunc, spec_floor(m1)),
                        size_cutoff(squeezed_weighted_tail, s.r2, eps_trunc, spec_floor(m2))};
            } else if constexpr (std::is_same_v<T, Tmsv>) {
                const double m = std::sinh(s.r) * std::sinh(s.r);
                const int d    = size_cutoff(tmsv_weighted_tail, s.r, eps_trunc, spec_floor(m));
                return {d, d};
            } else {
                return {12, 12};
            }
        },
        spec);
}

TwoModeState build_input(const StateSpec& spec, std::optional<FockCutoff> cutoff,
                         double eps_trunc) {
    const FockCutoff cut = cutoff.value_or(default_cutoff(spec, eps_trunc));

    auto finish_pure = [&](Matrix amps) {
        const double norm2 = amps.squaredNorm();
        const double tail  = std::max(0.0, 1.0 - norm2);
        if (tail >= eps_trunc) {
            const FockCutoff need = default_cutoff(spec, eps_trunc);
            throw truncation_error("build_input: tail mass " + std::to_string(tail) +
                                       " exceeds eps_trunc; need per-mode cutoff about " +
                                       std::to_string(std::max(need.d1, need.d2)),
                                   std::max(need.d1, need.d2));
        }
        amps /= std::sqrt(norm2);
        return TwoModeState(TwoModeState::Pure{std::move(amps)}, cut, tail);
    };

    return std::visit(
        [&](const auto& s) -> TwoModeState {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CoherentPair>) {
                Matrix amps = coherent_amps(s.z1, cut.d1) * coherent_amps(s.z2, cut.d2).transpose();
                return finish_pure(std::move(amps));
            } else if constexpr (std::is_same_v<T, SqueezedPair>) {
                Matrix amps = squeezed_amps(s.r1, cut.d1) * squeezed_amps(s.r2, cut.d2).transpose();
                return finish_pure(std::move(amps));
            } else if constexpr (std::is_same_v<T, Tmsv>) {
                const double lam = s.lambda();
                Matrix amps      = Matrix::Zero(cut.d1, cut.d2);
                double a         = std::sqrt(1.0 - lam * lam);
                for (int n = 0; n < std::min(cut.d1, cut.d2); ++n) {
                    amps(n, n) = a;
                    a *= lam;
                }
                return finish_pure(std::move(amps));
            } else if constexpr (std::is_same_v<T, ThermalPair>) {
                Eigen::VectorXd w1 = thermal_weights(s.nbar1, cut.d1);
                Eigen::VectorXd w2 = thermal_weights(s.nbar2, cut.d2);
                const double mass  = w1.sum() * w2.sum();
                const double tail  = std::max(0.0, 1.0 - mass);
                if (tail >= eps_trunc) {
                    const FockCutoff need = default_cutoff(spec, eps_trunc);
                    throw truncation_error("build_input: thermal tail mass exceeds eps_trunc",
                                           std::max(need.d1, need.d2));
                }
                w1 /= w1.sum();
                w2 /= w2.sum();
                return TwoModeState(TwoModeState::DiagonalProduct{w1, w2}, cut, tail);
            } else {
                Matrix amps   = Matrix::Zero(cut.d1, cut.d2);
                amps(0, 0)    = 1.0;
                return TwoModeState(TwoModeState::Pure{std::move(amps)}, cut, 0.0);
            }
        },
        spec);
}

// ---------------------------------------------------------------------------
// element access per representation
// ---------------------------------------------------------------------------
namespace {

cplx pure_element(const Matrix& amps, int k1, int k2, int l1, int l2) {
    return amps(k1, k2) * std::conj(amps(l1, l2));
}

cplx diag_element(const Eigen::VectorXd& w1, const Eigen::VectorXd& w2, int k1, int k2, int l1,
                  int l2) {
    if (k1 != l1 || k2 != l2) return 0.0;
    return w1(k1) * w2(k2);
}

// <k| A rho A' |l> pulled back onto input elements:
//   sqrt(k1 l1) rho(k1-1,k2; l1-1,l2) + e^{-i phi} sqrt(k1 l2) rho(k1-1,k2; l1,l2-1)
// + e^{+i phi} sqrt(k2 l1) rho(k1,k2-1; l1-1,l2) + sqrt(k2 l2) rho(k1,k2-1; l1,l2-1)
template <typename ElementFn>
cplx dpa_element(ElementFn rho, double phi, int k1, int k2, int l1, int l2) {
    const cplx ph = std::polar(1.0, phi);
    cplx v        = 0.0;
    if (k1 > 0 && l1 > 0) v += std::sqrt(double(k1) * l1) * rho(k1 - 1, k2, l1 - 1, l2);
    if (k1 > 0 && l2 > 0) v += std::conj(ph) * std::sqrt(double(k1) * l2) * rho(k1 - 1, k2, l1, l2 - 1);
    if (k2 > 0 && l1 > 0) v += ph * std::sqrt(double(k2) * l1) * rho(k1, k2 - 1, l1 - 1, l2);
    if (k2 > 0 && l2 > 0) v += std::sqrt(double(k2) * l2) * rho(k1, k2 - 1, l1, l2 - 1);
    return v;
}

}  // namespace

cplx TwoModeState::element(int k1, int k2, int l1, int l2) const {
    if (k1 < 0 || k2 < 0 || l1 < 0 || l2 < 0 || k1 >= cutoff_.d1 || l1 >= cutoff_.d1 ||
        k2 >= cutoff_.d2 || l2 >= cutoff_.d2)
        throw invalid_dimension_error("TwoModeState::element: index outside cutoff");
    return std::visit(
        [&](const auto& r) -> cplx {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Pure>) {
                return pure_element(r.amps, k1, k2, l1, l2);
            } else if constexpr (std::is_same_v<T, DiagonalProduct>) {
                return diag_element(r.w1, r.w2, k1, k2, l1, l2);
            } else if constexpr (std::is_same_v<T, DpaDiagonal>) {
                auto in = [&](int a, int b, int c, int d) {
                    return diag_element(r.w1, r.w2, a, b, c, d);
                };
                return dpa_element(in, r.phi, k1, k2, l1, l2) / r.numerator;
            } else {
                return r.rho(k1 * cutoff_.d2 + k2, l1 * cutoff_.d2 + l2);
            }
        },
        rep_);
}

TwoModeDensity TwoModeState::densify() const {
    const int d1 = cutoff_.d1, d2 = cutoff_.d2;
    const std::size_t dim = std::size_t(d1) * d2;
    if (dim * dim > (std::size_t(1) << 27))  // 128M complex entries = 2 GiB
        throw truncation_error("densify: d1*d2 too large for a dense density", d1);
    Matrix rho(dim, dim);
    if (const auto* p = std::get_if<Pure>(&rep_)) {
        // amps is column-major d1 x d2; the density index convention is
        // n1*d2+n2 -- remap explicitly.
        Vector w(dim);
        for (int n1 = 0; n1 < d1; ++n1)
            for (int n2 = 0; n2 < d2; ++n2) w(n1 * d2 + n2) = p->amps(n1, n2);
        rho = w * w.adjoint();
    } else {
        for (int k1 = 0; k1 < d1; ++k1)
            for (int k2 = 0; k2 < d2; ++k2)
                for (int l1 = 0; l1 < d1; ++l1)
                    for (int l2 = 0; l2 < d2; ++l2)
                        rho(k1 * d2 + k2, l1 * d2 + l2) = element(k1, k2, l1, l2);
    }
    return TwoModeDensity{std::move(rho), cutoff_, tail_mass_};
}

TwoModeState apply_dpa(const TwoModeState& rho_in, DpaParams params) {
    const FockCutoff cut = rho_in.cutoff();
    const double phi     = params.phi;

    if (const auto* p = std::get_if<TwoModeState::Pure>(&rho_in.rep())) {
        const Matrix& a = p->amps;
        const int d1 = cut.d1, d2 = cut.d2;
        Matrix out = Matrix::Zero(d1, d2);
        for (int n1 = 0; n1 + 1 < d1; ++n1)
            out.row(n1 + 1) += std::sqrt(double(n1 + 1)) * a.row(n1);
        const cplx ph = std::polar(1.0, phi);
        for (int n2 = 0; n2 + 1 < d2; ++n2)
            out.col(n2 + 1) += ph * std::sqrt(double(n2 + 1)) * a.col(n2);
        const double num = out.squaredNorm();
        if (num <= 0)
            throw contract_violation("apply_dpa: zero numerator trace");
        out /= std::sqrt(num);
        TwoModeState state(TwoModeState::Pure{std::move(out)}, cut, rho_in.tail_mass());
        state.numerator_ = num;
        return state;
    }
    if (const auto* t = std::get_if<TwoModeState::DiagonalProduct>(&rho_in.rep())) {
        // Tr(A rho A') = sum (n1+1) w1 w2 + sum (n2+1) w1 w2 over kept levels
        double num = 0.0;
        for (int n1 = 0; n1 + 1 < cut.d1; ++n1)
            for (int n2 = 0; n2 < cut.d2; ++n2) num += (n1 + 1.0) * t->w1(n1) * t->w2(n2);
        for (int n1 = 0; n1 < cut.d1; ++n1)
            for (int n2 = 0; n2 + 1 < cut.d2; ++n2) num += (n2 + 1.0) * t->w1(n1) * t->w2(n2);
        if (num <= 0)
            throw contract_violation("apply_dpa: zero numerator trace");
        TwoModeState state(TwoModeState::DpaDiagonal{t->w1, t->w2, phi, num}, cut,
                           rho_in.tail_mass());
        state.numerator_ = num;
        return state;
    }
    // DpaDiagonal and Dense inputs take the generic dense path
    TwoModeDensity dense = rho_in.densify();
    double num           = 0.0;
    TwoModeDensity out   = apply_dpa(dense, params, &num);
    TwoModeState state(TwoModeState::Dense{std::move(out.matrix)}, cut, rho_in.tail_mass());
    state.numerator_ = num;
    return state;
}

TwoModeDensity apply_dpa(const TwoModeDensity& rho_in, DpaParams params,
                         double* numerator_trace) {
    const int d1 = rho_in.cutoff.d1, d2 = rho_in.cutoff.d2;
    const Eigen::Index dim = Eigen::Index(d1) * d2;
    if (rho_in.matrix.rows() != dim || rho_in.matrix.cols() != dim)
        throw invalid_dimension_error("apply_dpa: matrix does not match cutoff");
    if (!is_hermitian(rho_in.matrix, 1e-10))
        throw contract_violation("apply_dpa: input density is not Hermitian");

    // A rho A' assembled from index-shifted scaled copies, O(dim^2)
    const cplx ph = std::polar(1.0, params.phi);
    Matrix left   = Matrix::Zero(dim, dim);  // A rho
    auto row_of   = [&](int n1, int n2) { return n1 * d2 + n2; };
    for (int n1 = 0; n1 < d1; ++n1) {
        for (int n2 = 0; n2 < d2; ++n2) {
            const int r = row_of(n1, n2);
            if (n1 + 1 < d1)
                left.row(row_of(n1 + 1, n2)) += std::sqrt(double(n1 + 1)) * rho_in.matrix.row(r);
            if (n2 + 1 < d2)
                left.row(row_of(n1, n2 + 1)) += ph * std::sqrt(double(n2 + 1)) * rho_in.matrix.row(r);
        }
    }
    Matrix num = Matrix::Zero(dim, dim);  // (A rho) A'
    for (int l1 = 0; l1 < d1; ++l1) {
        for (int l2 = 0; l2 < d2; ++l2) {
            const int c = row_of(l1, l2);
            if (l1 + 1 < d1)
                num.col(row_of(l1 + 1, l2)) += std::sqrt(double(l1 + 1)) * left.col(c);
            if (l2 + 1 < d2)
                num.col(row_of(l1, l2 + 1)) += std::conj(ph) * std::sqrt(double(l2 + 1)) * left.col(c);
        }
    }
    const double tr = num.trace().real();
    if (tr <= 0)
        throw contract_violation("apply_dpa: zero numerator trace");
    if (numerator_trace) *numerator_trace = tr;
    num /= tr;
    return TwoModeDensity{std::move(num), rho_in.cutoff, rho_in.tail_mass};
}

double normalization_closed(const StateSpec& spec, DpaParams params) {
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CoherentPair>)
                return std::norm(s.z1 + std::polar(1.0, -params.phi) * s.z2) + 2.0;
            else if constexpr (std::is_same_v<T, ThermalPair>)
                return s.nbar1 + s.nbar2 + 2.0;
            else if constexpr (std::is_same_v<T, SqueezedPair>)
                return s.kappa1() + s.kappa2();
            else if constexpr (std::is_same_v<T, Tmsv>)
                return 2.0 * s.kappa();
            else
                return 2.0;
        },
        spec);
}

}  // namespace dpa

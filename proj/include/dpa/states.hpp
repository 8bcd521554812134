#pragma once

#include <optional>
#include <variant>

#include "dpa/fock.hpp"

// The four input families, delocalized photon addition
// A = a1' + e^{i phi} a2', closed normalization factors, and the
// mean-photon-budget parameterization.
//
// States carry a representation suited to their structure: product pure
// states and the two-mode squeezed vacuum stay amplitude tables, thermal
// products stay diagonal weights, and the DPA image of a thermal product
// keeps the weights plus phi.  A dense TwoModeDensity is available through
// densify() and through the generic dense apply_dpa path; the structured
// representations are exact at equal cutoffs (tested), they just avoid
// d1^2*d2^2 storage on the heavy sweep points.

namespace dpa {

struct CoherentPair {
    cplx z1, z2;
};

struct ThermalPair {
    double nbar1, nbar2;
};

struct SqueezedPair {
    double r1, r2;
    double lambda1() const { return std::tanh(r1); }
    double lambda2() const { return std::tanh(r2); }
    double kappa1() const { return 1.0 / (1.0 - lambda1() * lambda1()); }
    double kappa2() const { return 1.0 / (1.0 - lambda2() * lambda2()); }
};

struct Tmsv {
    double r;
    double lambda() const { return std::tanh(r); }
    double kappa() const { return 1.0 / (1.0 - lambda() * lambda()); }
};

struct VacuumPair {};

using StateSpec = std::variant<CoherentPair, ThermalPair, SqueezedPair, Tmsv, VacuumPair>;

enum class Family { coherent, thermal, squeezed, tmsv, vacuum };
Family family_of(const StateSpec& spec);

// Total input mean photon number of the spec (|z1|^2+|z2|^2, nbar1+nbar2, ...).
double mean_photon_total(const StateSpec& spec);

// Superposition phase, stored reduced to [0, 2 pi).
struct DpaParams {
    explicit DpaParams(double phase = 0.0) {
        phi = std::fmod(phase, 2.0 * kPi);
        if (phi < 0) phi += 2.0 * kPi;
    }
    double phi;
};

struct EnergyBudget {
    double nbar_total = 0.0;
    bool symmetric    = true;
};

// Spec with the requested family whose total mean photon number equals the
// budget; `split` is the mode-1 share (ignored for tmsv, forced to 0.5 when
// budget.symmetric).  Coherent amplitudes come out real non-negative.
StateSpec budget_to_spec(Family family, const EnergyBudget& budget, double split = 0.5);

// Dense two-mode density over |n1>|n2> with row-major index n1*d2+n2.
struct TwoModeDensity {
    Matrix matrix;
    FockCutoff cutoff;
    double tail_mass = 0.0;
};

class TwoModeState {
  public:
    struct Pure {
        Matrix amps;  // d1 x d2 amplitude table, unit Frobenius norm
    };
    struct DiagonalProduct {
        Eigen::VectorXd w1, w2;  // per-mode weights, each summing to 1
    };
    struct DpaDiagonal {
        Eigen::VectorXd w1, w2;
        double phi;
        double numerator;  // Tr(A rho A') in the truncated space
    };
    struct Dense {
        Matrix rho;
    };
    using Rep = std::variant<Pure, DiagonalProduct, DpaDiagonal, Dense>;

    TwoModeState(Rep rep, FockCutoff cutoff, double tail_mass)
        : rep_(std::move(rep)), cutoff_(cutoff), tail_mass_(tail_mass) {}

    const FockCutoff& cutoff() const { return cutoff_; }
    double tail_mass() const { return tail_mass_; }
    const Rep& rep() const { return rep_; }

    // <k1,k2| rho |l1,l2>
    cplx element(int k1, int k2, int l1, int l2) const;
    double diagonal(int n1, int n2) const { return element(n1, n2, n1, n2).real(); }

    // Tr(A rho_in A') when this state was produced by apply_dpa.
    std::optional<double> dpa_numerator() const { return numerator_; }

    TwoModeDensity densify() const;

    friend TwoModeState apply_dpa(const TwoModeState&, DpaParams);

  private:
    Rep rep_;
    FockCutoff cutoff_;
    double tail_mass_;
    std::optional<double> numerator_;
};

inline constexpr double kDefaultEpsTrunc = 1e-10;

// Smallest per-mode cutoff whose photon-number-weighted tail mass is below
// eps (never below the floor max(12, ceil(6 + 6 nbar + 5 sqrt(nbar+1)))).
FockCutoff default_cutoff(const StateSpec& spec, double eps_trunc = kDefaultEpsTrunc);

// Truncated input state, renormalized to unit trace with the
// pre-renormalization deficit recorded as tail_mass.  An explicit cutoff
// that leaves tail_mass >= eps_trunc raises truncation_error carrying the
// required estimate.
TwoModeState build_input(const StateSpec& spec,
                         std::optional<FockCutoff> cutoff = std::nullopt,
                         double eps_trunc                 = kDefaultEpsTrunc);

// (A rho A')/Tr(A rho A') with A = a1' x I + e^{i phi} I x a2'.
TwoModeState apply_dpa(const TwoModeState& rho_in, DpaParams params);

// Generic dense path (also serves custom user densities).  Writes the
// numerator trace through `numerator_trace` when non-null.
TwoModeDensity apply_dpa(const TwoModeDensity& rho_in, DpaParams params,
                         double* numerator_trace = nullptr);

// Closed normalization factors:
//   N_cc = |z1 + e^{-i phi} z2|^2 + 2,  N_tt = nbar1 + nbar2 + 2,
//   N_ss = kappa1 + kappa2,             N_tms = 2 kappa,  N_vac = 2.
double normalization_closed(const StateSpec& spec, DpaParams params);

}  // namespace dpa

#pragma once

#include <array>

#include "dpa/states.hpp"

// Single-photon-subspace entanglement witness: project onto
// {|00>,|01>,|10>,|11>}, normalize by the subspace population T, partially
// transpose mode 2, and report NPT = -2 sum(negative eigenvalues), in [0,1].

namespace dpa {

enum class Stage { before, after };

using Matrix4 = Eigen::Matrix4cd;

struct SubspaceWitness {
    Matrix4 x;        // unit trace, basis order {|00>,|01>,|10>,|11>}
    Matrix4 x_pt;     // partial transpose in mode 2
    double t;         // subspace population before normalization
    std::array<double, 4> eigenvalues_pt;  // ascending
    double npt;       // clamped to [0,1]
};

// threshold below which an eigenvalue counts as negative
inline constexpr double kNegativeEigTol = 1e-11;

SubspaceWitness subspace_witness(const TwoModeState& rho);
SubspaceWitness subspace_witness(const TwoModeDensity& rho);

// Closed forms:
//   before: 0 for cc/tt/ss/vac, 2 lambda/(1+lambda^2) for tmsv;
//   after:  2/N_cc,  (sqrt(4A^2+G^2)-G)/(2A+G) with A=(1+n1)(1+n2) and
//           G=n1+n2+2n1n2,  1 for ss/tmsv/vac.
double npt_closed(const StateSpec& spec, DpaParams params, Stage stage);

// X^{T2} regenerated from the closed-form subspace elements (independent of
// the numeric pipeline) and its closed eigenvalue list.
Matrix4 closed_xpt(const StateSpec& spec, DpaParams params, Stage stage);
std::array<double, 4> closed_xpt_eigenvalues(const StateSpec& spec, DpaParams params, Stage stage);

}  // namespace dpa

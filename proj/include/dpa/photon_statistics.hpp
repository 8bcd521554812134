#pragma once

#include <vector>

#include "dpa/states.hpp"

// Joint photon-number distributions P_{n1,n2} = <n1,n2|rho|n1,n2>, their
// marginals, and the discorrelation verdict: diagonal identically zero while
// both marginals carry mass.

namespace dpa {

struct JpndTable {
    int n_max;
    Eigen::MatrixXd p;          // (n_max+1) x (n_max+1)
    Eigen::VectorXd marginal1;  // row sums
    Eigen::VectorXd marginal2;  // column sums
    double captured_mass;
};

struct DiscorrelationVerdict {
    bool discorrelated;
    double max_diagonal;
    double min_marginal_mass;
    double eps_diagonal;
    double eps_marginal;
};

inline constexpr double kDiagonalEps = 1e-10;
inline constexpr double kMarginalEps = 1e-6;

// Requires n_max <= min(d1,d2) - 2 so the top (DPA-shifted) level stays out
// of the window.
JpndTable jpnd(const TwoModeState& rho, int n_max);

DiscorrelationVerdict discorrelation_verdict(const JpndTable& table,
                                             double eps_diagonal = kDiagonalEps,
                                             double eps_marginal = kMarginalEps);

// P_{n,n}(phi) for the DPA image of a coherent pair, sampled on phi_grid.
std::vector<double> diagonal_vs_phase(const CoherentPair& spec, int n,
                                      const std::vector<double>& phi_grid);

}  // namespace dpa

#pragma once

#include <span>
#include <vector>

#include "dpa/entanglement.hpp"
#include "dpa/states.hpp"

// Two-mode Wigner functions W(beta1,beta2) = <Pi(beta1) Pi(beta2)>, evaluated
// two ways: analytically from the closed Gaussian kernels and non-Gaussian
// factors (output = T^NG/N * input kernel), and numerically as the trace of
// rho against displaced-parity matrices.  WLN = ln  integral |W| d2b1 d2b2 by
// tensor Gauss-Legendre quadrature with node doubling.
//
// Every family's W fits one canonical form over x = (q1,p1,q2,p2):
//   W(x) = exp(E(x)) * F(x),  E quadratic (no q-p mixing), and
//   F = (cT |u0 + w.x|^2 - sT)/N after addition, F = 1 before.
// The quadrature exploits this: for fixed (q1,p1) the exponential splits into
// per-axis factors over the (q2,p2) node grids.

namespace dpa {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

class WignerEvaluator {
  public:
    WignerEvaluator(StateSpec spec, DpaParams params, Stage stage);

    double operator()(const PhasePoint& pt) const;
    double value(cplx beta1, cplx beta2) const;

    // sum_{i,j} wq[i] wp[j] f(W(q1,p1,q2[i],p2[j])), f = |.| or identity;
    // fixed summation order, blocks below the support threshold return 0.
    double block_weighted_sum(double q1, double p1, std::span<const double> q2,
                              std::span<const double> wq, std::span<const double> p2,
                              std::span<const double> wp, bool absolute) const;

    const StateSpec& spec() const { return spec_; }
    Stage stage() const { return stage_; }
    double nbar_total() const { return nbar_total_; }

    // Gaussian center and per-axis width of the kernel (cross terms folded
    // in by Schur complement); drives the adaptive quadrature boxes.
    std::array<double, 4> axis_center() const;
    std::array<double, 4> axis_sigma() const;

  private:
    StateSpec spec_;
    DpaParams params_;
    Stage stage_;
    double nbar_total_;

    // exp argument: e0 - aq1 q1^2 - ap1 p1^2 - aq2 q2^2 - ap2 p2^2
    //               + cq q1 q2 + cp p1 p2 + lq1 q1 + lp1 p1 + lq2 q2 + lp2 p2
    double e0_ = 0, aq1_ = 0, ap1_ = 0, aq2_ = 0, ap2_ = 0;
    double cq_ = 0, cp_ = 0, lq1_ = 0, lp1_ = 0, lq2_ = 0, lp2_ = 0;
    bool after_ = false;
    cplx u0_ = 0, wq1_ = 0, wp1_ = 0, wq2_ = 0, wp2_ = 0;
    double ct_ = 0, st_ = 0;  // already divided by N
};

double wigner_analytic(const StateSpec& spec, DpaParams params, Stage stage,
                       const PhasePoint& pt);

// Displaced-parity trace; requires |beta_j|^2 <= d_j/4 per mode.
double wigner_numeric(const TwoModeState& rho, const PhasePoint& pt);

struct QuadratureConfig {
    // 0 = adaptive per-axis halfwidths |center_j| + 5 sigma_j + 2 from the
    // evaluator's kernel; a positive value forces that isotropic halfwidth
    // on every axis (must still satisfy L >= 3 + 2 sqrt(nbar_total+1)).
    double box_halfwidth = 0.0;
    int nodes_per_axis   = 24;  // even
    double tol_wln       = 2e-3;
    int max_doublings    = 4;
};

double default_box_halfwidth(double nbar_total);
std::array<double, 4> quadrature_box(const WignerEvaluator& evaluator,
                                     const QuadratureConfig& config);

struct WlnResult {
    double wln;
    double integral_abs;
    int nodes_used;
    double last_delta;
    std::vector<int> node_ladder;
    std::vector<double> estimates;
};

// Refines by doubling nodes_per_axis until |delta WLN| < tol_wln; throws
// convergence_error (carrying the last two estimates) past the cap.
WlnResult wln(const WignerEvaluator& evaluator, QuadratureConfig config = {});

// Signed integral of W over the same box (no refinement) -- the
// normalization cross-check, equals 1 for a well-captured state.
double integrate_signed(const WignerEvaluator& evaluator, QuadratureConfig config = {});

struct SectionPlane {
    int axis_a = 0;                         // 0:q1 1:p1 2:q2 3:p2
    int axis_b = 2;
    std::array<double, 4> fixed{0, 0, 0, 0};
    double extent  = 4.0;                   // grid spans [-extent, extent]
    int resolution = 161;
};

struct SectionGrid {
    SectionPlane plane;
    Eigen::MatrixXd values;  // values(i,j) at axis_a = grid[i], axis_b = grid[j]
    std::vector<double> grid;
};

SectionGrid section_grid(const WignerEvaluator& evaluator, const SectionPlane& plane);

}  // namespace dpa

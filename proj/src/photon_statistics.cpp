#include "dpa/photon_statistics.hpp"

namespace dpa {

JpndTable jpnd(const TwoModeState& rho, int n_max) {
    const int guard = std::min(rho.cutoff().d1, rho.cutoff().d2) - 2;
    if (n_max < 0 || n_max > guard)
        throw truncation_error("jpnd: n_max exceeds cutoff guard (min(d1,d2)-2)", n_max + 2);

    JpndTable t;
    t.n_max = n_max;
    t.p.resize(n_max + 1, n_max + 1);
    for (int n1 = 0; n1 <= n_max; ++n1)
        for (int n2 = 0; n2 <= n_max; ++n2) t.p(n1, n2) = rho.diagonal(n1, n2);
    t.marginal1     = t.p.rowwise().sum();
    t.marginal2     = t.p.colwise().sum();
    t.captured_mass = t.p.sum();
    return t;
}

DiscorrelationVerdict discorrelation_verdict(const JpndTable& table, double eps_diagonal,
                                             double eps_marginal) {
    DiscorrelationVerdict v;
    v.eps_diagonal = eps_diagonal;
    v.eps_marginal = eps_marginal;
    v.max_diagonal = table.p.diagonal().maxCoeff();
    v.min_marginal_mass =
        std::min(table.marginal1.lpNorm<1>(), table.marginal2.lpNorm<1>());
    v.discorrelated = (v.max_diagonal < eps_diagonal) && (v.min_marginal_mass > eps_marginal);
    return v;
}

std::vector<double> diagonal_vs_phase(const CoherentPair& spec, int n,
                                      const std::vector<double>& phi_grid) {
    if (n < 0) throw invalid_dimension_error("diagonal_vs_phase: n must be >= 0");
    const TwoModeState in = build_input(StateSpec{spec});
    std::vector<double> out;
    out.reserve(phi_grid.size());
    for (double phi : phi_grid) {
        const TwoModeState after = apply_dpa(in, DpaParams{phi});
        out.push_back(after.diagonal(n, n));
    }
    return out;
}

}  // namespace dpa

#include "sevt/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sevt::detail {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const std::vector<double>& step,
                             const NelderMeadOptions& opts) {
    const std::size_t n = x0.size();
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, shrink = 0.5;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step[i];
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    NelderMeadResult res;
    int iter = 0;
    while (iter < opts.max_iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];

        const double spread = fv[worst] - fv[best];
        if (spread <= opts.tol || spread <= opts.tol * std::fabs(fv[best])) {
            res.converged = true;
            break;
        }
        ++iter;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + coef * (centroid[j] - simplex[worst][j]);
            return p;
        };

        const std::vector<double> reflected = blend(alpha);
        const double f_r = f(reflected);
        if (f_r < fv[best]) {
            const std::vector<double> expanded = blend(gamma);
            const double f_e = f(expanded);
            if (f_e < f_r) {
                simplex[worst] = expanded;
                fv[worst] = f_e;
            } else {
                simplex[worst] = reflected;
                fv[worst] = f_r;
            }
            continue;
        }
        if (f_r < fv[second_worst]) {
            simplex[worst] = reflected;
            fv[worst] = f_r;
            continue;
        }
        const std::vector<double> contracted = blend(f_r < fv[worst] ? rho : -rho);
        const double f_c = f(contracted);
        if (f_c < std::min(f_r, fv[worst])) {
            simplex[worst] = contracted;
            fv[worst] = f_c;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {  // shrink toward the best vertex
            if (i == best) continue;
            for (std::size_t j = 0; j < n; ++j)
                simplex[i][j] = simplex[best][j] + shrink * (simplex[i][j] - simplex[best][j]);
            fv[i] = f(simplex[i]);
        }
    }

    const std::size_t arg = static_cast<std::size_t>(
        std::min_element(fv.begin(), fv.end()) - fv.begin());
    res.x = simplex[arg];
    res.fmin = fv[arg];
    res.iterations = iter;
    return res;
}

}  // namespace sevt::detail

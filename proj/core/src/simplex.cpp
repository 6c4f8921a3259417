#include "nvspin/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nvspin {

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, const SimplexOptions& opt) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty parameter vector");
    if (opt.initial_step.size() != n) throw std::invalid_argument("nelder_mead: initial_step size mismatch");

    SimplexResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    std::vector<std::vector<double>> x(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) x[i + 1][i] += opt.initial_step[i];
    std::vector<double> fx(n + 1);
    for (std::size_t j = 0; j <= n; ++j) fx[j] = eval(x[j]);

    std::vector<std::size_t> order(n + 1);
    auto sort_vertices = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        std::vector<std::vector<double>> xs(n + 1);
        std::vector<double> fs(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            xs[k] = std::move(x[order[k]]);
            fs[k] = fx[order[k]];
        }
        x = std::move(xs);
        fx = std::move(fs);
    };

    auto converged = [&] {
        if (fx[n] - fx[0] <= opt.f_tolerance) return true;
        double spread = 0.0;
        for (std::size_t j = 1; j <= n; ++j)
            for (std::size_t i = 0; i < n; ++i) spread = std::max(spread, std::abs(x[j][i] - x[0][i]));
        return spread <= opt.x_tolerance;
    };

    auto along = [&](const std::vector<double>& from, const std::vector<double>& to, double t) {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = from[i] + t * (to[i] - from[i]);
        return p;
    };

    sort_vertices();
    int iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        if (converged()) {
            res.converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += x[j][i] / static_cast<double>(n);

        const auto xr = along(centroid, x[n], -1.0);
        const double fr = eval(xr);
        if (fr < fx[0]) {
            const auto xe = along(centroid, x[n], -2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                x[n] = xe;
                fx[n] = fe;
            } else {
                x[n] = xr;
                fx[n] = fr;
            }
        } else if (fr < fx[n - 1]) {
            x[n] = xr;
            fx[n] = fr;
        } else {
            const bool outside = fr < fx[n];
            const auto xc = outside ? along(centroid, xr, 0.5) : along(centroid, x[n], 0.5);
            const double fc = eval(xc);
            if (fc < (outside ? fr : fx[n])) {
                x[n] = xc;
                fx[n] = fc;
            } else {
                for (std::size_t j = 1; j <= n; ++j) {
                    x[j] = along(x[0], x[j], 0.5);
                    fx[j] = eval(x[j]);
                }
            }
        }
        sort_vertices();
    }
    if (!res.converged && converged()) res.converged = true;
    res.x = x[0];
    res.f = fx[0];
    res.iterations = iter;
    return res;
}

}  // namespace nvspin

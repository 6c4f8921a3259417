#include "nvspin/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "nvspin/constants.hpp"
#include "nvspin/simplex.hpp"

namespace nvspin {

std::vector<PredictedFrequency> predicted_frequencies(const SystemParams& params, const Orientation& o,
                                                      double B, bool include_p1) {
    const auto axes = defect_axes(params.frame);
    const FieldConfig cfg = o.at(B);
    std::vector<PredictedFrequency> out;
    out.reserve(include_p1 ? 48 : 12);
    for (int a = 0; a < 4; ++a) {
        const auto es = eigh(nv_hamiltonian(params.nv, field_in_defect_frame(cfg, axes[a])));
        std::size_t zero = 0;
        for (std::size_t k = 1; k < 3; ++k)
            if (std::norm(es.vectors(1, k)) > std::norm(es.vectors(1, zero))) zero = k;
        // remaining two in ascending order: lower is -1
        std::size_t rest[2];
        std::size_t r = 0;
        for (std::size_t k = 0; k < 3; ++k)
            if (k != zero) rest[r++] = k;
        const double e0 = es.values[zero];
        const double em = es.values[rest[0]];
        const double ep = es.values[rest[1]];
        out.push_back({{FamilyKind::nv_0_to_plus1}, a, ordinary(std::abs(ep - e0))});
        out.push_back({{FamilyKind::nv_0_to_minus1}, a, ordinary(std::abs(em - e0))});
        out.push_back({{FamilyKind::nv_plus1_to_minus1}, a, ordinary(std::abs(ep - em))});

        if (include_p1) {
            const auto ps = eigh(p1_hamiltonian(params.p1, field_in_defect_frame(cfg, axes[a])));
            for (const auto& fam : p1_families())
                out.push_back({fam, a, ordinary(std::abs(ps.values[fam.upper - 1] - ps.values[fam.lower - 1]))});
        }
    }
    return out;
}

double objective(std::span<const ResonancePoint> points, const SystemParams& params, const Orientation& o,
                 bool include_p1) {
    if (points.empty()) throw std::invalid_argument("objective: no resonance points");
    // Canonical order makes the floating-point sum independent of input order.
    std::vector<const ResonancePoint*> sorted;
    sorted.reserve(points.size());
    for (const auto& p : points) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(), [](const ResonancePoint* a, const ResonancePoint* b) {
        return std::tie(a->B, a->f, a->weight) < std::tie(b->B, b->f, b->weight);
    });

    double total = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        const double B = sorted[i]->B;
        const auto pred = predicted_frequencies(params, o, B, include_p1);
        for (; i < sorted.size() && sorted[i]->B == B; ++i) {
            const ResonancePoint& p = *sorted[i];
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : pred) {
                if (p.family_hint && !(q.family == *p.family_hint)) continue;
                best = std::min(best, std::abs(p.f - q.f));
            }
            if (std::isinf(best)) throw std::invalid_argument("objective: family hint matches no enabled line");
            total += p.weight * best * best;
        }
    }
    return total;
}

namespace {

struct Model {
    std::span<const ResonancePoint> points;
    FitOptions options;
    double weight_sum = 0.0;

    SystemParams params_for(std::span<const double> x) const {
        SystemParams p = options.params;
        if (options.fit_D_E) {
            p.nv.D = angular(x[2] * 1e6);
            p.nv.E = angular(x[3] * 1e6);
        }
        return p;
    }

    double rms(std::span<const double> x) const {
        const Orientation o{x[0], x[1]};
        return std::sqrt(objective(points, params_for(x), o, options.include_p1) / weight_sum);
    }
};

}  // namespace

FitResult fit_orientation(std::span<const ResonancePoint> points, const Orientation& initial,
                          const FitOptions& options) {
    if (points.size() < 4) throw std::invalid_argument("fit_orientation: need at least 4 resonance points");
    Model model{points, options, 0.0};
    for (const auto& p : points) {
        if (!(p.weight > 0.0)) throw std::invalid_argument("fit_orientation: weights must be > 0");
        model.weight_sum += p.weight;
    }

    SimplexOptions base;
    base.max_iterations = options.max_iterations;
    base.f_tolerance = options.f_tolerance_hz;
    base.x_tolerance = options.x_tolerance_deg;
    base.initial_step = {options.initial_step_deg, options.initial_step_deg};
    std::vector<double> extra;
    if (options.fit_D_E) {
        extra = {ordinary(options.params.nv.D) / 1e6, ordinary(options.params.nv.E) / 1e6};
        base.initial_step.push_back(options.initial_step_mhz);
        base.initial_step.push_back(options.initial_step_mhz);
    }
    const Objective f = [&](std::span<const double> x) { return model.rms(x); };

    auto seed_point = [&](double th, double ph) {
        std::vector<double> x{th, ph};
        x.insert(x.end(), extra.begin(), extra.end());
        return x;
    };

    std::vector<std::vector<double>> starts{seed_point(initial.theta_deg, initial.phi_deg)};
    if (options.seed_window_deg > 0.0 && options.seed_step_deg > 0.0 && options.seed_count > 0) {
        const int half = static_cast<int>(std::floor(options.seed_window_deg / options.seed_step_deg));
        const int n = 2 * half + 1;
        std::vector<double> grid(static_cast<std::size_t>(n * n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                grid[static_cast<std::size_t>(i * n + j)] =
                    f(seed_point(initial.theta_deg + (i - half) * options.seed_step_deg,
                                 initial.phi_deg + (j - half) * options.seed_step_deg));
        std::vector<std::pair<double, int>> minima;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double v = grid[static_cast<std::size_t>(i * n + j)];
                bool is_min = true;
                for (int di = -1; di <= 1 && is_min; ++di)
                    for (int dj = -1; dj <= 1; ++dj) {
                        const int a = i + di, b = j + dj;
                        if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= n || b >= n) continue;
                        if (grid[static_cast<std::size_t>(a * n + b)] < v) {
                            is_min = false;
                            break;
                        }
                    }
                if (is_min) minima.emplace_back(v, i * n + j);
            }
        std::sort(minima.begin(), minima.end());
        const std::size_t keep = std::min(minima.size(), static_cast<std::size_t>(options.seed_count));
        for (std::size_t k = 0; k < keep; ++k) {
            const int i = minima[k].second / n, j = minima[k].second % n;
            starts.push_back(seed_point(initial.theta_deg + (i - half) * options.seed_step_deg,
                                        initial.phi_deg + (j - half) * options.seed_step_deg));
        }
    }

    SimplexResult best;
    best.f = std::numeric_limits<double>::infinity();
    int total_iterations = 0;
    bool best_converged = false;
    for (const auto& x0 : starts) {
        SimplexOptions so = base;
        const SimplexResult first = nelder_mead(f, x0, so);
        for (auto& s : so.initial_step) s *= 0.1;
        so.max_iterations = std::max(0, options.max_iterations - first.iterations);
        SimplexResult second = nelder_mead(f, first.x, so);
        if (second.f > first.f) {
            second.x = first.x;
            second.f = first.f;
        }
        total_iterations += first.iterations + second.iterations;
        if (second.f < best.f) {
            best = second;
            best_converged = first.converged && second.converged;
        }
    }
    const SimplexResult& second = best;

    FitResult r;
    r.theta_deg = second.x[0];
    r.phi_deg = second.x[1];
    const SystemParams p = model.params_for(second.x);
    r.D = p.nv.D;
    r.E = p.nv.E;
    r.rms_residual_hz = second.f;
    r.n_iterations = total_iterations;
    r.converged = best_converged;
    return r;
}

}  // namespace nvspin

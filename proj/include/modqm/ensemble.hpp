#pragma once

// Monte Carlo weak-measurement ensemble: per-window trials with counter-based
// random streams keyed by (seed, window, trial), so results are
// bit-reproducible for a fixed seed at any thread count, and the
// fringe-shift estimator shared by the exact-density and histogram paths.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "modqm/rng.hpp"
#include "modqm/tsvf.hpp"

namespace modqm {

struct EnsembleConfig {
    std::size_t trials_per_window = 200000;
    std::vector<PositionWindow> windows;
    std::uint64_t seed = 42;
};

inline void validate_ensemble(const EnsembleConfig& cfg) {
    if (cfg.trials_per_window < 1000)
        throw std::invalid_argument("ensemble: need >= 1e3 trials per window");
    if (cfg.windows.empty()) throw std::invalid_argument("ensemble: no windows");
    std::vector<PositionWindow> sorted = cfg.windows;
    std::sort(sorted.begin(), sorted.end(),
              [](const PositionWindow& a, const PositionWindow& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (!(sorted[i].hi > sorted[i].lo))
            throw std::invalid_argument("ensemble: empty window");
        if (i > 0 && sorted[i].lo < sorted[i - 1].hi - 1e-12)
            throw std::invalid_argument("ensemble: windows must be disjoint");
    }
}

// contiguous equal-width windows centered on x=0 covering +-half_span
inline std::vector<PositionWindow> make_windows(double half_span, double width) {
    if (!(width > 0.0) || !(half_span > width))
        throw std::invalid_argument("make_windows: bad geometry");
    const std::size_t n = static_cast<std::size_t>(std::floor(2.0 * half_span / width));
    std::vector<PositionWindow> w(n);
    const double start = -0.5 * static_cast<double>(n) * width;
    for (std::size_t i = 0; i < n; ++i)
        w[i] = PositionWindow{start + static_cast<double>(i) * width,
                              start + static_cast<double>(i + 1) * width};
    return w;
}

struct TrialRecord {
    std::size_t window = 0;
    bool post_selected = false;
    double reading = 0.0;  // meaningful iff post_selected
};

inline TrialRecord simulate_trial(const PointerDistribution& dist, std::size_t window_index,
                                  std::uint64_t seed, std::uint64_t trial_index) {
    RngStream rng = make_stream(seed, window_index, trial_index);
    TrialRecord rec;
    rec.window = window_index;
    rec.post_selected = rng.next_double() < dist.prob;
    if (rec.post_selected) rec.reading = dist.sample(rng.next_double());
    return rec;
}

struct WindowStats {
    PositionWindow window;
    std::size_t trials = 0;
    std::size_t selected = 0;
    double mean_reading = 0.0;
    double standard_error = 0.0;
    double prob_exact = 0.0;       // post-selection probability of the window run
    double mean_exact = 0.0;       // exact conditional pointer mean
    cplx weak_val;                 // <Pi>_w
    double reference_mean = 0.0;   // g * Re <Pi>_w (two-time density curve)
};

struct EnsembleResult {
    std::vector<WindowStats> windows;
    double selection_rate = 0.0;
    std::uint64_t seed = 0;
    double g = 0.0, sigma_q = 0.0;
};

namespace detail {

template <typename Fn>
inline void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace detail

// per trial: Bernoulli post-selection at the exact probability, then an
// inverse-CDF draw from the exact conditional reading pdf
inline EnsembleResult run_ensemble(const TwoStateVector& tsv, const PointerModel& model,
                                   const EnsembleConfig& cfg, std::size_t threads = 1) {
    validate_ensemble(cfg);
    validate_pointer(model);
    EnsembleResult result;
    result.windows.resize(cfg.windows.size());
    result.seed = cfg.seed;
    result.g = model.g;
    result.sigma_q = model.sigma_q;

    detail::parallel_for(cfg.windows.size(), threads, [&](std::size_t i) {
        const PointerDistribution dist = pointer_distribution(tsv, cfg.windows[i], model);
        WindowStats& ws = result.windows[i];
        ws.window = cfg.windows[i];
        ws.trials = cfg.trials_per_window;
        ws.prob_exact = dist.prob;
        ws.mean_exact = dist.mean();
        ws.weak_val = dist.weak_val;
        ws.reference_mean = model.g * dist.weak_val.real();
        double sum = 0.0, sumsq = 0.0;
        std::size_t count = 0;
        for (std::uint64_t t = 0; t < cfg.trials_per_window; ++t) {
            const TrialRecord rec = simulate_trial(dist, i, cfg.seed, t);
            if (!rec.post_selected) continue;
            ++count;
            sum += rec.reading;
            sumsq += rec.reading * rec.reading;
        }
        ws.selected = count;
        if (count > 1) {
            ws.mean_reading = sum / static_cast<double>(count);
            const double var =
                (sumsq / static_cast<double>(count) - ws.mean_reading * ws.mean_reading) *
                static_cast<double>(count) / static_cast<double>(count - 1);
            ws.standard_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(count));
        }
    });

    std::size_t total = 0, selected = 0;
    for (const auto& ws : result.windows) {
        total += ws.trials;
        selected += ws.selected;
    }
    result.selection_rate =
        (total > 0) ? static_cast<double>(selected) / static_cast<double>(total) : 0.0;
    return result;
}

// --- fringe-shift estimation ---------------------------------------------------

struct FringeShift {
    double phi = 0.0;              // recovered relative phase, folded into (-pi, pi]
    double delta = 0.0;            // hbar * phi / p0
    double delta_geometric = 0.0;  // spatial displacement of the cos^2 pattern
    double amplitude = 0.0;        // fitted fringe amplitude (envelope units)
};

// weighted least-squares fit of h ~ c0 + a cos(2 p0 x/hbar) + b sin(2 p0 x/hbar);
// phi = atan2(b, a). Free of spectral leakage for any sampling span.
inline FringeShift estimate_fringe_shift(const std::vector<double>& xs,
                                         const std::vector<double>& h,
                                         const std::vector<double>& weights, double p0,
                                         double hbar) {
    if (xs.size() != h.size() || xs.size() < 3)
        throw std::invalid_argument("fringe shift: need >= 3 samples");
    // sampling density precondition: at least 8 windows per fringe period
    if (xs.size() >= 2) {
        double max_gap = 0.0;
        for (std::size_t i = 1; i < xs.size(); ++i)
            max_gap = std::max(max_gap, xs[i] - xs[i - 1]);
        const double fringe = detail::pi * hbar / p0;
        if (max_gap > fringe / 8.0 + 1e-12)
            throw std::invalid_argument("fringe shift: sampling coarser than 8 per fringe");
    }
    const double k = 2.0 * p0 / hbar;
    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double rhs[3] = {0, 0, 0};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        const double basis[3] = {1.0, std::cos(k * xs[i]), std::sin(k * xs[i])};
        for (int r = 0; r < 3; ++r) {
            rhs[r] += w * basis[r] * h[i];
            for (int c = 0; c < 3; ++c) m[r][c] += w * basis[r] * basis[c];
        }
    }
    // solve the 3x3 normal equations by Gaussian elimination with pivoting
    double a[3][4];
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) a[r][c] = m[r][c];
        a[r][3] = rhs[r];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        for (int c = 0; c < 4; ++c) std::swap(a[col][c], a[piv][c]);
        if (std::abs(a[col][col]) < 1e-300)
            throw std::runtime_error("fringe shift: singular fit");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
        }
    }
    const double ac = a[1][3] / a[1][1];
    const double as = a[2][3] / a[2][2];
    FringeShift out;
    out.phi = std::atan2(as, ac);
    out.amplitude = std::hypot(ac, as);
    out.delta = hbar * out.phi / p0;
    out.delta_geometric = hbar * out.phi / (2.0 * p0);
    return out;
}

// fringe spacing from the exact density: the frequency maximizing the fitted
// oscillation amplitude, refined by parabolic interpolation; spacing = 2 pi / k
inline double estimate_fringe_spacing(const std::vector<double>& xs, const std::vector<double>& h,
                                      double k_guess) {
    auto amplitude_at = [&](double k) {
        double c2 = 0, s2 = 0, cs = 0, hc = 0, hs = 0, c1 = 0, s1 = 0, n = 0, hm = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double c = std::cos(k * xs[i]), s = std::sin(k * xs[i]);
            c2 += c * c; s2 += s * s; cs += c * s;
            c1 += c; s1 += s; n += 1.0;
            hc += h[i] * c; hs += h[i] * s; hm += h[i];
        }
        // project out the constant term, then solve the 2x2 system
        const double cc = c2 - c1 * c1 / n, ss = s2 - s1 * s1 / n, cx = cs - c1 * s1 / n;
        const double bc = hc - hm * c1 / n, bs = hs - hm * s1 / n;
        const double det = cc * ss - cx * cx;
        if (std::abs(det) < 1e-300) return 0.0;
        const double acoef = (bc * ss - bs * cx) / det;
        const double bcoef = (bs * cc - bc * cx) / det;
        return std::hypot(acoef, bcoef);
    };
    double best_k = k_guess, best_a = -1.0;
    const int scan = 200;
    for (int i = -scan; i <= scan; ++i) {
        const double k = k_guess * (1.0 + 0.2 * static_cast<double>(i) / scan);
        const double a = amplitude_at(k);
        if (a > best_a) {
            best_a = a;
            best_k = k;
        }
    }
    const double dk = k_guess * 0.2 / scan;
    const double am = amplitude_at(best_k - dk), a0 = amplitude_at(best_k), ap = amplitude_at(best_k + dk);
    const double denom = am - 2.0 * a0 + ap;
    double refined = best_k;
    if (std::abs(denom) > 1e-300) refined = best_k - 0.5 * dk * (ap - am) / denom;
    return 2.0 * detail::pi / refined;
}

}  // namespace modqm

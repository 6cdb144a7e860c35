#pragma once

// Library-level command implementations behind the CLI: each maps a
// validated RunConfig to output files (CSV/JSON) under the output directory
// and returns an exit code that is 0 only when every configured tolerance
// passes. Kept callable in-process so tests can exercise the exact artifacts.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "modqm/config.hpp"
#include "modqm/detops.hpp"
#include "modqm/ensemble.hpp"
#include "modqm/io.hpp"
#include "modqm/scenarios.hpp"

namespace modqm {

struct CommandResult {
    int exit_code = 0;
    json report;
};

namespace detail {

inline double wrap_angle(double a) {
    while (a > pi) a -= 2.0 * pi;
    while (a <= -pi) a += 2.0 * pi;
    return a;
}

inline json config_echo(const RunConfig& cfg) {
    json j = json::object();
    for (const auto& [k, v] : cfg.values) j[k] = v;
    return j;
}

inline std::size_t resolve_threads(const RunConfig& cfg) {
    const long long t = cfg.integer("threads");
    if (t < 0) throw std::invalid_argument("threads must be >= 0");
    if (t == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        return hw ? hw : 1;
    }
    return static_cast<std::size_t>(t);
}

inline Envelope envelope_from(const RunConfig& cfg, const std::string& kind_key,
                              const std::string& width_key) {
    const std::string kind = cfg.str(kind_key);
    if (kind == "gaussian") return Envelope{EnvelopeKind::gaussian, cfg.num(width_key)};
    if (kind == "bump") return Envelope{EnvelopeKind::bump, cfg.num(width_key)};
    throw std::invalid_argument("envelope must be 'gaussian' or 'bump'");
}

inline ExperimentSpec experiment_from(const RunConfig& cfg) {
    ExperimentSpec spec;
    spec.envelope = envelope_from(cfg, "envelope", "sigma");
    spec.L = cfg.num("l");
    spec.p0 = cfg.num("p0");
    spec.phi = cfg.num("phi");
    spec.mass = cfg.num("mass");
    spec.phase_on_right = cfg.boolean("phase_on_right");
    return spec;
}

inline Grid grid_from(const RunConfig& cfg) {
    return make_grid(static_cast<std::size_t>(cfg.integer("n_points")), cfg.num("x_min"),
                     cfg.num("x_max"), cfg.num("hbar"));
}

// envelope-normalized fringe samples over the central region
inline void fringe_samples(const Experiment& ex, const std::vector<double>& field,
                           std::vector<double>& xs, std::vector<double>& h) {
    double peak = 0.0;
    for (double e : ex.envelope_T) peak = std::max(peak, e);
    for (std::size_t j = 0; j < ex.grid.n; ++j) {
        if (ex.envelope_T[j] < 1e-3 * peak) continue;
        if (std::abs(ex.grid.x(j)) > 2.0 * ex.sigma_T) continue;
        xs.push_back(ex.grid.x(j));
        h.push_back(field[j] / ex.envelope_T[j]);
    }
}

}  // namespace detail

// --- interfere -----------------------------------------------------------------

inline Schema interfere_schema() {
    return {{"out", default_out_dir()}, {"seed", "42"},       {"threads", "0"},
            {"n_points", "2048"},       {"x_min", "-40"},     {"x_max", "40"},
            {"hbar", "1"},              {"mass", "1"},        {"sigma", "2"},
            {"l", "20"},                {"p0", "2.5"},        {"phi", "1.0"},
            {"envelope", "gaussian"},   {"phase_on_right", "true"},
            {"tol_phi", "0.01"},        {"tol_spacing", "0.01"}, {"tol_prob", "1e-6"}};
}

inline CommandResult cmd_interfere(const RunConfig& cfg) {
    const std::filesystem::path out = cfg.str("out");
    ensure_dir(out);
    Grid g = detail::grid_from(cfg);
    Experiment ex = build_experiment(g, detail::experiment_from(cfg));

    auto rho0 = density(ex.pre0);
    {
        CsvWriter csv(out / "density_t0.csv", {"x", "density"});
        for (std::size_t j = 0; j < g.n; ++j) csv.row({g.x(j), rho0[j]});
    }
    auto rho_t = density(ex.pre_T);
    TwoStateVector tsv = make_tsv(ex.pre_T, ex.post_T);
    auto rho_tt = two_time_density(tsv);
    auto ref = reference_two_time_real(ex);
    {
        CsvWriter csv(out / "density_T.csv",
                      {"x", "density", "envelope", "re_rho_tt", "im_rho_tt", "ref_re_rho_tt"});
        for (std::size_t j = 0; j < g.n; ++j)
            csv.row({g.x(j), rho_t[j], ex.envelope_T[j], rho_tt[j].real(), rho_tt[j].imag(),
                     ref[j]});
    }

    std::vector<double> xs, h;
    detail::fringe_samples(ex, rho_t, xs, h);
    FringeShift fit = estimate_fringe_shift(xs, h, {}, ex.spec.p0, g.hbar);
    const double spacing = estimate_fringe_spacing(xs, h, 2.0 * ex.spec.p0 / g.hbar);
    const double spacing_expected = detail::pi * g.hbar / ex.spec.p0;
    const double phi_err = std::abs(detail::wrap_angle(fit.phi - ex.spec.phi));

    const bool pass_phi = phi_err <= cfg.num("tol_phi");
    const bool pass_spacing =
        std::abs(spacing / spacing_expected - 1.0) <= cfg.num("tol_spacing");
    const bool pass_prob =
        std::abs(ex.post_selection_probability - 0.5) <= cfg.num("tol_prob");

    CommandResult res;
    res.report = {{"config", detail::config_echo(cfg)},
                  {"branch_overlap", ex.branch_overlap},
                  {"post_selection_probability", ex.post_selection_probability},
                  {"sigma_at_meeting", ex.sigma_T},
                  {"fringe_spacing", spacing},
                  {"fringe_spacing_expected", spacing_expected},
                  {"recovered_phi", fit.phi},
                  {"recovered_phi_error", phi_err},
                  {"delta", fit.delta},
                  {"delta_expected", g.hbar * ex.spec.phi / ex.spec.p0},
                  {"delta_geometric", fit.delta_geometric},
                  {"pass_phi", pass_phi},
                  {"pass_spacing", pass_spacing},
                  {"pass_probability", pass_prob}};
    res.exit_code = (pass_phi && pass_spacing && pass_prob) ? 0 : 1;
    write_json(out / "interfere_metrics.json", res.report);
    return res;
}

// --- modular -------------------------------------------------------------------

inline Schema modular_schema() {
    return {{"out", default_out_dir()},
            {"seed", "42"},
            {"threads", "0"},
            {"n_points", "2048"},
            {"x_min", "-40"},
            {"x_max", "40"},
            {"hbar", "1"},
            {"phi", "0.7"},
            {"l_two_packet", "10"},
            {"branch_width", "8"},
            {"l_localized", "5"},
            {"localized_width", "4"},
            {"n_bins", "16"},
            {"n_max", "10"},
            {"dt_eom", "1e-4"},
            {"n_particles", "10000"},
            {"tol_harmonic", "1e-6"},
            {"tol_uniform", "1e-6"},
            {"tol_eom", "1e-7"},
            {"contrast_quantum_min", "0.1"},
            {"contrast_classical_max", "1e-10"}};
}

inline CommandResult cmd_modular(const RunConfig& cfg) {
    const std::filesystem::path out = cfg.str("out");
    ensure_dir(out);
    Grid g = detail::grid_from(cfg);
    const double phi = cfg.num("phi");
    const cplx I(0.0, 1.0);

    // two-packet harmonics
    const double l2 = cfg.num("l_two_packet");
    ModularSpec spec2 = make_modular_spec(g, l2);
    WaveFunction b1 = bump_packet(g, -l2 / 2.0, cfg.num("branch_width"));
    WaveFunction b2 = bump_packet(g, +l2 / 2.0, cfg.num("branch_width"));
    WaveFunction two = superpose(cplx(1.0, 0.0), b1, std::exp(I * phi), b2, true);
    const long long n_max = cfg.integer("n_max");
    {
        CsvWriter csv(out / "harmonics.csv", {"n", "re", "im", "abs"});
        for (long long n = 1; n <= n_max; ++n) {
            const cplx v = mod_expect(two, spec2, n);
            csv.row({static_cast<double>(n), v.real(), v.imag(), std::abs(v)});
        }
    }
    const cplx a1 = mod_expect(two, spec2, 1);
    const double harmonic_err = std::abs(a1 - std::exp(I * phi) / 2.0);

    // localized packet: folded distribution and spread bound
    const double l1 = cfg.num("l_localized");
    ModularSpec spec1 = make_modular_spec(g, l1);
    WaveFunction loc = bump_packet(g, 0.0, cfg.num("localized_width"));
    FoldedDistribution folded =
        folded_distribution(loc, spec1, static_cast<std::size_t>(cfg.integer("n_bins")));
    double sup_dev = 0.0;
    {
        CsvWriter csv(out / "folded.csv", {"bin_lo", "bin_hi", "center", "mass"});
        const double uniform = 1.0 / static_cast<double>(folded.n_bins());
        for (std::size_t b = 0; b < folded.n_bins(); ++b) {
            csv.row({folded.edges[b], folded.edges[b + 1],
                     0.5 * (folded.edges[b] + folded.edges[b + 1]), folded.mass[b]});
            sup_dev = std::max(sup_dev, std::abs(folded.mass[b] - uniform));
        }
    }
    CompleteUncertaintyReport cu =
        complete_uncertainty_check(loc, spec1, static_cast<std::size_t>(n_max), 1e-10);
    SpreadBoundResult bound = spread_bound_check(loc, spec1);

    // equation of motion: residuals and a short trace
    const double dt_eom = cfg.num("dt_eom");
    EomScenario harm = harmonic_eom_scenario();
    EomResidualResult h1 = eom_residual(harm.state, harm.hamiltonian, harm.spec, dt_eom);
    EomResidualResult h2 = eom_residual(harm.state, harm.hamiltonian, harm.spec, dt_eom / 2.0);
    EomScenario barrier = barrier_eom_scenario();
    EomResidualResult r1 = eom_residual(barrier.state, barrier.hamiltonian, barrier.spec, dt_eom);
    EomResidualResult r2 =
        eom_residual(barrier.state, barrier.hamiltonian, barrier.spec, dt_eom / 2.0);
    {
        CsvWriter csv(out / "eom_trace.csv",
                      {"t", "re_mod", "im_mod", "re_commutator", "im_commutator"});
        WaveFunction s = harm.state;
        const double dt_trace = 1e-3;
        const std::size_t stride = 8, samples = 50;
        for (std::size_t i = 0; i < samples; ++i) {
            EomResidualResult at = eom_residual(s, harm.hamiltonian, harm.spec, dt_eom);
            const cplx m = mod_expect(s, harm.spec, 1);
            csv.row({static_cast<double>(i * stride) * dt_trace, m.real(), m.imag(),
                     at.commutator_expectation.real(), at.commutator_expectation.imag()});
            s = evolve(s, harm.hamiltonian, dt_trace, stride);
        }
    }

    // remote-potential contrast
    ContrastScenario contrast = remote_potential_scenario();
    ContrastResult cr = run_contrast(contrast, static_cast<std::size_t>(cfg.integer("n_particles")),
                                     static_cast<std::uint64_t>(cfg.integer("seed")));
    {
        CsvWriter csv(out / "classical_trace.csv",
                      {"t", "re_mod", "im_mod", "re_poisson_rate", "im_poisson_rate"});
        const auto& tr = cr.classical_trace;
        for (std::size_t i = 0; i < tr.times.size(); i += 10)
            csv.row({tr.times[i], tr.modular_phase[i].real(), tr.modular_phase[i].imag(),
                     tr.poisson_rate[i].real(), tr.poisson_rate[i].imag()});
    }

    const bool pass_harmonic = harmonic_err <= cfg.num("tol_harmonic");
    const bool pass_uniform = sup_dev <= cfg.num("tol_uniform") && cu.pass;
    const bool pass_eom = h1.residual <= cfg.num("tol_eom") && r1.residual <= cfg.num("tol_eom") &&
                          h1.residual / h2.residual >= 3.2 && h1.residual / h2.residual <= 4.8 &&
                          r1.residual / r2.residual >= 3.2 && r1.residual / r2.residual <= 4.8;
    const bool pass_contrast = cr.quantum_drift >= cfg.num("contrast_quantum_min") &&
                               cr.classical_drift <= cfg.num("contrast_classical_max");
    const bool pass_bound = bound.status == BoundStatus::satisfied;

    CommandResult res;
    res.report = {{"config", detail::config_echo(cfg)},
                  {"two_packet_harmonic_n1_re", a1.real()},
                  {"two_packet_harmonic_n1_im", a1.imag()},
                  {"two_packet_harmonic_error", harmonic_err},
                  {"folded_sup_deviation", sup_dev},
                  {"complete_uncertainty_max_abs", cu.max_abs},
                  {"spread_delta_p", bound.delta_p},
                  {"spread_bound", bound.bound},
                  {"eom_residual_harmonic", h1.residual},
                  {"eom_residual_harmonic_half_dt", h2.residual},
                  {"eom_residual_barrier", r1.residual},
                  {"eom_residual_barrier_half_dt", r2.residual},
                  {"eom_barrier_drift_rate", std::abs(r1.time_derivative)},
                  {"contrast_quantum_drift", cr.quantum_drift},
                  {"contrast_classical_drift", cr.classical_drift},
                  {"pass_harmonic", pass_harmonic},
                  {"pass_uniform", pass_uniform},
                  {"pass_eom", pass_eom},
                  {"pass_contrast", pass_contrast},
                  {"pass_spread_bound", pass_bound}};
    res.exit_code =
        (pass_harmonic && pass_uniform && pass_eom && pass_contrast && pass_bound) ? 0 : 1;
    write_json(out / "modular_report.json", res.report);
    return res;
}

// --- weak-ensemble ---------------------------------------------------------------

inline Schema weak_ensemble_schema() {
    return {{"out", default_out_dir()},
            {"seed", "42"},
            {"threads", "0"},
            {"n_points", "2048"},
            {"x_min", "-40"},
            {"x_max", "40"},
            {"hbar", "1"},
            {"mass", "1"},
            {"sigma", "2"},
            {"l", "20"},
            {"p0", "2.5"},
            {"phi", "1.0"},
            {"envelope", "gaussian"},
            {"phase_on_right", "true"},
            {"sigma_q", "1"},
            {"g_over_sigma_q", "0.1"},
            {"m_trials", "200000"},
            {"windows_per_fringe", "16"},
            {"span_sigmas", "2"},
            {"pointer_points", "4097"},
            {"tol_rate", "0.005"},
            {"chi2_lo", "0.5"},
            {"chi2_hi", "2.0"},
            {"tol_phi", "0.05"}};
}

inline CommandResult cmd_weak_ensemble(const RunConfig& cfg) {
    const std::filesystem::path out = cfg.str("out");
    ensure_dir(out);
    Grid g = detail::grid_from(cfg);
    Experiment ex = build_experiment(g, detail::experiment_from(cfg));
    TwoStateVector tsv = make_tsv(ex.pre_T, ex.post_T);

    PointerModel model;
    model.sigma_q = cfg.num("sigma_q");
    model.g = cfg.num("g_over_sigma_q") * model.sigma_q;
    model.n_q = static_cast<std::size_t>(cfg.integer("pointer_points"));

    const double fringe = detail::pi * g.hbar / ex.spec.p0;
    EnsembleConfig ens;
    ens.trials_per_window = static_cast<std::size_t>(cfg.integer("m_trials"));
    ens.windows =
        make_windows(cfg.num("span_sigmas") * ex.sigma_T, fringe / cfg.num("windows_per_fringe"));
    ens.seed = static_cast<std::uint64_t>(cfg.integer("seed"));

    EnsembleResult result = run_ensemble(tsv, model, ens, detail::resolve_threads(cfg));

    // envelope mass per window, for normalization of the fit
    std::vector<double> xs, h, weights;
    double chi2 = 0.0;
    std::size_t chi_n = 0;
    json per_window = json::array();
    {
        CsvWriter csv(out / "histogram.csv",
                      {"window_lo", "window_hi", "center", "trials", "selected", "mean_reading",
                       "standard_error", "reference_mean", "exact_mean"});
        for (const auto& ws : result.windows) {
            double env_mass = 0.0;
            for (std::size_t j = 0; j < g.n; ++j) {
                const double x = g.x(j);
                if (x >= ws.window.lo && x < ws.window.hi) env_mass += ex.envelope_T[j] * g.dx();
            }
            csv.row({ws.window.lo, ws.window.hi, ws.window.center(),
                     static_cast<double>(ws.trials), static_cast<double>(ws.selected),
                     ws.mean_reading, ws.standard_error, ws.reference_mean, ws.mean_exact});
            if (ws.standard_error > 0.0 && env_mass > 0.0) {
                xs.push_back(ws.window.center());
                h.push_back(ws.mean_reading / (model.g * env_mass));
                const double w = model.g * env_mass / ws.standard_error;
                weights.push_back(w * w);
                chi2 += std::pow((ws.mean_reading - ws.reference_mean) / ws.standard_error, 2.0);
                ++chi_n;
            }
            per_window.push_back({{"center", ws.window.center()},
                                  {"selected", ws.selected},
                                  {"mean_reading", ws.mean_reading},
                                  {"standard_error", ws.standard_error},
                                  {"reference_mean", ws.reference_mean}});
        }
    }
    const double chi2_dof = chi_n ? chi2 / static_cast<double>(chi_n) : 0.0;
    FringeShift fit = estimate_fringe_shift(xs, h, weights, ex.spec.p0, g.hbar);
    const double phi_err = std::abs(detail::wrap_angle(fit.phi - ex.spec.phi));

    const bool pass_rate = std::abs(result.selection_rate - 0.5) <= cfg.num("tol_rate");
    const bool pass_chi2 = chi2_dof >= cfg.num("chi2_lo") && chi2_dof <= cfg.num("chi2_hi");
    const bool pass_phi = phi_err <= cfg.num("tol_phi");

    CommandResult res;
    res.report = {{"config", detail::config_echo(cfg)},
                  {"windows", per_window},
                  {"n_windows", result.windows.size()},
                  {"seed", result.seed},
                  {"selection_rate", result.selection_rate},
                  {"chi2_per_dof", chi2_dof},
                  {"recovered_phi", fit.phi},
                  {"recovered_phi_error", phi_err},
                  {"recovered_delta", fit.delta},
                  {"recovered_delta_geometric", fit.delta_geometric},
                  {"post_selection_probability_exact", ex.post_selection_probability},
                  {"pass_rate", pass_rate},
                  {"pass_chi2", pass_chi2},
                  {"pass_phi", pass_phi}};
    res.exit_code = (pass_rate && pass_chi2 && pass_phi) ? 0 : 1;
    write_json(out / "run_record.json", res.report);
    return res;
}

// --- detops ----------------------------------------------------------------------

inline Schema detops_schema() {
    return {{"out", default_out_dir()}, {"seed", "42"},      {"threads", "0"},
            {"dims", "2,3,4,5,6"},      {"states_per_dim", "100"},
            {"l", "16"},                {"n_points", "1024"}, {"hbar", "1"},
            {"alphas", "16"},           {"tol_eq1", "1e-10"}, {"tol_eq2", "1e-10"},
            {"tol_sigma", "1e-8"},      {"tol_eq14", "1e-6"}, {"tol_anticomm", "1e-10"}};
}

inline CommandResult cmd_detops(const RunConfig& cfg) {
    const std::filesystem::path out = cfg.str("out");
    ensure_dir(out);
    const std::uint64_t seed = static_cast<std::uint64_t>(cfg.integer("seed"));

    // finite-dimensional sets
    std::vector<std::size_t> dims;
    {
        std::stringstream ss(cfg.str("dims"));
        std::string tok;
        while (std::getline(ss, tok, ',')) dims.push_back(std::stoul(tok));
    }
    const int per_dim = static_cast<int>(cfg.integer("states_per_dim"));
    bool pass_sets = true;
    json set_reports = json::array();
    for (std::size_t d : dims) {
        double worst_eq1 = 0.0, worst_eq2 = 0.0;
        std::size_t count = 0;
        auto rng = make_stream(seed, d);
        for (int t = 0; t < per_dim; ++t) {
            DeterministicSet set = deterministic_basis(random_finite_state(d, rng));
            count = set.count();
            worst_eq1 = std::max(worst_eq1, eigen_relation_residual(set));
            worst_eq2 = std::max(worst_eq2, commutator_residual(set));
        }
        const bool ok = count == (d - 1) * (d - 1) + 1 && worst_eq1 <= cfg.num("tol_eq1") &&
                        worst_eq2 <= cfg.num("tol_eq2");
        pass_sets = pass_sets && ok;
        set_reports.push_back({{"dim", d},
                               {"count", count},
                               {"max_eigen_relation_residual", worst_eq1},
                               {"max_commutator_residual", worst_eq2},
                               {"pass", ok}});
    }

    // sigma trio on its 2L box
    const double L = cfg.num("l");
    Grid g = make_grid(static_cast<std::size_t>(cfg.integer("n_points")), -L, L, cfg.num("hbar"));
    SigmaTrio trio = sigma_trio(g, L);
    double anticomm = 0.0;
    {
        LinearOperator c = LinearOperator::sum({{cplx(0.5, 0.0), LinearOperator::shift(trio.steps)},
                                                {cplx(0.5, 0.0), LinearOperator::shift(-trio.steps)}},
                                               true);
        auto rng = make_stream(seed, 999);
        for (int t = 0; t < 6; ++t) {
            WaveFunction psi = random_state(g, rng);
            WaveFunction anti = superpose(cplx(1.0, 0.0), c.apply(trio.sigma3.apply(psi)),
                                          cplx(1.0, 0.0), trio.sigma3.apply(c.apply(psi)), false);
            anticomm = std::max(anticomm, std::sqrt(norm2(anti)));
        }
    }
    const cplx I(0.0, 1.0);
    auto comm_res = [&](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b,
                        const Eigen::Matrix2cd& c) {
        return (Eigen::Matrix2cd(a * b - b * a) - 2.0 * I * c).cwiseAbs().maxCoeff();
    };
    const double sigma_res = std::max({comm_res(trio.r1, trio.r2, trio.r3),
                                       comm_res(trio.r2, trio.r3, trio.r1),
                                       comm_res(trio.r3, trio.r1, trio.r2)});

    const int n_alpha = static_cast<int>(cfg.integer("alphas"));
    double worst_alpha = 0.0;
    {
        CsvWriter csv(out / "alpha_sweep.csv", {"alpha", "residual"});
        for (int i = 0; i < n_alpha; ++i) {
            const double alpha = 2.0 * detail::pi * i / n_alpha;
            const double r = phase_deterministic_check(g, L, alpha);
            worst_alpha = std::max(worst_alpha, r);
            csv.row({alpha, r});
        }
    }

    const bool pass_sigma = sigma_res <= cfg.num("tol_sigma");
    const bool pass_anticomm = anticomm <= cfg.num("tol_anticomm");
    const bool pass_alpha = worst_alpha <= cfg.num("tol_eq14");

    CommandResult res;
    res.report = {{"config", detail::config_echo(cfg)},
                  {"sets", set_reports},
                  {"sigma_commutator_residual", sigma_res},
                  {"anticommutation_defect", anticomm},
                  {"alpha_sweep_max_residual", worst_alpha},
                  {"pass_sets", pass_sets},
                  {"pass_sigma", pass_sigma},
                  {"pass_anticommutation", pass_anticomm},
                  {"pass_alpha_sweep", pass_alpha}};
    res.exit_code = (pass_sets && pass_sigma && pass_anticomm && pass_alpha) ? 0 : 1;
    write_json(out / "detops_report.json", res.report);
    return res;
}

// --- weak-value ------------------------------------------------------------------

inline Schema weak_value_schema() {
    return {{"out", default_out_dir()}, {"seed", "42"}, {"threads", "0"},
            {"pre", ""},                {"post", ""},   {"op", "identity"},
            {"hbar", "1"}};
}

inline CommandResult cmd_weak_value(const RunConfig& cfg) {
    const std::filesystem::path out = cfg.str("out");
    ensure_dir(out);
    if (cfg.str("pre").empty() || cfg.str("post").empty())
        throw std::invalid_argument("weak-value: 'pre' and 'post' state files are required");
    WaveFunction pre = load_state_csv(cfg.str("pre"), cfg.num("hbar"));
    WaveFunction post = load_state_csv(cfg.str("post"), cfg.num("hbar"));
    TwoStateVector tsv = make_tsv(std::move(pre), std::move(post));

    const std::string op_spec = cfg.str("op");
    cplx value;
    if (op_spec == "identity") {
        value = weak_value(tsv, LinearOperator::identity());
    } else if (op_spec == "position" || op_spec == "x") {
        value = weak_value(tsv, LinearOperator::position(tsv.pre.grid));
    } else if (op_spec == "momentum" || op_spec == "p") {
        value = weak_value(tsv, LinearOperator::momentum(tsv.pre.grid));
    } else if (op_spec.rfind("shift:", 0) == 0) {
        value = weak_value(tsv, LinearOperator::shift(std::stoll(op_spec.substr(6))));
    } else if (op_spec.rfind("window:", 0) == 0) {
        const auto rest = op_spec.substr(7);
        const auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("weak-value: window op needs 'window:lo:hi'");
        PositionWindow w{std::stod(rest.substr(0, colon)), std::stod(rest.substr(colon + 1))};
        value = window_amplitude(tsv, w) / tsv.overlap;
    } else {
        throw std::invalid_argument("weak-value: unknown operator spec '" + op_spec + "'");
    }

    CommandResult res;
    res.report = {{"config", detail::config_echo(cfg)},
                  {"op", op_spec},
                  {"weak_value_re", value.real()},
                  {"weak_value_im", value.imag()},
                  {"overlap_re", tsv.overlap.real()},
                  {"overlap_im", tsv.overlap.imag()}};
    write_json(out / "weak_value.json", res.report);
    return res;
}

// --- dispatch ----------------------------------------------------------------------

inline Schema schema_for(const std::string& command) {
    if (command == "interfere") return interfere_schema();
    if (command == "modular") return modular_schema();
    if (command == "weak-ensemble") return weak_ensemble_schema();
    if (command == "detops") return detops_schema();
    if (command == "weak-value") return weak_value_schema();
    throw std::invalid_argument("unknown command: " + command);
}

inline CommandResult run_command(const std::string& command, const RunConfig& cfg) {
    try {
        if (command == "interfere") return cmd_interfere(cfg);
        if (command == "modular") return cmd_modular(cfg);
        if (command == "weak-ensemble") return cmd_weak_ensemble(cfg);
        if (command == "detops") return cmd_detops(cfg);
        if (command == "weak-value") return cmd_weak_value(cfg);
        throw std::invalid_argument("unknown command: " + command);
    } catch (const std::exception& e) {
        CommandResult res;
        res.exit_code = 2;
        res.report = {{"error", {{"command", command}, {"message", e.what()}}}};
        try {
            auto it = cfg.values.find("out");
            if (it != cfg.values.end()) {
                ensure_dir(it->second);
                write_json(std::filesystem::path(it->second) / "error.json", res.report);
            }
        } catch (...) {
        }
        return res;
    }
}

}  // namespace modqm

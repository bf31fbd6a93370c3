// kedmd command-line driver.
//
//   kedmd bounds-table [--c1 0.5] [--k-inf 1] [--n 10 50 ...] [--format csv|markdown] [--out DIR]
//   kedmd simulate     [common flags] [--train-size N] [--realizations R]
//   kedmd sweep        [common flags] [--alpha a1 a2 ...]
//   kedmd fit          ERRORS_CSV [--delta D] [--c1 C] [--out DIR]
//
// Exit codes: 0 success, 1 input error, 2 numerical error, 3 I/O error.

#include "kedmd/bounds.hpp"
#include "kedmd/errors.hpp"
#include "kedmd/harness.hpp"
#include "kedmd/koopman.hpp"
#include "kedmd/trajectory.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace kedmd;

namespace {

struct CommonFlags {
    std::string config;
    std::uint64_t seed = 42;
    std::string out = "results";
    std::string system;
    double beta = 0, gamma = 0, sigma = 0, nu = 0, ell = 0, delta = 0, ridge = 0;
    std::vector<double> alpha;
    std::vector<std::int64_t> n_sweep;
    int repeats = 0, realizations = 0, horizon = 0;

    CLI::Option* out_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* repeats_opt = nullptr;
    CLI::Option* realizations_opt = nullptr;
    CLI::Option* horizon_opt = nullptr;
    CLI::Option* beta_opt = nullptr;
    CLI::Option* gamma_opt = nullptr;
    CLI::Option* sigma_opt = nullptr;
    CLI::Option* nu_opt = nullptr;
    CLI::Option* ell_opt = nullptr;
    CLI::Option* delta_opt = nullptr;
    CLI::Option* ridge_opt = nullptr;

    void attach(CLI::App& app) {
        app.add_option("--config", config, "Flat YAML experiment config");
        seed_opt = app.add_option("--seed", seed, "Root RNG seed (default 42)");
        out_opt = app.add_option("--out", out, "Output directory")->capture_default_str();
        app.add_option("--system", system, "linear | sir | multiplicative | identity");
        app.add_option("--alpha", alpha, "Linear-system coupling alpha (several values: one run each)");
        beta_opt = app.add_option("--beta", beta, "SIR transmission rate");
        gamma_opt = app.add_option("--gamma", gamma, "SIR recovery rate");
        sigma_opt = app.add_option("--sigma", sigma, "Additive noise standard deviation");
        nu_opt = app.add_option("--nu", nu, "Matérn smoothness (0.5, 1.5, 2.5)");
        ell_opt = app.add_option("--ell", ell, "Kernel length scale");
        delta_opt = app.add_option("--delta", delta, "Failure parameter for the bound curve");
        ridge_opt = app.add_option("--ridge", ridge, "Gram ridge (default 1e-10 * N)");
        app.add_option("--n-sweep", n_sweep, "Training sizes");
        repeats_opt = app.add_option("--repeats", repeats, "Repeats per training size");
        realizations_opt = app.add_option("--realizations", realizations, "Trajectory realizations");
        horizon_opt = app.add_option("--horizon", horizon, "Time horizon T");
    }

    /// One config per requested alpha (a single config when --alpha is not repeated).
    [[nodiscard]] std::vector<ExperimentConfig> resolve() const {
        ExperimentConfig base;
        if (!config.empty()) {
            base = load_config(config);
            if (!system.empty() && parse_system_kind(system) != base.system.kind) {
                throw InputError(fmt::format("--system {} conflicts with system '{}' in {}", system,
                                             to_string(base.system.kind), config));
            }
        } else {
            base = default_config(system.empty() ? SystemKind::Linear : parse_system_kind(system));
        }
        if (seed_opt->count()) base.seed = seed;
        if (beta_opt->count()) base.system.beta = beta;
        if (gamma_opt->count()) base.system.gamma = gamma;
        if (sigma_opt->count()) base.system.sigma = sigma;
        if (nu_opt->count()) base.nu = nu;
        if (ell_opt->count()) base.ell = ell;
        if (delta_opt->count()) base.delta = delta;
        if (ridge_opt->count()) base.ridge = ridge;
        if (!n_sweep.empty()) base.n_sweep = n_sweep;
        if (repeats_opt->count()) base.n_repeats = repeats;
        if (realizations_opt->count()) base.n_realizations = realizations;
        if (horizon_opt->count()) base.horizon = horizon;

        std::vector<ExperimentConfig> out_cfgs;
        if (alpha.empty()) {
            out_cfgs.push_back(base);
        } else {
            for (double a : alpha) {
                ExperimentConfig c = base;
                c.system.alpha = a;
                out_cfgs.push_back(c);
            }
        }
        for (const auto& c : out_cfgs) c.validate();
        return out_cfgs;
    }

    [[nodiscard]] fs::path out_dir(const ExperimentConfig& cfg, std::size_t runs) const {
        if (runs == 1) return out;
        return fs::path(out) / fmt::format("alpha_{}", cfg.system.alpha);
    }
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    os << text;
    if (!os) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
}

int run_bounds_table(double c1, double k_inf, const std::vector<std::int64_t>& ns, const std::string& format,
                     const std::string& out) {
    const auto rows = bounds::admissibility_table(ns, c1, k_inf);
    std::ostringstream csv;
    csv << "N,delta_adm,success_percent,c_tilde,valid_probability\n";
    for (const auto& r : rows) {
        csv << fmt::format("{},{:.6f},{:.4f},{:.4f},{}\n", r.n, r.delta_adm, r.success_percent, r.c_tilde,
                           r.valid_probability ? 1 : 0);
    }
    if (format == "markdown") {
        std::cout << "| N | (1 - delta_adm)^2 * 100% | C_tilde(delta_adm) |\n|---|---|---|\n";
        for (const auto& r : rows) {
            std::cout << fmt::format("| {} | {:.2f}%{} | {:.2f} |\n", r.n, r.success_percent,
                                     r.valid_probability ? "" : " (delta_adm > 1)", r.c_tilde);
        }
    } else {
        std::cout << csv.str();
    }
    if (!out.empty()) {
        ensure_dir(out);
        write_text(fs::path(out) / "bounds_table.csv", csv.str());
    }
    return 0;
}

int run_simulate(const CommonFlags& flags, std::int64_t train_size) {
    const auto cfgs = flags.resolve();
    for (const auto& cfg : cfgs) {
        const fs::path dir = flags.out_dir(cfg, cfgs.size());
        ensure_dir(dir);
        const auto system = cfg.system.build();
        const RandomStream root(cfg.seed);
        const TrajectoryConfig traj = cfg.trajectory();

        std::ostringstream truth;
        write_bundle_csv(truth, simulate_true(*system, traj, root.child(StreamPurpose::TrueTrajectories)));
        write_text(dir / "trajectories_true.csv", truth.str());

        if (train_size > 0) {
            RandomStream sampling = root.child(StreamPurpose::Sampling);
            const DataSet data = sample_pairs(*system, static_cast<Eigen::Index>(train_size), sampling);
            const KoopmanModel model = KoopmanModel::fit(data, cfg.kernel(), cfg.ridge_for(train_size));
            const TrajectoryBundle predicted =
                predict_stochastic(model, *system, traj, root.child(StreamPurpose::Zeta));
            if (predicted.extrapolated) {
                std::cerr << "warning: predicted states left the bounding box of the training data\n";
            }
            std::ostringstream os;
            write_bundle_csv(os, predicted);
            write_text(dir / "trajectories_kedmd.csv", os.str());
            std::ostringstream model_dump;
            model.save(model_dump);
            write_text(dir / "model.txt", model_dump.str());
        }
        std::cout << "wrote " << dir.string() << '\n';
    }
    return 0;
}

int run_sweep_cmd(const CommonFlags& flags) {
    const auto cfgs = flags.resolve();
    for (const auto& cfg : cfgs) {
        const SweepResult result = run_sweep(cfg);
        const fs::path dir = flags.out_dir(cfg, cfgs.size());
        emit_results(result, dir);
        for (const auto& p : result.curve) {
            std::cout << fmt::format("N={:<6} mean_error={:.6e} std={:.3e} bound={:.6e}\n", p.n, p.mean_error,
                                     p.std_error, p.bound);
        }
        if (result.fit) std::cout << fmt::format("fit: A={:.6g} B={:.6g}\n", result.fit->A, result.fit->B);
        std::cout << "wrote " << dir.string() << '\n';
    }
    return 0;
}

int run_fit(const std::string& path, const CommonFlags& flags) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path));
    auto rows = read_errors_csv(in);
    const ExperimentConfig cfg = flags.resolve().front();
    const SweepResult result = summarize(cfg, std::move(rows));
    if (!result.fit) throw InputError("fit needs at least two distinct N with positive mean error");
    std::cout << "A,B\n" << fmt::format("{},{}\n", result.fit->A, result.fit->B);
    if (!flags.out_opt->count()) return 0;
    ensure_dir(flags.out);
    std::ostringstream os;
    write_fit_csv(os, result);
    write_text(fs::path(flags.out) / "fit.csv", os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernel EDMD for stochastic systems: bounds, simulation and error sweeps"};
    app.require_subcommand(1);

    auto* table = app.add_subcommand("bounds-table", "Admissible success probability and C_tilde versus N");
    double c1 = 0.5, k_inf = 1.0;
    std::vector<std::int64_t> table_ns{10, 50, 100, 200, 300};
    std::string format = "csv", table_out;
    table->add_option("--c1", c1, "Coercivity constant")->capture_default_str();
    table->add_option("--k-inf", k_inf, "Kernel sup-norm")->capture_default_str();
    table->add_option("--n", table_ns, "Sample sizes");
    table->add_option("--format", format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));
    table->add_option("--out", table_out, "Also write bounds_table.csv here");

    auto* simulate = app.add_subcommand("simulate", "True (and optionally kEDMD) trajectory bundles as CSV");
    CommonFlags sim_flags;
    sim_flags.attach(*simulate);
    std::int64_t train_size = 0;
    simulate->add_option("--train-size", train_size, "Fit a model on N samples and write predicted trajectories");

    auto* sweep = app.add_subcommand("sweep", "Trajectory error versus training size N");
    CommonFlags sweep_flags;
    sweep_flags.attach(*sweep);

    auto* fit = app.add_subcommand("fit", "Power-law fit A*N^B of an existing errors.csv");
    CommonFlags fit_flags;
    fit_flags.attach(*fit);
    std::string errors_path;
    fit->add_option("errors", errors_path, "errors.csv from a sweep")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*table) return run_bounds_table(c1, k_inf, table_ns, format, table_out);
        if (*simulate) return run_simulate(sim_flags, train_size);
        if (*sweep) return run_sweep_cmd(sweep_flags);
        if (*fit) return run_fit(errors_path, fit_flags);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

// gmix: Monte Carlo recovery experiments and threshold reports for
// Gaussian community-detection models.
#include <cstdint>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gmix/experiment.hpp"
#include "gmix/gaussmax.hpp"
#include "gmix/mle.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_path,
            std::optional<std::uint64_t> seed, int threads) {
    gmix::ExperimentConfig cfg = gmix::load_config(config_path);
    if (seed) cfg.seed = *seed;
    gmix::RunResult result = gmix::run_experiment(cfg, threads);
    std::ofstream out(out_path);
    if (!out) throw gmix::ConfigError("cannot open output file: " + out_path);
    out << result.csv;
    std::cout << result.summary.dump(2) << "\n";
    return 0;
}

int cmd_report(const std::string& config_path) {
    gmix::ExperimentConfig cfg = gmix::load_config(config_path);
    std::cout << gmix::report_experiment(cfg).dump(2) << "\n";
    return 0;
}

int cmd_gaussmax(long long n, double eps, long long trials) {
    gmix::GaussMaxMc mc = gmix::verify_gauss_max(n, eps, trials, {});
    nlohmann::json j{{"n_vars", mc.bound.n_vars},
                     {"epsilon", mc.bound.epsilon},
                     {"upper_level", mc.bound.upper_level},
                     {"lower_level", mc.bound.lower_level},
                     {"upper_prob_bound", mc.bound.upper_prob_bound},
                     {"lower_prob_bound", mc.bound.lower_prob_bound},
                     {"epn_satisfied", mc.bound.epn_satisfied},
                     {"trials", mc.trials},
                     {"upper_freq", mc.upper_freq},
                     {"lower_freq", mc.lower_freq}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian community-detection experiments"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    CLI::App* run = app.add_subcommand("run", "run a Monte Carlo experiment");
    run->add_option("--config", config_path, "JSON config path")->required();
    run->add_option("--out", out_path, "CSV output path")->required();
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--threads", threads, "worker thread count");

    std::string report_config;
    CLI::App* report =
        app.add_subcommand("report", "print threshold and impossibility report");
    report->add_option("--config", report_config, "JSON config path")->required();

    long long gm_n = 1000, gm_trials = 10000;
    double gm_eps = 0.5;
    CLI::App* gm = app.add_subcommand(
        "gaussmax", "Monte Carlo check of Gaussian max tail bounds");
    gm->add_option("--n", gm_n, "number of Gaussians")->required();
    gm->add_option("--eps", gm_eps, "tail parameter in (0,1)")->required();
    gm->add_option("--trials", gm_trials, "Monte Carlo trials")->required();

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(config_path, out_path, seed, threads);
        if (report->parsed()) return cmd_report(report_config);
        if (gm->parsed()) return cmd_gaussmax(gm_n, gm_eps, gm_trials);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    } catch (const gmix::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const gmix::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

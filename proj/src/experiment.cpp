#include "gmix/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "gmix/observation.hpp"
#include "gmix/thresholds.hpp"

namespace gmix {

std::vector<double> SweepSpec::points() const {
    if (steps < 1) throw ConfigError("sweep steps must be >= 1");
    if (!(from > 0.0) || !(to > 0.0))
        throw ConfigError("sweep bounds must be positive");
    std::vector<double> out;
    if (steps == 1) {
        out.push_back(from);
        return out;
    }
    for (int i = 0; i < steps; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(steps - 1);
        if (log_spacing)
            out.push_back(std::exp(std::log(from) +
                                   t * (std::log(to) - std::log(from))));
        else
            out.push_back(from + t * (to - from));
    }
    return out;
}

ExperimentConfig parse_config(const nlohmann::json& j) {
    try {
        ExperimentConfig cfg{
            model_from_json(j.at("model")),
            Assignment({1, 1}, 2),  // replaced below
        };
        if (j.contains("c")) cfg.model.c = j.at("c").get<double>();

        const nlohmann::json& truth = j.at("truth");
        if (truth.is_string()) {
            if (truth.get<std::string>() != "balanced-auto")
                throw ConfigError("truth must be a label array or \"balanced-auto\"");
            cfg.truth = balanced_assignment(cfg.model.n, cfg.model.k);
        } else {
            cfg.truth = assignment_from_json(truth, cfg.model.k);
        }
        if (cfg.truth.n() != cfg.model.n)
            throw ConfigError("truth length does not match the model's n");
        // community-noise lookups go through the true assignment
        if (cfg.model.noise.kind == NoiseKind::Community &&
            !cfg.model.noise.truth)
            cfg.model.noise.truth = cfg.truth;
        cfg.model.validate();

        if (j.contains("solver")) {
            std::string s = j.at("solver").get<std::string>();
            if (s == "hat") cfg.solver = SolverKind::Hat;
            else if (s == "check") cfg.solver = SolverKind::Check;
            else throw ConfigError("solver must be \"hat\" or \"check\"");
        }
        cfg.trials = j.value("trials", 1);
        if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
        cfg.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("sweep")) {
            const nlohmann::json& s = j.at("sweep");
            SweepSpec sw;
            sw.param = s.value("param", std::string("sigma_scale"));
            if (sw.param != "sigma_scale")
                throw ConfigError("only the sigma_scale sweep is supported");
            sw.from = s.at("from").get<double>();
            sw.to = s.at("to").get<double>();
            sw.steps = s.at("steps").get<int>();
            std::string spacing = s.value("spacing", std::string("linear"));
            if (spacing == "log") sw.log_spacing = true;
            else if (spacing != "linear")
                throw ConfigError("sweep spacing must be \"linear\" or \"log\"");
            sw.points();  // validates bounds
            cfg.sweep = sw;
        }
        cfg.epsilon = j.value("epsilon", 0.05);
        cfg.delta_param = j.value("delta_param", 0.1);
        if (j.contains("budget"))
            cfg.solve_opts.budget = j.at("budget").get<unsigned long long>();
        if (j.contains("tie_tol"))
            cfg.solve_opts.tie_tol = j.at("tie_tol").get<double>();
        cfg.source = j;
        return cfg;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

std::string config_hash(const nlohmann::json& j) {
    std::string dump = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : dump) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

WilsonInterval wilson_interval(long long successes, long long trials) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const double z = 1.959963984540054;  // 97.5% normal quantile
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

TrialRecord run_trial(const ModelSpec& model, const Assignment& truth,
                      SolverKind solver, const SolveOptions& opts,
                      std::uint64_t seed, int trial, double sweep_value) {
    RngSeed rs{seed, static_cast<std::uint64_t>(trial)};
    ObservationMatrix w = sample_noise(model, rs);
    ObservationMatrix k = observe(model, truth, w);
    MleResult r = solver == SolverKind::Hat
                      ? solve_hat(model, k, opts)
                      : solve_check(model, k, truth.community_sizes(), opts);
    TrialRecord rec;
    rec.sweep_value = sweep_value;
    rec.trial = trial;
    rec.recovered = !r.tie && recovered(r, truth, model);
    rec.margin = r.margin;
    rec.f_best = r.objective;
    rec.f_truth = objective(model, k, truth);
    return rec;
}

nlohmann::json threshold_report_json(const ModelSpec& model,
                                     const Assignment& truth, double epsilon,
                                     double delta_param) {
    try {
        ThresholdReport r = recovery_report(model, truth.community_sizes(),
                                            epsilon, delta_param);
        nlohmann::json j;
        to_json(j, r);
        return j;
    } catch (const std::exception&) {
        return nullptr;
    }
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config, int threads) {
    if (threads < 1) threads = 1;
    std::vector<double> points =
        config.sweep ? config.sweep->points() : std::vector<double>{1.0};

    std::ostringstream csv;
    csv << "sweep_param,sweep_value,trial,recovered,margin,f_best,f_truth,"
           "elapsed_ms\n";
    const std::string param =
        config.sweep ? config.sweep->param : std::string("sigma_scale");

    nlohmann::json summary_points = nlohmann::json::array();
    for (double value : points) {
        ModelSpec scaled = config.model.scaled_noise(value);
        std::vector<TrialRecord> records(
            static_cast<std::size_t>(config.trials));
        auto started = std::chrono::steady_clock::now();
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;) {
                int t = next.fetch_add(1);
                if (t >= config.trials) return;
                try {
                    records[static_cast<std::size_t>(t)] =
                        run_trial(scaled, config.truth, config.solver,
                                  config.solve_opts, config.seed, t, value);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        };
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
            for (std::thread& th : pool) th.join();
        }
        if (failure) std::rethrow_exception(failure);
        auto elapsed = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - started)
                           .count();

        long long hits = 0;
        for (const TrialRecord& r : records) {
            hits += r.recovered ? 1 : 0;
            csv << param << ',' << fmt(r.sweep_value) << ',' << r.trial << ','
                << (r.recovered ? 1 : 0) << ',' << fmt(r.margin) << ','
                << fmt(r.f_best) << ',' << fmt(r.f_truth) << ",0\n";
        }
        WilsonInterval ci = wilson_interval(hits, config.trials);
        nlohmann::json point{
            {"value", value},
            {"rate", static_cast<double>(hits) /
                         static_cast<double>(config.trials)},
            {"ci_low", ci.low},
            {"ci_high", ci.high},
            {"threshold_report",
             threshold_report_json(scaled, config.truth, config.epsilon,
                                   config.delta_param)},
            {"mean_trial_ms", elapsed / static_cast<double>(config.trials)}};
        summary_points.push_back(point);
    }

    RunResult result;
    result.csv = csv.str();
    result.summary = nlohmann::json{{"config_hash", config_hash(config.source)},
                                    {"points", summary_points}};
    return result;
}

nlohmann::json report_experiment(const ExperimentConfig& config) {
    const ModelSpec& model = config.model;
    const Assignment& y = config.truth;
    nlohmann::json out;
    out["config_hash"] = config_hash(config.source);
    out["threshold_report"] =
        threshold_report_json(model, y, config.epsilon, config.delta_param);
    auto [r0, r1] = min_single_move_pair(model, y);
    std::vector<int> h0 = default_h_set(y, r0);
    std::vector<int> h1 = default_h_set(y, r1);
    out["min_move_pair"] = {r0, r1};
    out["h_set"] = h0;
    out["impossibility_margin_hat"] =
        impossibility_margin_hat(model, y, h0, config.delta_param);
    out["impossibility_margin_check"] =
        impossibility_margin_check(model, y, h0, h1, config.delta_param);
    return out;
}

}  // namespace gmix

// gabp — GA-optimized BP network volatility forecasting pipeline.
//
// Subcommands:
//   synth     write a synthetic GARCH(1,1) market CSV
//   stats     descriptive statistics + volatility-clustering diagnostics
//   train     full pipeline: ingest -> features -> GA-BP -> metrics
//   predict   apply a saved model.json to a data CSV
//   evaluate  score a predictions CSV and emit the error series
//
// Exit codes: 0 success, 2 input error, 3 numeric failure.

#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gabp/csv.hpp"
#include "gabp/error.hpp"
#include "gabp/pipeline.hpp"
#include "gabp/stats.hpp"

namespace {

Eigen::VectorXd read_series(const std::string& path, const std::string& column) {
    const gabp::csv::Doc doc = gabp::csv::read(path);
    int col = -1;
    for (std::size_t i = 0; i < doc.header.size(); ++i)
        if (doc.header[i] == column) col = static_cast<int>(i);
    if (col < 0)
        gabp::fail(gabp::Errc::SchemaMismatch, "stats: no column '" + column + "' in " + path);
    Eigen::VectorXd x(static_cast<Eigen::Index>(doc.rows.size()));
    for (std::size_t i = 0; i < doc.rows.size(); ++i) {
        double v;
        if (doc.rows[i].size() <= static_cast<std::size_t>(col) ||
            !gabp::csv::parse_double(gabp::csv::trim(doc.rows[i][static_cast<std::size_t>(col)]),
                                     v))
            gabp::fail(gabp::Errc::MalformedRow,
                       "stats: bad or empty value at line " + std::to_string(i + 2) +
                           " of " + path);
        x[static_cast<Eigen::Index>(i)] = v;
    }
    return x;
}

void print_summary(const gabp::stats::SeriesSummary& s, bool as_json) {
    if (as_json) {
        nlohmann::json j;
        j["n_obs"] = s.n_obs;
        j["mean"] = s.mean;
        j["max"] = s.max;
        j["min"] = s.min;
        j["std_dev"] = s.std_dev;
        j["skewness"] = s.skewness;
        j["excess_kurtosis"] = s.excess_kurtosis;
        j["q2_stat"] = s.q2_stat;
        j["arch_stat"] = s.arch_stat;
        j["lag"] = s.lag;
        std::cout << j.dump(2) << '\n';
        return;
    }
    using gabp::csv::format;
    const auto row = [](const std::string& k, const std::string& v) {
        std::cout << k;
        for (std::size_t i = k.size(); i < 22; ++i) std::cout << ' ';
        std::cout << v << '\n';
    };
    row("Obs", std::to_string(s.n_obs));
    row("Mean", format(s.mean));
    row("Max", format(s.max));
    row("Min", format(s.min));
    row("S.D.", format(s.std_dev));
    row("Skewness", format(s.skewness));
    row("Excess Kurtosis", format(s.excess_kurtosis));
    row("Q2(" + std::to_string(s.lag) + ")", format(s.q2_stat));
    row("ARCH(" + std::to_string(s.lag) + ")", format(s.arch_stat));
    const double crit = gabp::stats::chi2_critical(s.lag, 0.95);
    row("chi2 95% crit", format(crit));
}

void print_report(const gabp::metrics::EvalReport& r, bool as_json) {
    if (as_json) {
        nlohmann::json j;
        j["n"] = r.n;
        j["mfe"] = r.mfe;
        j["rmse"] = r.rmse;
        j["mae"] = r.mae;
        j["mse"] = r.mse;
        j["mape"] = r.mape.has_value() ? nlohmann::json(*r.mape) : nlohmann::json(nullptr);
        std::cout << j.dump(2) << '\n';
        return;
    }
    using gabp::csv::format;
    std::cout << "n     " << r.n << '\n'
              << "MFE   " << format(r.mfe) << '\n'
              << "RMSE  " << format(r.rmse) << '\n'
              << "MAE   " << format(r.mae) << '\n'
              << "MAPE  " << (r.mape ? format(*r.mape) : std::string("undefined")) << '\n'
              << "MSE   " << format(r.mse) << " (RMSE^2, derived)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GA-BP volatility forecasting toolkit"};
    app.require_subcommand(1);

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic GARCH market CSV");
    std::string synth_out = "data.csv";
    gabp::synth::GarchParams gp;
    std::int64_t synth_rows = gp.n;
    synth_cmd->add_option("--out", synth_out, "Output CSV path");
    synth_cmd->add_option("--seed", gp.seed, "RNG seed");
    synth_cmd->add_option("--rows", synth_rows, "Number of trading days");
    synth_cmd->add_option("--omega", gp.omega, "GARCH omega");
    synth_cmd->add_option("--alpha", gp.alpha, "GARCH alpha");
    synth_cmd->add_option("--beta", gp.beta, "GARCH beta");
    synth_cmd->add_option("--mu", gp.mu, "Return drift");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Summarize a series (log returns by default)");
    std::string stats_data, stats_column = "close";
    int stats_lag = 10;
    bool stats_raw = false, stats_json = false;
    stats_cmd->add_option("--data", stats_data, "Input CSV")->required();
    stats_cmd->add_option("--column", stats_column, "Column to analyze");
    stats_cmd->add_option("--lag", stats_lag, "Diagnostic lag");
    stats_cmd->add_flag("--raw", stats_raw, "Analyze the raw column, not its log returns");
    stats_cmd->add_flag("--json", stats_json, "JSON output");

    // train
    auto* train_cmd = app.add_subcommand("train", "Run the GA-BP training pipeline");
    std::string train_data, train_config, train_out_dir, mutation_variant, dump_dataset;
    std::uint64_t train_seed = 0;
    int workers = 0;
    bool skip_ga = false, no_svg = false;
    auto* opt_data = train_cmd->add_option("--data", train_data, "Input CSV");
    train_cmd->add_option("--config", train_config, "JSON config file");
    auto* opt_seed = train_cmd->add_option("--seed", train_seed, "Master RNG seed");
    auto* opt_out = train_cmd->add_option("--out-dir", train_out_dir, "Artifact directory");
    auto* opt_workers =
        train_cmd->add_option("--workers", workers, "Fitness evaluation threads");
    auto* opt_skip = train_cmd->add_flag("--skip-ga", skip_ga, "Plain-BP baseline (no GA)");
    auto* opt_mut = train_cmd->add_option("--mutation-variant", mutation_variant,
                                          "Mutation formula: paper|standard");
    auto* opt_dump =
        train_cmd->add_option("--dump-dataset", dump_dataset, "Also write the dataset CSV");
    auto* opt_nosvg = train_cmd->add_flag("--no-svg", no_svg, "Skip SVG chart emission");

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "Apply a saved model to a data CSV");
    std::string model_path, predict_data, predict_out = "predictions.csv";
    predict_cmd->add_option("--model", model_path, "model.json path")->required();
    predict_cmd->add_option("--data", predict_data, "Input CSV")->required();
    predict_cmd->add_option("--out", predict_out, "Output CSV path");

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "Score a predictions CSV");
    std::string eval_pred, eval_out_dir;
    bool eval_json = false;
    eval_cmd->add_option("--predictions", eval_pred, "predictions.csv path")->required();
    auto* opt_eval_out =
        eval_cmd->add_option("--out-dir", eval_out_dir, "Directory for errors.csv");
    eval_cmd->add_flag("--json", eval_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad flags are input errors
    }

    try {
        if (*synth_cmd) {
            gp.n = synth_rows;
            gabp::pipeline::write_synth_csv(synth_out, gp);
            std::cout << "wrote " << synth_out << " (" << gp.n << " rows, seed " << gp.seed
                      << ")\n";
        } else if (*stats_cmd) {
            Eigen::VectorXd x = read_series(stats_data, stats_column);
            if (!stats_raw) x = gabp::features::log_returns(x);
            print_summary(gabp::stats::summarize(x, stats_lag), stats_json);
        } else if (*train_cmd) {
            gabp::pipeline::RunConfig cfg;
            if (!train_config.empty()) cfg = gabp::pipeline::load_config(train_config);
            if (opt_data->count()) cfg.data = train_data;
            if (opt_seed->count()) cfg.seed = train_seed;
            if (opt_out->count()) cfg.out_dir = train_out_dir;
            if (opt_workers->count()) cfg.ga.workers = workers;
            if (opt_skip->count()) cfg.skip_ga = skip_ga;
            if (opt_mut->count())
                cfg.ga.mutation_variant = gabp::evolve::mutation_variant_from_name(mutation_variant);
            if (opt_dump->count()) cfg.dump_dataset = dump_dataset;
            if (opt_nosvg->count()) cfg.emit_svg = !no_svg;
            if (cfg.data.empty())
                gabp::fail(gabp::Errc::BadConfig, "train: no --data file given");

            const auto outputs = gabp::pipeline::cmd_train(cfg);
            std::cout << "artifacts in " << cfg.out_dir.string() << '\n';
            print_report(outputs.eval, false);
        } else if (*predict_cmd) {
            gabp::pipeline::cmd_predict(model_path, predict_data, predict_out);
            std::cout << "wrote " << predict_out << '\n';
        } else if (*eval_cmd) {
            std::optional<std::filesystem::path> out_dir;
            if (opt_eval_out->count()) out_dir = eval_out_dir;
            print_report(gabp::pipeline::cmd_evaluate(eval_pred, out_dir), eval_json);
        }
    } catch (const gabp::Error& e) {
        std::cerr << "error [" << gabp::errc_name(e.code()) << "]: " << e.what() << '\n';
        return gabp::is_input_error(e.code()) ? 2 : 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

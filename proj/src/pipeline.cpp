#include "gabp/pipeline.hpp"

#include <fstream>

#include <json.hpp>

#include "gabp/csv.hpp"
#include "gabp/error.hpp"
#include "gabp/ingest.hpp"
#include "gabp/model_io.hpp"
#include "gabp/rng.hpp"
#include "gabp/svg.hpp"

namespace gabp::pipeline {

namespace {

using nlohmann::json;

void expect_keys(const json& j, std::initializer_list<const char*> allowed,
                 const std::string& origin) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (key == k) known = true;
        if (!known) fail(Errc::BadConfig, "config: unknown key '" + key + "' in " + origin);
    }
}

std::vector<std::string> schema_of(const features::FeatureColumns& c) {
    return {c.close, c.volume, c.sse50, c.bond3m, c.bond6m, c.fx};
}

ingest::PriceTable load_clean_table(const std::filesystem::path& data,
                                    const features::FeatureColumns& cols, double z_threshold) {
    const ingest::RawTable raw = ingest::load_csv(data, schema_of(cols));
    return ingest::repair_outliers(ingest::interpolate_missing(raw), z_threshold);
}

void write_fitness_trace(const std::filesystem::path& path, const evolve::GaRun& run) {
    std::ofstream out(path);
    if (!out) fail(Errc::BadConfig, "train: cannot write " + path.string());
    out << "generation,best_fitness\n";
    for (std::size_t g = 0; g < run.best_per_generation.size(); ++g)
        out << g << ',' << csv::format(run.best_per_generation[g]) << '\n';
}

void write_report(const std::filesystem::path& path, const metrics::EvalReport& r) {
    json j;
    j["n"] = r.n;
    j["mfe"] = r.mfe;
    j["rmse"] = r.rmse;
    j["mae"] = r.mae;
    j["mse"] = r.mse;
    if (r.mape.has_value())
        j["mape"] = *r.mape;
    else
        j["mape"] = nullptr;
    std::ofstream out(path);
    if (!out) fail(Errc::BadConfig, "train: cannot write " + path.string());
    out << j.dump(2) << '\n';
}

void write_errors_csv(const std::filesystem::path& path, const metrics::EvalReport& r) {
    std::ofstream out(path);
    if (!out) fail(Errc::BadConfig, "evaluate: cannot write " + path.string());
    out << "index,error,error_pct\n";
    for (Eigen::Index i = 0; i < r.n; ++i)
        out << i << ',' << csv::format(r.error[i]) << ',' << csv::format(r.error_pct[i])
            << '\n';
}

net::Network random_baseline_network(net::NetShape shape, net::Activation hidden,
                                     std::uint64_t seed) {
    rng::Engine e = rng::make_engine(rng::derive(seed, rng::stream::kBaselineInit));
    net::Network n = net::make_network(shape, hidden);
    const double s1 = 1.0 / std::sqrt(static_cast<double>(shape.inputs));
    const double s2 = 1.0 / std::sqrt(static_cast<double>(shape.hidden));
    for (Eigen::Index i = 0; i < shape.hidden; ++i)
        for (Eigen::Index j = 0; j < shape.inputs; ++j) n.w1(i, j) = rng::uniform(e, -s1, s1);
    for (Eigen::Index i = 0; i < shape.hidden; ++i) n.b1[i] = rng::uniform(e, -s1, s1);
    for (Eigen::Index i = 0; i < shape.outputs; ++i)
        for (Eigen::Index j = 0; j < shape.hidden; ++j) n.w2(i, j) = rng::uniform(e, -s2, s2);
    for (Eigen::Index i = 0; i < shape.outputs; ++i) n.b2[i] = rng::uniform(e, -s2, s2);
    return n;
}

} // namespace

void apply_config_json(RunConfig& cfg, const std::string& json_text, const std::string& origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(Errc::BadConfig, "config: " + origin + ": " + e.what());
    }
    try {
        expect_keys(j,
                    {"data", "out_dir", "seed", "columns", "vol_window", "train_frac",
                     "z_threshold", "network", "bp", "ga", "workers", "skip_ga", "svg"},
                    origin);
        if (j.contains("data")) cfg.data = j["data"].get<std::string>();
        if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("vol_window")) cfg.vol_window = j["vol_window"].get<int>();
        if (j.contains("train_frac")) cfg.train_frac = j["train_frac"].get<double>();
        if (j.contains("z_threshold")) cfg.z_threshold = j["z_threshold"].get<double>();
        if (j.contains("workers")) cfg.ga.workers = j["workers"].get<int>();
        if (j.contains("skip_ga")) cfg.skip_ga = j["skip_ga"].get<bool>();
        if (j.contains("svg")) cfg.emit_svg = j["svg"].get<bool>();
        if (j.contains("columns")) {
            const json& c = j["columns"];
            expect_keys(c, {"close", "volume", "sse50", "bond3m", "bond6m", "fx"},
                        origin + ".columns");
            if (c.contains("close")) cfg.columns.close = c["close"].get<std::string>();
            if (c.contains("volume")) cfg.columns.volume = c["volume"].get<std::string>();
            if (c.contains("sse50")) cfg.columns.sse50 = c["sse50"].get<std::string>();
            if (c.contains("bond3m")) cfg.columns.bond3m = c["bond3m"].get<std::string>();
            if (c.contains("bond6m")) cfg.columns.bond6m = c["bond6m"].get<std::string>();
            if (c.contains("fx")) cfg.columns.fx = c["fx"].get<std::string>();
        }
        if (j.contains("network")) {
            const json& n = j["network"];
            expect_keys(n, {"hidden", "hidden_activation"}, origin + ".network");
            if (n.contains("hidden")) cfg.hidden = n["hidden"].get<Eigen::Index>();
            if (n.contains("hidden_activation"))
                cfg.hidden_activation =
                    net::activation_from_name(n["hidden_activation"].get<std::string>());
        }
        if (j.contains("bp")) {
            const json& b = j["bp"];
            expect_keys(b, {"learning_rate", "epochs"}, origin + ".bp");
            if (b.contains("learning_rate"))
                cfg.bp.learning_rate = b["learning_rate"].get<double>();
            if (b.contains("epochs")) cfg.bp.epochs = b["epochs"].get<int>();
        }
        if (j.contains("ga")) {
            const json& g = j["ga"];
            expect_keys(g,
                        {"pop_size", "generations", "crossover_prob", "mutation_prob",
                         "gene_min", "gene_max", "fitness_bp_epochs", "fitness_bp_lr",
                         "fitness_k", "mutation_variant", "crossover_variant"},
                        origin + ".ga");
            if (g.contains("pop_size")) cfg.ga.pop_size = g["pop_size"].get<int>();
            if (g.contains("generations")) cfg.ga.generations = g["generations"].get<int>();
            if (g.contains("crossover_prob"))
                cfg.ga.crossover_prob = g["crossover_prob"].get<double>();
            if (g.contains("mutation_prob"))
                cfg.ga.mutation_prob = g["mutation_prob"].get<double>();
            if (g.contains("gene_min")) cfg.ga.min_gene = g["gene_min"].get<double>();
            if (g.contains("gene_max")) cfg.ga.max_gene = g["gene_max"].get<double>();
            if (g.contains("fitness_bp_epochs"))
                cfg.ga.fitness_bp_epochs = g["fitness_bp_epochs"].get<int>();
            if (g.contains("fitness_bp_lr"))
                cfg.ga.fitness_bp_lr = g["fitness_bp_lr"].get<double>();
            if (g.contains("fitness_k")) cfg.ga.fitness_k = g["fitness_k"].get<double>();
            if (g.contains("mutation_variant"))
                cfg.ga.mutation_variant = evolve::mutation_variant_from_name(
                    g["mutation_variant"].get<std::string>());
            if (g.contains("crossover_variant")) {
                const auto v = g["crossover_variant"].get<std::string>();
                if (v == "simultaneous")
                    cfg.ga.crossover_variant = evolve::CrossoverVariant::Simultaneous;
                else if (v == "sequential")
                    cfg.ga.crossover_variant = evolve::CrossoverVariant::Sequential;
                else
                    fail(Errc::BadConfig, "config: unknown crossover_variant '" + v + "'");
            }
        }
    } catch (const json::exception& e) {
        fail(Errc::BadConfig, "config: " + origin + ": " + e.what());
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::BadConfig, "config: cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    RunConfig cfg;
    apply_config_json(cfg, text, path.string());
    return cfg;
}

TrainOutputs cmd_train(const RunConfig& cfg_in) {
    RunConfig cfg = cfg_in;
    cfg.ga.seed = cfg.seed;

    const ingest::PriceTable table = load_clean_table(cfg.data, cfg.columns, cfg.z_threshold);
    const features::Dataset data =
        features::build_dataset(table, cfg.columns, cfg.vol_window, cfg.seed, cfg.train_frac);

    std::filesystem::create_directories(cfg.out_dir);

    std::vector<bool> in_train(static_cast<std::size_t>(data.rows()), false);
    for (const Eigen::Index i : data.train_idx) in_train[static_cast<std::size_t>(i)] = true;

    if (cfg.dump_dataset.has_value()) {
        std::ofstream out(*cfg.dump_dataset);
        if (!out) fail(Errc::BadConfig, "train: cannot write " + cfg.dump_dataset->string());
        out << "date,split";
        for (const auto& n : data.feature_names) out << ',' << n;
        out << ",target\n";
        for (Eigen::Index i = 0; i < data.rows(); ++i) {
            out << data.dates[static_cast<std::size_t>(i)] << ','
                << (in_train[static_cast<std::size_t>(i)] ? "train" : "test");
            for (Eigen::Index j = 0; j < data.X.cols(); ++j)
                out << ',' << csv::format(data.X(i, j));
            out << ',' << csv::format(data.y[i]) << '\n';
        }
    }

    const net::NetShape shape{static_cast<Eigen::Index>(data.feature_names.size()), cfg.hidden,
                              1};

    net::Network trained;
    Eigen::VectorXd bp_trace;
    evolve::GaRun ga_run;
    if (cfg.skip_ga) {
        net::Network seed_net =
            random_baseline_network(shape, cfg.hidden_activation, cfg.seed);
        Eigen::MatrixXd x_train(static_cast<Eigen::Index>(data.train_idx.size()), data.X.cols());
        Eigen::MatrixXd y_train(x_train.rows(), 1);
        for (Eigen::Index i = 0; i < x_train.rows(); ++i) {
            x_train.row(i) = data.X.row(data.train_idx[static_cast<std::size_t>(i)]);
            y_train(i, 0) = data.y[data.train_idx[static_cast<std::size_t>(i)]];
        }
        net::TrainResult r = net::train_bp(std::move(seed_net), x_train, y_train,
                                           cfg.bp.learning_rate, cfg.bp.epochs);
        trained = std::move(r.net);
        bp_trace = std::move(r.loss_trace);
        ga_run.config = cfg.ga;
    } else {
        evolve::GaBpResult r =
            evolve::run_ga_bp(data, shape, cfg.ga, cfg.bp, cfg.hidden_activation);
        trained = std::move(r.network);
        bp_trace = std::move(r.bp_loss_trace);
        ga_run = std::move(r.run);
    }

    // predictions over every sample, date order
    const Eigen::VectorXd predicted = net::forward_batch(trained, data.X).col(0);

    Eigen::VectorXd pred_test(static_cast<Eigen::Index>(data.test_idx.size()));
    Eigen::VectorXd actual_test(pred_test.size());
    for (Eigen::Index i = 0; i < pred_test.size(); ++i) {
        pred_test[i] = predicted[data.test_idx[static_cast<std::size_t>(i)]];
        actual_test[i] = data.y[data.test_idx[static_cast<std::size_t>(i)]];
    }
    const metrics::EvalReport eval = metrics::evaluate(pred_test, actual_test);

    TrainOutputs outputs;
    outputs.eval = eval;
    outputs.model = cfg.out_dir / "model.json";
    outputs.fitness_trace = cfg.out_dir / "fitness_trace.csv";
    outputs.predictions = cfg.out_dir / "predictions.csv";
    outputs.errors = cfg.out_dir / "errors.csv";
    outputs.report = cfg.out_dir / "report.json";

    model_io::save(outputs.model, model_io::from_network(trained, data, cfg.columns,
                                                         cfg.vol_window, cfg.z_threshold));
    write_fitness_trace(outputs.fitness_trace, ga_run);
    {
        std::ofstream out(outputs.predictions);
        if (!out) fail(Errc::BadConfig, "train: cannot write " + outputs.predictions.string());
        out << "date,realized_vol,predicted_vol,split\n";
        for (Eigen::Index i = 0; i < data.rows(); ++i)
            out << data.dates[static_cast<std::size_t>(i)] << ',' << csv::format(data.y[i])
                << ',' << csv::format(predicted[i]) << ','
                << (in_train[static_cast<std::size_t>(i)] ? "train" : "test") << '\n';
    }
    write_errors_csv(outputs.errors, eval);
    write_report(outputs.report, eval);

    if (cfg.emit_svg) {
        {
            svg::Series s{"best fitness", {}, {}, "#1f77b4"};
            for (std::size_t g = 0; g < ga_run.best_per_generation.size(); ++g) {
                s.x.push_back(static_cast<double>(g));
                s.y.push_back(ga_run.best_per_generation[g]);
            }
            svg::write_line_chart(cfg.out_dir / "fitness_trace.svg",
                                  "Best fitness per generation", {s});
        }
        {
            svg::Series actual{"realized", {}, {}, "#1f77b4"};
            svg::Series pred{"predicted", {}, {}, "#d62728"};
            for (Eigen::Index i = 0; i < data.rows(); ++i) {
                actual.x.push_back(static_cast<double>(i));
                actual.y.push_back(data.y[i]);
                pred.x.push_back(static_cast<double>(i));
                pred.y.push_back(predicted[i]);
            }
            svg::write_line_chart(cfg.out_dir / "predictions.svg", "Volatility prediction",
                                  {actual, pred});
        }
        {
            svg::Series err{"error", {}, {}, "#2ca02c"};
            svg::Series pct{"error_pct", {}, {}, "#9467bd"};
            for (Eigen::Index i = 0; i < eval.n; ++i) {
                err.x.push_back(static_cast<double>(i));
                err.y.push_back(eval.error[i]);
                pct.x.push_back(static_cast<double>(i));
                pct.y.push_back(eval.error_pct[i]);
            }
            svg::write_line_chart(cfg.out_dir / "errors.svg", "Prediction errors (test)",
                                  {err});
            svg::write_line_chart(cfg.out_dir / "error_pct.svg",
                                  "Prediction error percentages (test)", {pct});
        }
    }
    return outputs;
}

void cmd_predict(const std::filesystem::path& model_path,
                 const std::filesystem::path& data_path,
                 const std::filesystem::path& out_path) {
    const model_io::Model model = model_io::load(model_path);
    const ingest::PriceTable table =
        load_clean_table(data_path, model.columns, model.z_threshold);

    features::FeatureMatrix f;
    try {
        f = features::build_features(table, model.columns, model.vol_window);
    } catch (const Error& e) {
        if (e.code() == Errc::InsufficientRows)
            fail(Errc::EmptyInput, "predict: no usable rows after feature construction");
        throw;
    }
    if (f.feature_names != model.feature_names)
        fail(Errc::SchemaMismatch, "predict: data features do not match the model");

    const Eigen::MatrixXd x = features::apply_norm(f.X, model.norm);
    const net::Network n = model_io::to_network(model);
    const Eigen::VectorXd predicted = net::forward_batch(n, x).col(0);

    std::ofstream out(out_path);
    if (!out) fail(Errc::BadConfig, "predict: cannot write " + out_path.string());
    out << "date,realized_vol,predicted_vol\n";
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        out << f.dates[static_cast<std::size_t>(i)] << ',' << csv::format(f.y[i]) << ','
            << csv::format(predicted[i]) << '\n';
}

metrics::EvalReport cmd_evaluate(const std::filesystem::path& predictions_path,
                                 const std::optional<std::filesystem::path>& out_dir) {
    const csv::Doc doc = csv::read(predictions_path);
    int rv_col = -1, pred_col = -1;
    for (std::size_t i = 0; i < doc.header.size(); ++i) {
        if (doc.header[i] == "realized_vol") rv_col = static_cast<int>(i);
        if (doc.header[i] == "predicted_vol") pred_col = static_cast<int>(i);
    }
    if (rv_col < 0 || pred_col < 0)
        fail(Errc::SchemaMismatch,
             "evaluate: " + predictions_path.string() +
                 " needs realized_vol and predicted_vol columns");

    Eigen::VectorXd realized(static_cast<Eigen::Index>(doc.rows.size()));
    Eigen::VectorXd predicted(realized.size());
    for (std::size_t i = 0; i < doc.rows.size(); ++i) {
        const auto& row = doc.rows[i];
        double rv, pv;
        if (static_cast<int>(row.size()) <= std::max(rv_col, pred_col) ||
            !csv::parse_double(csv::trim(row[static_cast<std::size_t>(rv_col)]), rv) ||
            !csv::parse_double(csv::trim(row[static_cast<std::size_t>(pred_col)]), pv))
            fail(Errc::MalformedRow,
                 "evaluate: bad row " + std::to_string(i + 2) + " in " +
                     predictions_path.string());
        realized[static_cast<Eigen::Index>(i)] = rv;
        predicted[static_cast<Eigen::Index>(i)] = pv;
    }
    const metrics::EvalReport r = metrics::evaluate(predicted, realized);
    if (out_dir.has_value()) {
        std::filesystem::create_directories(*out_dir);
        write_errors_csv(*out_dir / "errors.csv", r);
    }
    return r;
}

void write_synth_csv(const std::filesystem::path& path, const synth::GarchParams& params) {
    const ingest::RawTable t = synth::generate(params);
    std::ofstream out(path);
    if (!out) fail(Errc::BadConfig, "synth: cannot write " + path.string());
    out << "date";
    for (const auto& c : t.columns) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < t.dates.size(); ++i) {
        out << t.dates[i];
        for (const auto& col : t.cells) out << ',' << csv::format(*col[i]);
        out << '\n';
    }
}

} // namespace gabp::pipeline

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "gabp/evolve.hpp"
#include "gabp/features.hpp"
#include "gabp/metrics.hpp"
#include "gabp/network.hpp"
#include "gabp/synth.hpp"

namespace gabp::pipeline {

/// Everything a training run needs. Defaults reproduce the reference
/// configuration; a config file and CLI flags override individual knobs.
struct RunConfig {
    std::filesystem::path data;
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 42;
    features::FeatureColumns columns;
    int vol_window = 21;
    double train_frac = 0.8;
    double z_threshold = 5.0;
    Eigen::Index hidden = 10;
    net::Activation hidden_activation = net::Activation::Tanh;
    net::BpConfig bp;
    evolve::GaConfig ga;
    bool skip_ga = false;
    bool emit_svg = true;
    std::optional<std::filesystem::path> dump_dataset;
};

/// Parse a JSON config file over the defaults. Unknown keys are rejected.
RunConfig load_config(const std::filesystem::path& path);

/// Apply a JSON document (already parsed) over an existing config.
void apply_config_json(RunConfig& cfg, const std::string& json_text,
                       const std::string& origin);

struct TrainOutputs {
    std::filesystem::path model;
    std::filesystem::path fitness_trace;
    std::filesystem::path predictions;
    std::filesystem::path errors;
    std::filesystem::path report;
    metrics::EvalReport eval;
    evolve::GaRun ga_run; // empty trace when skip_ga
};

/// Run the full train pipeline and write every artifact into cfg.out_dir.
TrainOutputs cmd_train(const RunConfig& cfg);

/// Apply a persisted model to a data file; writes date,realized_vol,
/// predicted_vol rows. Errors: SchemaMismatch, ModelParseError, EmptyInput.
void cmd_predict(const std::filesystem::path& model_path,
                 const std::filesystem::path& data_path,
                 const std::filesystem::path& out_path);

/// Evaluate a predictions CSV (columns realized_vol, predicted_vol); writes
/// errors.csv next to the report when out_dir is given.
metrics::EvalReport cmd_evaluate(const std::filesystem::path& predictions_path,
                                 const std::optional<std::filesystem::path>& out_dir);

void write_synth_csv(const std::filesystem::path& path, const synth::GarchParams& params);

} // namespace gabp::pipeline

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "gabp/features.hpp"
#include "gabp/network.hpp"
#include "gabp/rng.hpp"

namespace gabp::evolve {

/// The mutation formula as printed moves genes toward the lower half of the
/// range on both coin outcomes; Standard flips the r > 0.5 branch to the
/// conventional non-uniform mutation toward the upper bound.
enum class MutationVariant { Paper, Standard };
MutationVariant mutation_variant_from_name(const std::string& name);
const char* mutation_variant_name(MutationVariant v);

/// Simultaneous blends both children from the pre-crossover parent genes;
/// Sequential reads the equations in order, so the second child sees the
/// first child's already-updated gene.
enum class CrossoverVariant { Simultaneous, Sequential };

struct GaConfig {
    int pop_size = 40;
    int generations = 30;
    double crossover_prob = 0.7;
    double mutation_prob = 0.1;
    double min_gene = -1.0;
    double max_gene = 1.0;
    int fitness_bp_epochs = 10;
    double fitness_bp_lr = 0.3;
    double fitness_k = 1.0;
    MutationVariant mutation_variant = MutationVariant::Paper;
    CrossoverVariant crossover_variant = CrossoverVariant::Simultaneous;
    int workers = 1;
    std::uint64_t seed = 0;
};

struct Individual {
    net::Chromosome chromosome;
    std::optional<double> fitness; // smaller is better
};

using Population = std::vector<Individual>;

struct GaRun {
    std::vector<double> best_per_generation; // index = generation, non-increasing
    Individual final_best;
    GaConfig config;
    std::int64_t total_evaluations = 0;
};

/// pop_size chromosomes with every gene uniform in [min_gene, max_gene],
/// drawn from the stream derived from (seed, kGaInit).
Population init_population(const GaConfig& cfg, Eigen::Index gene_count);

/// Inverted-fitness selection distribution: p_i proportional to k / G_i.
/// Any exact-zero fitness takes the whole mass, split uniformly among the
/// zero-fitness members. Errors: ZeroFitness is NOT an error here (handled);
/// all-infinite fitness raises NonFiniteLoss.
Eigen::VectorXd selection_probs(const Eigen::Ref<const Eigen::VectorXd>& fitness,
                                double k = 1.0);

/// `count` independent roulette draws (with replacement); returns indices.
std::vector<int> roulette_select(const Eigen::Ref<const Eigen::VectorXd>& probs, int count,
                                 rng::Engine& engine);

/// Arithmetic crossover at a single position with a given blend coefficient.
std::pair<net::Chromosome, net::Chromosome>
crossover_at(const net::Chromosome& a, const net::Chromosome& b, Eigen::Index pos, double blend,
             CrossoverVariant variant = CrossoverVariant::Simultaneous);

/// Draws the position and blend coefficient from the engine, then applies
/// crossover_at. Errors: LengthMismatch.
std::pair<net::Chromosome, net::Chromosome>
crossover(const net::Chromosome& a, const net::Chromosome& b, rng::Engine& engine,
          CrossoverVariant variant = CrossoverVariant::Simultaneous);

/// The adaptive mutation update for one gene. f = r2 * (1 - k/k_max)^2;
/// result clamped into [lo, hi]. Identity at generation == max_generations.
double mutation_step(double gene, double lo, double hi, int generation, int max_generations,
                     double r, double r2, MutationVariant variant);

/// Mutates one uniformly chosen gene. Draw order: position, r, r2.
net::Chromosome mutate(const net::Chromosome& c, int generation, const GaConfig& cfg,
                       rng::Engine& engine);

/// Decode, train briefly (fitness_bp_epochs full-batch epochs; 0 = skip
/// training), then sum the absolute training error. A diverged training run
/// yields +infinity, which selection treats as unselectable.
double evaluate_fitness(const net::Chromosome& c, const Eigen::Ref<const Eigen::MatrixXd>& X,
                        const Eigen::Ref<const Eigen::MatrixXd>& Y, net::NetShape shape,
                        const GaConfig& cfg,
                        net::Activation hidden = net::Activation::Tanh);

using FitnessFn = std::function<double(const net::Chromosome&)>;

/// Elitist generational loop over an arbitrary fitness function. The best
/// individual of each generation is copied unchanged into the next, so the
/// best-per-generation trace is non-increasing. Fitness evaluations may run
/// on cfg.workers threads; results are identical for any worker count.
GaRun run_ga(const GaConfig& cfg, Eigen::Index gene_count, const FitnessFn& fitness);

struct GaBpResult {
    GaRun run;
    net::Network network;          // best chromosome after full BP training
    Eigen::VectorXd bp_loss_trace; // from the final training run
};

/// The full pipeline: GA over BP-fitness, then the best chromosome seeds a
/// full train_bp run with the main BP budget.
GaBpResult run_ga_bp(const features::Dataset& data, net::NetShape shape, const GaConfig& cfg,
                     const net::BpConfig& bp,
                     net::Activation hidden = net::Activation::Tanh);

} // namespace gabp::evolve

#include "gabp/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "gabp/error.hpp"

namespace gabp::evolve {

MutationVariant mutation_variant_from_name(const std::string& name) {
    if (name == "paper") return MutationVariant::Paper;
    if (name == "standard") return MutationVariant::Standard;
    fail(Errc::BadConfig, "evolve: unknown mutation variant '" + name + "'");
}

const char* mutation_variant_name(MutationVariant v) {
    return v == MutationVariant::Paper ? "paper" : "standard";
}

Population init_population(const GaConfig& cfg, Eigen::Index gene_count) {
    if (cfg.pop_size < 2) throw std::invalid_argument("evolve: population size must be >= 2");
    if (!(cfg.min_gene < cfg.max_gene))
        throw std::invalid_argument("evolve: gene bounds must satisfy min < max");

    rng::Engine engine = rng::make_engine(rng::derive(cfg.seed, rng::stream::kGaInit));
    Population pop(static_cast<std::size_t>(cfg.pop_size));
    for (auto& ind : pop) {
        ind.chromosome.min_gene = cfg.min_gene;
        ind.chromosome.max_gene = cfg.max_gene;
        ind.chromosome.genes.resize(gene_count);
        for (Eigen::Index g = 0; g < gene_count; ++g)
            ind.chromosome.genes[g] = rng::uniform(engine, cfg.min_gene, cfg.max_gene);
    }
    return pop;
}

Eigen::VectorXd selection_probs(const Eigen::Ref<const Eigen::VectorXd>& fitness, double k) {
    const Eigen::Index n = fitness.size();
    if (n == 0) throw std::invalid_argument("evolve: empty fitness vector");
    if (!(k > 0.0)) throw std::invalid_argument("evolve: selection coefficient k must be > 0");

    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    const Eigen::Index zero_count = (fitness.array() == 0.0).count();
    if (zero_count > 0) {
        // 1/G is undefined for a perfect individual; give the perfect ones
        // the whole probability mass, split evenly.
        for (Eigen::Index i = 0; i < n; ++i)
            if (fitness[i] == 0.0) p[i] = 1.0 / static_cast<double>(zero_count);
        return p;
    }
    const Eigen::ArrayXd g = k / fitness.array(); // +inf fitness contributes 0
    const double total = g.sum();
    if (!(total > 0.0) || !std::isfinite(total))
        fail(Errc::NonFiniteLoss, "evolve: no individual has finite fitness");
    return (g / total).matrix();
}

std::vector<int> roulette_select(const Eigen::Ref<const Eigen::VectorXd>& probs, int count,
                                 rng::Engine& engine) {
    const Eigen::Index n = probs.size();
    std::vector<int> picks(static_cast<std::size_t>(count));
    for (int d = 0; d < count; ++d) {
        const double u = rng::uniform01(engine);
        double acc = 0.0;
        int chosen = static_cast<int>(n) - 1;
        for (Eigen::Index i = 0; i < n; ++i) {
            acc += probs[i];
            if (u < acc) {
                chosen = static_cast<int>(i);
                break;
            }
        }
        picks[static_cast<std::size_t>(d)] = chosen;
    }
    return picks;
}

std::pair<net::Chromosome, net::Chromosome>
crossover_at(const net::Chromosome& a, const net::Chromosome& b, Eigen::Index pos, double blend,
             CrossoverVariant variant) {
    if (a.genes.size() != b.genes.size())
        fail(Errc::LengthMismatch, "evolve: crossover parents of different lengths");
    net::Chromosome ca = a;
    net::Chromosome cb = b;
    const double ga = a.genes[pos];
    const double gb = b.genes[pos];
    ca.genes[pos] = ga * (1.0 - blend) + gb * blend;
    cb.genes[pos] = variant == CrossoverVariant::Simultaneous
                        ? gb * (1.0 - blend) + ga * blend
                        : gb * (1.0 - blend) + ca.genes[pos] * blend;
    return {std::move(ca), std::move(cb)};
}

std::pair<net::Chromosome, net::Chromosome>
crossover(const net::Chromosome& a, const net::Chromosome& b, rng::Engine& engine,
          CrossoverVariant variant) {
    if (a.genes.size() != b.genes.size())
        fail(Errc::LengthMismatch, "evolve: crossover parents of different lengths");
    const Eigen::Index pos =
        static_cast<Eigen::Index>(rng::below(engine, static_cast<std::uint64_t>(a.genes.size())));
    const double blend = rng::uniform01(engine);
    return crossover_at(a, b, pos, blend, variant);
}

double mutation_step(double gene, double lo, double hi, int generation, int max_generations,
                     double r, double r2, MutationVariant variant) {
    if (generation < 0 || generation > max_generations)
        throw std::invalid_argument("evolve: mutation generation out of range");
    const double anneal = 1.0 - static_cast<double>(generation) / max_generations;
    const double f = r2 * anneal * anneal;
    double out;
    if (variant == MutationVariant::Paper) {
        out = r > 0.5 ? gene + (gene - hi) * f : gene + (lo - gene) * f;
    } else {
        out = r > 0.5 ? gene + (hi - gene) * f : gene + (lo - gene) * f;
    }
    return std::clamp(out, lo, hi);
}

net::Chromosome mutate(const net::Chromosome& c, int generation, const GaConfig& cfg,
                       rng::Engine& engine) {
    net::Chromosome out = c;
    const Eigen::Index pos =
        static_cast<Eigen::Index>(rng::below(engine, static_cast<std::uint64_t>(c.genes.size())));
    const double r = rng::uniform01(engine);
    const double r2 = rng::uniform01(engine);
    out.genes[pos] = mutation_step(c.genes[pos], c.min_gene, c.max_gene, generation,
                                   cfg.generations, r, r2, cfg.mutation_variant);
    return out;
}

double evaluate_fitness(const net::Chromosome& c, const Eigen::Ref<const Eigen::MatrixXd>& X,
                        const Eigen::Ref<const Eigen::MatrixXd>& Y, net::NetShape shape,
                        const GaConfig& cfg, net::Activation hidden) {
    net::Network n = net::decode(c, shape, hidden);
    if (cfg.fitness_bp_epochs > 0) {
        try {
            n = net::train_bp(std::move(n), X, Y, cfg.fitness_bp_lr, cfg.fitness_bp_epochs).net;
        } catch (const Error& e) {
            if (e.code() == Errc::NonFiniteLoss)
                return std::numeric_limits<double>::infinity();
            throw;
        }
    }
    const double g = net::fitness_error(n, X, Y, cfg.fitness_k);
    return std::isfinite(g) ? g : std::numeric_limits<double>::infinity();
}

namespace {

// Fills in every missing fitness; work is partitioned by index so the result
// is the same for any worker count.
std::int64_t evaluate_population(Population& pop, const FitnessFn& fitness, int workers) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < pop.size(); ++i)
        if (!pop[i].fitness.has_value()) todo.push_back(i);
    if (todo.empty()) return 0;

    const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(todo.size())));
    if (n_threads == 1) {
        for (const std::size_t i : todo) pop[i].fitness = fitness(pop[i].chromosome);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) {
            threads.emplace_back([&, t] {
                for (std::size_t j = static_cast<std::size_t>(t); j < todo.size();
                     j += static_cast<std::size_t>(n_threads)) {
                    const std::size_t i = todo[j];
                    pop[i].fitness = fitness(pop[i].chromosome);
                }
            });
        }
        for (auto& th : threads) th.join();
    }
    return static_cast<std::int64_t>(todo.size());
}

std::size_t best_index(const Population& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (*pop[i].fitness < *pop[best].fitness) best = i;
    return best;
}

} // namespace

GaRun run_ga(const GaConfig& cfg, Eigen::Index gene_count, const FitnessFn& fitness) {
    if (cfg.generations < 1) throw std::invalid_argument("evolve: generations must be >= 1");

    GaRun run;
    run.config = cfg;
    run.best_per_generation.reserve(static_cast<std::size_t>(cfg.generations));

    Population pop = init_population(cfg, gene_count);
    rng::Engine loop = rng::make_engine(rng::derive(cfg.seed, rng::stream::kGaLoop));

    for (int g = 0; g < cfg.generations; ++g) {
        run.total_evaluations += evaluate_population(pop, fitness, cfg.workers);
        const std::size_t best = best_index(pop);
        run.best_per_generation.push_back(*pop[best].fitness);
        if (g == cfg.generations - 1) {
            run.final_best = pop[best];
            break;
        }

        Eigen::VectorXd fit(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) fit[static_cast<Eigen::Index>(i)] = *pop[i].fitness;
        const Eigen::VectorXd probs = selection_probs(fit, cfg.fitness_k);
        const std::vector<int> parents = roulette_select(probs, cfg.pop_size - 1, loop);

        Population next;
        next.reserve(pop.size());
        next.push_back(pop[best]); // elite, fitness carried over
        for (const int p : parents) next.push_back(pop[static_cast<std::size_t>(p)]);

        // Crossover over consecutive non-elite pairs; a trailing unpaired
        // individual passes through.
        for (std::size_t i = 1; i + 1 < next.size(); i += 2) {
            if (rng::uniform01(loop) < cfg.crossover_prob) {
                auto [ca, cb] =
                    crossover(next[i].chromosome, next[i + 1].chromosome, loop,
                              cfg.crossover_variant);
                next[i] = Individual{std::move(ca), std::nullopt};
                next[i + 1] = Individual{std::move(cb), std::nullopt};
            }
        }
        for (std::size_t i = 1; i < next.size(); ++i) {
            if (rng::uniform01(loop) < cfg.mutation_prob) {
                next[i] = Individual{mutate(next[i].chromosome, g + 1, cfg, loop), std::nullopt};
            }
        }
        pop = std::move(next);
    }
    return run;
}

GaBpResult run_ga_bp(const features::Dataset& data, net::NetShape shape, const GaConfig& cfg,
                     const net::BpConfig& bp, net::Activation hidden) {
    const Eigen::Index n_train = static_cast<Eigen::Index>(data.train_idx.size());
    Eigen::MatrixXd x_train(n_train, data.X.cols());
    Eigen::MatrixXd y_train(n_train, 1);
    for (Eigen::Index i = 0; i < n_train; ++i) {
        x_train.row(i) = data.X.row(data.train_idx[static_cast<std::size_t>(i)]);
        y_train(i, 0) = data.y[data.train_idx[static_cast<std::size_t>(i)]];
    }

    const FitnessFn fitness = [&](const net::Chromosome& c) {
        return evaluate_fitness(c, x_train, y_train, shape, cfg, hidden);
    };

    GaBpResult result;
    result.run = run_ga(cfg, shape.gene_count(), fitness);

    net::Network seed_net = net::decode(result.run.final_best.chromosome, shape, hidden);
    net::TrainResult trained =
        net::train_bp(std::move(seed_net), x_train, y_train, bp.learning_rate, bp.epochs);
    result.network = std::move(trained.net);
    result.bp_loss_trace = std::move(trained.loss_trace);
    return result;
}

} // namespace gabp::evolve

// SPDX-License-Identifier: Apache-2.0
//
// bdris - simulation and optimization toolkit for hybrid
// transmitting/reflecting beyond-diagonal reconfigurable surfaces
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "core/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <unordered_map>

#include "json.hpp"

namespace bdris::optimize {

namespace {

std::string key_of(const Chromosome &x) {
    return std::string(reinterpret_cast<const char *>(x.data()), x.size());
}

bool lex_less(const Chromosome &a, const Chromosome &b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Strictly better, or an exact tie broken toward the smaller chromosome.
bool improves(double f, const Chromosome &x, double best_f, const Chromosome &best) {
    if (f < best_f)
        return true;
    return f == best_f && lex_less(x, best);
}

struct Evaluator {
    const emdata::EmDataset &ds;
    const splitter::SplitterState sp;
    const BeamTarget &target;
    std::unordered_map<std::string, double> cache;
    std::size_t evaluations = 0;
    std::size_t threads = 1;

    Evaluator(const emdata::EmDataset &d, const BeamTarget &t)
        : ds(d), sp(splitter::mode_preset(t.mode, d.freq_hz)), target(t) {}

    void evaluate(const std::vector<Chromosome> &pop, std::vector<double> &out) {
        out.resize(pop.size());
        std::vector<std::size_t> missing;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            const auto it = cache.find(key_of(pop[i]));
            if (it != cache.end())
                out[i] = it->second;
            else
                missing.push_back(i);
        }
        evaluations += missing.size();

        const std::size_t n_threads = std::max<std::size_t>(1, std::min(threads, missing.size()));
        if (n_threads <= 1) {
            for (std::size_t i : missing)
                out[i] = fitness(pop[i], ds, sp, target);
        } else {
            std::vector<std::thread> workers;
            std::atomic<std::size_t> next{0};
            for (std::size_t t = 0; t < n_threads; ++t)
                workers.emplace_back([&] {
                    for (;;) {
                        const std::size_t k = next.fetch_add(1);
                        if (k >= missing.size())
                            return;
                        out[missing[k]] = fitness(pop[missing[k]], ds, sp, target);
                    }
                });
            for (auto &w : workers)
                w.join();
        }
        for (std::size_t i : missing)
            cache.emplace(key_of(pop[i]), out[i]);
    }
};

} // namespace

void BeamTarget::validate() const {
    const bool want_r = mode != splitter::SplitterMode::transmission;
    const bool want_t = mode != splitter::SplitterMode::reflection;
    if (want_r && !(theta_r_deg >= 0.0 && theta_r_deg < 90.0))
        throw InvalidArgument("BeamTarget: reflection target must satisfy 0 <= theta < 90");
    if (want_t && !(theta_t_deg > 90.0 && theta_t_deg <= 180.0))
        throw InvalidArgument("BeamTarget: transmission target must satisfy 90 < theta <= 180");
    if (mode == splitter::SplitterMode::custom)
        throw InvalidArgument("BeamTarget: mode must be reflection, hybrid or transmission");
}

void GaParams::validate() const {
    if (population < 2)
        throw InvalidArgument("GaParams: population must be >= 2");
    if (elitism >= population)
        throw InvalidArgument("GaParams: elitism must be below the population size");
    if (crossover_rate < 0.0 || crossover_rate > 1.0 || mutation_rate < 0.0 || mutation_rate > 1.0)
        throw InvalidArgument("GaParams: rates must lie in [0, 1]");
    if (tournament < 1)
        throw InvalidArgument("GaParams: tournament size must be >= 1");
}

thevenin::SurfaceConfig config_from_chromosome(const Chromosome &x,
                                               const splitter::SplitterState &sp) {
    if (x.size() % 2 != 0 || x.empty())
        throw InvalidArgument("config_from_chromosome: chromosome length must be 2M");
    const std::size_t m = x.size() / 2;
    thevenin::SurfaceConfig cfg;
    cfg.splitters.assign(m, sp);
    for (std::size_t i = 0; i < m; ++i) {
        cfg.r_states.push_back(antenna::phase_state(x[i]));
        cfg.t_states.push_back(antenna::phase_state(x[m + i]));
    }
    return cfg;
}

double fitness(const Chromosome &x, const emdata::EmDataset &ds,
               const splitter::SplitterState &sp, const BeamTarget &target) {
    const thevenin::SurfaceConfig cfg = config_from_chromosome(x, sp);
    const thevenin::SolveResult res = thevenin::simulate(ds, cfg, thevenin::Incidence{});

    double factor_r = 1.0;
    double factor_t = 1.0;
    if (target.mode != splitter::SplitterMode::transmission)
        factor_r = pattern::magnitude_at(res.e_r, target.theta_r_deg, target.phi_r_deg);
    if (target.mode != splitter::SplitterMode::reflection)
        factor_t = pattern::magnitude_at(res.e_t, target.theta_t_deg, target.phi_t_deg);
    return -(factor_r * factor_t);
}

OptimizeResult ga_optimize(const emdata::EmDataset &ds, const BeamTarget &target,
                           const GaParams &params) {
    target.validate();
    params.validate();
    const std::size_t genes = 2 * ds.m;
    const double p_mut = params.mutation_rate > 0.0 ? params.mutation_rate
                                                    : 1.0 / static_cast<double>(genes);

    std::mt19937_64 rng(params.seed);
    auto rand_gene = [&] { return static_cast<std::uint8_t>(rng() & 3u); };
    auto rand_unit = [&] { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
    auto rand_index = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };

    Evaluator eval(ds, target);
    eval.threads = params.threads;

    std::vector<Chromosome> pop(params.population, Chromosome(genes, 0));
    for (auto &x : pop)
        for (auto &g : x)
            g = rand_gene();

    std::vector<double> fit;
    eval.evaluate(pop, fit);

    OptimizeResult result;
    result.best = pop[0];
    result.best_fitness = fit[0];
    auto track_best = [&](const std::vector<Chromosome> &xs, const std::vector<double> &fs) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (improves(fs[i], xs[i], result.best_fitness, result.best)) {
                result.best_fitness = fs[i];
                result.best = xs[i];
            }
    };
    auto record = [&](const std::vector<double> &fs) {
        double mean = 0.0;
        for (double f : fs)
            mean += f;
        result.history.push_back({result.best_fitness, mean / static_cast<double>(fs.size())});
    };
    track_best(pop, fit);
    record(fit);

    // Ranking used for elitism; ties ordered lexicographically so elite
    // selection is deterministic.
    auto order = [&](const std::vector<double> &fs, const std::vector<Chromosome> &xs) {
        std::vector<std::size_t> idx(xs.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (fs[a] != fs[b])
                return fs[a] < fs[b];
            return lex_less(xs[a], xs[b]);
        });
        return idx;
    };

    for (std::size_t gen = 1; gen < params.generations; ++gen) {
        const std::vector<std::size_t> ranked = order(fit, pop);
        std::vector<Chromosome> next;
        next.reserve(params.population);
        for (std::size_t e = 0; e < params.elitism; ++e)
            next.push_back(pop[ranked[e]]);

        auto tournament = [&]() -> const Chromosome & {
            std::size_t best = rand_index(pop.size());
            for (std::size_t t = 1; t < params.tournament; ++t) {
                const std::size_t cand = rand_index(pop.size());
                if (fit[cand] < fit[best] ||
                    (fit[cand] == fit[best] && lex_less(pop[cand], pop[best])))
                    best = cand;
            }
            return pop[best];
        };

        while (next.size() < params.population) {
            Chromosome a = tournament();
            Chromosome b = tournament();
            if (rand_unit() < params.crossover_rate)
                for (std::size_t g = 0; g < genes; ++g)
                    if (rng() & 1u)
                        std::swap(a[g], b[g]);
            for (Chromosome *child : {&a, &b}) {
                for (auto &g : *child)
                    if (rand_unit() < p_mut)
                        g = static_cast<std::uint8_t>((g + 1 + (rng() % 3)) & 3u);
                if (next.size() < params.population)
                    next.push_back(*child);
            }
        }

        pop = std::move(next);
        eval.evaluate(pop, fit);
        track_best(pop, fit);
        record(fit);
    }

    result.evaluations = eval.evaluations;
    return result;
}

OptimizeResult exhaustive_search(const emdata::EmDataset &ds, const BeamTarget &target) {
    target.validate();
    const std::size_t m = ds.m;
    const bool vary_r = target.mode != splitter::SplitterMode::transmission;
    const bool vary_t = target.mode != splitter::SplitterMode::reflection;
    const std::size_t active = (vary_r ? m : 0) + (vary_t ? m : 0);
    const double count = std::pow(4.0, static_cast<double>(active));
    if (count > 1e6)
        throw TooLarge("exhaustive_search: more than 1e6 configurations");

    Evaluator eval(ds, target);
    const auto total = static_cast<std::uint64_t>(count);

    OptimizeResult result;
    Chromosome x(2 * m, 0);
    bool first = true;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        // Base-4 digits, gene 0 most significant: enumeration follows
        // lexicographic order, so ties resolve to the smallest chromosome.
        std::uint64_t rem = idx;
        for (std::size_t g = active; g-- > 0;) {
            const std::size_t pos = vary_r ? g : m + g;
            x[pos] = static_cast<std::uint8_t>(rem & 3u);
            rem >>= 2;
        }
        const double f = fitness(x, ds, eval.sp, target);
        if (first || f < result.best_fitness) {
            result.best_fitness = f;
            result.best = x;
            first = false;
        }
        ++result.evaluations;
    }
    return result;
}

std::string chromosome_string(const Chromosome &x) {
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i == x.size() / 2)
            s += '|';
        s += static_cast<char>('0' + ((x[i] >> 1) & 1));
        s += static_cast<char>('0' + (x[i] & 1));
    }
    return s;
}

std::string report_json(const OptimizeResult &result, const emdata::EmDataset &ds,
                        const BeamTarget &target, const GaParams &params) {
    nlohmann::json j;
    j["seed"] = params.seed;
    j["params"] = {{"population", params.population},
                   {"generations", params.generations},
                   {"crossover_rate", params.crossover_rate},
                   {"mutation_rate",
                    params.mutation_rate > 0.0 ? params.mutation_rate
                                               : 1.0 / static_cast<double>(2 * ds.m)},
                   {"elitism", params.elitism},
                   {"tournament", params.tournament}};
    j["mode"] = splitter::mode_name(target.mode);
    j["target"] = {{"theta_r_deg", target.theta_r_deg},
                   {"phi_r_deg", target.phi_r_deg},
                   {"theta_t_deg", target.theta_t_deg},
                   {"phi_t_deg", target.phi_t_deg}};
    j["best_fitness"] = result.best_fitness;
    j["best_chromosome"] = chromosome_string(result.best);
    std::vector<std::uint8_t> genes(result.best.begin(), result.best.end());
    j["best_genes"] = genes;
    j["evaluations"] = result.evaluations;
    nlohmann::json hist = nlohmann::json::array();
    for (const auto &h : result.history)
        hist.push_back({{"best", h.best_fitness}, {"mean", h.mean_fitness}});
    j["history"] = std::move(hist);

    const splitter::SplitterState sp = splitter::mode_preset(target.mode, ds.freq_hz);
    const thevenin::SolveResult res =
        thevenin::simulate(ds, config_from_chromosome(result.best, sp), thevenin::Incidence{});
    auto metrics = [&](const pattern::FieldPattern &p, pattern::Sector sector) -> nlohmann::json {
        try {
            const pattern::BeamMetrics m = pattern::beam_metrics(p, sector);
            return {{"peak_theta_deg", m.peak_theta_deg},
                    {"peak_phi_deg", m.peak_phi_deg},
                    {"peak_level_db", m.peak_level_db},
                    {"hpbw_deg", m.hpbw_deg},
                    {"max_sidelobe_db", m.max_sidelobe_db}};
        } catch (const Error &e) {
            return {{"error", e.what()}};
        }
    };
    j["achieved"] = {{"reflection", metrics(res.e_r, pattern::Sector::reflection)},
                     {"transmission", metrics(res.e_t, pattern::Sector::transmission)}};
    return j.dump(2);
}

} // namespace bdris::optimize

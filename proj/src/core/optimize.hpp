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

#ifndef BDRIS_CORE_OPTIMIZE_HPP
#define BDRIS_CORE_OPTIMIZE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/thevenin.hpp"

namespace bdris::optimize {

// Beam objective. Reflection targets live in theta [0, 90), transmission
// targets in (90, 180]; hybrid uses both.
struct BeamTarget {
    double theta_r_deg = 0.0;
    double phi_r_deg = 90.0;
    double theta_t_deg = 180.0;
    double phi_t_deg = 90.0;
    splitter::SplitterMode mode = splitter::SplitterMode::hybrid;

    void validate() const;
};

struct GaParams {
    std::size_t population = 64;
    std::size_t generations = 200;
    double crossover_rate = 0.9;
    double mutation_rate = 0.0;  // 0 resolves to 1/(2M)
    std::size_t elitism = 2;
    std::size_t tournament = 3;
    std::uint64_t seed = 1;
    std::size_t threads = 1;

    void validate() const;
};

// 2M two-bit genes: reflect states first, then transmit states.
using Chromosome = std::vector<std::uint8_t>;

struct GenerationStats {
    double best_fitness;
    double mean_fitness;
};

struct OptimizeResult {
    Chromosome best;
    double best_fitness = 0.0;
    std::vector<GenerationStats> history;
    std::size_t evaluations = 0;
};

// Split a chromosome into a full surface configuration using the target
// mode's splitter preset.
thevenin::SurfaceConfig config_from_chromosome(const Chromosome &x,
                                               const splitter::SplitterState &sp);

// Objective of the two-beam cost: -(|E_r(target_r)| * |E_t(target_t)|),
// with the inactive factor fixed at unity in single-sided modes. Lower is
// better; the optimum is the most negative value.
double fitness(const Chromosome &x, const emdata::EmDataset &ds,
               const splitter::SplitterState &sp, const BeamTarget &target);

// Seeded genetic search over the discrete states. Deterministic for a
// fixed seed; exact fitness ties resolve to the lexicographically
// smallest chromosome.
OptimizeResult ga_optimize(const emdata::EmDataset &ds, const BeamTarget &target,
                           const GaParams &params);

// Global optimum by enumeration. Single-sided modes fix the inactive side
// at state 0; TooLarge above 10^6 enumerated configurations.
OptimizeResult exhaustive_search(const emdata::EmDataset &ds, const BeamTarget &target);

// Optimization report (seed, parameters, history, best chromosome and its
// beam metrics) as a JSON document.
std::string report_json(const OptimizeResult &result, const emdata::EmDataset &ds,
                        const BeamTarget &target, const GaParams &params);

std::string chromosome_string(const Chromosome &x);

} // namespace bdris::optimize

#endif

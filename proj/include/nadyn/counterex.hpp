#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nadyn/dynamics.hpp"
#include "nadyn/unramified.hpp"

namespace nadyn {

/// phi = pi^-n z^e0 (z-1)^e1 + z with n = lcm(e0, e1) and e_i' = n / e_i.
struct CounterexampleSpec {
    int d = 0;
    std::uint32_t p = 0;
    int e0 = 0, e1 = 0;
    long n = 0;
    long e0p = 0, e1p = 0;
    std::array<long, 2> r{};
    std::array<long, 2> s{};
    /// Degree of the unramified extension over which every ball center exists.
    unsigned ext_degree = 1;
};

struct Ball {
    UElem center;
    long radius = 0;

    bool contains(const UElem& x) const { return (x - center).val() >= radius; }
    /// Containment of balls: other lies inside this one.
    bool contains(const Ball& other) const { return other.radius >= radius && contains(other.center); }
};

struct TwoCycle {
    UElem x, y;
    UElem multiplier;
    long multiplier_valuation = 0;
    /// v(x - x*) is at least this for the true cycle point x*.
    long precision = 0;
};

struct SubshiftWitness {
    std::vector<Ball> a_balls, b_balls;
    long e0p = 0, e1p = 0;
    /// Rows and columns list the a-balls first; entry (i, j) is set when
    /// phi maps ball i onto a ball containing ball j.
    std::vector<std::vector<bool>> incidence;
    bool complete_bipartite = false;
    long pairs_checked = 0;
    std::optional<TwoCycle> two_cycle;
};

struct SamplingReport {
    long escape_samples = 0, escaped = 0;
    int max_escape_steps = 0;
    long invariance_samples = 0, invariant = 0;
};

std::pair<PolyMap, CounterexampleSpec> build(std::uint32_t p, int d);

bool verify_fixed_nonrepelling(const PolyMap& phi, const PrecisionOptions& opts = {});

SubshiftWitness subshift_witness(const PolyMap& phi, const CounterexampleSpec& spec, std::uint64_t seed = 1,
                                 long working_precision = 64);

TwoCycle find_two_cycle(const PolyMap& phi, const CounterexampleSpec& spec, long working_precision = 64);

SamplingReport sample_dynamics(const PolyMap& phi, const CounterexampleSpec& spec, std::uint64_t seed = 1,
                               long samples = 200, long working_precision = 64);

} // namespace nadyn

#pragma once

// Direct simulation of the symmetric +/-1 walk.
//
// Random numbers: SplitMix64 (Steele, Lea, Flood 2014), state increment
// 0x9E3779B97F4A7C15, output mix
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z ^= z >> 31.
// Walker i runs its own SplitMix64 stream whose initial state is
// mix(seed ^ mix(i + 1)); each step draws one 64-bit word and hops +1 when
// its lowest bit is set, -1 otherwise. Streams depend only on (seed, i), so
// the histogram is identical for any thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "rwlab/error.hpp"
#include "rwlab/kernels.hpp"
#include "rwlab/parallel.hpp"

namespace rwlab::montecarlo {

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    constexpr std::uint64_t next() noexcept
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    /// Stream of walker `index` under master seed `seed`.
    static constexpr SplitMix64 for_walker(std::uint64_t seed, std::uint64_t index) noexcept
    {
        return SplitMix64(mix64(seed ^ mix64(index + 1)));
    }

private:
    std::uint64_t state_;
};

/// Endpoint counts of `walkers` independent walks of `steps` hops from 0.
/// Only sites of the parity lattice can be occupied; they are stored densely.
class McHistogram {
public:
    McHistogram() = default;
    McHistogram(std::int64_t steps, std::uint64_t walkers, std::uint64_t seed)
        : steps_(steps), walkers_(walkers), seed_(seed), counts_(std::size_t(steps) + 1, 0)
    {
    }

    std::int64_t steps() const noexcept { return steps_; }
    std::uint64_t walkers() const noexcept { return walkers_; }
    std::uint64_t seed() const noexcept { return seed_; }

    /// Occupiable sites -steps, -steps + 2, ..., steps.
    std::size_t site_count() const noexcept { return counts_.size(); }
    std::int64_t site(std::size_t k) const noexcept { return 2 * std::int64_t(k) - steps_; }

    std::uint64_t count_at_index(std::size_t k) const { return counts_.at(k); }

    /// Count at position x; 0 off the parity lattice or outside the cone.
    std::uint64_t count(std::int64_t x) const noexcept
    {
        if (x > steps_ || -x > steps_ || (x + steps_) % 2 != 0) return 0;
        return counts_[std::size_t((x + steps_) / 2)];
    }

    std::uint64_t total() const noexcept
    {
        std::uint64_t s = 0;
        for (auto c : counts_) s += c;
        return s;
    }

    std::vector<std::uint64_t>& raw() noexcept { return counts_; }
    const std::vector<std::uint64_t>& raw() const noexcept { return counts_; }

private:
    std::int64_t steps_ = 0;
    std::uint64_t walkers_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::uint64_t> counts_;
};

struct SimulationOptions {
    unsigned threads = thread_count();
    std::size_t memory_limit_bytes = std::size_t(1) << 30;
};

inline McHistogram simulate(std::uint64_t walkers, std::int64_t steps, std::uint64_t seed, SimulationOptions opt = {})
{
    if (walkers < 1) throw DomainError("simulate: walkers must be >= 1");
    if (steps < 0) throw DomainError("simulate: steps must be nonnegative");
    const unsigned blocks = std::max(1u, opt.threads);
    const double table_bytes = double(steps + 1) * sizeof(std::uint64_t) * (blocks + 1);
    if (table_bytes > double(opt.memory_limit_bytes))
        throw ResourceError("simulate: count tables exceed the memory limit");

    McHistogram hist(steps, walkers, seed);
    std::vector<std::vector<std::uint64_t>> partial(blocks, std::vector<std::uint64_t>(std::size_t(steps) + 1, 0));
    const std::uint64_t per_block = (walkers + blocks - 1) / blocks;
    parallel_for(
        blocks,
        [&](std::size_t b) {
            const std::uint64_t begin = b * per_block;
            const std::uint64_t end = std::min<std::uint64_t>(walkers, begin + per_block);
            auto& local = partial[b];
            for (std::uint64_t i = begin; i < end; ++i) {
                auto rng = SplitMix64::for_walker(seed, i);
                std::int64_t right = 0;
                for (std::int64_t s = 0; s < steps; ++s) right += std::int64_t(rng.next() & 1u);
                ++local[std::size_t(right)];  // x = 2 right - steps
            }
        },
        blocks);
    for (const auto& local : partial)
        for (std::size_t k = 0; k < local.size(); ++k) hist.raw()[k] += local[k];
    return hist;
}

struct Comparison {
    double max_z = 0.0;
    double chi2 = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// Exact site probability P(x, t) = 2 rho_rw_lattice(x, t).
inline double site_probability(std::int64_t x, std::int64_t t) { return 2.0 * kernels::rho_rw_lattice(x, t); }

/// Per-site z-scores (sites with expected count >= 10) and Pearson chi-square
/// against the binomial law. Sites with expected count < 10 are pooled into a
/// left and a right tail bin; a pooled tail still below 10 is merged into its
/// neighbouring bin.
inline Comparison histogram_compare(const McHistogram& h, double min_expected = 10.0)
{
    const double n = double(h.walkers());
    Comparison out;

    struct Bin {
        double observed = 0.0;
        double expected = 0.0;
    };
    std::vector<Bin> core;
    Bin left, right;
    bool seen_core = false;
    for (std::size_t k = 0; k < h.site_count(); ++k) {
        const double prob = site_probability(h.site(k), h.steps());
        const double expected = n * prob;
        const double observed = double(h.count_at_index(k));
        if (expected >= min_expected) {
            seen_core = true;
            core.push_back({observed, expected});
            const double var = n * prob * (1.0 - prob);
            if (var > 0.0) out.max_z = std::max(out.max_z, std::abs(observed - expected) / std::sqrt(var));
        } else {
            Bin& tail = seen_core ? right : left;
            tail.observed += observed;
            tail.expected += expected;
        }
    }
    std::vector<Bin> bins;
    if (left.expected >= min_expected || core.empty()) bins.push_back(left);
    else core.front().observed += left.observed, core.front().expected += left.expected;
    bins.insert(bins.end(), core.begin(), core.end());
    if (right.expected >= min_expected || core.empty()) bins.push_back(right);
    else bins.back().observed += right.observed, bins.back().expected += right.expected;
    bins.erase(std::remove_if(bins.begin(), bins.end(), [](const Bin& b) { return b.expected <= 0.0; }), bins.end());

    for (const auto& b : bins) out.chi2 += (b.observed - b.expected) * (b.observed - b.expected) / b.expected;
    out.dof = int(bins.size()) - 1;
    if (out.dof > 0) {
        boost::math::chi_squared dist(out.dof);
        out.p_value = boost::math::cdf(boost::math::complement(dist, out.chi2));
    }
    return out;
}

}  // namespace rwlab::montecarlo

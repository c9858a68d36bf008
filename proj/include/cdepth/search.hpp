/**
 * Random valid configurations and hill descent on colourful depth.
 *
 * Each colour keeps one anchor point (the last) so that the origin stays
 * in the core: a fresh colour is d random points plus the negation of
 * their sum, which puts the origin at the centroid.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdepth/configuration.hpp"
#include "cdepth/depth.hpp"
#include "cdepth/detail/parallel.hpp"
#include "cdepth/validation.hpp"
#include "cdepth/witness.hpp"

namespace cdepth {

/// A configuration whose depth fell below the proven lower bound.
class TheoremViolation : public std::runtime_error {
  public:
    TheoremViolation(const std::string& what, Configuration config)
        : std::runtime_error(what), config_(std::move(config))
    {
    }
    const Configuration& configuration() const { return config_; }

  private:
    Configuration config_;
};

/// Coordinates are k / 2^16 with |k| <= 2^16.
inline constexpr long kCoordinateDenominator = 1L << 16;
inline constexpr int kGenerationRetryCap = 1000;

namespace detail {

inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

inline Point random_point(std::mt19937_64& rng, int d)
{
    std::uniform_int_distribution<long> coord(-kCoordinateDenominator, kCoordinateDenominator);
    Point p(d);
    for (auto& x : p)
        x = Rational(coord(rng), kCoordinateDenominator);
    return p;
}

inline Point negated_sum(const std::vector<Point>& points, std::size_t count, int d)
{
    Point anchor(d, Rational(0));
    for (std::size_t j = 0; j < count; ++j)
        for (int r = 0; r < d; ++r)
            anchor[r] -= points[j][r];
    return anchor;
}

inline std::vector<Point> random_colour(std::mt19937_64& rng, int d)
{
    std::vector<Point> cls;
    for (int j = 0; j < d; ++j)
        cls.push_back(random_point(rng, d));
    cls.push_back(negated_sum(cls, d, d));
    return cls;
}

} // namespace detail

inline Configuration random_configuration(int d, std::uint64_t seed)
{
    if (d < 1)
        throw InputError("random_configuration: d must be positive");
    auto rng = detail::seeded_engine(seed, 0);
    for (int attempt = 0; attempt < kGenerationRetryCap; ++attempt) {
        Configuration config;
        config.dimension = d;
        for (int c = 0; c <= d; ++c)
            config.colours.push_back(detail::random_colour(rng, d));
        const auto report = validate(config);
        if (report.zero_interior && report.general_position)
            return config;
    }
    throw std::runtime_error("random_configuration: no general-position sample after " +
                             std::to_string(kGenerationRetryCap) + " attempts");
}

struct SearchHistoryEntry {
    int restart = 0;
    std::size_t iteration = 0;
    std::size_t depth = 0;
};

struct SearchOptions {
    /// Also move to proposals of equal depth (plateau walking); only strict decreases reset the stop counter.
    bool accept_ties = false;
};

struct RestartOutcome {
    int restart = 0;
    std::size_t depth = 0;
    Configuration config;
};

struct SearchReport {
    int dimension = 0;
    Configuration best_config;
    std::size_t best_depth = 0;
    int best_restart = 0;
    /// Accepted depths, restart by restart; iteration 0 is the starting configuration.
    std::vector<SearchHistoryEntry> history;
    /// Final configuration of every restart, in restart order.
    std::vector<RestartOutcome> restarts;
    std::size_t evaluations = 0;
};

namespace detail {

struct RestartResult {
    Configuration config;
    std::size_t depth = 0;
    std::vector<SearchHistoryEntry> history;
    std::size_t evaluations = 0;
};

inline std::size_t checked_depth(const Configuration& config)
{
    const std::size_t depth = colourful_depth_count(config);
    if (static_cast<long long>(depth) < theorem_bound(config.dimension))
        throw TheoremViolation("configuration of depth " + std::to_string(depth) + " below the lower bound " +
                                   std::to_string(theorem_bound(config.dimension)),
                               config);
    return depth;
}

inline RestartResult descend(int d, std::size_t steps, std::uint64_t seed, int restart, const SearchOptions& options)
{
    auto rng = seeded_engine(seed, static_cast<std::uint64_t>(restart) + 1);
    RestartResult out;
    out.config = random_configuration(d, rng());
    out.depth = checked_depth(out.config);
    ++out.evaluations;
    out.history.push_back({restart, 0, out.depth});

    std::uniform_int_distribution<int> pick(0, d);
    std::size_t iteration = 0;
    std::size_t stale = 0;
    while (stale < steps) {
        ++iteration;
        ++stale;
        const int colour = pick(rng);
        const int index = pick(rng);
        Configuration proposal = out.config;
        auto& cls = proposal.colours[colour];
        cls[index] = random_point(rng, d);
        if (!simplex_contains_origin(cls).contains) {
            if (index == d)
                continue; // the new anchor evicts the origin
            cls[d] = negated_sum(cls, d, d);
        }
        if (!simplex_contains_origin(cls).contains)
            continue;
        const std::size_t depth = checked_depth(proposal);
        ++out.evaluations;
        if (depth < out.depth) {
            out.config = std::move(proposal);
            out.depth = depth;
            out.history.push_back({restart, iteration, depth});
            stale = 0;
        } else if (options.accept_ties && depth == out.depth) {
            out.config = std::move(proposal);
        }
    }
    return out;
}

} // namespace detail

/**
 * Hill descent over configurations with the origin in the core. Each
 * restart replaces one uniformly chosen point at a time, repairing the
 * colour's anchor if the origin left the hull (or rejecting an anchor
 * proposal that evicts it), and accepts strict depth decreases; it stops
 * after `steps` consecutive non-improving proposals.
 */
inline SearchReport minimize_depth(int d, int restarts, std::size_t steps, std::uint64_t seed,
                                   const SearchOptions& options = {})
{
    if (d < 1 || restarts < 1 || steps < 1)
        throw InputError("minimize_depth: dimension and budgets must be positive");
    auto per_range = detail::map_ranges(static_cast<std::size_t>(restarts), 1, [&](std::size_t begin, std::size_t end) {
        std::vector<detail::RestartResult> results;
        for (std::size_t r = begin; r < end; ++r)
            results.push_back(detail::descend(d, steps, seed, static_cast<int>(r), options));
        return results;
    });

    SearchReport report;
    report.dimension = d;
    bool first = true;
    int restart = 0;
    for (auto& range : per_range)
        for (auto& result : range) {
            report.evaluations += result.evaluations;
            report.history.insert(report.history.end(), result.history.begin(), result.history.end());
            report.restarts.push_back({restart, result.depth, result.config});
            if (first || result.depth < report.best_depth) {
                report.best_depth = result.depth;
                report.best_config = std::move(result.config);
                report.best_restart = restart;
                first = false;
            }
            ++restart;
        }
    return report;
}

} // namespace cdepth

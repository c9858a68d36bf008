/**
 * Deformed cross position: two points in each of d colours whose 2^d
 * colourful simplicial cones cover R^d. Besides deciding it, this header
 * constructs one inside a configuration from a direction x lying in at
 * most d-1 D-coloured cones: for each colour pick w_i outside every cone
 * containing x and z_i from one cone containing x.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "cdepth/arrangement.hpp"
#include "cdepth/configuration.hpp"
#include "cdepth/depth.hpp"
#include "cdepth/validation.hpp"

namespace cdepth {

/// Two points of one colour.
using PointPair = std::array<Point, 2>;

/// The 2^d cones with one point from each pair; bit i of the cone index selects pairs[i][1].
inline std::vector<std::vector<Point>> pair_cones(std::span<const PointPair> pairs)
{
    const std::size_t d = pairs.size();
    std::vector<std::vector<Point>> cones;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        std::vector<Point> gens;
        for (std::size_t i = 0; i < d; ++i)
            gens.push_back(pairs[i][(mask >> i) & 1U]);
        cones.push_back(std::move(gens));
    }
    return cones;
}

inline CoverageCertificate is_deformed_cross_position(std::span<const PointPair> pairs)
{
    const std::size_t d = pairs.size();
    if (d == 0)
        throw InputError("no colour pairs given");
    for (std::size_t i = 0; i < d; ++i)
        for (const auto& p : pairs[i]) {
            if (p.size() != d)
                throw InputError("pair point of colour " + std::to_string(i + 1) + " has dimension " +
                                 std::to_string(p.size()) + ", expected " + std::to_string(d));
            if (is_zero(p))
                throw InputError("pair point of colour " + std::to_string(i + 1) + " is the origin");
        }
    const auto cones = pair_cones(pairs);
    return covers_space(std::span<const std::vector<Point>>(cones));
}

/// Pairs document: the configuration format with d classes of 2 points.
inline std::vector<PointPair> parse_pairs(std::string_view text)
{
    const auto doc = detail::parse_json_text(text);
    const int d = detail::parse_dimension(doc);
    const auto classes = detail::parse_classes(doc, d, d, 2);
    std::vector<PointPair> pairs;
    for (const auto& cls : classes)
        pairs.push_back({cls[0], cls[1]});
    return pairs;
}

struct CrossPosition {
    /// The d colours (0-based, ascending).
    std::vector<int> colours;
    /// For colours[i]: (z index, w index) within that colour.
    std::vector<std::pair<int, int>> pairs;
    /// The direction x of low D-depth the construction started from.
    Point direction;
    std::size_t direction_depth = 0;
    std::string direction_source;
    CoverageCertificate certificate;

    std::vector<PointPair> points(const Configuration& config) const
    {
        std::vector<PointPair> out;
        for (std::size_t i = 0; i < colours.size(); ++i)
            out.push_back({config.point(colours[i], pairs[i].first), config.point(colours[i], pairs[i].second)});
        return out;
    }
};

struct CrossSearchFailure {
    /// Smallest D-depth among evaluated candidates (SIZE_MAX if none evaluated).
    std::size_t min_observed_depth = SIZE_MAX;
    std::size_t candidates_tried = 0;
    std::string reason;
};

struct CrossSearchBudget {
    /// Include every cell of the D-cone facet arrangement as a candidate (honoured for d <= 3).
    bool exhaustive_cells = true;
    std::size_t random_directions = 256;
};

using CrossSearchResult = std::variant<CrossPosition, CrossSearchFailure>;

namespace detail {

struct Candidate {
    Point direction;
    const char* source;
};

inline std::vector<Candidate> antipode_candidates(const Configuration& config)
{
    std::vector<Candidate> out;
    for (const auto& cls : config.colours)
        for (const auto& p : cls)
            if (!is_zero(p))
                out.push_back({negated(p), "antipode"});
    return out;
}

inline std::vector<Candidate> cell_candidates(const DConeFamily& family)
{
    std::vector<std::vector<Point>> gens;
    for (std::size_t k = 0; k < family.size(); ++k)
        gens.push_back(family.cone(k).generators());
    const auto hyperplanes = facet_hyperplanes(std::span<const std::vector<Point>>(gens));
    std::vector<Candidate> out;
    const std::size_t d = family.colours().size();
    for (auto& cell : enumerate_cells(hyperplanes, d))
        out.push_back({std::move(cell.witness), "cell"});
    return out;
}

inline std::vector<Candidate> random_candidates(std::size_t d, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-(1L << 16), 1L << 16);
    std::vector<Candidate> out;
    while (out.size() < count) {
        Point x(d);
        for (auto& v : x)
            v = coord(rng);
        if (!is_zero(x))
            out.push_back({std::move(x), "random"});
    }
    return out;
}

/// Build the pairs from a direction in 1..d-1 cones; nullopt if the direction is unusable.
inline std::optional<CrossPosition> cross_position_from_direction(const Configuration& config,
                                                                  const DConeFamily& family, const Point& x,
                                                                  const std::vector<std::size_t>& containing)
{
    const std::size_t d = family.colours().size();
    if (containing.empty() || containing.size() > d - 1)
        return std::nullopt;
    CrossPosition cp;
    cp.colours = family.colours();
    const auto& z = family.choice(containing.front());
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<bool> used(config.points_per_colour(), false);
        for (const auto k : containing)
            used[family.choice(k)[i]] = true;
        const auto w = std::find(used.begin(), used.end(), false);
        cp.pairs.emplace_back(z[i], static_cast<int>(w - used.begin()));
    }
    cp.direction = x;
    cp.direction_depth = containing.size();
    cp.certificate = is_deformed_cross_position(cp.points(config));
    if (!cp.certificate.covered)
        return std::nullopt;
    return cp;
}

} // namespace detail

/**
 * Find two points per colour of D in deformed cross position.
 *
 * Candidate directions, in priority order: antipodes of all configuration
 * points, the cell witnesses of the D-cone facet arrangement (d <= 3 and
 * budget.exhaustive_cells), then seeded random directions. The first
 * candidate with D-depth in [1, d-1] whose construction verifies wins.
 */
inline CrossSearchResult find_cross_position(const Configuration& config, std::vector<int> colours,
                                             const CrossSearchBudget& budget, std::uint64_t seed)
{
    validate_colour_set(config, colours);
    std::sort(colours.begin(), colours.end());
    if (!validate(config).zero_interior)
        throw InputError("cross-position search needs the origin in the interior of every colour's hull");
    const DConeFamily family(config, colours);
    const std::size_t d = static_cast<std::size_t>(config.dimension);

    CrossSearchFailure failure;
    auto try_batch = [&](const std::vector<detail::Candidate>& batch) -> std::optional<CrossPosition> {
        // depths are evaluated concurrently; the earliest usable candidate in batch order wins
        auto per_range = detail::map_ranges(batch.size(), 64, [&](std::size_t begin, std::size_t end) {
            std::vector<std::vector<std::size_t>> hits;
            for (std::size_t k = begin; k < end; ++k)
                hits.push_back(family.containing(batch[k].direction));
            return hits;
        });
        std::size_t k = 0;
        for (const auto& range : per_range)
            for (const auto& containing : range) {
                const auto& cand = batch[k++];
                ++failure.candidates_tried;
                failure.min_observed_depth = std::min(failure.min_observed_depth, containing.size());
                if (auto cp = detail::cross_position_from_direction(config, family, cand.direction, containing)) {
                    cp->direction_source = cand.source;
                    return cp;
                }
            }
        return std::nullopt;
    };

    if (auto cp = try_batch(detail::antipode_candidates(config)))
        return *cp;
    if (budget.exhaustive_cells && d <= 3)
        if (auto cp = try_batch(detail::cell_candidates(family)))
            return *cp;
    if (auto cp = try_batch(detail::random_candidates(d, budget.random_directions, seed)))
        return *cp;

    failure.reason = "no direction with D-depth at most d-1 = " + std::to_string(d - 1) + " found";
    return failure;
}

} // namespace cdepth

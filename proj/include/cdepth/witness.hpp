/**
 * Constructive lower bound: floor((d+2)^2/4) distinct colourful simplices
 * containing the origin.
 *
 * Stage i (colours in order) takes a cross position P_i on the colours
 * other than i. Every colour-i point v not used by an earlier P_j has its
 * antipode in one of P_i's cones, and v together with that cone's
 * generators is a colourful simplex containing the origin. Earlier stages
 * consume at most two colour-i points each, so stage i contributes at
 * least d+1-2(i-1) new simplices.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdepth/cross_position.hpp"
#include "cdepth/depth.hpp"
#include "cdepth/validation.hpp"

namespace cdepth {

/// floor((d+2)^2 / 4)
inline long long theorem_bound(long long d)
{
    if (d < 1)
        throw InputError("theorem_bound: d must be positive");
    return (d + 2) * (d + 2) / 4;
}

struct WitnessStage {
    int colour = 0;
    /// Present when the stage used a cross position; absent on fallback.
    std::optional<CrossPosition> cross;
    /// Colour-`colour` point indices not used by earlier cross positions.
    std::vector<int> fresh_vertices;
    std::size_t emitted = 0;
    std::string note;
};

struct WitnessSet {
    int dimension = 0;
    std::vector<Transversal> simplices;
    std::vector<WitnessStage> stage_log;
    long long bound = 0;
    bool fallback = false;
};

namespace detail {

inline WitnessSet enumeration_fallback(const Configuration& config, WitnessSet ws, std::string note)
{
    ws.fallback = true;
    ws.simplices.clear();
    WitnessStage stage;
    stage.colour = -1;
    stage.note = std::move(note);
    for (auto& w : colourful_depth(config).witnesses)
        ws.simplices.push_back(std::move(w.transversal));
    stage.emitted = ws.simplices.size();
    ws.stage_log.push_back(std::move(stage));
    return ws;
}

} // namespace detail

/**
 * Witness simplices for the origin. Requires the origin in the core; when
 * the staged construction cannot run (boundary origin, failed cross
 * position search) every containing transversal is enumerated instead.
 */
inline WitnessSet generate_witnesses(const Configuration& config, std::uint64_t seed,
                                     const CrossSearchBudget& budget = {})
{
    const int d = config.dimension;
    const auto report = validate(config);
    if (!report.zero_in_core)
        throw InputError("generate_witnesses: the origin is not in the core of the configuration");

    WitnessSet ws;
    ws.dimension = d;
    ws.bound = theorem_bound(d);
    if (!report.zero_interior)
        return detail::enumeration_fallback(config, std::move(ws), "origin on the boundary of a colour's hull");

    std::vector<std::vector<bool>> used(d + 1, std::vector<bool>(d + 1, false));
    std::set<Transversal> seen;
    for (int stage = 0; d + 1 - 2 * stage > 0; ++stage) {
        std::vector<int> colours;
        for (int c = 0; c <= d; ++c)
            if (c != stage)
                colours.push_back(c);
        auto found = find_cross_position(config, colours, budget, seed + static_cast<std::uint64_t>(stage));
        if (auto* failure = std::get_if<CrossSearchFailure>(&found))
            return detail::enumeration_fallback(config, std::move(ws),
                                                "stage " + std::to_string(stage + 1) + ": " + failure->reason);
        auto& cross = std::get<CrossPosition>(found);
        const auto pair_points = cross.points(config);
        const auto cones = pair_cones(pair_points);
        std::vector<SimplicialCone> simplicial(cones.begin(), cones.end());

        WitnessStage log;
        log.colour = stage;
        for (int v = 0; v <= d; ++v) {
            if (used[stage][v])
                continue;
            log.fresh_vertices.push_back(v);
            const IntVector antipode = primitive_direction(negated(config.point(stage, v)));
            std::optional<std::size_t> mask;
            for (std::size_t k = 0; k < simplicial.size() && !mask; ++k)
                if (simplicial[k].contains(antipode))
                    mask = k;
            if (!mask)
                return detail::enumeration_fallback(config, std::move(ws), "antipode outside a verified cover");
            Transversal t{std::vector<int>(d + 1, 0)};
            t.choice[stage] = v;
            for (std::size_t i = 0; i < cross.colours.size(); ++i) {
                const auto& pr = cross.pairs[i];
                t.choice[cross.colours[i]] = ((*mask >> i) & 1U) ? pr.second : pr.first;
            }
            if (!simplex_contains_origin(vertices_of(config, t)).contains || !seen.insert(t).second)
                return detail::enumeration_fallback(config, std::move(ws), "staged simplex failed re-verification");
            ws.simplices.push_back(std::move(t));
            ++log.emitted;
        }
        for (std::size_t i = 0; i < cross.colours.size(); ++i) {
            used[cross.colours[i]][cross.pairs[i].first] = true;
            used[cross.colours[i]][cross.pairs[i].second] = true;
        }
        log.cross = std::move(cross);
        ws.stage_log.push_back(std::move(log));
    }
    if (static_cast<long long>(ws.simplices.size()) < ws.bound)
        return detail::enumeration_fallback(config, std::move(ws), "staged construction fell short of the bound");
    return ws;
}

/// Re-check a witness set from scratch: shape, distinctness, containment and the bound.
inline bool verify_witness_set(const Configuration& config, const WitnessSet& ws)
{
    const int d = config.dimension;
    if (ws.dimension != d || ws.bound != theorem_bound(d))
        return false;
    if (static_cast<long long>(ws.simplices.size()) < ws.bound)
        return false;
    std::set<Transversal> seen;
    for (const auto& t : ws.simplices) {
        if (static_cast<int>(t.choice.size()) != d + 1)
            return false;
        for (const int j : t.choice)
            if (j < 0 || j > d)
                return false;
        if (!seen.insert(t).second)
            return false;
        if (!simplex_contains_origin(vertices_of(config, t)).contains)
            return false;
    }
    return true;
}

} // namespace cdepth

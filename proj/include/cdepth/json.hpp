/**
 * JSON forms of the reports. Colour labels are 1-based in every document;
 * point indices within a colour are 0-based.
 */
#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "cdepth/arrangement.hpp"
#include "cdepth/configuration.hpp"
#include "cdepth/cross_position.hpp"
#include "cdepth/depth.hpp"
#include "cdepth/search.hpp"
#include "cdepth/validation.hpp"
#include "cdepth/witness.hpp"

namespace cdepth {

using ojson = nlohmann::ordered_json;

inline std::string sign_string(const SignVector& s)
{
    std::string out;
    out.reserve(s.size());
    for (const auto x : s)
        out.push_back(x > 0 ? '+' : (x < 0 ? '-' : '0'));
    return out;
}

inline ojson to_json(const ValidationReport& r)
{
    ojson j;
    j["zero_in_core"] = r.zero_in_core;
    j["zero_interior"] = r.zero_interior;
    j["general_position"] = r.general_position;
    j["degenerate_count"] = r.degenerate_count;
    j["degenerate_witnesses"] = r.degenerate_witnesses;
    return j;
}

inline ojson to_json(const DepthReport& r)
{
    ojson j;
    j["depth"] = r.depth;
    auto witnesses = ojson::array();
    for (const auto& w : r.witnesses) {
        ojson item;
        item["choice"] = w.transversal.choice;
        item["coeffs"] = point_to_json(w.coefficients);
        witnesses.push_back(std::move(item));
    }
    j["witnesses"] = std::move(witnesses);
    return j;
}

inline ojson to_json(const CoverageCertificate& c)
{
    ojson j;
    j["covered"] = c.covered;
    j["cells_checked"] = c.cells_checked;
    auto planes = ojson::array();
    for (const auto& h : c.hyperplanes)
        planes.push_back(point_to_json(to_point(h.normal)));
    j["hyperplanes"] = std::move(planes);
    if (c.covered) {
        auto cells = ojson::array();
        for (const auto& [signs, cone] : c.cell_cones) {
            ojson item;
            item["signs"] = sign_string(signs);
            item["cone"] = cone;
            cells.push_back(std::move(item));
        }
        j["cell_cones"] = std::move(cells);
    } else {
        j["uncovered_direction"] = point_to_json(*c.uncovered_direction);
    }
    return j;
}

inline ojson to_json(const CrossPosition& cp)
{
    ojson j;
    j["found"] = true;
    auto colours = ojson::array();
    auto pairs = ojson::array();
    for (std::size_t i = 0; i < cp.colours.size(); ++i) {
        colours.push_back(cp.colours[i] + 1);
        ojson p;
        p["colour"] = cp.colours[i] + 1;
        p["z"] = cp.pairs[i].first;
        p["w"] = cp.pairs[i].second;
        pairs.push_back(std::move(p));
    }
    j["colours"] = std::move(colours);
    j["pairs"] = std::move(pairs);
    j["direction"] = point_to_json(cp.direction);
    j["direction_depth"] = cp.direction_depth;
    j["direction_source"] = cp.direction_source;
    j["certificate"] = to_json(cp.certificate);
    return j;
}

inline ojson to_json(const CrossSearchFailure& f)
{
    ojson j;
    j["found"] = false;
    if (f.min_observed_depth == SIZE_MAX)
        j["min_observed_depth"] = nullptr;
    else
        j["min_observed_depth"] = f.min_observed_depth;
    j["candidates_tried"] = f.candidates_tried;
    j["reason"] = f.reason;
    return j;
}

inline ojson to_json(const CrossSearchResult& r)
{
    return std::visit([](const auto& v) { return to_json(v); }, r);
}

inline ojson to_json(const WitnessSet& ws)
{
    ojson j;
    j["d"] = ws.dimension;
    j["bound"] = ws.bound;
    j["count"] = ws.simplices.size();
    j["fallback"] = ws.fallback;
    auto simplices = ojson::array();
    for (const auto& t : ws.simplices)
        simplices.push_back(t.choice);
    j["simplices"] = std::move(simplices);
    auto stages = ojson::array();
    for (const auto& s : ws.stage_log) {
        ojson item;
        item["colour"] = s.colour >= 0 ? ojson(s.colour + 1) : ojson(nullptr);
        item["cross_position"] = s.cross ? to_json(*s.cross) : ojson(nullptr);
        item["fresh_vertices"] = s.fresh_vertices;
        item["emitted"] = s.emitted;
        item["note"] = s.note;
        stages.push_back(std::move(item));
    }
    j["stages"] = std::move(stages);
    return j;
}

/// Reference constants for a dimension: proven, earlier and conjectured values of the minimum depth.
inline ojson depth_bounds_json(int d)
{
    ojson j;
    j["lower_bound"] = theorem_bound(d);
    j["prior_lower"] = 2 * d;
    j["conjecture"] = d * d + 1;
    j["bm_bound"] = (d * (d + 1) + 4) / 5;
    return j;
}

inline ojson to_json(const SearchReport& r)
{
    ojson j;
    j["d"] = r.dimension;
    j["best_depth"] = r.best_depth;
    j["best_restart"] = r.best_restart;
    j["evaluations"] = r.evaluations;
    j["comparison"] = depth_bounds_json(r.dimension);
    auto history = ojson::array();
    for (const auto& h : r.history)
        history.push_back(ojson{{"restart", h.restart}, {"iteration", h.iteration}, {"depth", h.depth}});
    j["history"] = std::move(history);
    auto finals = ojson::array();
    for (const auto& o : r.restarts)
        finals.push_back(o.depth);
    j["restart_depths"] = std::move(finals);
    j["best_config"] = to_json(r.best_config);
    return j;
}

} // namespace cdepth

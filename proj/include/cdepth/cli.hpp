/**
 * Command-line front end. Machine-readable JSON goes to `out`, a short
 * human summary to `err`.
 *
 * Exit codes: 0 success, 1 a mathematical invariant or bound was violated
 * (the counterexample is written to `out`), 2 invalid input or usage.
 */
#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdepth/json.hpp"

namespace cdepth::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// 64-bit FNV-1a, hex encoded.
inline std::string digest(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << h;
    return s.str();
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// "1,3" (1-based colour labels) to 0-based indices.
inline std::vector<int> parse_colour_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
            out.push_back(v - 1);
        } catch (const std::logic_error&) {
            throw InputError("malformed colour label '" + item + "' in --colours");
        }
    }
    return out;
}

inline Point parse_direction(const std::string& text)
{
    Point p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        p.push_back(parse_rational(item));
    return p;
}

struct Manifest {
    std::string command;
    std::vector<std::string> inputs;
    std::vector<std::string> input_digests;
    std::optional<std::uint64_t> seed;
    ojson flags = ojson::object();
};

namespace detail {

inline void emit(std::ostream& out, const Manifest& m, const ojson& result, const char* result_key = "result")
{
    ojson manifest;
    manifest["command"] = m.command;
    manifest["inputs"] = m.inputs;
    manifest["input_digests"] = m.input_digests;
    manifest["seed"] = m.seed ? ojson(*m.seed) : ojson(nullptr);
    manifest["flags"] = m.flags;
    manifest["version"] = kVersion;
    const std::string body = result.dump();
    manifest["output_digest"] = digest(body);
    ojson doc;
    doc["manifest"] = std::move(manifest);
    doc[result_key] = result;
    out << doc.dump(2) << '\n';
}

inline Configuration load_configuration(const std::string& path, Manifest& m)
{
    const std::string text = read_file(path);
    m.inputs.push_back(path);
    m.input_digests.push_back(digest(text));
    try {
        return parse_configuration(text);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline void require_size_allowed(int d, bool allow_large)
{
    if (d >= 5 && !allow_large)
        throw InputError("exact coverage at d = " + std::to_string(d) + " enumerates arrangements of up to " +
                         std::to_string(d * (1 << (d - 1))) +
                         " hyperplanes per cross position (tens of thousands of cells and more); "
                         "pass --allow-large-d to run it");
}

struct Check {
    std::string name;
    bool passed = true;
    std::string detail;
};

/// Invariant suite for one configuration.
inline std::vector<Check> verify_configuration(const Configuration& config, std::uint64_t seed, bool allow_large)
{
    const int d = config.dimension;
    std::vector<Check> checks;
    const auto report = validate(config);
    checks.push_back({"validation", true,
                      std::string("zero_in_core=") + (report.zero_in_core ? "true" : "false") +
                          " zero_interior=" + (report.zero_interior ? "true" : "false") +
                          " general_position=" + (report.general_position ? "true" : "false")});

    const auto depth = colourful_depth(config);
    {
        Check c{"witness_soundness", true, std::to_string(depth.witnesses.size()) + " witnesses re-evaluated"};
        for (const auto& w : depth.witnesses) {
            Rational total = 0;
            Point combo(d, Rational(0));
            bool nonneg = true;
            for (int k = 0; k <= d; ++k) {
                const auto& coef = w.coefficients[k];
                nonneg &= coef >= 0;
                total += coef;
                for (int r = 0; r < d; ++r)
                    combo[r] += coef * config.point(k, w.transversal.choice[k])[r];
            }
            if (!nonneg || total != 1 || !is_zero(combo)) {
                c.passed = false;
                c.detail = "witness does not reproduce the origin";
                break;
            }
        }
        if (colourful_depth_count(config) != depth.depth) {
            c.passed = false;
            c.detail = "integer and rational depth routes disagree";
        }
        checks.push_back(c);
    }

    {
        Check c{"antipodal_equivalence", true, ""};
        if (!report.general_position) {
            c.detail = "skipped: configuration not in general position";
        } else {
            const std::size_t total = transversal_count(config);
            const std::size_t samples = std::min<std::size_t>(total, 256);
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<std::size_t> rank(0, total - 1);
            for (std::size_t s = 0; s < samples && c.passed; ++s) {
                const auto t = transversal_at(samples == total ? s : rank(rng), d + 1, d + 1);
                const bool inside = simplex_contains_origin(vertices_of(config, t)).contains;
                for (int i = 0; i <= d; ++i)
                    if (antipodal_check(config, t, i) != inside) {
                        c.passed = false;
                        c.detail = "disagreement on a transversal";
                        break;
                    }
            }
            if (c.passed)
                c.detail = std::to_string(samples) + " transversals x " + std::to_string(d + 1) + " colours agree";
        }
        checks.push_back(c);
    }

    if (!report.zero_in_core) {
        checks.push_back({"depth_lower_bound", true, "skipped: origin not in the core"});
        return checks;
    }
    const long long bound = std::max<long long>(2LL * d, theorem_bound(d));
    checks.push_back({"depth_lower_bound", static_cast<long long>(depth.depth) >= bound,
                      "depth " + std::to_string(depth.depth) + " vs bound " + std::to_string(bound)});

    {
        Check c{"d_depth_at_least_one", true, ""};
        for (int i = 0; i <= d && c.passed && report.zero_interior; ++i) {
            std::vector<int> colours;
            for (int k = 0; k <= d; ++k)
                if (k != i)
                    colours.push_back(k);
            const DConeFamily family(config, colours);
            for (const auto& p : config.colours[i]) {
                if (is_zero(p))
                    continue;
                if (family.depth(p) < 1 || family.depth(negated(p)) < 1) {
                    c.passed = false;
                    c.detail = "a point of colour " + std::to_string(i + 1) + " has D-depth 0";
                    break;
                }
            }
        }
        if (!report.zero_interior)
            c.detail = "skipped: origin not interior to every colour's hull";
        else if (c.passed)
            c.detail = "every point and antipode lies in a cone of the other colours";
        checks.push_back(c);
    }

    if (d >= 5 && !allow_large) {
        checks.push_back({"witness_construction", true, "skipped: d >= 5 needs --allow-large-d"});
    } else {
        const auto ws = generate_witnesses(config, seed);
        checks.push_back({"witness_construction", verify_witness_set(config, ws),
                          std::to_string(ws.simplices.size()) + " witnesses (bound " + std::to_string(ws.bound) +
                              (ws.fallback ? ", enumeration fallback)" : ", staged construction)")});
    }
    return checks;
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact colourful simplicial depth toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    int dim = 0;
    std::uint64_t seed = 0;
    std::string config_path, colours_text, dir_text;
    int restarts = 20;
    std::size_t steps = 500;
    std::size_t random_dirs = 256;
    bool no_cells = false;
    bool allow_large = false;
    bool accept_ties = false;

    auto* gen = app.add_subcommand("gen", "emit a random valid configuration");
    gen->add_option("-d", dim, "dimension")->required()->check(CLI::Range(1, 16));
    gen->add_option("--seed", seed, "random seed");

    auto* depth = app.add_subcommand("depth", "colourful simplicial depth of the origin");
    depth->add_option("config", config_path, "configuration file")->required();

    auto* ddepth = app.add_subcommand("ddepth", "number of D-coloured cones containing a direction");
    ddepth->add_option("config", config_path, "configuration file")->required();
    ddepth->add_option("--colours", colours_text, "comma-separated colour labels (1-based), d of them")->required();
    ddepth->add_option("--dir", dir_text, "comma-separated rational coordinates")->required();

    auto* cross = app.add_subcommand("cross", "find a deformed cross position on a colour subset");
    cross->add_option("config", config_path, "configuration file")->required();
    cross->add_option("--colours", colours_text, "comma-separated colour labels (1-based), d of them")->required();
    cross->add_option("--seed", seed, "random seed");
    cross->add_option("--random-directions", random_dirs, "random candidate directions");
    cross->add_flag("--no-cells", no_cells, "skip arrangement-cell candidates");
    cross->add_flag("--allow-large-d", allow_large, "permit exact coverage checks for d >= 5");

    auto* cross_check = app.add_subcommand("cross-check", "decide deformed cross position of a pairs file");
    cross_check->add_option("pairs", config_path, "pairs file (d classes of 2 points)")->required();
    cross_check->add_flag("--allow-large-d", allow_large, "permit exact coverage checks for d >= 5");

    auto* witness = app.add_subcommand("witness", "staged lower-bound witness simplices");
    witness->add_option("config", config_path, "configuration file")->required();
    witness->add_option("--seed", seed, "random seed");
    witness->add_flag("--allow-large-d", allow_large, "permit exact coverage checks for d >= 5");

    auto* search = app.add_subcommand("search", "hill descent on colourful depth");
    search->add_option("-d", dim, "dimension")->required()->check(CLI::Range(1, 8));
    search->add_option("--restarts", restarts, "random restarts")->check(CLI::PositiveNumber);
    search->add_option("--steps", steps, "non-improving proposals before a restart stops")->check(CLI::PositiveNumber);
    search->add_option("--seed", seed, "random seed");
    search->add_flag("--accept-ties", accept_ties, "also move to proposals of equal depth");

    auto* verify = app.add_subcommand("verify", "run the invariant suite on one configuration");
    verify->add_option("config", config_path, "configuration file")->required();
    verify->add_option("--seed", seed, "seed for transversal sampling and cross-position search");
    verify->add_flag("--allow-large-d", allow_large, "permit exact coverage checks for d >= 5");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, err, err) == 0 ? kExitOk : kExitUsage;
    }

    Manifest m;
    m.command = app.get_subcommands().front()->get_name();
    try {
        if (gen->parsed()) {
            m.seed = seed;
            m.flags["d"] = dim;
            const auto config = random_configuration(dim, seed);
            // the document stays a plain configuration file; the manifest rides along as an extra key
            ojson doc = to_json(config);
            ojson manifest;
            manifest["command"] = m.command;
            manifest["inputs"] = ojson::array();
            manifest["input_digests"] = ojson::array();
            manifest["seed"] = seed;
            manifest["flags"] = m.flags;
            manifest["version"] = kVersion;
            manifest["output_digest"] = digest(doc.dump());
            doc["manifest"] = std::move(manifest);
            out << doc.dump(2) << '\n';
            err << "generated a d=" << dim << " configuration (seed " << seed << ")\n";
            return kExitOk;
        }
        if (depth->parsed()) {
            const auto config = detail::load_configuration(config_path, m);
            const auto report = colourful_depth(config);
            detail::emit(out, m, to_json(report));
            err << "colourful depth of the origin: " << report.depth << '\n';
            return kExitOk;
        }
        if (ddepth->parsed()) {
            const auto config = detail::load_configuration(config_path, m);
            const auto colours = parse_colour_list(colours_text);
            const auto dir = parse_direction(dir_text);
            m.flags["colours"] = colours_text;
            m.flags["dir"] = dir_text;
            const std::size_t n = d_depth(config, colours, dir);
            ojson result;
            auto labels = ojson::array();
            for (const int c : colours)
                labels.push_back(c + 1);
            result["colours"] = std::move(labels);
            result["direction"] = point_to_json(dir);
            result["d_depth"] = n;
            detail::emit(out, m, result);
            err << "D-depth: " << n << '\n';
            return kExitOk;
        }
        if (cross->parsed()) {
            const auto config = detail::load_configuration(config_path, m);
            detail::require_size_allowed(config.dimension, allow_large);
            m.flags["allow_large_d"] = allow_large;
            const auto colours = parse_colour_list(colours_text);
            m.seed = seed;
            m.flags["colours"] = colours_text;
            m.flags["random_directions"] = random_dirs;
            m.flags["cells"] = !no_cells;
            CrossSearchBudget budget{!no_cells, random_dirs};
            const auto result = find_cross_position(config, colours, budget, seed);
            const bool found = std::holds_alternative<CrossPosition>(result);
            // with exhaustive candidates at d <= 3 a failure below depth d^2+d contradicts the existence lemma
            const bool exhaustive = !no_cells && config.dimension <= 3;
            const auto dep = colourful_depth_count(config);
            const std::size_t threshold = static_cast<std::size_t>(config.dimension * (config.dimension + 1));
            detail::emit(out, m, to_json(result));
            if (found) {
                err << "deformed cross position found\n";
                return kExitOk;
            }
            err << "no cross position found: " << std::get<CrossSearchFailure>(result).reason << '\n';
            if (exhaustive && dep < threshold) {
                err << "violation: depth " << dep << " < d^2+d but exhaustive search failed\n";
                return kExitViolation;
            }
            return kExitOk;
        }
        if (cross_check->parsed()) {
            const std::string text = read_file(config_path);
            m.inputs.push_back(config_path);
            m.input_digests.push_back(digest(text));
            std::vector<PointPair> pairs;
            try {
                pairs = parse_pairs(text);
            } catch (const InputError& e) {
                throw InputError(config_path + ": " + e.what());
            }
            detail::require_size_allowed(static_cast<int>(pairs.size()), allow_large);
            m.flags["allow_large_d"] = allow_large;
            const auto cert = is_deformed_cross_position(pairs);
            detail::emit(out, m, to_json(cert));
            err << (cert.covered ? "covered" : "not covered") << " (" << cert.cells_checked << " cells checked)\n";
            return kExitOk;
        }
        if (witness->parsed()) {
            const auto config = detail::load_configuration(config_path, m);
            detail::require_size_allowed(config.dimension, allow_large);
            m.flags["allow_large_d"] = allow_large;
            m.seed = seed;
            const auto ws = generate_witnesses(config, seed);
            const bool ok = verify_witness_set(config, ws);
            detail::emit(out, m, to_json(ws));
            err << ws.simplices.size() << " witness simplices (bound " << ws.bound << ")"
                << (ws.fallback ? " via enumeration fallback" : "") << '\n';
            if (!ok) {
                err << "violation: witness set failed verification\n";
                return kExitViolation;
            }
            return kExitOk;
        }
        if (search->parsed()) {
            m.seed = seed;
            m.flags["d"] = dim;
            m.flags["restarts"] = restarts;
            m.flags["steps"] = steps;
            m.flags["accept_ties"] = accept_ties;
            const auto report = minimize_depth(dim, restarts, steps, seed, SearchOptions{accept_ties});
            detail::emit(out, m, to_json(report));
            err << "best depth " << report.best_depth << " (proven lower bound " << theorem_bound(dim)
                << ", conjectured minimum " << dim * dim + 1 << ")\n";
            return kExitOk;
        }
        if (verify->parsed()) {
            const auto config = detail::load_configuration(config_path, m);
            m.seed = seed;
            m.flags["allow_large_d"] = allow_large;
            const auto checks = detail::verify_configuration(config, seed, allow_large);
            bool all = true;
            ojson result;
            auto list = ojson::array();
            for (const auto& c : checks) {
                all &= c.passed;
                list.push_back(ojson{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
                err << (c.passed ? "pass  " : "FAIL  ") << c.name << ": " << c.detail << '\n';
            }
            result["passed"] = all;
            result["checks"] = std::move(list);
            detail::emit(out, m, result);
            return all ? kExitOk : kExitViolation;
        }
    } catch (const TheoremViolation& e) {
        ojson result;
        result["violation"] = e.what();
        result["configuration"] = to_json(e.configuration());
        detail::emit(out, m, result);
        err << "violation: " << e.what() << '\n';
        return kExitViolation;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace cdepth::cli

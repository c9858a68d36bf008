/**
 * Colourful configurations: d+1 colour classes of d+1 points in R^d, with
 * the query point fixed at the origin.
 */
#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cdepth/exact.hpp"

namespace cdepth {

/// Malformed document. The message carries a line/column or a field path.
class ParseError : public InputError {
  public:
    using InputError::InputError;
};

/// Well-formed document with the wrong number of classes, points or coordinates.
class CountMismatch : public InputError {
  public:
    using InputError::InputError;
};

struct Configuration {
    int dimension = 0;
    /// colours[c][j] is point j of colour c.
    std::vector<std::vector<Point>> colours;

    int colour_count() const { return dimension + 1; }
    int points_per_colour() const { return dimension + 1; }
    const Point& point(int colour, int index) const { return colours[colour][index]; }

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// One point index per colour; names a colourful simplex.
struct Transversal {
    std::vector<int> choice;

    friend auto operator<=>(const Transversal&, const Transversal&) = default;
    friend bool operator==(const Transversal&, const Transversal&) = default;
};

/// Vertices of the colourful simplex named by t, in colour order.
inline std::vector<Point> vertices_of(const Configuration& config, const Transversal& t)
{
    std::vector<Point> out;
    out.reserve(t.choice.size());
    for (std::size_t c = 0; c < t.choice.size(); ++c)
        out.push_back(config.point(static_cast<int>(c), t.choice[c]));
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace detail {

inline std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

inline nlohmann::json parse_json_text(std::string_view text)
{
    try {
        return nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
    }
}

inline Point parse_point_json(const nlohmann::json& node, int dimension, const std::string& where)
{
    if (!node.is_array())
        throw ParseError(where + ": expected an array of " + std::to_string(dimension) + " rational strings");
    if (static_cast<int>(node.size()) != dimension)
        throw CountMismatch(where + ": expected " + std::to_string(dimension) + " coordinates, got " +
                            std::to_string(node.size()));
    Point p;
    p.reserve(node.size());
    for (std::size_t k = 0; k < node.size(); ++k) {
        const std::string field = where + "[" + std::to_string(k) + "]";
        const auto& coord = node[k];
        try {
            if (coord.is_string())
                p.push_back(parse_rational(coord.get<std::string>()));
            else if (coord.is_number_integer())
                p.push_back(parse_rational(coord.dump()));
            else
                throw ParseError("expected a rational string");
        } catch (const InputError& e) {
            throw ParseError(field + ": " + e.what());
        }
    }
    return p;
}

/// The "colours" array of a document: `classes` classes of `per_class` points.
inline std::vector<std::vector<Point>> parse_classes(const nlohmann::json& doc, int dimension, int classes,
                                                     int per_class)
{
    if (!doc.contains("colours"))
        throw ParseError("missing field 'colours'");
    const auto& colours = doc["colours"];
    if (!colours.is_array())
        throw ParseError("colours: expected an array of colour classes");
    if (static_cast<int>(colours.size()) != classes)
        throw CountMismatch("colours: expected " + std::to_string(classes) + " colour classes, got " +
                            std::to_string(colours.size()));
    std::vector<std::vector<Point>> out(classes);
    for (int c = 0; c < classes; ++c) {
        const std::string where = "colours[" + std::to_string(c) + "]";
        const auto& cls = colours[c];
        if (!cls.is_array())
            throw ParseError(where + ": expected an array of points");
        if (static_cast<int>(cls.size()) != per_class)
            throw CountMismatch(where + ": expected " + std::to_string(per_class) + " points, got " +
                                std::to_string(cls.size()));
        for (int j = 0; j < per_class; ++j)
            out[c].push_back(parse_point_json(cls[j], dimension, where + "[" + std::to_string(j) + "]"));
    }
    return out;
}

inline int parse_dimension(const nlohmann::json& doc)
{
    if (!doc.is_object())
        throw ParseError("expected a JSON object with fields 'd' and 'colours'");
    if (!doc.contains("d") || !doc["d"].is_number_integer())
        throw ParseError("d: expected a positive integer");
    const auto d = doc["d"].get<long long>();
    if (d < 1 || d > 16)
        throw ParseError("d: expected a positive integer no larger than 16, got " + std::to_string(d));
    return static_cast<int>(d);
}

} // namespace detail

inline nlohmann::ordered_json point_to_json(const Point& p)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& x : p)
        arr.push_back(to_string(x));
    return arr;
}

inline nlohmann::ordered_json to_json(const Configuration& config)
{
    nlohmann::ordered_json doc;
    doc["d"] = config.dimension;
    auto colours = nlohmann::ordered_json::array();
    for (const auto& cls : config.colours) {
        auto points = nlohmann::ordered_json::array();
        for (const auto& p : cls)
            points.push_back(point_to_json(p));
        colours.push_back(std::move(points));
    }
    doc["colours"] = std::move(colours);
    return doc;
}

inline Configuration configuration_from_json(const nlohmann::json& doc)
{
    Configuration config;
    config.dimension = detail::parse_dimension(doc);
    config.colours = detail::parse_classes(doc, config.dimension, config.dimension + 1, config.dimension + 1);
    return config;
}

/// Parse the configuration document format. Unknown top-level keys are ignored.
inline Configuration parse_configuration(std::string_view text)
{
    return configuration_from_json(detail::parse_json_text(text));
}

inline std::string serialize_configuration(const Configuration& config)
{
    return to_json(config).dump(2);
}

// ---------------------------------------------------------------------------
// Transversals
// ---------------------------------------------------------------------------

/// Advance to the lexicographic successor; false once past the last one.
inline bool next_transversal(std::vector<int>& choice, int points_per_colour)
{
    for (std::size_t k = choice.size(); k-- > 0;) {
        if (++choice[k] < points_per_colour)
            return true;
        choice[k] = 0;
    }
    return false;
}

/// The transversal with lexicographic rank `rank`.
inline Transversal transversal_at(std::size_t rank, int colours, int points_per_colour)
{
    Transversal t{std::vector<int>(colours, 0)};
    for (int k = colours; k-- > 0;) {
        t.choice[k] = static_cast<int>(rank % points_per_colour);
        rank /= points_per_colour;
    }
    return t;
}

inline std::size_t transversal_count(const Configuration& config)
{
    std::size_t total = 1;
    for (int c = 0; c < config.colour_count(); ++c)
        total *= static_cast<std::size_t>(config.points_per_colour());
    return total;
}

/// All (d+1)^(d+1) transversals in lexicographic order.
inline std::vector<Transversal> enumerate_transversals(const Configuration& config)
{
    std::vector<Transversal> out;
    out.reserve(transversal_count(config));
    std::vector<int> choice(config.colour_count(), 0);
    do {
        out.push_back({choice});
    } while (next_transversal(choice, config.points_per_colour()));
    return out;
}

} // namespace cdepth

/**
 * Closed-simplex containment of the origin, simplicial cone membership,
 * colourful simplicial depth and D-depth.
 *
 * A colourful simplex {x_1, ..., x_{d+1}} contains the origin exactly when
 * -x_i lies in the cone of the other d vertices; both forms are provided
 * and the test suite checks them against each other.
 */
#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cdepth/configuration.hpp"
#include "cdepth/detail/parallel.hpp"
#include "cdepth/exact.hpp"

namespace cdepth {

struct Containment {
    bool contains = false;
    /// Convex coefficients (nonnegative, summing to one) when contains.
    std::vector<Rational> coefficients;
};

namespace detail {

inline void require_dimension(std::span<const Point> points, std::size_t d, const char* what)
{
    for (const auto& p : points)
        if (p.size() != d)
            throw InputError(std::string(what) + ": expected points of dimension " + std::to_string(d) + ", got " +
                             std::to_string(p.size()));
}

/// (-1)^k det(vertices without k), k = 0..d: spans the linear dependencies when the rank is d.
template <class Vec, class Det>
auto alternating_minors(std::span<const Vec> vertices, Det det)
{
    using Scalar = std::decay_t<decltype(det(std::vector<Vec>{}))>;
    std::vector<Scalar> terms;
    terms.reserve(vertices.size());
    std::vector<Vec> rest;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        rest.clear();
        for (std::size_t j = 0; j < vertices.size(); ++j)
            if (j != k)
                rest.push_back(vertices[j]);
        Scalar m = det(rest);
        terms.push_back(k % 2 == 0 ? m : Scalar(-m));
    }
    return terms;
}

inline Integer integer_det_of_columns(const std::vector<IntVector>& columns)
{
    const std::size_t n = columns.size();
    std::vector<IntVector> rows(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rows[i][j] = columns[j][i];
    return detail::bareiss(rows, n);
}

/// 1 if all nonzero terms are positive, -1 if all negative, 0 if mixed, 2 if all zero.
template <class Scalar>
int common_sign(const std::vector<Scalar>& terms)
{
    bool pos = false, neg = false;
    for (const auto& t : terms) {
        pos |= t > 0;
        neg |= t < 0;
    }
    if (pos && neg)
        return 0;
    if (pos)
        return 1;
    if (neg)
        return -1;
    return 2;
}

inline std::optional<std::vector<Rational>> convex_dependency(std::span<const Point> vertices)
{
    // lambda >= 0, sum lambda > 0, sum lambda_k v_k = 0
    const std::size_t n = vertices.size();
    const std::size_t d = vertices.front().size();
    LinearSystem system;
    for (std::size_t k = 0; k < n; ++k) {
        Point e(n, Rational(0));
        e[k] = 1;
        system.add(std::move(e), Relation::NonNegative);
    }
    system.add(Point(n, Rational(1)), Relation::Positive);
    for (std::size_t r = 0; r < d; ++r) {
        Point row(n);
        for (std::size_t k = 0; k < n; ++k)
            row[k] = vertices[k][r];
        system.add(std::move(row), Relation::Zero);
    }
    auto lambda = feasible_point(system);
    if (!lambda)
        return std::nullopt;
    const Rational total = std::accumulate(lambda->begin(), lambda->end(), Rational(0));
    for (auto& x : *lambda)
        x /= total;
    return lambda;
}

} // namespace detail

/**
 * Whether the origin lies in the closed convex hull of d+1 points in R^d.
 * Degenerate (lower-dimensional) hulls are decided exactly as well.
 */
inline Containment simplex_contains_origin(std::span<const Point> vertices)
{
    if (vertices.empty())
        throw InputError("simplex_contains_origin: no vertices");
    const std::size_t d = vertices.size() - 1;
    detail::require_dimension(vertices, d, "simplex_contains_origin");

    auto terms = detail::alternating_minors<Point>(
        vertices, [](const std::vector<Point>& cols) { return determinant(std::span<const Point>(cols)); });
    const int s = detail::common_sign(terms);
    if (s == 0)
        return {};
    if (s == 2) {
        auto lambda = detail::convex_dependency(vertices);
        if (!lambda)
            return {};
        return {true, std::move(*lambda)};
    }
    const Rational total = std::accumulate(terms.begin(), terms.end(), Rational(0));
    for (auto& t : terms)
        t /= total;
    return {true, std::move(terms)};
}

/**
 * Whether x is a nonnegative combination of the d generators. Independent
 * generators are decided by one square solve, dependent ones by exact
 * feasibility.
 */
inline bool cone_contains(std::span<const Point> generators, const Point& x)
{
    const std::size_t d = x.size();
    if (generators.size() != d)
        throw InputError("cone_contains: expected " + std::to_string(d) + " generators, got " +
                         std::to_string(generators.size()));
    detail::require_dimension(generators, d, "cone_contains");
    if (det_sign(generators) != 0) {
        const auto lambda = solve_square(generators, x);
        return std::all_of(lambda->begin(), lambda->end(), [](const Rational& v) { return v >= 0; });
    }
    // lambda_i >= 0, t > 0, sum lambda_i g_i - t x = 0
    LinearSystem system;
    for (std::size_t i = 0; i <= d; ++i) {
        Point e(d + 1, Rational(0));
        e[i] = 1;
        system.add(std::move(e), i < d ? Relation::NonNegative : Relation::Positive);
    }
    for (std::size_t r = 0; r < d; ++r) {
        Point row(d + 1);
        for (std::size_t i = 0; i < d; ++i)
            row[i] = generators[i][r];
        row[d] = -x[r];
        system.add(std::move(row), Relation::Zero);
    }
    return feasible_point(system).has_value();
}

/// d generators, one per colour of a d-subset of colours.
struct ConeSpec {
    std::vector<Point> generators;
    /// Colour label (0-based) of each generator.
    std::vector<int> colours;
};

inline bool cone_contains(const ConeSpec& cone, const Point& x)
{
    return cone_contains(std::span<const Point>(cone.generators), x);
}

/**
 * A simplicial cone with precomputed inward facet normals, so membership of
 * a full-dimensional cone is d integer dot products.
 */
class SimplicialCone {
  public:
    explicit SimplicialCone(std::vector<Point> generators) : generators_(std::move(generators))
    {
        const std::size_t d = generators_.size();
        detail::require_dimension(generators_, d, "SimplicialCone");
        std::vector<IntVector> columns;
        columns.reserve(d);
        for (const auto& g : generators_)
            columns.push_back(primitive_direction(g));
        const int orientation = sign_of(detail::integer_det_of_columns(columns));
        if (orientation == 0)
            return;
        // normal k: cofactors of column k, so normal_k . y = det(G with column k replaced by y)
        normals_.assign(d, IntVector(d));
        std::vector<IntVector> minor(d - 1, IntVector(d - 1));
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t j = 0; j < d; ++j) {
                for (std::size_t r = 0, rr = 0; r < d; ++r) {
                    if (r == j)
                        continue;
                    for (std::size_t c = 0, cc = 0; c < d; ++c) {
                        if (c == k)
                            continue;
                        minor[rr][cc++] = columns[c][r];
                    }
                    ++rr;
                }
                Integer cof = determinant(minor);
                if ((j + k) % 2 == 1)
                    cof = -cof;
                normals_[k][j] = orientation * cof;
            }
            normals_[k] = primitive_direction(std::move(normals_[k]));
        }
    }

    bool full_dimensional() const { return !normals_.empty(); }
    const std::vector<Point>& generators() const { return generators_; }
    /// Inward normals of the facets; normal k is the facet opposite generator k.
    const std::vector<IntVector>& inward_normals() const { return normals_; }

    bool contains(const IntVector& x) const
    {
        if (!full_dimensional())
            return cone_contains(std::span<const Point>(generators_), to_point(x));
        for (const auto& n : normals_)
            if (dot(n, x) < 0)
                return false;
        return true;
    }

    bool contains(const Point& x) const { return contains(primitive_direction(x)); }

  private:
    std::vector<Point> generators_;
    std::vector<IntVector> normals_;
};

// ---------------------------------------------------------------------------
// Colourful depth
// ---------------------------------------------------------------------------

struct DepthWitness {
    Transversal transversal;
    std::vector<Rational> coefficients;
};

struct DepthReport {
    std::size_t depth = 0;
    std::vector<DepthWitness> witnesses;
};

/// Number of colourful simplices whose closed hull contains the origin, with witnesses.
inline DepthReport colourful_depth(const Configuration& config)
{
    const std::size_t total = transversal_count(config);
    auto chunks = detail::map_ranges(total, 512, [&](std::size_t begin, std::size_t end) {
        std::vector<DepthWitness> found;
        auto t = transversal_at(begin, config.colour_count(), config.points_per_colour());
        for (std::size_t rank = begin; rank < end; ++rank) {
            const auto verts = vertices_of(config, t);
            auto c = simplex_contains_origin(verts);
            if (c.contains)
                found.push_back({t, std::move(c.coefficients)});
            next_transversal(t.choice, config.points_per_colour());
        }
        return found;
    });
    DepthReport report;
    for (auto& chunk : chunks)
        for (auto& w : chunk)
            report.witnesses.push_back(std::move(w));
    report.depth = report.witnesses.size();
    return report;
}

/**
 * Colourful depth without witnesses. Points are replaced by primitive
 * integer directions first; containment of the origin does not change
 * under positive rescaling of individual points.
 */
inline std::size_t colourful_depth_count(const Configuration& config)
{
    const std::size_t per = config.points_per_colour();
    std::vector<IntVector> flat;
    for (const auto& cls : config.colours)
        for (const auto& p : cls)
            flat.push_back(primitive_direction(p));
    const DirectionTable table(std::move(flat));

    const std::size_t total = transversal_count(config);
    auto counts = detail::map_ranges(total, 4096, [&](std::size_t begin, std::size_t end) {
        std::size_t count = 0;
        auto t = transversal_at(begin, config.colour_count(), per);
        const std::size_t m = t.choice.size();
        std::vector<std::size_t> idx(m), rest;
        std::vector<int> terms(m);
        for (std::size_t rank = begin; rank < end; ++rank) {
            for (std::size_t c = 0; c < m; ++c)
                idx[c] = c * per + static_cast<std::size_t>(t.choice[c]);
            for (std::size_t k = 0; k < m; ++k) {
                rest.clear();
                for (std::size_t j = 0; j < m; ++j)
                    if (j != k)
                        rest.push_back(idx[j]);
                const int s = table.det_sign(std::span<const std::size_t>(rest));
                terms[k] = k % 2 == 0 ? s : -s;
            }
            const int s = detail::common_sign(terms);
            if (s == 1 || s == -1)
                ++count;
            else if (s == 2 && simplex_contains_origin(vertices_of(config, t)).contains)
                ++count;
            next_transversal(t.choice, per);
        }
        return count;
    });
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

// ---------------------------------------------------------------------------
// D-coloured cones
// ---------------------------------------------------------------------------

inline void validate_colour_set(const Configuration& config, std::span<const int> colours)
{
    if (static_cast<int>(colours.size()) != config.dimension)
        throw InputError("colour set must have exactly d = " + std::to_string(config.dimension) + " colours, got " +
                         std::to_string(colours.size()));
    std::vector<bool> seen(config.colour_count(), false);
    for (const int c : colours) {
        if (c < 0 || c >= config.colour_count())
            throw InputError("colour " + std::to_string(c + 1) + " out of range 1.." +
                             std::to_string(config.colour_count()));
        if (seen[c])
            throw InputError("colour " + std::to_string(c + 1) + " repeated in colour set");
        seen[c] = true;
    }
}

/// The colour missing from a d-subset of the d+1 colours.
inline int complement_colour(const Configuration& config, std::span<const int> colours)
{
    std::vector<bool> seen(config.colour_count(), false);
    for (const int c : colours)
        seen[c] = true;
    for (int c = 0; c < config.colour_count(); ++c)
        if (!seen[c])
            return c;
    return -1;
}

/**
 * The (d+1)^d cones with one generator from each colour of D. Cone k uses
 * point choice(k)[i] of colour colours()[i]; k runs over choices in
 * lexicographic order.
 */
class DConeFamily {
  public:
    DConeFamily(const Configuration& config, std::vector<int> colours) : colours_(std::move(colours))
    {
        validate_colour_set(config, colours_);
        std::vector<int> choice(colours_.size(), 0);
        do {
            std::vector<Point> gens;
            for (std::size_t i = 0; i < colours_.size(); ++i)
                gens.push_back(config.point(colours_[i], choice[i]));
            choices_.push_back(choice);
            cones_.emplace_back(std::move(gens));
        } while (next_transversal(choice, config.points_per_colour()));
    }

    const std::vector<int>& colours() const { return colours_; }
    std::size_t size() const { return cones_.size(); }
    const std::vector<int>& choice(std::size_t k) const { return choices_[k]; }
    const SimplicialCone& cone(std::size_t k) const { return cones_[k]; }

    /// Indices of the cones containing x, ascending.
    std::vector<std::size_t> containing(const Point& x) const
    {
        const IntVector dir = primitive_direction(x);
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < cones_.size(); ++k)
            if (cones_[k].contains(dir))
                out.push_back(k);
        return out;
    }

    std::size_t depth(const Point& x) const { return containing(x).size(); }

  private:
    std::vector<int> colours_;
    std::vector<std::vector<int>> choices_;
    std::vector<SimplicialCone> cones_;
};

/// Number of D-coloured cones containing the nonzero direction x (colours 0-based).
inline std::size_t d_depth(const Configuration& config, std::span<const int> colours, const Point& x)
{
    if (static_cast<int>(x.size()) != config.dimension)
        throw InputError("direction has dimension " + std::to_string(x.size()) + ", expected " +
                         std::to_string(config.dimension));
    if (is_zero(x))
        throw InputError("D-depth is undefined at the origin");
    return DConeFamily(config, std::vector<int>(colours.begin(), colours.end())).depth(x);
}

/// Whether -vertices[i] lies in the cone of the remaining vertices.
inline bool antipodal_contains(std::span<const Point> vertices, std::size_t i)
{
    if (i >= vertices.size())
        throw InputError("antipodal_contains: vertex index out of range");
    std::vector<Point> others;
    for (std::size_t j = 0; j < vertices.size(); ++j)
        if (j != i)
            others.push_back(vertices[j]);
    return cone_contains(std::span<const Point>(others), negated(vertices[i]));
}

inline bool antipodal_check(const Configuration& config, const Transversal& t, int colour)
{
    if (static_cast<int>(t.choice.size()) != config.colour_count())
        throw InputError("transversal has the wrong number of entries");
    return antipodal_contains(vertices_of(config, t), static_cast<std::size_t>(colour));
}

} // namespace cdepth

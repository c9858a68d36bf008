/**
 * Coverage of R^d by a family of simplicial cones, decided on the central
 * hyperplane arrangement spanned by the cones' facets.
 *
 * Every cone is an intersection of halfspaces bounded by arrangement
 * hyperplanes, so membership in a cone is constant on each open cell. The
 * family covers R^d iff every full-dimensional cell lies in some cone
 * (cone unions are closed, open cells are dense).
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cdepth/depth.hpp"
#include "cdepth/exact.hpp"

namespace cdepth {

/// Hyperplane through the origin with a primitive integer normal whose first nonzero entry is positive.
struct CentralHyperplane {
    IntVector normal;

    friend auto operator<=>(const CentralHyperplane&, const CentralHyperplane&) = default;
    friend bool operator==(const CentralHyperplane&, const CentralHyperplane&) = default;
};

using SignVector = std::vector<signed char>;

struct Cell {
    SignVector signs;
    /// Exact interior point: strictly satisfies `signs`.
    Point witness;
};

/// Canonical form of a nonzero normal; nullopt for the zero vector.
inline std::optional<CentralHyperplane> canonical_hyperplane(IntVector normal)
{
    if (is_zero(normal))
        return std::nullopt;
    normal = primitive_direction(std::move(normal));
    const auto first = std::find_if(normal.begin(), normal.end(), [](const Integer& x) { return x != 0; });
    if (*first < 0)
        for (auto& x : normal)
            x = -x;
    return CentralHyperplane{std::move(normal)};
}

inline SignVector sign_vector(std::span<const CentralHyperplane> hyperplanes, const IntVector& x)
{
    SignVector s;
    s.reserve(hyperplanes.size());
    for (const auto& h : hyperplanes)
        s.push_back(static_cast<signed char>(sign_of(dot(h.normal, x))));
    return s;
}

inline SignVector sign_vector(std::span<const CentralHyperplane> hyperplanes, const Point& x)
{
    return sign_vector(hyperplanes, primitive_direction(x));
}

namespace detail {

/// Normal of the hyperplane spanned by d-1 vectors in R^d (generalized cross product); zero if they are dependent.
inline IntVector cross_normal(const std::vector<IntVector>& vectors, std::size_t d)
{
    IntVector n(d);
    std::vector<IntVector> minor(d - 1, IntVector(d - 1));
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t r = 0, rr = 0; r < d; ++r) {
            if (r == j)
                continue;
            for (std::size_t c = 0; c + 1 < d; ++c)
                minor[rr][c] = vectors[c][r];
            ++rr;
        }
        n[j] = determinant(minor);
        if (j % 2 == 1)
            n[j] = -n[j];
    }
    return n;
}

/// d-1 integer vectors spanning the hyperplane with normal a.
inline std::vector<IntVector> hyperplane_basis(const IntVector& a)
{
    const std::size_t d = a.size();
    const std::size_t pivot = static_cast<std::size_t>(
        std::find_if(a.begin(), a.end(), [](const Integer& x) { return x != 0; }) - a.begin());
    std::vector<IntVector> basis;
    for (std::size_t j = 0; j < d; ++j) {
        if (j == pivot)
            continue;
        IntVector v(d);
        v[j] = a[pivot];
        v[pivot] = -a[j];
        basis.push_back(std::move(v));
    }
    return basis;
}

struct RawCell {
    SignVector signs;
    IntVector witness;
};

/**
 * Interior points of every full-dimensional cell of the arrangement of
 * `normals` (distinct canonical) in R^d.
 *
 * Hyperplanes are inserted one at a time. The cells split by the new
 * hyperplane H are in bijection with the cells of the arrangement the
 * earlier hyperplanes induce on H, which are found recursively in d-1
 * dimensions; each such restricted cell witness p is pushed off H by an
 * exact step small enough to keep every earlier sign.
 */
inline std::vector<IntVector> cell_witnesses(const std::vector<IntVector>& normals, std::size_t d)
{
    if (d == 0)
        return {IntVector{}};
    IntVector start(d);
    start[0] = 1;
    std::vector<RawCell> cells{{{}, start}};

    for (std::size_t k = 0; k < normals.size(); ++k) {
        const IntVector& a = normals[k];
        const auto basis = hyperplane_basis(a);

        std::vector<IntVector> restricted;
        for (std::size_t j = 0; j < k; ++j) {
            IntVector r(basis.size());
            for (std::size_t i = 0; i < basis.size(); ++i)
                r[i] = dot(basis[i], normals[j]);
            if (auto h = canonical_hyperplane(std::move(r)))
                restricted.push_back(std::move(h->normal));
        }
        std::sort(restricted.begin(), restricted.end());
        restricted.erase(std::unique(restricted.begin(), restricted.end()), restricted.end());
        const auto on_plane = cell_witnesses(restricted, d - 1);

        std::map<SignVector, std::size_t> index;
        for (std::size_t c = 0; c < cells.size(); ++c)
            index.emplace(cells[c].signs, c);
        std::vector<bool> split(cells.size(), false);
        std::vector<RawCell> next;
        next.reserve(cells.size() + 2 * on_plane.size());

        for (const auto& y : on_plane) {
            IntVector p(d);
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t r = 0; r < d; ++r)
                    p[r] += y[i] * basis[i][r];
            SignVector sig(k);
            std::optional<Rational> step;
            for (std::size_t j = 0; j < k; ++j) {
                const Integer ap = dot(normals[j], p);
                sig[j] = static_cast<signed char>(sign_of(ap));
                if (ap == 0)
                    throw std::logic_error("restricted cell witness lies on an arrangement hyperplane");
                const Integer aa = dot(normals[j], a);
                if (aa != 0) {
                    Rational bound(boost::multiprecision::abs(ap), boost::multiprecision::abs(aa));
                    if (!step || bound < *step)
                        step = std::move(bound);
                }
            }
            const auto it = index.find(sig);
            if (it == index.end())
                throw std::logic_error("restricted cell does not match any cell");
            split[it->second] = true;
            const Rational t = step ? Rational(*step / 2) : Rational(1);
            const Integer num = boost::multiprecision::numerator(t);
            const Integer den = boost::multiprecision::denominator(t);
            for (const int side : {1, -1}) {
                IntVector q(d);
                for (std::size_t r = 0; r < d; ++r)
                    q[r] = den * p[r] + side * num * a[r];
                SignVector s = sig;
                s.push_back(static_cast<signed char>(side));
                next.push_back({std::move(s), primitive_direction(std::move(q))});
            }
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (split[c])
                continue;
            const int s = sign_of(dot(a, cells[c].witness));
            if (s == 0)
                throw std::logic_error("unsplit cell witness lies on the new hyperplane");
            cells[c].signs.push_back(static_cast<signed char>(s));
            next.push_back(std::move(cells[c]));
        }
        cells = std::move(next);
    }

    std::vector<IntVector> out;
    out.reserve(cells.size());
    for (auto& c : cells)
        out.push_back(std::move(c.witness));
    return out;
}

inline std::vector<IntVector> normals_of(std::span<const CentralHyperplane> hyperplanes)
{
    std::vector<IntVector> normals;
    for (const auto& h : hyperplanes)
        normals.push_back(h.normal);
    std::sort(normals.begin(), normals.end());
    normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
    return normals;
}

inline std::vector<Cell> sorted_cells(std::span<const CentralHyperplane> hyperplanes, std::vector<IntVector> witnesses)
{
    std::vector<Cell> cells;
    cells.reserve(witnesses.size());
    for (auto& w : witnesses)
        cells.push_back({sign_vector(hyperplanes, w), to_point(w)});
    std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) { return x.signs < y.signs; });
    return cells;
}

} // namespace detail

/**
 * Hyperplanes spanned by the (d-1)-subsets of each cone's generators,
 * deduplicated and sorted by canonical normal. Subsets spanning less than
 * a hyperplane contribute nothing.
 */
inline std::vector<CentralHyperplane> facet_hyperplanes(std::span<const std::vector<Point>> cones)
{
    std::vector<CentralHyperplane> out;
    for (const auto& gens : cones) {
        const std::size_t d = gens.size();
        detail::require_dimension(gens, d, "facet_hyperplanes");
        std::vector<IntVector> dirs;
        for (const auto& g : gens)
            dirs.push_back(primitive_direction(g));
        for (std::size_t skip = 0; skip < d; ++skip) {
            std::vector<IntVector> rest;
            for (std::size_t j = 0; j < d; ++j)
                if (j != skip)
                    rest.push_back(dirs[j]);
            if (auto h = canonical_hyperplane(detail::cross_normal(rest, d)))
                out.push_back(std::move(*h));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<CentralHyperplane> facet_hyperplanes(std::span<const ConeSpec> cones)
{
    std::vector<std::vector<Point>> gens;
    for (const auto& c : cones)
        gens.push_back(c.generators);
    return facet_hyperplanes(std::span<const std::vector<Point>>(gens));
}

/**
 * Every full-dimensional cell of the central arrangement in R^d, exactly
 * once, with an interior witness; sorted by sign vector.
 */
inline std::vector<Cell> enumerate_cells(std::span<const CentralHyperplane> hyperplanes, std::size_t d)
{
    for (const auto& h : hyperplanes)
        if (h.normal.size() != d)
            throw InputError("hyperplane normal has the wrong dimension");
    return detail::sorted_cells(hyperplanes, detail::cell_witnesses(detail::normals_of(hyperplanes), d));
}

/**
 * The same cells found by breadth-first wall crossing: starting from a
 * generic point, flip one sign at a time and keep the sign vectors whose
 * strict system is feasible. One exact feasibility solve per candidate;
 * slower than enumerate_cells and kept as an independent route.
 */
inline std::vector<Cell> enumerate_cells_by_wall_crossing(std::span<const CentralHyperplane> hyperplanes,
                                                          std::size_t d)
{
    if (hyperplanes.empty()) {
        Point w(d, Rational(0));
        if (d > 0)
            w[0] = 1;
        return {Cell{{}, w}};
    }
    // a point on the moment curve avoiding every hyperplane
    IntVector start;
    for (long t = 1;; ++t) {
        start.assign(d, Integer(1));
        for (std::size_t r = 1; r < d; ++r)
            start[r] = start[r - 1] * t;
        const auto s = sign_vector(hyperplanes, start);
        if (std::none_of(s.begin(), s.end(), [](signed char x) { return x == 0; }))
            break;
    }

    std::map<SignVector, Point> found;
    std::set<SignVector> infeasible;
    std::deque<SignVector> queue;
    const auto first = sign_vector(hyperplanes, start);
    found.emplace(first, to_point(start));
    queue.push_back(first);
    while (!queue.empty()) {
        const SignVector current = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < hyperplanes.size(); ++j) {
            SignVector cand = current;
            cand[j] = static_cast<signed char>(-cand[j]);
            if (found.count(cand) || infeasible.count(cand))
                continue;
            LinearSystem system;
            for (std::size_t k = 0; k < hyperplanes.size(); ++k)
                system.add(scaled(to_point(hyperplanes[k].normal), Rational(cand[k])), Relation::Positive);
            if (auto w = feasible_point(system)) {
                found.emplace(cand, std::move(*w));
                queue.push_back(std::move(cand));
            } else {
                infeasible.insert(std::move(cand));
            }
        }
    }
    std::vector<Cell> cells;
    for (auto& [signs, w] : found)
        cells.push_back({signs, std::move(w)});
    return cells;
}

// ---------------------------------------------------------------------------
// Coverage
// ---------------------------------------------------------------------------

struct CoverageCertificate {
    bool covered = false;
    std::size_t cells_checked = 0;
    std::vector<CentralHyperplane> hyperplanes;
    /// Present iff !covered; lies in no cone of the family.
    std::optional<Point> uncovered_direction;
    /// Present iff covered: for each cell, the index of a cone containing it.
    std::vector<std::pair<SignVector, std::size_t>> cell_cones;
};

namespace detail {

/// Facet sign requirements of a full-dimensional cone, as (hyperplane index, sign) pairs.
inline std::optional<std::vector<std::pair<std::size_t, signed char>>> cone_cell_constraints(
    const SimplicialCone& cone, std::span<const CentralHyperplane> hyperplanes)
{
    if (!cone.full_dimensional())
        return std::nullopt;
    std::vector<std::pair<std::size_t, signed char>> out;
    for (const auto& inward : cone.inward_normals()) {
        const auto h = canonical_hyperplane(inward);
        const auto it = std::lower_bound(hyperplanes.begin(), hyperplanes.end(), *h);
        if (it == hyperplanes.end() || !(*it == *h))
            throw std::logic_error("cone facet missing from the arrangement");
        out.emplace_back(static_cast<std::size_t>(it - hyperplanes.begin()),
                         static_cast<signed char>(h->normal == inward ? 1 : -1));
    }
    return out;
}

/**
 * A point of the open cell around `witness` lying in none of the cones.
 * Only lower-dimensional cones can contain cell points here; they have
 * measure zero, so a few exact perturbations inside the cell suffice.
 */
inline Point uncovered_point_in_cell(const Point& witness, std::span<const CentralHyperplane> hyperplanes,
                                     const std::vector<SimplicialCone>& cones)
{
    const IntVector w = primitive_direction(witness);
    auto in_any = [&](const IntVector& x) {
        return std::any_of(cones.begin(), cones.end(), [&](const SimplicialCone& c) { return c.contains(x); });
    };
    if (!in_any(w))
        return witness;
    const std::size_t d = w.size();
    for (std::size_t attempt = 1; attempt <= 4 * d + 8; ++attempt) {
        IntVector v(d);
        for (std::size_t r = 0; r < d; ++r)
            v[r] = Integer((attempt * (r + 3) * (r + 7)) % 11) - 5;
        if (is_zero(v))
            continue;
        std::optional<Rational> step;
        for (const auto& h : hyperplanes) {
            const Integer hw = dot(h.normal, w);
            const Integer hv = dot(h.normal, v);
            if (hv != 0) {
                Rational bound(boost::multiprecision::abs(hw), boost::multiprecision::abs(hv));
                if (!step || bound < *step)
                    step = std::move(bound);
            }
        }
        const Rational t = step ? Rational(*step / Rational(attempt + 1)) : Rational(1, attempt + 1);
        IntVector q(d);
        for (std::size_t r = 0; r < d; ++r)
            q[r] = boost::multiprecision::denominator(t) * w[r] + boost::multiprecision::numerator(t) * v[r];
        if (!in_any(q))
            return to_point(primitive_direction(std::move(q)));
    }
    throw std::logic_error("could not move off lower-dimensional cones inside an uncovered cell");
}

} // namespace detail

/**
 * Decide whether the cones cover R^d. Lower-dimensional cones earn no
 * coverage credit, but their facets still enter the arrangement.
 */
inline CoverageCertificate covers_space(std::span<const std::vector<Point>> cones)
{
    if (cones.empty())
        throw InputError("covers_space: empty cone family");
    const std::size_t d = cones.front().size();
    for (const auto& c : cones)
        if (c.size() != d)
            throw InputError("covers_space: cones have different numbers of generators");

    CoverageCertificate cert;
    cert.hyperplanes = facet_hyperplanes(cones);
    std::vector<SimplicialCone> simplicial;
    std::vector<std::vector<std::pair<std::size_t, signed char>>> constraints(cones.size());
    std::vector<bool> full(cones.size(), false);
    for (std::size_t k = 0; k < cones.size(); ++k) {
        simplicial.emplace_back(cones[k]);
        if (auto c = detail::cone_cell_constraints(simplicial.back(), cert.hyperplanes)) {
            constraints[k] = std::move(*c);
            full[k] = true;
        }
    }

    const auto cells = enumerate_cells(cert.hyperplanes, d);
    for (const auto& cell : cells) {
        ++cert.cells_checked;
        std::optional<std::size_t> owner;
        for (std::size_t k = 0; k < cones.size() && !owner; ++k) {
            if (full[k] && std::all_of(constraints[k].begin(), constraints[k].end(), [&](const auto& req) {
                    return cell.signs[req.first] == req.second;
                }))
                owner = k;
        }
        if (!owner) {
            cert.covered = false;
            cert.cell_cones.clear();
            cert.uncovered_direction = detail::uncovered_point_in_cell(cell.witness, cert.hyperplanes, simplicial);
            return cert;
        }
        cert.cell_cones.emplace_back(cell.signs, *owner);
    }
    cert.covered = true;
    return cert;
}

inline CoverageCertificate covers_space(std::span<const ConeSpec> cones)
{
    std::vector<std::vector<Point>> gens;
    for (const auto& c : cones)
        gens.push_back(c.generators);
    return covers_space(std::span<const std::vector<Point>>(gens));
}

/**
 * Sample `samples` random integer directions and return the first one
 * lying in no cone. Never certifies coverage. Full-dimensional cones are
 * tested with the rows of the inverse generator matrix, obtained by square
 * solves rather than from the arrangement's facet normals.
 */
inline std::optional<Point> monte_carlo_refuter(std::span<const std::vector<Point>> cones, std::size_t samples,
                                                std::uint64_t seed)
{
    if (cones.empty())
        throw InputError("monte_carlo_refuter: empty cone family");
    const std::size_t d = cones.front().size();

    struct Tester {
        bool full = false;
        bool small = false;
        std::vector<IntVector> rows;
        std::vector<std::vector<std::int64_t>> small_rows;
    };
    std::vector<Tester> testers;
    for (const auto& gens : cones) {
        Tester t;
        std::vector<std::vector<Rational>> inverse_columns;
        for (std::size_t i = 0; i < d && (i == 0 || t.full); ++i) {
            Point e(d, Rational(0));
            e[i] = 1;
            auto col = solve_square(gens, e);
            t.full = col.has_value();
            if (col)
                inverse_columns.push_back(std::move(*col));
        }
        if (t.full) {
            t.small = true;
            for (std::size_t k = 0; k < d; ++k) {
                Point row(d);
                for (std::size_t i = 0; i < d; ++i)
                    row[i] = inverse_columns[i][k];
                t.rows.push_back(primitive_direction(row));
                std::vector<std::int64_t> small;
                for (const auto& x : t.rows.back()) {
                    if (boost::multiprecision::abs(x) > std::numeric_limits<std::int64_t>::max()) {
                        t.small = false;
                        break;
                    }
                    small.push_back(x.convert_to<std::int64_t>());
                }
                t.small_rows.push_back(std::move(small));
            }
        }
        testers.push_back(std::move(t));
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> coord(-(1 << 16), 1 << 16);
    std::vector<std::int64_t> x(d);
    for (std::size_t s = 0; s < samples; ++s) {
        do {
            for (auto& v : x)
                v = coord(rng);
        } while (std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; }));

        bool covered = false;
        for (std::size_t k = 0; k < testers.size() && !covered; ++k) {
            const auto& t = testers[k];
            if (t.full && t.small) {
                covered = std::all_of(t.small_rows.begin(), t.small_rows.end(), [&](const auto& row) {
                    __int128 acc = 0;
                    for (std::size_t r = 0; r < d; ++r)
                        acc += static_cast<__int128>(row[r]) * x[r];
                    return acc >= 0;
                });
            } else if (t.full) {
                covered = std::all_of(t.rows.begin(), t.rows.end(), [&](const IntVector& row) {
                    Integer acc = 0;
                    for (std::size_t r = 0; r < d; ++r)
                        acc += row[r] * Integer(x[r]);
                    return acc >= 0;
                });
            } else {
                Point p(x.begin(), x.end());
                covered = cone_contains(std::span<const Point>(cones[k]), p);
            }
        }
        if (!covered)
            return Point(x.begin(), x.end());
    }
    return std::nullopt;
}

inline std::optional<Point> monte_carlo_refuter(std::span<const ConeSpec> cones, std::size_t samples,
                                                std::uint64_t seed)
{
    std::vector<std::vector<Point>> gens;
    for (const auto& c : cones)
        gens.push_back(c.generators);
    return monte_carlo_refuter(std::span<const std::vector<Point>>(gens), samples, seed);
}

} // namespace cdepth

/**
 * Exact rational linear algebra: determinant signs, square solves and
 * feasibility of small homogeneous linear systems.
 *
 * Every predicate in the library bottoms out here. Nothing in this file
 * rounds.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace cdepth {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Coordinates of a point or direction in R^d.
using Point = std::vector<Rational>;
using IntVector = std::vector<Integer>;

/// Malformed or inconsistent input (wrong dimension, bad rational, ...).
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

template <class Number>
inline int sign_of(const Number& value)
{
    return (value > 0) - (value < 0);
}

/**
 * Parse "p/q" or "p" (optional leading sign, base 10). The result is in
 * canonical form; a zero denominator is rejected.
 */
inline Rational parse_rational(std::string_view text)
{
    auto digits = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!digits(num) || !digits(den))
        throw InputError("malformed rational '" + std::string(text) + "'");
    Integer p{std::string(num)};
    Integer q{std::string(den)};
    if (q == 0)
        throw InputError("zero denominator in '" + std::string(text) + "'");
    if (negative)
        p = -p;
    return Rational(p, q);
}

inline std::string to_string(const Rational& value)
{
    const Integer den = boost::multiprecision::denominator(value);
    std::string out = boost::multiprecision::numerator(value).str();
    if (den != 1)
        out += "/" + den.str();
    return out;
}

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

inline Rational dot(const Point& a, const Point& b)
{
    Rational sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += a[i] * b[i];
    return sum;
}

inline Integer dot(const IntVector& a, const IntVector& b)
{
    Integer sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += a[i] * b[i];
    return sum;
}

inline bool is_zero(const Point& p)
{
    return std::all_of(p.begin(), p.end(), [](const Rational& x) { return x == 0; });
}

inline bool is_zero(const IntVector& p)
{
    return std::all_of(p.begin(), p.end(), [](const Integer& x) { return x == 0; });
}

inline Point negated(Point p)
{
    for (auto& x : p)
        x = -x;
    return p;
}

inline Point scaled(Point p, const Rational& factor)
{
    for (auto& x : p)
        x *= factor;
    return p;
}

inline Point to_point(const IntVector& v)
{
    return Point(v.begin(), v.end());
}

/**
 * The primitive integer vector on the ray through p: p times a positive
 * rational, with coprime integer entries. The zero vector maps to zeros.
 */
inline IntVector primitive_direction(const Point& p)
{
    Integer den_lcm = 1;
    for (const auto& x : p)
        den_lcm = boost::multiprecision::lcm(den_lcm, Integer(boost::multiprecision::denominator(x)));
    IntVector out;
    out.reserve(p.size());
    Integer g = 0;
    for (const auto& x : p) {
        Integer v = boost::multiprecision::numerator(x) * (den_lcm / boost::multiprecision::denominator(x));
        g = boost::multiprecision::gcd(g, v);
        out.push_back(std::move(v));
    }
    if (g > 1)
        for (auto& v : out)
            v /= g;
    return out;
}

inline IntVector primitive_direction(IntVector v)
{
    Integer g = 0;
    for (const auto& x : v)
        g = boost::multiprecision::gcd(g, x);
    if (g > 1)
        for (auto& x : v)
            x /= g;
    return v;
}

namespace detail {

inline void require_square(std::span<const Point> columns)
{
    for (const auto& c : columns)
        if (c.size() != columns.size())
            throw InputError("expected " + std::to_string(columns.size()) + " columns of dimension " +
                             std::to_string(columns.size()) + ", got one of dimension " + std::to_string(c.size()));
}

/// Integer matrix whose column j is columns[j] scaled by scale[j] > 0.
inline std::vector<IntVector> integer_columns(std::span<const Point> columns, std::vector<Integer>* scale = nullptr)
{
    const std::size_t n = columns.size();
    std::vector<IntVector> rows(n, IntVector(n));
    if (scale)
        scale->assign(n, Integer(1));
    for (std::size_t j = 0; j < n; ++j) {
        Integer den_lcm = 1;
        for (const auto& x : columns[j])
            den_lcm = boost::multiprecision::lcm(den_lcm, Integer(boost::multiprecision::denominator(x)));
        for (std::size_t i = 0; i < n; ++i)
            rows[i][j] = boost::multiprecision::numerator(columns[j][i]) *
                         (den_lcm / boost::multiprecision::denominator(columns[j][i]));
        if (scale)
            (*scale)[j] = den_lcm;
    }
    return rows;
}

/**
 * Bareiss fraction-free elimination on the first `n` columns of an n-row
 * integer matrix (extra columns ride along). Returns the determinant of
 * the leading n x n block; `rows` is left upper-triangular.
 */
inline Integer bareiss(std::vector<IntVector>& rows, std::size_t n)
{
    const std::size_t width = n == 0 ? 0 : rows[0].size();
    int parity = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && rows[pivot][k] == 0)
            ++pivot;
        if (pivot == n)
            return 0;
        if (pivot != k) {
            std::swap(rows[pivot], rows[k]);
            parity = -parity;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < width; ++j)
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) / prev;
            rows[i][k] = 0;
        }
        prev = rows[k][k];
    }
    return n == 0 ? Integer(1) : Integer(parity * rows[n - 1][n - 1]);
}

} // namespace detail

/// Exact determinant of a square integer matrix given by rows.
namespace detail {

inline std::pair<double, double> laplace(const std::array<const double*, 8>& cols, std::size_t n, std::size_t row,
                                         unsigned used)
{
    if (row == n)
        return {1.0, 1.0};
    double det = 0, perm = 0;
    double sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (used >> j & 1U)
            continue;
        const double a = cols[j][row];
        if (a != 0) {
            const auto [m, p] = laplace(cols, n, row + 1, used | 1U << j);
            det += sign * a * m;
            perm += std::abs(a) * p;
        }
        sign = -sign;
    }
    return {det, perm};
}

/**
 * Determinant sign of at most 6 integer columns held exactly as doubles,
 * or nullopt when rounding could flip it. Laplace expansion in floating
 * point is off by at most about n^2 units of roundoff times the permanent
 * of |A|; the bound below is several times that.
 */
inline std::optional<int> filtered_det_sign(std::span<const double* const> columns)
{
    const std::size_t n = columns.size();
    if (n == 0)
        return 1;
    if (n > 6)
        return std::nullopt;
    std::array<const double*, 8> cols{};
    std::copy(columns.begin(), columns.end(), cols.begin());
    const auto [det, perm] = laplace(cols, n, 0, 0);
    if (perm == 0)
        return 0; // every term has an exact zero factor
    const double bound = 4.0 * static_cast<double>(n * n + 1) * std::numeric_limits<double>::epsilon() * perm;
    if (det > bound)
        return 1;
    if (det < -bound)
        return -1;
    return std::nullopt;
}

} // namespace detail

/**
 * Integer vectors with cached double copies, for determinant signs of
 * column subsets that fall back to exact elimination only near zero.
 */
class DirectionTable {
  public:
    explicit DirectionTable(std::vector<IntVector> directions) : directions_(std::move(directions))
    {
        static const Integer limit = Integer(1) << 53;
        static const Integer prime(kPrime);
        exact_ = true;
        for (const auto& v : directions_) {
            std::vector<double> row;
            std::vector<std::uint64_t> res;
            for (const auto& x : v) {
                exact_ = exact_ && abs(x) <= limit;
                row.push_back(x.convert_to<double>());
                Integer r = x % prime;
                if (r < 0)
                    r += prime;
                res.push_back(r.convert_to<std::uint64_t>());
            }
            doubles_.push_back(std::move(row));
            residues_.push_back(std::move(res));
        }
    }

    std::size_t size() const { return directions_.size(); }
    const IntVector& operator[](std::size_t i) const { return directions_[i]; }

    /// Sign of det[v_{idx[0]}, ..., v_{idx[n-1]}].
    template <class Index>
    int det_sign(std::span<const Index> idx) const
    {
        if (exact_ && idx.size() <= 6) {
            std::array<const double*, 8> cols{};
            for (std::size_t k = 0; k < idx.size(); ++k)
                cols[k] = doubles_[static_cast<std::size_t>(idx[k])].data();
            if (const auto s = detail::filtered_det_sign(std::span<const double* const>(cols.data(), idx.size())))
                return *s;
        }
        const std::size_t n = idx.size();
        std::vector<IntVector> rows(n, IntVector(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                rows[i][j] = directions_[static_cast<std::size_t>(idx[j])][i];
        return sign_of(detail::bareiss(rows, n));
    }

    /**
     * Whether det[v_{idx[0]}, ...] vanishes. A nonzero determinant modulo
     * the prime 2^61-1 settles the question; only a zero residue is
     * rechecked with exact elimination.
     */
    template <class Index>
    bool det_is_zero(std::span<const Index> idx) const
    {
        const std::size_t n = idx.size();
        std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m[i][j] = residues_[static_cast<std::size_t>(idx[j])][i];
        bool nonzero = true;
        for (std::size_t k = 0; k < n && nonzero; ++k) {
            std::size_t pivot = k;
            while (pivot < n && m[pivot][k] == 0)
                ++pivot;
            if (pivot == n) {
                nonzero = false;
                break;
            }
            std::swap(m[pivot], m[k]);
            // fraction-free step: scales the determinant by a nonzero residue
            for (std::size_t i = k + 1; i < n; ++i) {
                const std::uint64_t a = m[i][k];
                if (a == 0)
                    continue;
                for (std::size_t j = k + 1; j < n; ++j)
                    m[i][j] = sub_mod(mul_mod(m[i][j], m[k][k]), mul_mod(m[k][j], a));
                m[i][k] = 0;
            }
        }
        if (nonzero)
            return false;
        return det_sign(idx) == 0;
    }

  private:
    static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

    static std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b)
    {
        const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
        std::uint64_t r = static_cast<std::uint64_t>(z & kPrime) + static_cast<std::uint64_t>(z >> 61);
        return r >= kPrime ? r - kPrime : r;
    }

    static std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

    std::vector<IntVector> directions_;
    std::vector<std::vector<double>> doubles_;
    std::vector<std::vector<std::uint64_t>> residues_;
    bool exact_ = true;
};

inline Integer determinant(std::vector<IntVector> rows)
{
    return detail::bareiss(rows, rows.size());
}

/// Exact determinant of the matrix with the given columns.
inline Rational determinant(std::span<const Point> columns)
{
    detail::require_square(columns);
    std::vector<Integer> scale;
    auto rows = detail::integer_columns(columns, &scale);
    Integer denom = 1;
    for (const auto& s : scale)
        denom *= s;
    return Rational(detail::bareiss(rows, rows.size()), denom);
}

/// Sign of det[columns], computed fraction-free.
inline int det_sign(std::span<const Point> columns)
{
    detail::require_square(columns);
    auto rows = detail::integer_columns(columns);
    return sign_of(detail::bareiss(rows, rows.size()));
}

/**
 * Coefficients c with sum_i c_i * columns[i] == rhs, or nullopt when the
 * columns are linearly dependent.
 */
inline std::optional<std::vector<Rational>> solve_square(std::span<const Point> columns, const Point& rhs)
{
    detail::require_square(columns);
    const std::size_t n = columns.size();
    if (rhs.size() != n)
        throw InputError("right-hand side has dimension " + std::to_string(rhs.size()) + ", expected " +
                         std::to_string(n));
    std::vector<Integer> scale;
    auto rows = detail::integer_columns(columns, &scale);
    const IntVector rhs_int = primitive_direction(rhs);
    // rhs == rhs_scale * rhs_int
    Rational rhs_scale = 1;
    for (std::size_t i = 0; i < n; ++i)
        if (rhs_int[i] != 0) {
            rhs_scale = rhs[i] / Rational(rhs_int[i]);
            break;
        }
    for (std::size_t i = 0; i < n; ++i)
        rows[i].push_back(rhs_int[i]);
    if (detail::bareiss(rows, n) == 0)
        return std::nullopt;

    std::vector<Rational> y(n);
    for (std::size_t k = n; k-- > 0;) {
        Rational acc = rows[k][n];
        for (std::size_t j = k + 1; j < n; ++j)
            acc -= Rational(rows[k][j]) * y[j];
        y[k] = acc / Rational(rows[k][k]);
    }
    for (std::size_t j = 0; j < n; ++j)
        y[j] = y[j] * Rational(scale[j]) * rhs_scale;
    return y;
}

// ---------------------------------------------------------------------------
// Homogeneous linear feasibility
// ---------------------------------------------------------------------------

enum class Relation { NonNegative, Positive, Zero };

struct Constraint {
    Point normal;
    Relation relation = Relation::NonNegative;
};

/// Rows of the form  normal . x  (>= 0 | > 0 | = 0).
struct LinearSystem {
    std::vector<Constraint> rows;

    std::size_t dimension() const { return rows.empty() ? 0 : rows.front().normal.size(); }

    void add(Point normal, Relation relation) { rows.push_back({std::move(normal), relation}); }

    bool satisfied_by(const Point& x) const
    {
        for (const auto& row : rows) {
            const int s = sign_of(dot(row.normal, x));
            if ((row.relation == Relation::Positive && s <= 0) || (row.relation == Relation::NonNegative && s < 0) ||
                (row.relation == Relation::Zero && s != 0))
                return false;
        }
        return true;
    }
};

namespace detail {

/**
 * Dense dictionary simplex for  max c.y  s.t.  A y <= b, y >= 0  with b >= 0
 * (the origin is feasible, so no first phase). Bland's rule keeps the
 * degenerate pivots that homogeneous systems produce from cycling. The
 * objective must be bounded on the feasible region.
 */
class BoundedSimplex {
  public:
    BoundedSimplex(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                   const std::vector<Rational>& c)
        : m_(a.size()), n_(c.size()), table_(m_ + 1, std::vector<Rational>(n_ + 1)), basic_(m_), nonbasic_(n_)
    {
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j)
                table_[i][j] = a[i][j];
            table_[i][n_] = b[i];
            basic_[i] = n_ + i;
        }
        for (std::size_t j = 0; j < n_; ++j) {
            table_[m_][j] = -c[j];
            nonbasic_[j] = j;
        }
    }

    /// Optimal primal values for the n structural variables.
    std::vector<Rational> maximize()
    {
        for (;;) {
            std::size_t enter = n_;
            for (std::size_t j = 0; j < n_; ++j)
                if (table_[m_][j] < 0 && (enter == n_ || nonbasic_[j] < nonbasic_[enter]))
                    enter = j;
            if (enter == n_)
                break;
            std::size_t leave = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (table_[i][enter] <= 0)
                    continue;
                Rational ratio = table_[i][n_] / table_[i][enter];
                if (leave == m_ || ratio < best || (ratio == best && basic_[i] < basic_[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == m_)
                throw std::logic_error("unbounded objective in bounded simplex");
            pivot(leave, enter);
        }
        std::vector<Rational> y(n_);
        for (std::size_t i = 0; i < m_; ++i)
            if (basic_[i] < n_)
                y[basic_[i]] = table_[i][n_];
        return y;
    }

  private:
    void pivot(std::size_t r, std::size_t s)
    {
        const Rational inv = 1 / table_[r][s];
        for (std::size_t j = 0; j <= n_; ++j)
            if (j != s)
                table_[r][j] *= inv;
        table_[r][s] = inv;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r || table_[i][s] == 0)
                continue;
            const Rational f = table_[i][s];
            for (std::size_t j = 0; j <= n_; ++j)
                if (j != s && table_[r][j] != 0)
                    table_[i][j] -= f * table_[r][j];
            table_[i][s] = -f * inv;
        }
        std::swap(basic_[r], nonbasic_[s]);
    }

    std::size_t m_, n_;
    std::vector<std::vector<Rational>> table_;
    std::vector<std::size_t> basic_, nonbasic_;
};

} // namespace detail

/**
 * A point satisfying every row of the system (strict rows strictly), or
 * nullopt when none exists.
 *
 * Solved as  max s  subject to  a.x >= s on strict rows, the weak and
 * equality rows, and s <= 1, with x split into nonnegative parts. The
 * strict rows are simultaneously satisfiable iff the optimum s is positive.
 */
inline std::optional<Point> feasible_point(const LinearSystem& system)
{
    if (system.rows.empty())
        throw InputError("linear system has no rows");
    const std::size_t n = system.dimension();
    for (const auto& row : system.rows)
        if (row.normal.size() != n)
            throw InputError("linear system rows have mixed dimensions");

    const bool any_strict = std::any_of(system.rows.begin(), system.rows.end(),
                                        [](const Constraint& r) { return r.relation == Relation::Positive; });
    if (!any_strict)
        return Point(n, Rational(0));

    // variables: x+ (n), x- (n), s
    const std::size_t vars = 2 * n + 1;
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    auto push_row = [&](const Point& normal, int orientation, bool with_slack) {
        std::vector<Rational> row(vars);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = -orientation * normal[j];
            row[n + j] = orientation * normal[j];
        }
        if (with_slack)
            row[2 * n] = 1;
        a.push_back(std::move(row));
        b.emplace_back(0);
    };
    for (const auto& row : system.rows) {
        switch (row.relation) {
        case Relation::Positive: push_row(row.normal, 1, true); break;
        case Relation::NonNegative: push_row(row.normal, 1, false); break;
        case Relation::Zero:
            push_row(row.normal, 1, false);
            push_row(row.normal, -1, false);
            break;
        }
    }
    std::vector<Rational> cap(vars);
    cap[2 * n] = 1;
    a.push_back(cap);
    b.emplace_back(1);
    std::vector<Rational> objective(vars);
    objective[2 * n] = 1;

    const auto y = detail::BoundedSimplex(a, b, objective).maximize();
    if (y[2 * n] <= 0)
        return std::nullopt;
    Point x(n);
    for (std::size_t j = 0; j < n; ++j)
        x[j] = y[j] - y[n + j];
    return x;
}

} // namespace cdepth

#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "cdepth/configuration.hpp"
#include "cdepth/depth.hpp"

namespace cdepth {

struct ValidationReport {
    bool zero_in_core = false;
    bool zero_interior = false;
    bool general_position = false;
    /// Flat point indices (colour * (d+1) + index) of degenerate subsets, capped.
    std::vector<std::vector<int>> degenerate_witnesses;
    /// Number of degenerate subsets found, including those beyond the cap.
    std::size_t degenerate_count = 0;
};

inline constexpr std::size_t kDegenerateWitnessCap = 256;

namespace detail {

/// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(int n, int k, Fn fn)
{
    if (k > n)
        return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    for (;;) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i)
            --i;
        if (i < 0)
            return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

/**
 * Check the standing assumptions on a configuration: the origin in every
 * colour's hull (and strictly inside), every d+1 points affinely
 * independent, and no d points linearly dependent.
 */
inline ValidationReport validate(const Configuration& config)
{
    const int d = config.dimension;
    ValidationReport report;
    report.zero_in_core = true;
    report.zero_interior = true;
    for (const auto& cls : config.colours) {
        const auto c = simplex_contains_origin(cls);
        if (!c.contains) {
            report.zero_in_core = false;
            report.zero_interior = false;
            continue;
        }
        std::vector<Point> diffs;
        for (std::size_t j = 1; j < cls.size(); ++j) {
            Point p = cls[j];
            for (int r = 0; r < d; ++r)
                p[r] -= cls[0][r];
            diffs.push_back(std::move(p));
        }
        const bool independent = det_sign(diffs) != 0;
        if (!independent || std::any_of(c.coefficients.begin(), c.coefficients.end(),
                                        [](const Rational& x) { return x <= 0; }))
            report.zero_interior = false;
    }

    // primitive directions for linear tests, integer homogeneous lifts (c p, c) for affine ones
    std::vector<IntVector> flat;
    std::vector<IntVector> lifted;
    for (const auto& cls : config.colours)
        for (const auto& p : cls) {
            flat.push_back(primitive_direction(p));
            Point h = p;
            h.push_back(Rational(1));
            lifted.push_back(primitive_direction(h));
        }
    const int n = static_cast<int>(flat.size());

    auto record = [&](const std::vector<int>& idx) {
        ++report.degenerate_count;
        if (report.degenerate_witnesses.size() < kDegenerateWitnessCap)
            report.degenerate_witnesses.push_back(idx);
    };

    const DirectionTable linear(std::move(flat));
    const DirectionTable affine(std::move(lifted));
    // d points linearly dependent (a colourful simplex could have the origin on its boundary)
    detail::for_each_subset(n, d, [&](const std::vector<int>& idx) {
        if (linear.det_is_zero(std::span<const int>(idx)))
            record(idx);
    });
    // d+1 points affinely dependent
    detail::for_each_subset(n, d + 1, [&](const std::vector<int>& idx) {
        if (affine.det_is_zero(std::span<const int>(idx)))
            record(idx);
    });

    report.general_position = report.degenerate_count == 0;
    return report;
}

} // namespace cdepth

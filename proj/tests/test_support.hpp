#pragma once

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cdepth/configuration.hpp"
#include "cdepth/exact.hpp"

namespace cdepth::testing {

inline Point pt(std::initializer_list<const char*> xs)
{
    Point p;
    for (const char* x : xs)
        p.push_back(parse_rational(x));
    return p;
}

inline Point ipt(std::initializer_list<long> xs)
{
    Point p;
    for (long x : xs)
        p.emplace_back(x);
    return p;
}

inline std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline std::string sample_path(const std::string& name)
{
    return std::string(CDEPTH_SAMPLES_DIR) + "/" + name;
}

inline Configuration load_sample(const std::string& name)
{
    return parse_configuration(slurp(sample_path(name)));
}

/// Three copies of the triangle (1,0), (0,1), (-1,-1).
inline Configuration symmetric_d2()
{
    const std::vector<Point> tri{ipt({1, 0}), ipt({0, 1}), ipt({-1, -1})};
    return Configuration{2, {tri, tri, tri}};
}

/// Small-denominator random point, independent of the library's generator.
inline Point small_random_point(std::mt19937_64& rng, int d, int range = 9)
{
    std::uniform_int_distribution<int> num(-range, range);
    std::uniform_int_distribution<int> den(1, 4);
    Point p(d);
    for (auto& x : p)
        x = Rational(num(rng), den(rng));
    return p;
}

/// Uniform random configuration with no guarantee about the core.
inline Configuration raw_random_configuration(std::mt19937_64& rng, int d, int range = 9)
{
    Configuration config{d, {}};
    for (int c = 0; c <= d; ++c) {
        std::vector<Point> cls;
        for (int j = 0; j <= d; ++j)
            cls.push_back(small_random_point(rng, d, range));
        config.colours.push_back(std::move(cls));
    }
    return config;
}

/// Permute colours and the points inside each colour.
inline Configuration shuffled(const Configuration& config, std::mt19937_64& rng)
{
    Configuration out = config;
    std::shuffle(out.colours.begin(), out.colours.end(), rng);
    for (auto& cls : out.colours)
        std::shuffle(cls.begin(), cls.end(), rng);
    return out;
}

} // namespace cdepth::testing

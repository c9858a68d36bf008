#include <set>

#include <gtest/gtest.h>

#include "cdepth/search.hpp"
#include "cdepth/validation.hpp"
#include "test_support.hpp"

using namespace cdepth;
using namespace cdepth::testing;

TEST(ParseConfiguration, MinimalDocument)
{
    const auto config = parse_configuration(R"({"d": 1, "colours": [[["1"],["-1"]],[["1/2"],["-1/2"]]]})");
    EXPECT_EQ(config.dimension, 1);
    ASSERT_EQ(config.colours.size(), 2u);
    EXPECT_EQ(config.colours[1][0], pt({"1/2"}));
    EXPECT_EQ(config.colours[1][1], pt({"-1/2"}));
}

TEST(ParseConfiguration, CountMismatch)
{
    EXPECT_THROW(parse_configuration(R"({"d": 1, "colours": [[["1"],["-1"],["2"]],[["1"],["-1"]]]})"),
                 CountMismatch);
    EXPECT_THROW(parse_configuration(R"({"d": 1, "colours": [[["1"],["-1"]]]})"), CountMismatch);
    EXPECT_THROW(parse_configuration(R"({"d": 1, "colours": [[["1","2"],["-1"]],[["1"],["-1"]]]})"),
                 CountMismatch);
}

TEST(ParseConfiguration, MalformedRationalNamesTheField)
{
    try {
        parse_configuration(slurp(sample_path("malformed.json")));
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("colours[1][1][1]"), std::string::npos) << e.what();
    }
}

TEST(ParseConfiguration, SyntaxErrorCarriesLineNumber)
{
    try {
        parse_configuration("{\n  \"d\": 1,\n  \"colours\": [[[\"1\"],]\n}");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(ParseConfiguration, RejectsBadDimension)
{
    EXPECT_THROW(parse_configuration(R"({"d": 0, "colours": []})"), ParseError);
    EXPECT_THROW(parse_configuration(R"({"d": "2", "colours": []})"), ParseError);
    EXPECT_THROW(parse_configuration(R"([1, 2])"), ParseError);
    EXPECT_THROW(parse_configuration(R"({"d": 1})"), ParseError);
}

TEST(ParseConfiguration, RoundTripIsIdentity)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto config = raw_random_configuration(rng, 1 + trial % 4);
        EXPECT_EQ(parse_configuration(serialize_configuration(config)), config);
    }
    const auto generated = random_configuration(3, 17);
    EXPECT_EQ(parse_configuration(serialize_configuration(generated)), generated);
}

TEST(EnumerateTransversals, CountsAndOrder)
{
    for (int d = 1; d <= 5; ++d) {
        Configuration config{d, std::vector<std::vector<Point>>(d + 1, std::vector<Point>(d + 1, Point(d)))};
        const auto all = enumerate_transversals(config);
        std::size_t expected = 1;
        for (int k = 0; k <= d; ++k)
            expected *= static_cast<std::size_t>(d + 1);
        ASSERT_EQ(all.size(), expected);
        EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
        EXPECT_EQ(std::set<Transversal>(all.begin(), all.end()).size(), expected);
        for (std::size_t rank = 0; rank < all.size(); rank += 97)
            EXPECT_EQ(transversal_at(rank, d + 1, d + 1), all[rank]);
    }
}

TEST(EnumerateTransversals, NamedSizes)
{
    auto sized = [](int d) {
        return enumerate_transversals(
                   Configuration{d, std::vector<std::vector<Point>>(d + 1, std::vector<Point>(d + 1, Point(d)))})
            .size();
    };
    EXPECT_EQ(sized(1), 4u);
    EXPECT_EQ(sized(2), 27u);
    EXPECT_EQ(sized(4), 3125u);
}

TEST(Validate, SymmetricTriangles)
{
    const auto r = validate(symmetric_d2());
    EXPECT_TRUE(r.zero_in_core);
    EXPECT_TRUE(r.zero_interior);
    EXPECT_FALSE(r.general_position);
    EXPECT_FALSE(r.degenerate_witnesses.empty());
    // barycentric coordinates of the origin in each triangle are (1/3, 1/3, 1/3)
    const auto c = simplex_contains_origin(symmetric_d2().colours[0]);
    EXPECT_EQ(c.coefficients, (std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
}

TEST(Validate, HullMissingOrigin)
{
    const Configuration config{1, {{ipt({1}), ipt({2})}, {ipt({-1}), ipt({1})}}};
    const auto r = validate(config);
    EXPECT_FALSE(r.zero_in_core);
    EXPECT_FALSE(r.zero_interior);
}

TEST(Validate, OriginOnBoundaryIsNotInterior)
{
    const Configuration config{1, {{ipt({0}), ipt({2})}, {ipt({-1}), ipt({1})}}};
    const auto r = validate(config);
    EXPECT_TRUE(r.zero_in_core);
    EXPECT_FALSE(r.zero_interior);
    EXPECT_FALSE(r.general_position);
}

TEST(Validate, GeneratedConfigurationsPassEveryFlag)
{
    for (int d = 1; d <= 3; ++d)
        for (std::uint64_t seed : {1u, 42u, 777u}) {
            const auto r = validate(random_configuration(d, seed));
            EXPECT_TRUE(r.zero_in_core);
            EXPECT_TRUE(r.zero_interior);
            EXPECT_TRUE(r.general_position);
            EXPECT_TRUE(r.degenerate_witnesses.empty());
        }
}

TEST(Validate, InvariantUnderPermutations)
{
    std::mt19937_64 rng(31);
    std::vector<Configuration> cases{symmetric_d2(), random_configuration(2, 3), random_configuration(3, 4)};
    for (int k = 0; k < 10; ++k)
        cases.push_back(raw_random_configuration(rng, 2, 2));
    for (const auto& config : cases) {
        const auto base = validate(config);
        for (int k = 0; k < 5; ++k) {
            const auto r = validate(shuffled(config, rng));
            EXPECT_EQ(r.zero_in_core, base.zero_in_core);
            EXPECT_EQ(r.zero_interior, base.zero_interior);
            EXPECT_EQ(r.general_position, base.general_position);
            EXPECT_EQ(r.degenerate_count, base.degenerate_count);
        }
    }
}

TEST(Validate, GeneralPositionImpliesNoWitnesses)
{
    std::mt19937_64 rng(8);
    for (int k = 0; k < 30; ++k) {
        const auto r = validate(raw_random_configuration(rng, 2, 3));
        if (r.general_position)
            EXPECT_TRUE(r.degenerate_witnesses.empty());
        else
            EXPECT_GT(r.degenerate_count, 0u);
    }
}

// Copyright 2026 The natspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>

#include <gtest/gtest.h>

#include "natspec/errors.hpp"
#include "natspec/io.hpp"
#include "natspec/random.hpp"

namespace natspec {
namespace {

const std::filesystem::path kFixtures = NATSPEC_FIXTURE_DIR;

TEST(IoTest, AngleRoundTrip) {
    const GeneratorBasis b({{"a", 1.5}, {"b", 2.5}});
    const Angle x(Rational(3, 4), {2, -1});
    const auto j = io::angle_to_json(x, b);
    EXPECT_EQ(j.at("turns"), "3/4");
    EXPECT_EQ(j.at("coeffs").at("a"), 2);
    EXPECT_EQ(io::angle_from_json(j, b), x);
    EXPECT_FALSE(io::angle_to_json(Angle::pi(2), b).at("coeffs").contains("a"));
}

TEST(IoTest, MeasureRoundTripIsExact) {
    Rng rng(51);
    for (int i = 0; i < 50; ++i) {
        const auto mu = random_measure(rng);
        EXPECT_EQ(io::measure_from_json(io::Json::parse(io::measure_to_json(mu).dump())), mu);
    }
}

TEST(IoTest, Fixtures) {
    const auto d = io::read_measure(kFixtures / "dirac_gamma.json");
    EXPECT_EQ(d.disc.size(), 1u);
    EXPECT_EQ(d.basis().size(), 1u);
    EXPECT_TRUE(io::read_measure(kFixtures / "zero.json").is_zero());
    EXPECT_EQ(io::read_measure(kFixtures / "theta0.json").disc, make_theta0(GeneratorBasis{}));
    EXPECT_EQ(io::read_measure(kFixtures / "pure_ac.json").ac.degree(), 1);
}

TEST(IoTest, MalformedInputRejected) {
    EXPECT_THROW(io::read_measure(kFixtures / "malformed.json"), InvalidArgument);
    EXPECT_THROW(io::read_measure(kFixtures / "does_not_exist.json"), InvalidArgument);
    const GeneratorBasis b;
    EXPECT_THROW(io::angle_from_json(io::Json{{"turns", "1/0"}}, b), InvalidArgument);
    EXPECT_THROW(io::angle_from_json(io::Json{{"turns", "x"}}, b), InvalidArgument);
    EXPECT_THROW(io::angle_from_json(io::Json::parse(R"({"turns":"0","coeffs":{"zeta":1}})"), b), InvalidArgument);
    EXPECT_THROW(io::measure_from_json(io::Json::parse(R"({"atoms":[{"re":1}]})")), InvalidArgument);
    EXPECT_THROW(io::measure_from_json(io::Json::parse(R"({"ac":[{"k":1.5,"re":1,"im":0}]})")), InvalidArgument);
    EXPECT_THROW(io::measure_from_json(io::Json::parse("[1,2]")), InvalidArgument);
}

TEST(IoTest, TimestampComesFirst) {
    const auto text = io::dump_with_timestamp(io::Json{{"x", 1}}, "2026-01-01T00:00:00Z");
    const auto line2 = text.substr(text.find('\n') + 1);
    EXPECT_EQ(line2.substr(0, line2.find('\n')), R"(  "timestamp": "2026-01-01T00:00:00Z",)");
}

TEST(IoTest, FormatAndCsv) {
    EXPECT_EQ(io::format_double(0.1), "0.1");
    EXPECT_EQ(io::format_double(1.0), "1");
    const std::vector<Complex> pts = {{1.0, -0.5}};
    EXPECT_EQ(io::points_to_csv(pts), "re,im\n1,-0.5\n");
}

}  // namespace
}  // namespace natspec

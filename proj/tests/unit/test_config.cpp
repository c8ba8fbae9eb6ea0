#include <gtest/gtest.h>

#include <string>

#include "spinxfer/cli/config.hpp"
#include "spinxfer/errors.hpp"

using namespace spinxfer;
using spinxfer::cli::parse_config;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST(ParseConfig, MinimalDocumentTakesDefaults) {
  const auto c = parse_config(R"({"N": 10})");
  EXPECT_EQ(c.chain_length, 10);
  EXPECT_EQ(c.max_excitations, 2);
  EXPECT_EQ(std::get<InputKind>(c.input), InputKind::TypeI);
  EXPECT_EQ(c.j0, 1.0);
  EXPECT_TRUE(c.perturbation.is_zero());
  EXPECT_EQ(c.perturbation.seed, kDefaultSeed);
  EXPECT_EQ(c.time.points, 801u);
  EXPECT_EQ(c.time.span_in_ts, 4.0);
  EXPECT_EQ(c.realisations, 100);
  EXPECT_TRUE(c.perturbation.chi_cross_sector);
  EXPECT_FALSE(c.perturbation.chi_diagonal);
}

TEST(ParseConfig, FullDocument) {
  const auto c = parse_config(R"({
    "chain_length": 15, "input": "TypeII", "profile": "pst", "j0": 2.0,
    "eta": 0.1, "epsilon": 0.5, "gamma": 0.2, "delta": 0.05, "chi": 0.03,
    "seed": 18446744073709551615, "chi_cross_sector": false, "chi_diagonal": true,
    "time": {"points": 101, "span": 2.5},
    "observable": {"measure": "eof", "target": "mirrored", "eof_sites": [14, 15],
                   "probe": "first_transfer"},
    "realisations": 100, "sweep": {"n": [6, 7, 8, 9, 10, 11, 12, 13, 14, 15]}
  })");
  EXPECT_EQ(c.chain_length, 15);
  EXPECT_EQ(std::get<InputKind>(c.input), InputKind::TypeII);
  EXPECT_EQ(c.j0, 2.0);
  EXPECT_EQ(c.perturbation.epsilon, std::vector<double>{0.5});
  EXPECT_EQ(c.perturbation.seed, 18446744073709551615ULL);
  EXPECT_FALSE(c.perturbation.chi_cross_sector);
  EXPECT_TRUE(c.perturbation.chi_diagonal);
  EXPECT_EQ(c.time.points, 101u);
  EXPECT_EQ(*c.observable.measure, Measure::Eof);
  EXPECT_EQ(*c.observable.eof_sites, (SitePair{14, 15}));
  EXPECT_EQ(*c.observable.probe, ProbeTime::FirstTransfer);
  EXPECT_EQ(c.sweep_n.size(), 10u);
}

TEST(ParseConfig, CustomInput) {
  const auto c = parse_config(
      R"({"N": 4, "input": [{"state": "1000"}, {"state": "0001", "amplitude": [0, 1]}]})");
  const auto& terms = std::get<std::vector<CustomTerm>>(c.input);
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[1].bits, "0001");
  EXPECT_EQ(terms[1].amplitude, complex(0.0, 1.0));
}

TEST(ParseConfig, ErrorsNameTheKey) {
  EXPECT_NE(error_of(R"({"N": 6, "input": "TypeIII", "max_excitations": 1})").find("max_excitations"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"N": 6, "colour": 1})").find("colour"), std::string::npos);
  EXPECT_NE(error_of(R"({"chi": 0.1})").find("'N'"), std::string::npos);
  EXPECT_NE(error_of(R"({"N": 6, "chi": -0.1})").find("chi"), std::string::npos);
  EXPECT_NE(error_of(R"({"N": 6, "epsilon": [0.1, 0.2]})").find("epsilon"), std::string::npos);
  EXPECT_NE(error_of(R"({"N": 6, "profile": "uniform"})").find("profile"), std::string::npos);
  EXPECT_NE(error_of(R"({"N": 6, "time": {"points": 0}})").find("time.points"), std::string::npos);
  EXPECT_NE(error_of(R"({"N": 6, "observable": {"measure": "purity"}})").find("observable.measure"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"N": 6, "input": "TypeIV"})").find("input"), std::string::npos);
  EXPECT_NE(error_of(R"({"N": 21})").find("N"), std::string::npos);
  EXPECT_NE(error_of("{not json").find("JSON"), std::string::npos);
  EXPECT_NE(error_of(R"({"N": 6, "seed": -3})").find("seed"), std::string::npos);
}

TEST(ToJson, RoundTrips) {
  const auto c = parse_config(R"({"N": 8, "input": "TypeIII", "epsilon": [0,1,2,3,4,5,6,7],
                                  "chi": 0.03, "seed": 5, "observable": {"eof_sites": [1, 8]}})");
  const auto again = parse_config(cli::to_json(c).dump());
  EXPECT_EQ(cli::to_json(again), cli::to_json(c));
  EXPECT_EQ(again.perturbation.epsilon, c.perturbation.epsilon);
  EXPECT_EQ(again.perturbation.seed, 5u);
}

#include "pstforge/errors.hpp"
#include "pstforge/io.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace pstforge;

TEST(Json, RoundTripThroughText) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 7;
    const auto p = test_support::random_transfer_permutation(n, rng);
    const auto a = test_support::random_assignment(p, rng, trial % 3 == 0);
    const auto h = synthesize(p, a);

    const auto p2 = io::permutation_from_json(io::parse_json(io::to_json(p).dump()));
    EXPECT_EQ(p2, p);

    const auto a2 = io::assignment_from_json(io::parse_json(io::to_json(a).dump(2)));
    EXPECT_EQ(a2.tau, a.tau);
    EXPECT_EQ(a2.shifts, a.shifts);
    ASSERT_EQ(a2.mixing.size(), a.mixing.size());
    for (std::size_t k = 0; k < a.mixing.size(); ++k) {
      EXPECT_EQ(a2.mixing[k].eigenvalue_index, a.mixing[k].eigenvalue_index);
      EXPECT_EQ(a2.mixing[k].block, a.mixing[k].block);
    }

    const auto h2 = io::hamiltonian_from_json(io::parse_json(io::to_json(h).dump()));
    EXPECT_EQ(h2.tau, h.tau);
    EXPECT_EQ(h2.matrix, h.matrix);
    EXPECT_TRUE(verify_pst(h2, p, 1e-10).pass);
  }
}

TEST(Json, ParseErrorLocation) {
  try {
    io::parse_json("{\n  \"n\": 3,\n  \"image\": [3, 1, }\n");
    FAIL() << "expected ParseError";
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 1u);
  }
  EXPECT_THROW(io::parse_json(""), io::ParseError);
}

TEST(Json, SchemaErrorsAreInputErrors) {
  EXPECT_THROW(io::permutation_from_json(io::parse_json(R"({"n": 3})")), InvalidInput);
  EXPECT_THROW(io::permutation_from_json(io::parse_json(R"({"n": 3, "image": [3, "x", 1]})")), InvalidInput);
  EXPECT_THROW(io::permutation_from_json(io::parse_json(R"({"n": 4, "image": [3, 2, 1]})")), InvalidInput);
  EXPECT_THROW(io::permutation_from_json(io::parse_json(R"({"n": 3, "image": [1, 2, 3]})")), InvalidInput);
  EXPECT_THROW(io::assignment_from_json(io::parse_json(R"({"tau": -1, "shifts": [0, 0]})")), InvalidInput);
  EXPECT_THROW(io::hamiltonian_from_json(io::parse_json(R"({"n": 2, "tau": 1, "matrix": [[[0, 0]]]})")), InvalidInput);
  EXPECT_THROW(io::hamiltonian_from_json(io::parse_json(R"({"n": 2, "tau": 1, "matrix": [[[0, 0], [1, 0]], [[2, 0], [0, 0]]]})")),
               InvalidInput);
}

TEST(Csv, DesignTable) {
  WireDesign d;
  d.gamma = 1.0;
  d.params = {{1.5, -0.25, 2.0}, {1.0, 0.5, 0.75}};
  std::ostringstream out;
  io::write_design_csv(out, d);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "parameter,value,units");
  std::getline(in, line);
  EXPECT_EQ(line, "E1,1.5,pi/tau");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 6);
}

TEST(Csv, TraceHeaderAndRows) {
  const auto h = synthesize(one_cycle_permutation(3), SpectralAssignment{1.0, {0, 1, 2}, {}});
  const auto trace = occupation_trace(h, 1, 1, 4);
  std::ostringstream out;
  io::write_trace_csv(out, trace);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "m,P_1,P_2,P_3,T");
  std::getline(in, line);
  EXPECT_EQ(line, "0,1,0,0,0");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(Csv, FloatFormat) {
  EXPECT_EQ(io::format_float(0.1), "0.1");
  EXPECT_EQ(io::format_float(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(io::format_float(-2.0), "-2");
}

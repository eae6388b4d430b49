// Copyright 2026 The kareldbg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cctype>
#include <cstdlib>
#include <set>
#include <string>

#include "golden_cases.hpp"
#include "karel/interpreter.hpp"
#include "karel/parser.hpp"
#include "karel/sampler.hpp"
#include "karel/world.hpp"
#include "test_util.hpp"

namespace karel {
namespace {

using testing::world;

constexpr Dir N = Dir::kNorth, E = Dir::kEast;

class Golden : public ::testing::TestWithParam<testing::GoldenCase> {};

TEST_P(Golden, MatchesHandSimulation) {
  const auto& gc = GetParam();
  const ExecResult r = execute(parse_text(gc.program), gc.input, gc.step_limit);
  EXPECT_EQ(r.trace.status.to_string(), gc.status);
  ASSERT_EQ(r.final_state.has_value(), gc.final_state.has_value());
  if (gc.final_state) {
    EXPECT_EQ(*r.final_state, *gc.final_state)
        << render(*r.final_state) << "vs\n" << render(*gc.final_state);
    EXPECT_EQ(r.trace.events.back().state, *r.final_state);
  }
  EXPECT_EQ(r.trace.events.size(), gc.events);
  EXPECT_EQ(r.trace.events.front().state, gc.input);
}

INSTANTIATE_TEST_SUITE_P(Interpreter, Golden,
                         ::testing::ValuesIn(testing::golden_cases()),
                         [](const auto& info) {
                           std::string n;
                           for (char ch : info.param.name) {
                             n += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
                           }
                           return n;
                         });

TEST(Interpreter, GoldenSuiteIsLargeEnoughAndCoversCrashKinds) {
  const auto cases = testing::golden_cases();
  EXPECT_GE(cases.size(), 25u);
  std::set<std::string> statuses;
  for (const auto& c : cases) statuses.insert(c.status.substr(0, c.status.find(',')));
  EXPECT_TRUE(statuses.count("Crash(MoveBlocked"));
  EXPECT_TRUE(statuses.count("Crash(PickEmpty"));
  EXPECT_TRUE(statuses.count("Crash(PutFull"));
}

TEST(Interpreter, ProducingTokensOfManualExample) {
  // def run { move turnLeft move }: tokens 3, 4, 5 are the actions.
  const ExecResult r =
      execute(parse_text("def run { move turnLeft move }"), world(3, 3, 1, 1, E));
  ASSERT_EQ(r.trace.events.size(), 4u);
  EXPECT_FALSE(r.trace.events[0].producing_token.has_value());
  EXPECT_EQ(r.trace.events[1].producing_token, 3u);
  EXPECT_EQ(r.trace.events[2].producing_token, 4u);
  EXPECT_EQ(r.trace.events[3].producing_token, 5u);
}

TEST(Interpreter, ActiveControlsOfNestedLoop) {
  // 0 def 1 run 2 { 3 repeat 4 ( 5 2 6 ) 7 { 8 if 9 ( 10 frontIsClear 11 )
  // 12 { 13 move 14 } 15 turnLeft 16 } 17 }
  const ExecResult r = execute(
      parse_text("def run { repeat ( 2 ) { if ( frontIsClear ) { move } turnLeft } }"),
      world(3, 3, 1, 1, E));
  ASSERT_EQ(r.trace.events.size(), 5u);
  EXPECT_EQ(r.trace.events[1].active_control_tokens, (std::vector<std::size_t>{3, 8}));
  EXPECT_EQ(r.trace.events[2].active_control_tokens, (std::vector<std::size_t>{3}));
  EXPECT_EQ(r.trace.events[2].producing_token, 15u);
}

TEST(Interpreter, AttributionMatchesAstWalk) {
  testing::WildProgramGen gen(21);
  for (int i = 0; i < 1500; ++i) {
    const Program p = gen();
    const auto oracle = testing::control_ancestors(p);
    const ExecResult r = execute(p, sample_world(static_cast<std::uint64_t>(i)), 200);
    for (std::size_t t = 1; t < r.trace.events.size(); ++t) {
      const TraceEvent& ev = r.trace.events[t];
      ASSERT_TRUE(ev.producing_token.has_value());
      ASSERT_TRUE(oracle.count(*ev.producing_token));
      ASSERT_EQ(ev.active_control_tokens, oracle.at(*ev.producing_token));
    }
  }
}

TEST(Interpreter, ConservationLaws) {
  testing::WildProgramGen gen(22);
  for (int i = 0; i < 1000; ++i) {
    const Program p = gen();
    const TokenSeq t = flatten(p);
    const ExecResult r = execute(p, sample_world(static_cast<std::uint64_t>(1000 + i)), 300);
    for (std::size_t k = 1; k < r.trace.events.size(); ++k) {
      const WorldState& a = r.trace.events[k - 1].state;
      const WorldState& b = r.trace.events[k].state;
      ASSERT_EQ(a.obstacle_cells(), b.obstacle_cells());
      const Robot ra = a.robot(), rb = b.robot();
      int marker_delta = 0;
      for (int row = 0; row < a.height(); ++row)
        for (int col = 0; col < a.width(); ++col)
          marker_delta += std::abs(a.markers(row, col) - b.markers(row, col));
      switch (t[*r.trace.events[k].producing_token]) {
        case Token::kMove:
          ASSERT_EQ(std::abs(ra.row - rb.row) + std::abs(ra.col - rb.col), 1);
          ASSERT_EQ(ra.dir, rb.dir);
          ASSERT_EQ(marker_delta, 0);
          break;
        case Token::kTurnLeft:
        case Token::kTurnRight:
          ASSERT_EQ(ra.row, rb.row);
          ASSERT_EQ(ra.col, rb.col);
          ASSERT_NE(ra.dir, rb.dir);
          ASSERT_EQ(marker_delta, 0);
          break;
        default:
          ASSERT_EQ(ra, rb);
          ASSERT_EQ(marker_delta, 1);
      }
    }
  }
}

TEST(Interpreter, LoopFreeTraceLength) {
  testing::WildProgramGen gen(23);
  for (int i = 0; i < 500; ++i) {
    Program p;
    // Straight-line program: strip every control by taking the actions only.
    for (Token tok : flatten(gen())) {
      if (is_action(tok)) p.body.push_back(Stmt::make_action(token_action(tok)));
    }
    reindex(p);
    const ExecResult r = execute(p, sample_world(static_cast<std::uint64_t>(i)));
    if (r.trace.status.ok()) {
      ASSERT_EQ(r.trace.events.size(), p.body.size() + 1);
    } else {
      ASSERT_EQ(r.trace.events.size(), static_cast<std::size_t>(r.trace.status.step));
    }
  }
}

TEST(Interpreter, DeterministicTraces) {
  testing::WildProgramGen gen(24);
  for (int i = 0; i < 200; ++i) {
    const Program p = gen();
    const WorldState w = sample_world(static_cast<std::uint64_t>(i));
    EXPECT_EQ(execute(p, w).trace, execute(p, w).trace);
    EXPECT_EQ(run_program(p, w), execute(p, w).final_state);
  }
}

TEST(Interpreter, RejectsNonPositiveStepLimit) {
  EXPECT_THROW(execute(parse_text("def run { }"), world(2, 2, 0, 0, N), 0),
               std::invalid_argument);
}

TEST(PassRate, SelfConsistentOnSampledPrograms) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SampleLimits l;
    l.rng_seed = seed;
    const Program p = sample_program(l);
    Spec spec;
    for (std::uint64_t k = 0; k < 5; ++k) {
      const WorldState in = sample_world(seed * 10 + k);
      if (auto out = run_program(p, in)) spec.pairs.push_back({in, *out});
    }
    if (spec.pairs.empty()) continue;
    EXPECT_TRUE(pass_rate(p, spec).perfect());
  }
}

TEST(PassRate, ThreeOfFive) {
  // Expected outputs come from executing `gold`; two pairs are then altered
  // so they cannot be satisfied.
  const Program gold = parse_text("def run { putMarker move }");
  Spec spec;
  for (int k = 0; k < 5; ++k) {
    const WorldState in = world(4, 4, k % 4, 0, E);
    WorldState out = *run_program(gold, in);
    if (k >= 3) out.robot().dir = N;
    spec.pairs.push_back({in, out});
  }
  const PassRate r = pass_rate(gold, spec);
  EXPECT_EQ(r.satisfied, 3);
  EXPECT_EQ(r.total, 5);
  EXPECT_DOUBLE_EQ(r.value(), 0.6);
}

TEST(PassRate, CrashEverywhereIsZero) {
  const Program p = parse_text("def run { pickMarker }");
  Spec spec;
  for (int k = 0; k < 3; ++k) {
    spec.pairs.push_back({world(2, 2, 0, 0, N), world(2, 2, 0, 0, N)});
  }
  EXPECT_EQ(pass_rate(p, spec).satisfied, 0);
}

TEST(PassRate, RemovingAFailedPairNeverDecreasesIt) {
  testing::WildProgramGen gen(25);
  for (int i = 0; i < 300; ++i) {
    const Program p = gen();
    const Program other = gen();
    Spec spec;
    for (int k = 0; k < 4; ++k) {
      const WorldState in = sample_world(static_cast<std::uint64_t>(i * 7 + k));
      if (auto out = run_program(other, in, 100)) spec.pairs.push_back({in, *out});
    }
    if (spec.pairs.size() < 2) continue;
    const PassRate full = pass_rate(p, spec, 100);
    for (std::size_t k = 0; k < spec.pairs.size(); ++k) {
      if (satisfies(p, spec.pairs[k], 100)) continue;
      Spec less = spec;
      less.pairs.erase(less.pairs.begin() + static_cast<std::ptrdiff_t>(k));
      EXPECT_GE(pass_rate(p, less, 100), full);
    }
  }
}

TEST(PassRate, OrdersByValue) {
  EXPECT_EQ((PassRate{1, 2}), (PassRate{2, 4}));
  EXPECT_LT((PassRate{2, 5}), (PassRate{1, 2}));
}

TEST(World, SampledWorldsAreValid) {
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const WorldState w = sample_world(seed);
    ASSERT_FALSE(w.validate().has_value()) << *w.validate();
    ASSERT_GE(w.height(), 2);
    ASSERT_LE(w.height(), 18);
    ASSERT_LE(w.marker_cells().size(), 10u);
    for (const auto& m : w.marker_cells()) {
      ASSERT_GE(m[2], 1);
      ASSERT_LE(m[2], 10);
      ASSERT_FALSE(w.obstacle(m[0], m[1]));
    }
  }
}

TEST(World, SamplingIsDeterministicAndHonoursDims) {
  EXPECT_EQ(sample_world(5), sample_world(5));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const WorldState w = sample_world(seed, std::pair{2, 2});
    EXPECT_EQ(w.height(), 2);
    EXPECT_EQ(w.width(), 2);
    EXPECT_FALSE(w.obstacle(w.robot().row, w.robot().col));
  }
}

TEST(World, CanonicalJson) {
  const WorldState w = world(3, 4, 1, 2, Dir::kSouth, {{2, 3}, {0, 1}}, {{2, 0, 5}, {0, 0, 1}});
  EXPECT_EQ(world_to_string(w),
            R"({"h":3,"w":4,"robot":{"r":1,"c":2,"dir":"S"},"obstacles":[[0,1],[2,3]],)"
            R"("markers":[[0,0,1],[2,0,5]]})");
  EXPECT_EQ(world_from_string(world_to_string(w)), w);
}

TEST(World, JsonRejectsInvalidStates) {
  EXPECT_THROW(world_from_string(R"({"h":1,"w":4,"robot":{"r":0,"c":0,"dir":"N"}})"),
               std::invalid_argument);
  EXPECT_THROW(world_from_string(
                   R"({"h":2,"w":2,"robot":{"r":0,"c":0,"dir":"N"},"obstacles":[[0,0]]})"),
               std::invalid_argument);
  EXPECT_THROW(world_from_string(
                   R"({"h":2,"w":2,"robot":{"r":0,"c":0,"dir":"N"},"markers":[[1,1,11]]})"),
               std::invalid_argument);
  EXPECT_THROW(world_from_string(R"({"h":2,"w":2,"robot":{"r":0,"c":0,"dir":"Q"}})"),
               std::invalid_argument);
}

TEST(World, CellEncodingFollowsFeatureTable) {
  const WorldState w = world(3, 3, 1, 1, Dir::kWest, {{0, 0}}, {{2, 2, 10}, {1, 1, 3}});
  auto robot_cell = encode_cell(w, 1, 1);
  EXPECT_EQ(robot_cell[3], 1.0f);  // facing west
  EXPECT_EQ(robot_cell[5 + 3], 1.0f);
  float sum = 0;
  for (float x : robot_cell) sum += x;
  EXPECT_EQ(sum, 2.0f);
  EXPECT_EQ(encode_cell(w, 0, 0)[4], 1.0f);
  EXPECT_EQ(encode_cell(w, 2, 2)[15], 1.0f);
  auto outside = encode_cell(w, 5, 5);
  EXPECT_EQ(outside[5], 1.0f);
  sum = 0;
  for (float x : outside) sum += x;
  EXPECT_EQ(sum, 1.0f);
}

TEST(World, RenderShowsRobotAndMarkers) {
  const WorldState w = world(2, 3, 0, 0, E, {{1, 2}}, {{1, 0, 10}, {0, 2, 4}});
  EXPECT_EQ(render(w), ">.4\nX.#\n");
}

}  // namespace
}  // namespace karel

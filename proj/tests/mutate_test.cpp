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

#include <map>
#include <set>
#include <sstream>

#include "karel/dataset.hpp"
#include "karel/mutate.hpp"
#include "karel/parser.hpp"
#include "karel/sampler.hpp"
#include "test_util.hpp"

namespace karel {
namespace {

std::map<MutationKind, int> kind_counts(const std::vector<Mutation>& ms) {
  std::map<MutationKind, int> c;
  for (const auto& m : ms) ++c[m.kind];
  return c;
}

Program sampled(std::uint64_t seed) {
  SampleLimits l;
  l.rng_seed = seed;
  return sample_program(l);
}

TEST(Applicable, SingleAction) {
  const auto ms = applicable_mutations(parse_text("def run { move }"));
  auto c = kind_counts(ms);
  EXPECT_EQ(c[MutationKind::kInsert], 2 * 5);
  EXPECT_EQ(c[MutationKind::kDelete], 1);
  EXPECT_EQ(c[MutationKind::kReplace], 4);
  // if and while over 10 conditions, repeat over 20 counts, ifelse over 10
  // conditions and 2 split points.
  EXPECT_EQ(c[MutationKind::kWrap], 10 + 10 + 20 + 2 * 10);
  EXPECT_EQ(c[MutationKind::kUnwrap], 0);
  EXPECT_EQ(c[MutationKind::kReplaceControl], 0);
  EXPECT_EQ(ms.size(), 75u);
}

TEST(Applicable, EmptyProgramOnlyInserts) {
  const auto ms = applicable_mutations(parse_text("def run { }"));
  ASSERT_EQ(ms.size(), 5u);
  for (const auto& m : ms) EXPECT_EQ(m.kind, MutationKind::kInsert);
}

TEST(Applicable, ControlNodeOffersUnwrapAndReplaceControl) {
  const auto ms = applicable_mutations(parse_text("def run { repeat ( 3 ) { move } }"));
  auto c = kind_counts(ms);
  EXPECT_EQ(c[MutationKind::kUnwrap], 1);
  EXPECT_EQ(c[MutationKind::kReplaceControl], 19);
  const auto ws = applicable_mutations(parse_text("def run { while ( frontIsClear ) { } }"));
  EXPECT_EQ(kind_counts(ws)[MutationKind::kReplaceControl], 9);
}

TEST(Applicable, ConditionDomainHasTenForms) {
  const auto d = condition_domain();
  EXPECT_EQ(d.size(), 10u);
  std::set<std::pair<int, int>> distinct;
  for (const auto& c : d) {
    EXPECT_LE(c.negations, 1);
    distinct.insert({c.negations, static_cast<int>(c.atom)});
  }
  EXPECT_EQ(distinct.size(), 10u);
}

TEST(Apply, WrapRepeatAndUnwrap) {
  const Program p = parse_text("def run { move }");
  Mutation wrap;
  wrap.kind = MutationKind::kWrap;
  wrap.index = 0;
  wrap.span_end = 1;
  wrap.control = StmtKind::kRepeat;
  wrap.count = 4;
  const Program w = apply_mutation(p, wrap);
  EXPECT_EQ(to_text(w), "def run { repeat ( 4 ) { move } }");
  Mutation unwrap;
  unwrap.kind = MutationKind::kUnwrap;
  unwrap.index = 0;
  EXPECT_EQ(to_text(apply_mutation(w, unwrap)), "def run { move }");
}

TEST(Apply, ReplaceControlKeepsBody) {
  const Program p = parse_text("def run { while ( frontIsClear ) { move turnLeft } }");
  Mutation m;
  m.kind = MutationKind::kReplaceControl;
  m.index = 0;
  m.cond = Cond{0, Atom::kLeftIsClear};
  EXPECT_EQ(to_text(apply_mutation(p, m)),
            "def run { while ( leftIsClear ) { move turnLeft } }");
}

TEST(Apply, IfElseWrapSplitsAndUnwrapSplices) {
  const Program p = parse_text("def run { move turnLeft putMarker }");
  Mutation m;
  m.kind = MutationKind::kWrap;
  m.index = 0;
  m.span_end = 3;
  m.split = 1;
  m.control = StmtKind::kIfElse;
  m.cond = Cond{1, Atom::kMarkersPresent};
  const Program w = apply_mutation(p, m);
  EXPECT_EQ(to_text(w),
            "def run { ifelse ( not markersPresent ) { move } else { turnLeft putMarker } }");
  Mutation u;
  u.kind = MutationKind::kUnwrap;
  u.index = 0;
  EXPECT_EQ(to_text(apply_mutation(w, u)), to_text(p));
}

TEST(Apply, NestedPath) {
  const Program p = parse_text(
      "def run { ifelse ( frontIsClear ) { move } else { turnLeft turnLeft } }");
  Mutation m;
  m.kind = MutationKind::kDelete;
  m.block = {{0, 1}};
  m.index = 1;
  EXPECT_EQ(to_text(apply_mutation(p, m)),
            "def run { ifelse ( frontIsClear ) { move } else { turnLeft } }");
}

TEST(Apply, RejectsInapplicable) {
  const Program p = parse_text("def run { repeat ( 2 ) { move } }");
  Mutation m;
  m.kind = MutationKind::kDelete;
  m.index = 0;
  EXPECT_THROW(apply_mutation(p, m), InapplicableMutation);
  m.kind = MutationKind::kReplaceControl;
  m.count = 2;
  EXPECT_THROW(apply_mutation(p, m), InapplicableMutation);
  m.kind = MutationKind::kWrap;
  m.span_end = 0;
  EXPECT_THROW(apply_mutation(p, m), InapplicableMutation);
  m.kind = MutationKind::kInsert;
  m.index = 5;
  EXPECT_THROW(apply_mutation(p, m), InapplicableMutation);
  m.index = 0;
  m.block = {{0, 1}};
  EXPECT_THROW(apply_mutation(p, m), InapplicableMutation);
}

TEST(Apply, EveryEnumeratedMutationParsesOnWildPrograms) {
  testing::WildProgramGen gen(41);
  for (int i = 0; i < 150; ++i) {
    const Program p = gen(3, 3);
    for (const auto& m : applicable_mutations(p)) {
      const Program q = apply_mutation(p, m);
      ASSERT_TRUE(try_parse(flatten(q)).has_value()) << describe(m);
      ASSERT_EQ(parse(flatten(q)).body, q.body);
    }
  }
}

// Inverse coverage: after any single mutation of a sampled program, one
// more mutation can restore the original tokens.
TEST(Apply, InverseCoverageOnSampledPrograms) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Program p = sampled(seed);
    const TokenSeq original = flatten(p);
    for (const auto& m : applicable_mutations(p)) {
      const Program q = apply_mutation(p, m);
      bool restored = false;
      for (const auto& back : applicable_mutations(q)) {
        if (flatten(apply_mutation(q, back)) == original) {
          restored = true;
          break;
        }
      }
      ASSERT_TRUE(restored) << to_text(p) << " via " << describe(m);
    }
  }
}

TEST(MutateN, DeterministicAndValid) {
  const Program p = parse_text("def run { move }");
  EXPECT_EQ(flatten(mutate_n(p, 1, 7)), flatten(mutate_n(p, 1, 7)));
  EXPECT_THROW(mutate_n(p, 0, 7), std::invalid_argument);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const Program q = mutate_n(sampled(seed), 1 + static_cast<int>(seed % 5), seed);
    ASSERT_TRUE(try_parse(flatten(q)).has_value());
  }
}

TEST(MutateN, ObservesEveryKind) {
  const Program p = parse_text("def run { while ( frontIsClear ) { move } turnLeft }");
  std::set<MutationKind> seen;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    Rng rng(seed);
    const auto ms = applicable_mutations(p);
    seen.insert(ms[static_cast<std::size_t>(
                       uniform_int(rng, 0, static_cast<int>(ms.size()) - 1))]
                    .kind);
  }
  EXPECT_EQ(seen.size(), static_cast<std::size_t>(kNumMutationKinds));
}

TEST(RepairBenchmark, FivePerTaskAndReproducible) {
  SampleLimits l;
  auto tasks = gen_dataset(100, l, 3);
  ASSERT_EQ(tasks.size(), 100u);
  RepairBenchmarkStats stats;
  const auto a = build_repair_benchmark(tasks, {1, 5}, 9, kDefaultStepLimit, &stats);
  EXPECT_EQ(a.size(), 500u);
  EXPECT_EQ(stats.generated, 500);
  const auto b = build_repair_benchmark(tasks, {1, 5}, 9);
  std::ostringstream sa, sb;
  write_jsonl(sa, a, repair_task_to_json);
  write_jsonl(sb, b, repair_task_to_json);
  EXPECT_EQ(sa.str(), sb.str());
  int flagged = 0;
  for (const auto& rt : a) {
    EXPECT_TRUE(pass_rate(rt.gold, rt.spec).perfect());
    EXPECT_EQ(pass_rate(rt.broken, rt.spec).perfect(), rt.semantically_equivalent);
    flagged += rt.semantically_equivalent;
  }
  EXPECT_EQ(flagged, stats.flagged_equivalent);
  EXPECT_THROW(build_repair_benchmark(tasks, {0, 2}, 9), std::invalid_argument);
}

TEST(RepairBenchmark, JsonRoundTrip) {
  auto tasks = gen_dataset(3, SampleLimits{}, 4);
  const auto rts = build_repair_benchmark(tasks, {2, 2}, 1);
  std::stringstream ss;
  write_jsonl(ss, rts, repair_task_to_json);
  const auto back = read_repair_tasks(ss);
  ASSERT_EQ(back.size(), rts.size());
  for (std::size_t i = 0; i < rts.size(); ++i) {
    EXPECT_EQ(back[i].id, rts[i].id);
    EXPECT_EQ(flatten(back[i].broken), flatten(rts[i].broken));
    EXPECT_EQ(back[i].spec, rts[i].spec);
    EXPECT_EQ(back[i].held_out, rts[i].held_out);
    EXPECT_EQ(back[i].n_mutations, 2);
  }
}

}  // namespace
}  // namespace karel

// Copyright 2026 The urbounds Authors
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

#include "urbounds/io.hpp"
#include "urbounds/urbounds.hpp"

namespace urbounds {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no urbounds::Error thrown";
  return ErrorCode::validation;
}

TEST(VerifyTest, NoViolationsAcrossInequalities) {
  VerifyOptions opt;
  opt.seed = 123;
  opt.trials = 100;
  const VerifySummary s = run_verification(opt);
  EXPECT_EQ(s.total_violations(), 0);
  for (const char* name : {"robertson", "rs", "det3", "detF", "coupled", "commuting"}) {
    ASSERT_TRUE(s.tallies.count(name)) << name;
    EXPECT_GT(s.tallies.at(name).checked, 0) << name;
  }
  EXPECT_EQ(s.tallies.at("robertson").checked, 100);
  EXPECT_EQ(s.tallies.at("commuting").checked, 100);
  EXPECT_EQ(s.tallies.at("coupled").checked, 200);
  EXPECT_GE(s.min_det_f_relative, -1e-10);
  EXPECT_EQ(s.coupled_vacuous, 0);
  long hist = 0;
  for (long h : s.tightness) hist += h;
  EXPECT_EQ(hist, 100);
}

TEST(VerifyTest, DeterministicAndThreadIndependent) {
  VerifyOptions opt;
  opt.seed = 9;
  opt.trials = 40;
  opt.keep_reports = true;
  opt.threads = 1;
  const VerifySummary a = run_verification(opt);
  opt.threads = 3;
  const VerifySummary b = run_verification(opt);
  EXPECT_EQ(io::to_json(a).dump(), io::to_json(b).dump());
  ASSERT_EQ(a.reports.size(), 40u);
  for (std::size_t k = 0; k < a.reports.size(); ++k) {
    EXPECT_EQ(a.reports[k].first, b.reports[k].first);
    EXPECT_EQ(a.reports[k].second.best_bound, b.reports[k].second.best_bound);
  }
  opt.seed = 10;
  EXPECT_NE(io::to_json(run_verification(opt)).dump(), io::to_json(a).dump());
}

TEST(VerifyTest, SingleTrialAndLargeDimension) {
  VerifyOptions opt;
  opt.trials = 1;
  opt.dim_min = opt.dim_max = 32;
  const VerifySummary s = run_verification(opt);
  EXPECT_EQ(s.trials, 1);
  EXPECT_EQ(s.tallies.at("rs").checked, 2);
  EXPECT_EQ(s.total_violations(), 0);
}

TEST(VerifyTest, OptionValidation) {
  VerifyOptions opt;
  opt.trials = 0;
  EXPECT_EQ(code_of([&] { run_verification(opt); }), ErrorCode::validation);
  opt.trials = 1;
  opt.dim_min = 1;
  EXPECT_EQ(code_of([&] { run_verification(opt); }), ErrorCode::validation);
  opt.dim_min = 2;
  opt.dim_max = 65;
  EXPECT_EQ(code_of([&] { run_verification(opt); }), ErrorCode::validation);
}

TEST(ParallelTest, PropagatesExceptionsAndCoversRange) {
  std::vector<int> hits(50, 0);
  detail::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, 4);
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(detail::parallel_for(
                   10, [](std::size_t i) {
                     if (i == 7) throw Error(ErrorCode::accuracy, "boom");
                   },
                   2),
               Error);
  EXPECT_NE(detail::mix_seed(1, 2), detail::mix_seed(2, 1));
  EXPECT_EQ(detail::mix_seed(1, 2), detail::mix_seed(1, 2));
}

}  // namespace
}  // namespace urbounds

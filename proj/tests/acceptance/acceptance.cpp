// Copyright 2026 The catattr Authors.
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

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include "catattr/dialogue.hpp"
#include "catattr/evaluation.hpp"
#include "catattr/frames.hpp"
#include "fixture_runs.hpp"
#include "property_checks.hpp"

namespace catattr {
namespace {

using Clock = std::chrono::steady_clock;
using testing::data_dir;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << v;
  return out.str();
}

EvaluationReport report_for(const std::string& fixture, const CatalogueIndex& index) {
  return evaluate(testing::run_fixture(fixture, index), testing::shipped_gt(), AbstentionConfig{});
}

Outcome table_replay() {
  const auto start = Clock::now();
  const auto base = report_for("vl2_base", testing::gt_catalogue());
  const auto ft = report_for("vl2_ft", testing::gt_catalogue());
  const auto zs = report_for("q2vl_zs", testing::gt_catalogue());
  const auto q2 = report_for("q2vl_ft_batch", testing::gt_catalogue());
  const double elapsed = seconds_since(start);

  const bool counts = base.accepts == 1 && base.false_positives == 0 && ft.accepts == 2 && ft.correct == 1 &&
                      ft.false_positives == 0 && zs.accepts == 0 && q2.accepts == 2 && q2.false_positives == 2 &&
                      q2.precision && *q2.precision == 0.0;
  std::ostringstream d;
  d << "VL2-Base " << base.accepts << "/" << base.false_positives << "FP, VL2-FT " << ft.accepts << "/"
    << ft.correct << "ok/" << ft.false_positives << "FP, Q2VL-ZS " << zs.accepts << ", Q2VL-FT " << q2.accepts << "/"
    << q2.false_positives << "FP prec " << (q2.precision ? fmt(*q2.precision, 2) : "--") << "; " << fmt(elapsed, 2)
    << " s";
  return {counts && elapsed < 5.0, d.str()};
}

Outcome zero_false_positives() {
  const auto base = report_for("vl2_base", testing::gt_catalogue());
  const auto ft = report_for("vl2_ft", testing::gt_catalogue());
  const std::size_t decisions = base.videos + ft.videos;
  const std::size_t fp = base.false_positives + ft.false_positives;
  return {decisions == 36 && fp == 0, std::to_string(decisions) + " decisions, " + std::to_string(fp) + " FP"};
}

Outcome entombment_flip() {
  const auto results = testing::run_fixture("vl2_ft", testing::gt_catalogue());
  const PipelineResult* video = nullptr;
  for (const auto& r : results) {
    if (r.video_ref == "04_POTM.mp4") video = &r;
  }
  if (video == nullptr) return {false, "04_POTM.mp4 missing from the run"};
  const auto& d = video->decision;
  const bool live = d.accepted() && d.regime == Regime::artist_driven && d.rule == kRuleArtistAccept &&
                    d.matched_title == "The Entombment" && d.combined_score >= 0.38 &&
                    std::abs(d.combined_score - 0.460) <= 5e-4;

  auto decide_at = [&](double tau) {
    AbstentionConfig c;
    c.tau_artist_accept = tau;
    return redecide(video->signals, testing::gt_catalogue(), c).decision;
  };
  const bool flip = decide_at(0.50) == Decision::abstain;
  const bool boundary =
      decide_at(d.combined_score) == Decision::accept && decide_at(std::nextafter(d.combined_score, 1.0)) == Decision::abstain;
  return {live && flip && boundary, "combined " + fmt(d.combined_score, 4) + ", " + std::string(to_string(d.regime)) +
                                        ", at 0.50 " + (flip ? "abstain" : "accept") + ", boundary " +
                                        (boundary ? "exact" : "off")};
}

Outcome oracle_equivalence() {
  const auto r = props::check_oracle(1000, 7);
  std::ostringstream d;
  d << r.pairs << " pairs, max error " << r.max_error;
  if (r.mismatches) d << ", " << r.mismatches << " mismatches: " << r.first_mismatch;
  return {r.pairs == 1000 && r.mismatches == 0, d.str()};
}

Outcome monotonicity() {
  const auto start = Clock::now();
  const auto r = props::check_monotonicity(200, 11);
  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << r.instances << " instances x " << props::monotone_parameters().size() << " parameters, " << r.base_accepts
    << " base accepts, " << r.violations << " violations; " << fmt(elapsed, 2) << " s";
  if (r.violations) d << ": " << r.first_violation;
  return {r.instances == 200 && r.violations == 0 && elapsed < 30.0, d.str()};
}

Outcome duplicate_invariance() {
  const auto r = props::check_duplicate_invariance(100, 13);
  std::ostringstream d;
  d << r.instances << " instances, " << r.accepts << " accepts, " << r.violations << " violations";
  if (r.violations) d << ": " << r.first_violation;
  return {r.instances == 100 && r.violations == 0, d.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome dialogue_corpus() {
  const auto index = build_index(data_dir() / "catalogue_sft.json");
  const auto templates = DialogueTemplates::defaults();
  DialogueOptions opts;
  opts.seed = 42;
  testing::TempDir dir;
  const std::size_t n = export_jsonl(build_dialogues(index, templates, opts).samples, dir / "a.jsonl");
  export_jsonl(build_dialogues(index, templates, opts).samples, dir / "b.jsonl");
  const bool identical = slurp(dir / "a.jsonl") == slurp(dir / "b.jsonl");

  std::size_t abstentions = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    DialogueOptions o;
    o.seed = seed;
    for (const auto& s : build_dialogues(index, templates, o).samples) {
      abstentions += s.is_abstention ? 1 : 0;
      ++total;
    }
  }
  const double p = opts.p_abs;
  const double rate = static_cast<double>(abstentions) / static_cast<double>(total);
  const double se = std::sqrt(p * (1 - p) / static_cast<double>(total));
  const double z = std::abs(rate - p) / se;
  return {index.entries.size() == 60 && n == 210 && identical && z <= 3.0,
          std::to_string(index.entries.size()) + " entries, " + std::to_string(n) + " samples, " +
              (identical ? "byte-identical" : "differs") + ", abstention rate " + fmt(rate, 4) + " (" + fmt(z, 2) +
              " SE)"};
}

Outcome catalogue_ablation() {
  const CatalogueIndex none = build_index(std::vector<CatalogueRecord>{});
  auto accepts = [](const std::vector<PipelineResult>& results) {
    std::size_t n = 0;
    for (const auto& r : results) n += r.decision.accepted() ? 1 : 0;
    return n;
  };
  const std::size_t without = accepts(testing::run_fixture("vl2_ft", none));
  const std::size_t with = accepts(testing::run_fixture("vl2_ft", testing::gt_catalogue()));
  return {without == 0 && with == 2 && testing::gt_catalogue().entries.size() == 12,
          "no catalogue " + std::to_string(without) + ", 12-entry catalogue " + std::to_string(with)};
}

Outcome frame_plan() {
  const auto plan = plan_frames(2000, 25.0, 8, kDefaultLongSide, {1920, 1080}, kDefaultPixelBudget);
  const std::int64_t area = static_cast<std::int64_t>(plan.scaled.width) * plan.scaled.height;
  const bool aspect = static_cast<std::int64_t>(plan.scaled.width) * 1080 == static_cast<std::int64_t>(plan.scaled.height) * 1920;
  return {plan.scaled.width == 448 && area <= kDefaultPixelBudget && aspect,
          std::to_string(plan.scaled.width) + "x" + std::to_string(plan.scaled.height) + " = " + std::to_string(area) +
              " px, aspect " + (aspect ? "exact" : "distorted")};
}

}  // namespace
}  // namespace catattr

int main() {
  using namespace catattr;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"table-replay", table_replay},
      {"zero-false-positives", zero_false_positives},
      {"entombment-threshold-flip", entombment_flip},
      {"oracle-equivalence", oracle_equivalence},
      {"threshold-monotonicity", monotonicity},
      {"duplicate-invariance", duplicate_invariance},
      {"dialogue-corpus", dialogue_corpus},
      {"catalogue-ablation", catalogue_ablation},
      {"frame-plan", frame_plan},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << '\n';
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}

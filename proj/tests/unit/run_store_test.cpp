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

#include <gtest/gtest.h>

#include <fstream>

#include "catattr/json_io.hpp"
#include "catattr/run_store.hpp"
#include "fixture_runs.hpp"

namespace catattr {
namespace {

using testing::data_dir;
using testing::TempDir;

AbstentionConfig raised(double by) {
  AbstentionConfig c;
  for (double* p : {&c.tau_artist_accept, &c.tau_t, &c.mu_t, &c.tau_c, &c.mu_c, &c.tau_f, &c.mu_f}) *p += by;
  return c;
}

struct StoredRun {
  TempDir dir;
  std::filesystem::path catalogue;
  std::vector<PipelineResult> results;
  RunManifest manifest;

  StoredRun() {
    catalogue = dir / "catalogue.json";
    std::filesystem::copy_file(data_dir() / "catalogue_gt.json", catalogue);
    const auto index = build_index(catalogue);
    results = testing::run_fixture("vl2_ft", index);
    manifest = RunStore(dir / "runs").save(results, AbstentionConfig{}, results.front().backend, catalogue,
                                           index.entries.size(), "VL2-FT", std::string("vl2-ft"));
  }
  RunStore store() const { return RunStore(dir / "runs"); }
};

TEST(Sha256, KnownDigests) {
  TempDir dir;
  std::ofstream(dir / "abc.txt", std::ios::binary) << "abc";
  EXPECT_EQ(sha256_file(dir / "abc.txt"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_file(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(RunStore, SaveWritesEveryArtefact) {
  StoredRun run;
  const auto d = run.dir / "runs" / "vl2-ft";
  EXPECT_TRUE(std::filesystem::exists(d / "manifest.json"));
  EXPECT_TRUE(std::filesystem::exists(d / "decisions.jsonl"));
  EXPECT_TRUE(std::filesystem::exists(d / "signals.jsonl"));
  EXPECT_TRUE(std::filesystem::exists(d / "results" / "Lake_Keitele.mp4.json"));
  EXPECT_EQ(run.manifest.videos.size(), 18u);
  EXPECT_EQ(run.manifest.catalogue_entries, 12u);
  EXPECT_EQ(run.manifest.catalogue_sha256, sha256_file(data_dir() / "catalogue_gt.json"));
  EXPECT_EQ(run.manifest.backend.name, "VL2-FT");
  EXPECT_FALSE(run.manifest.finished_at.empty());
}

TEST(RunStore, ReadsBackWhatWasWritten) {
  StoredRun run;
  const auto store = run.store();
  EXPECT_EQ(store.manifest("vl2-ft"), run.manifest);
  const auto decisions = store.decisions("vl2-ft");
  ASSERT_EQ(decisions.size(), run.results.size());
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    EXPECT_EQ(decisions[i].first, run.results[i].video_ref);
    EXPECT_EQ(decisions[i].second, run.results[i].decision);
  }
  const auto signals = store.signals("vl2-ft");
  ASSERT_EQ(signals.size(), run.results.size());
  EXPECT_EQ(signals[12].signals, run.results[12].signals);

  const auto results = store.results("vl2-ft");
  ASSERT_EQ(results.size(), run.results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    EXPECT_EQ(nlohmann::json(results[i]), nlohmann::json(run.results[i]));
  }
}

TEST(RunStore, RunsAreNeverOverwritten) {
  StoredRun run;
  auto store = run.store();
  EXPECT_THROW(store.save(run.results, {}, run.results.front().backend, run.catalogue, 12, "x", std::string("vl2-ft")),
               RunStoreError);
  const auto a = store.save(run.results, {}, run.results.front().backend, run.catalogue, 12, "again", std::nullopt,
                            "2026-01-01T00:00:00Z");
  const auto b = store.save(run.results, {}, run.results.front().backend, run.catalogue, 12, "again", std::nullopt,
                            "2026-01-01T00:00:00Z");
  EXPECT_NE(a.run_id, b.run_id);
  const auto listed = store.list();
  ASSERT_EQ(listed.size(), 3u);
  EXPECT_EQ(listed[0].run_id, a.run_id);
  EXPECT_EQ(listed[1].run_id, b.run_id);
}

TEST(RunStore, UnknownRun) {
  StoredRun run;
  const auto store = run.store();
  EXPECT_FALSE(store.exists("nope"));
  try {
    store.decisions("nope");
    FAIL();
  } catch (const RunStoreError& e) {
    EXPECT_EQ(e.kind(), RunStoreError::Kind::not_found);
  }
  EXPECT_THROW(store.manifest("../vl2-ft"), RunStoreError);
  EXPECT_TRUE(RunStore(run.dir / "absent").list().empty());
}

TEST(Replay, DefaultsReproduceStoredDecisions) {
  StoredRun run;
  const auto store = run.store();
  const auto index = load_run_catalogue(store.manifest("vl2-ft"));
  const auto replayed = replay_run(store.signals("vl2-ft"), index, AbstentionConfig{});
  EXPECT_EQ(replayed, store.decisions("vl2-ft"));
}

TEST(Replay, RaisedThresholdsAcceptNothing) {
  StoredRun run;
  const auto store = run.store();
  const auto index = load_run_catalogue(store.manifest("vl2-ft"));
  for (const auto& [video, d] : replay_run(store.signals("vl2-ft"), index, raised(0.2))) {
    EXPECT_FALSE(d.accepted()) << video;
  }
}

TEST(Replay, EntombmentFlipsAtPointFive) {
  StoredRun run;
  const auto store = run.store();
  const auto index = load_run_catalogue(store.manifest("vl2-ft"));
  AbstentionConfig cfg;
  cfg.tau_artist_accept = 0.50;
  for (const auto& [video, d] : replay_run(store.signals("vl2-ft"), index, cfg)) {
    if (video == "04_POTM.mp4") {
      EXPECT_FALSE(d.accepted());
    }
    if (video == "Redboy.mp4") {
      EXPECT_TRUE(d.accepted());
    }
  }
}

TEST(Replay, RefusesChangedCatalogue) {
  StoredRun run;
  std::ofstream(run.catalogue, std::ios::app) << "\n";
  try {
    load_run_catalogue(run.store().manifest("vl2-ft"));
    FAIL();
  } catch (const RunStoreError& e) {
    EXPECT_EQ(e.kind(), RunStoreError::Kind::catalogue_changed);
  }
}

TEST(Replay, NoCatalogueRunAbstains) {
  TempDir dir;
  const auto empty = build_index(std::vector<CatalogueRecord>{});
  const auto results = testing::run_fixture("vl2_ft", empty);
  RunStore store(dir / "runs");
  const auto m = store.save(results, {}, results.front().backend, {}, 0, "none");
  EXPECT_TRUE(m.catalogue_path.empty());
  const auto index = load_run_catalogue(store.manifest(m.run_id));
  EXPECT_TRUE(index.empty());
  for (const auto& [video, d] : replay_run(store.signals(m.run_id), index, {})) EXPECT_FALSE(d.accepted());
}

TEST(JsonIo, PipelineResultRoundTrip) {
  const auto results = testing::run_fixture("vl2_ft", testing::gt_catalogue());
  for (const auto& r : results) {
    const nlohmann::json j = r;
    const auto back = j.get<PipelineResult>();
    EXPECT_EQ(back.decision, r.decision);
    EXPECT_EQ(back.signals, r.signals);
    EXPECT_EQ(back.frame_plan, r.frame_plan);
    EXPECT_EQ(back.backend, r.backend);
    EXPECT_EQ(nlohmann::json(back), j);
  }
  const nlohmann::json j = results[0];
  EXPECT_EQ(j.at("video"), "04_POTM.mp4");
  EXPECT_EQ(j.at("decision").at("regime"), "artist_driven");
  EXPECT_EQ(j.at("signals").at("artist").at("source"), "visual_qa");
}

}  // namespace
}  // namespace catattr

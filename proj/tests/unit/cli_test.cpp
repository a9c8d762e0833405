// Copyright 2026 The tcgen Authors
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


#include "tcgen/cli.hpp"

#include "tcgen/catalog.hpp"
#include "tcgen/document.hpp"
#include "tcgen/testcase.hpp"
#include "world.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace tcgen
{
namespace
{

namespace fs = std::filesystem;

struct Invocation
{
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test
{
protected:
  void SetUp() override
  {
    ::unsetenv(cli::kConfigEnv);
    project = testing::stage_reference_project(tmp.path());
    out_dir = tmp.path() / "out";
  }
  void TearDown() override { ::unsetenv(cli::kConfigEnv); }

  Invocation run(std::vector<std::string> args)
  {
    std::ostringstream out;
    std::ostringstream err;
    Invocation r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
  }

  Invocation run_project(const std::string & command, std::vector<std::string> extra = {})
  {
    std::vector<std::string> args{command, "--config", project.string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  }

  void replace_in(const fs::path & file, const std::string & from, const std::string & to)
  {
    auto text = doc::read_file(file);
    const auto at = text.find(from);
    ASSERT_NE(at, std::string::npos) << from;
    text.replace(at, from.size(), to);
    doc::write_file(file, text);
  }

  std::set<std::string> catalog_ids()
  {
    std::set<std::string> ids;
    for (const auto & c : load_catalog_file(out_dir / "catalog.json").conditions) {
      ids.insert(c.id);
    }
    return ids;
  }

  testing::TempDir tmp;
  fs::path project;
  fs::path out_dir;
};

TEST_F(Cli, UsageErrors)
{
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"explode"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"generate", "--config", project.string(), "--threshold", "4"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"generate", "--config", project.string(), "--format", "pdf"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"stages", "--config", project.string()}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
  const auto version = run({"--version"});
  EXPECT_EQ(version.code, cli::kExitOk);
  EXPECT_NE(version.out.find("1.0.0"), std::string::npos);
}

TEST_F(Cli, ConfigResolution)
{
  const auto missing = run({"validate"});
  EXPECT_EQ(missing.code, cli::kExitUsage);
  EXPECT_NE(missing.err.find(cli::kConfigEnv), std::string::npos);
  EXPECT_EQ(run({"validate", "--config", (tmp.path() / "nope.yaml").string()}).code, cli::kExitUsage);

  const auto empty = tmp.path() / "empty.yaml";
  doc::write_file(empty, "");
  EXPECT_EQ(run({"validate", "--config", empty.string()}).code, cli::kExitUsage);

  ::setenv(cli::kConfigEnv, project.c_str(), 1);
  EXPECT_EQ(run({"validate"}).code, cli::kExitOk);

  // The flag wins over the environment.
  ::setenv(cli::kConfigEnv, empty.c_str(), 1);
  EXPECT_EQ(run({"validate", "--config", project.string()}).code, cli::kExitOk);
  EXPECT_EQ(run({"validate"}).code, cli::kExitUsage);
}

TEST_F(Cli, ValidateReferenceIsClean)
{
  const auto r = run_project("validate");
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.err, "");
  EXPECT_TRUE(fs::exists(out_dir / "manifest-validate.json"));
}

TEST_F(Cli, DanglingParentIsReportedWithLocation)
{
  replace_in(project.parent_path() / "source_ontology.yaml", "parent: FloatingObject", "parent: Floater");
  const auto r = run_project("validate");
  EXPECT_EQ(r.code, cli::kExitDataError);
  EXPECT_NE(r.err.find("error[DanglingParent]"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("source_ontology.yaml:"), std::string::npos) << r.err;
  EXPECT_EQ(run_project("generate").code, cli::kExitDataError);
}

TEST_F(Cli, GenerateWritesCatalogAndManifest)
{
  const auto r = run_project("generate");
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("69"), std::string::npos) << r.out;
  for (const char * name : {"catalog.json", "catalog.csv", "catalog.md", "manifest-generate.json"}) {
    EXPECT_TRUE(fs::exists(out_dir / name)) << name;
  }
  const auto csv = doc::read_file(out_dir / "catalog.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kCatalogCsvHeader);
  const auto manifest = doc::parse(doc::read_file(out_dir / "manifest-generate.json"), doc::Format::Json);
  ASSERT_NE(manifest.find("summary"), nullptr);
  EXPECT_EQ(manifest.find("summary")->find("total")->scalar(), "69");
  EXPECT_EQ(manifest.find("summary")->find("delta")->scalar(), "-18");
  EXPECT_EQ(manifest.find("inputs")->items().size(), 6u);
}

TEST_F(Cli, FormatSelection)
{
  ASSERT_EQ(run_project("generate", {"--format", "json"}).code, cli::kExitOk);
  EXPECT_TRUE(fs::exists(out_dir / "catalog.json"));
  EXPECT_FALSE(fs::exists(out_dir / "catalog.csv"));
  EXPECT_FALSE(fs::exists(out_dir / "catalog.md"));
}

TEST_F(Cli, ThresholdThreeIsSubsetOfTwo)
{
  ASSERT_EQ(run_project("generate").code, cli::kExitOk);
  const auto two = catalog_ids();
  ASSERT_EQ(run_project("generate", {"--threshold", "3"}).code, cli::kExitOk);
  const auto three = catalog_ids();
  EXPECT_LT(three.size(), two.size());
  EXPECT_TRUE(std::includes(two.begin(), two.end(), three.begin(), three.end()));
}

TEST_F(Cli, BundleLimitZero)
{
  ASSERT_EQ(run_project("generate", {"--bundle-limit", "0"}).code, cli::kExitOk);
  const auto catalog = load_catalog_file(out_dir / "catalog.json");
  ASSERT_FALSE(catalog.conditions.empty());
  EXPECT_EQ(catalog.bundle_limit, 0u);
  for (const auto & c : catalog.conditions) {
    EXPECT_TRUE(c.relationships.empty());
  }
}

TEST_F(Cli, ComposeNeedsCatalog)
{
  EXPECT_EQ(run_project("compose").code, cli::kExitDataError);
}

TEST_F(Cli, ComposeAfterGenerate)
{
  ASSERT_EQ(run_project("generate").code, cli::kExitOk);
  const auto r = run_project("compose");
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.err.find("NoCompatibleEvent"), std::string::npos);
  const auto cases = load_test_cases_file(out_dir / "testcases.json");
  EXPECT_EQ(cases.size(), 101u);
  const auto csv = doc::read_file(out_dir / "testcases.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kTestCaseCsvHeader);
}

TEST_F(Cli, ComposeWithoutEventsWarns)
{
  ASSERT_EQ(run_project("generate").code, cli::kExitOk);
  doc::write_file(project.parent_path() / "hazardous_events.yaml", "schema_version: \"1.0\"\nevents: []\n");
  const auto r = run_project("compose");
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.err.find("warning["), std::string::npos);
  EXPECT_TRUE(load_test_cases_file(out_dir / "testcases.json").empty());
}

TEST_F(Cli, ComposeRejectsUnknownSensor)
{
  ASSERT_EQ(run_project("generate").code, cli::kExitOk);
  const auto system = project.parent_path() / "sweeper_system.yaml";
  replace_in(system, "sensor: LiDAR", "sensor: Lidar2");
  const auto r = run_project("compose");
  EXPECT_EQ(r.code, cli::kExitDataError);
  EXPECT_NE(r.err.find("UnknownSensor"), std::string::npos) << r.err;
}

TEST_F(Cli, ReportOnEmptyCatalog)
{
  doc::write_file(project.parent_path() / "effects.yaml", "schema_version: \"1.0\"\nentries: []\n");
  ASSERT_EQ(run_project("generate").code, cli::kExitOk);
  EXPECT_TRUE(load_catalog_file(out_dir / "catalog.json").conditions.empty());
  for (const char * format : {"markdown", "csv", "json"}) {
    const auto r = run_project("report", {"--format", format});
    EXPECT_EQ(r.code, cli::kExitOk) << format << r.err;
  }
  EXPECT_TRUE(fs::exists(out_dir / "report.md"));
  EXPECT_TRUE(fs::exists(out_dir / "report.csv"));
}

TEST_F(Cli, AssessSingleCondition)
{
  ASSERT_EQ(run_project("generate").code, cli::kExitOk);
  const auto id = *catalog_ids().begin();
  EXPECT_EQ(run_project("assess").code, cli::kExitUsage);
  EXPECT_EQ(run_project("assess", {"--id", id, "--exposure", "E2"}).code, cli::kExitUsage);
  EXPECT_EQ(run_project("assess", {"--id", id, "--exposure", "E2", "--criticality", "C3"}).code, cli::kExitOk);
  EXPECT_EQ(run_project("assess", {"--id", id, "--exposure", "E1", "--criticality", "C1"}).code,
            cli::kExitDataError);
  EXPECT_EQ(run_project("assess", {"--id", id, "--exposure", "E4", "--criticality", "C4", "--reassess"}).code,
            cli::kExitOk);
  const auto catalog = load_catalog_file(out_dir / "catalog.json");
  const auto it = std::find_if(catalog.conditions.begin(), catalog.conditions.end(),
                               [&](const auto & c) { return c.id == id; });
  ASSERT_NE(it, catalog.conditions.end());
  EXPECT_EQ(it->priority, 16);
  EXPECT_EQ(catalog.conditions.front().id, id);
}

TEST_F(Cli, AssessWithRatingsFile)
{
  ASSERT_EQ(run_project("generate").code, cli::kExitOk);
  const auto ratings = (project.parent_path() / "ratings.example.yaml").string();
  const auto r = run_project("assess", {"--ratings", ratings});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  for (const auto & c : load_catalog_file(out_dir / "catalog.json").conditions) {
    EXPECT_TRUE(c.assessment) << c.id;
  }
  EXPECT_EQ(run_project("assess", {"--ratings", ratings}).code, cli::kExitDataError);
}

TEST_F(Cli, RecordOutcomes)
{
  ASSERT_EQ(run_project("generate").code, cli::kExitOk);
  ASSERT_EQ(run_project("compose").code, cli::kExitOk);
  const auto cases = load_test_cases_file(out_dir / "testcases.json");
  ASSERT_FALSE(cases.empty());
  const auto r = run_project("record", {"--test-case", cases.front().id, "--behavior", "NearCollision"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("fail"), std::string::npos) << r.out;
  EXPECT_EQ(run_project("record", {"--test-case", "HE-X:TC-0", "--behavior", "Nominal"}).code,
            cli::kExitDataError);
  EXPECT_EQ(run_project("record", {"--test-case", cases.front().id, "--behavior", "Crash"}).code,
            cli::kExitDataError);
  const auto ledger = doc::read_file(out_dir / "results.jsonl");
  EXPECT_EQ(std::count(ledger.begin(), ledger.end(), '\n'), 1);
}

TEST_F(Cli, StagesAndMatrix)
{
  const auto stages = run_project("stages", {"--sensor", "LiDAR", "--concept", "Rainfall", "--relation",
                                             "SurfaceTreatment.Cover:Sensor"});
  ASSERT_EQ(stages.code, cli::kExitOk) << stages.err;
  EXPECT_EQ(stages.out, "SignalTransmission\nSignalPropagation\nSignalReceiving\n");
  EXPECT_EQ(run_project("stages", {"--sensor", "Radar", "--concept", "Leaf"}).code, cli::kExitDataError);
  EXPECT_EQ(run_project("stages", {"--sensor", "LiDAR", "--concept", "Leaf", "--relation", "Cover"}).code,
            cli::kExitUsage);

  const auto matrix = run_project("matrix", {"--sensor", "LiDAR", "--concept", "MovableObstacle", "--format", "csv"});
  ASSERT_EQ(matrix.code, cli::kExitOk) << matrix.err;
  EXPECT_NE(matrix.out.find("Surface material,- - -,-,"), std::string::npos) << matrix.out;
}

TEST_F(Cli, OutputDirOverride)
{
  const auto elsewhere = tmp.path() / "elsewhere";
  ASSERT_EQ(run_project("generate", {"--output-dir", elsewhere.string()}).code, cli::kExitOk);
  EXPECT_TRUE(fs::exists(elsewhere / "catalog.json"));
  EXPECT_FALSE(fs::exists(out_dir / "catalog.json"));
}

}  // namespace
}  // namespace tcgen

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "govmine/common/config_file.hpp"
#include "govmine/common/error.hpp"
#include "govmine/common/text.hpp"
#include "govmine/corpus/miner.hpp"
#include "govmine/default_configs.hpp"
#include "helpers/git_fixture.hpp"
#include "helpers/oracles.hpp"

using namespace govmine;
using namespace testhelpers;

namespace {

std::vector<std::string> default_patterns() {
  return parse_config_lines(defaults::kPatterns);
}

bool always_valid(const std::string& text) {
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) return true;
  return false;
}

}  // namespace

TEST_CASE("discovery finds root governance files in pattern order") {
  TempDir tmp;
  std::string repo = tmp.sub("proj");
  init_repo(repo);
  commit_files(repo,
               {{"GOVERNANCE.md", "# Rules\n\nMaintainers must review.\n"},
                {"README.md", "intro\n"}},
               "2020-01-01T10:00:00Z", "init");
  corpus::GitRepo g("proj", repo);
  auto records = corpus::discover_governance_files(g, default_patterns());
  REQUIRE(records.size() == 1);
  CHECK(records[0].path == "GOVERNANCE.md");
  CHECK(records[0].matched_pattern == "governance.md");

  // pure function of (listing, patterns): repeated calls agree
  auto again = corpus::discover_governance_files(g, default_patterns());
  REQUIRE(again.size() == records.size());
  CHECK(again[0].path == records[0].path);
  CHECK(again[0].matched_pattern == records[0].matched_pattern);
}

TEST_CASE("discovery returns empty when nothing matches") {
  TempDir tmp;
  std::string repo = tmp.sub("empty");
  init_repo(repo);
  commit_files(repo, {{"README.md", "hello\n"}}, "2020-01-01T10:00:00Z",
               "init");
  corpus::GitRepo g("empty", repo);
  CHECK(corpus::discover_governance_files(g, default_patterns()).empty());
}

TEST_CASE("discovery orders multiple matches case-folded lexicographically") {
  TempDir tmp;
  std::string repo = tmp.sub("multi");
  init_repo(repo);
  commit_files(repo,
               {{"GOVERNANCE.md", "First file.\n"},
                {"governance.rst", "Second file.\n"}},
               "2020-01-01T10:00:00Z", "init");
  corpus::GitRepo g("multi", repo);
  auto records = corpus::discover_governance_files(g, default_patterns());
  REQUIRE(records.size() == 2);
  CHECK(records[0].path == "GOVERNANCE.md");  // .md < .rst after case folding
  CHECK(records[1].path == "governance.rst");
}

TEST_CASE("discovery works on plain directories and nested files stay out") {
  TempDir tmp;
  std::string dir = tmp.sub("plain");
  std::ofstream(dir + "/governance.adoc") << "Rules.\n";
  std::string nested = dir + "/docs";
  std::filesystem::create_directories(nested);
  std::ofstream(nested + "/GOVERNANCE.md") << "Nested rules.\n";
  corpus::GitRepo g("plain", dir);
  CHECK_FALSE(g.is_git());
  auto records = corpus::discover_governance_files(g, default_patterns());
  REQUIRE(records.size() == 1);
  CHECK(records[0].path == "governance.adoc");
}

TEST_CASE("unreadable repository raises an error carrying the repo id") {
  CHECK_THROWS_AS(corpus::GitRepo("ghost", "/nonexistent/path/xyz"),
                  RepoError);
}

TEST_CASE("commit touches carry per-commit line deltas for matched files") {
  TempDir tmp;
  std::string repo = tmp.sub("touchy");
  init_repo(repo);
  std::string v1 = "line one\nline two\n";
  std::string v2 = v1 + "line three\nline four\n";
  std::string v3 = v2 + "line five\nline six\n";
  commit_files(repo, {{"GOVERNANCE.md", v1}}, "2020-01-01T10:00:00Z", "c1");
  commit_files(repo, {{"GOVERNANCE.md", v2}, {"main.c", "int main;\n"}},
               "2020-01-02T10:00:00Z", "c2");
  commit_files(repo, {{"GOVERNANCE.md", v3}}, "2020-01-03T10:00:00Z", "c3");
  // a commit touching only source code must not be listed
  commit_files(repo, {{"main.c", "int main(void);\n"}},
               "2020-01-04T10:00:00Z", "c4");

  corpus::GitRepo g("touchy", repo);
  auto records = corpus::discover_governance_files(g, default_patterns());
  auto touches = corpus::list_governance_commits(g, records);
  REQUIRE(touches.size() == 3);  // c4 filtered by path
  CHECK(touches.front().date == "2020-01-01");
  CHECK(touches.back().date == "2020-01-03");  // newest-last

  // independent oracle: raw line comparison of consecutive versions
  std::vector<std::string> empty;
  auto lines1 = split_lines(v1);
  auto lines2 = split_lines(v2);
  auto lines3 = split_lines(v3);
  auto d1 = oracles::multiset_line_diff(empty, lines1);
  auto d2 = oracles::multiset_line_diff(lines1, lines2);
  auto d3 = oracles::multiset_line_diff(lines2, lines3);
  CHECK(touches[0].additions == d1.additions);
  CHECK(touches[1].additions == d2.additions);
  CHECK(touches[2].additions == d3.additions);
  CHECK(touches[0].deletions == 0);
  CHECK(touches[1].deletions == 0);
  CHECK(touches[2].deletions == 0);
}

TEST_CASE("a file renamed into a matching name is listed from the rename on") {
  TempDir tmp;
  std::string repo = tmp.sub("renamed");
  init_repo(repo);
  commit_files(repo, {{"RULES.md", "Maintainers must review patches.\n"}},
               "2020-02-01T10:00:00Z", "pre-rename");
  commit_files(repo,
               {{"RULES.md", "Maintainers must review patches.\nMore.\n"}},
               "2020-02-02T10:00:00Z", "edit");
  commit_rename(repo, "RULES.md", "GOVERNANCE.md", "2020-02-10T10:00:00Z",
                "rename");
  commit_files(
      repo,
      {{"GOVERNANCE.md",
        "Maintainers must review patches.\nMore.\nEven more.\n"}},
      "2020-02-11T10:00:00Z", "post-rename");

  corpus::GitRepo g("renamed", repo);
  auto records = corpus::discover_governance_files(g, default_patterns());
  REQUIRE(records.size() == 1);
  auto touches = corpus::list_governance_commits(g, records);
  REQUIRE(touches.size() == 2);  // rename commit and the edit after it
  CHECK(touches[0].date == "2020-02-10");
  CHECK(touches[1].date == "2020-02-11");

  auto outcome = corpus::recover_snapshot_pair(g, records, always_valid);
  REQUIRE(outcome.pair.has_value());
  CHECK(outcome.pair->initial.commit_date == "2020-02-10");
  CHECK(outcome.pair->latest.commit_date == "2020-02-11");
}

TEST_CASE("pairing: multi-day, same-day and single-snapshot cases") {
  TempDir tmp;

  SUBCASE("across-day pair") {
    std::string repo = tmp.sub("across");
    init_repo(repo);
    commit_files(repo, {{"GOVERNANCE.md", "Maintainers must review.\n"}},
                 "2014-03-26T09:00:00Z", "c1");
    commit_files(repo, {{"GOVERNANCE.md", "Maintainers must review all.\n"}},
                 "2014-03-28T23:00:00Z", "c2");
    corpus::GitRepo g("across", repo);
    auto records = corpus::discover_governance_files(g, default_patterns());
    auto outcome = corpus::recover_snapshot_pair(g, records, always_valid);
    REQUIRE(outcome.pair.has_value());
    CHECK(outcome.pair->gap_days == 2);
    CHECK(outcome.pair->across_day);
    CHECK(outcome.pair->initial.commit_date == "2014-03-26");
    CHECK(outcome.pair->latest.commit_date == "2014-03-28");
    CHECK(outcome.pair->initial.commit_id != outcome.pair->latest.commit_id);
  }

  SUBCASE("same calendar day is a within-day revision") {
    std::string repo = tmp.sub("sameday");
    init_repo(repo);
    commit_files(repo, {{"GOVERNANCE.md", "Maintainers must review.\n"}},
                 "2015-06-01T08:00:00Z", "c1");
    commit_files(repo, {{"GOVERNANCE.md", "Committers may commit.\n"}},
                 "2015-06-01T21:30:00Z", "c2");
    corpus::GitRepo g("sameday", repo);
    auto records = corpus::discover_governance_files(g, default_patterns());
    auto outcome = corpus::recover_snapshot_pair(g, records, always_valid);
    REQUIRE(outcome.pair.has_value());
    CHECK(outcome.pair->gap_days == 0);
    CHECK_FALSE(outcome.pair->across_day);
  }

  SUBCASE("single commit excludes the repo") {
    std::string repo = tmp.sub("single");
    init_repo(repo);
    commit_files(repo, {{"GOVERNANCE.md", "Maintainers must review.\n"}},
                 "2016-01-01T10:00:00Z", "only");
    corpus::GitRepo g("single", repo);
    auto records = corpus::discover_governance_files(g, default_patterns());
    auto outcome = corpus::recover_snapshot_pair(g, records, always_valid);
    CHECK_FALSE(outcome.pair.has_value());
    CHECK(outcome.exclusion == "single-snapshot");
  }

  SUBCASE("invalid snapshots at both ends are skipped") {
    std::string repo = tmp.sub("placeholder");
    init_repo(repo);
    commit_files(repo, {{"GOVERNANCE.md", "\n\n"}}, "2017-01-01T10:00:00Z",
                 "stub");
    commit_files(repo, {{"GOVERNANCE.md", "Maintainers must review.\n"}},
                 "2017-01-05T10:00:00Z", "real1");
    commit_files(repo,
                 {{"GOVERNANCE.md", "Maintainers must review twice.\n"}},
                 "2017-02-01T10:00:00Z", "real2");
    commit_files(repo, {{"GOVERNANCE.md", "  \n"}}, "2017-03-01T10:00:00Z",
                 "wiped");
    corpus::GitRepo g("placeholder", repo);
    auto records = corpus::discover_governance_files(g, default_patterns());
    auto outcome = corpus::recover_snapshot_pair(g, records, always_valid);
    REQUIRE(outcome.pair.has_value());
    CHECK(outcome.pair->initial.commit_date == "2017-01-05");
    CHECK(outcome.pair->latest.commit_date == "2017-02-01");
  }
}

TEST_CASE("composite view: ordering, deduplication, idempotence") {
  SUBCASE("single file passes through unchanged") {
    std::string text = "# A\n\nshared paragraph\n";
    CHECK(corpus::build_composite_view({{"GOVERNANCE.md", text}}) == text);
  }

  SUBCASE("paths are ordered lexicographically") {
    auto composite = corpus::build_composite_view(
        {{"b.md", "content b\n"}, {"a.md", "content a\n"}});
    CHECK(composite.find("content a") < composite.find("content b"));
  }

  SUBCASE("identical license paragraph appears once") {
    std::string license = "Licensed under the Apache License.";
    auto composite = corpus::build_composite_view(
        {{"GOVERNANCE.md", "# Rules\n\n" + license + "\n"},
         {"governance.rst", "Other rules.\n\n" + license + "\n"}});
    auto first = composite.find(license);
    REQUIRE(first != std::string::npos);
    CHECK(composite.find(license, first + 1) == std::string::npos);
    CHECK(composite.find("Other rules.") != std::string::npos);
  }

  SUBCASE("idempotent on its own output") {
    auto composite = corpus::build_composite_view(
        {{"a.md", "one\n\ntwo\n"}, {"b.md", "two\n\nthree\n"}});
    CHECK(corpus::build_composite_view({{"composite", composite}}) ==
          composite);
  }
}

TEST_CASE("two governance files produce a composite snapshot") {
  TempDir tmp;
  std::string repo = tmp.sub("twofiles");
  init_repo(repo);
  std::string shared = "This project follows open governance.";
  commit_files(repo,
               {{"GOVERNANCE.md", "# Rules\n\n" + shared + "\n"},
                {"governance.rst", "Extra rules.\n\n" + shared + "\n"}},
               "2019-05-01T10:00:00Z", "c1");
  commit_files(repo,
               {{"GOVERNANCE.md",
                 "# Rules\n\n" + shared + "\n\nMaintainers must vote.\n"}},
               "2019-06-01T10:00:00Z", "c2");
  corpus::GitRepo g("twofiles", repo);
  auto records = corpus::discover_governance_files(g, default_patterns());
  REQUIRE(records.size() == 2);
  auto outcome = corpus::recover_snapshot_pair(g, records, always_valid);
  REQUIRE(outcome.pair.has_value());
  CHECK(outcome.pair->initial.file_count == 2);
  // shared boilerplate deduplicated in the composite
  const std::string& text = outcome.pair->initial.raw_text;
  auto first = text.find(shared);
  REQUIRE(first != std::string::npos);
  CHECK(text.find(shared, first + 1) == std::string::npos);
}

TEST_CASE("corpus stats: quantiles, partitions and histogram") {
  std::vector<corpus::RepoMiningOutcome> outcomes;
  auto make_pair = [](const std::string& id, long gap) {
    corpus::RepoMiningOutcome o;
    o.repo_id = id;
    o.records.push_back({id, "GOVERNANCE.md", "governance.md"});
    corpus::SnapshotPair p;
    p.repo_id = id;
    p.gap_days = gap;
    p.across_day = gap >= 1;
    o.pair = p;
    return o;
  };
  outcomes.push_back(make_pair("a", 0));
  outcomes.push_back(make_pair("b", 0));
  outcomes.push_back(make_pair("c", 247));
  corpus::RepoMiningOutcome excluded;
  excluded.repo_id = "d";
  excluded.records.push_back({"d", "governance.rst", "governance.rst"});
  excluded.exclusion = "single-snapshot";
  outcomes.push_back(excluded);

  auto stats = corpus::corpus_stats(outcomes);
  CHECK(stats.n_repos == 4);
  CHECK(stats.n_paired == 3);
  CHECK(stats.n_across_day == 1);
  CHECK(*stats.gap_median_days == 0);
  CHECK(*stats.gap_max_days == 247);
  CHECK(stats.filename_histogram.at("governance.md") == 3);
  CHECK(stats.filename_histogram.at("governance.rst") == 1);
  // every repo in exactly one partition
  for (const auto& o : outcomes)
    CHECK(o.pair.has_value() == o.exclusion.empty());
}

TEST_CASE("corpus stats of an empty corpus") {
  auto stats = corpus::corpus_stats({});
  CHECK(stats.n_repos == 0);
  CHECK(stats.n_paired == 0);
  CHECK_FALSE(stats.gap_median_days.has_value());
  CHECK_FALSE(stats.gap_iqr_days.has_value());
}

TEST_CASE("utc date helpers") {
  CHECK(corpus::utc_date_string(0) == "1970-01-01");
  CHECK(corpus::utc_date_string(86399) == "1970-01-01");
  CHECK(corpus::utc_date_string(86400) == "1970-01-02");
  // 2014-03-26T12:00:00Z
  CHECK(corpus::utc_date_string(1395835200) == "2014-03-26");
  CHECK(corpus::utc_epoch_day(86400) - corpus::utc_epoch_day(86399) == 1);
}

#include "govmine/corpus/miner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <set>
#include <stdexcept>

#include "govmine/common/error.hpp"
#include "govmine/common/stats.hpp"
#include "govmine/common/subprocess.hpp"
#include "govmine/common/text.hpp"

namespace fs = std::filesystem;

namespace govmine::corpus {

namespace {

CommandResult git(const GitRepo& repo, std::vector<std::string> args) {
  std::vector<std::string> argv = {"git", "-C", repo.root()};
  for (auto& a : args) argv.push_back(std::move(a));
  return run_command(argv);
}

bool case_fold_less(const std::string& a, const std::string& b) {
  std::string la = to_lower(a), lb = to_lower(b);
  if (la != lb) return la < lb;
  return a < b;
}

}  // namespace

std::string utc_date_string(std::int64_t unix_seconds) {
  using namespace std::chrono;
  sys_days day{days{utc_epoch_day(unix_seconds)}};
  year_month_day ymd{day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

long utc_epoch_day(std::int64_t unix_seconds) {
  // Floor division so pre-1970 timestamps land on the right day.
  std::int64_t d = unix_seconds / 86400;
  if (unix_seconds % 86400 < 0) --d;
  return static_cast<long>(d);
}

GitRepo::GitRepo(std::string repo_id, std::string root)
    : repo_id_(std::move(repo_id)), root_(std::move(root)) {
  std::error_code ec;
  if (!fs::exists(root_, ec) || ec)
    throw RepoError(repo_id_, "repository path does not exist: " + root_);
  CommandResult probe = run_command({"git", "-C", root_, "rev-parse",
                                     "--git-dir"});
  is_git_ = probe.ok();
}

std::vector<std::string> GitRepo::list_root_files() const {
  std::vector<std::string> names;
  if (is_git_) {
    CommandResult head = git(*this, {"rev-parse", "--verify", "HEAD"});
    if (!head.ok()) return names;  // unborn branch: nothing committed yet
    CommandResult ls = git(*this, {"ls-tree", "HEAD"});
    if (!ls.ok())
      throw RepoError(repo_id_, "git ls-tree failed: " + trim(ls.err));
    for (auto& line : split_lines(ls.out)) {
      // "<mode> blob <oid>\t<name>"; directories appear as tree entries.
      auto tab = line.find('\t');
      if (tab == std::string::npos) continue;
      if (line.find(" blob ") != std::string::npos)
        names.push_back(line.substr(tab + 1));
    }
  } else {
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root_, ec)) {
      if (entry.is_regular_file())
        names.push_back(entry.path().filename().string());
    }
    if (ec) throw RepoError(repo_id_, "cannot list directory: " + root_);
  }
  std::sort(names.begin(), names.end());
  return names;
}

std::vector<GitRepo::LogEntry> GitRepo::log_for_paths(
    const std::vector<std::string>& paths) const {
  if (!is_git_) throw RepoError(repo_id_, "not a git repository: " + root_);
  std::vector<std::string> args = {"log",       "--reverse", "--no-renames",
                                   "--numstat", "--format=@%H %ct", "--"};
  for (const auto& p : paths) args.push_back(p);
  CommandResult res = git(*this, args);
  if (!res.ok()) throw RepoError(repo_id_, "git log failed: " + trim(res.err));

  std::vector<LogEntry> entries;
  for (auto& line : split_lines(res.out)) {
    if (line.empty()) continue;
    if (line[0] == '@') {
      auto sp = line.find(' ');
      LogEntry e;
      e.commit_id = line.substr(1, sp - 1);
      e.commit_time = std::stoll(line.substr(sp + 1));
      entries.push_back(std::move(e));
    } else if (!entries.empty()) {
      // numstat: "<added>\t<deleted>\t<path>"; "-" for binary content.
      auto t1 = line.find('\t');
      auto t2 = line.find('\t', t1 + 1);
      if (t1 == std::string::npos || t2 == std::string::npos) continue;
      std::string add = line.substr(0, t1);
      std::string del = line.substr(t1 + 1, t2 - t1 - 1);
      if (add != "-") entries.back().additions += std::stol(add);
      if (del != "-") entries.back().deletions += std::stol(del);
    }
  }
  return entries;
}

std::optional<std::string> GitRepo::read_blob(const std::string& commit,
                                              const std::string& path) const {
  CommandResult res = git(*this, {"show", commit + ":" + path});
  if (!res.ok()) return std::nullopt;
  return res.out;
}

std::vector<GovernanceFileRecord> discover_governance_files(
    const GitRepo& repo, const std::vector<std::string>& patterns) {
  std::vector<GovernanceFileRecord> records;
  for (const auto& name : repo.list_root_files()) {
    if (name.find('/') != std::string::npos) continue;  // root level only
    for (const auto& pattern : patterns) {
      if (glob_match_ci(pattern, name)) {
        records.push_back({repo.repo_id(), name, pattern});
        break;
      }
    }
  }
  std::sort(records.begin(), records.end(),
            [](const GovernanceFileRecord& a, const GovernanceFileRecord& b) {
              return case_fold_less(a.path, b.path);
            });
  return records;
}

std::vector<CommitTouch> list_governance_commits(
    const GitRepo& repo, const std::vector<GovernanceFileRecord>& records) {
  if (records.empty())
    throw std::invalid_argument("list_governance_commits: no records");
  std::vector<std::string> paths;
  for (const auto& r : records) paths.push_back(r.path);
  std::vector<CommitTouch> touches;
  for (const auto& e : repo.log_for_paths(paths)) {
    CommitTouch t;
    t.repo_id = repo.repo_id();
    t.commit_id = e.commit_id;
    t.time = e.commit_time;
    t.date = utc_date_string(e.commit_time);
    t.additions = e.additions;
    t.deletions = e.deletions;
    touches.push_back(std::move(t));
  }
  return touches;
}

std::string build_composite_view(
    const std::vector<std::pair<std::string, std::string>>& files_at_commit) {
  if (files_at_commit.empty())
    throw std::invalid_argument("build_composite_view: empty file list");
  if (files_at_commit.size() == 1) return files_at_commit[0].second;

  auto sorted = files_at_commit;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return case_fold_less(a.first, b.first);
  });

  // Normalized block: \r\n folded, per-line trailing blanks stripped, block
  // trimmed. Dedup is exact match on that form.
  std::set<std::string> seen;
  std::vector<std::string> blocks;
  for (const auto& [path, text] : sorted) {
    std::vector<std::string> lines = split_lines(text);
    std::vector<std::string> current;
    auto flush = [&] {
      while (!current.empty() && current.back().empty()) current.pop_back();
      if (current.empty()) return;
      std::string block;
      for (std::size_t i = 0; i < current.size(); ++i) {
        if (i) block += '\n';
        block += current[i];
      }
      if (seen.insert(block).second) blocks.push_back(block);
      current.clear();
    };
    for (const auto& raw : lines) {
      std::string line = raw;
      while (!line.empty() &&
             (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
        line.pop_back();
      if (trim(line).empty()) {
        flush();
      } else {
        current.push_back(line);
      }
    }
    flush();
  }
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += "\n\n";
    out += blocks[i];
  }
  out += '\n';
  return out;
}

PairingOutcome recover_snapshot_pair(
    const GitRepo& repo, const std::vector<GovernanceFileRecord>& records,
    const ValidityPredicate& validity) {
  if (records.empty())
    throw std::invalid_argument("recover_snapshot_pair: no records");
  std::vector<std::string> paths;
  for (const auto& r : records) paths.push_back(r.path);
  const auto entries = repo.log_for_paths(paths);

  // Composite text at a commit, or nullopt when no matched path exists there
  // (e.g. the commit deleted the last governance file).
  auto composite_at = [&](const GitRepo::LogEntry& e)
      -> std::optional<std::pair<std::string, int>> {
    std::vector<std::pair<std::string, std::string>> present;
    for (const auto& p : paths) {
      if (auto blob = repo.read_blob(e.commit_id, p))
        present.emplace_back(p, std::move(*blob));
    }
    if (present.empty()) return std::nullopt;
    int file_count = static_cast<int>(present.size());
    return std::make_pair(build_composite_view(present), file_count);
  };

  auto snapshot_at = [&](const GitRepo::LogEntry& e)
      -> std::optional<GovernanceSnapshot> {
    auto composite = composite_at(e);
    if (!composite) return std::nullopt;
    if (!validity(composite->first)) return std::nullopt;
    GovernanceSnapshot s;
    s.repo_id = repo.repo_id();
    s.commit_id = e.commit_id;
    s.commit_time = e.commit_time;
    s.commit_date = utc_date_string(e.commit_time);
    s.raw_text = std::move(composite->first);
    s.file_count = composite->second;
    return s;
  };

  std::optional<GovernanceSnapshot> initial;
  for (const auto& e : entries) {
    if ((initial = snapshot_at(e))) break;
  }
  if (!initial) return {std::nullopt, "no-valid-snapshot"};

  std::optional<GovernanceSnapshot> latest;
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if ((latest = snapshot_at(*it))) break;
  }
  if (!latest || latest->commit_id == initial->commit_id)
    return {std::nullopt, "single-snapshot"};

  SnapshotPair pair;
  pair.repo_id = repo.repo_id();
  pair.gap_days = utc_epoch_day(latest->commit_time) -
                  utc_epoch_day(initial->commit_time);
  pair.across_day = pair.gap_days >= 1;
  pair.initial = std::move(*initial);
  pair.latest = std::move(*latest);
  return {std::move(pair), ""};
}

CorpusStats corpus_stats(const std::vector<RepoMiningOutcome>& outcomes) {
  CorpusStats stats;
  stats.n_repos = static_cast<long>(outcomes.size());
  std::vector<long> gaps;
  for (const auto& o : outcomes) {
    for (const auto& r : o.records) ++stats.filename_histogram[r.matched_pattern];
    stats.n_touches += static_cast<long>(o.touches.size());
    for (const auto& t : o.touches) {
      stats.total_additions += t.additions;
      stats.total_deletions += t.deletions;
    }
    if (o.pair) {
      ++stats.n_paired;
      if (o.pair->across_day) ++stats.n_across_day;
      gaps.push_back(o.pair->gap_days);
    }
  }
  if (!gaps.empty()) {
    std::sort(gaps.begin(), gaps.end());
    stats.gap_median_days = lower_median_sorted(gaps);
    long q1 = nearest_rank_quantile_sorted(gaps, 0.25);
    long q3 = nearest_rank_quantile_sorted(gaps, 0.75);
    stats.gap_iqr_days = q3 - q1;
    stats.gap_max_days = gaps.back();
  }
  return stats;
}

}  // namespace govmine::corpus

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace govmine::corpus {

// A root-level file selected by the filename pattern set.
struct GovernanceFileRecord {
  std::string repo_id;
  std::string path;             // repository-relative, no directory part
  std::string matched_pattern;  // first pattern in the set that matched
};

struct GovernanceSnapshot {
  std::string repo_id;
  std::string commit_id;
  std::string commit_date;       // UTC calendar date, YYYY-MM-DD
  std::int64_t commit_time = 0;  // committer timestamp, unix seconds
  std::string raw_text;          // composite when several files matched
  int file_count = 1;
};

struct SnapshotPair {
  std::string repo_id;
  GovernanceSnapshot initial;
  GovernanceSnapshot latest;
  long gap_days = 0;
  bool across_day = false;
};

// One commit that modified any matched governance file; line deltas are
// restricted to the matched paths.
struct CommitTouch {
  std::string repo_id;
  std::string commit_id;
  std::string date;  // UTC calendar date
  std::int64_t time = 0;
  long additions = 0;
  long deletions = 0;
};

struct CorpusStats {
  long n_repos = 0;
  long n_paired = 0;
  long n_across_day = 0;
  std::optional<long> gap_median_days;
  std::optional<long> gap_iqr_days;
  std::optional<long> gap_max_days;
  std::map<std::string, long> filename_histogram;  // pattern -> file count
  long n_touches = 0;
  long total_additions = 0;
  long total_deletions = 0;
};

// Every repo lands in exactly one of the {paired, excluded} partitions.
struct RepoMiningOutcome {
  std::string repo_id;
  std::vector<GovernanceFileRecord> records;
  std::vector<CommitTouch> touches;
  std::optional<SnapshotPair> pair;
  std::string exclusion;  // reason, set iff !pair
};

// Read-only view of a checkout, bare repository, or plain directory. Git
// queries go through the git binary; plain directories only support root
// file listing.
class GitRepo {
 public:
  GitRepo(std::string repo_id, std::string root);

  const std::string& repo_id() const { return repo_id_; }
  const std::string& root() const { return root_; }
  bool is_git() const { return is_git_; }

  // Root-level regular files at HEAD (git) or on disk (plain directory).
  std::vector<std::string> list_root_files() const;

  struct LogEntry {
    std::string commit_id;
    std::int64_t commit_time = 0;
    long additions = 0;
    long deletions = 0;
  };
  // Commits on the HEAD lineage touching any of `paths`, oldest first.
  // Renames are not followed: a file renamed into a matching name enters
  // history at the rename commit.
  std::vector<LogEntry> log_for_paths(
      const std::vector<std::string>& paths) const;

  // Blob content of `path` at `commit`, or nullopt when absent there.
  std::optional<std::string> read_blob(const std::string& commit,
                                       const std::string& path) const;

 private:
  std::string repo_id_;
  std::string root_;
  bool is_git_ = false;
};

std::vector<GovernanceFileRecord> discover_governance_files(
    const GitRepo& repo, const std::vector<std::string>& patterns);

std::vector<CommitTouch> list_governance_commits(
    const GitRepo& repo, const std::vector<GovernanceFileRecord>& records);

// Lexicographic path order (case-folded, raw bytes as tie-break), blank-line
// separated; repeated normalized blocks are dropped. A single file passes
// through unchanged.
std::string build_composite_view(
    const std::vector<std::pair<std::string, std::string>>& files_at_commit);

using ValidityPredicate = std::function<bool(const std::string&)>;

struct PairingOutcome {
  std::optional<SnapshotPair> pair;
  std::string exclusion;  // "single-snapshot" | "no-valid-snapshot"
};

PairingOutcome recover_snapshot_pair(
    const GitRepo& repo, const std::vector<GovernanceFileRecord>& records,
    const ValidityPredicate& validity);

CorpusStats corpus_stats(const std::vector<RepoMiningOutcome>& outcomes);

// Committer timestamp -> UTC calendar fields.
std::string utc_date_string(std::int64_t unix_seconds);
long utc_epoch_day(std::int64_t unix_seconds);

}  // namespace govmine::corpus

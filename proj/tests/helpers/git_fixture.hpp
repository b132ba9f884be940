#pragma once

#include <string>
#include <utility>
#include <vector>

namespace testhelpers {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string sub(const std::string& name) const;  // creates a subdirectory

 private:
  std::string path_;
};

// Runs git with fixed author/committer identity; throws on failure.
void git(const std::vector<std::string>& args, const std::string& cwd,
         const std::string& commit_date_iso = "");

void init_repo(const std::string& dir);

// Writes files and commits them with the given committer/author date
// (e.g. "2014-03-26T12:00:00Z").
void commit_files(
    const std::string& repo,
    const std::vector<std::pair<std::string, std::string>>& files,
    const std::string& date_iso, const std::string& message);

void commit_remove(const std::string& repo, const std::string& path,
                   const std::string& date_iso, const std::string& message);

void commit_rename(const std::string& repo, const std::string& from,
                   const std::string& to, const std::string& date_iso,
                   const std::string& message);

std::string head_commit(const std::string& repo);

}  // namespace testhelpers

#include "helpers/git_fixture.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "govmine/common/subprocess.hpp"

namespace fs = std::filesystem;

namespace testhelpers {

TempDir::TempDir() {
  std::string tmpl = (fs::temp_directory_path() / "govmine_test_XXXXXX");
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  if (!mkdtemp(buf.data()))
    throw std::runtime_error("mkdtemp failed for " + tmpl);
  path_ = buf.data();
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string TempDir::sub(const std::string& name) const {
  std::string dir = path_ + "/" + name;
  fs::create_directories(dir);
  return dir;
}

void git(const std::vector<std::string>& args, const std::string& cwd,
         const std::string& commit_date_iso) {
  std::vector<std::string> argv = {"env",
                                   "GIT_AUTHOR_NAME=fixture",
                                   "GIT_AUTHOR_EMAIL=fixture@example.com",
                                   "GIT_COMMITTER_NAME=fixture",
                                   "GIT_COMMITTER_EMAIL=fixture@example.com"};
  if (!commit_date_iso.empty()) {
    argv.push_back("GIT_COMMITTER_DATE=" + commit_date_iso);
    argv.push_back("GIT_AUTHOR_DATE=" + commit_date_iso);
  }
  argv.push_back("git");
  argv.insert(argv.end(), args.begin(), args.end());
  govmine::CommandResult res = govmine::run_command(argv, cwd);
  if (!res.ok()) {
    std::string cmd;
    for (const auto& a : args) cmd += a + " ";
    throw std::runtime_error("git " + cmd + "failed: " + res.err);
  }
}

void init_repo(const std::string& dir) {
  fs::create_directories(dir);
  git({"init", "-q", "-b", "main"}, dir);
}

void commit_files(
    const std::string& repo,
    const std::vector<std::pair<std::string, std::string>>& files,
    const std::string& date_iso, const std::string& message) {
  for (const auto& [name, content] : files) {
    std::ofstream out(repo + "/" + name, std::ios::binary);
    out << content;
  }
  git({"add", "-A"}, repo);
  git({"commit", "-q", "-m", message, "--no-verify"}, repo, date_iso);
}

void commit_remove(const std::string& repo, const std::string& path,
                   const std::string& date_iso, const std::string& message) {
  git({"rm", "-q", path}, repo);
  git({"commit", "-q", "-m", message, "--no-verify"}, repo, date_iso);
}

void commit_rename(const std::string& repo, const std::string& from,
                   const std::string& to, const std::string& date_iso,
                   const std::string& message) {
  git({"mv", from, to}, repo);
  git({"commit", "-q", "-m", message, "--no-verify"}, repo, date_iso);
}

std::string head_commit(const std::string& repo) {
  govmine::CommandResult res =
      govmine::run_command({"git", "-C", repo, "rev-parse", "HEAD"});
  if (!res.ok()) throw std::runtime_error("rev-parse failed");
  std::string id = res.out;
  while (!id.empty() && (id.back() == '\n' || id.back() == '\r'))
    id.pop_back();
  return id;
}

}  // namespace testhelpers

#pragma once

#include <stdexcept>
#include <string>

namespace govmine {

// Configuration and input validation problems (CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Failures while executing a pipeline stage (CLI exit code 3).
struct StageError : std::runtime_error {
  StageError(std::string stage_name, const std::string& what)
      : std::runtime_error(stage_name + ": " + what),
        stage(std::move(stage_name)) {}
  std::string stage;
};

// I/O or subprocess failure tied to one repository.
struct RepoError : std::runtime_error {
  RepoError(std::string repo, const std::string& what)
      : std::runtime_error("repo " + repo + ": " + what),
        repo_id(std::move(repo)) {}
  std::string repo_id;
};

}  // namespace govmine

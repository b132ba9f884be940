#include "govmine/report/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "govmine/cluster/distribution.hpp"
#include "govmine/cluster/labels.hpp"
#include "govmine/common/config_file.hpp"
#include "govmine/common/error.hpp"
#include "govmine/common/rng.hpp"
#include "govmine/corpus/miner.hpp"
#include "govmine/default_configs.hpp"
#include "govmine/ig/parser.hpp"
#include "govmine/metrics/diversity.hpp"
#include "govmine/metrics/rarefaction.hpp"
#include "govmine/normalize/pronouns.hpp"
#include "govmine/normalize/segmenter.hpp"
#include "govmine/report/tables.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace govmine::report {

namespace {

// ---- shared infrastructure -------------------------------------------------

struct LoadedConfigs {
  std::vector<std::string> patterns;
  ig::ParserConfig parser;
  norm::NormalizerOptions norm_options;
  norm::SegmenterOptions segment_options;
};

std::string config_text(const std::string& path, const char* fallback) {
  return path.empty() ? std::string(fallback) : read_file(path);
}

LoadedConfigs load_configs(const RunConfig& c) {
  LoadedConfigs L;
  L.patterns = parse_config_lines(
      config_text(c.patterns_path, defaults::kPatterns));
  L.parser.roles = ig::RoleLexicon::from_config(
      config_text(c.roles_path, defaults::kRoleLexicon));
  L.parser.deontics = ig::DeonticMap::from_config(
      config_text(c.deontics_path, defaults::kDeonticMap));
  L.parser.polarity = ig::PolarityTable::from_config(
      config_text(c.polarity_path, defaults::kPolarityMap));
  L.parser.typology = ig::ActionTypology::from_config(
      config_text(c.typology_path, defaults::kTypologyMap));
  L.parser.verbs = ig::VerbLexicon::from_config(
      config_text(c.verbs_path, defaults::kVerbLexicon));
  L.norm_options = norm::NormalizerOptions::from_config(
      config_text(c.badges_path, defaults::kBadgeHosts));
  L.segment_options = norm::SegmenterOptions::from_config(
      config_text(c.abbreviations_path, defaults::kAbbreviations));
  return L;
}

std::string in_dir_or(const RunConfig& c, const std::string& in_dir) {
  return in_dir.empty() ? c.out_dir : in_dir;
}

std::string sanitize_id(std::string_view name) {
  std::string out;
  for (char ch : name) {
    bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' ||
              ch == '-' || ch == '_';
    out += ok ? ch : '_';
  }
  return out;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw StageError("io", "cannot create directory " + dir);
}

std::vector<json> read_jsonl(const std::string& path,
                             const std::string& stage) {
  std::vector<json> out;
  std::ifstream in(path);
  if (!in) throw StageError(stage, "missing input artifact " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw StageError(stage, path + ":" + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  return out;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::string blob;
  for (const auto& l : lines) {
    blob += l;
    blob += '\n';
  }
  write_file(path, blob);
}

// ---- pairs.jsonl schema ----------------------------------------------------

json snapshot_to_json(const corpus::GovernanceSnapshot& s) {
  return json{{"commit_id", s.commit_id},
              {"commit_date", s.commit_date},
              {"commit_time", s.commit_time},
              {"file_count", s.file_count},
              {"text", s.raw_text}};
}

corpus::GovernanceSnapshot snapshot_from_json(const std::string& repo_id,
                                              const json& j) {
  corpus::GovernanceSnapshot s;
  s.repo_id = repo_id;
  s.commit_id = j.at("commit_id");
  s.commit_date = j.at("commit_date");
  s.commit_time = j.at("commit_time");
  s.file_count = j.at("file_count");
  s.raw_text = j.at("text");
  return s;
}

// ---- statements.jsonl schema -----------------------------------------------

json statement_to_json(const ig::InstitutionalStatement& st,
                       const ig::ParserConfig& parser) {
  json spans = json::object();
  auto span_json = [](const ig::ComponentSpan& s) {
    return s.present ? json{s.start, s.end} : json(nullptr);
  };
  spans["role"] = span_json(st.role_span);
  spans["deontic"] = span_json(st.deontic_span);
  spans["action"] = span_json(st.action_span);
  spans["object"] = span_json(st.object_span);
  return json{
      {"statement_id", st.statement_id},
      {"repo_id", st.repo_id},
      {"snapshot", st.snapshot},
      {"block_id", st.block_id},
      {"sentence_start", st.sentence_start},
      {"index_in_sentence", st.index_in_sentence},
      {"role_raw", st.role_raw},
      {"role_canon", st.role_canon},
      {"role_uncontrolled", st.role_uncontrolled},
      {"deontic_raw", st.deontic_raw},
      {"deontic", ig::deontic_name(st.deontic)},
      {"polarity",
       ig::polarity_name(parser.polarity.recode(st.deontic))},
      {"action_raw", st.action_raw},
      {"action_lemma", st.action_lemma},
      {"action_type", st.action_type},
      {"object_raw", st.object_raw},
      {"object_head", st.object_head},
      {"has_object", st.has_object},
      {"spans", spans}};
}

ig::InstitutionalStatement statement_from_json(const json& j,
                                               const std::string& stage) {
  ig::InstitutionalStatement st;
  try {
    st.statement_id = j.at("statement_id");
    st.repo_id = j.at("repo_id");
    st.snapshot = j.at("snapshot");
    st.block_id = j.value("block_id", 0);
    st.sentence_start = j.value("sentence_start", 0UL);
    st.index_in_sentence = j.value("index_in_sentence", 0);
    st.role_raw = j.value("role_raw", "");
    st.role_canon = j.at("role_canon");
    st.role_uncontrolled = j.value("role_uncontrolled", false);
    st.deontic_raw = j.value("deontic_raw", "");
    auto d = ig::deontic_from_name(j.value("deontic", "NONE"));
    if (!d) throw StageError(stage, "unknown deontic in " + st.statement_id);
    st.deontic = *d;
    st.action_raw = j.value("action_raw", "");
    st.action_lemma = j.at("action_lemma");
    st.action_type = j.value("action_type", "null");
    st.object_raw = j.value("object_raw", "");
    st.object_head = j.value("object_head", "");
    st.has_object = j.value("has_object", false);
  } catch (const json::exception& e) {
    throw StageError(stage, std::string("bad statement record: ") + e.what());
  }
  return st;
}

bool snapshot_is_initial(const std::string& name) { return name == "initial"; }

// ---- mine ------------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> manifest_entries(
    const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> repos;  // id, path
  if (fs::is_directory(config.manifest)) {
    std::vector<std::string> dirs;
    for (const auto& entry : fs::directory_iterator(config.manifest))
      if (entry.is_directory()) dirs.push_back(entry.path().string());
    std::sort(dirs.begin(), dirs.end());
    for (const auto& d : dirs)
      repos.emplace_back(sanitize_id(fs::path(d).filename().string()), d);
  } else {
    for (const auto& line : parse_config_lines(read_file(config.manifest))) {
      if (line.find("://") != std::string::npos)
        throw ConfigError(
            "manifest: remote URLs are not supported, clone locally first: " +
            line);
      repos.emplace_back(sanitize_id(fs::path(line).filename().string()),
                         line);
    }
  }
  if (repos.empty()) throw ConfigError("manifest lists no repositories");
  std::set<std::string> ids;
  for (const auto& [id, path] : repos)
    if (!ids.insert(id).second)
      throw ConfigError("manifest: duplicate repository id " + id);
  std::sort(repos.begin(), repos.end());
  return repos;
}

}  // namespace

const std::vector<std::string>& feature_order() {
  static const std::vector<std::string> kOrder = {
      "roles", "actions", "deontic", "deontic_polarity", "objects"};
  return kOrder;
}

void stage_mine(const RunConfig& config) {
  LoadedConfigs L = load_configs(config);
  auto repos = manifest_entries(config);
  ensure_dir(config.out_dir);

  corpus::ValidityPredicate validity = [&](const std::string& text) {
    norm::NormalizedDocument doc = norm::normalize(text, L.norm_options);
    return !norm::segment(doc, L.segment_options).empty();
  };

  const long n = static_cast<long>(repos.size());
  std::vector<corpus::RepoMiningOutcome> outcomes(repos.size());
  std::vector<std::string> errors(repos.size());

#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const auto& [repo_id, path] = repos[static_cast<std::size_t>(i)];
    corpus::RepoMiningOutcome& outcome = outcomes[static_cast<std::size_t>(i)];
    outcome.repo_id = repo_id;
    try {
      corpus::GitRepo repo(repo_id, path);
      outcome.records = corpus::discover_governance_files(repo, L.patterns);
      if (outcome.records.empty()) {
        outcome.exclusion = "no-governance-file";
      } else {
        outcome.touches = corpus::list_governance_commits(repo, outcome.records);
        corpus::PairingOutcome pairing =
            corpus::recover_snapshot_pair(repo, outcome.records, validity);
        outcome.pair = std::move(pairing.pair);
        outcome.exclusion = pairing.exclusion;
      }
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }

  std::string failed;
  for (std::size_t i = 0; i < repos.size(); ++i)
    if (!errors[i].empty()) failed += " " + repos[i].first + " (" + errors[i] + ")";
  if (!failed.empty()) throw StageError("mine", "repositories failed:" + failed);

  std::vector<std::string> lines;
  for (const auto& outcome : outcomes) {
    json j;
    j["repo_id"] = outcome.repo_id;
    json files = json::array();
    for (const auto& r : outcome.records)
      files.push_back({{"path", r.path}, {"pattern", r.matched_pattern}});
    j["files"] = files;
    json touches = json::array();
    for (const auto& t : outcome.touches)
      touches.push_back({{"commit_id", t.commit_id},
                         {"date", t.date},
                         {"additions", t.additions},
                         {"deletions", t.deletions}});
    j["touches"] = touches;
    if (outcome.pair) {
      j["paired"] = true;
      j["initial"] = snapshot_to_json(outcome.pair->initial);
      j["latest"] = snapshot_to_json(outcome.pair->latest);
      j["gap_days"] = outcome.pair->gap_days;
      j["across_day"] = outcome.pair->across_day;
    } else {
      j["paired"] = false;
      j["exclusion"] = outcome.exclusion;
    }
    lines.push_back(j.dump());
  }
  write_lines(config.out_dir + "/pairs.jsonl", lines);

  corpus::CorpusStats stats = corpus::corpus_stats(outcomes);
  json sj;
  sj["n_repos"] = stats.n_repos;
  sj["n_paired"] = stats.n_paired;
  sj["n_across_day"] = stats.n_across_day;
  sj["gap_median_days"] =
      stats.gap_median_days ? json(*stats.gap_median_days) : json(nullptr);
  sj["gap_iqr_days"] =
      stats.gap_iqr_days ? json(*stats.gap_iqr_days) : json(nullptr);
  sj["gap_max_days"] =
      stats.gap_max_days ? json(*stats.gap_max_days) : json(nullptr);
  sj["filename_histogram"] = stats.filename_histogram;
  sj["n_touches"] = stats.n_touches;
  sj["total_additions"] = stats.total_additions;
  sj["total_deletions"] = stats.total_deletions;
  write_file(config.out_dir + "/corpus_stats.json", sj.dump(2) + "\n");
}

namespace {

struct NormalizedSnapshot {
  std::string repo_id;
  std::string commit_id;
  std::string snapshot;  // "initial" | "latest"
  norm::NormalizedDocument doc;
  std::vector<norm::SentenceSpan> sentences;
  std::vector<norm::Substitution> substitutions;
};

NormalizedSnapshot normalize_snapshot(const RunConfig& config,
                                      const LoadedConfigs& L,
                                      const std::string& repo_id,
                                      const std::string& snapshot,
                                      const corpus::GovernanceSnapshot& snap) {
  NormalizedSnapshot out;
  out.repo_id = repo_id;
  out.commit_id = snap.commit_id;
  out.snapshot = snapshot;
  norm::NormalizedDocument doc = norm::normalize(snap.raw_text, L.norm_options);
  doc.repo_id = repo_id;
  doc.commit_id = snap.commit_id;
  std::vector<norm::SentenceSpan> sentences =
      norm::segment(doc, L.segment_options);
  if (config.resolve_pronouns) {
    norm::PronounResolution resolved = norm::resolve_pronouns(
        doc, sentences, L.parser.roles.surfaces());
    out.doc = std::move(resolved.doc);
    out.substitutions = std::move(resolved.log);
    out.sentences = norm::segment(out.doc, L.segment_options);
  } else {
    out.doc = std::move(doc);
    out.sentences = std::move(sentences);
  }
  return out;
}

json normalized_to_json(const NormalizedSnapshot& ns) {
  json sections = json::array();
  for (const auto& s : ns.doc.sections)
    sections.push_back({{"text", s.text}, {"depth", s.depth},
                        {"start", s.start}});
  json sentences = json::array();
  for (const auto& s : ns.sentences)
    sentences.push_back({{"start", s.start}, {"end", s.end},
                         {"block_id", s.block_id}});
  json subs = json::array();
  for (const auto& s : ns.substitutions)
    subs.push_back({{"start", s.start},
                    {"end", s.end},
                    {"original", s.original},
                    {"replacement", s.replacement}});
  return json{{"repo_id", ns.repo_id},       {"commit_id", ns.commit_id},
              {"snapshot", ns.snapshot},     {"text", ns.doc.text},
              {"sections", sections},        {"sentences", sentences},
              {"substitutions", subs},       {"section_count", ns.doc.sections.size()}};
}

struct PairLite {
  std::string repo_id;
  corpus::GovernanceSnapshot initial;
  corpus::GovernanceSnapshot latest;
};

std::vector<PairLite> read_paired(const std::string& dir,
                                  const std::string& stage) {
  std::vector<PairLite> pairs;
  for (const json& j : read_jsonl(dir + "/pairs.jsonl", stage)) {
    if (!j.value("paired", false)) continue;
    PairLite p;
    p.repo_id = j.at("repo_id");
    p.initial = snapshot_from_json(p.repo_id, j.at("initial"));
    p.latest = snapshot_from_json(p.repo_id, j.at("latest"));
    pairs.push_back(std::move(p));
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const PairLite& a, const PairLite& b) {
              return a.repo_id < b.repo_id;
            });
  return pairs;
}

}  // namespace

void stage_normalize(const RunConfig& config, const std::string& in_dir) {
  LoadedConfigs L = load_configs(config);
  std::vector<PairLite> pairs = read_paired(in_dir_or(config, in_dir),
                                            "normalize");
  ensure_dir(config.out_dir);

  struct Unit {
    const PairLite* pair;
    bool initial;
  };
  std::vector<Unit> units;
  for (const auto& p : pairs) {
    units.push_back({&p, true});
    units.push_back({&p, false});
  }
  std::vector<NormalizedSnapshot> results(units.size());
  const long n = static_cast<long>(units.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const Unit& u = units[static_cast<std::size_t>(i)];
    results[static_cast<std::size_t>(i)] = normalize_snapshot(
        config, L, u.pair->repo_id, u.initial ? "initial" : "latest",
        u.initial ? u.pair->initial : u.pair->latest);
  }
  for (const auto& ns : results) {
    std::string dir = config.out_dir + "/normalized/" + sanitize_id(ns.repo_id);
    ensure_dir(dir);
    write_file(dir + "/" + sanitize_id(ns.commit_id) + ".json",
               normalized_to_json(ns).dump(2) + "\n");
  }
}

void stage_parse(const RunConfig& config, const std::string& in_dir) {
  LoadedConfigs L = load_configs(config);
  const std::string input = in_dir_or(config, in_dir);
  ensure_dir(config.out_dir);

  if (!config.import_statements.empty()) {
    // external parser output: validate and pass through
    std::vector<std::string> lines;
    for (const json& j : read_jsonl(config.import_statements, "parse")) {
      statement_from_json(j, "parse");
      lines.push_back(j.dump());
    }
    write_lines(config.out_dir + "/statements.jsonl", lines);
    return;
  }

  std::vector<PairLite> pairs = read_paired(input, "parse");
  std::vector<std::vector<std::string>> per_repo(pairs.size());
  const long n = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const PairLite& p = pairs[static_cast<std::size_t>(i)];
    std::vector<std::string>& lines = per_repo[static_cast<std::size_t>(i)];
    for (const std::string snapshot : {"initial", "latest"}) {
      const corpus::GovernanceSnapshot& snap =
          snapshot == "initial" ? p.initial : p.latest;
      std::string path = input + "/normalized/" + sanitize_id(p.repo_id) +
                         "/" + sanitize_id(snap.commit_id) + ".json";
      json nj;
      try {
        nj = json::parse(read_file(path));
      } catch (const std::exception& e) {
        throw StageError("parse", p.repo_id + ": " + e.what());
      }
      const std::string text = nj.at("text");
      for (const json& sj : nj.at("sentences")) {
        std::size_t start = sj.at("start");
        std::size_t end = sj.at("end");
        int block_id = sj.at("block_id");
        auto extracted = ig::extract_statements(
            std::string_view(text).substr(start, end - start), L.parser);
        for (auto& st : extracted) {
          st.repo_id = p.repo_id;
          st.snapshot = snapshot;
          st.block_id = block_id;
          st.sentence_start = start;
          char suffix[32];
          std::snprintf(suffix, sizeof suffix, "%08zu|%02d", start,
                        st.index_in_sentence);
          st.statement_id = p.repo_id + "|" + snapshot + "|" + suffix;
          lines.push_back(statement_to_json(st, L.parser).dump());
        }
      }
    }
  }
  std::vector<std::string> lines;
  for (const auto& repo_lines : per_repo)
    lines.insert(lines.end(), repo_lines.begin(), repo_lines.end());
  write_lines(config.out_dir + "/statements.jsonl", lines);
}

namespace {

std::vector<ig::InstitutionalStatement> read_statements(
    const std::string& dir, const std::string& stage) {
  std::vector<ig::InstitutionalStatement> out;
  for (const json& j : read_jsonl(dir + "/statements.jsonl", stage))
    out.push_back(statement_from_json(j, stage));
  std::sort(out.begin(), out.end(),
            [](const ig::InstitutionalStatement& a,
               const ig::InstitutionalStatement& b) {
              return a.statement_id < b.statement_id;
            });
  return out;
}

}  // namespace

void stage_cluster(const RunConfig& config, const std::string& in_dir) {
  const std::string input = in_dir_or(config, in_dir);
  ensure_dir(config.out_dir);
  auto statements = read_statements(input, "cluster");

  if (!config.import_clusters.empty()) {
    std::vector<std::string> lines;
    for (const json& j : read_jsonl(config.import_clusters, "cluster")) {
      if (!j.contains("statement_id") || !j.contains("feature") ||
          !j.contains("cluster_id"))
        throw StageError("cluster", "bad imported assignment record");
      lines.push_back(j.dump());
    }
    write_lines(config.out_dir + "/clusters.jsonl", lines);
    return;
  }

  std::vector<std::pair<std::string, std::vector<double>>> sidecar;
  if (!config.import_vectors.empty()) {
    for (const json& j : read_jsonl(config.import_vectors, "cluster")) {
      std::vector<double> vec = j.at("vector").get<std::vector<double>>();
      sidecar.emplace_back(j.at("statement_id"), std::move(vec));
    }
  }

  // jobs: repo x clustered feature, both snapshots jointly
  std::vector<std::string> repo_ids;
  std::map<std::string, std::vector<const ig::InstitutionalStatement*>> by_repo;
  for (const auto& st : statements) {
    if (by_repo.find(st.repo_id) == by_repo.end())
      repo_ids.push_back(st.repo_id);
    by_repo[st.repo_id].push_back(&st);
  }
  std::sort(repo_ids.begin(), repo_ids.end());

  const std::vector<cluster::FeatureKind> clustered = {
      cluster::FeatureKind::kRole, cluster::FeatureKind::kAction,
      cluster::FeatureKind::kObject};

  struct Job {
    std::string repo_id;
    cluster::FeatureKind feature;
    std::vector<std::pair<std::string, std::string>> id_texts;
  };
  std::vector<Job> jobs;
  for (const auto& repo_id : repo_ids) {
    for (auto feature : clustered) {
      Job job;
      job.repo_id = repo_id;
      job.feature = feature;
      for (const auto* st : by_repo[repo_id]) {
        if (auto text = cluster::render_statement(*st, feature))
          job.id_texts.emplace_back(st->statement_id, *text);
      }
      if (!job.id_texts.empty()) jobs.push_back(std::move(job));
    }
  }

  struct JobResult {
    std::vector<cluster::ClusterAssignment> assignments;
    std::vector<cluster::ClusterLabel> labels;
  };
  std::vector<JobResult> results(jobs.size());
  const long n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const Job& job = jobs[static_cast<std::size_t>(i)];
    std::vector<cluster::StatementVector> vectors;
    if (!config.import_vectors.empty()) {
      std::vector<std::string> ids;
      for (const auto& [id, text] : job.id_texts) ids.push_back(id);
      vectors = cluster::import_vectors(ids, sidecar);
    } else {
      vectors = cluster::encode_lexical(job.id_texts);
    }
    cluster::ClusterParams params{config.theta};
    // within a job the computation is single-threaded deterministic
    auto assignments =
        cluster::cluster_vectors(vectors, params, metrics::Exec::kSerial);
    auto labels = cluster::label_clusters(assignments, job.id_texts);
    results[static_cast<std::size_t>(i)] = {std::move(assignments),
                                            std::move(labels)};
  }

  std::vector<std::string> assignment_lines;
  std::vector<std::string> label_lines;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    for (const auto& a : results[i].assignments) {
      assignment_lines.push_back(json{{"statement_id", a.statement_id},
                                      {"feature",
                                       cluster::feature_name(job.feature)},
                                      {"cluster_id", a.cluster_id}}
                                     .dump());
    }
    for (const auto& label : results[i].labels) {
      json terms = json::array();
      for (const auto& [term, score] : label.top_terms)
        terms.push_back({{"term", term}, {"score", score}});
      label_lines.push_back(json{{"repo_id", job.repo_id},
                                 {"feature",
                                  cluster::feature_name(job.feature)},
                                 {"cluster_id", label.cluster_id},
                                 {"label", cluster::label_text(label)},
                                 {"terms", terms}}
                                .dump());
    }
  }
  write_lines(config.out_dir + "/clusters.jsonl", assignment_lines);
  write_lines(config.out_dir + "/cluster_labels.jsonl", label_lines);
}

namespace {

struct RepoFeatureData {
  metrics::FeatureDistribution initial;
  metrics::FeatureDistribution latest;
  std::vector<metrics::SampledStatement> members_initial;
  std::vector<metrics::SampledStatement> members_latest;
};

// Builds aligned snapshot distributions for every repo x feature, deontic
// features tallied over their inventories, the rest over cluster ids.
std::map<std::string, std::map<std::string, RepoFeatureData>> build_jobs(
    const std::vector<ig::InstitutionalStatement>& statements,
    const std::map<std::string, std::map<std::string, int>>& assignments,
    const ig::PolarityTable& polarity) {
  std::map<std::string, std::map<std::string, RepoFeatureData>> out;

  std::map<std::string, std::vector<const ig::InstitutionalStatement*>> by_repo;
  for (const auto& st : statements) by_repo[st.repo_id].push_back(&st);

  for (const auto& [repo_id, repo_statements] : by_repo) {
    for (const std::string& feature : feature_order()) {
      std::map<int, long> counts_init, counts_latest;
      std::vector<metrics::SampledStatement> members_init, members_latest;
      for (const auto* st : repo_statements) {
        std::optional<int> cluster;
        if (feature == "deontic") {
          if (st->deontic != ig::Deontic::kNone)
            cluster = static_cast<int>(st->deontic);
        } else if (feature == "deontic_polarity") {
          if (st->deontic != ig::Deontic::kNone)
            cluster = static_cast<int>(polarity.recode(st->deontic));
        } else {
          auto fit = assignments.find(feature);
          if (fit != assignments.end()) {
            auto ait = fit->second.find(st->statement_id);
            if (ait != fit->second.end() &&
                ait->second != cluster::kOutlierCluster)
              cluster = ait->second;
          }
        }
        if (!cluster) continue;
        counts_init.emplace(*cluster, 0);
        counts_latest.emplace(*cluster, 0);
        if (snapshot_is_initial(st->snapshot)) {
          ++counts_init[*cluster];
          members_init.push_back({st->statement_id, *cluster});
        } else {
          ++counts_latest[*cluster];
          members_latest.push_back({st->statement_id, *cluster});
        }
      }
      if (counts_init.empty() && counts_latest.empty()) continue;
      RepoFeatureData data;
      data.initial = metrics::FeatureDistribution::from_counts(
          repo_id, feature, metrics::Snapshot::kInitial, counts_init);
      data.latest = metrics::FeatureDistribution::from_counts(
          repo_id, feature, metrics::Snapshot::kLatest, counts_latest);
      data.members_initial = std::move(members_init);
      data.members_latest = std::move(members_latest);
      out[repo_id].emplace(feature, std::move(data));
    }
  }
  return out;
}

std::string metrics_csv_header() {
  return "repo_id,feature,n_initial,n_latest,h_initial,h_latest,delta_h,jsd,"
         "k_initial,k_latest,delta_k,rarefied_delta_k,eligible_h_jsd,"
         "eligible_k";
}

std::string opt_full(const std::optional<double>& v) {
  return v ? format_full(*v) : "";
}

}  // namespace

void stage_metrics(const RunConfig& config, const std::string& in_dir) {
  LoadedConfigs L = load_configs(config);
  const std::string input = in_dir_or(config, in_dir);
  ensure_dir(config.out_dir);
  auto statements = read_statements(input, "metrics");

  std::map<std::string, std::map<std::string, int>> assignments;
  for (const json& j : read_jsonl(input + "/clusters.jsonl", "metrics")) {
    int cluster_id;
    if (j.at("cluster_id").is_string())
      cluster_id = cluster::kOutlierCluster;  // "OUTLIER"
    else
      cluster_id = j.at("cluster_id");
    assignments[j.at("feature")][j.at("statement_id")] = cluster_id;
  }

  auto jobs = build_jobs(statements, assignments, L.parser.polarity);

  std::vector<std::string> csv_lines = {metrics_csv_header()};
  std::vector<std::string> dist_lines;
  std::vector<std::string> metric_lines;
  for (const auto& [repo_id, features] : jobs) {
    for (const std::string& feature : feature_order()) {
      auto it = features.find(feature);
      if (it == features.end()) continue;
      const RepoFeatureData& data = it->second;
      metrics::PairedMetrics pm;
      pm.repo_id = repo_id;
      pm.feature = feature;
      pm.n_initial = data.initial.n;
      pm.n_latest = data.latest.n;
      metrics::Eligibility eligibility =
          metrics::screen_eligibility(data.initial, data.latest);
      pm.eligible_h_jsd = eligibility.h_jsd;
      pm.eligible_k = eligibility.k;
      if (data.initial.n >= 1 && data.latest.n >= 1) {
        pm.h_initial = metrics::entropy_bits(data.initial);
        pm.h_latest = metrics::entropy_bits(data.latest);
        pm.delta_h = *pm.h_latest - *pm.h_initial;
        pm.jsd = metrics::jsd_bits(data.initial, data.latest);
        metrics::RarefactionParams rp = config.rarefaction;
        std::string salt = repo_id + "/" + feature;
        rp.seed = mix_seed(config.seed, fnv1a(salt.data(), salt.size()));
        pm.rarefied_delta_k = metrics::rarefied_delta_richness(
            data.members_initial, data.members_latest, rp, config.tau);
      }
      pm.k_initial = metrics::richness(data.initial, config.tau);
      pm.k_latest = metrics::richness(data.latest, config.tau);
      pm.delta_k = pm.k_latest - pm.k_initial;

      std::string line = repo_id + "," + feature + "," +
                         std::to_string(pm.n_initial) + "," +
                         std::to_string(pm.n_latest) + "," +
                         opt_full(pm.h_initial) + "," +
                         opt_full(pm.h_latest) + "," + opt_full(pm.delta_h) +
                         "," + opt_full(pm.jsd) + "," +
                         std::to_string(pm.k_initial) + "," +
                         std::to_string(pm.k_latest) + "," +
                         std::to_string(pm.delta_k) + "," +
                         opt_full(pm.rarefied_delta_k) + "," +
                         (pm.eligible_h_jsd ? "true" : "false") + "," +
                         (pm.eligible_k ? "true" : "false");
      csv_lines.push_back(line);

      json mj;
      mj["repo_id"] = repo_id;
      mj["feature"] = feature;
      mj["n_initial"] = pm.n_initial;
      mj["n_latest"] = pm.n_latest;
      if (pm.h_initial) {
        mj["h_initial"] = *pm.h_initial;
        mj["h_latest"] = *pm.h_latest;
        mj["delta_h"] = *pm.delta_h;
        mj["jsd"] = *pm.jsd;
        mj["rarefied_delta_k"] = *pm.rarefied_delta_k;
      }
      mj["k_initial"] = pm.k_initial;
      mj["k_latest"] = pm.k_latest;
      mj["delta_k"] = pm.delta_k;
      mj["eligible_h_jsd"] = pm.eligible_h_jsd;
      mj["eligible_k"] = pm.eligible_k;
      metric_lines.push_back(mj.dump());

      for (const metrics::FeatureDistribution* dist :
           {&data.initial, &data.latest}) {
        json dj;
        dj["repo_id"] = repo_id;
        dj["feature"] = feature;
        dj["snapshot"] = metrics::snapshot_name(dist->snapshot);
        dj["n"] = dist->n;
        json counts = json::object();
        for (const auto& [cluster, count] : dist->counts)
          counts[std::to_string(cluster)] = count;
        dj["counts"] = counts;
        dist_lines.push_back(dj.dump());
      }
    }
  }
  write_lines(config.out_dir + "/metrics.csv", csv_lines);
  write_lines(config.out_dir + "/metrics.jsonl", metric_lines);
  write_lines(config.out_dir + "/distributions.jsonl", dist_lines);
}

namespace {

struct MetricsRow {
  std::string repo_id;
  std::string feature;
  long n_initial = 0, n_latest = 0;
  std::optional<double> h_initial, h_latest, delta_h, jsd, rarefied_delta_k;
  long k_initial = 0, k_latest = 0, delta_k = 0;
  bool eligible_h_jsd = false, eligible_k = false;
};

std::vector<MetricsRow> read_metric_rows(const std::string& dir) {
  std::vector<MetricsRow> rows;
  for (const json& j : read_jsonl(dir + "/metrics.jsonl", "report")) {
    MetricsRow r;
    r.repo_id = j.at("repo_id");
    r.feature = j.at("feature");
    r.n_initial = j.at("n_initial");
    r.n_latest = j.at("n_latest");
    if (j.contains("h_initial")) {
      r.h_initial = j.at("h_initial").get<double>();
      r.h_latest = j.at("h_latest").get<double>();
      r.delta_h = j.at("delta_h").get<double>();
      r.jsd = j.at("jsd").get<double>();
      r.rarefied_delta_k = j.at("rarefied_delta_k").get<double>();
    }
    r.k_initial = j.at("k_initial");
    r.k_latest = j.at("k_latest");
    r.delta_k = j.at("delta_k");
    r.eligible_h_jsd = j.at("eligible_h_jsd");
    r.eligible_k = j.at("eligible_k");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::optional<metrics::BootstrapCI> aggregate(
    const std::vector<double>& values, const RunConfig& config,
    const std::string& feature, const std::string& statistic) {
  if (values.empty()) return std::nullopt;
  metrics::BootstrapConfig bc = config.bootstrap;
  std::string salt = feature + "/" + statistic;
  bc.seed = mix_seed(config.seed, fnv1a(salt.data(), salt.size()));
  return metrics::bootstrap_mean_ci(values, bc);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

ReportBundle stage_report(const RunConfig& config, const std::string& in_dir) {
  const std::string input = in_dir_or(config, in_dir);
  ensure_dir(config.out_dir);
  std::vector<MetricsRow> rows = read_metric_rows(input);

  ReportBundle bundle;
  char header[256];
  std::snprintf(header, sizeof header,
                "theta=%.3f tau=%ld B=%ld alpha=%g seed=%llu encoder=%s",
                config.theta, config.tau, config.bootstrap.replicates,
                config.bootstrap.alpha,
                static_cast<unsigned long long>(config.seed),
                config.import_vectors.empty() ? "default-lexical" : "imported");
  bundle.header = header;

  for (const std::string& feature : feature_order()) {
    std::vector<double> h_init, h_latest, delta_h, jsd_values;
    std::vector<double> k_init, k_latest, delta_k, rarefied;
    for (const MetricsRow& r : rows) {
      if (r.feature != feature) continue;
      if (r.eligible_h_jsd && r.delta_h) {
        h_init.push_back(*r.h_initial);
        h_latest.push_back(*r.h_latest);
        delta_h.push_back(*r.delta_h);
        jsd_values.push_back(*r.jsd);
      }
      if (r.eligible_k) {
        k_init.push_back(static_cast<double>(r.k_initial));
        k_latest.push_back(static_cast<double>(r.k_latest));
        delta_k.push_back(static_cast<double>(r.delta_k));
        if (r.rarefied_delta_k) rarefied.push_back(*r.rarefied_delta_k);
      }
    }
    auto push = [&](const std::string& stat, const std::vector<double>& v) {
      AggregateRow row;
      row.feature = feature;
      row.statistic = stat;
      row.n = static_cast<long>(v.size());
      row.ci = aggregate(v, config, feature, stat);
      bundle.rows.push_back(std::move(row));
    };
    push("h_initial", h_init);
    push("h_latest", h_latest);
    push("delta_h", delta_h);
    push("jsd", jsd_values);
    push("k_initial", k_init);
    push("k_latest", k_latest);
    push("delta_k", delta_k);
    push("rarefied_delta_k", rarefied);
  }

  EmittedTables tables = emit_tables(bundle);
  write_file(config.out_dir + "/aggregates.csv", tables.csv);
  write_file(config.out_dir + "/tables.txt", tables.text);

  // distribution exports: per-repo latest composition and richness columns
  std::map<std::pair<std::string, std::string>, std::map<int, std::string>>
      labels;
  std::error_code label_ec;
  if (fs::exists(input + "/cluster_labels.jsonl", label_ec)) {
    for (const json& j : read_jsonl(input + "/cluster_labels.jsonl",
                                    "report")) {
      labels[{j.at("repo_id"), j.at("feature")}][j.at("cluster_id")] =
          j.at("label");
    }
  }
  auto label_of = [&](const std::string& repo, const std::string& feature,
                      int cluster) -> std::string {
    if (feature == "deontic")
      return ig::deontic_name(static_cast<ig::Deontic>(cluster));
    if (feature == "deontic_polarity")
      return ig::polarity_name(static_cast<ig::Polarity>(cluster));
    auto it = labels.find({repo, feature});
    if (it != labels.end()) {
      auto cit = it->second.find(cluster);
      if (cit != it->second.end()) return cit->second;
    }
    return "cluster-" + std::to_string(cluster);
  };

  std::map<std::pair<std::string, std::string>, bool> eligible_k;
  for (const MetricsRow& r : rows)
    eligible_k[{r.repo_id, r.feature}] = r.eligible_k;

  std::vector<std::string> comp_lines = {
      "feature,repo_id,cluster_id,label,count,share"};
  for (const json& j : read_jsonl(input + "/distributions.jsonl", "report")) {
    if (j.at("snapshot") != "latest") continue;
    const std::string repo = j.at("repo_id");
    const std::string feature = j.at("feature");
    long n = j.at("n");
    if (n == 0) continue;
    for (const auto& [key, count] : j.at("counts").items()) {
      long c = count.get<long>();
      if (c == 0) continue;
      int cluster = std::stoi(key);
      double share = static_cast<double>(c) / static_cast<double>(n);
      comp_lines.push_back(feature + "," + repo + "," + key + "," +
                           csv_escape(label_of(repo, feature, cluster)) + "," +
                           std::to_string(c) + "," + format_full(share));
    }
  }
  write_lines(config.out_dir + "/composition_latest.csv", comp_lines);

  std::vector<std::string> richness_lines = {"feature,snapshot,repo_id,k"};
  std::vector<std::string> exclusion_lines = {"repo_id,feature,metric,reason"};
  for (const MetricsRow& r : rows) {
    if (r.eligible_k) {
      richness_lines.push_back(r.feature + ",initial," + r.repo_id + "," +
                               std::to_string(r.k_initial));
      richness_lines.push_back(r.feature + ",latest," + r.repo_id + "," +
                               std::to_string(r.k_latest));
    } else {
      exclusion_lines.push_back(r.repo_id + "," + r.feature +
                                ",richness,empty-snapshot");
    }
    if (!r.eligible_h_jsd) {
      exclusion_lines.push_back(r.repo_id + "," + r.feature +
                                ",entropy-jsd,fewer-than-5-statements");
    }
  }
  write_lines(config.out_dir + "/richness_by_snapshot.csv", richness_lines);
  write_lines(config.out_dir + "/exclusions.csv", exclusion_lines);

  // run manifest: enough to reproduce the run exactly
  json manifest;
  manifest["tool_version"] = kToolVersion;
  manifest["config_hash"] =
      std::to_string(config.config_hash());
  manifest["seed"] = config.seed;
  manifest["theta"] = config.theta;
  manifest["tau"] = config.tau;
  manifest["bootstrap_b"] = config.bootstrap.replicates;
  manifest["alpha"] = config.bootstrap.alpha;
  manifest["rarefaction_cap"] = config.rarefaction.cap;
  manifest["rarefaction_repeats"] = config.rarefaction.repeats;
  manifest["generated_at_unix"] =
      static_cast<long>(std::time(nullptr));
  json files = json::object();
  for (const auto& [name, path] :
       std::vector<std::pair<std::string, std::string>>{
           {"patterns", config.patterns_path},
           {"roles", config.roles_path},
           {"deontics", config.deontics_path},
           {"polarity", config.polarity_path},
           {"typology", config.typology_path}}) {
    if (path.empty()) {
      files[name] = "embedded-default";
    } else {
      std::string content = read_file(path);
      files[name] =
          path + "#" + std::to_string(fnv1a(content.data(), content.size()));
    }
  }
  manifest["config_files"] = files;
  manifest["config"] = json::parse(config.to_canonical_json());
  write_file(config.out_dir + "/run_manifest.json", manifest.dump(2) + "\n");
  return bundle;
}

ReportBundle run_all(const RunConfig& config) {
  stage_mine(config);
  stage_normalize(config);
  stage_parse(config);
  stage_cluster(config);
  stage_metrics(config);
  return stage_report(config);
}

}  // namespace govmine::report

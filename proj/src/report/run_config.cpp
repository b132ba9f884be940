#include "govmine/report/run_config.hpp"

#include <filesystem>

#include "govmine/common/config_file.hpp"
#include "govmine/common/error.hpp"
#include "govmine/common/rng.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace govmine::report {

RunConfig RunConfig::from_json_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  RunConfig c;
  try {
    c.manifest = j.value("manifest", "");
    c.out_dir = j.value("out_dir", "out");
    c.patterns_path = j.value("patterns", "");
    c.roles_path = j.value("roles", "");
    c.deontics_path = j.value("deontics", "");
    c.polarity_path = j.value("polarity", "");
    c.typology_path = j.value("typology", "");
    c.badges_path = j.value("badges", "");
    c.abbreviations_path = j.value("abbreviations", "");
    c.verbs_path = j.value("verbs", "");
    c.theta = j.value("theta", 0.5);
    c.tau = j.value("tau", 2L);
    c.seed = j.value("seed", std::uint64_t{0});
    c.resolve_pronouns = j.value("resolve_pronouns", true);
    if (j.contains("rarefaction")) {
      const json& r = j["rarefaction"];
      c.rarefaction.cap = r.value("cap", 100L);
      c.rarefaction.repeats = r.value("repeats", 200L);
      c.rarefaction.with_replacement = r.value("with_replacement", false);
    }
    if (j.contains("bootstrap")) {
      const json& b = j["bootstrap"];
      c.bootstrap.replicates = b.value("replicates", 10000L);
      c.bootstrap.alpha = b.value("alpha", 0.05);
    }
    if (j.contains("import")) {
      const json& i = j["import"];
      c.import_statements = i.value("statements", "");
      c.import_vectors = i.value("vectors", "");
      c.import_clusters = i.value("clusters", "");
    }
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return c;
}

std::string RunConfig::to_canonical_json() const {
  json j;
  j["manifest"] = manifest;
  j["out_dir"] = out_dir;
  j["patterns"] = patterns_path;
  j["roles"] = roles_path;
  j["deontics"] = deontics_path;
  j["polarity"] = polarity_path;
  j["typology"] = typology_path;
  j["badges"] = badges_path;
  j["abbreviations"] = abbreviations_path;
  j["verbs"] = verbs_path;
  j["theta"] = theta;
  j["tau"] = tau;
  j["seed"] = seed;
  j["resolve_pronouns"] = resolve_pronouns;
  j["rarefaction"] = {{"cap", rarefaction.cap},
                      {"repeats", rarefaction.repeats},
                      {"with_replacement", rarefaction.with_replacement}};
  j["bootstrap"] = {{"replicates", bootstrap.replicates},
                    {"alpha", bootstrap.alpha}};
  j["import"] = {{"statements", import_statements},
                 {"vectors", import_vectors},
                 {"clusters", import_clusters}};
  return j.dump();
}

std::uint64_t RunConfig::config_hash() const {
  std::string canon = to_canonical_json();
  return fnv1a(canon.data(), canon.size());
}

void RunConfig::validate() const {
  if (manifest.empty())
    throw ConfigError("config: manifest is required");
  if (!fs::exists(manifest))
    throw ConfigError("config: manifest does not exist: " + manifest);
  for (const std::string* p :
       {&patterns_path, &roles_path, &deontics_path, &polarity_path,
        &typology_path, &badges_path, &abbreviations_path, &verbs_path,
        &import_statements, &import_vectors, &import_clusters}) {
    if (!p->empty() && !fs::exists(*p))
      throw ConfigError("config: referenced file does not exist: " + *p);
  }
  if (out_dir.empty()) throw ConfigError("config: out_dir is required");
  if (!(theta > 0.0 && theta <= 2.0))
    throw ConfigError("config: theta must lie in (0, 2]");
  if (tau < 1) throw ConfigError("config: tau must be >= 1");
  if (rarefaction.cap < 1 || rarefaction.repeats < 1)
    throw ConfigError("config: rarefaction cap and repeats must be >= 1");
  if (bootstrap.replicates < 1)
    throw ConfigError("config: bootstrap replicates must be >= 1");
  if (!(bootstrap.alpha > 0.0 && bootstrap.alpha < 1.0))
    throw ConfigError("config: bootstrap alpha must lie in (0, 1)");
}

}  // namespace govmine::report

// Copyright 2026 The eamt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eamt/cli.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "eamt/backends.h"
#include "eamt/datamodel.h"
#include "eamt/digest.h"
#include "eamt/error.h"
#include "eamt/lexicon.h"
#include "eamt/manifest.h"
#include "eamt/metrics.h"
#include "eamt/prompting.h"
#include "eamt/reporting.h"
#include "eamt/scorer_client.h"
#include "eamt/wikidata_client.h"
#include "json.hpp"

#ifndef EAMT_VERSION_STRING
#define EAMT_VERSION_STRING "dev"
#endif

namespace eamt::cli {
namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

constexpr char kEnvPrefix[] = "EAMT_";
constexpr char kConfigEnv[] = "EAMT_CONFIG";

// Shared state of one invocation.
struct Context {
  std::ostream& out;
  std::ostream& err;
  CLI::App* command = nullptr;
  std::vector<fs::path> inputs;

  void AddInput(const fs::path& p) {
    if (!p.empty()) inputs.push_back(p);
  }

  // Writes `bytes` to `path` (stdout when empty) and, for files, the
  // adjacent run manifest.
  void Emit(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
      out << bytes;
      return;
    }
    WriteBytes(path, bytes);
    RunManifest m;
    m.command = command->get_name();
    m.config_digest = Sha256Hex(command->config_to_str(true, false));
    for (const fs::path& in : inputs) {
      std::error_code ec;
      if (fs::is_regular_file(in, ec)) {
        m.input_digests[in.string()] = Sha256FileHex(in);
      } else if (fs::is_directory(in, ec)) {
        std::string combined;
        std::vector<fs::path> files;
        for (const auto& e : fs::recursive_directory_iterator(in)) {
          if (e.is_regular_file()) files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        for (const fs::path& f : files) {
          combined += fs::relative(f, in).string() + " " + Sha256FileHex(f) + "\n";
        }
        m.input_digests[in.string()] = Sha256Hex(combined);
      }
    }
    m.output_digest = Sha256Hex(bytes);
    m.tool_version = EAMT_VERSION_STRING;
    m.timestamp = ManifestTimestamp();
    WriteBytes(ManifestPathFor(path), SerializeManifest(m));
  }

  static void WriteBytes(const fs::path& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    f << bytes;
    if (!f) throw Error(ErrorCode::kIo, "short write to " + path.string());
  }
};

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::string> DefaultLocales() {
  return {kTaskLocales.begin(), kTaskLocales.end()};
}

TableFormat ParseTableFormat(const std::string& name) {
  if (name == "markdown" || name == "md") return TableFormat::kMarkdown;
  if (name == "csv") return TableFormat::kCsv;
  throw CLI::ValidationError("--format", "expected markdown or csv, got '" + name + "'");
}

SplitKind RequireSplitKind(const std::string& name) {
  auto kind = ParseSplitKind(name);
  if (!kind) throw CLI::ValidationError("--kind", "expected train, validation or test");
  return *kind;
}

// Option names eligible for environment/config lookup: EAMT_<NAME> with
// dashes as underscores, e.g. --token-env -> EAMT_TOKEN_ENV.
std::string EnvName(const std::string& long_name) {
  std::string out = kEnvPrefix;
  for (char c : long_name) out += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return out;
}

CLI::Option* Configurable(CLI::Option* opt) {
  for (const std::string& name : opt->get_lnames()) opt->envname(EnvName(name));
  return opt;
}

// key = value lines; '#' and ';' start comments; [section] headers are
// ignored; quotes around values are stripped.
std::map<std::string, std::string> ReadConfigFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#' || line[first] == ';' ||
        line[first] == '[') {
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig,
                  path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = line.substr(first, eq - first);
    std::string value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    value.erase(value.find_last_not_of(" \t") + 1);
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    std::replace(key.begin(), key.end(), '_', '-');
    kv[key] = value;
  }
  return kv;
}

// True if any subcommand of `app` has the long option --<key>. One config
// file may serve every subcommand.
bool IsKnownKey(const CLI::App& app, const std::string& key) {
  for (const CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    if (sub->get_option_no_throw("--" + key) != nullptr) return true;
  }
  return false;
}

// Fills options that neither the command line nor the environment set.
void ApplyConfig(const CLI::App& app, CLI::App& sub,
                 const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (!IsKnownKey(app, key)) {
      throw CLI::ConfigError("unknown config key '" + key + "'");
    }
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr || opt->count() > 0) continue;
    if (opt->get_expected_max() > 1 || opt->get_items_expected_max() > 1) {
      for (const std::string& v : SplitList(value)) opt->add_result(v);
    } else {
      opt->add_result(value);
    }
    opt->run_callback();
  }
}

// ---------------------------------------------------------------- commands

struct ValidateArgs {
  std::string path;
  std::string kind = "validation";
};

int RunValidate(Context& ctx, const ValidateArgs& a) {
  const SplitKind kind = RequireSplitKind(a.kind);
  std::vector<Instance> instances = LoadSplit(a.path, kind);
  std::map<std::string, size_t> by_locale;
  size_t entities = 0;
  for (const Instance& i : instances) {
    ++by_locale[i.target_locale];
    entities += i.entity_ids.size();
  }
  ctx.out << a.path << ": " << instances.size() << " instances (" << SplitKindName(kind) << ", "
          << entities << " entity ids)\n";
  for (const auto& [loc, n] : by_locale) ctx.out << "  " << loc << ": " << n << "\n";
  return kExitOk;
}

struct StatsArgs {
  std::string data_dir;
  std::vector<std::string> splits;
  std::string locales;
  std::string format = "markdown";
  std::string output;
  std::string mentions;
  std::string lexicon;
  std::string languages;
};

int RunStats(Context& ctx, const StatsArgs& a) {
  const TableFormat format = ParseTableFormat(a.format);
  if (!a.mentions.empty()) {
    if (a.lexicon.empty()) throw CLI::ValidationError("--lexicon", "required with --mentions");
    ctx.AddInput(a.mentions);
    ctx.AddInput(a.lexicon);
    const auto mentions = LoadMentions(a.mentions);
    const EntityLexicon lexicon = LoadLexicon(a.lexicon);
    const auto langs = a.languages.empty() ? DefaultLocales() : SplitList(a.languages);
    ctx.Emit(a.output, RenderEntityTypeStats(ComputeEntityTypeStats(mentions, lexicon, langs), format));
    return kExitOk;
  }
  if (a.data_dir.empty() && a.splits.empty()) {
    throw CLI::ValidationError("stats", "give --data-dir, --split, or --mentions");
  }
  std::map<std::string, LocaleSplits> splits;
  auto add = [&](SplitKind kind, const std::string& locale, const fs::path& path) {
    ctx.AddInput(path);
    std::vector<Instance> loaded = LoadSplit(path, kind);
    LocaleSplits& s = splits[locale];
    auto& dst = kind == SplitKind::kTrain ? s.train
                : kind == SplitKind::kValidation ? s.validation : s.test;
    dst.insert(dst.end(), std::make_move_iterator(loaded.begin()),
               std::make_move_iterator(loaded.end()));
  };
  if (!a.data_dir.empty()) {
    const auto locales = a.locales.empty() ? DefaultLocales() : SplitList(a.locales);
    for (const std::string& loc : locales) {
      splits[loc];
      for (SplitKind kind : {SplitKind::kTrain, SplitKind::kValidation, SplitKind::kTest}) {
        fs::path p = fs::path(a.data_dir) / std::string(SplitKindName(kind)) / (loc + ".jsonl");
        if (fs::exists(p)) add(kind, loc, p);
      }
    }
  }
  for (const std::string& spec : a.splits) {
    // kind:locale:path
    size_t c1 = spec.find(':');
    size_t c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
    if (c2 == std::string::npos) {
      throw CLI::ValidationError("--split", "expected kind:locale:path, got '" + spec + "'");
    }
    add(RequireSplitKind(spec.substr(0, c1)), spec.substr(c1 + 1, c2 - c1 - 1), spec.substr(c2 + 1));
  }
  ctx.Emit(a.output, RenderSplitStats(ComputeSplitStats(splits), format));
  return kExitOk;
}

struct HarvestArgs {
  std::vector<std::string> datasets;
  std::string qids_file;
  std::string mentions;
  std::string languages;
  std::string endpoint = kDefaultWikidataEndpoint;
  double rate_limit = 5.0;
  size_t batch_size = kMaxIdsPerRequest;
  size_t in_flight = 4;
  int retries = 3;
  double timeout_s = 30;
  std::string fixture_dir;
  bool labels_only = false;
  std::string output;
};

int RunHarvest(Context& ctx, const HarvestArgs& a) {
  std::vector<std::string> qids;
  for (const std::string& d : a.datasets) {
    ctx.AddInput(d);
    for (const Instance& i : LoadSplit(d, SplitKind::kTest)) {
      qids.insert(qids.end(), i.entity_ids.begin(), i.entity_ids.end());
    }
  }
  if (!a.qids_file.empty()) {
    ctx.AddInput(a.qids_file);
    std::ifstream in(a.qids_file);
    if (!in) throw Error(ErrorCode::kIo, "cannot open " + a.qids_file);
    std::string line;
    while (std::getline(in, line)) {
      line.erase(line.find_last_not_of(" \t\r") + 1);
      if (!line.empty() && line[0] != '#') qids.push_back(line);
    }
  }
  if (!a.mentions.empty()) {
    ctx.AddInput(a.mentions);
    for (const EntityMention& m : LoadMentions(a.mentions)) qids.push_back(m.qid);
  }
  if (a.batch_size < 1 || a.batch_size > kMaxIdsPerRequest) {
    throw CLI::ValidationError("--batch-size", "must be within [1, 50]");
  }
  std::vector<std::string> langs = a.languages.empty() ? DefaultLocales() : SplitList(a.languages);
  if (a.languages.empty()) langs.push_back("en");

  std::unique_ptr<WikidataTransport> transport;
  if (!a.fixture_dir.empty()) {
    ctx.AddInput(a.fixture_dir);
    transport = std::make_unique<FixtureWikidataTransport>(a.fixture_dir);
  } else {
    WikidataClientConfig cfg;
    cfg.endpoint = a.endpoint;
    cfg.requests_per_second = a.rate_limit;
    cfg.timeout = std::chrono::milliseconds(static_cast<int64_t>(a.timeout_s * 1000));
    cfg.retry.max_retries = a.retries;
    transport = std::make_unique<HttpWikidataTransport>(cfg);
  }
  HarvestOptions opts;
  opts.batch_size = a.batch_size;
  opts.max_in_flight = a.in_flight;
  opts.include_aliases = !a.labels_only;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch) {
    opts.clock = [] { return ManifestTimestamp(); };
  }
  HarvestResult r = Harvest(qids, langs, *transport, opts);
  ctx.Emit(a.output, SerializeLexicon(r.lexicon));
  ctx.err << "harvested " << r.lexicon.size() << " entities in " << r.requests << " requests\n";
  if (!r.complete()) {
    ctx.err << "error: " << r.unfetched.size() << " QIDs could not be fetched:";
    for (const std::string& q : r.unfetched) ctx.err << ' ' << q;
    ctx.err << "\n";
    for (const std::string& e : r.errors) ctx.err << "  " << e << "\n";
    return kExitOperational;
  }
  return kExitOk;
}

struct RenderArgs {
  std::string dataset;
  std::string kind = "test";
  std::string template_name = "t2";
  std::string train;
  size_t k = kMaxExamples;
  uint64_t seed = 0;
  std::string selection = "sample";
  std::string lexicon;
  std::string ne_mode = "qid";
  std::string output;
};

int RunRenderPrompts(Context& ctx, const RenderArgs& a) {
  auto tmpl = ParsePromptTemplate(a.template_name);
  if (!tmpl) throw CLI::ValidationError("--template", "expected t1 or t2");
  auto mode = ParseHintMode(a.ne_mode);
  if (!mode) throw CLI::ValidationError("--ne-mode", "expected qid or translated_name");
  if (a.selection != "sample" && a.selection != "first-k") {
    throw CLI::ValidationError("--selection", "expected sample or first-k");
  }
  if (a.k > kMaxExamples) throw CLI::ValidationError("--k", "at most 10 examples");
  ctx.AddInput(a.dataset);
  std::vector<Instance> instances = LoadSplit(a.dataset, RequireSplitKind(a.kind));
  std::vector<Instance> train;
  if (!a.train.empty()) {
    ctx.AddInput(a.train);
    train = LoadSplit(a.train, SplitKind::kTrain);
  }
  EntityLexicon lexicon;
  if (!a.lexicon.empty()) {
    ctx.AddInput(a.lexicon);
    lexicon = LoadLexicon(a.lexicon);
  }
  const ExampleSelection selection =
      a.selection == "first-k" ? ExampleSelection::kFirstK : ExampleSelection::kSeededSample;

  std::map<std::string, std::vector<ExamplePair>> examples_by_locale;
  std::string bytes;
  for (const Instance& inst : instances) {
    PromptSpec spec;
    spec.template_id = *tmpl;
    spec.sentence = inst.source_text;
    auto name = LanguageName(inst.target_locale);
    spec.target_language_name = name ? *name : inst.target_locale;
    if (*tmpl == PromptTemplate::kFewShotWithEntities) {
      auto it = examples_by_locale.find(inst.target_locale);
      if (it == examples_by_locale.end()) {
        it = examples_by_locale
                 .emplace(inst.target_locale,
                          SelectExamples(train, inst.target_locale, a.k, a.seed, selection))
                 .first;
      }
      spec.examples = it->second;
      spec.ne_hints = BuildNeHints(inst, lexicon, *mode);
    }
    RenderedPrompt rendered = Render(spec);
    nlohmann::ordered_json line;
    line["id"] = inst.id;
    line["prompt"] = rendered.text;
    bytes += line.dump() + "\n";
  }
  ctx.Emit(a.output, bytes);
  return kExitOk;
}

struct TranslateArgs {
  std::string prompts;
  std::string dataset;
  std::string kind = "test";
  std::string backend = "stub_echo";
  std::string endpoint;
  std::string model;
  std::string token_env = "EAMT_API_TOKEN";
  double temperature = 0.0;
  size_t concurrency = 4;
  int retries = 3;
  double timeout_s = 60;
  std::string replay;
  std::string fixed_text;
  std::string output;
};

int RunTranslate(Context& ctx, const TranslateArgs& a) {
  if (a.prompts.empty() == a.dataset.empty()) {
    throw CLI::ValidationError("translate", "give exactly one of --prompts or --dataset");
  }
  auto kind = ParseBackendKind(a.backend);
  if (!kind) {
    throw CLI::ValidationError("--backend", "expected http_chat, replay_file, stub_echo or stub_fixed");
  }
  BackendConfig cfg;
  cfg.kind = *kind;
  cfg.endpoint = a.endpoint;
  cfg.model = a.model;
  cfg.token_env = a.token_env;
  cfg.temperature = a.temperature;
  cfg.max_in_flight = a.concurrency;
  cfg.retry.max_retries = a.retries;
  cfg.timeout = std::chrono::milliseconds(static_cast<int64_t>(a.timeout_s * 1000));
  cfg.replay_file = a.replay;
  cfg.fixed_text = a.fixed_text;
  std::unique_ptr<TranslationBackend> backend = MakeBackend(cfg);
  ctx.AddInput(a.replay);

  std::vector<PromptItem> items;
  if (!a.prompts.empty()) {
    ctx.AddInput(a.prompts);
    std::ifstream in(a.prompts);
    if (!in) throw Error(ErrorCode::kIo, "cannot open " + a.prompts);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        Json j = Json::parse(line);
        items.push_back({j.at("id").get<std::string>(), j.at("prompt").get<std::string>()});
      } catch (const Json::exception& e) {
        throw Error(ErrorCode::kParse,
                    a.prompts + ":" + std::to_string(line_no) + ": bad prompt line: " + e.what());
      }
    }
  } else {
    ctx.AddInput(a.dataset);
    for (const Instance& inst : LoadSplit(a.dataset, RequireSplitKind(a.kind))) {
      items.push_back({inst.id, inst.source_text});
    }
  }
  std::vector<Prediction> preds = RunBatch(items, *backend, cfg.max_in_flight);
  std::string bytes;
  size_t failed = 0;
  for (const Prediction& p : preds) {
    bytes += SerializePrediction(p) + "\n";
    failed += p.failed ? 1 : 0;
  }
  ctx.Emit(a.output, bytes);
  ctx.err << "translated " << preds.size() << " items with " << backend->id() << " (" << failed
          << " failed)\n";
  return kExitOk;
}

struct ScoreArgs {
  std::string predictions;
  std::string dataset;
  std::string kind = "validation";
  std::string lexicon;
  std::string policy = "aliases,untranslated";
  std::string scorer = "chrf";
  std::string method = "system";
  std::string output;
  std::string match_log;
};

int RunScore(Context& ctx, const ScoreArgs& a) {
  const MatchPolicy policy = ParseMatchPolicy(a.policy);
  std::optional<ScorerEndpoint> endpoint;
  if (a.scorer != "chrf") endpoint = ScorerEndpoint::Parse(a.scorer);

  ctx.AddInput(a.predictions);
  ctx.AddInput(a.dataset);
  const std::vector<Prediction> preds = LoadPredictions(a.predictions);
  const std::vector<Instance> instances = LoadSplit(a.dataset, RequireSplitKind(a.kind));
  EntityLexicon lexicon;
  if (!a.lexicon.empty()) {
    ctx.AddInput(a.lexicon);
    lexicon = LoadLexicon(a.lexicon);
  }

  std::map<std::string, std::vector<Instance>> by_locale;
  for (const Instance& i : instances) by_locale[i.target_locale].push_back(i);

  // External quality: one scorer session for the whole run.
  std::map<std::string, double> external;
  std::string quality_id = "chrf";
  if (endpoint) {
    std::map<std::string_view, const Prediction*> pred_by_id;
    for (const Prediction& p : preds) pred_by_id[p.instance_id] = &p;
    std::vector<ScoreRequest> batch;
    for (const Instance& i : instances) {
      auto it = pred_by_id.find(i.id);
      if (i.gold_targets.empty() || it == pred_by_id.end() || it->second->failed) continue;
      batch.push_back({i.id, i.source_text, it->second->hypothesis, i.gold_targets.front().translation});
    }
    ExternalScores scores = ExternalScore(batch, *endpoint);
    quality_id = scores.handshake.metric.empty() ? "external" : scores.handshake.metric;
    size_t errors = 0;
    for (const auto& [id, s] : scores.scores) {
      if (s.ok()) {
        external[id] = *s.score;
      } else {
        ctx.err << "scorer: " << id << ": " << s.error << "\n";
        ++errors;
      }
    }
    if (errors > 0) {
      throw Error(ErrorCode::kProtocol, std::to_string(errors) + " items could not be scored");
    }
  }

  std::string triples;
  std::vector<EntityMatch> log;
  for (const auto& [locale, group] : by_locale) {
    MetaResult meta = ComputeMeta(preds, group, lexicon, policy);
    double quality;
    if (endpoint) {
      double sum = 0.0;
      int64_t n = 0;
      for (const Instance& i : group) {
        if (i.gold_targets.empty()) continue;
        auto it = external.find(i.id);
        sum += it == external.end() ? 0.0 : it->second;  // failed predictions score 0
        ++n;
      }
      if (n == 0) throw Error(ErrorCode::kScoring, "quality is undefined: no labelled instances");
      quality = sum / static_cast<double>(n);
    } else {
      quality = CorpusChrf(preds, group);
    }
    MethodResult r{a.method, locale,
                   MakeScoreTriple(meta.score, quality, meta.n_instances, meta.n_entities, quality_id)};
    triples += SerializeMethodResult(r, policy.Describe()) + "\n";
    log.insert(log.end(), meta.log.begin(), meta.log.end());
    ctx.err << a.method << "/" << locale << ": M-ETA " << FormatPercent(r.triple.m_eta) << ", "
            << QualityLabel(quality_id) << " " << FormatPercent(r.triple.quality) << ", Overall "
            << FormatPercent(r.triple.overall) << "\n";
  }
  if (!a.match_log.empty()) Context::WriteBytes(a.match_log, RenderMatchLog(log));
  ctx.Emit(a.output, triples);
  return kExitOk;
}

struct ReportArgs {
  std::vector<std::string> triples;
  std::string method_order;
  std::string format = "markdown";
  std::string output;
};

int RunReport(Context& ctx, const ReportArgs& a) {
  auto format = ParseReportFormat(a.format);
  if (!format) throw CLI::ValidationError("--format", "expected markdown, csv or json");
  std::vector<MethodResult> results;
  for (const std::string& path : a.triples) {
    ctx.AddInput(path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto parsed = ParseMethodResults(ss.str(), path);
    results.insert(results.end(), parsed.begin(), parsed.end());
  }
  const std::vector<std::string> order = SplitList(a.method_order);
  ctx.Emit(a.output, RenderReport(BuildReport(results, order), *format));
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entity-aware MT toolkit: data validation, entity harvesting, prompting, "
               "translation dispatch, scoring and reporting.",
               "eamt"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", EAMT_VERSION_STRING);
  std::string config_path;
  app.add_option("--config", config_path, "key = value config file (flags > env > file)")
      ->envname(kConfigEnv);

  Context ctx{out, err, nullptr, {}};
  std::function<int()> action;

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate-data", "Load and validate a JSONL split");
  validate->add_option("path", va.path, "JSONL split file")->required();
  Configurable(validate->add_option("--kind", va.kind, "train | validation | test")->capture_default_str());
  validate->callback([&] { action = [&] { return RunValidate(ctx, va); }; });

  StatsArgs sa;
  auto* stats = app.add_subcommand("stats", "Split statistics or entity-type statistics");
  stats->add_option("--data-dir", sa.data_dir, "Directory with {train,validation,test}/<locale>.jsonl");
  stats->add_option("--split", sa.splits, "kind:locale:path (repeatable)");
  Configurable(stats->add_option("--locales", sa.locales, "Comma-separated locales"));
  Configurable(stats->add_option("--format", sa.format, "markdown | csv")->capture_default_str());
  stats->add_option("-o,--output", sa.output, "Output file (default stdout)");
  stats->add_option("--mentions", sa.mentions, "QID<TAB>TYPE file: emit the entity-type table");
  stats->add_option("--lexicon", sa.lexicon, "Lexicon file for --mentions");
  Configurable(stats->add_option("--languages", sa.languages, "Languages for --mentions"));
  stats->callback([&] { action = [&] { return RunStats(ctx, sa); }; });

  HarvestArgs ha;
  auto* harvest = app.add_subcommand("harvest", "Fetch entity labels/aliases from Wikidata");
  harvest->add_option("--dataset", ha.datasets, "JSONL split(s) whose entity ids to harvest");
  harvest->add_option("--qids", ha.qids_file, "File with one QID per line");
  harvest->add_option("--mentions", ha.mentions, "QID<TAB>TYPE file");
  Configurable(harvest->add_option("--languages", ha.languages, "Comma-separated language codes"));
  Configurable(harvest->add_option("--endpoint", ha.endpoint, "wbgetentities endpoint")->capture_default_str());
  Configurable(harvest->add_option("--rate-limit", ha.rate_limit, "Requests per second")->capture_default_str());
  Configurable(harvest->add_option("--batch-size", ha.batch_size, "IDs per request (<= 50)")->capture_default_str());
  Configurable(harvest->add_option("--in-flight", ha.in_flight, "Concurrent requests")->capture_default_str());
  Configurable(harvest->add_option("--retries", ha.retries, "Retries per request")->capture_default_str());
  Configurable(harvest->add_option("--timeout", ha.timeout_s, "Request timeout, seconds")->capture_default_str());
  Configurable(harvest->add_option("--fixture-dir", ha.fixture_dir, "Offline mode: canned responses"));
  Configurable(harvest->add_flag("--labels-only", ha.labels_only, "Skip aliases"));
  harvest->add_option("-o,--output", ha.output, "Lexicon file")->required();
  harvest->callback([&] { action = [&] { return RunHarvest(ctx, ha); }; });

  RenderArgs ra;
  auto* render = app.add_subcommand("render-prompts", "Render prompts as JSONL {id, prompt}");
  render->add_option("--dataset", ra.dataset, "JSONL split")->required();
  Configurable(render->add_option("--kind", ra.kind, "Split kind of --dataset")->capture_default_str());
  Configurable(render->add_option("--template", ra.template_name, "t1 (few-shot + entities) | t2 (zero-shot)")->capture_default_str());
  Configurable(render->add_option("--train", ra.train, "Training split for examples"));
  Configurable(render->add_option("--k", ra.k, "Examples per prompt (<= 10)")->capture_default_str());
  Configurable(render->add_option("--seed", ra.seed, "Example sampling seed")->capture_default_str());
  Configurable(render->add_option("--selection", ra.selection, "sample | first-k")->capture_default_str());
  Configurable(render->add_option("--lexicon", ra.lexicon, "Lexicon for entity hints"));
  Configurable(render->add_option("--ne-mode", ra.ne_mode, "qid | translated_name")->capture_default_str());
  render->add_option("-o,--output", ra.output, "Output file (default stdout)");
  render->callback([&] { action = [&] { return RunRenderPrompts(ctx, ra); }; });

  TranslateArgs ta;
  auto* translate = app.add_subcommand("translate", "Dispatch prompts to a translation backend");
  translate->add_option("--prompts", ta.prompts, "JSONL {id, prompt}");
  translate->add_option("--dataset", ta.dataset, "JSONL split; sends raw source sentences");
  Configurable(translate->add_option("--kind", ta.kind, "Split kind of --dataset")->capture_default_str());
  Configurable(translate->add_option("--backend", ta.backend, "http_chat | replay_file | stub_echo | stub_fixed")->capture_default_str());
  Configurable(translate->add_option("--endpoint", ta.endpoint, "Chat endpoint URL"));
  Configurable(translate->add_option("--model", ta.model, "Model identifier"));
  Configurable(translate->add_option("--token-env", ta.token_env, "Env var holding the API token")->capture_default_str());
  Configurable(translate->add_option("--temperature", ta.temperature, "Sampling temperature")->capture_default_str());
  Configurable(translate->add_option("--concurrency", ta.concurrency, "Max in-flight requests")->capture_default_str());
  Configurable(translate->add_option("--retries", ta.retries, "Retries per item")->capture_default_str());
  Configurable(translate->add_option("--timeout", ta.timeout_s, "Request timeout, seconds")->capture_default_str());
  Configurable(translate->add_option("--replay", ta.replay, "Predictions file for replay_file"));
  Configurable(translate->add_option("--fixed-text", ta.fixed_text, "Reply of stub_fixed"));
  translate->add_option("-o,--output", ta.output, "Predictions file (default stdout)");
  translate->callback([&] { action = [&] { return RunTranslate(ctx, ta); }; });

  ScoreArgs sc;
  auto* score = app.add_subcommand("score", "Score predictions: M-ETA, quality, Overall");
  score->add_option("--predictions", sc.predictions, "Predictions JSONL")->required();
  score->add_option("--dataset", sc.dataset, "Labelled JSONL split")->required();
  Configurable(score->add_option("--kind", sc.kind, "Split kind of --dataset")->capture_default_str());
  Configurable(score->add_option("--lexicon", sc.lexicon, "Lexicon for alias matching"));
  Configurable(score->add_option("--policy", sc.policy,
                                 "aliases|no-aliases, untranslated|no-untranslated, per-entity|per-instance")->capture_default_str());
  Configurable(score->add_option("--scorer", sc.scorer, "chrf | cmd:<command> | tcp:<host>:<port>")->capture_default_str());
  Configurable(score->add_option("--method", sc.method, "Method label for the report")->capture_default_str());
  score->add_option("-o,--output", sc.output, "Triples JSONL (default stdout)");
  score->add_option("--match-log", sc.match_log, "Per-entity match log (TSV)");
  score->callback([&] { action = [&] { return RunScore(ctx, sc); }; });

  ReportArgs rp;
  auto* report = app.add_subcommand("report", "Render score triples as a method x locale table");
  report->add_option("--triples", rp.triples, "Triples JSONL file(s)")->required();
  Configurable(report->add_option("--method-order", rp.method_order, "Comma-separated row order"));
  Configurable(report->add_option("--format", rp.format, "markdown | csv | json")->capture_default_str());
  report->add_option("-o,--output", rp.output, "Output file (default stdout)");
  report->callback([&] { action = [&] { return RunReport(ctx, rp); }; });

  if (!args.empty() && !args[0].empty() && args[0][0] != '-' &&
      app.get_subcommand_no_throw(args[0]) == nullptr) {
    err << "error: unknown subcommand '" << args[0] << "'\n\n" << app.help();
    return kExitUsage;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    CLI::App* sub = app.get_subcommands().front();
    ctx.command = sub;
    if (!config_path.empty()) {
      ApplyConfig(app, *sub, ReadConfigFile(config_path));
    }
    return action();
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << "eamt " << EAMT_VERSION_STRING << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return e.code() == ErrorCode::kConfig ? kExitUsage : kExitOperational;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitOperational;
  }
}

}  // namespace eamt::cli

#include "sessioncomm/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "sessioncomm/io.hpp"

namespace fs = std::filesystem;

namespace sessioncomm {

MissingArtifact::MissingArtifact(const fs::path& path)
    : std::runtime_error("missing artifact: " + path.string()), path_(path) {}

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error("invalid config '" + field + "': " + message), field_(std::move(field)) {}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingArtifact(path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

namespace {

std::ifstream open_artifact(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingArtifact(path);
  return in;
}

std::ifstream open_input(const std::string& path, const char* field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(field, "cannot read '" + path + "'");
  return in;
}

std::ofstream create(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("out", "cannot write '" + path.string() + "'");
  return out;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  auto out = create(path);
  out << j.dump(2) << '\n';
}

nlohmann::json read_json(const fs::path& path) {
  auto in = open_artifact(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw io::FormatError(path.string() + ": " + e.what());
  }
}

std::vector<Session> load_sessions(const PipelineConfig& cfg) {
  auto in = open_artifact(cfg.out / artifact::sessions);
  return io::read_sessions_jsonl(in);
}

CommunitySpectrum load_spectrum(const PipelineConfig& cfg) {
  return io::spectrum_from_json(read_json(cfg.out / artifact::spectrum));
}

DistanceMatrix load_distances(const PipelineConfig& cfg) {
  auto in = open_artifact(cfg.out / artifact::distances);
  return io::read_distance_csv(in);
}

// Each stage records the settings it ran with, so the manifest echo is the
// same whether the stages ran one by one or through `pipeline`.
constexpr const char* kSettings = "settings.json";

void record_settings(const PipelineConfig& cfg, const char* stage, nlohmann::json settings, bool reset = false) {
  const fs::path path = cfg.out / kSettings;
  nlohmann::json all = nlohmann::json::object();
  if (!reset && fs::exists(path)) all = read_json(path);
  all[stage] = std::move(settings);
  write_json(path, all);
}

SplitSize parse_split(const std::string& text) {
  try {
    return SplitSize::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("split", e.what());
  }
}

}  // namespace

namespace stages {

void sessionize(const PipelineConfig& cfg, std::ostream& log) {
  if (cfg.input.empty()) throw ConfigError("input", "required");
  if (cfg.threshold <= 0) throw ConfigError("threshold", "must be positive");
  LogFormat format;
  try {
    format = parse_log_format(cfg.format);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("format", e.what());
  }
  auto in = open_input(cfg.input, "input");
  auto parsed = parse_log(in, format, cfg.strict ? ParseMode::strict : ParseMode::lenient);

  auto records = std::move(parsed.records);
  if (!cfg.filter.empty()) {
    auto fin = open_input(cfg.filter, "filter");
    auto allowed = read_allow_list(fin);
    records = filter_records(records, [&](std::string_view o) { return allowed.count(std::string(o)) > 0; });
  }
  auto sessions = sessioncomm::sessionize(records, {cfg.threshold});

  auto out = create(cfg.out / artifact::sessions);
  io::write_sessions_jsonl(out, sessions);
  auto rej = create(cfg.out / artifact::rejects);
  io::write_rejects_csv(rej, parsed.rejects);
  record_settings(cfg, "sessionize",
                  {{"input", cfg.input},
                   {"format", cfg.format},
                   {"strict", cfg.strict},
                   {"threshold", cfg.threshold},
                   {"filter", cfg.filter}},
                  true);
  log << "sessionize: " << records.size() << " records, " << parsed.rejects.size() << " rejected, "
      << sessions.size() << " sessions\n";
}

void graph(const PipelineConfig& cfg, std::ostream& log) {
  if (!(cfg.popular_fraction > 0.0 && cfg.popular_fraction <= 1.0)) {
    throw ConfigError("popular-fraction", "must be in (0, 1]");
  }
  auto sessions = load_sessions(cfg);
  auto g = build_similarity(sessions, {cfg.popular_fraction});
  auto stats = graph_stats(g);
  auto out = create(cfg.out / artifact::edges);
  io::write_edge_list(out, g);
  write_json(cfg.out / artifact::graph_stats, io::to_json(stats));
  record_settings(cfg, "graph", {{"popular_fraction", cfg.popular_fraction}});
  log << "graph: " << stats.nodes << " nodes, " << stats.edges << " edges, " << stats.components
      << " components, " << stats.isolated << " isolated\n";
}

void communities(const PipelineConfig& cfg, std::ostream& log) {
  auto sessions = load_sessions(cfg);
  auto in = open_artifact(cfg.out / artifact::edges);
  auto edges = io::read_edge_list(in);
  if (sessions.empty()) throw ConfigError("input", "no sessions to analyse");
  if (cfg.k == 0 || cfg.k > sessions.size()) {
    throw ConfigError("k", "must be in [1, " + std::to_string(sessions.size()) + "]");
  }
  if (!(cfg.tolerance > 0.0)) throw ConfigError("tolerance", "must be positive");
  if (cfg.max_iterations == 0) throw ConfigError("max-iterations", "must be positive");
  auto g = SessionGraph::from_edges(sessions.size(), edges);

  PowerIterConfig pc{cfg.k, cfg.tolerance, cfg.max_iterations, cfg.seed, false};
  auto spectrum = find_communities(g, pc);
  if (cfg.split_poles) spectrum = split_poles(spectrum);
  write_json(cfg.out / artifact::spectrum, io::to_json(spectrum));
  record_settings(cfg, "communities",
                  {{"k", cfg.k},
                   {"tolerance", cfg.tolerance},
                   {"max_iterations", cfg.max_iterations},
                   {"seed", cfg.seed},
                   {"split_poles", cfg.split_poles}});
  log << "communities: " << spectrum.communities.size() << " communities, eigenvalues";
  for (const auto& c : spectrum.communities) log << ' ' << c.eigenvalue;
  log << '\n';
}

void distances(const PipelineConfig& cfg, std::ostream& log) {
  auto spectrum = load_spectrum(cfg);
  auto labels = community_labels(spectrum);
  std::vector<Ranking> rankings;
  for (std::size_t i = 0; i < spectrum.communities.size(); ++i) {
    rankings.push_back(rank_sessions(spectrum.communities[i]));
    auto out = create(cfg.out / artifact::ranks_dir / ("community_" + labels[i] + ".csv"));
    io::write_rank_table(out, rankings.back());
  }
  if (rankings.size() < 2) throw ConfigError("k", "distances need at least 2 communities");
  auto d = distance_matrix(rankings);
  d.labels = labels;
  auto out = create(cfg.out / artifact::distances);
  io::write_distance_csv(out, d);
  log << "distances: " << d.k << "x" << d.k << " matrix\n";
}

void labels(const PipelineConfig& cfg, std::ostream& log) {
  auto split = parse_split(cfg.split);
  auto sessions = load_sessions(cfg);
  auto spectrum = load_spectrum(cfg);
  if (spectrum.n != sessions.size()) throw io::FormatError("spectrum does not match sessions");

  std::optional<CategoryCatalog> catalog;
  if (!cfg.catalog.empty()) {
    auto in = open_input(cfg.catalog, "catalog");
    catalog = read_catalog(in);
  }
  DocumentFrequency df(sessions);
  auto names = community_labels(spectrum);
  std::vector<io::CategoryReportEntry> entries;
  for (std::size_t i = 0; i < spectrum.communities.size(); ++i) {
    auto ranking = rank_sessions(spectrum.communities[i]);
    MembershipSplit ms;
    try {
      ms = split_membership(ranking, split);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("split", e.what());
    }
    auto scores = score_objects(ms, sessions, df, catalog ? &*catalog : nullptr);
    entries.push_back({names[i], std::move(ms), std::move(scores)});
  }
  const auto unranked = count_unranked_sessions(spectrum);
  write_json(cfg.out / artifact::categories, io::category_report(entries, catalog.has_value(), unranked));
  record_settings(cfg, "labels", {{"split", cfg.split}, {"catalog", cfg.catalog}});
  log << "labels: " << entries.size() << " communities labelled, " << unranked << " sessions unranked\n";
}

void cluster(const PipelineConfig& cfg, std::ostream& log) {
  auto d = load_distances(cfg);
  auto dendro = complete_linkage(d);
  write_json(cfg.out / artifact::dendrogram, io::to_json(dendro, d.labels));
  auto out = create(cfg.out / artifact::merge_heights);
  io::write_merge_heights_csv(out, dendro);
  log << "cluster: " << dendro.merges.size() << " merges, top height "
      << (dendro.merges.empty() ? 0.0 : dendro.merges.back().height) << '\n';
}

void project(const PipelineConfig& cfg, std::ostream& log) {
  if (cfg.sammon_iterations == 0) throw ConfigError("sammon-iterations", "must be positive");
  if (!(cfg.magic_factor > 0.0)) throw ConfigError("magic-factor", "must be positive");
  if (!(cfg.sammon_tolerance > 0.0)) throw ConfigError("sammon-tolerance", "must be positive");
  auto d = load_distances(cfg);
  if (d.k < 3) throw ConfigError("k", "projection needs at least 3 communities");
  auto e = sammon(d, {cfg.sammon_iterations, cfg.magic_factor, cfg.sammon_tolerance, cfg.seed});
  if (e.perturbed_pairs > 0) {
    log << "warning: " << e.perturbed_pairs << " zero community distances perturbed to 1e-9\n";
  }
  auto out = create(cfg.out / artifact::embedding);
  io::write_embedding_csv(out, e, d.labels);
  write_json(cfg.out / artifact::embedding_meta, io::embedding_summary(e));
  log << "project: stress " << e.stress << " after " << e.iterations << " iterations\n";
}

void report(const PipelineConfig& cfg, std::ostream& log) {
  const fs::path dir = cfg.out / artifact::report_dir;
  std::vector<fs::path> files = {artifact::sessions,  artifact::rejects,       artifact::edges,
                                 artifact::graph_stats, artifact::spectrum,    artifact::distances,
                                 artifact::categories, artifact::dendrogram,   artifact::merge_heights,
                                 artifact::embedding,  artifact::embedding_meta};
  for (const auto& f : files) {
    if (!fs::exists(cfg.out / f)) throw MissingArtifact(cfg.out / f);
  }
  const fs::path ranks = cfg.out / artifact::ranks_dir;
  if (!fs::is_directory(ranks)) throw MissingArtifact(ranks);
  for (const auto& entry : fs::directory_iterator(ranks)) {
    files.push_back(fs::path(artifact::ranks_dir) / entry.path().filename());
  }

  fs::remove_all(dir);
  fs::create_directories(dir / artifact::ranks_dir);
  for (const auto& f : files) fs::copy_file(cfg.out / f, dir / f, fs::copy_options::overwrite_existing);

  if (!cfg.truth.empty()) {
    auto tin = open_input(cfg.truth, "truth");
    auto truth = io::read_truth_csv(tin);
    auto sessions = load_sessions(cfg);
    auto spectrum = load_spectrum(cfg);
    std::size_t groups = 0;
    for (const auto& [user, g] : truth) groups = std::max(groups, g + 1);
    const std::size_t comms = std::min(groups, spectrum.communities.size());
    const std::size_t top = cfg.recovery_top > 0 ? cfg.recovery_top : sessions.size() / std::max<std::size_t>(groups, 1);
    auto rec = assess_recovery(spectrum, sessions, truth, comms, std::min(top, sessions.size()));
    write_json(dir / artifact::recovery, io::to_json(rec));
    files.emplace_back(artifact::recovery);
    log << "report: recovery min purity " << rec.min_purity << (rec.distinct_groups ? "" : " (groups repeat)")
        << '\n';
  }

  const fs::path settings = cfg.out / kSettings;
  nlohmann::json config = fs::exists(settings) ? read_json(settings) : nlohmann::json::object();
  config["report"] = {{"truth", cfg.truth}, {"recovery_top", cfg.recovery_top}};

  std::sort(files.begin(), files.end());
  nlohmann::json list = nlohmann::json::array();
  for (const auto& f : files) {
    list.push_back({{"path", f.generic_string()},
                    {"bytes", fs::file_size(dir / f)},
                    {"sha256", sha256_file(dir / f)}});
  }
  write_json(dir / artifact::manifest, {{"artifacts", std::move(list)}, {"config", config}});
  log << "report: " << files.size() << " artifacts in " << dir.string() << '\n';
}

void pipeline(const PipelineConfig& cfg, std::ostream& log) {
  sessionize(cfg, log);
  graph(cfg, log);
  communities(cfg, log);
  distances(cfg, log);
  labels(cfg, log);
  cluster(cfg, log);
  project(cfg, log);
  report(cfg, log);
}

void synth(const PlantedConfig& planted, const fs::path& out, std::ostream& log) {
  try {
    planted.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("synth", e.what());
  }
  auto generated = generate_planted_log(planted);
  auto log_out = create(out / "log.csv");
  io::write_records_csv(log_out, generated.records);
  auto truth_out = create(out / "truth.csv");
  io::write_truth_csv(truth_out, generated.truth);
  auto catalog_out = create(out / "catalog.csv");
  io::write_catalog_csv(catalog_out, planted_catalog(planted));
  log << "synth: " << generated.records.size() << " records for " << generated.truth.size() << " users\n";
}

}  // namespace stages

namespace {

void add_config(CLI::App* sub, std::string& config_file) {
  sub->add_option("--config", config_file, "File of key = value defaults; flags override it");
}

void add_common(CLI::App* sub, PipelineConfig& cfg, std::string& config_file) {
  add_config(sub, config_file);
  sub->add_option("--out", cfg.out, "Output directory")->capture_default_str();
  sub->add_option("--threads", cfg.threads, "OpenMP threads (0 = all cores)")->check(CLI::NonNegativeNumber);
}

void add_ingest(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--input", cfg.input, "Access log")->required()->check(CLI::ExistingFile);
  sub->add_option("--format", cfg.format, "Log format")->check(CLI::IsMember({"csv", "clf"}))->capture_default_str();
  sub->add_flag("--strict", cfg.strict, "Abort on the first malformed line");
  sub->add_option("--threshold", cfg.threshold, "Inactivity threshold in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--filter", cfg.filter, "Object allow-list, one id per line")->check(CLI::ExistingFile);
}

void add_graph(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--popular-fraction", cfg.popular_fraction, "Drop objects seen in more than this fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

void add_spectral(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--k", cfg.k, "Number of communities")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--tolerance", cfg.tolerance, "Eigenpair residual bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--max-iterations", cfg.max_iterations, "Power-iteration limit per eigenpair")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_flag("--split-poles", cfg.split_poles, "Split non-principal communities into two poles");
}

void add_seed(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
}

void add_labels(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--split", cfg.split, "Member/non-member size: a count or 'half'")->capture_default_str();
  sub->add_option("--catalog", cfg.catalog, "CSV object_id,category")->check(CLI::ExistingFile);
}

void add_projection(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--sammon-iterations", cfg.sammon_iterations)->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--magic-factor", cfg.magic_factor)->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--sammon-tolerance", cfg.sammon_tolerance)->check(CLI::PositiveNumber)->capture_default_str();
}

void add_report(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--truth", cfg.truth, "Ground truth CSV user_id,group")->check(CLI::ExistingFile);
  sub->add_option("--recovery-top", cfg.recovery_top, "Top sessions per community checked against the truth");
}

// `<sub> ... --config FILE ...` becomes `<sub> --key=value ... ...`: file
// entries go first so explicit flags take precedence. Sections other than
// the subcommand's own are ignored.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  bool found = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
      found = true;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      found = true;
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!found || rest.empty()) return args;

  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  const std::string& sub = rest.front();
  std::vector<std::string> out = {sub};
  for (const auto& item : CLI::ConfigTOML().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents.front() == sub)) continue;
    if (item.inputs.empty()) out.push_back("--" + item.name);
    for (const auto& value : item.inputs) out.push_back("--" + item.name + "=" + value);
  }
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Session community identification from access logs", "sessioncomm"};
  app.require_subcommand(1);
  // Later values win, which is how flags override config-file entries.
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_file;
  PipelineConfig cfg;
  PlantedConfig planted;
  fs::path synth_out = cfg.out;

  auto* s_sessionize = app.add_subcommand("sessionize", "Parse a log and cut it into sessions");
  add_common(s_sessionize, cfg, config_file);
  add_ingest(s_sessionize, cfg);

  auto* s_graph = app.add_subcommand("graph", "Build the session-overlap graph");
  add_common(s_graph, cfg, config_file);
  add_graph(s_graph, cfg);

  auto* s_comm = app.add_subcommand("communities", "Top-k authority/hub eigenvectors");
  add_common(s_comm, cfg, config_file);
  add_spectral(s_comm, cfg);
  add_seed(s_comm, cfg);

  auto* s_dist = app.add_subcommand("distances", "Rank tables and Spearman distance matrix");
  add_common(s_dist, cfg, config_file);

  auto* s_labels = app.add_subcommand("labels", "Best and worst categories per community");
  add_common(s_labels, cfg, config_file);
  add_labels(s_labels, cfg);

  auto* s_cluster = app.add_subcommand("cluster", "Complete-linkage dendrogram of the communities");
  add_common(s_cluster, cfg, config_file);

  auto* s_project = app.add_subcommand("project", "Sammon mapping of the communities");
  add_common(s_project, cfg, config_file);
  add_projection(s_project, cfg);
  add_seed(s_project, cfg);

  auto* s_report = app.add_subcommand("report", "Bundle the artifacts with a manifest");
  add_common(s_report, cfg, config_file);
  add_report(s_report, cfg);

  auto* s_synth = app.add_subcommand("synth", "Generate a log with planted communities");
  add_config(s_synth, config_file);
  s_synth->add_option("--out", synth_out, "Output directory")->capture_default_str();
  s_synth->add_option("--groups", planted.groups)->check(CLI::PositiveNumber)->capture_default_str();
  s_synth->add_option("--sessions-per-group", planted.sessions_per_group)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_synth->add_option("--objects-per-group", planted.objects_per_group)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_synth->add_option("--min-accesses", planted.min_accesses)->check(CLI::PositiveNumber)->capture_default_str();
  s_synth->add_option("--max-accesses", planted.max_accesses)->check(CLI::PositiveNumber)->capture_default_str();
  s_synth->add_option("--noise", planted.cross_group_noise, "Cross-group request probability")
      ->check(CLI::Range(0.0, 0.5))
      ->capture_default_str();
  s_synth->add_option("--seed", planted.seed)->capture_default_str();

  auto* s_pipeline = app.add_subcommand("pipeline", "Run every stage, then report");
  add_common(s_pipeline, cfg, config_file);
  add_ingest(s_pipeline, cfg);
  add_graph(s_pipeline, cfg);
  add_spectral(s_pipeline, cfg);
  add_seed(s_pipeline, cfg);
  add_labels(s_pipeline, cfg);
  add_projection(s_pipeline, cfg);
  add_report(s_pipeline, cfg);

  try {
    auto expanded = expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  set_thread_count(cfg.threads);
  try {
    if (s_sessionize->parsed()) stages::sessionize(cfg, err);
    if (s_graph->parsed()) stages::graph(cfg, err);
    if (s_comm->parsed()) stages::communities(cfg, err);
    if (s_dist->parsed()) stages::distances(cfg, err);
    if (s_labels->parsed()) stages::labels(cfg, err);
    if (s_cluster->parsed()) stages::cluster(cfg, err);
    if (s_project->parsed()) stages::project(cfg, err);
    if (s_report->parsed()) stages::report(cfg, err);
    if (s_synth->parsed()) {
      planted.inactivity_threshold = cfg.threshold;
      stages::synth(planted, synth_out, err);
    }
    if (s_pipeline->parsed()) stages::pipeline(cfg, err);
  } catch (const MissingArtifact& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace sessioncomm

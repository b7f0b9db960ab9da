#include "gsco/harness.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "gsco/error.hpp"
#include "gsco/graph_gen.hpp"

namespace gsco::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "seed",          "out",           "method",         "label",
      "instance.d",    "instance.n",    "instance.sigma", "instance.seed",
      "instance.path", "model.variant", "model.s",        "model.g",
      "model.C",       "model.graph_path",
      "graph.kind",    "graph.edges",   "graph.rewire",
      "solver.option", "solver.step",   "solver.beta",
      "solver.eta_init", "solver.delta", "solver.L",      "solver.L_tol",
      "solver.max_iters", "solver.rel_tol",
      "dmo.variant",   "dmo.g",         "dmo.s",          "dmo.theta",
      "dmo.seed",      "pgd.step",      "pgd.alpha",      "pgd.seed",
      "enum.cap",      "trace.wall_clock"};
  return keys;
}

std::string trim(std::string_view text) {
  auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("config key " + key + ": cannot parse '" + text + "'");
  }
  return value;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size()))) {
    throw IoError("cannot write " + path.string());
  }
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string model_description(const ConstraintModel& model) {
  std::ostringstream out;
  out.precision(17);
  if (const auto* m = std::get_if<GSubgraphModel>(&model.family())) {
    out << "gsubgraph s=" << m->sparsity << " g=" << m->components;
  } else {
    out << "cardinality s=" << model.sparsity();
  }
  out << " C=" << model.radius() << '\n';
  return out.str();
}

std::string edge_list_text(const Graph& graph) {
  std::ostringstream out;
  write_edge_list(out, graph);
  return out.str();
}

std::string fingerprint_of(const LoadedInstance& loaded) {
  std::string bytes = model_description(*loaded.model);
  bytes += matrix_csv(loaded.instance->objective.matrix());
  bytes += vector_csv(loaded.instance->objective.observations());
  bytes += vector_csv(loaded.instance->x_star);
  if (loaded.graph) bytes += edge_list_text(*loaded.graph);
  return fnv1a_hex(bytes);
}

std::shared_ptr<const Graph> make_graph(const RunConfig& config, std::size_t d,
                                        std::uint64_t seed) {
  if (auto path = config.get("model.graph_path")) {
    auto graph = std::make_shared<const Graph>(load_edge_list_file(*path));
    if (graph->node_count() != d) {
      throw ConfigError("graph file has " + std::to_string(graph->node_count()) +
                        " nodes, instance.d is " + std::to_string(d));
    }
    return graph;
  }
  auto kind = config.get("graph.kind");
  if (!kind) return nullptr;
  Rng rng(seed, streams::kGraph);
  if (*kind == "small_world") {
    const std::size_t edges = config.get_size("graph.edges", 4 * d);
    return std::make_shared<const Graph>(
        small_world_graph(d, edges, config.get_double("graph.rewire", 0.1), rng));
  }
  if (*kind == "random_connected") {
    const std::size_t edges = config.get_size("graph.edges", 2 * d);
    const std::size_t extra = edges > d - 1 ? edges - (d - 1) : 0;
    return std::make_shared<const Graph>(random_connected_graph(d, extra, rng));
  }
  if (*kind == "path") return std::make_shared<const Graph>(path_graph(d));
  if (*kind == "star") return std::make_shared<const Graph>(star_graph(d));
  if (*kind == "complete") return std::make_shared<const Graph>(complete_graph(d));
  throw ConfigError("unknown graph.kind '" + *kind +
                    "' (expected small_world, random_connected, path, star or complete)");
}

ConstraintModel make_model(const std::string& variant, std::size_t d, std::size_t s,
                           std::size_t g, double radius, std::shared_ptr<const Graph> graph) {
  if (variant == "gsubgraph") {
    if (!graph) {
      throw ConfigError("model.variant=gsubgraph needs model.graph_path or graph.kind");
    }
    return ConstraintModel::g_subgraph(std::move(graph), s, g, radius);
  }
  if (variant == "cardinality") {
    return ConstraintModel::cardinality(d, s, radius);
  }
  throw ConfigError("unknown model.variant '" + variant + "' (expected gsubgraph or cardinality)");
}

std::size_t require_size(const RunConfig& config, const std::string& key) {
  if (!config.has(key)) throw ConfigError("missing required key " + key);
  return config.get_size(key, 0);
}

LoadedInstance load_instance_dir(const fs::path& dir) {
  json header;
  try {
    header = json::parse(read_text(dir / "instance.json"));
  } catch (const json::exception& e) {
    throw ConfigError("instance.json: " + std::string(e.what()));
  }
  LoadedInstance loaded;
  try {
    loaded.dimension = header.at("d").get<std::size_t>();
    loaded.rows = header.at("n").get<std::size_t>();
    loaded.sigma = header.at("sigma").get<double>();
    loaded.seed = header.at("seed").get<std::uint64_t>();
    const json& m = header.at("model");
    if (m.contains("graph_path") && !m.at("graph_path").is_null()) {
      loaded.graph = std::make_shared<const Graph>(
          load_edge_list_file((dir / m.at("graph_path").get<std::string>()).string()));
    }
    loaded.model = std::make_shared<const ConstraintModel>(make_model(
        m.at("variant").get<std::string>(), loaded.dimension, m.at("s").get<std::size_t>(),
        m.at("g").get<std::size_t>(), m.at("C").get<double>(), loaded.graph));
  } catch (const json::exception& e) {
    throw ConfigError("instance.json: " + std::string(e.what()));
  }
  auto instance = std::make_shared<const Instance>(read_instance_csv(dir));
  if (instance->objective.dimension() != loaded.dimension ||
      instance->objective.rows() != loaded.rows) {
    throw ConfigError("instance CSV shapes do not match instance.json");
  }
  loaded.instance = std::move(instance);
  loaded.fingerprint = fingerprint_of(loaded);
  return loaded;
}

}  // namespace

bool is_known_key(const std::string& key) { return known_keys().count(key) > 0; }

RunConfig RunConfig::parse(std::istream& in) {
  RunConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected key = value", line_no);
    }
    std::string key = trim(std::string_view(text).substr(0, eq));
    if (!is_known_key(key)) {
      throw ParseError("unknown config key '" + key + "'", line_no);
    }
    config.entries_[key] = trim(std::string_view(text).substr(eq + 1));
  }
  return config;
}

RunConfig RunConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  return parse(in);
}

void RunConfig::apply(const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + assignment + "' is not key=value");
  }
  set(trim(std::string_view(assignment).substr(0, eq)),
      trim(std::string_view(assignment).substr(eq + 1)));
}

void RunConfig::set(const std::string& key, std::string value) {
  if (!is_known_key(key)) throw ConfigError("unknown config key '" + key + "'");
  entries_[key] = std::move(value);
}

bool RunConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

std::optional<std::string> RunConfig::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  return v ? parse_number<double>(key, *v) : fallback;
}

std::size_t RunConfig::get_size(const std::string& key, std::size_t fallback) const {
  auto v = get(key);
  return v ? parse_number<std::size_t>(key, *v) : fallback;
}

std::uint64_t RunConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto v = get(key);
  return v ? parse_number<std::uint64_t>(key, *v) : fallback;
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1") return true;
  if (*v == "false" || *v == "0") return false;
  throw ConfigError("config key " + key + ": expected true or false");
}

void RunConfig::write(std::ostream& out) const {
  for (const auto& [key, value] : entries_) out << key << '=' << value << '\n';
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

LoadedInstance build_instance(const RunConfig& config) {
  if (auto path = config.get("instance.path")) {
    return load_instance_dir(*path);
  }
  LoadedInstance loaded;
  loaded.dimension = require_size(config, "instance.d");
  loaded.rows = require_size(config, "instance.n");
  loaded.sigma = config.get_double("instance.sigma", kDefaultNoiseSigma);
  loaded.seed = config.get_u64("instance.seed", config.get_u64("seed", 0));
  loaded.graph = make_graph(config, loaded.dimension, loaded.seed);

  const std::string variant =
      config.get_string("model.variant", loaded.graph ? "gsubgraph" : "cardinality");
  const std::size_t s = require_size(config, "model.s");
  loaded.model = std::make_shared<const ConstraintModel>(
      make_model(variant, loaded.dimension, s, config.get_size("model.g", 1),
                 config.get_double("model.C", 1.0), loaded.graph));

  InstanceSpec spec{loaded.dimension, loaded.rows, loaded.sigma, *loaded.model, loaded.seed};
  loaded.instance = std::make_shared<const Instance>(generate_instance(spec));
  loaded.fingerprint = fingerprint_of(loaded);
  return loaded;
}

GenerateOutput cmd_generate(const RunConfig& config, const fs::path& out) {
  LoadedInstance loaded = build_instance(config);
  fs::create_directories(out);
  write_instance_csv(out, *loaded.instance);

  json model;
  if (const auto* m = std::get_if<GSubgraphModel>(&loaded.model->family())) {
    model["variant"] = "gsubgraph";
    model["g"] = m->components;
  } else {
    model["variant"] = "cardinality";
    model["g"] = 1;
  }
  model["s"] = loaded.model->sparsity();
  model["C"] = loaded.model->radius();
  if (loaded.graph) {
    write_edge_list_file((out / "graph.txt").string(), *loaded.graph);
    model["graph_path"] = "graph.txt";
  } else {
    model["graph_path"] = nullptr;
  }

  GenerateOutput result;
  result.fingerprint = loaded.fingerprint;
  result.objective_at_truth = loaded.instance->objective.evaluate(loaded.instance->x_star);

  json header;
  header["d"] = loaded.dimension;
  header["n"] = loaded.rows;
  header["sigma"] = loaded.sigma;
  header["seed"] = loaded.seed;
  header["model"] = model;
  header["fingerprint"] = result.fingerprint;
  header["objective_at_truth"] = result.objective_at_truth;
  write_text(out / "instance.json", header.dump(2) + "\n");

  std::ostringstream echo;
  config.write(echo);
  write_text(out / "config.txt", echo.str());
  return result;
}

RunOutput run_method(const RunConfig& config, const LoadedInstance& loaded) {
  const LeastSquaresObjective& objective = loaded.instance->objective;
  const ConstraintModel& model = *loaded.model;
  const std::uint64_t seed = config.get_u64("seed", 0);
  const std::size_t cap = config.get_size("enum.cap", kDefaultEnumerationCap);
  const std::size_t max_iters = config.get_size("solver.max_iters", 1000);
  const double rel_tol = config.get_double("solver.rel_tol", kDefaultRelTol);
  const bool wall_clock = config.get_bool("trace.wall_clock", false);

  std::optional<double> lipschitz_cache;
  auto lipschitz = [&] {
    if (!lipschitz_cache) {
      lipschitz_cache = config.has("solver.L")
                            ? config.get_double("solver.L", 0.0)
                            : objective.lipschitz_constant(config.get_double("solver.L_tol", 1e-6));
    }
    return *lipschitz_cache;
  };

  RunOutput run;
  run.method = config.get_string("method", "dmo_fw");
  run.label = config.get_string("label", run.method);
  run.instance_fingerprint = loaded.fingerprint;

  if (run.method == "dmo_fw" || run.method == "dmo_accfw") {
    SolverConfig sc;
    sc.variant = run.method == "dmo_fw" ? FwVariant::FW : FwVariant::AccFW;
    const std::string option = config.get_string("solver.option", "I");
    if (option == "I") {
      sc.option = UpdateOption::I;
    } else if (option == "II") {
      sc.option = UpdateOption::II;
    } else {
      throw ConfigError("solver.option must be I or II");
    }
    const std::string step = config.get_string("solver.step", "open_loop");
    if (step == "open_loop") {
      sc.step_rule = OpenLoopStep{};
    } else if (step == "backtracking") {
      sc.step_rule = BacktrackingStep{config.get_double("solver.beta", 0.5),
                                      config.get_double("solver.eta_init", 1.0)};
    } else if (step == "demyanov_rubinov") {
      sc.step_rule = DemyanovRubinovStep{lipschitz()};
    } else {
      throw ConfigError("solver.step must be open_loop, backtracking or demyanov_rubinov");
    }
    sc.delta = config.get_double("solver.delta", 1.0);
    if (sc.variant == FwVariant::AccFW) sc.lipschitz = lipschitz();
    sc.max_iters = max_iters;
    sc.rel_tol = rel_tol;
    sc.dmo.variant = parse_dmo_variant(config.get_string("dmo.variant", "topg"));
    const auto* gs = std::get_if<GSubgraphModel>(&model.family());
    sc.dmo.params.g = config.get_size("dmo.g", gs ? gs->components : 1);
    sc.dmo.params.s = config.get_size("dmo.s", model.sparsity());
    sc.dmo.params.theta = config.get_size("dmo.theta", kDefaultTheta);
    sc.dmo.params.seed = config.get_u64("dmo.seed", seed);
    sc.dmo.graph = gs ? nullptr : loaded.graph;
    sc.dmo.enumeration_cap = cap;
    sc.record_wall_clock = wall_clock;
    run.result = solve(sc, objective, model);
  } else if (run.method == "random_pgd" || run.method == "best_pgd") {
    PgdConfig pc;
    const std::string step = config.get_string("pgd.step", "inverse_L");
    if (step == "inverse_L") {
      pc.step = InverseLipschitzStep{lipschitz()};
    } else if (step == "fixed") {
      if (!config.has("pgd.alpha")) throw ConfigError("pgd.step=fixed needs pgd.alpha");
      pc.step = FixedStep{config.get_double("pgd.alpha", 0.0)};
    } else {
      throw ConfigError("pgd.step must be inverse_L or fixed");
    }
    pc.max_iters = max_iters;
    pc.rel_tol = rel_tol;
    pc.seed = config.get_u64("pgd.seed", seed);
    pc.enumeration_cap = cap;
    pc.record_wall_clock = wall_clock;
    run.result = run.method == "random_pgd" ? random_pgd(objective, model, pc)
                                            : best_pgd(objective, model, pc);
  } else {
    throw ConfigError("unknown method '" + run.method +
                      "' (expected dmo_fw, dmo_accfw, random_pgd or best_pgd)");
  }
  return run;
}

void write_summary_json(std::ostream& out, const RunOutput& run, const RunConfig& config) {
  json summary;
  summary["method"] = run.method;
  summary["label"] = run.label;
  summary["best_t"] = run.result.trace.best_t;
  summary["best_objective"] = run.result.trace.best_objective;
  summary["termination"] = std::string(to_string(run.result.trace.termination));
  summary["steps"] = run.result.trace.steps();
  summary["instance_fingerprint"] = run.instance_fingerprint;
  json echo = json::object();
  for (const auto& [key, value] : config.entries()) echo[key] = value;
  summary["config"] = echo;
  out << summary.dump(2) << '\n';
}

namespace {

void write_run(const fs::path& dir, const RunOutput& run, const RunConfig& config) {
  fs::create_directories(dir);
  std::ostringstream echo;
  config.write(echo);
  write_text(dir / "config.txt", echo.str());
  std::ostringstream trace;
  write_trace_csv(trace, run.result.trace);
  write_text(dir / "trace.csv", trace.str());
  std::ostringstream summary;
  write_summary_json(summary, run, config);
  write_text(dir / "summary.json", summary.str());
}

}  // namespace

RunOutput cmd_solve(const RunConfig& config, const fs::path& out) {
  LoadedInstance loaded = build_instance(config);
  RunOutput run = run_method(config, loaded);
  write_run(out, run, config);
  return run;
}

CompareOutput cmd_compare(const std::vector<RunConfig>& configs, const fs::path& out) {
  if (configs.size() < 2) {
    throw ConfigError("compare needs at least two run configs");
  }
  std::vector<std::future<std::pair<RunOutput, std::string>>> pending;
  for (const auto& config : configs) {
    pending.push_back(std::async(std::launch::async, [&config] {
      LoadedInstance loaded = build_instance(config);
      return std::make_pair(run_method(config, loaded), loaded.fingerprint);
    }));
  }
  CompareOutput result;
  for (auto& p : pending) result.runs.push_back(p.get().first);

  for (const auto& run : result.runs) {
    if (run.instance_fingerprint != result.runs.front().instance_fingerprint) {
      throw ConfigError("compared runs use different instances (" + run.label + ")");
    }
  }
  std::set<std::string> used;
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    std::string label = result.runs[i].label;
    if (used.count(label)) label += "_" + std::to_string(i);
    used.insert(label);
    result.runs[i].label = label;
    write_run(out / label, result.runs[i], configs[i]);
  }

  std::ostringstream csv;
  csv << "method,t,objective\n";
  char buf[32];
  for (const auto& run : result.runs) {
    for (const auto& r : run.result.trace.records) {
      std::snprintf(buf, sizeof buf, "%.17g", r.objective);
      csv << run.label << ',' << r.t << ',' << buf << '\n';
    }
  }
  write_text(out / "comparison.csv", csv.str());

  result.ranking.resize(result.runs.size());
  std::iota(result.ranking.begin(), result.ranking.end(), std::size_t{0});
  std::stable_sort(result.ranking.begin(), result.ranking.end(), [&](std::size_t a, std::size_t b) {
    return result.runs[a].result.f_best < result.runs[b].result.f_best;
  });
  return result;
}

}  // namespace gsco::harness

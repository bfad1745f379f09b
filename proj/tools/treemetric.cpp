// treemetric: command-line front end for the tree metric library.
//
// Exit codes: 0 success, 1 usage or input error, 2 oracle counterexample.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "treemetric/treemetric.hpp"

namespace fs = std::filesystem;
namespace tr = treemetric;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitCounterexample = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tr::ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

tr::LabeledTree load_tree(const std::string& path) {
  try {
    return tr::parse_tree(read_file(path));
  } catch (const tr::TreeError& e) {
    throw tr::ValidationError(path + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tr::ValidationError("cannot write '" + path + "'");
  out << text;
}

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

struct MetricFlags {
  std::string metric = "bm";
  std::string order_path;
  std::string label_metric_path;
  std::string weights = "const";
  std::optional<std::size_t> arity;
  std::optional<std::size_t> level;
  bool decimal = false;

  void add_to(CLI::App& cmd) {
    cmd.add_option("-m,--metric", metric, "ot | bm | bmstar | lr | bu | st")
        ->check(CLI::IsMember({"ot", "bm", "bmstar", "lr", "bu", "st"}));
    cmd.add_option("--order", order_path, "total order file (one label per line, ascending)");
    cmd.add_option("--label-metric", label_metric_path, "label metric CSV");
    cmd.add_option("--weights", weights, "const | exp:<base>");
    cmd.add_option("--arity", arity, "arity of the completion (default: largest branching factor)");
    cmd.add_option("--level", level, "completion level (default: larger depth)");
    cmd.add_flag("--float", decimal, "print decimals instead of exact fractions");
  }

  tr::ComparisonOptions comparison() const {
    tr::ComparisonOptions o;
    o.level = level;
    o.arity = arity;
    o.weights = tr::WeightScheme::parse(weights);
    return o;
  }

  bool positional() const { return metric != "bu" && metric != "st"; }

  void warn_incompatible(const std::vector<tr::LabeledTree>& trees) const {
    if (!order_path.empty() && metric != "lr") warn("--order only affects --metric lr");
    if (!positional() && (weights != "const" || !label_metric_path.empty() || arity || level)) {
      warn("--weights, --label-metric, --arity and --level do not affect --metric " + metric);
    }
    if (metric != "bmstar" &&
        std::any_of(trees.begin(), trees.end(), [](const auto& t) { return t.has_locks(); })) {
      warn("lock marks are ignored by --metric " + metric);
    }
  }
};

/// Alphabet from an order file (if any) or from the labels seen, plus an optional metric CSV.
tr::LabelAlphabet build_alphabet(const std::vector<tr::LabeledTree>& trees, const std::string& order_path,
                                 const std::string& metric_path) {
  std::optional<tr::LabelMetricTable> table;
  if (!metric_path.empty()) {
    std::ifstream in(metric_path);
    if (!in) throw tr::ValidationError("cannot open '" + metric_path + "'");
    table = tr::read_metric_csv(in);
  }
  std::optional<tr::LabelAlphabet> alphabet;
  if (!order_path.empty()) {
    std::ifstream in(order_path);
    if (!in) throw tr::ValidationError("cannot open '" + order_path + "'");
    alphabet = tr::LabelAlphabet::from_order(tr::read_order(in));
  } else {
    std::vector<std::string> labels;
    for (const auto& t : trees) t.for_each_label([&](const std::string& l) { labels.push_back(l); });
    if (table) labels.insert(labels.end(), table->labels.begin(), table->labels.end());
    alphabet = tr::LabelAlphabet::from_labels(labels);
  }
  for (const auto& t : trees) alphabet->require_labels(t);
  if (table) tr::apply_metric(*alphabet, *table, "csv:" + fs::path(metric_path).filename().string());
  return *alphabet;
}

tr::DistanceReport compute(const std::string& metric, const tr::LabeledTree& a, const tr::LabeledTree& b,
                           const tr::LabelAlphabet& alphabet, const tr::ComparisonOptions& options) {
  if (metric == "ot") return tr::d_ot(a, b, alphabet, options);
  if (metric == "bm") return tr::d_bm(a, b, alphabet, options);
  if (metric == "bmstar") return tr::d_bm_star(a, b, alphabet, options);
  if (metric == "lr") return tr::d_lr(a, b, alphabet, options);
  if (metric == "bu") return tr::d_bu(a, b);
  if (metric == "st") return tr::d_st(a, b);
  throw tr::ValidationError("unknown metric '" + metric + "'");
}

nlohmann::ordered_json to_json(const tr::DistanceReport& r, bool decimal) {
  nlohmann::ordered_json j;
  j["metric"] = r.metric;
  j["value"] = decimal ? tr::format_decimal(r.value) : tr::format_exact(r.value);
  if (r.level) j["level"] = *r.level;
  if (r.arity) j["arity"] = *r.arity;
  if (r.weights) j["weights"] = *r.weights;
  if (r.order) j["order"] = *r.order;
  if (r.label_metric) j["label_metric"] = *r.label_metric;
  if (r.common_size) j["common_size"] = *r.common_size;
  if (r.n1) j["n1"] = *r.n1;
  if (r.n2) j["n2"] = *r.n2;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

int cmd_dist(const MetricFlags& flags, const std::string& first, const std::string& second, bool json,
             bool witness) {
  const std::vector<tr::LabeledTree> trees{load_tree(first), load_tree(second)};
  flags.warn_incompatible(trees);
  const auto alphabet = build_alphabet(trees, flags.order_path, flags.label_metric_path);
  const auto options = flags.comparison();
  const auto report = compute(flags.metric, trees[0], trees[1], alphabet, options);
  if (json) {
    std::cout << to_json(report, flags.decimal).dump(2) << '\n';
  } else {
    std::cout << tr::to_key_value(report, flags.decimal);
  }
  if (witness) {
    if (flags.metric != "bm" && flags.metric != "bmstar") {
      warn("--witness applies to --metric bm and bmstar only");
    } else {
      const auto frame = tr::resolve_frame(trees[0], trees[1], options);
      const auto w = tr::best_match_witness(tr::complete(trees[0], alphabet, frame.level, frame.arity),
                                            tr::complete(trees[1], alphabet, frame.level, frame.arity), alphabet,
                                            options.weights, flags.metric == "bmstar");
      std::cout << "witness_first: " << tr::to_string(w.first, alphabet) << '\n'
                << "witness_second: " << tr::to_string(w.second, alphabet) << '\n';
    }
  }
  return 0;
}

int cmd_matrix(const MetricFlags& flags, const std::string& directory, const std::string& output) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tree") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& x, const fs::path& y) {
    return x.filename().string() < y.filename().string();
  });
  if (files.size() < 2) throw tr::ValidationError("matrix needs at least two .tree files in '" + directory + "'");

  std::vector<tr::LabeledTree> trees;
  for (const auto& f : files) trees.push_back(load_tree(f.string()));
  flags.warn_incompatible(trees);
  const auto alphabet = build_alphabet(trees, flags.order_path, flags.label_metric_path);
  const auto options = flags.comparison();

  const std::size_t n = trees.size();
  std::vector<tr::Rational> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      values[i * n + j] = values[j * n + i] = compute(flags.metric, trees[i], trees[j], alphabet, options).value;
    }
  }

  std::ostringstream csv;
  for (const auto& f : files) csv << ',' << f.stem().string();
  csv << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    csv << files[i].stem().string();
    for (std::size_t j = 0; j < n; ++j) {
      const auto& v = values[i * n + j];
      csv << ',' << (flags.decimal ? tr::format_decimal(v) : tr::format_exact(v));
    }
    csv << '\n';
  }
  write_output(output, csv.str());
  return 0;
}

std::pair<tr::LabeledTree, tr::LabelAlphabet> load_single(const std::string& path, const std::string& order_path) {
  auto tree = load_tree(path);
  auto alphabet = build_alphabet({tree}, order_path, "");
  return {std::move(tree), std::move(alphabet)};
}

int cmd_regularize(const std::string& path, std::optional<std::size_t> level, std::optional<std::size_t> arity,
                   const std::string& order_path) {
  auto [tree, alphabet] = load_single(path, order_path);
  if (tree.has_locks()) warn("lock marks are ignored by left-regularization");
  const auto frame = tr::resolve_frame(tree, tree, {level, arity, tr::WeightScheme::constant()});
  const auto canonical = tr::left_regularize(tree, alphabet, frame.level, frame.arity);
  std::cout << tr::to_string(canonical, alphabet) << '\n' << tr::label_string_text(canonical, alphabet) << '\n';
  return 0;
}

int cmd_complete(const std::string& path, std::optional<std::size_t> level, std::optional<std::size_t> arity) {
  auto [tree, alphabet] = load_single(path, "");
  const auto frame = tr::resolve_frame(tree, tree, {level, arity, tr::WeightScheme::constant()});
  const auto completed = tr::complete(tree, alphabet, frame.level, frame.arity);
  std::cout << tr::to_string(completed, alphabet) << '\n' << tr::label_string_text(completed, alphabet) << '\n';
  return 0;
}

std::vector<std::string> split_labels(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_gen(const tr::RandomTreeParams& params, const std::string& labels, const std::string& output) {
  const auto alphabet = tr::LabelAlphabet::from_labels(split_labels(labels));
  write_output(output, tr::to_string(tr::random_tree(params, alphabet)) + "\n");
  return 0;
}

int cmd_oracle_check(std::uint64_t seed, std::size_t trials, std::size_t max_depth, bool locks) {
  const auto base = tr::LabelAlphabet::from_labels({"X", "Y", "Z"});
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t s = seed * 7919 + t * 4;
    tr::RandomTreeParams p;
    p.max_depth = max_depth;
    p.arity = 2;
    p.lock_probability = locks ? 0.5 : 0.0;
    p.seed = s;
    const auto a = tr::random_tree(p, base);
    p.seed = s + 1;
    const auto b = tr::random_tree(p, base);

    auto alphabet = base;
    if (t % 2 == 1) alphabet.set_metric(tr::random_label_metric(s + 2, alphabet), "random");
    tr::ComparisonOptions options;
    if (t % 4 >= 2) options.weights = tr::WeightScheme::exponential(tr::Rational(1, 2));

    auto check = [&](const char* name, const tr::Rational& fast, bool respect) {
      const auto slow = tr::oracle_bm(a, b, alphabet, options, respect);
      if (fast == slow) return true;
      std::cout << "counterexample (" << name << ", trial " << t << ", metric " << alphabet.metric_name()
                << ", weights " << options.weights.describe() << ")\n"
                << tr::to_string(a) << '\n'
                << tr::to_string(b) << '\n'
                << "dynamic program: " << tr::format_exact(fast) << ", enumeration: " << tr::format_exact(slow)
                << '\n';
      return false;
    };
    if (!check("bm", tr::d_bm(a, b, alphabet, options).value, false)) return kExitCounterexample;
    if (locks && !check("bmstar", tr::d_bm_star(a, b, alphabet, options).value, true)) return kExitCounterexample;
  }
  std::cout << "oracle-check: " << trials << " pairs agree" << (locks ? " (bm and bmstar)" : " (bm)") << '\n';
  return 0;
}

std::pair<std::size_t, std::size_t> parse_depth_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto d = static_cast<std::size_t>(std::stoul(text));
      return {d, d};
    }
    return {static_cast<std::size_t>(std::stoul(text.substr(0, dots))),
            static_cast<std::size_t>(std::stoul(text.substr(dots + 2)))};
  } catch (const std::exception&) {
    throw tr::ValidationError("invalid depth range '" + text + "' (expected A..B)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metrics and a semimetric on rooted labeled trees"};
  app.require_subcommand(1);

  MetricFlags dist_flags;
  std::string dist_a, dist_b;
  bool dist_json = false, dist_witness = false;
  auto* dist = app.add_subcommand("dist", "distance between two tree files");
  dist_flags.add_to(*dist);
  dist->add_option("first", dist_a)->required();
  dist->add_option("second", dist_b)->required();
  dist->add_flag("--json", dist_json, "print the report as JSON");
  dist->add_flag("--witness", dist_witness, "also print one optimal pair of embeddings (bm, bmstar)");

  MetricFlags matrix_flags;
  std::string matrix_dir, matrix_out;
  auto* matrix = app.add_subcommand("matrix", "pairwise distance matrix over a directory of .tree files");
  matrix_flags.add_to(*matrix);
  matrix->add_option("directory", matrix_dir)->required();
  matrix->add_option("-o,--output", matrix_out, "CSV output path (default: stdout)");

  std::string reg_path, reg_order;
  std::optional<std::size_t> reg_level, reg_arity;
  auto* regularize = app.add_subcommand("regularize", "left-regularized canonical form of a tree");
  regularize->add_option("tree", reg_path)->required();
  regularize->add_option("--level", reg_level);
  regularize->add_option("--arity", reg_arity);
  regularize->add_option("--order", reg_order, "total order file");

  std::string comp_path;
  std::optional<std::size_t> comp_level, comp_arity;
  auto* completion = app.add_subcommand("complete", "level-m completion of a tree");
  completion->add_option("tree", comp_path)->required();
  completion->add_option("--level", comp_level);
  completion->add_option("--arity", comp_arity);

  tr::RandomTreeParams gen_params;
  std::string gen_labels = "X,Y,Z", gen_out;
  auto* gen = app.add_subcommand("gen", "random tree");
  gen->add_option("--seed", gen_params.seed);
  gen->add_option("--depth", gen_params.max_depth, "maximum depth");
  gen->add_option("--arity", gen_params.arity);
  gen->add_option("--labels", gen_labels, "comma separated labels");
  gen->add_option("--lock-prob", gen_params.lock_probability)->check(CLI::Range(0.0, 1.0));
  gen->add_option("-o,--output", gen_out);

  std::uint64_t oc_seed = 1;
  std::size_t oc_trials = 100, oc_depth = 4;
  bool oc_locks = false;
  auto* oracle = app.add_subcommand("oracle-check", "compare the dynamic programs with brute-force enumeration");
  oracle->add_option("--seed", oc_seed);
  oracle->add_option("--trials", oc_trials);
  oracle->add_option("--max-depth", oc_depth);
  oracle->add_flag("--locks", oc_locks, "random lock marks; also checks bmstar");

  std::string bench_metric = "bm", bench_depths = "2..10", bench_out;
  tr::ScalingOptions bench_options;
  bool bench_adversarial = false;
  auto* bench = app.add_subcommand("bench", "time scaling on perfect random trees");
  bench->add_option("--metric", bench_metric)->check(CLI::IsMember({"bm", "lr", "bmstar"}));
  bench->add_option("--depths", bench_depths, "A..B");
  bench->add_option("--arity", bench_options.arity);
  bench->add_option("--seed", bench_options.seed);
  bench->add_option("--trials", bench_options.trials);
  bench->add_flag("--adversarial", bench_adversarial, "all labels equal (worst case for lr)");
  bench->add_option("-o,--output", bench_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*dist) return cmd_dist(dist_flags, dist_a, dist_b, dist_json, dist_witness);
    if (*matrix) return cmd_matrix(matrix_flags, matrix_dir, matrix_out);
    if (*regularize) return cmd_regularize(reg_path, reg_level, reg_arity, reg_order);
    if (*completion) return cmd_complete(comp_path, comp_level, comp_arity);
    if (*gen) return cmd_gen(gen_params, gen_labels, gen_out);
    if (*oracle) return cmd_oracle_check(oc_seed, oc_trials, oc_depth, oc_locks);
    if (*bench) {
      bench_options.metric = tr::parse_bench_metric(bench_metric);
      std::tie(bench_options.first_depth, bench_options.last_depth) = parse_depth_range(bench_depths);
      if (bench_adversarial) {
        if (bench_options.metric != tr::BenchMetric::lr) warn("--adversarial only changes --metric lr");
        bench_options.labels = tr::LabelMode::constant;
      }
      write_output(bench_out, tr::to_csv(tr::run_scaling(bench_options)));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

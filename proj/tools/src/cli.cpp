/*
 * Copyright 2026 The Recourse Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "recourse_app/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "recourse/error.hpp"
#include "recourse/model.hpp"
#include "recourse/schema.hpp"
#include "recourse/synthetic.hpp"
#include "recourse_app/experiment.hpp"
#include "recourse_app/hashing.hpp"
#include "recourse_app/pipeline.hpp"
#include "recourse_app/report.hpp"
#include "recourse_app/results.hpp"

namespace recourse::app {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct SearchFlags {
  std::string method = "cols";
  std::string objective = "emc";
  std::size_t budget = 5000;
  std::size_t set_size = 10;
  std::size_t num_samples = 1000;
  std::size_t hamming = 2;
  std::size_t restarts = 5;
  std::string distribution = "mix";
  std::optional<double> alpha;
  std::string editable;
  std::string preferences;
  std::optional<std::size_t> users;
  std::string samples_dir;
};

void AddSearchFlags(CLI::App* cmd, SearchFlags& f) {
  cmd->add_option("--budget", f.budget, "Model queries per user")->capture_default_str();
  cmd->add_option("--set-size", f.set_size, "Counterfactuals per recourse set")
      ->capture_default_str();
  cmd->add_option("--num-samples", f.num_samples, "Cost samples per user (M)")
      ->capture_default_str();
  cmd->add_option("--hamming", f.hamming, "Features changed per perturbation")
      ->capture_default_str();
  cmd->add_option("--restarts", f.restarts, "P-COLS restarts")->capture_default_str();
  cmd->add_option("--distribution", f.distribution, "Cost distribution: mix, lin or perc")
      ->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "Fixed lin/perc mixing weight for training samples");
  cmd->add_option("--editable-features", f.editable,
                  "Comma-separated features every sampled cost function may edit");
  cmd->add_option("--preferences", f.preferences,
                  "Preference vector: one weight per feature, or name=weight pairs");
  cmd->add_option("--users", f.users, "Process at most this many users");
  cmd->add_option("--samples-dir", f.samples_dir, "Cache directory for training samples");
}

SearchConfig ToSearchConfig(const SearchFlags& f) {
  SearchConfig c;
  c.budget = f.budget;
  c.set_size = f.set_size;
  c.num_samples = f.num_samples;
  c.hamming_distance = f.hamming;
  c.restarts = f.restarts;
  c.validate();
  return c;
}

SamplerOverrides ToOverrides(const DatasetSchema& schema, std::optional<double> alpha,
                             const std::string& editable, const std::string& preferences) {
  SamplerOverrides o;
  o.alpha = alpha;
  if (!editable.empty()) o.editable = ParseEditableList(schema, editable);
  if (!preferences.empty()) o.preferences = ParsePreferenceList(schema, preferences);
  ValidateOverrides(schema, o);
  return o;
}

// Records every flag of `cmd` plus input and output file hashes.
void WriteManifest(const fs::path& path, const CLI::App& cmd, int argc,
                   const char* const* argv, const std::vector<fs::path>& inputs,
                   const std::vector<fs::path>& outputs, const json& extra = json::object()) {
  json m;
  m["tool"] = "recourse";
  m["version"] = "0.1.0";
  m["command"] = cmd.get_name();
  json args = json::array();
  for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
  m["argv"] = std::move(args);
  json flags = json::object();
  for (const CLI::Option* opt : cmd.get_options()) {
    if (opt->get_name() == "--help") continue;
    const auto& res = opt->results();
    if (!res.empty()) {
      flags[opt->get_name()] = res.size() == 1 ? json(res.front()) : json(res);
    } else if (!opt->get_default_str().empty()) {
      flags[opt->get_name()] = opt->get_default_str();
    }
  }
  m["flags"] = std::move(flags);
  json in = json::object();
  for (const auto& p : inputs) {
    if (fs::is_regular_file(p)) in[p.string()] = HashFile(p);
  }
  m["inputs"] = std::move(in);
  json out = json::object();
  for (const auto& p : outputs) {
    if (fs::is_regular_file(p)) out[p.filename().string()] = HashFile(p);
  }
  m["outputs"] = std::move(out);
  for (const auto& [k, v] : extra.items()) m[k] = v;
  WriteFile(path, m.dump(2) + "\n");
}

std::optional<fs::path> OptionalPath(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recourse sets that minimize expected user cost", "recourse"};
  app.require_subcommand(1);

  // make-data
  std::string data_kind = "adult";
  std::size_t data_rows = 20000, data_test_rows = 2000;
  std::uint64_t data_seed = 1;
  std::string data_out;
  auto* make_data = app.add_subcommand("make-data", "Write a synthetic schema and datasets");
  make_data->add_option("--kind", data_kind, "adult or toy")->capture_default_str();
  make_data->add_option("--rows", data_rows, "Training rows")->capture_default_str();
  make_data->add_option("--test-rows", data_test_rows, "Held-out rows")->capture_default_str();
  make_data->add_option("--seed", data_seed, "Generator seed")->capture_default_str();
  make_data->add_option("--out", data_out, "Output directory")->required();

  // train
  std::string schema_path, data_path, model_path, train_out, arch = "mlp";
  TrainConfig train_cfg;
  auto* train = app.add_subcommand("train", "Fit the black-box classifier");
  train->add_option("--schema", schema_path, "Schema JSON")->required();
  train->add_option("--data", data_path, "Labelled CSV")->required();
  train->add_option("--out", train_out, "Weights file to write")->required();
  train->add_option("--arch", arch, "mlp or logistic")->capture_default_str();
  train->add_option("--hidden", train_cfg.hidden_width, "Hidden units per layer")
      ->capture_default_str();
  train->add_option("--epochs", train_cfg.epochs, "Training epochs")->capture_default_str();
  train->add_option("--lr", train_cfg.learning_rate, "Adam learning rate")
      ->capture_default_str();
  train->add_option("--batch", train_cfg.batch_size, "Mini-batch size")->capture_default_str();
  train->add_option("--validation", train_cfg.validation_fraction,
                    "Held-out fraction for validation accuracy")
      ->capture_default_str();
  train->add_option("--seed", train_cfg.seed, "Training seed")->capture_default_str();

  // generate
  SearchFlags gen;
  std::string train_data_path, gen_out;
  std::vector<std::uint64_t> gen_seeds{0};
  auto* generate = app.add_subcommand("generate", "Produce recourse sets for denied users");
  generate->add_option("--schema", schema_path, "Schema JSON")->required();
  generate->add_option("--data", data_path, "CSV of users")->required();
  generate->add_option("--model", model_path, "Weights file")->required();
  generate->add_option("--train-data", train_data_path,
                       "CSV for percentile costs (default: --data)");
  generate->add_option("--method", gen.method, "cols, pcols, random or ls")
      ->capture_default_str();
  generate->add_option("--objective", gen.objective,
                       "emc, diversity, proximity or sparsity (ls only for the latter)")
      ->capture_default_str();
  generate->add_option("--seed", gen_seeds, "Generation seed; repeat for several runs")
      ->capture_default_str();
  generate->add_option("--out", gen_out, "Output directory")->required();
  AddSearchFlags(generate, gen);

  // evaluate
  std::string results_dir, eval_out, eval_distribution = "mix";
  std::uint64_t test_seed = 0;
  double k = 1.0;
  std::optional<double> eval_alpha;
  auto* evaluate = app.add_subcommand("evaluate", "Score result documents on simulated users");
  evaluate->add_option("--schema", schema_path, "Schema JSON")->required();
  evaluate->add_option("--train-data,--data", train_data_path,
                       "CSV the percentile costs are built from")
      ->required();
  evaluate->add_option("--results", results_dir, "Directory of .jsonl result files")
      ->required();
  evaluate->add_option("--test-seed", test_seed, "Seed of the hidden cost functions")
      ->required();
  evaluate->add_option("--k", k, "Satisfaction threshold")->capture_default_str();
  evaluate->add_option("--distribution", eval_distribution, "Hidden cost distribution")
      ->capture_default_str();
  evaluate->add_option("--alpha", eval_alpha, "Fixed mixing weight of hidden costs");
  evaluate->add_option("--out", eval_out, "Output directory")->required();

  // experiment
  SearchFlags ex;
  std::string ex_kind, ex_out;
  std::vector<std::string> ex_methods;
  std::vector<std::uint64_t> ex_seeds{0, 1, 2, 3, 4};
  std::vector<double> ex_grid;
  std::uint64_t ex_test_seed = 1000;
  double ex_k = 1.0;
  std::size_t ex_bins = 10, ex_vectors = 500;
  auto* experiment = app.add_subcommand("experiment", "Run a full experiment grid");
  experiment->add_option("--kind", ex_kind,
                         "main, ablation, fairness, alpha_grid, concentration_shift, "
                         "budget_sweep, setsize_sweep or samples_sweep")
      ->required();
  experiment->add_option("--schema", schema_path, "Schema JSON")->required();
  experiment->add_option("--data", data_path, "CSV of users")->required();
  experiment->add_option("--model", model_path, "Weights file")->required();
  experiment->add_option("--train-data", train_data_path,
                         "CSV for percentile costs (default: --data)");
  experiment->add_option("--methods", ex_methods, "Methods, e.g. cols pcols ls-diversity")
      ->delimiter(',');
  experiment->add_option("--seeds", ex_seeds, "Generation seeds")
      ->delimiter(',')
      ->capture_default_str();
  experiment->add_option("--test-seed", ex_test_seed, "Seed of the hidden cost functions")
      ->capture_default_str();
  experiment->add_option("--k", ex_k, "Satisfaction threshold")->capture_default_str();
  experiment->add_option("--grid", ex_grid, "Override the swept values")->delimiter(',');
  experiment->add_option("--bins", ex_bins, "Distance bins for concentration_shift")
      ->capture_default_str();
  experiment->add_option("--vectors", ex_vectors,
                         "Test concentration vectors for concentration_shift")
      ->capture_default_str();
  experiment->add_option("--out", ex_out, "Output directory")->required();
  AddSearchFlags(experiment, ex);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*make_data) {
      const fs::path dir(data_out);
      DatasetSchema schema = data_kind == "adult" ? AdultLikeSchema()
                             : data_kind == "toy" ? ToySchema()
                                                  : throw InvalidArgument(
                                                        "unknown data kind '" + data_kind +
                                                        "' (valid: adult, toy)");
      auto make = [&](std::size_t rows, std::uint64_t seed) {
        return data_kind == "adult" ? GenerateAdultLike(schema, rows, seed)
                                    : GenerateToy(schema, rows, seed);
      };
      fs::create_directories(dir);
      WriteFile(dir / "schema.json", SerializeSchema(schema));
      WriteDataset(dir / "train.csv", make(data_rows, data_seed), schema);
      WriteDataset(dir / "test.csv", make(data_test_rows, data_seed + 1), schema);
      WriteManifest(dir / "manifest.json", *make_data, argc, argv, {},
                    {dir / "schema.json", dir / "train.csv", dir / "test.csv"});
      out << "wrote " << (dir / "schema.json").string() << ", train.csv (" << data_rows
          << " rows), test.csv (" << data_test_rows << " rows)\n";
      return 0;
    }

    if (*train) {
      DatasetSchema schema = LoadSchema(schema_path);
      Dataset data = LoadDataset(data_path, schema);
      if (!data.labels) throw Error("'" + data_path + "' has no label column");
      train_cfg.architecture = ParseArchitecture(arch);
      TrainReport report = TrainClassifier(data.rows, *data.labels, schema, train_cfg);
      SaveClassifier(report.classifier, train_out);
      fs::path manifest = fs::path(train_out);
      manifest += ".manifest.json";
      json extra;
      extra["train_accuracy"] = report.train_accuracy;
      extra["validation_accuracy"] = report.validation_accuracy;
      WriteManifest(manifest, *train, argc, argv, {schema_path, data_path}, {train_out}, extra);
      char buf[128];
      std::snprintf(buf, sizeof(buf), "train accuracy %.4f, validation accuracy %.4f\n",
                    report.train_accuracy, report.validation_accuracy);
      out << buf;
      return 0;
    }

    if (*generate) {
      Workspace ws = LoadWorkspace(schema_path, data_path, model_path,
                                   OptionalPath(train_data_path), gen.users);
      GenerateParams params;
      params.method = ParseMethod(gen.method);
      params.objective = ParseObjective(gen.objective);
      params.search = ToSearchConfig(gen);
      params.distribution = ParseDistribution(gen.distribution);
      params.overrides = ToOverrides(ws.schema, gen.alpha, gen.editable, gen.preferences);
      params.samples_dir = OptionalPath(gen.samples_dir);
      if (params.method != Method::kLocalSearch && params.objective != Objective::kEmc) {
        throw InvalidArgument(gen.method + " only optimizes emc");
      }
      const fs::path dir(gen_out);
      std::vector<fs::path> outputs;
      for (std::uint64_t seed : gen_seeds) {
        params.search.seed = seed;
        auto docs = Generate(ws, params);
        const fs::path file = dir / ResultFileName(params.method, params.objective, seed);
        WriteResults(file, docs);
        outputs.push_back(file);
        out << "seed " << seed << ": " << docs.size() << " users -> " << file.string() << "\n";
      }
      std::vector<fs::path> inputs{schema_path, data_path, model_path};
      if (!train_data_path.empty()) inputs.emplace_back(train_data_path);
      WriteManifest(dir / "manifest.json", *generate, argc, argv, inputs, outputs,
                    json{{"seeds", gen_seeds}, {"users", ws.ids}});
      return 0;
    }

    if (*evaluate) {
      DatasetSchema schema = LoadSchema(schema_path);
      Dataset train_rows = LoadDataset(train_data_path, schema);
      PercentileTable table = BuildPercentileTable(train_rows.rows, schema);
      std::vector<ResultDoc> docs = ReadResultDir(results_dir);
      std::set<std::uint64_t> seeds;
      for (const auto& d : docs) seeds.insert(d.seed);
      if (seeds.count(test_seed)) {
        throw InvalidArgument("test seed " + std::to_string(test_seed) +
                              " equals a generation seed; hidden costs must be independent");
      }
      EvalParams params;
      params.test_seed = test_seed;
      params.k = k;
      params.distribution = ParseDistribution(eval_distribution);
      params.overrides.alpha = eval_alpha;

      // seed -> label -> docs
      std::map<std::uint64_t, std::map<std::string, std::vector<ResultDoc>>> groups;
      for (auto& d : docs) groups[d.seed][MethodLabel(d)].push_back(d);
      const fs::path dir(eval_out);
      std::vector<fs::path> outputs;
      std::vector<std::vector<MetricRow>> per_seed;
      for (const auto& [seed, by_label] : groups) {
        std::vector<MetricRow> rows;
        for (const auto& [label, group] : by_label) {
          auto part = FlattenReport(label, Evaluate(schema, table, group, params), group);
          rows.insert(rows.end(), part.begin(), part.end());
        }
        const fs::path file = dir / ("metrics_seed" + std::to_string(seed) + ".csv");
        WriteFile(file, MetricsCsv(rows));
        outputs.push_back(file);
        per_seed.push_back(std::move(rows));
      }
      const auto mean = MeanRows(per_seed);
      const fs::path mean_file = dir / "metrics_mean.csv";
      WriteFile(mean_file, MetricsCsv(mean));
      outputs.push_back(mean_file);
      std::vector<fs::path> inputs{schema_path, train_data_path};
      for (const auto& entry : fs::directory_iterator(results_dir)) {
        if (entry.path().extension() == ".jsonl") inputs.push_back(entry.path());
      }
      WriteManifest(dir / "manifest.json", *evaluate, argc, argv, inputs, outputs,
                    json{{"seeds", std::vector<std::uint64_t>(seeds.begin(), seeds.end())},
                         {"test_seed", test_seed}});
      for (const auto& r : mean) {
        if (r.group == "all" && (r.metric == "fs_at_k" || r.metric == "coverage" ||
                                 r.metric == "pac_finite")) {
          out << r.method << " " << r.metric << " " << FormatValue(r.value, r.format) << "\n";
        }
      }
      return 0;
    }

    if (*experiment) {
      Workspace ws = LoadWorkspace(schema_path, data_path, model_path,
                                   OptionalPath(train_data_path), ex.users);
      ExperimentConfig cfg;
      cfg.kind = ParseExperimentKind(ex_kind);
      cfg.seeds = ex_seeds;
      for (const auto& m : ex_methods) cfg.methods.push_back(ParseMethodSpec(m));
      cfg.search = ToSearchConfig(ex);
      cfg.distribution = ParseDistribution(ex.distribution);
      cfg.overrides = ToOverrides(ws.schema, ex.alpha, ex.editable, ex.preferences);
      cfg.eval.test_seed = ex_test_seed;
      cfg.eval.k = ex_k;
      cfg.grid = ex_grid;
      cfg.bins = ex_bins;
      cfg.concentration_vectors = ex_vectors;
      cfg.samples_dir = OptionalPath(ex.samples_dir);
      const ExperimentReport report = RunExperiment(ws, cfg);
      const fs::path dir(ex_out);
      const fs::path file = dir / (std::string(ToString(cfg.kind)) + ".csv");
      WriteFile(file, ExperimentCsv(report));
      std::vector<fs::path> inputs{schema_path, data_path, model_path};
      if (!train_data_path.empty()) inputs.emplace_back(train_data_path);
      WriteManifest(dir / "manifest.json", *experiment, argc, argv, inputs, {file},
                    json{{"seeds", ex_seeds}, {"test_seed", ex_test_seed}, {"users", ws.ids}});
      out << report.rows.size() << " rows -> " << file.string() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace recourse::app

#include "lexopt/cli/commands.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "lexopt/cli/manifest.hpp"
#include "lexopt/cli/output_set.hpp"
#include "lexopt/cli/report.hpp"
#include "lexopt/error.hpp"
#include "lexopt/game/checkpoint.hpp"
#include "lexopt/game/trajectory_io.hpp"
#include "lexopt/info/tradeoff_io.hpp"
#include "lexopt/kin/count_table.hpp"
#include "lexopt/mc/listener_mc.hpp"

#ifndef LEXOPT_DEFAULT_DATA_DIR
#define LEXOPT_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace lexopt::cli {
namespace {

struct Invocation {
  std::vector<std::string> argv;
  std::ostream& out;
};

RunManifest base_manifest(const std::string& command, const Invocation& inv) {
  RunManifest m;
  m.command = command;
  m.argv = inv.argv;
  m.version = tool_version();
  m.timestamp = utc_timestamp();
  return m;
}

void finish(OutputSet& outputs, RunManifest manifest) {
  manifest.outputs = outputs.names();
  manifest.outputs.push_back("manifest.json");
  outputs.add("manifest.json", to_json(manifest).dump(2) + '\n');
  outputs.commit();
}

kin::CountTable load_counts(const fs::path& path, const std::string& language) {
  const std::string text = read_text_file(path);
  const auto first_line = text.substr(0, text.find('\n'));
  if (first_line.rfind("term\tcount\tmembers", 0) == 0) {
    return kin::split_polysemous_counts(kin::parse_raw_counts(text, path.string()), language);
  }
  return kin::parse_count_table(text, language, path.string());
}

std::string language_or_stem(const std::string& language, const fs::path& counts) {
  return language.empty() ? counts.stem().string() : language;
}

// "uniform" or a counts file / language id.
info::Distribution load_need(const std::string& arg, RunManifest& manifest) {
  if (arg == "uniform") return info::Distribution::uniform(kin::kNumRelatives);
  const fs::path path = resolve_counts(arg);
  manifest.inputs.push_back(digest_file(path));
  return kin::estimate_system(load_counts(path, path.stem().string())).system.need;
}

// analyze -------------------------------------------------------------------

struct AnalyzeArgs {
  std::string counts;
  std::string language;
  std::string log_base = "nats";
  std::string out;
};

void cmd_analyze(const AnalyzeArgs& a, const Invocation& inv) {
  RunManifest manifest = base_manifest("analyze", inv);
  const info::LogBase base = info::parse_log_base(a.log_base);
  const fs::path path = resolve_counts(a.counts);
  const std::string language = language_or_stem(a.language, path);
  manifest.inputs.push_back(digest_file(path));
  manifest.config = {{"language", language}, {"log_base", a.log_base}};

  const auto table = load_counts(path, language);
  const auto est = kin::estimate_system(table);
  const auto point = info::evaluate_system(est.system);

  OutputSet outputs(a.out);
  outputs.add("tradeoff.csv", "language," + info::tradeoff_csv_header(base) + '\n' + csv_field(language) +
                                  ',' + info::tradeoff_csv_row(point, base) + '\n');
  json j = info::to_json(point, base);
  j["language"] = language;
  j["words"] = est.system.word_labels;
  outputs.add("tradeoff.json", j.dump(2) + '\n');

  std::string decoder = "word,member,probability\n";
  const auto& dec = *est.system.decoder;
  for (std::size_t w = 0; w < dec.n_given(); ++w) {
    for (std::size_t u = 0; u < dec.n_out(); ++u) {
      if (dec(w, u) == 0.0) continue;
      decoder += csv_field(est.system.word_labels[w]) + ',' + est.system.object_labels[u] + ',' +
                 info::format_real(dec(w, u)) + '\n';
    }
  }
  outputs.add("decoder.csv", std::move(decoder));
  finish(outputs, std::move(manifest));
  inv.out << language << ": distance " << info::format_real(point.distance_d) << " nats, adjusted complexity "
          << info::format_real(point.adjusted_C) << " nats\n";
}

// simulate ------------------------------------------------------------------

struct SimulateArgs {
  std::string counts;
  std::string language;
  std::vector<double> rates;
  std::uint64_t population = mc::kDefaultPopulation;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;
};

void cmd_simulate(const SimulateArgs& a, const Invocation& inv) {
  RunManifest manifest = base_manifest("simulate", inv);
  for (double r : a.rates) {
    if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("flip rate " + info::format_real(r) + " is outside [0, 1]");
  }
  const fs::path path = resolve_counts(a.counts);
  const std::string language = language_or_stem(a.language, path);
  manifest.inputs.push_back(digest_file(path));
  // Worker count is excluded from the replay config: it cannot change results.
  manifest.config = {{"language", language}, {"flip_rates", a.rates}, {"population", a.population}};
  manifest.seeds = {a.seed};

  const auto est = kin::estimate_system(load_counts(path, language));
  mc::FlipConfig cfg;
  cfg.population_size = a.population;
  cfg.base_seed = a.seed;
  cfg.workers = a.workers;
  const auto summaries = mc::sweep_flip_rates(est.system, a.rates, cfg);

  OutputSet outputs(a.out);
  std::string csv = mc::summary_csv_header() + '\n';
  json arr = json::array();
  for (const auto& s : summaries) {
    csv += mc::summary_csv_row(csv_field(language), s) + '\n';
    arr.push_back(mc::to_json(language, s));
  }
  outputs.add("summary.csv", std::move(csv));
  outputs.add("summary.json", arr.dump(2) + '\n');

  std::vector<double> xs, dist, acc;
  for (const auto& s : summaries) {
    xs.push_back(s.flip_rate);
    dist.push_back(s.distance.mean);
    acc.push_back(s.accuracy.mean);
  }
  std::map<double, int> distinct;
  for (double x : xs) distinct[x] = 1;
  json fit = json::object();
  std::string fit_csv = "metric,slope,intercept,r_squared\n";
  if (distinct.size() >= 2) {
    for (const auto& [name, ys] : {std::pair{"distance", dist}, std::pair{"accuracy", acc}}) {
      const auto f = mc::fit_line(xs, ys);
      fit[name] = {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}};
      fit_csv += std::string(name) + ',' + info::format_real(f.slope) + ',' + info::format_real(f.intercept) +
                 ',' + info::format_real(f.r_squared) + '\n';
      inv.out << name << " vs flip rate: slope " << info::format_real(f.slope) << ", R^2 "
              << info::format_real(f.r_squared) << '\n';
    }
  }
  outputs.add("fit.json", fit.dump(2) + '\n');
  outputs.add("fit.csv", std::move(fit_csv));
  finish(outputs, std::move(manifest));
}

// train ---------------------------------------------------------------------

struct TrainArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string need = "uniform";
  int runs = 1;
  std::optional<int> epochs;
  std::optional<int> dataset_size;
  std::string out;
};

std::string epoch_file(int epoch) {
  std::ostringstream ss;
  ss << "epoch-" << std::setw(4) << std::setfill('0') << epoch << ".ckpt";
  return ss.str();
}

void cmd_train(const TrainArgs& a, const Invocation& inv) {
  RunManifest manifest = base_manifest("train", inv);
  game::TrainConfig cfg;
  if (!a.config.empty()) {
    manifest.inputs.push_back(digest_file(a.config));
    json j;
    try {
      j = json::parse(read_text_file(a.config));
    } catch (const json::parse_error& e) {
      throw ParseError(a.config, 0, e.what());
    }
    cfg = game::config_from_json(j);
  }
  if (a.seed) cfg.seed = *a.seed;
  if (a.epochs) cfg.epochs = *a.epochs;
  if (a.dataset_size) cfg.dataset_size = *a.dataset_size;
  cfg.validate();
  if (a.runs < 1) throw ValidationError("--runs must be >= 1");
  const auto need = load_need(a.need, manifest);
  manifest.config = game::to_json(cfg);
  manifest.config["need"] = a.need;
  manifest.config["runs"] = a.runs;

  OutputSet outputs(a.out);
  std::string trajectory = game::trajectory_csv_header() + '\n';
  for (int k = 0; k < a.runs; ++k) {
    game::TrainConfig run_cfg = cfg;
    run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(k);
    manifest.seeds.push_back(run_cfg.seed);
    const std::string run_id = "run" + std::to_string(k);
    auto sink = [&](const game::TrajectoryRecord& rec, const game::AgentParams& params) {
      outputs.add("checkpoints/" + run_id + "/" + epoch_file(rec.epoch),
                  game::serialize_checkpoint({run_cfg, rec.epoch, run_id, params}));
    };
    const auto result = game::train(run_cfg, need, sink);
    trajectory += game::trajectory_csv_rows(run_id, run_cfg.seed, result.trajectory);
    const auto& last = result.trajectory.back();
    inv.out << run_id << " (seed " << run_cfg.seed << "): epoch " << last.epoch << ", strict accuracy "
            << info::format_real(last.eval.strict_accuracy) << '\n';
  }
  outputs.add("trajectory.csv", std::move(trajectory));
  outputs.add("config.json", game::to_json(cfg).dump(2) + '\n');
  finish(outputs, std::move(manifest));
}

// eval ----------------------------------------------------------------------

struct EvalArgs {
  std::string checkpoint;
  std::string need = "uniform";
  std::optional<double> select_accuracy;
  std::string out;
};

void cmd_eval(const EvalArgs& a, const Invocation& inv) {
  RunManifest manifest = base_manifest("eval", inv);
  const fs::path root(a.checkpoint);
  std::vector<fs::path> files;
  if (fs::is_directory(root)) {
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (entry.is_regular_file() && entry.path().extension() == ".ckpt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ValidationError("no .ckpt files under '" + a.checkpoint + "'");
  } else {
    files.push_back(root);
  }
  const auto need = load_need(a.need, manifest);
  manifest.config = {{"need", a.need}};
  if (a.select_accuracy) manifest.config["select_accuracy"] = *a.select_accuracy;

  struct Evaluated {
    game::Checkpoint ckpt;
    game::Evaluation eval;
  };
  // Grouped by run id; each group ordered by epoch.
  std::map<std::string, std::vector<Evaluated>> runs;
  for (const auto& f : files) {
    const std::string bytes = read_text_file(f);
    manifest.inputs.push_back({f.string(), sha256_hex(bytes)});
    game::Checkpoint ckpt = game::deserialize_checkpoint(bytes);
    const auto graphs = game::GameGraphs::build(ckpt.config.graph_pruning);
    auto ev = game::evaluate_agents(ckpt.params, graphs, need);
    runs[ckpt.run_id].push_back({std::move(ckpt), std::move(ev)});
  }

  std::string csv = game::evaluation_csv_header() + '\n';
  json report = json::array();
  json selection = json::array();
  for (auto& [run_id, list] : runs) {
    std::stable_sort(list.begin(), list.end(),
                     [](const Evaluated& x, const Evaluated& y) { return x.ckpt.epoch < y.ckpt.epoch; });
    std::vector<const Evaluated*> chosen;
    if (a.select_accuracy) {
      std::vector<game::TrajectoryRecord> traj;
      for (const auto& e : list) traj.push_back({e.ckpt.epoch, e.eval, 0.0});
      const auto idx = game::select_checkpoint(traj, *a.select_accuracy);
      chosen.push_back(&list[idx]);
      selection.push_back({{"run_id", run_id},
                           {"epoch", list[idx].ckpt.epoch},
                           {"accuracy", list[idx].eval.average.accuracy},
                           {"target_accuracy", *a.select_accuracy}});
    } else {
      for (const auto& e : list) chosen.push_back(&e);
    }
    for (const Evaluated* e : chosen) {
      csv += game::evaluation_csv_rows(run_id, e->ckpt.epoch, e->eval);
      json per_ego = json::object();
      for (const auto& pe : e->eval.per_ego) {
        per_ego[std::string(kin::ego_name(pe.ego))] = info::to_json(pe.point);
        per_ego[std::string(kin::ego_name(pe.ego))]["strict_accuracy"] = pe.strict_accuracy;
      }
      json avg = info::to_json(e->eval.average);
      avg["strict_accuracy"] = e->eval.strict_accuracy;
      report.push_back({{"run_id", run_id}, {"epoch", e->ckpt.epoch}, {"per_ego", per_ego}, {"average", avg}});
      inv.out << run_id << " epoch " << e->ckpt.epoch << ": accuracy " << info::format_real(e->eval.average.accuracy)
              << ", strict accuracy " << info::format_real(e->eval.strict_accuracy) << '\n';
    }
  }
  OutputSet outputs(a.out);
  outputs.add("eval.csv", std::move(csv));
  outputs.add("eval.json", report.dump(2) + '\n');
  if (a.select_accuracy) outputs.add("selection.json", selection.dump(2) + '\n');
  finish(outputs, std::move(manifest));
}

// report --------------------------------------------------------------------

void cmd_report(const std::vector<std::string>& inputs, const std::string& out_file) {
  write_file_atomic(out_file, merge_reports(inputs));
}

}  // namespace

fs::path data_dir() {
  if (const char* env = std::getenv("LEXOPT_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return LEXOPT_DEFAULT_DATA_DIR;
}

fs::path resolve_counts(const std::string& arg) {
  const fs::path direct(arg);
  if (fs::is_regular_file(direct)) return direct;
  const bool is_id = !arg.empty() && arg.find_first_of("/.\\") == std::string::npos;
  if (is_id) {
    const fs::path fixture = data_dir() / "counts" / (arg + ".tsv");
    if (fs::is_regular_file(fixture)) return fixture;
  }
  throw ValidationError("cannot open counts file '" + arg + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lexicon trade-off analysis, listener simulation and kinship-game training"};
  app.name(args.empty() ? "lexopt" : args.front());
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  AnalyzeArgs analyze;
  auto* a = app.add_subcommand("analyze", "Trade-off point of a language's Bayesian naming system");
  a->add_option("--counts", analyze.counts, "Count table (TSV) or fixture language id")->required();
  a->add_option("--language", analyze.language, "Language id (default: file stem)");
  a->add_option("--log-base", analyze.log_base, "Report units")->check(CLI::IsMember({"nats", "bits"}));
  a->add_option("--out", analyze.out, "Output directory")->required();

  SimulateArgs simulate;
  std::string rates;
  auto* s = app.add_subcommand("simulate", "Flip-rate sweep over simulated listener populations");
  s->add_option("--counts", simulate.counts, "Count table (TSV) or fixture language id")->required();
  s->add_option("--language", simulate.language, "Language id (default: file stem)");
  s->add_option("--flip-rates", rates, "Comma-separated flip rates in [0, 1]")->required();
  s->add_option("--population", simulate.population, "Listeners per rate")->check(CLI::PositiveNumber);
  s->add_option("--seed", simulate.seed, "Base seed")->required();
  s->add_option("--workers", simulate.workers, "Worker threads")->check(CLI::PositiveNumber);
  s->add_option("--out", simulate.out, "Output directory")->required();

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Train speaker and listener agents on the kinship game");
  t->add_option("--config", train.config, "TrainConfig JSON (default: built-in defaults)");
  t->add_option("--seed", train.seed, "Seed of the first run (overrides the config)");
  t->add_option("--need", train.need, "Need distribution: 'uniform' or counts file / language id");
  t->add_option("--runs", train.runs, "Number of runs with consecutive seeds");
  t->add_option("--epochs", train.epochs, "Override the configured epoch count");
  t->add_option("--dataset-size", train.dataset_size, "Override the configured dataset size");
  t->add_option("--out", train.out, "Output directory")->required();

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Evaluate checkpoints");
  e->add_option("--checkpoint", eval.checkpoint, "Checkpoint file or directory")->required();
  e->add_option("--need", eval.need, "Need distribution: 'uniform' or counts file / language id");
  e->add_option("--select-accuracy", eval.select_accuracy,
                "Keep, per run, the checkpoint whose accuracy is closest to this value");
  e->add_option("--out", eval.out, "Output directory")->required();

  std::vector<std::string> report_inputs;
  std::string report_out;
  auto* r = app.add_subcommand("report", "Merge record files into one long-format CSV");
  r->add_option("--inputs", report_inputs, "Output directories or record files")->expected(0, -1);
  r->add_option("--out", report_out, "Merged CSV file")->required();

  std::vector<std::string> argv(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv.begin(), argv.end());
  const Invocation inv{args, out};
  try {
    app.parse(argv);
    if (*a) cmd_analyze(analyze, inv);
    if (*s) {
      for (const auto& field : split_csv_line(rates)) {
        try {
          std::size_t used = 0;
          simulate.rates.push_back(std::stod(field, &used));
          if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::logic_error&) {
          throw ValidationError("flip rate '" + field + "' is not a number");
        }
      }
      cmd_simulate(simulate, inv);
    }
    if (*t) cmd_train(train, inv);
    if (*e) cmd_eval(eval, inv);
    if (*r) cmd_report(report_inputs, report_out);
    return kOk;
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const ValidationError& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kFormat;
  } catch (const FormatError& ex) {
    err << "error: " << ex.what() << '\n';
    return kFormat;
  } catch (const InvariantError& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kInvariant;
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kInvariant;
  }
}

}  // namespace lexopt::cli

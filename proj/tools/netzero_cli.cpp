// netzero: command-line front end for the target-detection toolkit.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "netzero/ambition.hpp"
#include "netzero/config.hpp"
#include "netzero/corpus.hpp"
#include "netzero/hitl.hpp"
#include "netzero/llm.hpp"
#include "netzero/llm_http.hpp"
#include "netzero/rules_model.hpp"
#include "netzero/sublabels.hpp"
#include "netzero/trainer.hpp"

namespace fs = std::filesystem;
using namespace netzero;

namespace {

// Run directory: timestamp plus a short hash of the effective options, so
// separate runs never clobber each other. --run-dir pins it for scripting.
fs::path make_run_dir(const RunConfig& cfg, const std::string& run_dir_flag,
                      const std::string& command) {
  if (!run_dir_flag.empty()) {
    fs::create_directories(run_dir_flag);
    return run_dir_flag;
  }
  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", std::localtime(&now));
  std::ostringstream key;
  key << command << '|' << cfg.dataset_path.string() << '|'
      << cfg.classifier.base_model_id << '|' << cfg.classifier.seed;
  char hash[12];
  std::snprintf(hash, sizeof hash, "%08llx",
                static_cast<unsigned long long>(
                    detail::fnv1a64(key.str()) & 0xffffffffull));
  fs::path dir = cfg.output_dir / (std::string(stamp) + "-" + hash);
  fs::create_directories(dir);
  return dir;
}

std::vector<double> parse_threshold_spec(const std::string& spec) {
  // "a:b:step" inclusive grid, or a comma list
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double a, b, step;
    char c1, c2;
    std::istringstream ss(spec);
    if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
        step <= 0 || b < a)
      throw InputError("bad threshold spec '" + spec + "', want a:b:step");
    for (double t = a; t <= b + 1e-12; t += step)
      out.push_back(std::min(t, b));
    return out;
  }
  std::istringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw InputError("empty threshold spec");
  return out;
}

std::unique_ptr<TextClassifier> load_stage_model(const std::string& arg,
                                                 bool climate_stage) {
  if (arg == "rules") {
    if (climate_stage)
      return std::make_unique<RuleClimateClassifier>();
    return std::make_unique<RuleTargetClassifier>();
  }
  return LinearBowClassifier::load(arg);
}

void print_stats(const DatasetStats& st, std::ostream& os) {
  os << "count\t" << st.count << '\n'
     << "mean_len\t" << st.mean_len << '\n'
     << "std_len\t" << st.std_len << '\n'
     << "min_len\t" << st.min_len << '\n'
     << "max_len\t" << st.max_len << '\n'
     << "p25\t" << st.p25 << '\n'
     << "p75\t" << st.p75 << '\n';
  for (const auto& [label, n] : st.per_label_counts)
    os << "label_" << to_string(label) << '\t' << n << '\n';
}

std::unique_ptr<ChatClient> make_chat_client(
    const RunConfig& cfg, const std::string& mock, const Dataset& ds,
    std::unique_ptr<ChatClient>& owned_inner) {
  std::unique_ptr<ChatClient> base;
  if (mock == "gold-echo") {
    base = std::make_unique<GoldEchoChatClient>(ds);
  } else if (mock.starts_with("constant:")) {
    base = std::make_unique<ConstantChatClient>(
        mock.substr(std::string("constant:").size()));
  } else if (!mock.empty()) {
    throw InputError("unknown mock client '" + mock + "'");
  } else {
    base = std::make_unique<HttpChatClient>(cfg.llm_endpoint, cfg.llm_model,
                                            cfg.api_key());
  }
  if (cfg.cache_dir.empty()) return base;
  owned_inner = std::move(base);
  return std::make_unique<CachingChatClient>(*owned_inner,
                                             ResponseCache(cfg.cache_dir));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"net-zero and reduction target detection toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, run_dir_flag;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--run-dir", run_dir_flag, "output directory (overrides the generated one)");

  std::string dataset_flag, out_flag;
  // ingest
  auto* ingest = app.add_subcommand("ingest", "clean tracker claims into a labeled dataset");
  std::string claims_path, sublabel_path;
  size_t min_words = 5;
  ingest->add_option("--claims", claims_path, "raw claims TSV")->required();
  ingest->add_option("--sublabel-map", sublabel_path, "sub-label map TSV (default builtin)");
  ingest->add_option("--min-words", min_words, "drop shorter samples");
  ingest->add_option("--out", out_flag, "output dataset path");

  // stats
  auto* stats = app.add_subcommand("stats", "length and label statistics for a dataset");
  stats->add_option("--dataset", dataset_flag, "dataset TSV");

  // split
  auto* split = app.add_subcommand("split", "write stratified fold assignments");
  int k_flag = 0;
  split->add_option("--dataset", dataset_flag, "dataset TSV");
  split->add_option("--k", k_flag, "number of folds");
  split->add_option("--out", out_flag, "fold assignment output path");

  // train
  auto* train = app.add_subcommand("train", "fine-tune one model on a train/val split");
  train->add_option("--dataset", dataset_flag, "dataset TSV");
  train->add_option("--out", out_flag, "model output directory");

  // crossval
  auto* crossval = app.add_subcommand("crossval", "k-fold cross-validated fine-tuning");
  bool binary = false;
  crossval->add_option("--dataset", dataset_flag, "dataset TSV");
  crossval->add_option("--k", k_flag, "number of folds");
  crossval->add_flag("--binary", binary, "collapse to TARGET vs NONE");

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "hyperparameter grid over CV accuracy");
  std::vector<double> grid_lrs{1e-5, 3e-5, 5e-5};
  std::vector<int> grid_epochs{3, 5};
  std::vector<int> grid_batches{16, 32};
  std::vector<std::string> grid_bases;
  grid_cmd->add_option("--dataset", dataset_flag, "dataset TSV");
  grid_cmd->add_option("--lr", grid_lrs, "learning rates");
  grid_cmd->add_option("--epochs", grid_epochs, "epoch counts");
  grid_cmd->add_option("--batch", grid_batches, "batch sizes");
  grid_cmd->add_option("--bases", grid_bases, "base model ids");
  grid_cmd->add_option("--k", k_flag, "number of folds");

  // eval-llm
  auto* eval_llm = app.add_subcommand("eval-llm", "zero-shot chat-model baseline");
  std::string mock_flag;
  eval_llm->add_option("--dataset", dataset_flag, "dataset TSV");
  eval_llm->add_option("--mock", mock_flag, "gold-echo or constant:<token> instead of a live endpoint");

  // ambition-eval
  auto* amb = app.add_subcommand("ambition-eval", "Q&A ambition extraction accuracy");
  std::string golds_path, texts_path, mode_flag = "raw";
  double threshold_flag = 0;
  amb->add_option("--golds", golds_path, "gold values TSV")->required();
  amb->add_option("--texts", texts_path, "sample id to text TSV")->required();
  amb->add_option("--mode", mode_flag, "raw, optimal, or confidence");
  amb->add_option("--threshold", threshold_flag, "confidence threshold");

  // curve
  auto* curve_cmd = app.add_subcommand("curve", "accuracy/coverage over a threshold grid");
  std::string dimension_flag, thresholds_spec = "0:1:0.05";
  curve_cmd->add_option("--golds", golds_path, "gold values TSV")->required();
  curve_cmd->add_option("--texts", texts_path, "sample id to text TSV")->required();
  curve_cmd->add_option("--dimension", dimension_flag, "ambition dimension")->required();
  curve_cmd->add_option("--thresholds", thresholds_spec, "a:b:step or comma list");

  // analyze-corpus
  auto* analyze = app.add_subcommand("analyze-corpus", "two-stage pipeline plus yearly trend index");
  std::string corpus_flag, climate_model_flag = "rules", target_model_flag = "rules";
  std::string averaging_flag = "event";
  analyze->add_option("--corpus", corpus_flag, "directory of document files");
  analyze->add_option("--climate-model", climate_model_flag, "model directory or 'rules'");
  analyze->add_option("--target-model", target_model_flag, "model directory or 'rules'");
  analyze->add_option("--averaging", averaging_flag, "event or quarter");

  // sample-handcheck
  auto* handcheck = app.add_subcommand("sample-handcheck", "export sentences for manual review");
  size_t n_random = 237;
  uint64_t handcheck_seed = 42;
  handcheck->add_option("--corpus", corpus_flag, "directory of document files");
  handcheck->add_option("--climate-model", climate_model_flag, "model directory or 'rules'");
  handcheck->add_option("--target-model", target_model_flag, "model directory or 'rules'");
  handcheck->add_option("--n-random", n_random, "random non-target fill count");
  handcheck->add_option("--seed", handcheck_seed, "sampling seed");

  // hitl-export
  auto* hexport = app.add_subcommand("hitl-export", "export CV misclassifications for review");
  int round_flag = 1;
  hexport->add_option("--dataset", dataset_flag, "dataset TSV");
  hexport->add_option("--k", k_flag, "number of folds");
  hexport->add_option("--round", round_flag, "review round number");

  // hitl-apply
  auto* happly = app.add_subcommand("hitl-apply", "apply reviewer corrections to a dataset");
  std::string review_path;
  happly->add_option("--dataset", dataset_flag, "dataset TSV");
  happly->add_option("--review", review_path, "filled review TSV")->required();
  happly->add_option("--round", round_flag, "review round number");

  // report
  auto* report = app.add_subcommand("report", "summarize artifacts already in a run directory");
  std::string report_dir;
  report->add_option("--dir", report_dir, "run directory to summarize")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_run_config(config_path);
    if (!dataset_flag.empty()) cfg.dataset_path = dataset_flag;
    if (k_flag > 0) cfg.folds = k_flag;

    auto* cmd = app.get_subcommands().front();
    fs::path dir = make_run_dir(cfg, run_dir_flag, cmd->get_name());

    if (cmd == ingest) {
      std::ifstream is(claims_path);
      if (!is) throw IoError("cannot open claims: " + claims_path);
      auto claims = read_claims(is, ColumnMap{});
      SublabelMap map = sublabel_path.empty() ? SublabelMap::builtin()
                                              : SublabelMap::load(sublabel_path);
      Dataset ds = filter_short(claims_to_samples(claims, map), min_words);
      if (ds.empty()) throw EmptyDatasetError();
      fs::path out = out_flag.empty() ? dir / "dataset.tsv" : fs::path(out_flag);
      write_dataset(ds, out);
      print_stats(dataset_stats(ds), std::cout);
      std::cout << "wrote " << out.string() << '\n';

    } else if (cmd == stats) {
      require_file(cfg.dataset_path, "dataset");
      auto ds = read_dataset(cfg.dataset_path);
      print_stats(dataset_stats(ds), std::cout);

    } else if (cmd == split) {
      require_file(cfg.dataset_path, "dataset");
      auto ds = read_dataset(cfg.dataset_path);
      auto folds = stratified_kfold(ds, cfg.folds, cfg.classifier.seed);
      fs::path out = out_flag.empty() ? dir / "folds.tsv" : fs::path(out_flag);
      std::ofstream os(out);
      os << "id\tfold\n";
      for (int f = 0; f < cfg.folds; ++f)
        for (size_t i : folds[f].val) os << ds[i].id << '\t' << f << '\n';
      std::cout << "wrote " << out.string() << '\n';

    } else if (cmd == train) {
      require_file(cfg.dataset_path, "dataset");
      auto ds = read_dataset(cfg.dataset_path);
      auto folds = stratified_kfold(ds, cfg.folds, cfg.classifier.seed);
      Dataset train_set, val_set;
      for (size_t i : folds[0].train) train_set.push_back(ds[i]);
      for (size_t i : folds[0].val) val_set.push_back(ds[i]);
      auto backend = make_backend(cfg.classifier.base_model_id);
      auto model = fine_tune(train_set, val_set, cfg.classifier, *backend);
      fs::path out = out_flag.empty() ? dir / "model" : fs::path(out_flag);
      fs::create_directories(out);
      model->save(out);
      std::cout << "saved model to " << out.string() << '\n';

    } else if (cmd == crossval) {
      require_file(cfg.dataset_path, "dataset");
      auto ds = read_dataset(cfg.dataset_path);
      auto backend = make_backend(cfg.classifier.base_model_id);
      CVReport rep;
      if (binary) {
        ClassifierConfig bin_cfg = cfg.classifier;
        bin_cfg.num_labels = 2;
        bin_cfg.label_names.clear();
        rep = cross_validate(to_binary(ds), bin_cfg, *backend, cfg.folds);
      } else {
        rep = cross_validate(ds, cfg.classifier, *backend, cfg.folds);
      }
      std::ofstream os(dir / "cv_report.tsv");
      write_cv_report(rep, os);
      write_cv_report(rep, std::cout);
      std::cout << "wrote " << (dir / "cv_report.tsv").string() << '\n';

    } else if (cmd == grid_cmd) {
      require_file(cfg.dataset_path, "dataset");
      auto ds = read_dataset(cfg.dataset_path);
      if (grid_bases.empty()) grid_bases = {cfg.classifier.base_model_id};
      GridAxes axes{grid_lrs, grid_epochs, grid_batches};
      auto ex = to_examples(ds);
      auto rows = grid_search(ex, axes, grid_bases, cfg.classifier, cfg.folds);
      std::ofstream os(dir / "grid_report.tsv");
      write_grid_report(rows, os);
      write_grid_report(rows, std::cout);
      std::cout << "wrote " << (dir / "grid_report.tsv").string() << '\n';

    } else if (cmd == eval_llm) {
      require_file(cfg.dataset_path, "dataset");
      auto ds = read_dataset(cfg.dataset_path);
      std::unique_ptr<ChatClient> inner;
      auto client = make_chat_client(cfg, mock_flag, ds, inner);
      auto res = evaluate_zero_shot(ds, *client);
      std::ofstream os(dir / "llm_report.tsv");
      os << "accuracy\t" << res.metrics.accuracy << '\n'
         << "f1\t" << res.metrics.f1 << '\n'
         << "unparseable\t" << res.unparseable << '\n';
      print_confusion(res.confusion,
                      {"NET_ZERO", "REDUCTION", "NONE"},
                      {"NET_ZERO", "REDUCTION", "NONE", "UNPARSEABLE"}, os);
      std::cout << "accuracy " << res.metrics.accuracy << ", unparseable "
                << res.unparseable << '\n'
                << "wrote " << (dir / "llm_report.tsv").string() << '\n';

    } else if (cmd == amb) {
      auto golds = read_ambition_golds(golds_path);
      auto texts = read_id_text_map(texts_path);
      EvalMode mode = EvalMode::raw();
      if (mode_flag == "optimal") mode = EvalMode::optimal();
      else if (mode_flag == "confidence") mode = EvalMode::confidence(threshold_flag);
      else if (mode_flag != "raw") throw InputError("unknown mode '" + mode_flag + "'");
      HeuristicQaBackend backend;
      std::cout << "dimension\tmode\taccuracy\tcoverage\tn\n";
      for (auto d : kAllDimensions) {
        std::vector<AmbitionGold> subset;
        for (const auto& g : golds)
          if (g.dimension == d) subset.push_back(g);
        if (subset.empty()) continue;
        auto r = evaluate_dimension(subset, texts, backend, mode);
        std::cout << to_string(d) << '\t' << to_string(mode) << '\t'
                  << r.accuracy << '\t' << r.coverage << '\t' << subset.size()
                  << '\n';
      }

    } else if (cmd == curve_cmd) {
      auto golds = read_ambition_golds(golds_path);
      auto texts = read_id_text_map(texts_path);
      auto d = dimension_from_string(dimension_flag);
      if (!d) throw InputError("unknown dimension '" + dimension_flag + "'");
      std::vector<AmbitionGold> subset;
      for (const auto& g : golds)
        if (g.dimension == *d) subset.push_back(g);
      if (subset.empty())
        throw InputError("no golds for dimension " + dimension_flag);
      HeuristicQaBackend backend;
      auto points = accuracy_coverage_curve(subset, texts, backend,
                                            parse_threshold_spec(thresholds_spec));
      std::ofstream os(dir / ("curve_" + dimension_flag + ".tsv"));
      write_curve(points, os);
      write_curve(points, std::cout);
      std::cout << "wrote " << (dir / ("curve_" + dimension_flag + ".tsv")).string() << '\n';

    } else if (cmd == analyze || cmd == handcheck) {
      fs::path corpus_dir = corpus_flag.empty() ? cfg.corpus_dir : fs::path(corpus_flag);
      require_dir(corpus_dir, "corpus");
      auto docs = load_corpus(corpus_dir);
      if (docs.empty()) throw InputError("no documents in " + corpus_dir.string());
      auto climate = load_stage_model(climate_model_flag, true);
      auto target = load_stage_model(target_model_flag, false);

      std::vector<SentenceRecord> all_records;
      std::vector<DatedEventShare> events;
      for (const auto& doc : docs) {
        auto records = two_stage_classify(doc.doc_id, split_sentences(doc.body),
                                          *climate, *target);
        events.push_back({event_share(records), doc.quarter});
        all_records.insert(all_records.end(), records.begin(), records.end());
      }

      if (cmd == analyze) {
        auto mode = averaging_flag == "quarter" ? YearlyAveraging::QuarterWeighted
                    : averaging_flag == "event" ? YearlyAveraging::EventWeighted
                                                : throw InputError(
                                                      "averaging must be event or quarter");
        auto idx = yearly_index(events, mode);
        emit_timeseries(idx, dir / "timeseries.tsv", cfg.with_plot);
        std::ofstream os(dir / "event_shares.tsv");
        os << "doc_id\tshare_net_zero\tshare_reduction\tn_sentences\n";
        os << std::setprecision(17);
        for (const auto& e : events)
          os << e.share.doc_id << '\t' << e.share.share_net_zero << '\t'
             << e.share.share_reduction << '\t' << e.share.n_sentences << '\n';
        std::cout << "year\tnet_zero\treduction\tn_events\n";
        for (const auto& y : idx)
          std::cout << y.year << '\t' << y.mean_share_net_zero << '\t'
                    << y.mean_share_reduction << '\t' << y.n_events << '\n';
        std::cout << "wrote " << (dir / "timeseries.tsv").string() << '\n';
      } else {
        auto sample = sample_for_handcheck(all_records, n_random, handcheck_seed);
        write_handcheck_file(sample, dir / "handcheck.tsv");
        std::cout << "sampled " << sample.size() << " sentences\n"
                  << "wrote " << (dir / "handcheck.tsv").string() << '\n';
      }

    } else if (cmd == hexport) {
      require_file(cfg.dataset_path, "dataset");
      auto ds = read_dataset(cfg.dataset_path);
      auto backend = make_backend(cfg.classifier.base_model_id);
      auto cv = cross_validate(ds, cfg.classifier, *backend, cfg.folds);
      auto items = collect_misclassifications(cv, ds, round_flag);
      write_review_file(items, dir / "review.tsv");
      std::cout << "queued " << items.size() << " samples for review\n"
                << "wrote " << (dir / "review.tsv").string() << '\n';

    } else if (cmd == happly) {
      require_file(cfg.dataset_path, "dataset");
      require_file(review_path, "review file");
      auto ds = read_dataset(cfg.dataset_path);
      auto items = read_review_file(fs::path(review_path));
      auto out = apply_corrections(ds, items, round_flag);
      write_dataset(out.dataset, dir / "dataset.tsv");
      if (!out.excluded.empty())
        write_exclusions(out.excluded, dir / "exclusions.txt");
      for (const auto& w : out.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << "applied " << out.applied << " corrections, excluded "
                << out.excluded.size() << '\n'
                << "wrote " << (dir / "dataset.tsv").string() << '\n';

    } else if (cmd == report) {
      // aggregation only; missing artifacts are simply not listed
      require_dir(report_dir, "run directory");
      bool any = false;
      for (const char* name : {"cv_report.tsv", "grid_report.tsv",
                               "llm_report.tsv", "timeseries.tsv",
                               "event_shares.tsv", "review.tsv",
                               "exclusions.txt", "handcheck.tsv"}) {
        fs::path p = fs::path(report_dir) / name;
        if (!fs::exists(p)) continue;
        any = true;
        std::cout << "== " << name << " ==\n";
        std::ifstream is(p);
        std::string line;
        for (int i = 0; i < 12 && std::getline(is, line); ++i)
          std::cout << line << '\n';
        std::cout << '\n';
      }
      for (const auto& entry : fs::directory_iterator(report_dir)) {
        auto fname = entry.path().filename().string();
        if (fname.starts_with("curve_") && fname.ends_with(".tsv")) {
          any = true;
          std::cout << "== " << fname << " ==\n";
          std::ifstream is(entry.path());
          std::string line;
          while (std::getline(is, line)) std::cout << line << '\n';
          std::cout << '\n';
        }
      }
      if (!any) std::cout << "no artifacts in " << report_dir << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": " << nlohmann::json(std::string(e.what())).dump()
              << "}\n";
    return 1;
  }
}

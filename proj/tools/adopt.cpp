// adopt: score study corpora, render the comparison tables, generate
// synthetic corpora, run the live reflective-writing service and check the
// build against independent references.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "adoption/corpus.hpp"
#include "adoption/harness.hpp"
#include "adoption/report.hpp"
#include "adoption/service/http_api.hpp"
#include "adoption/service/session_service.hpp"
#include "adoption/synth.hpp"
#include "selftest.hpp"

namespace {

using namespace adoption;

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kBadInput = 2,
  kDegenerate = 3,
  kProvider = 4,
};

struct ResourceOptions {
  std::string lexicon_dir;
  std::string provider = "fallback";
  std::string endpoint;
  std::size_t dimension = 768;
  int timeout_ms = 5000;
  bool no_fallback = false;
};

void add_resource_options(CLI::App* cmd, ResourceOptions& o) {
  cmd->add_option("--lexicon-dir", o.lexicon_dir, "Directory with replacement data files")
      ->envname("ADOPT_LEXICON_DIR");
  cmd->add_option("--provider", o.provider, "Embedding provider")
      ->check(CLI::IsMember({"fallback", "remote"}))
      ->envname("ADOPT_PROVIDER");
  cmd->add_option("--endpoint", o.endpoint, "Remote embedding endpoint, http://host:port/path")
      ->envname("ADOPT_EMBEDDING_ENDPOINT");
  cmd->add_option("--dimension", o.dimension, "Remote embedding dimension")->envname("ADOPT_EMBEDDING_DIM");
  cmd->add_option("--timeout-ms", o.timeout_ms, "Remote embedding timeout")->envname("ADOPT_EMBEDDING_TIMEOUT_MS");
  cmd->add_flag("--no-fallback", o.no_fallback, "Do not fall back to the hashing embedder when the remote fails");
}

std::shared_ptr<const metrics::Scorer> make_scorer(const ResourceOptions& o) {
  std::shared_ptr<const Analyzer> analyzer = Analyzer::builtin();
  std::shared_ptr<const sentiment::SentimentLexicon> lexicon = sentiment::SentimentLexicon::builtin();
  if (!o.lexicon_dir.empty()) {
    analyzer = Analyzer::load(o.lexicon_dir);
    lexicon = std::make_shared<const sentiment::SentimentLexicon>(
        sentiment::SentimentLexicon::load(std::filesystem::path(o.lexicon_dir) / "sentiment.csv"));
  }
  auto hashing = std::make_shared<const embed::HashingProvider>();
  std::shared_ptr<const embed::EmbeddingProvider> provider = hashing;
  std::shared_ptr<const embed::EmbeddingProvider> fallback;
  if (o.provider == "remote" || !o.endpoint.empty()) {
    if (o.endpoint.empty()) throw CLI::ValidationError("--provider remote needs --endpoint");
    embed::RemoteConfig config;
    config.endpoint = o.endpoint;
    config.dimension = o.dimension;
    config.timeout = std::chrono::milliseconds(o.timeout_ms);
    provider = std::make_shared<const embed::CachingProvider>(std::make_shared<const embed::RemoteProvider>(config),
                                                              4096);
    if (!o.no_fallback) fallback = hashing;
  }
  return std::make_shared<const metrics::Scorer>(analyzer, lexicon, provider, fallback);
}

harness::ReportFormat report_format(const std::string& s) {
  return s == "csv" ? harness::ReportFormat::kCsv : harness::ReportFormat::kMarkdown;
}

void write_output(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

struct ReportOptions {
  std::string out;
  std::string format = "md";
  bool allow_unpaired = false;
  bool welch = false;
};

void add_report_options(CLI::App* cmd, ReportOptions& o) {
  cmd->add_option("-o,--out", o.out, "Report file (default stdout)");
  cmd->add_option("--report-format", o.format, "Report format")->check(CLI::IsMember({"md", "csv"}));
  cmd->add_flag("--allow-unpaired", o.allow_unpaired,
                "Drop participants without one AI and one no-AI trial instead of failing");
  cmd->add_flag("--welch", o.welch, "Welch instead of pooled-variance independent tests");
}

harness::AnalysisOptions analysis_options(const ReportOptions& o) {
  return {o.allow_unpaired, o.welch ? stats::Variance::kWelch : stats::Variance::kPooled};
}

int run_score(const std::string& corpus, const std::string& format, const std::string& scored_out, std::size_t threads,
              const ResourceOptions& res, const ReportOptions& rep) {
  const auto fmt = format.empty() ? harness::guess_format(corpus) : *harness::parse_corpus_format(format);
  const auto records = harness::ingest(corpus, fmt);
  const auto scorer = make_scorer(res);
  const auto scored = harness::score_corpus(records, *scorer, threads);
  for (const auto& f : scored.failures) {
    std::cerr << "scoring failed for " << f.participant_id << " (record " << f.index + 1 << "): " << f.message << "\n";
  }
  if (!scored_out.empty()) write_output(scored_out, harness::write_scored(scored.scored));
  const auto report = harness::analyze(scored.scored, analysis_options(rep), scored.failures.size());
  write_output(rep.out, harness::render_report(report, report_format(rep.format)));
  return scored.failures.empty() ? kOk : kProvider;
}

int run_tables(const std::string& scored_path, const ReportOptions& rep) {
  const auto scored = harness::load_scored(scored_path);
  const auto report = harness::analyze(scored, analysis_options(rep));
  write_output(rep.out, harness::render_report(report, report_format(rep.format)));
  return kOk;
}

int run_serve(const std::string& listen, const std::string& data_dir, int debounce_ms, std::size_t threads,
              const ResourceOptions& res) {
  // Handle termination signals on a dedicated thread.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::ServiceConfig config;
  config.data_dir = data_dir;
  config.debounce = std::chrono::milliseconds(debounce_ms);
  service::SessionService sessions(config, make_scorer(res));
  service::HttpOptions http_options;
  http_options.worker_threads = threads;
  service::HttpServer server(sessions, http_options);

  const auto [host, port] = service::parse_listen_address(listen);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot listen on " << listen << "\n";
    return kUsage;
  }
  std::cout << "listening on " << host << ":" << bound << std::endl;

  std::thread waiter([&server, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  const bool ok = server.run();
  // run() also returns on a listener failure; wake the waiter either way.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return ok ? kOk : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measure adoption of AI suggestions in written responses"};
  app.require_subcommand(1);

  ResourceOptions resources;
  ReportOptions report;

  auto* score = app.add_subcommand("score", "Score a study corpus and print the comparison tables");
  std::string corpus_path, corpus_format, scored_out;
  std::size_t threads = 0;
  score->add_option("corpus", corpus_path, "Corpus file (CSV or JSONL)")->required()->check(CLI::ExistingFile);
  score->add_option("--format", corpus_format, "Corpus format (default: from extension)")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  score->add_option("--scored", scored_out, "Also write per-trial scores as JSONL");
  score->add_option("--threads", threads, "Scoring threads (0 = all cores)");
  add_resource_options(score, resources);
  add_report_options(score, report);

  auto* tables = app.add_subcommand("tables", "Render the comparison tables from a scored JSONL file");
  std::string scored_in;
  tables->add_option("scored", scored_in, "Scored JSONL from `adopt score --scored`")
      ->required()
      ->check(CLI::ExistingFile);
  add_report_options(tables, report);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with a planted adoption rate");
  harness::SynthConfig synth_config;
  std::string synth_out, synth_format = "csv";
  synth->add_option("--n", synth_config.participants, "Participants")->check(CLI::PositiveNumber);
  synth->add_option("--adoption", synth_config.adoption, "Fraction of suggestion copied in AI trials")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--no-ai-adoption", synth_config.no_ai_adoption, "Same for no-AI trials")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--seed", synth_config.seed, "Random seed");
  synth->add_option("--effort-shift", synth_config.effort_shift, "Added to the Effort rating of AI trials");
  synth->add_option("-o,--out", synth_out, "Output file (default stdout)");
  synth->add_option("--format", synth_format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));

  auto* serve = app.add_subcommand("serve", "Run the live reflective-writing service");
  std::string listen = "127.0.0.1:8080", data_dir = "sessions";
  int debounce_ms = 500;
  std::size_t http_threads = 64;
  serve->add_option("--listen", listen, "host:port (port 0 picks a free port)")->envname("ADOPT_LISTEN");
  serve->add_option("--data-dir", data_dir, "Session event logs")->envname("ADOPT_DATA_DIR");
  serve->add_option("--debounce-ms", debounce_ms, "Draft update coalescing window")
      ->check(CLI::NonNegativeNumber)
      ->envname("ADOPT_DEBOUNCE_MS");
  serve->add_option("--http-threads", http_threads, "HTTP worker threads")->check(CLI::PositiveNumber);
  add_resource_options(serve, resources);

  auto* selftest = app.add_subcommand("selftest", "Check the statistics and metrics against independent references");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*score) return run_score(corpus_path, corpus_format, scored_out, threads, resources, report);
    if (*tables) return run_tables(scored_in, report);
    if (*synth) {
      const auto fmt = *harness::parse_corpus_format(synth_format);
      write_output(synth_out, harness::write_corpus(harness::synthesize(synth_config), fmt));
      return kOk;
    }
    if (*selftest) return tools::run_selftest();
    if (*serve) return run_serve(listen, data_dir, debounce_ms, http_threads, resources);
  } catch (const text::DataFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const harness::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const harness::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const harness::DuplicateTrial& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const harness::UnpairedParticipant& e) {
    std::cerr << "error: " << e.what() << " (use --allow-unpaired to drop them)\n";
    return kDegenerate;
  } catch (const stats::DegenerateSample& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDegenerate;
  } catch (const embed::ProviderUnavailable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProvider;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

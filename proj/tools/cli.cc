// Copyright 2026 The mxsem Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "httplib.h"
#include "mxsem/error.h"
#include "mxsem/evaluation.h"
#include "mxsem/lexicon.h"
#include "mxsem/pipeline.h"
#include "mxsem/qa.h"
#include "mxsem/records.h"
#include "mxsem/rules.h"
#include "mxsem/semantics.h"

namespace mxsem::cli {
namespace {

// Opens `path` for reading or reports why not.
std::optional<std::ifstream> OpenInput(const std::string& path, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  return in;
}

void PrintProblems(const ValidationError& e, const std::string& what, std::ostream& err) {
  for (const std::string& p : e.problems()) err << "error: " << what << ": " << p << "\n";
}

std::optional<CompiledLexicon> LoadLexicon(const std::string& path, std::ostream& err) {
  auto in = OpenInput(path, err);
  if (!in) return std::nullopt;
  try {
    return CompileLexicon(ParseLexicon(*in));
  } catch (const ValidationError& e) {
    PrintProblems(e, path, err);
  }
  return std::nullopt;
}

}  // namespace

int CompileDict(const CompileDictArgs& args, std::ostream& out, std::ostream& err) {
  auto lexicon = LoadLexicon(args.dict, err);
  if (!lexicon) return kValidationError;

  std::map<SemanticType, std::size_t> per_type;
  for (const LexiconConcept& c : lexicon->concepts()) ++per_type[c.sem_type];
  if (lexicon->empty()) err << "warning: " << args.dict << " defines no concepts\n";

  if (!args.output.empty()) {
    std::ofstream file(args.output);
    if (!file) {
      err << "error: cannot write " << args.output << "\n";
      return kValidationError;
    }
    file << "# mxsem compiled lexicon v1\n";
    lexicon->WriteCanonical(file);
  }

  out << lexicon->concepts().size() << " concepts";
  bool first = true;
  for (SemanticType t : {SemanticType::kComponent, SemanticType::kAction,
                         SemanticType::kObservation, SemanticType::kLocation}) {
    out << (first ? " (" : ", ") << ToString(t) << ": " << per_type[t];
    first = false;
  }
  out << ")\n";
  return kSuccess;
}

int Extract(const ExtractArgs& args, std::ostream& out, std::ostream& err) {
  const auto mode = ParsePipelineMode(args.mode);
  if (!mode) {
    err << "error: unknown mode \"" << args.mode << "\"\n";
    return kValidationError;
  }
  if (args.format != "jsonl" && args.format != "ntriples") {
    err << "error: unknown format \"" << args.format << "\"\n";
    return kValidationError;
  }
  if (args.k < 0) {
    err << "error: --k must be non-negative\n";
    return kValidationError;
  }

  auto lexicon = LoadLexicon(args.dict, err);
  if (!lexicon) return kValidationError;

  PipelineOptions options;
  options.mode = *mode;
  if (!args.rules_config.empty()) {
    auto in = OpenInput(args.rules_config, err);
    if (!in) return kValidationError;
    try {
      options.rules = LoadRuleConfig(*in);
    } catch (const ParseError& e) {
      err << "error: " << args.rules_config << ": " << e.what() << "\n";
      return kValidationError;
    }
  }
  options.rules.k = static_cast<std::size_t>(args.k);
  options.qa.score_floor = args.score_floor;

  std::unique_ptr<QaBackend> backend;
  if (*mode == PipelineMode::kQa) {
    std::string endpoint = args.qa_endpoint;
    if (endpoint.empty()) {
      if (const char* env = std::getenv("MXSEM_QA_ENDPOINT")) endpoint = env;
    }
    if (!args.qa_mock.empty()) {
      auto in = OpenInput(args.qa_mock, err);
      if (!in) return kValidationError;
      auto mock = std::make_unique<MockQaBackend>();
      try {
        mock->Load(*in);
      } catch (const ParseError& e) {
        err << "error: " << args.qa_mock << ": " << e.what() << "\n";
        return kValidationError;
      }
      backend = std::move(mock);
    } else if (!endpoint.empty()) {
      auto http = std::make_unique<HttpQaBackend>(endpoint);
      if (!http->Healthy()) {
        err << "error: QA endpoint " << endpoint << " is not available\n";
        return kBackendUnavailable;
      }
      backend = std::move(http);
    } else {
      err << "error: qa mode needs --qa-endpoint, MXSEM_QA_ENDPOINT or --qa-mock\n";
      return kValidationError;
    }
  }

  auto input = OpenInput(args.input, err);
  if (!input) return kValidationError;
  RecordBatch batch = ReadRecords(*input);
  for (const ParseError& e : batch.errors) {
    err << "warning: " << args.input << ": " << e.what() << "; record skipped\n";
  }

  const Pipeline pipeline(*lexicon, options, backend.get());
  const std::vector<RecordResult> results = pipeline.RunAll(batch.records, args.threads);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!args.output.empty()) {
    file.open(args.output);
    if (!file) {
      err << "error: cannot write " << args.output << "\n";
      return kValidationError;
    }
    sink = &file;
  }
  std::ofstream mentions_file;
  if (!args.mentions.empty()) {
    mentions_file.open(args.mentions);
    if (!mentions_file) {
      err << "error: cannot write " << args.mentions << "\n";
      return kValidationError;
    }
  }

  for (const RecordResult& r : results) {
    for (const SentenceResult& s : r.sentences) {
      for (const std::string& d : s.diagnostics) {
        err << "record " << r.record.record_id << " sentence " << s.sentence.index
            << ": " << d << "\n";
      }
      if (mentions_file.is_open()) mentions_file << SerializePredictionLine(r, s) << "\n";
    }
    const MaintenanceRecordInstance inst = BuildRecordInstance(r);
    if (args.format == "ntriples") {
      *sink << SerializeNTriples(inst);
    } else {
      *sink << SerializeJsonLine(inst) << "\n";
    }
  }
  sink->flush();
  return batch.errors.empty() ? kSuccess : kPartial;
}

int Evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  DiceKind dice_kind;
  if (args.dice_kind == "tokens") {
    dice_kind = DiceKind::kTokens;
  } else if (args.dice_kind == "bigrams") {
    dice_kind = DiceKind::kCharBigrams;
  } else {
    err << "error: unknown --dice-kind \"" << args.dice_kind << "\"\n";
    return kValidationError;
  }
  if (args.match != "strict" && args.match != "fuzzy") {
    err << "error: --match must be strict or fuzzy\n";
    return kValidationError;
  }
  if (!(args.dice >= 0.0 && args.dice <= 1.0)) {
    err << "error: --dice must lie in [0, 1]\n";
    return kValidationError;
  }

  AnnotatedCorpus gold;
  AnnotatedCorpus predicted;
  for (auto [path, corpus] : {std::pair{&args.gold, &gold}, {&args.predicted, &predicted}}) {
    auto in = OpenInput(*path, err);
    if (!in) return kValidationError;
    try {
      *corpus = ReadAnnotations(*in);
    } catch (const ParseError& e) {
      err << "error: " << *path << ": " << e.what() << "\n";
      return kValidationError;
    }
  }

  std::vector<EvalReport> reports;
  try {
    if (args.sweep) {
      const std::vector<double> thresholds = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
      reports = Sweep(gold, predicted, thresholds, dice_kind);
    } else if (args.match == "fuzzy") {
      reports.push_back(Score(gold, predicted, MatchMode::Fuzzy(args.dice, dice_kind)));
    } else {
      reports.push_back(Score(gold, predicted, MatchMode::Strict()));
    }
  } catch (const ValidationError& e) {
    PrintProblems(e, args.predicted, err);
    return kValidationError;
  }

  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i > 0) out << "\n";
    out << ReportTable(reports[i]);
  }
  if (!args.output.empty()) {
    std::ofstream file(args.output);
    if (!file) {
      err << "error: cannot write " << args.output << "\n";
      return kValidationError;
    }
    file << (reports.size() == 1 ? ReportToJson(reports.front()) : ReportsToJson(reports))
         << "\n";
  }
  return kSuccess;
}

int ServeMock(const std::string& table, const std::string& host, int port,
              std::ostream& err) {
  auto in = OpenInput(table, err);
  if (!in) return kValidationError;
  MockQaBackend mock;
  try {
    mock.Load(*in);
  } catch (const ParseError& e) {
    err << "error: " << table << ": " << e.what() << "\n";
    return kValidationError;
  }
  httplib::Server server;
  server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });
  server.Post("/v1/answer", [&](const httplib::Request& req, httplib::Response& res) {
    QaQuery query;
    try {
      query = DecodeQaRequest(req.body);
    } catch (const ParseError& e) {
      res.status = 400;
      res.set_content(e.what(), "text/plain");
      return;
    }
    res.set_content(EncodeQaResponse(mock.Answer(query)), "application/json");
  });
  err << "serving mock QA on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    err << "error: cannot bind " << host << ":" << port << "\n";
    return kBackendUnavailable;
  }
  return kSuccess;
}

int Run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entity and relation extraction for maintenance records", "mxsem"};
  app.require_subcommand(1);

  CompileDictArgs compile;
  auto* compile_cmd = app.add_subcommand("compile-dict", "Validate and compile a lexicon");
  compile_cmd->add_option("--dict,input", compile.dict, "Lexicon source (TSV)")->required();
  compile_cmd->add_option("--output,-o", compile.output, "Compiled lexicon output");

  ExtractArgs extract;
  auto* extract_cmd = app.add_subcommand("extract", "Run an extraction pipeline over records");
  extract_cmd->add_option("--dict", extract.dict, "Lexicon source (TSV)")->required();
  extract_cmd->add_option("--input", extract.input, "Records (JSON Lines)")->required();
  extract_cmd->add_option("--output,-o", extract.output, "Output file (default stdout)");
  extract_cmd->add_option("--mentions", extract.mentions, "Per-sentence predictions (JSON Lines)");
  extract_cmd->add_option("--mode", extract.mode, "base | rules | qa")
      ->check(CLI::IsMember({"base", "rules", "qa"}));
  extract_cmd->add_option("--k", extract.k, "Maximum character gap between mentions");
  extract_cmd->add_option("--format", extract.format, "jsonl | ntriples")
      ->check(CLI::IsMember({"jsonl", "ntriples"}));
  extract_cmd->add_option("--qa-endpoint", extract.qa_endpoint, "QA service base URL");
  extract_cmd->add_option("--qa-mock", extract.qa_mock, "Mock QA answer table (JSON Lines)");
  extract_cmd->add_option("--rules-config", extract.rules_config, "Rule configuration (JSON)");
  extract_cmd->add_option("--score-floor", extract.score_floor, "Minimum QA answer score");
  extract_cmd->add_option("--threads", extract.threads, "Records processed in parallel");

  EvaluateArgs evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score predictions against gold annotations");
  evaluate_cmd->add_option("--gold", evaluate.gold, "Gold annotations (JSON Lines)")->required();
  evaluate_cmd->add_option("--predicted", evaluate.predicted, "Predictions (JSON Lines)")
      ->required();
  evaluate_cmd->add_option("--match", evaluate.match, "strict | fuzzy")
      ->check(CLI::IsMember({"strict", "fuzzy"}));
  evaluate_cmd->add_option("--dice", evaluate.dice, "Fuzzy Dice threshold");
  evaluate_cmd->add_flag("--sweep", evaluate.sweep, "Thresholds 0.5 to 1.0 plus strict");
  evaluate_cmd->add_option("--dice-kind", evaluate.dice_kind, "tokens | bigrams")
      ->check(CLI::IsMember({"tokens", "bigrams"}));
  evaluate_cmd->add_option("--output,-o", evaluate.output, "JSON report file");

  std::string mock_table;
  std::string host = "127.0.0.1";
  int port = 8765;
  auto* serve_cmd = app.add_subcommand("serve-mock", "Serve the QA wire protocol from a mock table");
  serve_cmd->add_option("--qa-mock", mock_table, "Mock QA answer table (JSON Lines)")->required();
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--port", port, "Bind port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  if (*compile_cmd) return CompileDict(compile, out, err);
  if (*extract_cmd) return Extract(extract, out, err);
  if (*evaluate_cmd) return Evaluate(evaluate, out, err);
  if (*serve_cmd) return ServeMock(mock_table, host, port, err);
  return kValidationError;
}

}  // namespace mxsem::cli

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

#ifndef MXSEM_TOOLS_CLI_H_
#define MXSEM_TOOLS_CLI_H_

#include <optional>
#include <ostream>
#include <string>

namespace mxsem::cli {

// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kPartial = 1,             // some input lines were skipped
  kValidationError = 2,
  kBackendUnavailable = 3,
};

struct CompileDictArgs {
  std::string dict;
  std::string output;  // empty: no file written
};

struct ExtractArgs {
  std::string dict;
  std::string input;
  std::string output;    // empty: standard output
  std::string mentions;  // optional per-sentence prediction file
  std::string mode = "rules";
  long long k = 10;
  std::string format = "jsonl";
  std::string qa_endpoint;
  std::string qa_mock;
  std::string rules_config;
  double score_floor = 0.10;
  std::size_t threads = 1;
};

struct EvaluateArgs {
  std::string gold;
  std::string predicted;
  std::string match = "strict";
  double dice = 0.5;
  bool sweep = false;
  std::string dice_kind = "tokens";
  std::string output;  // JSON report; empty: none
};

int CompileDict(const CompileDictArgs& args, std::ostream& out, std::ostream& err);
int Extract(const ExtractArgs& args, std::ostream& out, std::ostream& err);
int Evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);

// Serves the QA wire protocol from a mock answer table until interrupted.
int ServeMock(const std::string& table, const std::string& host, int port,
              std::ostream& err);

// Parses argv and dispatches to a subcommand.
int Run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mxsem::cli

#endif  // MXSEM_TOOLS_CLI_H_

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

#ifndef MXSEM_PIPELINE_H_
#define MXSEM_PIPELINE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mxsem/corpus.h"
#include "mxsem/evaluation.h"
#include "mxsem/lexicon.h"
#include "mxsem/mention.h"
#include "mxsem/qa.h"
#include "mxsem/rules.h"
#include "mxsem/semantics.h"

namespace mxsem {

enum class PipelineMode { kBase, kRules, kQa };

std::string_view ToString(PipelineMode mode);
std::optional<PipelineMode> ParsePipelineMode(std::string_view name);

struct SentenceResult {
  Sentence sentence;
  Extraction extraction;
  std::vector<std::string> diagnostics;
};

struct RecordResult {
  MaintenanceRecordDoc record;
  std::vector<SentenceResult> sentences;
};

struct PipelineOptions {
  PipelineMode mode = PipelineMode::kRules;
  RuleConfig rules;
  QaOptions qa;
};

// Runs one extraction approach over records. The lexicon and backend must
// outlive the pipeline; `backend` is required in kQa mode only.
class Pipeline {
 public:
  Pipeline(const CompiledLexicon& lexicon, PipelineOptions options,
           QaBackend* backend = nullptr);

  Extraction RunSentence(const Sentence& sentence,
                         std::vector<std::string>* diagnostics = nullptr) const;
  RecordResult Run(const MaintenanceRecordDoc& record) const;

  // Runs records on up to `threads` workers; results keep input order.
  std::vector<RecordResult> RunAll(const std::vector<MaintenanceRecordDoc>& records,
                                   std::size_t threads = 1) const;

  const PipelineOptions& options() const { return options_; }

 private:
  const CompiledLexicon& lexicon_;
  PipelineOptions options_;
  QaBackend* backend_;
};

// "<record_id>#<sentence index>", the key evaluation aligns on.
std::string SentenceId(std::string_view record_id, std::size_t index);

MaintenanceRecordInstance BuildRecordInstance(const RecordResult& result);

// Prediction-file line for one sentence (no trailing newline):
// {"sentence_id","text","entities":[...],"relations":[...]}.
std::string SerializePredictionLine(const RecordResult& record,
                                    const SentenceResult& sentence);

// The same sentence as evaluation input.
AnnotatedSentence ToAnnotatedSentence(const RecordResult& record,
                                      const SentenceResult& sentence);

}  // namespace mxsem

#endif  // MXSEM_PIPELINE_H_

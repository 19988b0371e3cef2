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

#include "mxsem/pipeline.h"

#include <atomic>
#include <thread>

#include "json.hpp"
#include "mxsem/error.h"

namespace mxsem {

std::string_view ToString(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::kBase: return "base";
    case PipelineMode::kRules: return "rules";
    case PipelineMode::kQa: return "qa";
  }
  return "unknown";
}

std::optional<PipelineMode> ParsePipelineMode(std::string_view name) {
  if (name == "base") return PipelineMode::kBase;
  if (name == "rules") return PipelineMode::kRules;
  if (name == "qa") return PipelineMode::kQa;
  return std::nullopt;
}

Pipeline::Pipeline(const CompiledLexicon& lexicon, PipelineOptions options,
                   QaBackend* backend)
    : lexicon_(lexicon), options_(std::move(options)), backend_(backend) {
  if (options_.mode == PipelineMode::kQa && backend_ == nullptr) {
    throw ContractError("qa mode needs a QA backend");
  }
}

Extraction Pipeline::RunSentence(const Sentence& sentence,
                                 std::vector<std::string>* diagnostics) const {
  const std::vector<Token> tokens = Tokenize(sentence.text);
  std::vector<EntityMention> base = LookupAll(sentence, tokens, lexicon_);
  switch (options_.mode) {
    case PipelineMode::kBase:
      return Extraction{std::move(base), {}};
    case PipelineMode::kRules:
      return ApplyRules(sentence, std::move(base), lexicon_, options_.rules,
                        diagnostics);
    case PipelineMode::kQa:
      return QaExtractComponents(sentence, base, *backend_, lexicon_,
                                 options_.rules, options_.qa, diagnostics);
  }
  return {};
}

RecordResult Pipeline::Run(const MaintenanceRecordDoc& record) const {
  RecordResult result;
  result.record = record;
  for (Sentence& s : SplitSentences(record.text, record.record_id)) {
    SentenceResult sr;
    sr.extraction = RunSentence(s, &sr.diagnostics);
    sr.sentence = std::move(s);
    result.sentences.push_back(std::move(sr));
  }
  return result;
}

std::vector<RecordResult> Pipeline::RunAll(
    const std::vector<MaintenanceRecordDoc>& records, std::size_t threads) const {
  std::vector<RecordResult> results(records.size());
  const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), records.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i) results[i] = Run(records[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < records.size(); i = next++) {
        results[i] = Run(records[i]);
      }
    });
  }
  pool.clear();
  return results;
}

std::string SentenceId(std::string_view record_id, std::size_t index) {
  return std::string(record_id) + "#" + std::to_string(index);
}

MaintenanceRecordInstance BuildRecordInstance(const RecordResult& result) {
  MaintenanceRecordInstance inst;
  inst.record_id = result.record.record_id;
  inst.asset_id = result.record.asset_id;
  inst.date_performed = result.record.date_performed;
  for (const SentenceResult& s : result.sentences) {
    auto acts = BuildActivities(s.sentence.index, s.extraction.mentions,
                                s.extraction.relations);
    for (auto& a : acts) inst.activities.push_back(std::move(a));
  }
  return inst;
}

std::string SerializePredictionLine(const RecordResult& record,
                                    const SentenceResult& sentence) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["sentence_id"] = SentenceId(record.record.record_id, sentence.sentence.index);
  doc["text"] = sentence.sentence.text;
  ordered_json entities = ordered_json::array();
  for (const EntityMention& m : sentence.extraction.mentions) {
    ordered_json e;
    e["text"] = m.surface;
    e["start"] = m.start;
    e["end"] = m.end;
    e["type"] = ToString(m.sem_type);
    e["provenance"] = ToString(m.provenance);
    if (m.canonical_uri) e["uri"] = *m.canonical_uri;
    if (m.context_note) e["context_note"] = *m.context_note;
    if (m.ordinal) e["ordinal"] = *m.ordinal;
    if (m.location) e["location"] = *m.location;
    entities.push_back(std::move(e));
  }
  doc["entities"] = std::move(entities);
  ordered_json relations = ordered_json::array();
  for (const Relation& r : sentence.extraction.relations) {
    relations.push_back({{"subject", r.subject},
                         {"predicate", ToString(r.predicate)},
                         {"object", r.object}});
  }
  doc["relations"] = std::move(relations);
  return doc.dump();
}

AnnotatedSentence ToAnnotatedSentence(const RecordResult& record,
                                      const SentenceResult& sentence) {
  AnnotatedSentence out;
  out.sentence_id = SentenceId(record.record.record_id, sentence.sentence.index);
  for (const EntityMention& m : sentence.extraction.mentions) {
    out.entities.push_back({m.surface, m.start, m.end, m.sem_type, m.context_note,
                            m.provenance});
  }
  return out;
}

}  // namespace mxsem

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

#include "mxsem/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "mxsem/error.h"
#include "mxsem/utf8.h"

namespace mxsem {
namespace {

template <typename T>
std::size_t MultisetIntersection(std::vector<T> a, std::vector<T> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) {
      ++common;
      ++ia;
      ++ib;
    } else if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return common;
}

std::vector<std::string> WhitespaceTokens(std::string_view text) {
  std::vector<std::string> out;
  std::stringstream ss(utf8::ToLower(utf8::CollapseWhitespace(text)));
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::vector<std::u32string> Bigrams(std::string_view text) {
  std::u32string wide = utf8::Decode(utf8::CollapseWhitespace(text));
  for (auto& c : wide) c = utf8::ToLower(c);
  std::vector<std::u32string> out;
  for (std::size_t i = 0; i + 1 < wide.size(); ++i) out.push_back(wide.substr(i, 2));
  return out;
}

nlohmann::ordered_json CountsJson(const Counts& c) {
  return {{"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1},
          {"tp", c.tp},               {"fp", c.fp},         {"fn", c.fn}};
}

nlohmann::ordered_json ReportJson(const EvalReport& r) {
  nlohmann::ordered_json doc;
  doc["mode"] = r.mode.kind == MatchMode::Kind::kStrict ? "strict" : "fuzzy";
  if (r.mode.kind == MatchMode::Kind::kFuzzy) {
    doc["threshold"] = r.mode.threshold;
    doc["dice"] = r.mode.dice == DiceKind::kTokens ? "tokens" : "char-bigrams";
  }
  nlohmann::ordered_json per_type = nlohmann::ordered_json::object();
  for (SemanticType t : kAllTypes) {
    per_type[std::string(ToString(t))] = CountsJson(r.per_type.at(t));
  }
  doc["per_type"] = std::move(per_type);
  doc["overall"] = CountsJson(r.overall);
  return doc;
}

}  // namespace

double Dice(std::string_view a, std::string_view b, DiceKind kind) {
  std::size_t na = 0;
  std::size_t nb = 0;
  std::size_t common = 0;
  if (kind == DiceKind::kTokens) {
    auto ta = WhitespaceTokens(a);
    auto tb = WhitespaceTokens(b);
    na = ta.size();
    nb = tb.size();
    common = MultisetIntersection(std::move(ta), std::move(tb));
  } else {
    auto ba = Bigrams(a);
    auto bb = Bigrams(b);
    na = ba.size();
    nb = bb.size();
    if (na == 0 && nb == 0) {
      // Strings of at most one character have no bigrams.
      return utf8::ToLower(utf8::CollapseWhitespace(a)) ==
                     utf8::ToLower(utf8::CollapseWhitespace(b))
                 ? 1.0
                 : 0.0;
    }
    common = MultisetIntersection(std::move(ba), std::move(bb));
  }
  if (na + nb == 0) return 1.0;
  return (2.0 * static_cast<double>(common)) / static_cast<double>(na + nb);
}

std::string ComparisonText(std::string_view surface) {
  std::string out;
  for (char c : surface) {
    if (c == '(' || c == ')') {
      out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  return utf8::CollapseWhitespace(out);
}

AnnotatedCorpus ReadAnnotations(std::istream& in) {
  using nlohmann::json;
  AnnotatedCorpus corpus;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (utf8::CollapseWhitespace(line).empty()) continue;
    AnnotatedSentence sentence;
    try {
      const json doc = json::parse(line);
      sentence.sentence_id = doc.at("sentence_id").get<std::string>();
      for (const json& e : doc.at("entities")) {
        AnnotatedEntity entity;
        entity.text = e.at("text").get<std::string>();
        entity.start = e.at("start").get<std::size_t>();
        entity.end = e.at("end").get<std::size_t>();
        const std::string type = e.at("type").get<std::string>();
        const auto parsed = ParseSemanticType(type);
        if (!parsed) throw ParseError(line_number, "unknown entity type \"" + type + "\"");
        entity.sem_type = *parsed;
        if (auto it = e.find("context_note"); it != e.end() && !it->is_null()) {
          entity.context_note = it->get<std::string>();
        }
        if (auto it = e.find("provenance"); it != e.end() && !it->is_null()) {
          entity.provenance = ParseProvenance(it->get<std::string>());
        }
        if (entity.start >= entity.end) {
          throw ParseError(line_number, "entity \"" + entity.text + "\" has an empty span");
        }
        sentence.entities.push_back(std::move(entity));
      }
    } catch (const json::exception& e) {
      throw ParseError(line_number, e.what());
    }
    for (std::size_t i = 0; i < sentence.entities.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const auto& a = sentence.entities[i];
        const auto& b = sentence.entities[j];
        if (a.start == b.start && a.end == b.end && a.sem_type == b.sem_type &&
            a.text == b.text) {
          throw ParseError(line_number, "duplicate entity \"" + a.text + "\"");
        }
      }
    }
    if (!ids.insert(sentence.sentence_id).second) {
      throw ParseError(line_number, "repeated sentence_id \"" + sentence.sentence_id + "\"");
    }
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

std::string MatchMode::Describe() const {
  if (kind == Kind::kStrict) return "strict";
  char buf[32];
  std::snprintf(buf, sizeof buf, "fuzzy@%.2f", threshold);
  return buf;
}

MatchResult MatchEntities(std::span<const AnnotatedEntity> gold,
                          std::span<const AnnotatedEntity> predicted,
                          const MatchMode& mode) {
  struct Candidate {
    double dice;
    std::size_t gold_start;
    std::size_t g;
    std::size_t p;
  };
  std::vector<std::string> gold_text;
  std::vector<std::string> pred_text;
  for (const auto& e : gold) gold_text.push_back(ComparisonText(e.text));
  for (const auto& e : predicted) pred_text.push_back(ComparisonText(e.text));

  std::vector<Candidate> candidates;
  for (std::size_t g = 0; g < gold.size(); ++g) {
    for (std::size_t p = 0; p < predicted.size(); ++p) {
      if (gold[g].sem_type != predicted[p].sem_type) continue;
      // Equal spans cover equal sentence text, whatever the surfaces say.
      const bool same_span = gold[g].start == predicted[p].start &&
                             gold[g].end == predicted[p].end;
      const double d =
          same_span ? 1.0 : Dice(gold_text[g], pred_text[p], mode.dice);
      const bool ok = mode.kind == MatchMode::Kind::kStrict
                          ? same_span
                          : d >= mode.threshold;
      if (ok) candidates.push_back({d, gold[g].start, g, p});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::tuple(-a.dice, a.gold_start, a.g, a.p) <
                     std::tuple(-b.dice, b.gold_start, b.g, b.p);
            });

  MatchResult result;
  std::vector<bool> gold_used(gold.size(), false);
  std::vector<bool> pred_used(predicted.size(), false);
  for (const Candidate& c : candidates) {
    if (gold_used[c.g] || pred_used[c.p]) continue;
    gold_used[c.g] = pred_used[c.p] = true;
    result.pairs.emplace_back(c.g, c.p);
  }
  for (std::size_t g = 0; g < gold.size(); ++g) {
    if (!gold_used[g]) result.unmatched_gold.push_back(g);
  }
  for (std::size_t p = 0; p < predicted.size(); ++p) {
    if (!pred_used[p]) result.unmatched_predicted.push_back(p);
  }
  return result;
}

void Counts::Finish() {
  precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  f1 = precision + recall == 0.0 ? 0.0
                                 : 2.0 * precision * recall / (precision + recall);
}

EvalReport Score(const AnnotatedCorpus& gold, const AnnotatedCorpus& predicted,
                 const MatchMode& mode) {
  std::map<std::string_view, const AnnotatedSentence*> by_id;
  for (const auto& s : predicted) by_id[s.sentence_id] = &s;

  std::set<std::string_view> gold_ids;
  for (const auto& s : gold) gold_ids.insert(s.sentence_id);
  std::vector<std::string> orphans;
  for (const auto& s : predicted) {
    if (!gold_ids.contains(s.sentence_id)) {
      orphans.push_back("predicted sentence \"" + s.sentence_id + "\" is not in the gold file");
    }
  }
  if (!orphans.empty()) throw ValidationError(std::move(orphans));

  EvalReport report;
  report.mode = mode;
  for (SemanticType t : kAllTypes) report.per_type[t] = Counts{};

  static const std::vector<AnnotatedEntity> kNone;
  for (const auto& g : gold) {
    auto it = by_id.find(g.sentence_id);
    const auto& pred = it == by_id.end() ? kNone : it->second->entities;
    const MatchResult m = MatchEntities(g.entities, pred, mode);
    for (const auto& [gi, pi] : m.pairs) ++report.per_type[g.entities[gi].sem_type].tp;
    for (std::size_t gi : m.unmatched_gold) ++report.per_type[g.entities[gi].sem_type].fn;
    for (std::size_t pi : m.unmatched_predicted) ++report.per_type[pred[pi].sem_type].fp;
  }
  for (auto& [type, c] : report.per_type) {
    c.Finish();
    report.overall.tp += c.tp;
    report.overall.fp += c.fp;
    report.overall.fn += c.fn;
  }
  report.overall.Finish();
  return report;
}

std::vector<EvalReport> Sweep(const AnnotatedCorpus& gold,
                              const AnnotatedCorpus& predicted,
                              std::span<const double> thresholds, DiceKind dice) {
  for (double t : thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::invalid_argument("Dice threshold " + std::to_string(t) +
                                  " is outside [0, 1]");
    }
  }
  std::vector<EvalReport> reports;
  for (double t : thresholds) reports.push_back(Score(gold, predicted, MatchMode::Fuzzy(t, dice)));
  reports.push_back(Score(gold, predicted, MatchMode::Strict()));
  return reports;
}

std::string ReportToJson(const EvalReport& report) { return ReportJson(report).dump(2); }

std::string ReportsToJson(std::span<const EvalReport> reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const EvalReport& r : reports) doc.push_back(ReportJson(r));
  return doc.dump(2);
}

std::string ReportTable(const EvalReport& report) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "match: %s\n", report.mode.Describe().c_str());
  out += buf;
  std::snprintf(buf, sizeof buf, "%-12s %9s %9s %9s %6s %6s %6s\n", "Entity type",
                "Precision", "Recall", "F1", "TP", "FP", "FN");
  out += buf;
  auto row = [&](std::string_view name, const Counts& c) {
    std::snprintf(buf, sizeof buf, "%-12.*s %9.4f %9.4f %9.4f %6zu %6zu %6zu\n",
                  static_cast<int>(name.size()), name.data(), c.precision, c.recall,
                  c.f1, c.tp, c.fp, c.fn);
    out += buf;
  };
  for (SemanticType t : kAllTypes) row(ToString(t), report.per_type.at(t));
  row("All", report.overall);
  return out;
}

}  // namespace mxsem

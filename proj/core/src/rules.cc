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

#include "mxsem/rules.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <regex>

#include "json.hpp"
#include "mxsem/error.h"
#include "mxsem/utf8.h"

namespace mxsem {
namespace {

bool IsContextType(SemanticType t) {
  return t == SemanticType::kComponent || t == SemanticType::kAction ||
         t == SemanticType::kObservation;
}

bool AllSpace(std::u32string_view text) {
  return std::all_of(text.begin(), text.end(), utf8::IsSpace);
}

bool IsPunctuationOnly(std::string_view token) {
  const std::u32string wide = utf8::Decode(token);
  return std::none_of(wide.begin(), wide.end(), utf8::IsAlnum);
}

std::string SliceOf(const std::u32string& text, std::size_t start,
                    std::size_t end) {
  return utf8::Encode(std::u32string_view(text).substr(start, end - start));
}

// Tidies a surface after text was cut out of it.
std::string TidySurface(std::string s) {
  s = utf8::CollapseWhitespace(s);
  for (bool changed = true; changed;) {
    changed = false;
    for (const char* from : {"( ", " )", "()"}) {
      const std::string f(from);
      const std::string to = f == "()" ? "" : f == "( " ? "(" : ")";
      for (auto pos = s.find(f); pos != std::string::npos; pos = s.find(f)) {
        s.replace(pos, f.size(), to);
        changed = true;
      }
    }
    s = utf8::CollapseWhitespace(s);
  }
  return s;
}

// Case-insensitive search of `needle` inside sentence[start, end).
std::optional<std::pair<std::size_t, std::size_t>> LocateIn(
    std::string_view sentence_text, std::size_t start, std::size_t end,
    std::string_view needle) {
  std::u32string hay = utf8::Decode(sentence_text);
  std::u32string pin = utf8::Decode(needle);
  if (pin.empty() || end > hay.size() || start >= end) return std::nullopt;
  for (auto& c : hay) c = utf8::ToLower(c);
  for (auto& c : pin) c = utf8::ToLower(c);
  const auto pos =
      std::u32string_view(hay).substr(start, end - start).find(pin);
  if (pos == std::u32string_view::npos) return std::nullopt;
  return std::make_pair(start + pos, start + pos + pin.size());
}

std::optional<std::string> LeadingNote(std::string_view surface) {
  if (surface.empty() || surface.front() != '(') return std::nullopt;
  const auto close = surface.find(')');
  if (close == std::string_view::npos) return std::nullopt;
  return std::string(surface.substr(0, close + 1));
}

}  // namespace

std::set<std::string, std::less<>> DefaultStopWords() {
  return {"a",  "an",  "the", "of", "to",  "in",   "on",   "at",   "for",
          "and", "or", "is",  "was", "were", "be", "been", "with"};
}

std::vector<OrdinalPattern> DefaultOrdinalPatterns() {
  return {
      {"hash", R"(#(\d+)(?![0-9a-z]))"},
      {"no-dot", R"(\bno\.\s*(\d+)(?![0-9a-z]))"},
      {"no", R"(\bno\s+(\d+)(?![0-9a-z]))"},
      {"suffix", R"(\b(\d+)(?:st|nd|rd|th)\b)"},
  };
}

bool RuleConfig::IsStopWord(std::string_view token) const {
  return stop_words.contains(utf8::ToLower(token));
}

RuleConfig LoadRuleConfig(std::istream& in) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("rule config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError(0, "rule config: expected an object");

  RuleConfig config;
  try {
    if (auto it = doc.find("k"); it != doc.end()) {
      if (!it->is_number_integer() || it->get<long long>() < 0) {
        throw ParseError(0, "rule config: \"k\" must be a non-negative integer");
      }
      config.k = it->get<std::size_t>();
    }
    if (auto it = doc.find("stop_words"); it != doc.end()) {
      config.stop_words.clear();
      for (const auto& w : it->get<std::vector<std::string>>()) {
        config.stop_words.insert(utf8::ToLower(w));
      }
    }
    if (auto it = doc.find("ordinal_patterns"); it != doc.end()) {
      config.ordinal_patterns.clear();
      for (const auto& p : *it) {
        config.ordinal_patterns.push_back(
            {p.at("name").get<std::string>(), p.at("regex").get<std::string>()});
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("rule config: ") + e.what());
  }
  return config;
}

std::vector<EntityMention> PruneToFinest(std::vector<EntityMention> mentions) {
  std::vector<EntityMention> kept;
  kept.reserve(mentions.size());
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    const EntityMention& m = mentions[i];
    bool beaten = false;
    for (std::size_t j = 0; j < mentions.size() && !beaten; ++j) {
      const EntityMention& o = mentions[j];
      if (j == i || o.start != m.start || o.sem_type != m.sem_type) continue;
      beaten = o.length() > m.length() || (o.length() == m.length() && j < i);
    }
    if (!beaten) kept.push_back(m);
  }
  return kept;
}

std::vector<EntityMention> JoinSameType(std::vector<EntityMention> mentions,
                                        std::string_view sentence_text,
                                        const RuleConfig& /*config*/) {
  const std::u32string text = utf8::Decode(sentence_text);
  const std::size_t n = mentions.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const EntityMention& left = mentions[a];
      const EntityMention& right = mentions[b];
      if (a == b || left.sem_type != right.sem_type) continue;
      if (right.start < left.end || right.start > text.size()) continue;
      if (!AllSpace(std::u32string_view(text).substr(
              left.end, right.start - left.end))) {
        continue;
      }
      parent[find(a)] = find(b);
    }
  }

  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

  std::vector<EntityMention> out;
  for (const auto& group : groups) {
    if (group.empty()) continue;
    if (group.size() == 1) {
      out.push_back(std::move(mentions[group.front()]));
      continue;
    }
    EntityMention merged;
    merged.sem_type = mentions[group.front()].sem_type;
    merged.start = mentions[group.front()].start;
    merged.end = mentions[group.front()].end;
    for (std::size_t i : group) {
      merged.start = std::min(merged.start, mentions[i].start);
      merged.end = std::max(merged.end, mentions[i].end);
    }
    merged.surface = SliceOf(text, merged.start, merged.end);
    merged.provenance = Provenance::kRule;
    out.push_back(std::move(merged));
  }
  std::sort(out.begin(), out.end(), MentionLess);
  return out;
}

std::vector<EntityMention> AbsorbContextGap(std::vector<EntityMention> mentions,
                                            std::string_view sentence_text,
                                            const RuleConfig& config) {
  const std::u32string text = utf8::Decode(sentence_text);
  const std::vector<EntityMention> original = mentions;

  for (std::size_t r = 0; r < mentions.size(); ++r) {
    if (original[r].sem_type != SemanticType::kComponent) continue;
    const std::size_t right_start = original[r].start;

    // Nearest context mention ending strictly before the component.
    std::optional<std::size_t> gap_begin;
    for (std::size_t l = 0; l < original.size(); ++l) {
      const EntityMention& m = original[l];
      if (l == r || !IsContextType(m.sem_type) || m.end >= right_start) continue;
      if (!gap_begin || m.end > *gap_begin) gap_begin = m.end;
    }
    if (!gap_begin || right_start - *gap_begin > config.k) continue;

    bool blocked = false;
    for (std::size_t o = 0; o < original.size() && !blocked; ++o) {
      const EntityMention& m = original[o];
      if (o == r || !IsContextType(m.sem_type)) continue;
      blocked = m.start < right_start && m.end > *gap_begin;
    }
    if (blocked) continue;

    const std::u32string_view gap =
        std::u32string_view(text).substr(*gap_begin, right_start - *gap_begin);
    if (AllSpace(gap)) continue;

    std::vector<std::string> kept;
    bool boundary = false;
    for (const Token& t : Tokenize(utf8::Encode(gap))) {
      if (IsPunctuationOnly(t.text)) {
        boundary = true;
        break;
      }
      if (!config.IsStopWord(t.text)) kept.push_back(utf8::ToLower(t.text));
    }
    if (boundary) continue;

    std::size_t new_start = *gap_begin;
    while (utf8::IsSpace(text[new_start])) ++new_start;

    EntityMention& target = mentions[r];
    target.start = new_start;
    target.provenance = Provenance::kRule;
    if (!kept.empty()) {
      std::string note = "(";
      for (std::size_t i = 0; i < kept.size(); ++i) {
        if (i > 0) note += ' ';
        note += kept[i];
      }
      note += ')';
      target.surface = note + " " + target.surface;
      target.context_note = std::move(note);
    }
  }
  return mentions;
}

std::optional<EntityMention> StripStopwords(EntityMention mention,
                                            const RuleConfig& config) {
  std::size_t note_len = 0;
  if (mention.context_note &&
      mention.surface.starts_with(*mention.context_note)) {
    note_len = utf8::Length(*mention.context_note);
  }
  std::u32string wide = utf8::Decode(mention.surface);
  bool removed = false;
  for (const Token& t : Tokenize(mention.surface)) {
    if (t.start < note_len || !config.IsStopWord(t.text)) continue;
    for (std::size_t i = t.start; i < t.end; ++i) wide[i] = U' ';
    removed = true;
  }
  const std::string core = utf8::CollapseWhitespace(
      utf8::Encode(std::u32string_view(wide).substr(note_len)));
  if (core.empty()) return std::nullopt;
  if (!removed) return mention;
  mention.surface = note_len > 0 ? *mention.context_note + " " + core : core;
  return mention;
}

std::vector<Relation> ExtractRelations(const std::vector<EntityMention>& mentions,
                                       const RuleConfig& config) {
  std::vector<Relation> relations;
  for (std::size_t c = 0; c < mentions.size(); ++c) {
    if (mentions[c].sem_type != SemanticType::kComponent) continue;
    for (std::size_t o = 0; o < mentions.size(); ++o) {
      const SemanticType t = mentions[o].sem_type;
      if (t != SemanticType::kAction && t != SemanticType::kObservation) continue;
      const EntityMention& a = mentions[c];
      const EntityMention& b = mentions[o];
      std::size_t gap;
      if (a.end <= b.start) {
        gap = b.start - a.end;
      } else if (b.end <= a.start) {
        gap = a.start - b.end;
      } else {
        continue;  // overlapping spans
      }
      if (gap > config.k) continue;
      relations.push_back({c,
                           t == SemanticType::kAction
                               ? Predicate::kHasAssociatedAction
                               : Predicate::kHasAssociatedObservation,
                           o});
    }
  }
  std::sort(relations.begin(), relations.end(),
            [&](const Relation& x, const Relation& y) {
              const auto kx = std::tuple(mentions[x.subject].start,
                                         mentions[x.object].start, x);
              const auto ky = std::tuple(mentions[y.subject].start,
                                         mentions[y.object].start, y);
              return kx < ky;
            });
  relations.erase(std::unique(relations.begin(), relations.end()),
                  relations.end());
  return relations;
}

namespace {

// Compiling a std::regex costs far more than matching short surfaces.
const std::regex& CompiledPattern(const std::string& pattern) {
  thread_local std::map<std::string, std::regex, std::less<>> cache;
  auto it = cache.find(pattern);
  if (it == cache.end()) {
    it = cache.emplace(pattern, std::regex(pattern, std::regex::ECMAScript |
                                                        std::regex::icase)).first;
  }
  return it->second;
}

}  // namespace

std::optional<OrdinalExtraction> ExtractOrdinal(
    std::string_view component_surface, const RuleConfig& config,
    std::vector<std::string>* diagnostics) {
  struct Hit {
    std::size_t byte_start;
    std::size_t byte_len;
    std::size_t pattern;
    std::string digits;
  };
  const std::string surface(component_surface);
  std::vector<Hit> hits;
  for (std::size_t p = 0; p < config.ordinal_patterns.size(); ++p) {
    const std::regex& re = CompiledPattern(config.ordinal_patterns[p].regex);
    for (auto it = std::sregex_iterator(surface.begin(), surface.end(), re);
         it != std::sregex_iterator(); ++it) {
      const std::smatch& m = *it;
      hits.push_back({static_cast<std::size_t>(m.position(0)),
                      static_cast<std::size_t>(m.length(0)), p,
                      m.size() > 1 ? m.str(1) : m.str(0)});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return std::tie(a.byte_start, a.pattern) < std::tie(b.byte_start, b.pattern);
  });

  auto note = [&](const std::string& msg) {
    if (diagnostics) diagnostics->push_back(msg);
  };

  std::optional<OrdinalExtraction> result;
  std::size_t taken_end = 0;
  for (const Hit& h : hits) {
    if (result && h.byte_start < taken_end) continue;  // same text, other pattern
    const std::string text = surface.substr(h.byte_start, h.byte_len);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(h.digits.data(), h.digits.data() + h.digits.size(), value);
    if (ec != std::errc() || ptr != h.digits.data() + h.digits.size()) {
      note("ordinal \"" + text + "\" in \"" + surface +
           "\" is out of range; skipped");
      continue;
    }
    if (value < 1) continue;
    if (result) {
      note("extra ordinal \"" + text + "\" in \"" + surface +
           "\" ignored; kept the first");
      taken_end = h.byte_start + h.byte_len;
      continue;
    }
    OrdinalExtraction out;
    out.ordinal.value = value;
    out.ordinal.start = utf8::Length(surface.substr(0, h.byte_start));
    out.ordinal.end = out.ordinal.start + utf8::Length(text);
    out.cleaned_surface = TidySurface(surface.substr(0, h.byte_start) + " " +
                                      surface.substr(h.byte_start + h.byte_len));
    result = std::move(out);
    taken_end = h.byte_start + h.byte_len;
  }
  return result;
}

LocationSplit SplitLocation(std::string_view component_surface,
                            const CompiledLexicon& lexicon) {
  const std::vector<Token> tokens = Tokenize(component_surface);
  std::vector<std::string> lowered;
  for (const Token& t : tokens) lowered.push_back(utf8::ToLower(t.text));
  const std::size_t n = tokens.size();

  // is_loc[i][j]: tokens [i, j) form one Location variant.
  std::vector<std::vector<bool>> is_loc(n + 1, std::vector<bool>(n + 1, false));
  for (std::size_t i = 0; i < n; ++i) {
    auto rest = std::span<const std::string>(lowered).subspan(i);
    for (const auto& [count, c] : lexicon.MatchPrefixes(rest)) {
      if (c->sem_type == SemanticType::kLocation) is_loc[i][i + count] = true;
    }
  }

  // Longest prefix that splits entirely into Location variants.
  std::vector<bool> from_left(n + 1, false);
  from_left[0] = true;
  std::size_t prefix_end = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t i = 0; i < j && !from_left[j]; ++i) {
      from_left[j] = from_left[i] && is_loc[i][j];
    }
    if (from_left[j]) prefix_end = j;
  }

  // Longest suffix of the remainder that does the same.
  std::vector<bool> to_right(n + 1, false);
  to_right[n] = true;
  std::size_t suffix_begin = n;
  for (std::size_t i = n; i-- > prefix_end;) {
    for (std::size_t j = i + 1; j <= n && !to_right[i]; ++j) {
      to_right[i] = to_right[j] && is_loc[i][j];
    }
    if (to_right[i]) suffix_begin = i;
  }

  const std::u32string text = utf8::Decode(component_surface);
  auto span_text = [&](std::size_t first, std::size_t last) {
    return SliceOf(text, tokens[first].start, tokens[last - 1].end);
  };

  LocationSplit split;
  std::string location;
  if (prefix_end > 0) location = span_text(0, prefix_end);
  if (suffix_begin < n) {
    if (!location.empty()) location += ' ';
    location += span_text(suffix_begin, n);
  }
  if (!location.empty()) split.location = std::move(location);
  if (prefix_end < suffix_begin) {
    split.residual = span_text(prefix_end, suffix_begin);
  }
  return split;
}

std::optional<EntityMention> PostProcessComponent(
    EntityMention component, std::string_view sentence_text,
    const CompiledLexicon& lexicon, const RuleConfig& config,
    std::vector<EntityMention>& extra, std::vector<std::string>* diagnostics) {
  const std::u32string text = utf8::Decode(sentence_text);
  const std::size_t span_end = std::min(component.end, text.size());

  if (auto ord = ExtractOrdinal(component.surface, config, diagnostics)) {
    const std::string ordinal_text = utf8::Slice(
        component.surface, ord->ordinal.start, ord->ordinal.end);
    component.ordinal = ord->ordinal.value;
    component.surface = ord->cleaned_surface;
    if (component.context_note) component.context_note = LeadingNote(component.surface);
    if (auto at = LocateIn(sentence_text, component.start, span_end, ordinal_text)) {
      EntityMention m;
      m.start = at->first;
      m.end = at->second;
      m.surface = SliceOf(text, m.start, m.end);
      m.sem_type = SemanticType::kOrdinal;
      m.provenance = component.provenance == Provenance::kQa ? Provenance::kQa
                                                             : Provenance::kRule;
      extra.push_back(std::move(m));
    }
  }

  std::string note;
  std::string core = component.surface;
  if (component.context_note && core.starts_with(*component.context_note)) {
    note = *component.context_note;
    core = utf8::CollapseWhitespace(core.substr(note.size()));
  }

  // Location words can sit in the captured note as well as in the name.
  std::vector<std::string> locations;
  if (!note.empty()) {
    LocationSplit in_note =
        SplitLocation(std::string_view(note).substr(1, note.size() - 2), lexicon);
    if (in_note.location) {
      locations.push_back(*in_note.location);
      note = in_note.residual.empty() ? "" : "(" + in_note.residual + ")";
    }
  }
  LocationSplit split = SplitLocation(core, lexicon);
  if (split.location) {
    locations.push_back(*split.location);
    core = split.residual;
  }
  if (locations.empty()) return component;

  for (const std::string& loc : locations) {
    if (auto at = LocateIn(sentence_text, component.start, span_end, loc)) {
      EntityMention m;
      m.start = at->first;
      m.end = at->second;
      m.surface = SliceOf(text, m.start, m.end);
      m.sem_type = SemanticType::kLocation;
      m.provenance = component.provenance == Provenance::kQa ? Provenance::kQa
                                                             : Provenance::kRule;
      extra.push_back(std::move(m));
    }
  }
  if (core.empty()) return std::nullopt;
  std::string joined;
  for (const std::string& loc : locations) {
    if (!joined.empty()) joined += ' ';
    joined += loc;
  }
  component.location = std::move(joined);
  component.context_note = note.empty() ? std::nullopt : std::optional(note);
  component.surface = note.empty() ? core : note + " " + core;
  if (component.surface.empty()) return std::nullopt;
  return component;
}

Extraction ApplyRules(const Sentence& sentence,
                      std::vector<EntityMention> base_mentions,
                      const CompiledLexicon& lexicon, const RuleConfig& config,
                      std::vector<std::string>* diagnostics) {
  std::sort(base_mentions.begin(), base_mentions.end(), MentionLess);
  std::vector<EntityMention> mentions = PruneToFinest(std::move(base_mentions));
  if (diagnostics) {
    // Same-end nests survive pruning; say so, since they may count twice.
    for (std::size_t i = 0; i < mentions.size(); ++i) {
      for (std::size_t j = 0; j < mentions.size(); ++j) {
        const EntityMention& outer = mentions[i];
        const EntityMention& inner = mentions[j];
        if (outer.sem_type == inner.sem_type && outer.end == inner.end &&
            outer.start < inner.start) {
          diagnostics->push_back("nested mentions \"" + outer.surface + "\" and \"" +
                                 inner.surface + "\" share an end; both kept");
        }
      }
    }
  }

  // Locations are joined first and then kept out of context capture.
  std::vector<EntityMention> locations;
  std::vector<EntityMention> others;
  for (EntityMention& m : mentions) {
    (m.sem_type == SemanticType::kLocation ? locations : others)
        .push_back(std::move(m));
  }
  locations = JoinSameType(std::move(locations), sentence.text, config);
  others = JoinSameType(std::move(others), sentence.text, config);
  others = AbsorbContextGap(std::move(others), sentence.text, config);

  std::vector<EntityMention> cleaned;
  for (auto* group : {&others, &locations}) {
    for (EntityMention& m : *group) {
      if (auto kept = StripStopwords(std::move(m), config)) {
        cleaned.push_back(std::move(*kept));
      }
    }
  }

  Extraction out;
  std::vector<EntityMention> extra;
  for (EntityMention& m : cleaned) {
    if (m.sem_type != SemanticType::kComponent) {
      out.mentions.push_back(std::move(m));
      continue;
    }
    if (auto done = PostProcessComponent(std::move(m), sentence.text, lexicon,
                                         config, extra, diagnostics)) {
      out.mentions.push_back(std::move(*done));
    }
  }
  for (EntityMention& m : extra) {
    const bool duplicate = std::any_of(
        out.mentions.begin(), out.mentions.end(), [&](const EntityMention& o) {
          return o.start == m.start && o.end == m.end && o.sem_type == m.sem_type;
        });
    if (!duplicate) out.mentions.push_back(std::move(m));
  }
  std::sort(out.mentions.begin(), out.mentions.end(), MentionLess);
  out.relations = ExtractRelations(out.mentions, config);
  return out;
}

}  // namespace mxsem

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

#include "mxsem/lexicon.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "mxsem/error.h"
#include "mxsem/utf8.h"

namespace mxsem {

std::vector<std::string> NormalizeVariant(std::string_view variant) {
  std::vector<std::string> out;
  for (Token& t : Tokenize(utf8::CollapseWhitespace(variant))) {
    out.push_back(utf8::ToLower(t.text));
  }
  return out;
}

std::string NormalizedKey(std::string_view variant) {
  std::string key;
  for (const std::string& t : NormalizeVariant(variant)) {
    if (!key.empty()) key += ' ';
    key += t;
  }
  return key;
}

const LexiconConcept* CompiledLexicon::Find(std::string_view uri) const {
  auto it = std::lower_bound(
      concepts_.begin(), concepts_.end(), uri,
      [](const LexiconConcept& c, std::string_view u) { return c.canonical_uri < u; });
  if (it == concepts_.end() || it->canonical_uri != uri) return nullptr;
  return &*it;
}

const CompiledLexicon::Node* CompiledLexicon::Walk(
    std::span<const std::string> tokens) const {
  std::uint32_t node = 0;
  for (const std::string& t : tokens) {
    auto it = nodes_[node].children.find(t);
    if (it == nodes_[node].children.end()) return nullptr;
    node = it->second;
  }
  return &nodes_[node];
}

std::vector<const LexiconConcept*> CompiledLexicon::Match(
    std::span<const std::string> normalized_tokens) const {
  std::vector<const LexiconConcept*> out;
  if (normalized_tokens.empty()) return out;
  if (const Node* node = Walk(normalized_tokens)) {
    for (std::uint32_t idx : node->concepts) out.push_back(&concepts_[idx]);
  }
  return out;
}

std::vector<std::pair<std::size_t, const LexiconConcept*>>
CompiledLexicon::MatchPrefixes(std::span<const std::string> tokens) const {
  std::vector<std::pair<std::size_t, const LexiconConcept*>> out;
  std::uint32_t node = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto it = nodes_[node].children.find(tokens[i]);
    if (it == nodes_[node].children.end()) break;
    node = it->second;
    for (std::uint32_t idx : nodes_[node].concepts) {
      out.emplace_back(i + 1, &concepts_[idx]);
    }
  }
  return out;
}

bool CompiledLexicon::HasVariant(std::string_view text,
                                 SemanticType type) const {
  const std::vector<std::string> tokens = NormalizeVariant(text);
  for (const LexiconConcept* c : Match(tokens)) {
    if (c->sem_type == type) return true;
  }
  return false;
}

void CompiledLexicon::WriteCanonical(std::ostream& out) const {
  for (const LexiconConcept& c : concepts_) {
    std::set<std::string> keys;
    for (const std::string& v : c.variants) keys.insert(NormalizedKey(v));
    const std::string preferred = NormalizedKey(c.preferred_label);
    out << ToString(c.sem_type) << '\t' << c.canonical_uri << '\t' << preferred;
    for (const std::string& k : keys) {
      if (k != preferred) out << '\t' << k;
    }
    out << '\n';
  }
}

CompiledLexicon CompileLexicon(std::vector<LexiconConcept> concepts) {
  std::vector<std::string> problems;

  std::sort(concepts.begin(), concepts.end(),
            [](const LexiconConcept& a, const LexiconConcept& b) {
              return a.canonical_uri < b.canonical_uri;
            });
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    const LexiconConcept& c = concepts[i];
    if (c.canonical_uri.empty()) problems.push_back("concept with empty URI");
    if (i > 0 && concepts[i - 1].canonical_uri == c.canonical_uri &&
        (i < 2 || concepts[i - 2].canonical_uri != c.canonical_uri)) {
      problems.push_back("duplicate URI " + c.canonical_uri);
    }
    if (c.sem_type == SemanticType::kOrdinal) {
      problems.push_back(c.canonical_uri +
                         ": Ordinal concepts are not allowed in a lexicon");
    }
    std::set<std::string> keys;
    for (const std::string& v : c.variants) {
      const std::string key = NormalizedKey(v);
      if (key.empty()) {
        problems.push_back(c.canonical_uri + ": empty variant");
      } else if (!keys.insert(key).second) {
        problems.push_back(c.canonical_uri + ": repeated variant \"" + key + "\"");
      }
    }
    if (!keys.contains(NormalizedKey(c.preferred_label))) {
      problems.push_back(c.canonical_uri + ": preferred label \"" +
                         c.preferred_label + "\" is not among its variants");
    }
  }

  CompiledLexicon lexicon;
  for (std::size_t ci = 0; ci < concepts.size(); ++ci) {
    std::set<std::string> done;
    for (const std::string& v : concepts[ci].variants) {
      std::vector<std::string> tokens = NormalizeVariant(v);
      if (tokens.empty()) continue;
      std::string key = NormalizedKey(v);
      if (!done.insert(key).second) continue;
      std::uint32_t node = 0;
      for (std::string& t : tokens) {
        auto it = lexicon.nodes_[node].children.find(t);
        if (it == lexicon.nodes_[node].children.end()) {
          const auto next = static_cast<std::uint32_t>(lexicon.nodes_.size());
          lexicon.nodes_[node].children.emplace(std::move(t), next);
          lexicon.nodes_.emplace_back();
          node = next;
        } else {
          node = it->second;
        }
      }
      auto& here = lexicon.nodes_[node].concepts;
      for (std::uint32_t other : here) {
        if (concepts[other].sem_type == concepts[ci].sem_type &&
            concepts[other].canonical_uri != concepts[ci].canonical_uri) {
          problems.push_back("variant \"" + key + "\" maps to both " +
                             concepts[other].canonical_uri + " and " +
                             concepts[ci].canonical_uri + " as " +
                             std::string(ToString(concepts[ci].sem_type)));
        }
      }
      here.push_back(static_cast<std::uint32_t>(ci));
      lexicon.max_variant_tokens_ =
          std::max(lexicon.max_variant_tokens_, tokens.size());
    }
  }

  if (!problems.empty()) throw ValidationError(std::move(problems));
  lexicon.concepts_ = std::move(concepts);
  return lexicon;
}

std::vector<LexiconConcept> ParseLexicon(std::istream& in) {
  std::vector<LexiconConcept> concepts;
  std::vector<std::string> problems;
  std::map<std::string, std::size_t> uri_lines;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (utf8::CollapseWhitespace(line).empty()) continue;

    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (!line.empty() && line.back() == '\t') fields.emplace_back();

    const std::string where = "line " + std::to_string(line_number) + ": ";
    if (fields.size() < 3) {
      problems.push_back(where + "expected TYPE, URI and preferred label");
      continue;
    }
    const auto type = ParseSemanticType(fields[0]);
    if (!type || *type == SemanticType::kOrdinal) {
      problems.push_back(where + "unknown type \"" + fields[0] + "\"");
      continue;
    }
    if (fields[1].empty()) {
      problems.push_back(where + "empty URI");
      continue;
    }
    if (NormalizedKey(fields[2]).empty()) {
      problems.push_back(where + "empty preferred label");
      continue;
    }
    if (auto [it, fresh] = uri_lines.emplace(fields[1], line_number); !fresh) {
      problems.push_back(where + "duplicate URI " + fields[1] +
                         " (first defined on line " +
                         std::to_string(it->second) + ")");
      continue;
    }

    LexiconConcept c;
    c.sem_type = *type;
    c.canonical_uri = fields[1];
    c.preferred_label = fields[2];
    std::set<std::string> keys;
    bool ok = true;
    for (std::size_t i = 2; i < fields.size(); ++i) {
      const std::string key = NormalizedKey(fields[i]);
      if (key.empty()) {
        problems.push_back(where + "empty variant in column " +
                           std::to_string(i + 1));
        ok = false;
        break;
      }
      if (keys.insert(key).second) c.variants.push_back(fields[i]);
    }
    if (ok) concepts.push_back(std::move(c));
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return concepts;
}

std::vector<EntityMention> LookupAll(const Sentence& sentence,
                                     std::span<const Token> tokens,
                                     const CompiledLexicon& lexicon) {
  std::vector<EntityMention> mentions;
  if (lexicon.empty() || tokens.empty()) return mentions;

  std::vector<std::string> lowered;
  lowered.reserve(tokens.size());
  for (const Token& t : tokens) lowered.push_back(utf8::ToLower(t.text));
  const std::u32string text = utf8::Decode(sentence.text);

  for (std::size_t b = 0; b < tokens.size(); ++b) {
    auto rest = std::span<const std::string>(lowered).subspan(b);
    for (const auto& [count, c] : lexicon.MatchPrefixes(rest)) {
      const std::size_t e = b + count;
      {
        EntityMention m;
        m.start = tokens[b].start;
        m.end = tokens[e - 1].end;
        m.surface = utf8::Encode(
            std::u32string_view(text).substr(m.start, m.end - m.start));
        m.sem_type = c->sem_type;
        m.canonical_uri = c->canonical_uri;
        m.provenance = Provenance::kBase;
        mentions.push_back(std::move(m));
      }
    }
  }
  std::sort(mentions.begin(), mentions.end(), MentionLess);
  return mentions;
}

}  // namespace mxsem

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

#include "mxsem/error.h"
#include "mxsem/qa.h"
#include "mxsem/utf8.h"

#include "json.hpp"

namespace mxsem {

void MockQaBackend::Load(std::istream& in) {
  using nlohmann::json;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (utf8::CollapseWhitespace(line).empty()) continue;
    try {
      const json doc = json::parse(line);
      QaQuery q{doc.at("question").get<std::string>(),
                doc.at("context").get<std::string>()};
      QaAnswer a;
      a.answer_text = doc.at("answer").get<std::string>();
      a.start = doc.value("start", -1LL);
      a.end = doc.value("end", -1LL);
      a.score = doc.value("score", 1.0);
      Add(std::move(q), std::move(a));
    } catch (const json::exception& e) {
      throw ParseError(line_number, std::string("mock QA table: ") + e.what());
    }
  }
}

void MockQaBackend::Add(QaQuery query, QaAnswer answer) {
  table_[{std::move(query.question), std::move(query.context)}] =
      std::move(answer);
}

QaAnswer MockQaBackend::Answer(const QaQuery& query) {
  ++calls_;
  {
    std::lock_guard lock(mu_);
    log_.push_back(query);
  }
  auto it = table_.find({query.question, query.context});
  if (it == table_.end()) return QaAnswer{"", -1, -1, 0.0};
  return it->second;
}

std::vector<QaQuery> MockQaBackend::queries() const {
  std::lock_guard lock(mu_);
  return log_;
}

}  // namespace mxsem

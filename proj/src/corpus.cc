// Copyright 2026 The Stegocoder Authors. All Rights Reserved.
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

#include "stego/corpus.h"

#include <fstream>
#include <sstream>

#include "stego/error.h"

namespace stego {

std::vector<Document> ReadDocuments(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    Document doc;
    std::string w;
    while (words >> w) doc.push_back(std::move(w));
    if (!doc.empty()) docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> ReadDocumentsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus '" + path + "'");
  return ReadDocuments(in);
}

std::vector<Document> SplitSentences(const Document& doc) {
  std::vector<Document> sentences;
  Document current;
  for (const auto& w : doc) {
    current.push_back(w);
    if (w == "." || w == "!" || w == "?") {
      sentences.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

Document LeadContext(const Document& doc, std::size_t sentences) {
  Document out;
  auto split = SplitSentences(doc);
  for (std::size_t i = 0; i < split.size() && i < sentences; ++i) {
    out.insert(out.end(), split[i].begin(), split[i].end());
  }
  return out;
}

}  // namespace stego

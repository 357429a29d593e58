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

#ifndef STEGO_CORPUS_H_
#define STEGO_CORPUS_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace stego {

using Document = std::vector<std::string>;

// One document per line, whitespace-separated tokens. Blank lines are
// skipped.
std::vector<Document> ReadDocuments(std::istream& in);
std::vector<Document> ReadDocumentsFile(const std::string& path);

// Splits after every ".", "!" or "?" token. A trailing unterminated run
// becomes its own sentence.
std::vector<Document> SplitSentences(const Document& doc);

// The first `sentences` sentences of `doc`, concatenated.
Document LeadContext(const Document& doc, std::size_t sentences = 3);

}  // namespace stego

#endif  // STEGO_CORPUS_H_

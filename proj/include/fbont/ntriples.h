// Copyright 2026 The fbont Authors.
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

// Low-level N-Triples lexical helpers.

#ifndef FBONT_NTRIPLES_H_
#define FBONT_NTRIPLES_H_

#include <cstddef>
#include <string>
#include <string_view>

#include "fbont/model.h"

namespace fbont {

// Escapes backslash, double quote, newline, carriage return and tab. All
// other bytes pass through unchanged.
std::string EscapeLiteral(std::string_view text);

// Decodes N-Triples string escapes (\t \b \n \r \f \" \' \\ \uXXXX
// \UXXXXXXXX). Unknown or malformed escapes are kept verbatim and counted
// in *unknown_escapes when it is non-null.
std::string UnescapeLiteral(std::string_view text,
                            size_t *unknown_escapes = nullptr);

// "lexical"@lang or "lexical"^^<datatype>.
std::string FormatLiteral(const Literal &literal);

// Appends the UTF-8 encoding of a code point.
void AppendUtf8(char32_t code_point, std::string *out);

// Replaces every invalid UTF-8 sequence in *text with U+FFFD and returns
// the number of replacements.
size_t SanitizeUtf8(std::string *text);

// True when text is valid UTF-8.
bool IsValidUtf8(std::string_view text);

}  // namespace fbont

#endif  // FBONT_NTRIPLES_H_

// Copyright 2026 The Riwaya Authors.
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

// Unquoted TSV fields: backslash, tab and newline are escaped as `\\`, `\t`
// and `\n`. List-valued fields escape their separator the same way.

#ifndef RIWAYA_TSV_H_
#define RIWAYA_TSV_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace riwaya::tsv {

// `extra` is an additional character to escape as `\<extra>`.
std::string Escape(std::string_view field, char extra = '\0');
// Returns nullopt on a dangling or unknown escape.
std::optional<std::string> Unescape(std::string_view field);

// Splits on `sep` occurrences that are not preceded by an escaping
// backslash. The pieces are still escaped.
std::vector<std::string_view> SplitEscaped(std::string_view text, char sep);
std::vector<std::string_view> SplitTabs(std::string_view line);

std::vector<std::string_view> Lines(std::string_view text);

std::optional<std::int64_t> ParseInt(std::string_view text);

}  // namespace riwaya::tsv

#endif  // RIWAYA_TSV_H_

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

#ifndef RIWAYA_UTF8_H_
#define RIWAYA_UTF8_H_

#include <cstddef>
#include <string_view>

namespace riwaya::utf8 {

bool IsValid(std::string_view text);
// 1-based line of the first invalid byte; 0 when the text is valid.
int FirstInvalidLine(std::string_view text);

// Length of the sequence starting at text[pos] (1 for stray bytes).
size_t SequenceLength(std::string_view text, size_t pos);
char32_t DecodeAt(std::string_view text, size_t pos);
// Start of the code point that ends right before `pos`.
size_t PreviousStart(std::string_view text, size_t pos);

// Moves `count` code points backwards/forwards from `pos`, clamped to the
// text.
size_t StepBack(std::string_view text, size_t pos, size_t count);
size_t StepForward(std::string_view text, size_t pos, size_t count);

size_t CodePointCount(std::string_view text);

// Letters, digits and combining or modifier letters (ʿ, ʾ). ASCII
// punctuation, spaces, general punctuation and arrows are not.
bool IsWordChar(char32_t cp);

}  // namespace riwaya::utf8

#endif  // RIWAYA_UTF8_H_

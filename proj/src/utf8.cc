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

#include "utf8.h"

namespace riwaya::utf8 {
namespace {

size_t ValidPrefix(std::string_view text) {
  size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    size_t len = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > text.size()) return i;
    for (size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    const bool overlong = (len == 2 && cp < 0x80) ||
                          (len == 3 && cp < 0x800) ||
                          (len == 4 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return i;
    }
    i += len;
  }
  return i;
}

}  // namespace

bool IsValid(std::string_view text) { return ValidPrefix(text) == text.size(); }

int FirstInvalidLine(std::string_view text) {
  const size_t bad = ValidPrefix(text);
  if (bad == text.size()) return 0;
  int line = 1;
  for (size_t i = 0; i < bad; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

size_t SequenceLength(std::string_view text, size_t pos) {
  const auto c = static_cast<unsigned char>(text[pos]);
  size_t len = 1;
  if ((c & 0xE0) == 0xC0) {
    len = 2;
  } else if ((c & 0xF0) == 0xE0) {
    len = 3;
  } else if ((c & 0xF8) == 0xF0) {
    len = 4;
  }
  return pos + len <= text.size() ? len : 1;
}

char32_t DecodeAt(std::string_view text, size_t pos) {
  const size_t len = SequenceLength(text, pos);
  const auto c = static_cast<unsigned char>(text[pos]);
  if (len == 1) return c;
  char32_t cp = c & (0x7F >> len);
  for (size_t k = 1; k < len; ++k) {
    cp = (cp << 6) | (static_cast<unsigned char>(text[pos + k]) & 0x3F);
  }
  return cp;
}

size_t PreviousStart(std::string_view text, size_t pos) {
  if (pos == 0) return 0;
  size_t start = pos - 1;
  while (start > 0 &&
         (static_cast<unsigned char>(text[start]) & 0xC0) == 0x80) {
    --start;
  }
  return start;
}

size_t StepBack(std::string_view text, size_t pos, size_t count) {
  while (count-- > 0 && pos > 0) pos = PreviousStart(text, pos);
  return pos;
}

size_t StepForward(std::string_view text, size_t pos, size_t count) {
  while (count-- > 0 && pos < text.size()) pos += SequenceLength(text, pos);
  return pos;
}

size_t CodePointCount(std::string_view text) {
  size_t count = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++count;
  }
  return count;
}

bool IsWordChar(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
           (cp >= 'A' && cp <= 'Z');
  }
  if (cp >= 0x80 && cp <= 0xBF) return false;   // Latin-1 punctuation, «»
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, arrows
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  switch (cp) {
    case 0x060C: case 0x061B: case 0x061F: case 0x06D4:  // Arabic punctuation
    case 0xFD3E: case 0xFD3F:
      return false;
    default:
      return true;
  }
}

}  // namespace riwaya::utf8

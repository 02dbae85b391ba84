// Copyright 2026 The defectscan authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dscan/frontend/source.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

namespace dscan::frontend {

namespace {

// Validates UTF-8 and reports the line of the first bad byte.
bool validate_utf8(const std::string& s, int& bad_line) {
  int line = 1;
  size_t i = 0;
  const auto* b = reinterpret_cast<const uint8_t*>(s.data());
  const size_t n = s.size();
  while (i < n) {
    uint8_t c = b[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (c < 0x80) {
      ++i;
      continue;
    }
    int extra;
    if ((c & 0xE0) == 0xC0 && c >= 0xC2) extra = 1;
    else if ((c & 0xF0) == 0xE0) extra = 2;
    else if ((c & 0xF8) == 0xF0 && c <= 0xF4) extra = 3;
    else {
      bad_line = line;
      return false;
    }
    if (i + extra >= n) {
      bad_line = line;
      return false;
    }
    for (int k = 1; k <= extra; ++k) {
      if ((b[i + k] & 0xC0) != 0x80) {
        bad_line = line;
        return false;
      }
    }
    i += 1 + extra;
  }
  return true;
}

std::string latin1_to_utf8(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

std::string normalize_codec_name(std::string name) {
  std::string out;
  for (char c : name) {
    if (c == '_') c = '-';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

enum class Codec { Utf8, Latin1, Ascii, Unknown };

Codec codec_from_name(const std::string& raw) {
  std::string n = normalize_codec_name(raw);
  if (n == "utf-8" || n == "utf8" || n == "u8" || n == "utf-8-sig") return Codec::Utf8;
  if (n == "latin-1" || n == "latin1" || n == "latin" || n == "iso-8859-1" ||
      n == "iso8859-1" || n == "8859" || n == "cp819" || n == "l1")
    return Codec::Latin1;
  if (n == "ascii" || n == "us-ascii" || n == "646") return Codec::Ascii;
  return Codec::Unknown;
}

// PEP 263: "coding[:=]\s*([-\w.]+)" inside a comment on line 1 or 2.
std::string find_coding_declaration(const std::string& text) {
  size_t pos = 0;
  for (int ln = 0; ln < 2 && pos < text.size(); ++ln) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    size_t hash = line.find('#');
    if (hash != std::string::npos) {
      size_t c = line.find("coding", hash);
      if (c != std::string::npos) {
        size_t p = c + 6;
        if (p < line.size() && (line[p] == ':' || line[p] == '=')) {
          ++p;
          while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
          size_t start = p;
          while (p < line.size()) {
            char ch = line[p];
            if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' ||
                ch == '_' || ch == '.')
              ++p;
            else
              break;
          }
          if (p > start) return line.substr(start, p - start);
        }
      }
    }
    pos = eol + 1;
  }
  return {};
}

std::string normalize_newlines(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '\r') {
      if (i + 1 < s.size() && s[i + 1] == '\n') ++i;
      out.push_back('\n');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

int count_physical_lines(const std::string& text) {
  if (text.empty()) return 0;
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  if (text.back() != '\n') ++n;
  return n;
}

std::optional<SyntaxError> decode_source(const std::string& path,
                                         const std::string& raw_bytes,
                                         SourceFile& out) {
  std::string bytes = raw_bytes;
  bool had_bom = false;
  if (bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xEF &&
      static_cast<unsigned char>(bytes[1]) == 0xBB &&
      static_cast<unsigned char>(bytes[2]) == 0xBF) {
    bytes.erase(0, 3);
    had_bom = true;
  }

  if (bytes.find('\0') != std::string::npos)
    return SyntaxError{1, 0, "source code cannot contain null bytes"};

  std::string coding = find_coding_declaration(bytes);
  Codec codec = Codec::Utf8;
  if (!coding.empty()) {
    codec = codec_from_name(coding);
    if (codec == Codec::Unknown)
      return SyntaxError{1, 0, "unsupported source encoding: " + coding};
    if (had_bom && codec != Codec::Utf8)
      return SyntaxError{1, 0, "encoding declaration conflicts with UTF-8 BOM"};
  }

  std::string text;
  int bad_line = 1;
  switch (codec) {
    case Codec::Utf8:
      if (!validate_utf8(bytes, bad_line))
        return SyntaxError{bad_line, 0, "invalid UTF-8 byte sequence"};
      text = std::move(bytes);
      break;
    case Codec::Ascii:
      for (size_t i = 0, ln = 1; i < bytes.size(); ++i) {
        if (bytes[i] == '\n') ++ln;
        if (static_cast<unsigned char>(bytes[i]) >= 0x80)
          return SyntaxError{static_cast<int>(ln), 0, "non-ASCII byte in ascii-coded source"};
      }
      text = std::move(bytes);
      break;
    case Codec::Latin1:
      text = latin1_to_utf8(bytes);
      break;
    case Codec::Unknown:
      return SyntaxError{1, 0, "unsupported source encoding"};
  }

  out.path = path;
  out.text = normalize_newlines(text);
  out.physical_lines = count_physical_lines(out.text);
  return std::nullopt;
}

}  // namespace dscan::frontend

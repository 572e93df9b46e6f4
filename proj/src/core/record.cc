// Copyright 2026 The wPINQ Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wpinq/core/record.h"

#include <cassert>
#include <charconv>
#include <cstdio>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace wpinq {
namespace {

constexpr char kEnd = 0x00;
constexpr char kEscape = static_cast<char>(0xFF);
constexpr char kTerminator = 0x01;

char Tag(Record::Kind kind) { return static_cast<char>(kind); }

void AppendU64(std::string& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xFF));
  }
}

std::uint64_t ReadU64(const std::string& bytes, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v = (v << 8) | static_cast<unsigned char>(bytes[pos + i]);
  }
  return v;
}

constexpr std::uint64_t kSignFlip = std::uint64_t{1} << 63;

// Length of the encoded value starting at `pos`.
std::size_t EncodedLength(const std::string& bytes, std::size_t pos) {
  switch (static_cast<Record::Kind>(bytes[pos])) {
    case Record::Kind::kInt:
    case Record::Kind::kNode:
      return 9;
    case Record::Kind::kEdge:
      return 17;
    case Record::Kind::kString: {
      std::size_t p = pos + 1;
      while (!(bytes[p] == kEnd && bytes[p + 1] == kTerminator)) {
        p += bytes[p] == kEnd ? 2 : 1;
      }
      return p + 2 - pos;
    }
    case Record::Kind::kTuple: {
      std::size_t p = pos + 1;
      while (bytes[p] != kEnd) p += EncodedLength(bytes, p);
      return p + 1 - pos;
    }
    case Record::Kind::kIndexed:
      return 1 + EncodedLength(bytes, pos + 1) + 8;
  }
  assert(false && "corrupt record encoding");
  return 0;
}

void AppendText(const std::string& bytes, std::size_t pos, std::string& out);

void AppendQuoted(std::string_view s, std::string& out) {
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        if (c < 0x20 || c >= 0x7F) {
          char buf[5];
          std::snprintf(buf, sizeof(buf), "\\x%02X", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

std::string DecodeString(const std::string& bytes, std::size_t pos) {
  std::string s;
  std::size_t p = pos + 1;
  while (!(bytes[p] == kEnd && bytes[p + 1] == kTerminator)) {
    if (bytes[p] == kEnd) {
      s.push_back('\0');
      p += 2;
    } else {
      s.push_back(bytes[p]);
      ++p;
    }
  }
  return s;
}

void AppendText(const std::string& bytes, std::size_t pos, std::string& out) {
  switch (static_cast<Record::Kind>(bytes[pos])) {
    case Record::Kind::kInt:
      absl::StrAppend(&out,
                      static_cast<std::int64_t>(ReadU64(bytes, pos + 1) ^ kSignFlip));
      return;
    case Record::Kind::kNode:
      absl::StrAppend(&out, "n", ReadU64(bytes, pos + 1));
      return;
    case Record::Kind::kEdge:
      absl::StrAppend(&out, "e(", ReadU64(bytes, pos + 1), ",",
                      ReadU64(bytes, pos + 9), ")");
      return;
    case Record::Kind::kString:
      AppendQuoted(DecodeString(bytes, pos), out);
      return;
    case Record::Kind::kTuple: {
      out.push_back('(');
      std::size_t p = pos + 1;
      bool first = true;
      while (bytes[p] != kEnd) {
        if (!first) out.push_back(',');
        first = false;
        AppendText(bytes, p, out);
        p += EncodedLength(bytes, p);
      }
      out.push_back(')');
      return;
    }
    case Record::Kind::kIndexed: {
      out.push_back('<');
      AppendText(bytes, pos + 1, out);
      std::size_t inner = EncodedLength(bytes, pos + 1);
      absl::StrAppend(&out, ",", ReadU64(bytes, pos + 1 + inner), ">");
      return;
    }
  }
}

// Recursive-descent parser over the text form.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  absl::StatusOr<Record> ParseAll() {
    auto r = ParseValue();
    if (!r.ok()) return r;
    if (pos_ != text_.size()) return Error("trailing characters");
    return r;
  }

 private:
  absl::Status Error(std::string_view what) const {
    return absl::InvalidArgumentError(absl::StrCat(
        "record parse error at offset ", pos_, ": ", std::string(what), " in '",
        std::string(text_), "'"));
  }

  bool Consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  absl::StatusOr<std::uint64_t> ParseUnsigned() {
    std::uint64_t v = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr == begin) return Error("expected digits");
    pos_ += ptr - begin;
    return v;
  }

  absl::StatusOr<Record> ParseValue() {
    if (pos_ >= text_.size()) return Error("unexpected end");
    char c = text_[pos_];
    if (c == '-' || (c >= '0' && c <= '9')) {
      std::int64_t v = 0;
      const char* begin = text_.data() + pos_;
      auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), v);
      if (ec != std::errc()) return Error("bad integer");
      pos_ += ptr - begin;
      return Record::Int(v);
    }
    if (c == 'n') {
      ++pos_;
      auto id = ParseUnsigned();
      if (!id.ok()) return id.status();
      return Record::Node(*id);
    }
    if (c == 'e') {
      ++pos_;
      if (!Consume('(')) return Error("expected '(' after 'e'");
      auto src = ParseUnsigned();
      if (!src.ok()) return src.status();
      if (!Consume(',')) return Error("expected ','");
      auto dst = ParseUnsigned();
      if (!dst.ok()) return dst.status();
      if (!Consume(')')) return Error("expected ')'");
      return Record::Edge(*src, *dst);
    }
    if (c == '"') return ParseString();
    if (c == '(') {
      ++pos_;
      std::vector<Record> elements;
      if (Consume(')')) return Record::Tuple(elements);
      while (true) {
        auto e = ParseValue();
        if (!e.ok()) return e;
        elements.push_back(*std::move(e));
        if (Consume(')')) break;
        if (!Consume(',')) return Error("expected ',' or ')'");
      }
      return Record::Tuple(elements);
    }
    if (c == '<') {
      ++pos_;
      auto inner = ParseValue();
      if (!inner.ok()) return inner;
      if (!Consume(',')) return Error("expected ','");
      auto index = ParseUnsigned();
      if (!index.ok()) return index.status();
      if (!Consume('>')) return Error("expected '>'");
      return Record::Indexed(*inner, *index);
    }
    return Error("unexpected character");
  }

  absl::StatusOr<Record> ParseString() {
    ++pos_;  // opening quote
    std::string s;
    while (true) {
      if (pos_ >= text_.size()) return Error("unterminated string");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        s.push_back(c);
        continue;
      }
      if (pos_ >= text_.size()) return Error("dangling escape");
      char e = text_[pos_++];
      switch (e) {
        case '"':
        case '\\':
          s.push_back(e);
          break;
        case 't':
          s.push_back('\t');
          break;
        case 'n':
          s.push_back('\n');
          break;
        case 'x': {
          if (pos_ + 2 > text_.size()) return Error("short \\x escape");
          unsigned v = 0;
          auto [ptr, ec] = std::from_chars(text_.data() + pos_,
                                           text_.data() + pos_ + 2, v, 16);
          if (ec != std::errc() || ptr != text_.data() + pos_ + 2) {
            return Error("bad \\x escape");
          }
          pos_ += 2;
          s.push_back(static_cast<char>(v));
          break;
        }
        default:
          return Error("unknown escape");
      }
    }
    return Record::String(s);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Record::Record() : bytes_{Tag(Kind::kTuple), kEnd} {}

Record Record::Int(std::int64_t value) {
  std::string b(1, Tag(Kind::kInt));
  AppendU64(b, static_cast<std::uint64_t>(value) ^ kSignFlip);
  return Record(std::move(b));
}

Record Record::Node(NodeId id) {
  std::string b(1, Tag(Kind::kNode));
  AppendU64(b, id);
  return Record(std::move(b));
}

Record Record::Edge(NodeId src, NodeId dst) {
  std::string b(1, Tag(Kind::kEdge));
  b.reserve(17);
  AppendU64(b, src);
  AppendU64(b, dst);
  return Record(std::move(b));
}

Record Record::String(std::string_view value) {
  std::string b(1, Tag(Kind::kString));
  for (char c : value) {
    b.push_back(c);
    if (c == kEnd) b.push_back(kEscape);
  }
  b.push_back(kEnd);
  b.push_back(kTerminator);
  return Record(std::move(b));
}

Record Record::Tuple(std::initializer_list<Record> elements) {
  return Tuple(std::span<const Record>(elements.begin(), elements.size()));
}

Record Record::Tuple(std::span<const Record> elements) {
  std::size_t total = 2;
  for (const Record& e : elements) total += e.bytes_.size();
  std::string b;
  b.reserve(total);
  b.push_back(Tag(Kind::kTuple));
  for (const Record& e : elements) b += e.bytes_;
  b.push_back(kEnd);
  return Record(std::move(b));
}

Record Record::Indexed(const Record& value, std::uint64_t index) {
  std::string b;
  b.reserve(value.bytes_.size() + 9);
  b.push_back(Tag(Kind::kIndexed));
  b += value.bytes_;
  AppendU64(b, index);
  return Record(std::move(b));
}

absl::StatusOr<Record> Record::Parse(std::string_view text) {
  return Parser(text).ParseAll();
}

std::int64_t Record::AsInt() const {
  assert(kind() == Kind::kInt);
  return static_cast<std::int64_t>(ReadU64(bytes_, 1) ^ kSignFlip);
}

NodeId Record::AsNode() const {
  assert(kind() == Kind::kNode);
  return ReadU64(bytes_, 1);
}

NodeId Record::EdgeSource() const {
  assert(kind() == Kind::kEdge);
  return ReadU64(bytes_, 1);
}

NodeId Record::EdgeTarget() const {
  assert(kind() == Kind::kEdge);
  return ReadU64(bytes_, 9);
}

std::string Record::AsString() const {
  assert(kind() == Kind::kString);
  return DecodeString(bytes_, 0);
}

std::size_t Record::TupleSize() const {
  assert(kind() == Kind::kTuple);
  std::size_t n = 0;
  for (std::size_t p = 1; bytes_[p] != kEnd; p += EncodedLength(bytes_, p)) ++n;
  return n;
}

std::size_t Record::ElementOffset(std::size_t i) const {
  assert(kind() == Kind::kTuple);
  std::size_t p = 1;
  for (std::size_t k = 0; k < i; ++k) {
    assert(bytes_[p] != kEnd && "tuple index out of range");
    p += EncodedLength(bytes_, p);
  }
  assert(bytes_[p] != kEnd && "tuple index out of range");
  return p;
}

Record Record::Element(std::size_t i) const {
  std::size_t p = ElementOffset(i);
  return Record(bytes_.substr(p, EncodedLength(bytes_, p)));
}

NodeId Record::NodeAt(std::size_t i) const {
  std::size_t p = ElementOffset(i);
  assert(static_cast<Kind>(bytes_[p]) == Kind::kNode);
  return ReadU64(bytes_, p + 1);
}

std::vector<Record> Record::Elements() const {
  assert(kind() == Kind::kTuple);
  std::vector<Record> out;
  for (std::size_t p = 1; bytes_[p] != kEnd;) {
    std::size_t len = EncodedLength(bytes_, p);
    out.push_back(Record(bytes_.substr(p, len)));
    p += len;
  }
  return out;
}

Record Record::IndexedValue() const {
  assert(kind() == Kind::kIndexed);
  return Record(bytes_.substr(1, EncodedLength(bytes_, 1)));
}

std::uint64_t Record::Index() const {
  assert(kind() == Kind::kIndexed);
  return ReadU64(bytes_, 1 + EncodedLength(bytes_, 1));
}

std::string Record::ToText() const {
  std::string out;
  AppendText(bytes_, 0, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Record& r) {
  return os << r.ToText();
}

}  // namespace wpinq

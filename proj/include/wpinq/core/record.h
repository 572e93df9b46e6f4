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

#ifndef WPINQ_CORE_RECORD_H_
#define WPINQ_CORE_RECORD_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace wpinq {

using NodeId = std::uint64_t;

// An immutable record value with a canonical byte encoding.
//
// Records are encoded once, at construction. Two records are equal exactly
// when their encodings are byte-equal, and the total order is the
// lexicographic order of the encodings. Integers and node ids are stored
// big-endian (integers with the sign bit flipped) so the byte order agrees
// with numeric order; tuples compare element by element, shorter prefixes
// first.
//
// Text form, used by the measurement files:
//   42  -7          integer
//   n17             node id
//   e(3,4)          edge 3 -> 4
//   "abc"           string, with \\ \" \t \n \xHH escapes
//   (r1,r2,...)     tuple
//   <r,5>           indexed pair (record, index)
class Record {
 public:
  enum class Kind : std::uint8_t {
    kInt = 1,
    kNode = 2,
    kEdge = 3,
    kString = 4,
    kTuple = 5,
    kIndexed = 6,
  };

  // The empty tuple.
  Record();

  static Record Int(std::int64_t value);
  static Record Node(NodeId id);
  static Record Edge(NodeId src, NodeId dst);
  static Record String(std::string_view value);
  static Record Tuple(std::initializer_list<Record> elements);
  static Record Tuple(std::span<const Record> elements);
  static Record Indexed(const Record& value, std::uint64_t index);

  // Parses the text form produced by ToText().
  static absl::StatusOr<Record> Parse(std::string_view text);

  Kind kind() const { return static_cast<Kind>(bytes_[0]); }

  // Accessors; calling one that does not match kind() is a contract
  // violation (checked with assert).
  std::int64_t AsInt() const;
  NodeId AsNode() const;
  NodeId EdgeSource() const;
  NodeId EdgeTarget() const;
  std::string AsString() const;

  std::size_t TupleSize() const;
  Record Element(std::size_t i) const;
  // Shortcut for Element(i).AsNode() that skips the intermediate copy.
  NodeId NodeAt(std::size_t i) const;
  std::vector<Record> Elements() const;

  Record IndexedValue() const;
  std::uint64_t Index() const;

  std::string ToText() const;
  const std::string& bytes() const { return bytes_; }

  friend bool operator==(const Record& a, const Record& b) {
    return a.bytes_ == b.bytes_;
  }
  friend std::strong_ordering operator<=>(const Record& a, const Record& b) {
    return a.bytes_.compare(b.bytes_) <=> 0;
  }

  template <typename H>
  friend H AbslHashValue(H h, const Record& r) {
    return H::combine(std::move(h), r.bytes_);
  }

 private:
  explicit Record(std::string bytes) : bytes_(std::move(bytes)) {}

  // Byte offset of element i inside a tuple encoding.
  std::size_t ElementOffset(std::size_t i) const;

  std::string bytes_;
};

std::ostream& operator<<(std::ostream& os, const Record& r);

}  // namespace wpinq

template <>
struct std::hash<wpinq::Record> {
  std::size_t operator()(const wpinq::Record& r) const noexcept {
    return std::hash<std::string>()(r.bytes());
  }
};

#endif  // WPINQ_CORE_RECORD_H_

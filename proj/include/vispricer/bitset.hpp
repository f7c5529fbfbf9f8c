// Copyright 2026 The Vispricer Authors.
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

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace vispricer {

/// Fixed-capacity bitset over dense node ids. The coverage counters avoid
/// materializing intermediate sets in the selection hot loops.
class NodeBitset {
 public:
  NodeBitset() = default;
  explicit NodeBitset(std::size_t bits)
      : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t bit_capacity() const { return bits_; }

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & std::uint64_t{1};
  }

  void clear() { std::fill(words_.begin(), words_.end(), std::uint64_t{0}); }

  NodeBitset& operator|=(const NodeBitset& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }

  std::int64_t count() const {
    std::int64_t total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }

  /// |this \ excluded|
  std::int64_t count_minus(const NodeBitset& excluded) const {
    std::int64_t total = 0;
    for (std::size_t w = 0; w < words_.size(); ++w)
      total += std::popcount(words_[w] & ~excluded.words_[w]);
    return total;
  }

  /// |(this ∪ added) \ excluded|
  std::int64_t count_union_minus(const NodeBitset& added,
                                 const NodeBitset& excluded) const {
    std::int64_t total = 0;
    for (std::size_t w = 0; w < words_.size(); ++w)
      total += std::popcount((words_[w] | added.words_[w]) & ~excluded.words_[w]);
    return total;
  }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace vispricer

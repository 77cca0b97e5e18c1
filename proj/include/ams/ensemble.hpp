// Copyright 2026 The ams-clt Authors
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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ams {

/// The n replica values of an AMS run.
///
/// Stored as a binary min-heap ordered by (value, insertion id), so killing
/// the k lowest replicas and inserting k new ones costs O(k log n). The
/// insertion id makes the order total and deterministic when two values
/// collide in floating point.
class ReplicaEnsemble {
 public:
  struct Entry {
    double value;
    std::uint64_t id;
  };

  explicit ReplicaEnsemble(std::span<const double> values);

  std::size_t size() const noexcept { return heap_.size(); }
  bool empty() const noexcept { return heap_.empty(); }

  double min() const { return heap_.front().value; }
  double pop_min();
  /// Replace the smallest entry by `value` (pop followed by push, one sift).
  void replace_min(double value);
  void push(double value);

  std::size_t count_at_least(double threshold) const noexcept;
  /// Values in ascending (value, id) order.
  std::vector<double> sorted_values() const;

 private:
  static bool before(const Entry& lhs, const Entry& rhs) noexcept {
    return lhs.value < rhs.value || (lhs.value == rhs.value && lhs.id < rhs.id);
  }
  void sift_down(std::size_t pos) noexcept;
  void sift_up(std::size_t pos) noexcept;

  std::vector<Entry> heap_;
  std::uint64_t next_id_ = 0;
};

}  // namespace ams

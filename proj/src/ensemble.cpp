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

#include "ams/ensemble.hpp"

#include <algorithm>

#include "ams/error.hpp"

namespace ams {

ReplicaEnsemble::ReplicaEnsemble(std::span<const double> values) {
  heap_.reserve(values.size() + 1);
  for (double v : values) heap_.push_back({v, next_id_++});
  for (std::size_t i = heap_.size() / 2; i-- > 0;) sift_down(i);
}

double ReplicaEnsemble::pop_min() {
  require(!heap_.empty(), ErrorKind::Internal, "pop_min on an empty ensemble");
  double out = heap_.front().value;
  heap_.front() = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) sift_down(0);
  return out;
}

void ReplicaEnsemble::replace_min(double value) {
  require(!heap_.empty(), ErrorKind::Internal, "replace_min on an empty ensemble");
  heap_.front() = {value, next_id_++};
  sift_down(0);
}

void ReplicaEnsemble::push(double value) {
  heap_.push_back({value, next_id_++});
  sift_up(heap_.size() - 1);
}

std::size_t ReplicaEnsemble::count_at_least(double threshold) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      heap_.begin(), heap_.end(), [threshold](const Entry& e) { return e.value >= threshold; }));
}

std::vector<double> ReplicaEnsemble::sorted_values() const {
  std::vector<Entry> copy = heap_;
  std::sort(copy.begin(), copy.end(), before);
  std::vector<double> out;
  out.reserve(copy.size());
  for (const auto& e : copy) out.push_back(e.value);
  return out;
}

void ReplicaEnsemble::sift_down(std::size_t pos) noexcept {
  const std::size_t size = heap_.size();
  Entry moving = heap_[pos];
  for (;;) {
    std::size_t child = 2 * pos + 1;
    if (child >= size) break;
    if (child + 1 < size && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], moving)) break;
    heap_[pos] = heap_[child];
    pos = child;
  }
  heap_[pos] = moving;
}

void ReplicaEnsemble::sift_up(std::size_t pos) noexcept {
  Entry moving = heap_[pos];
  while (pos > 0) {
    std::size_t parent = (pos - 1) / 2;
    if (!before(moving, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    pos = parent;
  }
  heap_[pos] = moving;
}

}  // namespace ams

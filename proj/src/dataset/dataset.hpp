// Copyright 2026 The cpo Authors
// SPDX-License-Identifier: Apache-2.0
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

#ifndef CPO_DATASET_DATASET_HPP_
#define CPO_DATASET_DATASET_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace cpo {

// An ordered question/answer collection. Item ids are unique; order is the
// file order and stays stable across loads.
struct EvalDataset {
  std::string name;
  std::vector<QAItem> items;
};

// One JSON object per line: {"id": ..., "question": ..., "answer": ...}.
// Blank lines are ignored. Malformed lines report their line number;
// duplicate ids are rejected.
EvalDataset load_dataset(const std::string& path);

EvalDataset parse_dataset_text(const std::string& text,
                               const std::string& name);

// Uniform random subset of `count` items, deterministic in `seed`, original
// order preserved. count must satisfy 1 <= count <= |source|.
EvalDataset sample_pdset(const EvalDataset& source, size_t count,
                         std::int64_t seed);

// Development-set size used when the caller does not override it.
inline constexpr size_t kDefaultPdsetSize = 100;

}  // namespace cpo

#endif  // CPO_DATASET_DATASET_HPP_

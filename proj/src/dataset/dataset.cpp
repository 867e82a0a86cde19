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

#include "dataset/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "core/error.hpp"

namespace cpo {

namespace {

// Unbiased draw in [0, bound); hand-rolled so results do not depend on the
// standard library's distribution implementation.
std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = -bound % bound;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace

EvalDataset parse_dataset_text(const std::string& text,
                               const std::string& name) {
  EvalDataset ds;
  ds.name = name;
  std::unordered_set<std::string> seen_ids;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorClass::kParse, name + " line " +
                                          std::to_string(line_no) +
                                          ": invalid JSON: " + e.what());
    }
    QAItem item;
    try {
      item = qa_item_from_json(j);
    } catch (const Json::exception& e) {
      throw Error(ErrorClass::kParse, name + " line " +
                                          std::to_string(line_no) + ": " +
                                          e.what());
    }
    if (item.question.empty() || item.answer.empty()) {
      throw Error(ErrorClass::kParse,
                  name + " line " + std::to_string(line_no) +
                      ": question and answer must be non-empty");
    }
    if (!seen_ids.insert(item.id).second) {
      throw Error(ErrorClass::kParse, name + " line " +
                                          std::to_string(line_no) +
                                          ": duplicate id \"" + item.id + "\"");
    }
    ds.items.push_back(std::move(item));
  }
  return ds;
}

EvalDataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorClass::kIo, "cannot open dataset file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dataset_text(buf.str(), path);
}

EvalDataset sample_pdset(const EvalDataset& source, size_t count,
                         std::int64_t seed) {
  if (count < 1 || count > source.items.size()) {
    throw Error(ErrorClass::kInvalidArgument,
                "sample count " + std::to_string(count) +
                    " out of range for dataset of " +
                    std::to_string(source.items.size()));
  }
  std::vector<size_t> indices(source.items.size());
  std::iota(indices.begin(), indices.end(), size_t{0});

  // Partial Fisher-Yates, then restore original order of the chosen items.
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  for (size_t i = 0; i < count; ++i) {
    size_t j = i + static_cast<size_t>(
                       bounded_rand(rng, indices.size() - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(count);
  std::sort(indices.begin(), indices.end());

  EvalDataset out;
  out.name = source.name;
  out.items.reserve(count);
  for (size_t idx : indices) out.items.push_back(source.items[idx]);
  return out;
}

}  // namespace cpo

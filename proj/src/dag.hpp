// Copyright 2026 The bellopt Authors
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

#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bellopt/compiler.hpp"

namespace bellopt {

struct DagNode {
  OpCode op;
  std::uint32_t a;
  std::uint32_t b;
};

/// Append-only complex expression DAG. Node ids are topologically ordered.
/// With `cse` on, structurally equal nodes are shared (commutative operands
/// are ordered first). Inputs are always unique per (row, column).
class DagBuilder {
 public:
  DagBuilder(bool cse, std::size_t ceiling) : cse_(cse), ceiling_(ceiling) {}

  std::uint32_t input(std::uint32_t row, std::uint32_t column) {
    const std::uint64_t key = (std::uint64_t{row} << 32) | column;
    auto it = inputs_.find(key);
    if (it != inputs_.end()) return it->second;
    const std::uint32_t id = push({OpCode::Input, row, column});
    inputs_.emplace(key, id);
    return id;
  }

  std::uint32_t constant(Complex value) {
    const auto key = bits(value);
    if (cse_) {
      auto it = constant_nodes_.find(key);
      if (it != constant_nodes_.end()) return it->second;
    }
    const auto index = static_cast<std::uint32_t>(constants_.size());
    constants_.push_back(value);
    const std::uint32_t id = push({OpCode::Constant, index, 0});
    if (cse_) constant_nodes_.emplace(key, id);
    return id;
  }

  std::uint32_t add(std::uint32_t x, std::uint32_t y) {
    if (x > y) std::swap(x, y);
    return intern({OpCode::Add, x, y});
  }

  std::uint32_t mul(std::uint32_t x, std::uint32_t y) {
    if (is_constant(x, 1.0)) return y;
    if (is_constant(y, 1.0)) return x;
    if (is_constant(x, -1.0)) return neg(y);
    if (is_constant(y, -1.0)) return neg(x);
    if (nodes_[x].op == OpCode::Constant && nodes_[y].op == OpCode::Constant)
      return constant(constant_value(nodes_[x].a) * constant_value(nodes_[y].a));
    if (x > y) std::swap(x, y);
    return intern({OpCode::Mul, x, y});
  }

  std::uint32_t neg(std::uint32_t x) {
    if (nodes_[x].op == OpCode::Neg) return nodes_[x].a;
    if (nodes_[x].op == OpCode::Constant) return constant(-constant_value(nodes_[x].a));
    return intern({OpCode::Neg, x, 0});
  }

  bool is_constant(std::uint32_t id, Complex value) const {
    return nodes_[id].op == OpCode::Constant && constants_[nodes_[id].a] == value;
  }

  const DagNode& node(std::uint32_t id) const { return nodes_[id]; }
  Complex constant_value(std::uint32_t index) const { return constants_[index]; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(nodes_.size()); }

 private:
  struct Key {
    std::uint64_t hi, lo;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = k.hi * 0x9e3779b97f4a7c15ull;
      h ^= k.lo + 0x7f4a7c159e3779b9ull + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };

  static Key bits(Complex value) {
    Key k{};
    const double re = value.real() + 0.0, im = value.imag() + 0.0;  // fold -0.0
    std::memcpy(&k.hi, &re, sizeof re);
    std::memcpy(&k.lo, &im, sizeof im);
    return k;
  }

  std::uint32_t intern(DagNode n) {
    if (!cse_) return push(n);
    const Key key{(std::uint64_t{static_cast<std::uint8_t>(n.op)} << 32) | n.a, n.b};
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    const std::uint32_t id = push(n);
    table_.emplace(key, id);
    return id;
  }

  std::uint32_t push(DagNode n) {
    if (nodes_.size() >= ceiling_)
      throw ResourceLimitExceeded("amplitude DAG exceeds the node ceiling of " + std::to_string(ceiling_));
    nodes_.push_back(n);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  bool cse_;
  std::size_t ceiling_;
  std::vector<DagNode> nodes_;
  std::vector<Complex> constants_;
  std::unordered_map<std::uint64_t, std::uint32_t> inputs_;
  std::unordered_map<Key, std::uint32_t, KeyHash> constant_nodes_;
  std::unordered_map<Key, std::uint32_t, KeyHash> table_;
};

}  // namespace bellopt

// Copyright 2026 The upag Authors
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

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "upag/graph_model.hpp"

namespace upag {

// Text interchange format:
//
//   # upag-el v1 M=<M> n=<n>
//   <src> <dst>        (n*M lines)
//
// In block order src runs 1,1,..,1,2,.. and dst < src. Other orders are
// accepted and resolved by peeling.
struct EdgeList {
  std::uint64_t M = 0;
  std::uint64_t n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
};

// Throws ParseError with the offending line number.
EdgeList read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Dag& d);

struct LoadedGraph {
  Dag dag;
  bool arrival_order_inferred = false;  // true when peeling was needed
  std::vector<Vertex> relabel;          // file label -> arrival index
};

// Uses the file order directly when it is a valid block order; otherwise
// peels the undirected edge set (NotPeelable if that fails).
LoadedGraph to_dag(const EdgeList& el);

}  // namespace upag

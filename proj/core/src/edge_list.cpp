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

#include "upag/edge_list.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "upag/construct.hpp"
#include "upag/errors.hpp"

namespace upag {

namespace {

std::uint64_t parse_field(const std::string& token, const std::string& key, std::size_t line) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) throw ParseError(line, "expected " + prefix + "<value>");
  try {
    std::size_t used = 0;
    const auto v = std::stoull(token.substr(prefix.size()), &used);
    if (used + prefix.size() != token.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad value in '" + token + "'");
  }
}

}  // namespace

EdgeList read_edge_list(std::istream& in) {
  EdgeList el;
  std::string text;
  std::size_t line = 0;
  bool header = false;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (!header) {
      std::istringstream ss(text);
      std::string hash, magic, version, m, n, extra;
      ss >> hash >> magic >> version >> m >> n;
      if (hash != "#" || magic != "upag-el" || version != "v1") {
        throw ParseError(line, "missing '# upag-el v1 M=<M> n=<n>' header");
      }
      el.M = parse_field(m, "M", line);
      el.n = parse_field(n, "n", line);
      if (ss >> extra) throw ParseError(line, "unexpected text after header");
      if (el.M == 0 || el.n == 0) throw ParseError(line, "M and n must be positive");
      header = true;
      continue;
    }
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ss(text);
    long long src = -1;
    long long dst = -1;
    std::string extra;
    if (!(ss >> src >> dst) || (ss >> extra) || src < 0 || dst < 0) {
      throw ParseError(line, "expected '<src> <dst>' with nonnegative integers");
    }
    const auto s = static_cast<Vertex>(src);
    const auto d = static_cast<Vertex>(dst);
    if (s > el.n || d > el.n) throw ParseError(line, "vertex outside [0..n]");
    el.edges.emplace_back(s, d);
  }
  if (!header) throw ParseError(line == 0 ? 1 : line, "empty input");
  if (el.edges.size() != el.n * el.M) {
    throw ParseError(line, "expected " + std::to_string(el.n * el.M) + " edges, found " +
                               std::to_string(el.edges.size()));
  }
  return el;
}

void write_edge_list(std::ostream& out, const Dag& d) {
  out << "# upag-el v1 M=" << d.out_degree_param() << " n=" << d.n() << '\n';
  for (std::uint64_t t = 1; t <= d.n(); ++t) {
    for (Vertex w : d.block(t)) out << t << ' ' << w << '\n';
  }
}

LoadedGraph to_dag(const EdgeList& el) {
  bool block_order = true;
  for (std::uint64_t i = 0; i < el.edges.size() && block_order; ++i) {
    const auto [s, d] = el.edges[i];
    block_order = s == i / el.M + 1 && d < s;
  }
  LoadedGraph g;
  if (block_order) {
    std::vector<Vertex> targets;
    targets.reserve(el.edges.size());
    for (const auto& e : el.edges) targets.push_back(e.second);
    g.dag = Dag(el.n, el.M, std::move(targets));
    g.relabel.resize(el.n + 1);
    std::iota(g.relabel.begin(), g.relabel.end(), Vertex{0});
    return g;
  }
  std::vector<UndirectedEdge> edges;
  edges.reserve(el.edges.size());
  for (const auto& [s, d] : el.edges) edges.push_back({s, d});
  PeelResult p = peel_with_labels(UndirectedMultigraph(el.n + 1, std::move(edges)), el.M);
  g.dag = std::move(p.dag);
  g.relabel = std::move(p.relabel);
  g.arrival_order_inferred = true;
  return g;
}

}  // namespace upag

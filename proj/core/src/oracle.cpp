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

#include "upag/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace upag {

namespace {

std::vector<std::uint64_t> count_in_degrees(const Dag& d) {
  std::vector<std::uint64_t> c(d.vertex_count(), 0);
  for (std::uint64_t t = 1; t <= d.n(); ++t) {
    for (Vertex w : d.block(t)) ++c[w];
  }
  return c;
}

}  // namespace

NaiveGraph NaiveGraph::unlabelled(const Dag& d, TieBreak tie) {
  const std::uint64_t V = d.vertex_count();
  const std::uint64_t M = d.out_degree_param();
  const auto indeg = count_in_degrees(d);
  std::vector<std::uint64_t> second(V);
  for (Vertex v = 0; v < V; ++v) second[v] = v;
  if (tie == TieBreak::kFirstOccurrence) {
    std::uint64_t pos = 0;
    std::vector<bool> seen(V, false);
    for (Vertex v = 0; v < V; ++v) second[v] = V * M + v;
    for (std::uint64_t t = 1; t <= d.n(); ++t) {
      for (Vertex w : d.block(t)) {
        if (!seen[w]) {
          seen[w] = true;
          second[w] = pos;
        }
        ++pos;
      }
    }
  } else if (tie != TieBreak::kAscendingIndex) {
    throw std::invalid_argument("oracle supports the built-in tie-breaks only");
  }
  auto less = [&](Vertex a, Vertex b) {
    if (indeg[a] != indeg[b]) return indeg[a] < indeg[b];
    if (second[a] != second[b]) return second[a] < second[b];
    return a < b;
  };

  std::vector<Vertex> par(V, 0);
  std::vector<std::vector<Vertex>> kids(V);
  for (std::uint64_t t = 1; t <= d.n(); ++t) {
    Vertex best = d.block(t)[0];
    for (Vertex w : d.block(t)) {
      if (less(w, best)) best = w;
    }
    par[t] = best;
    kids[best].push_back(t);
  }
  // Subtree sizes (children have larger original labels), then labels.
  std::vector<std::uint64_t> size(V, 1);
  for (Vertex v = V; v-- > 1;) size[par[v]] += size[v];
  std::vector<Vertex> label(V, 0);
  for (Vertex v = 0; v < V; ++v) {
    std::uint64_t next = label[v] + 1;
    for (Vertex c : kids[v]) {
      label[c] = next;
      next += size[c];
    }
  }

  NaiveGraph g;
  g.relabel_ = label;
  g.out_.assign(V, {});
  g.parent_.assign(V, 0);
  std::vector<std::vector<Vertex>> tree_in(V);
  std::vector<std::vector<Vertex>> rest_in(V);
  std::vector<Vertex> old_of(V);
  for (Vertex v = 0; v < V; ++v) old_of[label[v]] = v;
  for (Vertex j = 1; j < V; ++j) {
    const Vertex old = old_of[j];
    const Vertex p = label[par[old]];
    g.parent_[j] = p;
    g.out_[j].push_back(p);
    tree_in[p].push_back(j);
    bool skipped = false;
    for (Vertex w : d.block(old)) {
      if (!skipped && w == par[old]) {
        skipped = true;
        continue;
      }
      g.out_[j].push_back(label[w]);
      rest_in[label[w]].push_back(j);
    }
  }
  g.in_.assign(V, {});
  for (Vertex v = 0; v < V; ++v) {
    g.in_[v] = tree_in[v];
    g.in_[v].insert(g.in_[v].end(), rest_in[v].begin(), rest_in[v].end());
  }
  return g;
}

NaiveGraph NaiveGraph::labelled(const Dag& d) {
  const std::uint64_t V = d.vertex_count();
  NaiveGraph g;
  g.out_.assign(V, {});
  g.in_.assign(V, {});
  g.relabel_.resize(V);
  g.parent_.assign(V, 0);
  for (Vertex v = 0; v < V; ++v) g.relabel_[v] = v;
  for (std::uint64_t t = 1; t <= d.n(); ++t) {
    for (Vertex w : d.block(t)) {
      g.out_[t].push_back(w);
      g.in_[w].push_back(t);
    }
  }
  return g;
}

bool NaiveGraph::adjacent(Vertex u, Vertex v) const {
  const auto& a = out_.at(u);
  const auto& b = out_.at(v);
  return std::find(a.begin(), a.end(), v) != a.end() || std::find(b.begin(), b.end(), u) != b.end();
}

namespace {

class Checker {
 public:
  Checker(const CompressedGraph& g, const NaiveGraph& naive) : g_(g), naive_(naive) {}

  // `what` builds the query description; only called on a mismatch.
  template <class What, class Fn>
  void expect_value(What&& what, std::uint64_t expected, Fn&& fn) {
    if (report_.first_divergence) return;
    ++report_.queries;
    try {
      const std::uint64_t got = fn();
      if (got != expected) fail(what(), std::to_string(expected), std::to_string(got));
    } catch (const std::exception& e) {
      fail(what(), std::to_string(expected), std::string("exception: ") + e.what());
    }
  }

  template <class What, class Fn>
  void expect_throw(What&& what, Fn&& fn) {
    if (report_.first_divergence) return;
    ++report_.queries;
    try {
      const auto got = fn();
      fail(what(), "out_of_range", std::to_string(got));
    } catch (const std::out_of_range&) {
    } catch (const std::exception& e) {
      fail(what(), "out_of_range", std::string("other exception: ") + e.what());
    }
  }

  void out_neighbour(Vertex v, std::uint64_t i) {
    auto what = [&] { return "out_neighbour(" + std::to_string(v) + "," + std::to_string(i) + ")"; };
    const auto& list = naive_.out(v);
    if (i >= 1 && i <= list.size()) {
      expect_value(what, list[i - 1], [&] { return g_.out_neighbour(v, i); });
    } else {
      expect_throw(what, [&] { return g_.out_neighbour(v, i); });
    }
  }
  void in_neighbour(Vertex v, std::uint64_t i) {
    auto what = [&] { return "in_neighbour(" + std::to_string(v) + "," + std::to_string(i) + ")"; };
    const auto& list = naive_.in(v);
    if (i >= 1 && i <= list.size()) {
      expect_value(what, list[i - 1], [&] { return g_.in_neighbour(v, i); });
    } else {
      expect_throw(what, [&] { return g_.in_neighbour(v, i); });
    }
  }
  void degrees(Vertex v) {
    auto named = [v](const char* op) {
      return [v, op] { return std::string(op) + "(" + std::to_string(v) + ")"; };
    };
    expect_value(named("degree_in"), naive_.degree_in(v), [&] { return g_.degree_in(v); });
    expect_value(named("degree_out"), naive_.degree_out(v), [&] { return g_.degree_out(v); });
    expect_value(named("degree_total"), naive_.degree_in(v) + naive_.degree_out(v),
                 [&] { return g_.degree_total(v); });
  }
  void adjacent(Vertex u, Vertex v) {
    expect_value([&] { return "adjacent(" + std::to_string(u) + "," + std::to_string(v) + ")"; },
                 naive_.adjacent(u, v) ? 1 : 0, [&] { return g_.adjacent(u, v) ? 1 : 0; });
  }
  void iterators(Vertex v) {
    if (report_.first_divergence) return;
    ++report_.queries;
    std::vector<Vertex> outs;
    std::vector<Vertex> ins;
    for (Vertex w : g_.neighbours_out(v)) outs.push_back(w);
    for (Vertex w : g_.neighbours_in(v)) ins.push_back(w);
    if (outs != naive_.out(v)) fail("neighbours_out(" + std::to_string(v) + ")", "list", "other");
    if (ins != naive_.in(v)) fail("neighbours_in(" + std::to_string(v) + ")", "list", "other");
  }

  CheckReport report() const { return report_; }

 private:
  void fail(const std::string& what, const std::string& expected, const std::string& got) {
    if (!report_.first_divergence) {
      report_.first_divergence = what + ": expected " + expected + ", got " + got;
    }
  }

  const CompressedGraph& g_;
  const NaiveGraph& naive_;
  CheckReport report_;
};

}  // namespace

CheckReport check_exhaustive(const CompressedGraph& g, const NaiveGraph& naive) {
  Checker c(g, naive);
  const std::uint64_t V = naive.n() + 1;
  c.expect_value([] { return std::string("vertex_count"); }, V, [&] { return g.vertex_count(); });
  for (Vertex v = 0; v < V; ++v) {
    c.degrees(v);
    for (std::uint64_t i = 0; i <= naive.degree_out(v) + 1; ++i) c.out_neighbour(v, i);
    for (std::uint64_t i = 0; i <= naive.degree_in(v) + 1; ++i) c.in_neighbour(v, i);
    c.iterators(v);
    for (Vertex u = 0; u < V; ++u) c.adjacent(u, v);
  }
  return c.report();
}

CheckReport check_sampled(const CompressedGraph& g, const NaiveGraph& naive, std::uint64_t count,
                          std::uint64_t seed) {
  Checker c(g, naive);
  std::mt19937_64 rng(seed);
  const std::uint64_t V = naive.n() + 1;
  auto pick = [&](std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
  };
  // Index 0 or degree+1 one time in eight; otherwise a valid index.
  auto index = [&](std::uint64_t degree) -> std::uint64_t {
    if (degree == 0 || pick(8) == 0) return pick(2) == 0 ? 0 : degree + 1;
    return 1 + pick(degree);
  };
  for (std::uint64_t q = 0; q < count; ++q) {
    const Vertex v = pick(V);
    switch (pick(4)) {
      case 0:
        c.out_neighbour(v, index(naive.degree_out(v)));
        break;
      case 1:
        c.in_neighbour(v, index(naive.degree_in(v)));
        break;
      case 2:
        c.degrees(v);
        break;
      default: {
        // Bias toward true pairs; uniform pairs are almost never adjacent.
        const auto& outs = naive.out(v);
        const Vertex u = !outs.empty() && pick(2) == 0 ? outs[pick(outs.size())] : pick(V);
        c.adjacent(u, v);
        break;
      }
    }
  }
  return c.report();
}

AdmissibleOrders admissible_orders(const Dag& d) {
  const std::uint64_t n = d.n();
  if (n > kMaxEnumerationN) {
    throw std::invalid_argument("admissible order enumeration is limited to n <= " +
                                std::to_string(kMaxEnumerationN));
  }
  const std::uint64_t V = n + 1;
  const std::uint64_t M = d.out_degree_param();
  AdmissibleOrders result;
  std::optional<Rational> first;
  std::vector<Vertex> order{0};
  std::vector<bool> placed(V, false);
  placed[0] = true;

  std::function<void()> extend = [&] {
    if (order.size() == V) {
      std::vector<Vertex> pos(V);
      for (std::uint64_t i = 0; i < V; ++i) pos[order[i]] = i;
      std::vector<Vertex> targets;
      targets.reserve(n * M);
      for (std::uint64_t t = 1; t < V; ++t) {
        for (Vertex w : d.block(order[t])) targets.push_back(pos[w]);
      }
      const Rational p = naive_probability(Dag(n, M, std::move(targets)));
      const double bits = std::log2(denominator(p).convert_to<double>()) -
                          std::log2(numerator(p).convert_to<double>());
      if (result.count == 0) {
        result.min_bits = result.max_bits = bits;
        first = p;
      } else {
        result.min_bits = std::min(result.min_bits, bits);
        result.max_bits = std::max(result.max_bits, bits);
        if (p != *first) result.exact_equal = false;
      }
      ++result.count;
      return;
    }
    for (Vertex v = 1; v < V; ++v) {
      if (placed[v]) continue;
      bool ready = true;
      for (Vertex w : d.block(v)) ready = ready && placed[w];
      if (!ready) continue;
      placed[v] = true;
      order.push_back(v);
      extend();
      order.pop_back();
      placed[v] = false;
    }
  };
  extend();
  return result;
}

Rational naive_probability(const Dag& d) {
  using boost::multiprecision::cpp_int;
  const std::uint64_t M = d.out_degree_param();
  std::vector<std::uint64_t> degree(d.vertex_count(), 0);
  for (Vertex w : d.block(1)) {
    degree[1] += 1;
    degree[w] += 1;
  }
  Rational p = 1;
  for (std::uint64_t t = 2; t <= d.n(); ++t) {
    std::vector<Vertex> block(d.block(t).begin(), d.block(t).end());
    std::sort(block.begin(), block.end());
    cpp_int orderings = 0;
    do {
      ++orderings;
    } while (std::next_permutation(block.begin(), block.end()));
    Rational one_order = 1;
    for (Vertex w : block) one_order *= Rational(degree[w], 2 * (t - 1) * M);
    p *= one_order * Rational(orderings);
    for (Vertex w : block) {
      degree[t] += 1;
      degree[w] += 1;
    }
  }
  return p;
}

double naive_h0_bits(std::span<const std::uint64_t> seq) {
  std::map<std::uint64_t, double> count;
  for (auto c : seq) count[c] += 1.0;
  double bits = 0.0;
  const double total = static_cast<double>(seq.size());
  for (const auto& [c, k] : count) bits -= k * std::log2(k / total);
  return bits;
}

}  // namespace upag

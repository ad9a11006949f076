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

// upag: generate, compress and query preferential attachment graphs.
//
// Output is key=value lines. Exit status: 0 success, 1 verification
// failure, 2 usage or I/O error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "upag/compressed_graph.hpp"
#include "upag/construct.hpp"
#include "upag/edge_list.hpp"
#include "upag/entropy.hpp"
#include "upag/errors.hpp"
#include "upag/lfc.hpp"
#include "upag/oracle.hpp"
#include "upag/pa_gen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

// Raised for conditions that map to exit status 2 with a message.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed(double x, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

upag::LoadedGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return upag::to_dag(upag::read_edge_list(in));
}

std::vector<std::byte> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> out(raw.size());
  std::transform(raw.begin(), raw.end(), out.begin(), [](char c) { return std::byte(c); });
  return out;
}

void write_bytes(const std::string& path, const std::vector<std::byte>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw UsageError("write failed: " + path);
}

upag::CompressedGraph load_graph(const std::string& path) {
  return upag::CompressedGraph::deserialize(read_bytes(path));
}

upag::TieBreak parse_tie(const std::string& s) {
  if (s == "index") return upag::TieBreak::kAscendingIndex;
  if (s == "first-occurrence") return upag::TieBreak::kFirstOccurrence;
  throw UsageError("unknown tie-break '" + s + "'");
}

void warn_inferred(const upag::LoadedGraph& g) {
  if (g.arrival_order_inferred) {
    std::cerr << "warning: edge list is not in block order; arrival order was recovered by "
                 "peeling and is fixed only up to a linear extension of the DAG\n";
  }
}

// generate ---------------------------------------------------------------

struct GenerateArgs {
  std::uint64_t M = 1;
  std::uint64_t n = 1;
  std::uint64_t seed = 0;
  std::uint64_t exact_cutoff = upag::kDefaultExactCutoff;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  const upag::PaGraph g = upag::generate({a.M, a.n, a.seed, a.exact_cutoff});
  std::ofstream out(a.out);
  if (!out) throw UsageError("cannot write " + a.out);
  upag::write_edge_list(out, g.dag);
  out.close();
  if (!out) throw UsageError("write failed: " + a.out);
  std::cout << "M=" << a.M << "\nn=" << a.n << "\nseed=" << a.seed << "\nedges="
            << g.dag.edge_count() << "\n";
  const upag::LogProb& lp = *g.log_prob;
  std::cout << "lg(1/P)=" << fixed(lp.bits, 4) << "\n";
  std::cout << "exact=" << (lp.exact ? "true" : "false") << "\n";
  if (lp.exact) std::cout << "P=" << *lp.exact << "\n";
  return kExitOk;
}

// build ------------------------------------------------------------------

struct BuildArgs {
  std::string in;
  std::string out;
  std::string relabel;
  std::string mode = "unlabelled";
  std::string tie = "index";
  bool plain = false;
};

int cmd_build(const BuildArgs& a) {
  const upag::LoadedGraph loaded = load_edge_list(a.in);
  warn_inferred(loaded);
  upag::GraphBuildOptions opt;
  opt.tie_break = parse_tie(a.tie);
  opt.encoding = a.plain ? upag::BitEncoding::kPlain : upag::BitEncoding::kRrr;
  upag::CompressedGraph g;
  if (a.mode == "unlabelled") {
    g = upag::CompressedGraph::build(loaded.dag, opt);
  } else if (a.mode == "labelled") {
    g = upag::CompressedGraph::build_labelled(loaded.dag, opt);
  } else {
    throw UsageError("--mode must be labelled or unlabelled");
  }
  const auto bytes = g.serialize();
  write_bytes(a.out, bytes);
  if (!a.relabel.empty()) {
    // file label -> arrival index -> stored label
    std::vector<upag::Vertex> composed(loaded.relabel.size());
    for (std::size_t v = 0; v < composed.size(); ++v) {
      const upag::Vertex arrival = loaded.relabel[v];
      composed[v] = g.relabel() ? (*g.relabel())[arrival] : arrival;
    }
    std::ofstream r(a.relabel);
    if (!r) throw UsageError("cannot write " + a.relabel);
    r << upag::relabel_text(composed);
  }
  const auto s = g.space_report(loaded.dag);
  std::cout << "mode=" << a.mode << "\nM=" << g.M() << "\nn=" << g.n() << "\nbytes="
            << bytes.size() << "\npayload_bits=" << s.payload_bits()
            << "\ndirectory_bits=" << s.directory_bits() << "\ntotal_bits=" << s.total_bits
            << "\n";
  return kExitOk;
}

// query ------------------------------------------------------------------

std::uint64_t parse_u64(const std::string& s) {
  try {
    std::size_t used = 0;
    if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw UsageError("not a nonnegative integer: '" + s + "'");
  }
}

template <class Range>
std::string join(Range&& r) {
  std::string out;
  for (auto x : r) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  }
  return out;
}

int cmd_query(const std::string& in, const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError("query needs an operation: outn|inn|deg|adj|nbrs");
  const std::string& op = args[0];
  auto want = [&](std::size_t k) {
    if (args.size() != k + 1) {
      throw UsageError(op + " takes " + std::to_string(k) + " argument(s)");
    }
  };
  const upag::CompressedGraph g = load_graph(in);
  try {
    if (op == "outn") {
      want(2);
      std::cout << g.out_neighbour(parse_u64(args[1]), parse_u64(args[2])) << "\n";
    } else if (op == "inn") {
      want(2);
      std::cout << g.in_neighbour(parse_u64(args[1]), parse_u64(args[2])) << "\n";
    } else if (op == "deg") {
      want(1);
      const auto v = parse_u64(args[1]);
      std::cout << "in=" << g.degree_in(v) << " out=" << g.degree_out(v)
                << " total=" << g.degree_total(v) << "\n";
    } else if (op == "adj") {
      want(2);
      std::cout << (g.adjacent(parse_u64(args[1]), parse_u64(args[2])) ? "true" : "false") << "\n";
    } else if (op == "nbrs") {
      want(1);
      const auto v = parse_u64(args[1]);
      std::cout << "out=" << join(g.neighbours_out(v)) << "\nin=" << join(g.neighbours_in(v))
                << "\n";
    } else {
      throw UsageError("unknown query '" + op + "'");
    }
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

// stats ------------------------------------------------------------------

int cmd_stats(const std::string& in, bool csv) {
  const upag::LoadedGraph loaded = load_edge_list(in);
  warn_inferred(loaded);
  const upag::Dag& d = loaded.dag;
  const auto b = upag::bounds_report(d);
  const auto t1 = upag::probability_gap(d);
  const auto g = upag::CompressedGraph::build(d);
  const auto s = g.space_report(d);
  const auto a_prime_h0 = s.wt_h0_bits;
  const auto labelled = upag::CompressedGraph::build_labelled(d).space_report();

  if (csv) {
    std::cout << "M,n,h_deg,lg_inv_p,lg_factorial_n,unlabelled_lb,unlabelled_budget,worstcase_budget,"
                 "h0_aprime,tree_payload,tree_directory,wt_payload,wt_directory,total_bits,"
                 "labelled_wt_payload\n";
    std::cout << d.out_degree_param() << ',' << d.n() << ',' << b.h_deg << ',' << b.lg_inv_p
              << ',' << b.lg_factorial_n << ',' << b.unlabelled_lb << ',' << b.unlabelled_budget << ','
              << b.worstcase_budget << ',' << a_prime_h0 << ',' << s.tree_payload_bits << ','
              << s.tree_directory_bits << ',' << s.wt_payload_bits << ',' << s.wt_directory_bits
              << ',' << s.total_bits << ',' << labelled.wt_payload_bits << "\n";
    return kExitOk;
  }
  std::cout << "H_deg=" << fixed(b.h_deg, 2) << " lg(1/P)=" << fixed(b.lg_inv_p, 2) << "\n";
  std::cout << std::setprecision(10);
  std::cout << "M=" << d.out_degree_param() << "\nn=" << d.n() << "\n"
            << "arrival_order_inferred=" << (loaded.arrival_order_inferred ? "true" : "false")
            << "\n"
            << "h_deg_bits=" << b.h_deg << "\nlg_inv_p_bits=" << b.lg_inv_p
            << "\nlg_factorial_n=" << b.lg_factorial_n << "\nunlabelled_lb_bits=" << b.unlabelled_lb
            << "\ngap_bits=" << t1.gap << "\nnormalized_gap=" << t1.normalized_gap
            << "\nsimple_beyond_seed=" << (t1.simple_beyond_seed ? "true" : "false")
            << "\nlabelled_budget_bits=" << b.h_deg << "\nunlabelled_budget_bits=" << b.unlabelled_budget
            << "\nworstcase_budget_bits=" << b.worstcase_budget << "\nh0_aprime_bits=" << a_prime_h0
            << "\ntree_payload_bits=" << s.tree_payload_bits
            << "\ntree_directory_bits=" << s.tree_directory_bits
            << "\nwt_payload_bits=" << s.wt_payload_bits
            << "\nwt_directory_bits=" << s.wt_directory_bits
            << "\nmetadata_bits=" << s.metadata_bits << "\ntotal_bits=" << s.total_bits
            << "\nlabelled_wt_payload_bits=" << labelled.wt_payload_bits
            << "\nlabelled_total_bits=" << labelled.total_bits << "\n";
  return kExitOk;
}

// selfcheck --------------------------------------------------------------

int cmd_selfcheck(const std::string& in, const std::string& against, std::uint64_t samples,
                  std::uint64_t seed) {
  const upag::CompressedGraph g = load_graph(in);
  const upag::LoadedGraph loaded = load_edge_list(against);
  warn_inferred(loaded);
  if (loaded.dag.n() != g.n() || loaded.dag.out_degree_param() != g.M()) {
    std::cout << "MISMATCH shape: file has M=" << g.M() << " n=" << g.n()
              << ", edge list has M=" << loaded.dag.out_degree_param() << " n=" << loaded.dag.n()
              << "\n";
    return kExitVerify;
  }
  const upag::NaiveGraph naive = g.mode() == upag::GraphMode::kLabelled
                                     ? upag::NaiveGraph::labelled(loaded.dag)
                                     : upag::NaiveGraph::unlabelled(loaded.dag, g.tie_break());
  const upag::CheckReport r = g.n() <= 200 ? upag::check_exhaustive(g, naive)
                                           : upag::check_sampled(g, naive, samples, seed);
  if (!r.ok()) {
    std::cout << "MISMATCH " << *r.first_divergence << "\n";
    return kExitVerify;
  }
  std::cout << "OK (" << r.queries << " queries verified)\n";
  return kExitOk;
}

// bench ------------------------------------------------------------------

int cmd_bench(const std::string& in, std::uint64_t queries, unsigned threads, std::uint64_t seed) {
  const upag::CompressedGraph g = load_graph(in);
  if (threads == 0) threads = 1;
  std::mt19937_64 rng(seed);
  const std::uint64_t V = g.vertex_count();
  std::vector<upag::Vertex> vs(queries);
  std::vector<upag::Vertex> us(queries);
  std::vector<std::uint64_t> is(queries);
  std::vector<std::uint64_t> js(queries);
  for (std::uint64_t q = 0; q < queries; ++q) {
    vs[q] = 1 + rng() % g.n();
    us[q] = rng() % V;
    is[q] = 1 + rng() % g.M();
    const std::uint64_t deg = g.degree_in(us[q]);
    js[q] = deg == 0 ? 0 : 1 + rng() % deg;
  }

  auto run = [&](const char* name, auto&& op) {
    std::vector<std::uint64_t> sink(threads, 0);
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        std::uint64_t acc = 0;
        for (std::uint64_t q = t; q < queries; q += threads) acc += op(q);
        sink[t] = acc;
      });
    }
    for (auto& th : pool) th.join();
    const double ns =
        std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - start).count();
    std::uint64_t total = 0;
    for (auto s : sink) total += s;
    std::cout << name << "_ns=" << fixed(ns * threads / static_cast<double>(queries), 1)
              << "\n";
    return total;
  };

  std::cout << "queries=" << queries << "\nthreads=" << threads << "\n";
  std::uint64_t checksum = 0;
  checksum += run("outn", [&](std::uint64_t q) { return g.out_neighbour(vs[q], is[q]); });
  checksum += run("inn", [&](std::uint64_t q) {
    return js[q] == 0 ? 0 : g.in_neighbour(us[q], js[q]);
  });
  checksum += run("deg", [&](std::uint64_t q) { return g.degree_in(us[q]); });
  checksum += run("adj", [&](std::uint64_t q) {
    return static_cast<std::uint64_t>(g.adjacent(us[q], vs[q]));
  });
  std::cout << "checksum=" << checksum << "\n";
  return kExitOk;
}

// lfc --------------------------------------------------------------------

int cmd_lfc(const std::string& text, std::uint64_t block) {
  upag::LfcResult r;
  try {
    r = upag::lfc_trace(text, block);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const double before = upag::h0(std::string_view(text)).h0_pc_bits;
  std::string out;
  for (auto c : r.output) out.push_back(static_cast<char>(c));
  const double after = upag::h0(std::string_view(out)).h0_pc_bits;
  std::cout << "S=" << upag::render(r.sorted) << "\n";
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& st = r.steps[i];
    std::string flags;
    for (bool f : st.flags) flags.push_back(f ? '1' : '0');
    std::cout << "step" << i + 1 << "=c:" << static_cast<char>(st.symbol) << " block:" << st.block
              << " A_hat:" << upag::render(st.a_hat) << " S:" << upag::render(st.s)
              << " F:" << flags << "\n";
  }
  std::cout << "A'=" << out << " H0pc: " << fixed(before, 4) << "→" << fixed(after, 4)
            << "\n";
  std::cout << "h0pc_before=" << fixed(before, 6) << "\nh0pc_after=" << fixed(after, 6) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"upag: compressed preferential attachment graphs"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "sample a PA(M; n) graph as an edge list");
  generate->add_option("--m", gen.M, "edges per new vertex")->required()->check(CLI::PositiveNumber);
  generate->add_option("--n", gen.n, "number of generated vertices")
      ->required()
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--exact-cutoff", gen.exact_cutoff, "largest n with exact P[G]");
  generate->add_option("--out", gen.out, "edge list path")->required();

  BuildArgs bld;
  auto* build = app.add_subcommand("build", "compress an edge list into a .upag file");
  build->add_option("--in", bld.in, "edge list")->required();
  build->add_option("--out", bld.out, ".upag output")->required();
  build->add_option("--emit-relabel", bld.relabel, "write 'old new' label pairs here");
  build->add_option("--mode", bld.mode, "labelled | unlabelled")
      ->check(CLI::IsMember({"labelled", "unlabelled"}));
  build->add_option("--tie-break", bld.tie, "index | first-occurrence")
      ->check(CLI::IsMember({"index", "first-occurrence"}));
  build->add_flag("--plain", bld.plain, "store uncompressed bitvectors");

  std::string q_in;
  std::vector<std::string> q_args;
  auto* query = app.add_subcommand("query", "outn v i | inn v i | deg v | adj u v | nbrs v");
  query->add_option("--in", q_in, ".upag file")->required();
  query->add_option("op", q_args, "operation and arguments")->required();

  std::string s_in;
  bool s_csv = false;
  auto* stats = app.add_subcommand("stats", "entropy bounds and measured space");
  stats->add_option("--in", s_in, "edge list")->required();
  stats->add_flag("--csv", s_csv, "one CSV header and row");

  std::string c_in;
  std::string c_against;
  std::uint64_t c_samples = 100000;
  std::uint64_t c_seed = 1;
  auto* selfcheck = app.add_subcommand("selfcheck", "compare a .upag file with a naive oracle");
  selfcheck->add_option("--in", c_in, ".upag file")->required();
  selfcheck->add_option("--against", c_against, "edge list")->required();
  selfcheck->add_option("--samples", c_samples, "sampled queries when n > 200");
  selfcheck->add_option("--seed", c_seed, "sampling seed");

  std::string b_in;
  std::uint64_t b_queries = 100000;
  unsigned b_threads = 1;
  std::uint64_t b_seed = 1;
  auto* bench = app.add_subcommand("bench", "ns per query for each operation");
  bench->add_option("--in", b_in, ".upag file")->required();
  bench->add_option("--queries", b_queries, "queries per operation")->check(CLI::PositiveNumber);
  bench->add_option("--threads", b_threads, "reader threads");
  bench->add_option("--seed", b_seed, "query seed");

  std::string l_text;
  std::uint64_t l_block = 1;
  auto* lfc = app.add_subcommand("lfc", "least-frequent-character reduction of a string");
  lfc->add_option("--string", l_text, "input text")->required();
  lfc->add_option("--block", l_block, "block size")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*build) return cmd_build(bld);
    if (*query) return cmd_query(q_in, q_args);
    if (*stats) return cmd_stats(s_in, s_csv);
    if (*selfcheck) return cmd_selfcheck(c_in, c_against, c_samples, c_seed);
    if (*bench) return cmd_bench(b_in, b_queries, b_threads, b_seed);
    if (*lfc) return cmd_lfc(l_text, l_block);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

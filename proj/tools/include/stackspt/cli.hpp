#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace stackspt::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::uint32_t k = 2;
  std::size_t queries = 200;
  std::uint64_t seed = 1;
  std::size_t m_factor = 4;
  std::size_t fast_passes = 3;
};

struct BenchRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint32_t k = 0;
  double build_s = 0;    // oracle construction plus materialising the structures the queries touch
  double fast_us = 0;    // mean per fast query, median over passes
  double naive_us = 0;   // mean per naive evaluation
  std::size_t queries = 0;
  bool agree = true;     // fast == naive on every sampled price vector

  [[nodiscard]] double speedup() const { return fast_us > 0 ? naive_us / fast_us : 0.0; }
};

// "2^10,...,2^17" expands to every power of two in between; plain integers
// and "2^x" terms may be mixed.
std::vector<std::size_t> parse_sizes(std::string_view text);

std::vector<BenchRecord> run_bench(const BenchConfig& config, std::ostream* progress = nullptr);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& record);

}  // namespace stackspt::cli

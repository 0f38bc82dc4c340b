#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pfk::cli {

enum ExitCode : int { kParafree = 0, kNotParafree = 1, kInconclusive = 2, kError = 3 };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;  // files, a directory, or a word
  std::vector<std::uint64_t> primes;
  int degree = 4;
  std::size_t levels = 2;
  int dmax = 6;
  std::string ring = "z";               // magnus: z or f<p>
  std::optional<std::size_t> relator;   // fox: 1-based
  std::vector<std::string> assign;      // solve: "x2=<word>"
  bool json = false;
  bool truncate = false;                // betti: stop quietly at the index cap
  std::optional<std::uint64_t> seed;
};

/// Throws InvalidArgument on non-positive bounds or non-prime primes.
void validate(const RunConfig& config);

/// Dispatches one command. Output goes to `out`, diagnostics to `err`.
/// check-parafree exits 0/1/2 by verdict, corpus exits 1 on a mismatch,
/// and every error exits 3.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace pfk::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kamp/chain.hpp"

namespace kamp::cli {

enum class Command { translate, verify, eval, stats };
enum class Format { infix, sexpr };

/// Process exit statuses.
enum Exit : int { ok = 0, fail = 1, parse_error = 2, arity_error = 3, budget_exceeded = 4 };

struct RunConfig {
  Command command = Command::translate;
  std::string formula;
  std::string chain_file;
  std::size_t max_size = 4;
  std::optional<std::vector<std::string>> atoms;
  std::uint64_t seed = 0;
  std::size_t random_count = 100;
  std::size_t random_size = 10;
  Density density{};
  Format format = Format::infix;
  bool trace = false;
  std::uint64_t budget = 1'000'000;
  unsigned workers = 1;
};

int cmd_translate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses the command line (program name first) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kamp::cli

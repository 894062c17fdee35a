#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rdivm/core.hpp"

namespace rdivm {

struct CliOptions {
  std::string program_path;
  std::string graph_path;
  std::vector<std::string> update_paths;  // applied in order, one batch each
  std::string out_path;                   // empty: stdout
  std::string query_symbol;
  Tag query_tag = Tag::Single;
  std::string bench_config_path;          // empty: defaults
  bool debug = false;                     // hypothesis checks on every step
  bool serial = false;
  bool incremental_closure = false;
  std::uint64_t enum_budget = 10'000'000;
  bool seed_set = false;
  std::uint64_t seed = 0;                 // bench config override
};

// Command entry points. Results go to `out`, diagnostics and progress to
// `err`. Returns the process exit code: 0 success, 1 rejected input or
// exceeded budget, 2 internal invariant failure.
int cmd_check(const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_materialize(const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_update(const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_query(const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_oracle(const CliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_bench(const CliOptions& opt, std::ostream& out, std::ostream& err);

} // namespace rdivm

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fca::cli {

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

/// Runs the `fca` command line. `args` excludes the program name.
/// Returns 0 on success, 1 on a domain error, 2 on a usage error.
int run(const std::vector<std::string>& args, Streams io);

}  // namespace fca::cli

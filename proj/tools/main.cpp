#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const char* color_env = std::getenv("FCA_COLOR");
  const bool color = isatty(STDOUT_FILENO) && !(color_env && std::strcmp(color_env, "0") == 0);
  return fca::cli::run({argv + 1, argv + argc}, {std::cin, std::cout, std::cerr, color});
}

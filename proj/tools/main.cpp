#include "relsub_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return relsub::cli::run_cli(args, std::cin, std::cout, std::cerr);
}

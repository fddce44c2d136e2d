#include <iostream>

#include "stegpat/cli.hpp"

int main(int argc, char** argv) {
  const auto outcome = stegpat::cli::run(std::vector<std::string>(argv, argv + argc));
  std::cout << outcome.stdout_payload;
  for (const auto& d : outcome.diagnostics) {
    std::cerr << d;
    if (d.empty() || d.back() != '\n') std::cerr << '\n';
  }
  return outcome.exit_code;
}

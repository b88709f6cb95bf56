#include <cstdlib>
#include <iostream>

#include "eplab/commands.hpp"

int main(int argc, char** argv) {
  std::optional<std::string_view> tol;
  if (const char* env = std::getenv("EP_LAB_TOL")) tol = env;
  return eplab::cli::run(argc, argv, std::cout, std::cerr, tol);
}

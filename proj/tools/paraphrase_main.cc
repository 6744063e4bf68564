#include <iostream>

#include "paraphrase/cli.h"

int main(int argc, char **argv) {
  std::ios::sync_with_stdio(false);
  return paraphrase::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::stoi(argv[i]));
  const auto results = freeball::acceptance::run_all(std::cout, 20240611, only);
  const bool ok = freeball::acceptance::all_passed(results);
  std::cout << (ok ? "all acceptance criteria passed" : "acceptance FAILED") << "\n";
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}

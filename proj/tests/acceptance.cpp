// One line per reproduction check; exit status 1 if any check fails.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "sigvol/reproduce.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty())
    for (int i = 1; i <= sigvol::reproduce::kCriterionCount; ++i) ids.push_back(i);

  sigvol::invariants::Options opt;
  opt.threads = std::max(1u, std::min(4u, std::thread::hardware_concurrency()));
  sigvol::reproduce::Runner runner(opt);
  int failed = 0;
  for (int id : ids) {
    const auto r = runner.run(id);
    std::cout << sigvol::reproduce::format_line(r) << std::endl;
    failed += !r.pass;
  }
  std::cout << (ids.size() - failed) << "/" << ids.size() << " checks pass" << std::endl;
  return failed ? 1 : 0;
}

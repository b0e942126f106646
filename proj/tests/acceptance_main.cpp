// Acceptance suite: runs every verification criterion at its pinned
// tolerance and prints one pass/fail line each. Nonzero exit when any
// criterion fails.

#include <cstring>
#include <iostream>

#include "pwdirac/verification.hpp"

int main(int argc, char** argv) {
  pwdirac::VerificationOptions opts;
  opts.out_dir = argc > 1 ? argv[1] : "acceptance_out";
  opts.log = &std::cout;
  const auto results = pwdirac::run_verification(opts);
  bool all = true;
  for (const auto& c : results) all = all && c.pass;
  std::cout << (all ? "ACCEPTANCE: all criteria passed\n" : "ACCEPTANCE: FAILURES present\n");
  return all ? 0 : 1;
}

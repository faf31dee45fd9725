#include <iostream>
#include <string>

#include "rmt/acceptance.hpp"

int main(int argc, char** argv) {
  rmt::AcceptanceOptions opts;
  std::string report;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) opts.only.insert(argv[++i]);
    else if (arg == "--cache-dir" && i + 1 < argc) opts.cache_dir = argv[++i];
    else if (arg == "--report" && i + 1 < argc) report = argv[++i];
    else if (arg == "--workers" && i + 1 < argc) opts.workers = unsigned(std::stoul(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--only GROUP]... [--cache-dir DIR] [--report FILE] [--workers N]\n";
      return 2;
    }
  }
  const auto results = rmt::run_acceptance(opts, &std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  if (!report.empty()) rmt::write_atomic(report, rmt::acceptance_report(results).dump(2) + "\n");
  std::cout << (failed ? "ACCEPTANCE FAILED: " : "ACCEPTANCE PASSED: ") << results.size() - failed
            << "/" << results.size() << " criteria\n";
  return failed ? 1 : 0;
}

// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fail.

#include <chrono>
#include <iostream>

#include "qsu2/selfcheck.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 20240611;
  qsu2::rnd::Rng rng(seed);
  int failed = 0;
  for (const auto& check : qsu2::selfcheck::suite()) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = check(rng);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << qsu2::selfcheck::line(r) << " (" << secs << " s)" << std::endl;
    if (!r.pass) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}

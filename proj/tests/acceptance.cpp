// Acceptance battery: one line per criterion, nonzero exit when any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cantorvort/battery.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

// verify-all exits 1 when checks fail; only a missing or unreadable report counts here.
bool run_verify(const std::string& cli, const fs::path& out) {
  const std::string cmd = "\"" + cli + "\" verify-all --output \"" + out.string() + "\" 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return rc != -1 && fs::exists(out);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <cli> <workdir>\n");
    return 2;
  }
  const cantorvort::RunConfig cfg;
  int failed = 0;
  for (const auto& crit : cantorvort::acceptance_criteria()) {
    const auto t0 = std::chrono::steady_clock::now();
    cantorvort::Check c;
    try {
      c = crit.run(cfg);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %s: %s (%.2fs)\n", c.pass ? "PASS" : "FAIL", crit.number, crit.title, c.detail.c_str(), secs);
    std::fflush(stdout);
    if (!c.pass) ++failed;
  }

  const fs::path dir(argv[2]);
  fs::create_directories(dir);
  const fs::path a = dir / "run_a.json";
  const fs::path b = dir / "run_b.json";
  fs::remove(a);
  fs::remove(b);
  const auto t0 = std::chrono::steady_clock::now();
  const bool ran = run_verify(argv[1], a) && run_verify(argv[1], b);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool same = ran && slurp(a) == slurp(b) && !slurp(a).empty();
  std::printf("[%s] 12 deterministic verify-all output: %s (%.2fs)\n", same ? "PASS" : "FAIL",
              !ran ? "verify-all did not produce a report" : same ? "two runs byte-identical" : "runs differ", secs);
  if (!same) ++failed;

  std::printf("%d of 12 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

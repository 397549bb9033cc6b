#include "hmorph/suite.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#ifndef HMORPH_CLI_PATH
#error "HMORPH_CLI_PATH must name the hmorph executable"
#endif

using namespace hmorph;
namespace fs = std::filesystem;

namespace {

struct Line {
  int id = 0;
  std::string title;
  bool pass = false;
  double max_residual = 0.0;
  double seconds = 0.0;
  double limit = 0.0;
  std::vector<std::string> failures;
};

void print(const Line& l) {
  std::cout << "criterion " << l.id << " " << (l.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(26)
            << l.title << std::right << " max residual " << std::setprecision(3) << std::scientific
            << l.max_residual << "  " << std::fixed << std::setprecision(2) << l.seconds << " s";
  if (l.limit > 0.0) std::cout << " (limit " << l.limit << " s)";
  std::cout << std::defaultfloat << "\n";
  const std::size_t shown = std::min<std::size_t>(l.failures.size(), 6);
  for (std::size_t k = 0; k < shown; ++k) std::cout << "    failed " << l.failures[k] << "\n";
  if (l.failures.size() > shown) std::cout << "    ... " << l.failures.size() - shown << " more\n";
}

// Runs `run-all` through the command-line tool with the report directory
// taken from the environment, so both runs see the same flags. Returns the
// report body without timing fields and the wall time of the run.
std::pair<std::string, double> run_cli(const fs::path& dir, std::uint64_t seed, int max_size) {
  fs::create_directories(dir);
  const fs::path out = dir / "run_all.json";
  fs::remove(out);
  std::ostringstream cmd;
  cmd << "HMORPH_OUT_DIR=\"" << dir.string() << "\" \"" << HMORPH_CLI_PATH << "\" run-all --seed " << seed
      << " --max-size " << max_size << " 2>/dev/null";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.str().c_str());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (status == -1 || !fs::exists(out)) throw std::runtime_error("run-all did not produce " + out.string());
  return {dump(strip_timing(read_json_file(out))), secs};
}

std::set<int> parse_ids(const std::string& text) {
  std::set<int> ids;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) ids.insert(std::stoi(tok));
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1 to 9"};
  std::uint64_t seed = kDefaultSeed;
  int max_size = 6;
  std::string known_red;
  std::string work_dir = (fs::temp_directory_path() / "hmorph_acceptance").string();
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--max-size", max_size)->capture_default_str();
  app.add_option("--known-red", known_red,
                 "Comma-separated criteria expected to fail; exit 0 iff exactly these fail");
  app.add_option("--work-dir", work_dir)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  SuiteOptions opt;
  opt.seed = seed;
  opt.max_size = max_size;

  std::vector<Line> lines;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : run_suite(opt)) {
    Line l{c.id, c.title, c.pass() && c.within_time(), c.max_residual(), c.seconds, c.runtime_limit, c.failures()};
    if (!c.within_time()) l.failures.push_back("runtime");
    print(l);
    lines.push_back(std::move(l));
  }
  const double in_process = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Line det{9, "determinism", false, 0.0, 0.0, 600.0, {}};
  try {
    const auto [first, s1] = run_cli(fs::path(work_dir) / "first", seed, max_size);
    const auto [second, s2] = run_cli(fs::path(work_dir) / "second", seed, max_size);
    det.seconds = std::max(s1, s2);
    const bool same = first == second;
    if (!same) det.failures.push_back("reports differ after removing timing fields");
    if (det.seconds >= det.limit) det.failures.push_back("runtime");
    det.max_residual = same ? 0.0 : 1.0;
    det.pass = det.failures.empty();
  } catch (const std::exception& e) {
    det.failures.push_back(e.what());
  }
  print(det);
  lines.push_back(det);

  std::set<int> red;
  for (const auto& l : lines)
    if (!l.pass) red.insert(l.id);
  std::cout << "in-process suite " << std::fixed << std::setprecision(2) << in_process << " s; " << lines.size() - red.size()
            << " of " << lines.size() << " criteria pass\n";

  if (known_red.empty()) return red.empty() ? 0 : 1;
  const std::set<int> expected = parse_ids(known_red);
  if (red == expected) return 0;
  for (int id : red)
    if (!expected.contains(id)) std::cout << "criterion " << id << " failed but is not listed as known red\n";
  for (int id : expected)
    if (!red.contains(id)) std::cout << "criterion " << id << " is listed as known red but passed\n";
  return 1;
}

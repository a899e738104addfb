#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "jacpair_c.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Options {
  long long depth = 12;
  long long nCap = 1LL << 20;
  bool jsonOut = false;
  int jobs = 0;  // 0 = hardware default
};

struct Report {
  std::string fixtureId;
  std::string op;
  ordered_json body;   // full report object
  bool pass = false;
  bool malformed = false;
};

ordered_json load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ordered_json j;
  in >> j;
  return j;
}

Report run_one(const ordered_json& fixture, const std::string& op, const Options& opt) {
  Report rep;
  rep.fixtureId = fixture.value("id", std::string("?"));
  rep.op = op;
  ordered_json req = {{"op", op}, {"depth", opt.depth}, {"fixture", fixture}};
  auto t0 = std::chrono::steady_clock::now();
  char* out = nullptr;
  int rc = jp_run(req.dump().c_str(), &out);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  ordered_json resp = ordered_json::parse(out ? out : "{}");
  jp_free(out);
  rep.pass = resp.value("ok", false);
  rep.malformed = rc == JP_PARSE_ERROR;
  rep.body = ordered_json{{"fixtureId", rep.fixtureId},
                          {"op", op},
                          {"verdict", resp.value("verdict", std::string("fail"))},
                          {"values", resp.value("values", ordered_json::object())},
                          {"floors", resp.value("floors", ordered_json::object())},
                          {"timingMs", ms}};
  if (resp.contains("mismatch")) rep.body["mismatch"] = resp["mismatch"];
  if (resp.contains("error")) rep.body["error"] = resp["error"];
  return rep;
}

void print_reports(const std::vector<Report>& reps, const Options& opt) {
  if (opt.jsonOut) {
    auto arr = ordered_json::array();
    for (auto& r : reps) arr.push_back(r.body);
    std::cout << arr.dump(2) << "\n";
    return;
  }
  for (auto& r : reps) {
    std::cout << r.fixtureId << " " << r.op << " "
              << (r.pass ? "PASS" : "FAIL") << " (" << r.body["timingMs"] << " ms)\n";
    if (!r.pass) {
      if (r.body.contains("mismatch")) std::cout << "  " << r.body["mismatch"] << "\n";
      if (r.body.contains("error"))
        std::cout << "  " << r.body["error"]["name"] << ": " << r.body["error"]["message"]
                  << "\n";
    }
  }
}

int exit_code(const std::vector<Report>& reps) {
  for (auto& r : reps)
    if (r.malformed) return 2;
  for (auto& r : reps)
    if (!r.pass) return 1;
  return 0;
}

int run_subcommand(const std::string& op, const std::string& path, const Options& opt) {
  std::vector<Report> reps;
  try {
    ordered_json fixture =
        op == "verify" && path.empty()
            ? ordered_json{{"id", "verify"}, {"kind", "VERIFY"}, {"payload", ordered_json::object()}}
            : load_fixture(path);
    reps.push_back(run_one(fixture, op, opt));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  print_reports(reps, opt);
  return exit_code(reps);
}

int run_corpus(const std::string& dir, const Options& opt) {
  std::vector<ordered_json> fixtures;
  try {
    std::vector<std::string> paths;
    for (auto& e : fs::recursive_directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".json")
        paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    for (auto& p : paths) fixtures.push_back(load_fixture(p));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  struct Task {
    ordered_json fixture;
    std::string op;
  };
  std::vector<Task> tasks;
  for (auto& f : fixtures)
    for (auto& op : f.value("ops", ordered_json::array()))
      tasks.push_back({f, op.get<std::string>()});
  tasks.push_back({ordered_json{{"id", "verify"}, {"kind", "VERIFY"},
                                {"payload", ordered_json::object()}},
                   "verify"});

  int jobs = opt.jobs;
  if (jobs <= 0) {
    if (const char* env = std::getenv("JACPAIR_JOBS")) jobs = std::atoi(env);
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
  }

  std::vector<Report> reps(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      reps[i] = run_one(tasks[i].fixture, tasks[i].op, opt);
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::stable_sort(reps.begin(), reps.end(), [](const Report& a, const Report& b) {
    if (a.fixtureId != b.fixtureId) return a.fixtureId < b.fixtureId;
    return a.op < b.op;
  });
  print_reports(reps, opt);
  return exit_code(reps);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for Jacobi pairs and Weyl-algebra checks"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--depth", opt.depth, "truncation depth")->capture_default_str();
  app.add_option("--n-cap", opt.nCap, "cap on exponent denominators")->capture_default_str();
  app.add_flag("--json", opt.jsonOut, "machine-readable report");
  bool textFlag = false;
  app.add_flag("--text", textFlag, "human-readable report (default)");
  app.add_option("--jobs", opt.jobs, "parallel workers for corpus (env JACPAIR_JOBS)");

  const char* ops[] = {"bracket", "newton",  "prime-degree", "components", "expand",
                       "r0",      "reduce",  "normalize",    "weyl"};
  std::map<std::string, std::string> paths;
  for (auto* op : ops) {
    auto* sub = app.add_subcommand(op, std::string("run ") + op + " on a fixture file");
    sub->add_option("fixture", paths[op], "fixture JSON path")->required();
    sub->fallthrough();
  }
  auto* verify = app.add_subcommand("verify", "run the three symbolic verifications");
  verify->add_option("fixture", paths["verify"], "optional fixture JSON path");
  verify->fallthrough();
  std::string corpusDir = "fixtures";
  auto* corpus = app.add_subcommand("corpus", "run every fixture's listed ops");
  corpus->add_option("dir", corpusDir, "fixture directory")->capture_default_str();
  corpus->fallthrough();

  CLI11_PARSE(app, argc, argv);
  jp_set_n_cap(opt.nCap);

  auto* sub = app.get_subcommands().front();
  if (sub == corpus) return run_corpus(corpusDir, opt);
  return run_subcommand(sub->get_name(), paths[sub->get_name()], opt);
}

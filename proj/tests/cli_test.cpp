#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sgwt/frame.hpp"
#include "sgwt/harness/graph_source.hpp"
#include "sgwt/harness/signals.hpp"
#include "sgwt/threshold.hpp"

namespace fs = std::filesystem;
using namespace sgwt;

namespace {

constexpr const char* kGraph = "builtin:rgg:60:0.3:4";

struct Run {
  int code;
  std::string out;
};

class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / ("sgwt_cli_test_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Run run(const std::string& args) const {
    const std::string log = path("stdout.txt");
    const std::string cmd = std::string("\"") + SGWT_CLI_PATH + "\" " + args + " > \"" + log + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream buf;
    buf << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buf.str()};
  }

  void write_signal(const std::string& name, const Eigen::VectorXd& f) const {
    std::ofstream out(path(name));
    harness::write_signal(out, f);
  }

  void write_text(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

 private:
  fs::path dir_;
};

std::string slurp(const std::string& file) {
  std::ifstream in(file);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("transform and inverse round trip") {
  Workspace ws;
  const WeightedGraph g = harness::load_graph_source(kGraph);
  const Eigen::VectorXd f = harness::sine_signal(g);
  ws.write_signal("f.txt", f);

  const Run fwd = ws.run(std::string("transform --graph ") + kGraph + " --signal " + ws.path("f.txt") + " --out " +
                         ws.path("c.txt"));
  REQUIRE_MESSAGE(fwd.code == 0, fwd.out);
  std::ifstream cin(ws.path("c.txt"));
  const WaveletCoefficients c = read_coefficients(cin);
  CHECK((c.values() - make_frame(g).analyze(f).values()).cwiseAbs().maxCoeff() < 1e-12);

  const Run inv = ws.run(std::string("transform --inverse --graph ") + kGraph + " --signal " + ws.path("c.txt") +
                         " --out " + ws.path("back.txt"));
  REQUIRE_MESSAGE(inv.code == 0, inv.out);
  CHECK((harness::read_signal_file(ws.path("back.txt")) - f).cwiseAbs().maxCoeff() < 1e-8);

  const Run mismatch = ws.run("transform --inverse --graph builtin:grid:3x3 --signal " + ws.path("c.txt") +
                              " --out " + ws.path("x.txt"));
  CHECK(mismatch.code == 2);
}

TEST_CASE("estimate-sigma and denoise") {
  Workspace ws;
  const WeightedGraph g = harness::load_graph_source(kGraph);
  const Eigen::VectorXd f = harness::sine_signal(g);
  const Eigen::VectorXd noisy = harness::add_noise(f, 0.2, 17);
  ws.write_signal("clean.txt", f);
  ws.write_signal("noisy.txt", noisy);

  const Run est = ws.run(std::string("estimate-sigma --graph ") + kGraph + " --signal " + ws.path("noisy.txt"));
  REQUIRE_MESSAGE(est.code == 0, est.out);
  const double sigma_hat = std::stod(est.out);
  CHECK(sigma_hat > 0.1);
  CHECK(sigma_hat < 0.4);

  for (const std::string strategy : {"global", "level", "block --block-count 3"}) {
    CAPTURE(strategy);
    const Run den = ws.run(std::string("denoise --graph ") + kGraph + " --strategy " + strategy + " --sigma 0.2" +
                           " --signal " + ws.path("noisy.txt") + " --truth " + ws.path("clean.txt") + " --out " +
                           ws.path("den.txt") + " --plan-out " + ws.path("plan.txt"));
    REQUIRE_MESSAGE(den.code == 0, den.out);
    CHECK(den.out.find("sigma 0.2 (given)") != std::string::npos);
    CHECK(den.out.find("SURE ") != std::string::npos);
    CHECK(den.out.find("SNR in ") != std::string::npos);
    const Eigen::VectorXd out = harness::read_signal_file(ws.path("den.txt"));
    CHECK(out.size() == f.size());
    CHECK(harness::snr_db(f, out) > harness::snr_db(f, noisy));
    std::ifstream plan_in(ws.path("plan.txt"));
    CHECK_NOTHROW(read_plan(plan_in));
  }

  const Run auto_sigma = ws.run(std::string("denoise --graph ") + kGraph + " --signal " + ws.path("noisy.txt") +
                                " --out " + ws.path("den.txt"));
  REQUIRE_MESSAGE(auto_sigma.code == 0, auto_sigma.out);
  CHECK(auto_sigma.out.find("(estimated)") != std::string::npos);
  CHECK(auto_sigma.out.find("scale 0 threshold") != std::string::npos);
}

TEST_CASE("usage errors exit 1, data errors exit 2") {
  Workspace ws;
  ws.write_text("cfg.txt", "graph = builtin:grid:4x4\nsigma = 0.1\nmethods = global:1:known\n");
  ws.write_text("bad_signal.txt", "0.1\nnot-a-number\n");
  ws.write_text("bad_graph.txt", "n 3\n0 1 1.0\n1 7 1.0\n");
  ws.write_signal("three.txt", Eigen::VectorXd::Ones(3));
  ws.write_signal("nine.txt", Eigen::VectorXd::Ones(9));

  CHECK(ws.run("").code == 1);
  CHECK(ws.run("--help").code == 0);
  CHECK(ws.run("benchmark --config " + ws.path("cfg.txt")).code == 1);
  CHECK(ws.run("estimate-sigma --graph builtin:grid:3x3 --signal x --bogus").code == 1);
  CHECK(ws.run("denoise --graph builtin:grid:3x3 --signal x --out y --strategy block --block-size 2 "
               "--block-count 2")
            .code == 1);
  CHECK(ws.run("denoise --graph builtin:grid:3x3 --signal x --out y --strategy median").code == 1);
  CHECK(ws.run("denoise --graph builtin:grid:3x3 --signal " + ws.path("nine.txt") + " --out y --beta 0.5").code == 1);
  CHECK(ws.run("sure-curve --graph builtin:grid:3x3 --clean " + ws.path("nine.txt") + " --noise 0.1 --out " +
               ws.path("c.csv"))
            .code == 1);

  CHECK(ws.run("estimate-sigma --graph builtin:grid:3x3 --signal " + ws.path("bad_signal.txt")).code == 2);
  CHECK(ws.run("estimate-sigma --graph " + ws.path("bad_graph.txt") + " --signal " + ws.path("three.txt")).code == 2);
  CHECK(ws.run("estimate-sigma --graph builtin:grid:3x3 --signal " + ws.path("three.txt")).code == 2);
  CHECK(ws.run("estimate-sigma --graph builtin:grid:3x3 --signal " + ws.path("missing.txt")).code == 2);
}

TEST_CASE("benchmark writes aggregate and per-replicate CSVs") {
  Workspace ws;
  ws.write_text("cfg.txt",
                "graph = builtin:rgg:40:0.35:2\nsigma = 0.1, 0.2\nreplicates = 3\n"
                "methods = global:1:oracle, level:2:known, level:2:estimated, block:2:known\n"
                "block_values = 4\ngrid_points = 100\n");
  const Run run = ws.run("benchmark --config " + ws.path("cfg.txt") + " --seed 5 --threads 2 --out " +
                         ws.path("agg.csv") + " --rows-out " + ws.path("rows.csv"));
  REQUIRE_MESSAGE(run.code == 0, run.out);
  const std::string agg = slurp(ws.path("agg.csv"));
  const std::string rows = slurp(ws.path("rows.csv"));
  CHECK(agg.rfind("method,sigma,replicates,snr_in_mean", 0) == 0);
  CHECK(std::count(agg.begin(), agg.end(), '\n') == 1 + 2 * 4);
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 1 + 3 * 2 * 4);
  CHECK(agg.find("block-b2-sure-known-sigma-size4") != std::string::npos);
  CHECK(run.out.find("level-b2-sure-estimated-sigma") != std::string::npos);

  const Run again = ws.run("benchmark --config " + ws.path("cfg.txt") + " --seed 5 --threads 1 --out " +
                           ws.path("agg2.csv"));
  REQUIRE(again.code == 0);
  CHECK(slurp(ws.path("agg2.csv")) == agg);
}

TEST_CASE("sure-curve") {
  Workspace ws;
  const WeightedGraph g = harness::load_graph_source(kGraph);
  ws.write_signal("clean.txt", harness::sine_signal(g));
  const Run run = ws.run(std::string("sure-curve --graph ") + kGraph + " --clean " + ws.path("clean.txt") +
                         " --noise 0.2 --seed 3 --sigma 0.2 --grid-points 50 --out " + ws.path("curve.csv"));
  REQUIRE_MESSAGE(run.code == 0, run.out);
  CHECK(run.out.find("SURE minimum") != std::string::npos);
  const std::string csv = slurp(ws.path("curve.csv"));
  CHECK(csv.rfind("threshold,sure,mse\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 51);
  // First grid point is t = 0: SURE = -n sigma^2 + 2 n sigma^2 = n sigma^2.
  std::istringstream lines(csv);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  const double sure0 = std::stod(first.substr(first.find(',') + 1));
  CHECK(sure0 == doctest::Approx(60 * 0.04).epsilon(1e-10));

  const Run block = ws.run(std::string("sure-curve --graph ") + kGraph + " --strategy block --block-size 5" +
                           " --clean " + ws.path("clean.txt") + " --noise 0.2 --seed 3 --grid-points 20 --out " +
                           ws.path("block.csv"));
  REQUIRE_MESSAGE(block.code == 0, block.out);
  CHECK(ws.run(std::string("sure-curve --graph ") + kGraph + " --strategy level --signal " + ws.path("clean.txt") +
               " --out " + ws.path("x.csv"))
            .code == 1);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ibnls/config.hpp"

using namespace ibnls;
namespace fs = std::filesystem;

namespace {

const char* cli_path() {
  const char* p = std::getenv("IBNLS_CLI");
  REQUIRE_MESSAGE(p != nullptr, "IBNLS_CLI must point at the built binary");
  return p;
}

int run_cli(const std::string& args, const fs::path& stdout_file = {}) {
  std::string cmd = std::string(cli_path()) + " " + args;
  if (!stdout_file.empty())
    cmd += " > " + stdout_file.string() + " 2>&1";
  else
    cmd += " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("ibnls_cli_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("config parser: sections, comments, defaults") {
  const auto cfg = config::ConfigMap::parse(
      "# comment\n"
      "seed = 7\n"
      "[params]\n"
      "dim = 3   # trailing comment\n"
      "b = 1/2\n");
  CHECK(cfg.get_int("params.dim") == 3);
  CHECK(cfg.get_rational("params.b") == Rational(1) / 2);
  CHECK(cfg.get_u64_or("seed", 0) == 7);
  CHECK(cfg.get_bool_or("grid.offset", true));
}

TEST_CASE("config parser: empty text is a valid (empty) config") {
  const auto cfg = config::ConfigMap::parse("");
  CHECK_FALSE(cfg.has("anything"));
}

TEST_CASE("config parser: malformed rational carries the line number") {
  const auto cfg = config::ConfigMap::parse("alpha = 8/0\n");
  try {
    cfg.get_rational("alpha");
    FAIL("expected ParseError");
  } catch (const config::ParseError& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    CHECK(std::string(e.what()).find("zero denominator") != std::string::npos);
  }
}

TEST_CASE("config parser: duplicate keys name both lines") {
  try {
    config::ConfigMap::parse("a = 1\nb = 2\na = 3\n");
    FAIL("expected ParseError");
  } catch (const config::ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("line 1") != std::string::npos);
  }
}

TEST_CASE("config parser: unknown keys are hard errors") {
  const auto cfg = config::ConfigMap::parse("[params]\ndimensionality = 3\n");
  CHECK_THROWS_AS(cfg.validate_keys({"params.dim"}), config::ParseError);
}

TEST_CASE("cli: classify emits one verdict line per theorem") {
  const auto dir = temp_dir("classify");
  const auto out = dir / "stdout.txt";
  const int rc = run_cli("classify --dim 6 --b 1 --alpha 3 --out " + (dir / "o").string(), out);
  CHECK(rc == 0);
  const std::string text = slurp(out);
  CHECK(text.find("Thm_EnergyCritical,true,") != std::string::npos);
  CHECK(text.find("Thm_GWPH2,") != std::string::npos);
  CHECK(fs::exists(dir / "o" / "verdicts.csv"));
  CHECK(fs::exists(dir / "o" / "manifest.txt"));
  CHECK(fs::exists(dir / "o" / "summary.txt"));
}

TEST_CASE("cli: pairs 4.1 prints the frozen exponents") {
  const auto dir = temp_dir("pairs41");
  const auto out = dir / "stdout.txt";
  const int rc = run_cli("pairs --lemma 4.1 --dim 6 --b 1 --out " + (dir / "o").string(), out);
  CHECK(rc == 0);
  const std::string csv = slurp(dir / "o" / "pairs.csv");
  CHECK(csv.find("q_crit,20/3,5/2,0,true") != std::string::npos);
}

TEST_CASE("cli: usage errors exit with code 2") {
  const auto dir = temp_dir("usage");
  // dt <= 0
  {
    std::ofstream f(dir / "bad.cfg");
    f << "[params]\ndim = 1\nb = 1/2\nalpha = 3\n[grid]\npoints = 64\nlength = 20\n"
      << "[solver]\ndt = -1e-3\nt_end = 1\n";
  }
  CHECK(run_cli("simulate --config " + (dir / "bad.cfg").string() + " --out " +
                (dir / "o1").string()) == 2);
  // unknown key
  {
    std::ofstream f(dir / "unknown.cfg");
    f << "[params]\ndim = 1\nb = 1/2\nalpha = 3\nbogus = 1\n";
  }
  CHECK(run_cli("classify --config " + (dir / "unknown.cfg").string() + " --out " +
                (dir / "o2").string()) == 2);
  // theta out of range
  CHECK(run_cli("pairs --lemma 3.2 --dim 6 --b 1 --alpha 2 --theta 2/3 --out " +
                (dir / "o3").string()) == 2);
  // unknown subcommand flag mix: lemma must be one of the three
  CHECK(run_cli("pairs --lemma 9.9 --dim 6 --b 1 --alpha 2 --out " + (dir / "o4").string()) ==
        2);
}

TEST_CASE("cli: simulate then norm over stored snapshots") {
  const auto dir = temp_dir("simnorm");
  {
    std::ofstream f(dir / "sim.cfg");
    f << "[params]\ndim = 1\nb = 1/2\nalpha = 3\nlambda = 1\n"
      << "[grid]\npoints = 64\nlength = 20\n"
      << "[solver]\ndt = 1e-2\nt_end = 0.1\nsample_stride = 2\n"
      << "[data]\namplitude = 0.3\nsigma = 1.2\n"
      << "[output]\nsnapshot_stride = 1\n";
  }
  const auto sim_out = (dir / "run").string();
  CHECK(run_cli("simulate --config " + (dir / "sim.cfg").string() + " --out " + sim_out) == 0);
  CHECK(fs::exists(dir / "run" / "trajectory.csv"));
  CHECK(fs::exists(dir / "run" / "field_000000.ibnl"));

  const auto out = dir / "norm.txt";
  CHECK(run_cli("norm --traj " + sim_out + " --q inf --r 2 --out " + (dir / "n").string(),
                out) == 0);
  const std::string v = slurp(out);
  CHECK(std::stod(v) > 0.0);

  const auto sout = dir / "str.txt";
  CHECK(run_cli("strichartz --traj " + sim_out + " --s 0 --out " + (dir / "s").string(),
                sout) == 0);
  CHECK(std::stod(slurp(sout)) > 0.0);
}

TEST_CASE("cli: strichartz with an explicit pairs file") {
  const auto dir = temp_dir("pairsfile");
  {
    std::ofstream f(dir / "sim.cfg");
    f << "[params]\ndim = 1\nb = 1/2\nalpha = 3\n"
      << "[grid]\npoints = 64\nlength = 20\n"
      << "[solver]\ndt = 1e-2\nt_end = 0.1\n"
      << "[data]\namplitude = 0.3\nsigma = 1.2\n"
      << "[output]\nsnapshot_stride = 1\n";
    std::ofstream p(dir / "pairs.txt");
    p << "# q,r\ninf,2\n10,10\n";
  }
  const auto run = (dir / "run").string();
  REQUIRE(run_cli("simulate --config " + (dir / "sim.cfg").string() + " --out " + run) == 0);
  const auto out = dir / "str.txt";
  CHECK(run_cli("strichartz --traj " + run + " --s 0 --pairs " +
                (dir / "pairs.txt").string() + " --out " + (dir / "s").string(), out) == 0);
  CHECK(std::stod(slurp(out)) > 0.0);
  // a file with an inadmissible pair is rejected
  {
    std::ofstream p(dir / "bad.txt");
    p << "2,6\n";
  }
  CHECK(run_cli("strichartz --traj " + run + " --s 2 --pairs " + (dir / "bad.txt").string() +
                " --out " + (dir / "s2").string()) == 2);
}

TEST_CASE("cli: estimate-probe refusal exits 2, pointwise passes") {
  const auto dir = temp_dir("estimate");
  {
    std::ofstream f(dir / "hl.cfg");
    f << "[params]\ndim = 1\n[grid]\npoints = 128\nlength = 40\n"
      << "[probe]\nkind = hl\np = 2\nq = 2\ns = 0\nrho = 0\n";
  }
  CHECK(run_cli("estimate-probe --config " + (dir / "hl.cfg").string() + " --out " +
                (dir / "o1").string()) == 2);
  {
    std::ofstream f(dir / "pw.cfg");
    f << "[probe]\nkind = pointwise\nalpha = 2\nsamples = 20000\n";
  }
  CHECK(run_cli("estimate-probe --config " + (dir / "pw.cfg").string() + " --out " +
                (dir / "o2").string()) == 0);
}

TEST_CASE("cli: byte-identical reruns with a fixed seed") {
  const auto dir = temp_dir("determinism");
  {
    std::ofstream f(dir / "probe.cfg");
    f << "seed = 99\n[params]\ndim = 1\n[grid]\npoints = 128\nlength = 40\n"
      << "[probe]\ns = 0\ntrials = 10\n";
  }
  CHECK(run_cli("strichartz-probe --config " + (dir / "probe.cfg").string() + " --out " +
                (dir / "a").string()) == 0);
  CHECK(run_cli("strichartz-probe --config " + (dir / "probe.cfg").string() + " --out " +
                (dir / "b").string()) == 0);
  CHECK(slurp(dir / "a" / "strichartz_probe.csv") == slurp(dir / "b" / "strichartz_probe.csv"));
  CHECK_FALSE(slurp(dir / "a" / "strichartz_probe.csv").empty());
}

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = CURVBAND_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("curvband-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("cli pipeline: generate, curvature, summarize, audit") {
  TempDir dir;
  const std::string graph = dir.file("ws.txt");
  CHECK(run_cli("generate --model ws --params n=60,k=4,beta=0.2 --seed 7 --out " + graph) == 0);

  const std::string text = slurp(graph);
  CHECK(text.find("# model: ws") != std::string::npos);
  CHECK(text.find("# seed: 7") != std::string::npos);

  const std::string csv = dir.file("edges.csv");
  CHECK(run_cli("curvature --graph " + graph + " --exact-or --out " + csv) == 0);
  std::string header = slurp(csv).substr(0, 4);
  CHECK(header == "u,v,");

  const std::string json = dir.file("summary.json");
  CHECK(run_cli("summarize --graph " + graph + " --exact-or --out " + json) == 0);
  CHECK(slurp(json).find("\"edge_count\": 120") != std::string::npos);

  CHECK(run_cli("audit --graph " + graph) == 0);
}

TEST_CASE("cli transfer subcommand") {
  TempDir dir;
  const std::string graph = dir.file("grid.txt");
  REQUIRE(run_cli("generate --model grid --params lx=6,ly=6 --seed 1 --out " + graph) == 0);

  const std::string out = dir.file("band.csv");
  CHECK(run_cli("transfer --graph " + graph + " --direction bf2or --per-edge --out " + out) ==
        0);
  CHECK(slurp(out).substr(0, 34) == "u,v,direction,input_level,lower,up");

  CHECK(run_cli("transfer --graph " + graph + " --direction or2bf --level 0.5 --out " + out) ==
        0);

  // pendant edges have no or->bf lower modulus: the lower cell stays empty
  const std::string tree = dir.file("tree.txt");
  REQUIRE(run_cli("generate --model tree --params d=2,h=2 --seed 0 --out " + tree) == 0);
  CHECK(run_cli("transfer --graph " + tree + " --direction or2bf --level 0.0 --out " + out) ==
        0);
  CHECK(slurp(out).find(",,") != std::string::npos);
  // level and per-edge are mutually exclusive and one is required
  CHECK(run_cli("transfer --graph " + graph + " --direction bf2or --out " + out) == 1);
  CHECK(run_cli("transfer --graph " + graph +
                " --direction bf2or --level 1 --per-edge --out " + out) == 1);
  CHECK(run_cli("transfer --graph " + graph + " --direction sideways --level 1 --out " + out) ==
        1);
}

TEST_CASE("cli exit codes") {
  TempDir dir;
  SUBCASE("usage errors exit 1") {
    CHECK(run_cli("") == 1);
    CHECK(run_cli("generate --model er --seed 1 --out /tmp/x") == 1);  // missing --params n,p
    CHECK(run_cli("frobnicate") == 1);
    // out-of-range command-line parameter values are usage problems too
    CHECK(run_cli("generate --model er --params n=10,p=2.0 --seed 1 --out " +
                  dir.file("bad.txt")) == 1);
  }
  SUBCASE("data errors exit 2") {
    CHECK(run_cli("curvature --graph " + dir.file("missing.txt") + " --out " +
                  dir.file("o.csv")) == 2);

    const std::string loops = dir.file("loops.txt");
    std::ofstream(loops) << "0 0\n";
    CHECK(run_cli("curvature --graph " + loops + " --out " + dir.file("o.csv")) == 2);

    const std::string dupes = dir.file("dupes.txt");
    std::ofstream(dupes) << "0 1\n1 0\n";
    CHECK(run_cli("curvature --graph " + dupes + " --out " + dir.file("o.csv")) == 2);
    // --dedup downgrades the duplicate to a warning
    CHECK(run_cli("curvature --dedup --graph " + dupes + " --out " + dir.file("o.csv")) == 0);
  }
  SUBCASE("torus metric flag is rgg-only") {
    CHECK(run_cli("generate --model er --params n=10,p=0.5 --torus-metric --seed 1 --out " +
                  dir.file("x.txt")) == 1);
    CHECK(run_cli("generate --model rgg --params n=10,r=0.3 --torus-metric --seed 1 --out " +
                  dir.file("x.txt")) == 0);
  }
}

TEST_CASE("cli determinism: identical bytes for identical inputs") {
  TempDir dir;
  const std::string a = dir.file("a.txt"), b = dir.file("b.txt");
  REQUIRE(run_cli("generate --model ba --params n=80,m=2 --seed 99 --out " + a) == 0);
  REQUIRE(run_cli("generate --model ba --params n=80,m=2 --seed 99 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));

  const std::string ca = dir.file("a.csv"), cb = dir.file("b.csv");
  REQUIRE(run_cli("curvature --graph " + a + " --exact-or --out " + ca) == 0);
  REQUIRE(run_cli("curvature --graph " + a + " --exact-or --out " + cb) == 0);
  CHECK(slurp(ca) == slurp(cb));

  const std::string ja = dir.file("a.json"), jb = dir.file("b.json");
  REQUIRE(run_cli("summarize --graph " + a + " --exact-or --out " + ja) == 0);
  REQUIRE(run_cli("summarize --graph " + a + " --exact-or --out " + jb) == 0);
  CHECK(slurp(ja) == slurp(jb));
}

TEST_CASE("cli alpha profiles") {
  TempDir dir;
  const std::string graph = dir.file("c.txt");
  REQUIRE(run_cli("generate --model cycle --params n=12 --seed 0 --out " + graph) == 0);
  CHECK(run_cli("curvature --graph " + graph + " --alpha const:0.2 --out " +
                dir.file("c.csv")) == 0);
  CHECK(run_cli("curvature --graph " + graph + " --alpha const:1.0 --out " +
                dir.file("c.csv")) == 1);
  CHECK(run_cli("curvature --graph " + graph + " --alpha sideways --out " +
                dir.file("c.csv")) == 1);
}

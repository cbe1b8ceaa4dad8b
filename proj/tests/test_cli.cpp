#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("BANALG_NO_COLOR=1 '") + BANALG_CLI + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return (fs::path(BANALG_TEST_DATA) / name).string(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(BANALG_TEST_SCRATCH);
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("golden: build group --orders 2") {
  const Run r = run("build group --orders 2");
  CHECK(r.code == 0);
  CHECK(r.out == slurp(data("golden_group_z2.json")));
}

TEST_CASE("golden: characters of C2") {
  const Run r = run("characters " + data("c2.json"));
  CHECK(r.code == 0);
  CHECK(r.out == slurp(data("golden_c2_characters.json")));
}

TEST_CASE("-o writes the same bytes as stdout") {
  const fs::path out = scratch("group.json");
  const Run r = run("build group --orders 2,3 -o " + out.string());
  CHECK(r.code == 0);
  CHECK(slurp(out) == run("build group --orders 2,3").out);
}

TEST_CASE("a corrupted file exits with 2") {
  CHECK(run("characters " + data("corrupt.json")).code == 2);
  CHECK(run("characters " + data("does-not-exist.json")).code == 2);
  CHECK(run("verify " + data("corrupt.json")).code == 2);
}

TEST_CASE("bad arguments exit with 2") {
  CHECK(run("verify --theorem nonsense").code == 2);
  CHECK(run("verify --count 0").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("a non-contractive phi exits with 3 unless forced") {
  const std::string args =
      "build lau --a " + data("c2.json") + " --b " + data("c1.json") + " --phi " + data("phi_sum.json");
  CHECK(run(args).code == 3);
  CHECK(run(args + " --force").code == 0);
}

TEST_CASE("help exits with 0") {
  const Run r = run("--help");
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("verify on a product file passes") {
  const Run r = run("verify " + data("lau.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("\"fail\": 0") != std::string::npos);
}

TEST_CASE("default verify exits 0 and is byte-identical across runs and job counts") {
  const Run a = run("verify --count 3");
  const Run b = run("verify --count 3");
  const Run c = run("verify --count 3 --jobs 3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const Run t = run("verify --count 3 --format text");
  CHECK(t.code == 0);
  CHECK(t.out.find("\x1b[") == std::string::npos);
}

TEST_CASE("BSE norm of the split example") {
  const fs::path sigma = scratch("sigma.json");
  std::ofstream(sigma) << R"({"values": [[5, 0], [2, 0], [3, 0]]})";
  const Run p = run("bse-norm " + data("lau.json") + " --sigma " + sigma.string());
  CHECK(p.code == 0);
  CHECK(p.out.find("\"bse_norm\": 8.0") != std::string::npos);
  const Run d = run("bse-norm " + data("lau.json") + " --sigma " + sigma.string() + " --dual");
  CHECK(d.code == 0);
}

TEST_CASE("check-bse and multipliers on the Lau fixture") {
  const Run c = run("check-bse " + data("lau.json"));
  CHECK(c.code == 0);
  CHECK(c.out.find("\"bse\": true") != std::string::npos);
  const Run m = run("multipliers " + data("lau.json"));
  CHECK(m.code == 0);
  CHECK(m.out.find("\"dim\": 3") != std::string::npos);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(WINOFIR_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) {
    result.output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() /
           ("winofir_cli_" + std::to_string(reinterpret_cast<uintptr_t>(this)));
    fs::create_directories(dir_);
  }
  ~TempDir() { fs::remove_all(dir_); }
  std::string file(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

void put(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string golden(const std::string& name) {
  return slurp(std::string(WINOFIR_GOLDEN_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("convolve writes the filtered signal") {
  TempDir tmp;
  put(tmp.file("in.csv"), "1\n2\n3\n4\n5\n");
  const auto r = run_cli("convolve --signal " + tmp.file("in.csv") +
                         " --taps 1,1,1 --out " + tmp.file("out.csv"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("N=5") != std::string::npos);
  CHECK(r.output.find("outputs=3") != std::string::npos);
  CHECK(r.output.find("multiplications=7") != std::string::npos);
  CHECK(slurp(tmp.file("out.csv")) == "6\n9\n12\n");
}

TEST_CASE("naive and winograd modes write identical files") {
  TempDir tmp;
  std::ostringstream signal;
  for (int i = 0; i < 101; ++i) signal << (i * 37 % 201) - 100 << "\n";
  put(tmp.file("in.csv"), signal.str());

  const auto a = run_cli("convolve --signal " + tmp.file("in.csv") +
                         " --taps 3,-1/2,7 --mode winograd --out " +
                         tmp.file("w.csv"));
  const auto b = run_cli("convolve --signal " + tmp.file("in.csv") +
                         " --taps 3,-1/2,7 --mode naive --out " +
                         tmp.file("n.csv"));
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(slurp(tmp.file("w.csv")) == slurp(tmp.file("n.csv")));
}

TEST_CASE("usage errors exit 2") {
  TempDir tmp;
  CHECK(run_cli("convolve --taps 1,1,1 --out " + tmp.file("x")).exit_code == 2);
  CHECK(run_cli("convolve").exit_code == 2);
  CHECK(run_cli("definitely-not-a-subcommand").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("verify --trials 0").exit_code == 2);
  CHECK(run_cli("graph --which sideways").exit_code == 2);
  CHECK(run_cli("cost --bits 0").exit_code == 2);
  CHECK(run_cli("precompute --taps 1,1").exit_code == 2);
  CHECK(run_cli("precompute --taps 1,1,1 --backend exact --fixed 16,8").exit_code ==
        2);
}

TEST_CASE("runtime errors exit 1") {
  TempDir tmp;
  // overflow under policy=error: 100+100 leaves fixed(8,0)
  put(tmp.file("big.csv"), "# fixed 8 0 error nearest_even\n100\n100\n100\n");
  const auto r = run_cli("convolve --signal " + tmp.file("big.csv") +
                         " --taps 1,1,1 --backend fixed --fixed 8,0,error --out " +
                         tmp.file("out.csv"));
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("overflow") != std::string::npos);

  CHECK(run_cli("convolve --signal " + tmp.file("missing.csv") +
                " --taps 1,1,1 --out " + tmp.file("out2.csv"))
            .exit_code == 1);
}

TEST_CASE("precompute prints both transform paths' agreed values") {
  CHECK(run_cli("precompute --taps 1,1,1").output == "1 3/2 1/2 1\n");
  CHECK(run_cli("precompute --taps 0,0,0").output == "0 0 0 0\n");
  CHECK(run_cli("precompute --taps 2,0,2").output == "2 2 2 2\n");
  CHECK(run_cli("precompute --taps 1,1,1").exit_code == 0);
}

TEST_CASE("cost and map-dsp emit the report JSON") {
  const auto wino = run_cli("cost --structure winograd --bits 16");
  CHECK(wino.exit_code == 0);
  CHECK(wino.output == golden("report_winograd_b16.json"));

  const auto naive = run_cli("map-dsp --structure naive");
  CHECK(naive.exit_code == 0);
  CHECK(naive.output.find("\"blocks_used\": 2") != std::string::npos);

  const auto packed = run_cli("map-dsp --structure winograd");
  CHECK(packed.output.find("\"blocks_used\": 1") != std::string::npos);
  CHECK(packed.output.find("\"external_adders\": 2") != std::string::npos);

  const auto custom = run_cli("map-dsp --structure naive --dsp 6,0,6");
  CHECK(custom.output.find("\"blocks_used\": 1") != std::string::npos);
}

TEST_CASE("graph export matches the golden DOT files") {
  TempDir tmp;
  const auto r = run_cli("graph --which winograd --out " + tmp.file("w.dot"));
  CHECK(r.exit_code == 0);
  CHECK(slurp(tmp.file("w.dot")) == golden("winograd.dot"));

  CHECK(run_cli("graph --which naive").output == golden("naive.dot"));
  CHECK(run_cli("graph --which precompute").output == golden("precompute.dot"));
}

TEST_CASE("verify runs the property suites deterministically") {
  const auto r = run_cli("verify --trials 2000 --seed 42");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "2000/2000 passed\n");

  const auto again = run_cli("verify --trials 2000 --seed 42");
  CHECK(again.output == r.output);
}

TEST_CASE("config file supplies defaults and flags override it") {
  TempDir tmp;
  put(tmp.file("in.csv"), "1\n2\n3\n4\n5\n");
  put(tmp.file("cfg.json"),
      "{\"taps\":\"1,1,1\",\"signal\":{\"path\":\"" + tmp.file("in.csv") +
          "\",\"format\":\"csv\"},\"outputs\":{\"result\":\"" +
          tmp.file("out.csv") + "\"},\"mode\":\"naive\"}");

  const auto r = run_cli("convolve --config " + tmp.file("cfg.json"));
  CHECK(r.exit_code == 0);
  CHECK(slurp(tmp.file("out.csv")) == "6\n9\n12\n");
  CHECK(r.output.find("mode=naive") != std::string::npos);

  const auto w = run_cli("convolve --config " + tmp.file("cfg.json") +
                         " --mode winograd --out " + tmp.file("out2.csv"));
  CHECK(w.exit_code == 0);
  CHECK(w.output.find("mode=winograd") != std::string::npos);
  CHECK(slurp(tmp.file("out2.csv")) == "6\n9\n12\n");

  put(tmp.file("bad.json"), "{\"nope\":1}");
  CHECK(run_cli("convolve --config " + tmp.file("bad.json")).exit_code == 1);
}

TEST_CASE("fixed-point round trip through the CLI") {
  TempDir tmp;
  put(tmp.file("in.csv"), "# fixed 16 8 saturate nearest_even\n256\n512\n768\n1024\n1280\n");
  const auto r = run_cli("convolve --signal " + tmp.file("in.csv") +
                         " --taps 1,1,1 --backend fixed --fixed 16,8 --out " +
                         tmp.file("out.csv"));
  CHECK(r.exit_code == 0);
  // outputs 6,9,12 in raw register units of 2^-8
  CHECK(slurp(tmp.file("out.csv")) ==
        "# fixed 16 8 saturate nearest_even\n1536\n2304\n3072\n");
}

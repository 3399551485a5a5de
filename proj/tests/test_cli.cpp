#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "unilrc/code_io.h"

using namespace unilrc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run lrckit(const std::string& args) {
  const std::string cmd = std::string(LRCKIT_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lrckit_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_random(const fs::path& path, std::size_t bytes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string data(bytes, '\0');
  for (auto& c : data) c = static_cast<char>(rng());
  write_text_file(path, data);
}

}  // namespace

TEST_CASE("construct prints the summary and writes a loadable code") {
  const fs::path dir = scratch("construct");
  const Run r = lrckit("construct --preset unilrc-42 -o " + (dir / "c.json").string());
  CHECK(r.code == 0);
  CHECK(r.out.find("UniLRC n=42 k=30 r=6 z=6 g=6 l=6 d=8 rate=0.7143") != std::string::npos);
  CHECK(load_code(dir / "c.json") == build_preset("unilrc-42"));

  const Run fam = lrckit("construct --family unilrc --alpha 2 --z 8");
  CHECK(fam.code == 0);
  CHECK(fam.out.find("n=136 k=112") != std::string::npos);
  const Run ulrc = lrckit("construct --family ulrc --k 6 --small-locality 2 --large-locality 3 --small-count 1 --large-count 2");
  CHECK(ulrc.code == 0);
}

TEST_CASE("parameter and usage errors exit with 2") {
  const Run z1 = lrckit("construct --family unilrc --alpha 1 --z 1");
  CHECK(z1.code == 2);
  CHECK(z1.out.find("z >= 2") != std::string::npos);
  CHECK(lrckit("construct --preset nope-42").code == 2);
  CHECK(lrckit("frobnicate").code == 2);
  CHECK(lrckit("encode --input x").code == 2);
  CHECK(lrckit("simulate --preset unilrc-42 --workload scrub").code == 2);
}

TEST_CASE("verify reports each check") {
  const Run ok = lrckit("verify --alpha 1 --z 2");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("parity-check nullity PASS") != std::string::npos);
  CHECK(ok.out.find("distance=4 (exhaustive) PASS") != std::string::npos);

  const Run big = lrckit("verify --preset unilrc-42 --samples 500");
  CHECK(big.code == 0);
  CHECK(big.out.find("distance=8 (claimed, sampled 500") != std::string::npos);

  const Run off = lrckit("verify --alpha 1 --z 3");
  CHECK(off.code == 1);
  CHECK(off.out.find("distance=6 (exhaustive, claimed 5") != std::string::npos);
}

TEST_CASE("encode, repair and decode a file") {
  const fs::path dir = scratch("roundtrip");
  write_random(dir / "in.bin", 100000, 5);
  REQUIRE(lrckit("construct --preset ulrc-42 -o " + (dir / "c.json").string()).code == 0);
  REQUIRE(lrckit("encode --code " + (dir / "c.json").string() + " --input " + (dir / "in.bin").string() +
                 " --block-size 1024 --out-dir " + (dir / "blocks").string()).code == 0);
  const fs::path manifest = dir / "blocks" / "manifest.json";
  CHECK(fs::exists(manifest));

  const Run rep = lrckit("repair --manifest " + manifest.string() + " --erase 3");
  CHECK(rep.code == 0);
  CHECK(rep.out.find("block=3 helpers=") != std::string::npos);
  CHECK(rep.out.find("xor_only=true") != std::string::npos);

  const Run dec = lrckit("decode --manifest " + manifest.string() + " --erase 0,1,2,3,4,5,6 --output " +
                         (dir / "out.bin").string());
  CHECK(dec.code == 0);
  CHECK(read_text_file(dir / "out.bin") == read_text_file(dir / "in.bin"));

  // Missing block files count as erased.
  for (int b : {10, 20, 31})
    for (const auto& e : fs::directory_iterator(dir / "blocks"))
      if (e.path().filename().string().find("block_00" + std::to_string(b)) == 0) fs::remove(e.path());
  CHECK(lrckit("decode --manifest " + manifest.string() + " --output " + (dir / "out2.bin").string()).code == 0);
  CHECK(read_text_file(dir / "out2.bin") == read_text_file(dir / "in.bin"));

  const Run bad = lrckit("decode --manifest " + manifest.string() +
                         " --erase 0,1,2,3,4,5,6,7,8,9,11,12,13,14,15,16 --output " + (dir / "out3.bin").string());
  CHECK(bad.code == 1);
  CHECK(bad.out.find("not decodable") != std::string::npos);
}

TEST_CASE("analyze, mttdl and simulate emit CSV") {
  const Run an = lrckit("analyze --all-42");
  CHECK(an.code == 0);
  CHECK(an.out.find("ALRC,ecwide,r_bar,8.57143,60/7") != std::string::npos);
  CHECK(an.out.find("UniLRC,native,CARC,0,0") != std::string::npos);

  const Run mt = lrckit("mttdl --scheme 42");
  CHECK(mt.code == 0);
  CHECK(std::count(mt.out.begin(), mt.out.end(), '\n') == 5);
  CHECK(mt.out.find(",UniLRC,7,0,6,0.6,") != std::string::npos);
  CHECK(lrckit("mttdl --scheme 42 --delta 2").code == 2);

  const Run sim = lrckit("simulate --preset unilrc-42 --workload reconstruction --sweep-cross-bw 0.5..2");
  CHECK(sim.code == 0);
  CHECK(std::count(sim.out.begin(), sim.out.end(), '\n') == 4);
  CHECK(sim.out.find("unilrc-42,UniLRC,reconstruction,6.25e+07,2.08333e+08") != std::string::npos);
}

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "doctest.h"
#include "tl/jw.hpp"
#include "tl/serialize.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& cache = "") {
  const std::string cmd = "TL_CACHE='" + cache + "' " + TL_CLI_PATH + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("tl-cache-test-" + std::to_string(rd()));
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("jw command") {
  const Result text = run("jw --n 3");
  CHECK(text.status == 0);
  CHECK(text.out.find("5 terms") != std::string::npos);
  const Result json = run("jw --n 3 --format json");
  CHECK(json.status == 0);
  CHECK(tl::decode_generic_morphism(tl::Json::parse(json.out)) == tl::jw(3));
  CHECK(run("jw --n 2 --field p=2,minpoly=0,1").status == 2);
  const Result f2 = run("jw --n 3 --field p=2,minpoly=0,1");
  CHECK(f2.status == 0);
  CHECK(f2.out.find("3 terms") != std::string::npos);
  CHECK(run("jw --n 3 --format latex").out.find("\\frac") != std::string::npos);
  CHECK(run("jw").status != 0);
  CHECK(run("jw --n 3 --field p=4,minpoly=0,1").status == 64);
  CHECK(run("jw --n 3 --format yaml").status == 64);
}

TEST_CASE("pljw command") {
  CHECK(run("pljw --n 15 --ell 3 --p 2 --show support").out == "7 9 13 15\n");
  const Result total = run("pljw --n 2 --ell 2 --p 2 --show total");
  CHECK(total.status == 0);
  CHECK(total.out.find("1 term\n") != std::string::npos);
  CHECK(run("pljw --n 2 --ell 2 --p 2 --show lambda").out == "{2: 1, 0: 1/δ}\n");
  CHECK(run("pljw --n 4 --ell 2 --field p=3,minpoly=2,1 --show support").status == 65);
  CHECK(run("pljw --n 4 --ell 3 --field p=3,minpoly=2,1 --show support").status == 0);
}

TEST_CASE("small commands") {
  CHECK(run("digits --x 16 --ell 3 --p 2").out == "1,1,0,1\n");
  CHECK(run("supp --n 15 --ell 3 --p 2").out == "7 9 13 15\n");
  CHECK(run("father --n 15 --ell 3 --p 2").out == "14\n");
  const Result exists = run("exists --n 4 --field p=3,minpoly=2,1");
  CHECK(exists.status == 0);
  CHECK(exists.out == "adam: false, binomial: false\n");
  const Result trace = run("trace --n 4 --ell 3 --p 2 --steps 1");
  CHECK(trace.status == 0);
  CHECK(!trace.out.empty());
}

TEST_CASE("verify command") {
  const Result jw = run("verify --suite jw --max-n 6");
  CHECK(jw.status == 0);
  CHECK(jw.out.find("OK") != std::string::npos);
  CHECK(run("verify --suite pljw --max-n 6 --ell 2 --p 2").status == 0);
  CHECK(run("verify --suite descent --max-n 6 --field p=2,minpoly=0,1").status == 0);
}

TEST_CASE("cache hits reproduce cache misses") {
  TempDir dir;
  const std::string cache = dir.path.string();
  for (const std::string args : {"jw --n 6 --format json", "pljw --n 6 --ell 2 --p 2 --format json",
                                 "pljw --n 7 --ell 3 --p 2 --show terms --format json"}) {
    const Result miss = run(args, cache);
    const Result hit = run(args, cache);
    const Result none = run(args, "");
    CHECK(miss.status == 0);
    CHECK(miss.out == hit.out);
    CHECK(miss.out == none.out);
  }
  CHECK(fs::exists(dir.path / "jw-6-generic-generic.json"));
  CHECK(fs::exists(dir.path / "pljw-6-2-2.json"));
}

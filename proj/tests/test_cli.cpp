#include <doctest.h>

#include <array>
#include <cstdio>
#include <memory>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Result
{
  int status;
  std::string out;
};

Result run(const std::string & args)
{
  const std::string cmd = std::string(NESTEDSR_PATH) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE *)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe.get())) { out.append(buf.data(), n); }
  const int raw = pclose(pipe.release());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST_CASE("frames")
{
  const Result h = run("frames --bundle hopf --point identity");
  REQUIRE(h.status == 0);
  const auto j = nlohmann::json::parse(h.out);
  CHECK(j.at("frame").size() == 10);
  CHECK(j.at("partition") == nlohmann::json::array({4, 3, 3}));

  const Result g = run("frames --bundle gromoll-meyer --point identity");
  REQUIRE(g.status == 0);
  CHECK(nlohmann::json::parse(g.out).at("ranks").at("vertical_Delta") == 3);

  CHECK(run("frames").status == 2);
  CHECK(run("frames --bundle torus").status == 2);
  CHECK(run("frames --bundle hopf --point 1,2,3").status == 2);
  CHECK(run("").status == 2);
}

TEST_CASE("geodesic")
{
  const Result z = run("geodesic --step 0.25");
  CHECK(z.status == 0);
  CHECK(std::count(z.out.begin(), z.out.end(), '\n') == 6);

  const Result a = run("geodesic --momentum 1,0,0,0,0,0,0,0,0,0 --side up --step 0.01");
  CHECK(a.status == 0);
  CHECK(a.out == run("geodesic --momentum 1,0,0,0,0,0,0,0,0,0 --side up --step 0.01").out);
  CHECK(run("geodesic --side down --momentum 0.3,1,0,0,0,0,0.2 --point random:3 --step 0.01").status == 0);

  CHECK(run("geodesic --bundle gromoll-meyer").status == 2);
  CHECK(run("geodesic --momentum 1,0 --side up").status == 2);
  CHECK(run("geodesic --side sideways").status == 2);
  CHECK(run("geodesic --step 0").status == 2);
  CHECK(run("geodesic --kind hd --side up").status == 2);
  CHECK(run("geodesic --step 0.2 --momentum 1,2,3,1,2,3,1,2,3,1").status == 1);
}

TEST_CASE("verify")
{
  const Result r = run("verify --suite prop2 --samples 50 --seed 7");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("pass") == true);
  CHECK(r.out == run("verify --suite prop2 --samples 50 --seed 7").out);

  CHECK(run("verify --suite bilinear --bundle gromoll-meyer --samples 5").status == 0);
  CHECK(run("verify --suite theorem1 --bundle gromoll-meyer").status == 2);
  CHECK(run("verify --suite nope").status == 2);
  CHECK(run("verify").status == 2);
}

TEST_CASE("config file with flag override")
{
  const std::string path = "nestedsr_test_config.json";
  {
    std::FILE * f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs(R"({"suite": "twistor", "samples": 4, "bundle": "hopf"})", f);
    std::fclose(f);
  }
  const Result a = run("verify --config " + path);
  CHECK(a.status == 0);
  CHECK(nlohmann::json::parse(a.out).at("count") == 5);
  const Result b = run("verify --config " + path + " --samples 2");
  CHECK(nlohmann::json::parse(b.out).at("count") == 3);
  CHECK(run("verify --config missing.json").status == 2);
  std::remove(path.c_str());
}

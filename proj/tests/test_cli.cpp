#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fidsim/cli.hpp"

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;
using fidsim::cli::run;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "fidsim_cli_tests";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int run_quiet(const std::vector<std::string>& args, std::string* err_text = nullptr) {
  std::ostringstream err;
  const int code = run(args, err);
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("validation failures exit 2 and name the field") {
  std::string err;
  const int code = run_quiet(
      {"analytic", "--n-spins", "0", "--coupling", "1.0", "--t-max", "1e-3"}, &err);
  CHECK(code == 2);
  CHECK_THAT(err, ContainsSubstring("n_spins"));
  const json record = json::parse(err);
  CHECK(record["error"]["exit_code"] == 2);
  CHECK(record["error"]["type"] == "validation");
  CHECK(record["error"]["field"] == "n_spins");
}

TEST_CASE("missing required options exit 2") {
  std::string err;
  CHECK(run_quiet({"fermion", "--n-spins", "4"}, &err) == 2);
  CHECK_THAT(err, ContainsSubstring("coupling"));
  CHECK(run_quiet({"no-such-command"}, &err) == 2);
}

TEST_CASE("compute guards exit 3") {
  TempDir dir;
  std::string err;
  const int code = run_quiet({"oracle", "--n-spins", "13", "--coupling", "1e4", "--t-max",
                              "1e-4", "--out", dir.file("x.csv")},
                             &err);
  CHECK(code == 3);
  CHECK_THAT(err, ContainsSubstring("free-fermion"));
}

TEST_CASE("io failures exit 4") {
  std::string err;
  CHECK(run_quiet({"analytic", "--coupling", "1e4", "--t-max", "1e-4", "--out",
                   "/nonexistent-dir/out.csv"},
                  &err) == 4);
  CHECK(run_quiet({"fit", "/nonexistent-dir/in.csv", "--d-min", "1e3", "--d-max", "1e5"},
                  &err) == 4);
}

TEST_CASE("help exits 0") { CHECK(run_quiet({"--help"}) == 0); }

TEST_CASE("compare emits all engine columns and a tight fermion summary") {
  TempDir dir;
  const std::string out = dir.file("compare.csv");
  const int code = run_quiet({"compare", "--n-spins", "8", "--coupling", "15.5e3",
                              "--t-max", "5e-4", "--points", "64", "--out", out});
  REQUIRE(code == 0);
  const std::string text = slurp(out);
  CHECK_THAT(text, ContainsSubstring("t,oracle,fermion,closed_finite,j0"));
  CHECK_THAT(text, ContainsSubstring("# fidsim"));
  CHECK_THAT(text, ContainsSubstring("# command=compare"));

  double max_diff = -1.0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const std::string key = "# max_abs_diff_fermion=";
    if (line.rfind(key, 0) == 0) max_diff = std::stod(line.substr(key.size()));
  }
  REQUIRE(max_diff >= 0.0);
  CHECK(max_diff <= 1e-10);

  // 64 data rows + header + comments
  CHECK(std::count(text.begin(), text.end(), '\n') >= 65);
}

TEST_CASE("compare refuses the dense guard") {
  std::string err;
  CHECK(run_quiet({"compare", "--n-spins", "13", "--coupling", "1e4", "--t-max", "1e-4"},
                  &err) == 3);
}

TEST_CASE("series output is byte-identical across runs") {
  TempDir dir;
  const std::string a = dir.file("a.csv");
  const std::string b = dir.file("b.csv");
  const std::vector<std::string> base = {"fermion", "--n-spins",  "64",   "--coupling",
                                         "15.5e3",  "--t-max",    "1e-3", "--points",
                                         "128"};
  auto with_out = [&](const std::string& path) {
    std::vector<std::string> args = base;
    args.insert(args.end(), {"--out", path});
    return args;
  };
  REQUIRE(run_quiet(with_out(a)) == 0);
  REQUIRE(run_quiet(with_out(b)) == 0);
  CHECK(slurp(a) == slurp(b));

  const std::string ja = dir.file("a.json");
  const std::string jb = dir.file("b.json");
  auto with_json = [&](const std::string& path) {
    std::vector<std::string> args = base;
    args.insert(args.end(), {"--output", "json", "--out", path});
    return args;
  };
  REQUIRE(run_quiet(with_json(ja)) == 0);
  REQUIRE(run_quiet(with_json(jb)) == 0);
  CHECK(slurp(ja) == slurp(jb));
  CHECK(slurp(ja) != slurp(a));
}

TEST_CASE("thermal accepts beta directly or via larmor and temperature") {
  TempDir dir;
  const std::string out = dir.file("thermal.json");
  REQUIRE(run_quiet({"thermal", "--n-spins", "4", "--coupling", "15.5e3", "--t-max",
                     "2e-4", "--points", "16", "--beta", "2.0", "--output", "json",
                     "--out", out}) == 0);
  const json j = json::parse(slurp(out));
  CHECK(j["meta"]["beta"] == 2.0);
  CHECK_THAT(j["meta"]["closed_form_amplitude"].get<double>(),
             WithinRel(2.0 * std::tanh(1.0), 1e-12));
  CHECK_THAT(j["meta"]["amplitude_at_zero"].get<double>(),
             WithinRel(2.0 * std::tanh(1.0), 1e-12));
  CHECK(j["value"][0] == 1.0);

  const std::string out2 = dir.file("thermal2.json");
  REQUIRE(run_quiet({"thermal", "--n-spins", "4", "--coupling", "15.5e3", "--t-max",
                     "2e-4", "--points", "16", "--larmor", "2.366e9", "--temperature",
                     "0.01", "--output", "json", "--out", out2}) == 0);
  const json j2 = json::parse(slurp(out2));
  CHECK(j2["meta"]["beta"].get<double>() > 0.0);

  std::string err;
  CHECK(run_quiet({"thermal", "--n-spins", "4", "--coupling", "15.5e3", "--t-max",
                   "2e-4"},
                  &err) == 2);
  CHECK_THAT(err, ContainsSubstring("beta"));
  CHECK(run_quiet({"thermal", "--n-spins", "4", "--coupling", "15.5e3", "--t-max",
                   "2e-4", "--larmor", "2.4e9"},
                  &err) == 2);
}

TEST_CASE("moments emits both values and labels the finite-N companion") {
  TempDir dir;
  const std::string out = dir.file("moments.json");
  REQUIRE(run_quiet({"moments", "--n-spins", "9", "--coupling", "15.5e3", "--out", out}) == 0);
  const json j = json::parse(slurp(out));
  const double d = 15.5e3;
  CHECK_THAT(j["m2_thermodynamic"].get<double>(), WithinRel(2.0 * d * d, 1e-15));
  CHECK_THAT(j["m2_finite_n"].get<double>(), WithinRel(2.0 * d * d * (1.0 - 1.0 / 9.0), 1e-15));
  CHECK(j["m2_finite_n_provenance"] == "derived, oracle-checked");

  const std::string csv = dir.file("moments.csv");
  REQUIRE(run_quiet({"moments", "--n-spins", "9", "--coupling", "15.5e3", "--output",
                     "csv", "--out", csv}) == 0);
  CHECK_THAT(slurp(csv), ContainsSubstring("m2_finite_n: derived, oracle-checked"));
}

TEST_CASE("fit on synthetic data recovers D and echoes the cycle multiplier") {
  TempDir dir;
  const std::string out = dir.file("fit.json");
  REQUIRE(run_quiet({"fit", "--synthetic", "--true-d", "15500", "--noise-sigma", "0",
                     "--seed", "7", "--d-min", "1e3", "--d-max", "1e5", "--out", out}) == 0);
  const json j = json::parse(slurp(out));
  for (const char* key :
       {"d_per_s", "amplitude", "rms_residual", "n_points", "search_lo", "search_hi"})
    REQUIRE(j.contains(key));
  CHECK_THAT(j["d_per_s"].get<double>(), WithinRel(15500.0, 1e-4));
  CHECK(j["n_points"] == 320);
  CHECK(j["meta"]["cycle_duration_in_tau"] == 12.0);
  CHECK(j["meta"]["source"] == "synthetic");
  CHECK(j["search_lo"] == 1e3);
  CHECK(j["search_hi"] == 1e5);
}

TEST_CASE("fit ingests the CSV it emits") {
  TempDir dir;
  const std::string data = dir.file("data.csv");
  const std::string out1 = dir.file("fit1.json");
  REQUIRE(run_quiet({"fit", "--synthetic", "--true-d", "15500", "--noise-sigma", "0.02",
                     "--seed", "42", "--emit-data", data, "--d-min", "1e3", "--d-max",
                     "1e5", "--out", out1}) == 0);
  CHECK_THAT(slurp(data), ContainsSubstring("tau_us,cycles,intensity"));

  const std::string out2 = dir.file("fit2.json");
  REQUIRE(run_quiet({"fit", data, "--d-min", "1e3", "--d-max", "1e5", "--out", out2}) == 0);
  const json j1 = json::parse(slurp(out1));
  const json j2 = json::parse(slurp(out2));
  // the round-trip loses only CSV formatting precision, none at %.17g
  CHECK_THAT(j2["d_per_s"].get<double>(), WithinRel(j1["d_per_s"].get<double>(), 1e-9));
  CHECK_THAT(j2["d_per_s"].get<double>(), WithinRel(15500.0, 0.01));
  CHECK(j2["meta"]["source"] == data);
}

TEST_CASE("fit rejects csv output, missing input and conflicting inputs") {
  std::string err;
  CHECK(run_quiet({"fit", "--synthetic", "--d-min", "1e3", "--d-max", "1e5", "--output",
                   "csv"},
                  &err) == 2);
  CHECK(run_quiet({"fit", "--d-min", "1e3", "--d-max", "1e5"}, &err) == 2);
  CHECK_THAT(err, ContainsSubstring("synthetic"));
  CHECK(run_quiet({"fit", "some.csv", "--synthetic", "--d-min", "1e3", "--d-max", "1e5"},
                  &err) == 2);
}

TEST_CASE("identical fit runs are byte-identical") {
  TempDir dir;
  const std::string a = dir.file("a.json");
  const std::string b = dir.file("b.json");
  const std::vector<std::string> base = {"fit",    "--synthetic", "--true-d", "15500",
                                         "--noise-sigma", "0.02", "--seed",   "9",
                                         "--d-min", "1e3",        "--d-max",  "1e5"};
  auto with_out = [&](const std::string& path) {
    std::vector<std::string> args = base;
    args.insert(args.end(), {"--out", path});
    return args;
  };
  REQUIRE(run_quiet(with_out(a)) == 0);
  REQUIRE(run_quiet(with_out(b)) == 0);
  CHECK(slurp(a) == slurp(b));
}

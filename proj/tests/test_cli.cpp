#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "xspectra/cli.hpp"

namespace fs = std::filesystem;
using xspectra::cli::format_double;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::current_path() / "cli_scratch" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

Result invoke(const fs::path& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir.string() + "' && '" XSPECTRA_BIN "' " + args +
                          " > stdout.txt 2> stderr.txt";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(dir / "stdout.txt"), slurp(dir / "stderr.txt")};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

int column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_CASE("format_double") {
  CHECK(format_double(1.0) == "1.0000000000000000e+00");
  CHECK(format_double(-0.125) == "-1.2500000000000000e-01");
  CHECK(std::stod(format_double(0.1)) == 0.1);
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("golden tables") {
  struct Case {
    std::string args, file;
  };
  const std::vector<Case> cases{
      {"table --family radial --eps 1.2 --points 21 --psi 1 --out radial_eps.csv", "radial_eps.csv"},
      {"table --family scarf --eps 1 --points 21 --psi 2 --out scarf_eps.csv", "scarf_eps.csv"},
      {"spectrum --family radial --points 200 --nmax 3 --out spectrum_radial.csv", "spectrum_radial.csv"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.args);
    const auto d = scratch("golden_" + c.file);
    const auto r = invoke(d, c.args);
    CHECK(r.code == 0);
    CHECK(slurp(d / c.file) == slurp(fs::path(GOLDEN_DIR) / c.file));
  }
}

TEST_CASE("repeated runs are byte identical") {
  const std::string args =
      "table --family scarf --a 0.5 --b 1.5 --k 1 --eps 0.7 --points 101 --psi 1,2,3 --out t.csv";
  const auto d1 = scratch("repeat1");
  const auto d2 = scratch("repeat2");
  REQUIRE(invoke(d1, args).code == 0);
  REQUIRE(invoke(d2, args).code == 0);
  CHECK(slurp(d1 / "t.csv") == slurp(d2 / "t.csv"));
  CHECK(slurp(d1 / "t.manifest.json") == slurp(d2 / "t.manifest.json"));
  const auto v1 = scratch("repeat3");
  const auto v2 = scratch("repeat4");
  REQUIRE(invoke(v1, "verify --suite pct").code == 0);
  REQUIRE(invoke(v2, "verify --suite pct").code == 0);
  CHECK(slurp(v1 / "verify_pct.json") == slurp(v2 / "verify_pct.json"));
}

TEST_CASE("exit codes") {
  const auto d = scratch("exit");
  CHECK(invoke(d, "verify --suite zeros").code == 0);
  CHECK(invoke(d, "verify --suite residuals --tol-residual 1e-12").code == 1);
  CHECK(invoke(d, "spectrum --family radial --points 200 --tol-rel-err 1e-9").code == 1);

  for (const std::string bad :
       {"verify --suite nonsense", "table --family radial --a -3", "table --family radial --b 2",
        "table --family scarf --a 2 --b 2", "table --family cubic", "spectrum --family scarf --eps 1",
        "table --points 0", "frobnicate", ""}) {
    CAPTURE(bad);
    const auto r = invoke(d, bad);
    CHECK(r.code == 2);
    CHECK(r.err.rfind("error:", 0) == 0);
  }
  CHECK(invoke(d, "--help").code == 0);
}

TEST_CASE("failing checks are reported on stdout and in the manifest") {
  const auto d = scratch("failing");
  const auto r = invoke(d, "verify --suite residuals --tol-residual 1e-12");
  REQUIRE(r.code == 1);
  CHECK(r.out.find("FAIL residuals.") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(d / "verify_residuals.json"));
  CHECK(j["all_pass"] == false);
  CHECK(j["tolerances"]["residual"].get<double>() == 1e-12);
}

TEST_CASE("manifest contents") {
  const auto d = scratch("manifest");
  REQUIRE(invoke(d, "verify --suite all").code == 0);
  const auto j = nlohmann::json::parse(slurp(d / "verify_all.json"));
  CHECK(j["command"] == "verify");
  CHECK(j["all_pass"] == true);
  CHECK(j["checks"].size() > 20);
  for (const auto& c : j["checks"]) {
    CHECK(c["measured"].is_number());
    CHECK(c["tolerance"].is_number());
    CHECK(c["status"] == "pass");
  }
  for (const auto& o : j["outputs"]) CHECK(fs::exists(d / o.get<std::string>()));

  REQUIRE(invoke(d, "verify --suite pct --family scarf").code == 0);
  const auto s = nlohmann::json::parse(slurp(d / "verify_pct.json"));
  CHECK(s["notes"]["scarf_coefficient_confirmed"] == "real_form");

  REQUIRE(invoke(d, "table --family radial --psi 1,2 --out r.csv").code == 0);
  const auto t = nlohmann::json::parse(slurp(d / "r.manifest.json"));
  CHECK(t["command"] == "table");
  for (const auto& o : t["outputs"]) CHECK(fs::exists(d / o.get<std::string>()));
  CHECK_FALSE(fs::exists(d / "r.csv.tmp"));
}

TEST_CASE("table properties") {
  const auto d = scratch("table");
  REQUIRE(invoke(d, "table --family radial --eps 1.2 --xmin -8 --xmax 8 --points 2001 --psi 1,2 --out r.csv").code == 0);
  const auto rows = read_csv(d / "r.csv");
  REQUIRE(rows.size() == 2002);
  const auto& head = rows[0];
  const int ix = column(head, "x"), iv = column(head, "im_V");
  REQUIRE(ix >= 0);
  REQUIRE(iv >= 0);
  // PT: imaginary part of V is odd on a symmetric grid
  for (std::size_t i = 1; i <= 2001; ++i) {
    const double a = std::stod(rows[i][iv]), b = std::stod(rows[2002 - i][iv]);
    CHECK(std::abs(a + b) <= 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("Hermitian densities are normalized") {
  const auto d = scratch("norm");
  REQUIRE(invoke(d, "table --family radial --a 2 --k 1.75 --eps 0 --points 4001 --psi 1,2 --out n.csv").code == 0);
  const auto rows = read_csv(d / "n.csv");
  const auto& head = rows[0];
  const int ix = column(head, "x");
  for (const std::string col : {"abs2_psi_1", "abs2_psi_2"}) {
    const int ic = column(head, col);
    REQUIRE(ic >= 0);
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
      const double x0 = std::stod(rows[i][ix]), x1 = std::stod(rows[i + 1][ix]);
      s += 0.5 * (x1 - x0) * (std::stod(rows[i][ic]) + std::stod(rows[i + 1][ic]));
    }
    CAPTURE(col);
    CHECK(std::abs(s - 1.0) <= 1e-4);
  }
}

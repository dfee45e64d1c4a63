#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "idxadvisor/cli.hpp"
#include "idxadvisor/pipeline.hpp"

namespace fs = std::filesystem;
using namespace idxadvisor;

namespace {

const fs::path kData = fs::path(IDXADVISOR_TEST_DATA_DIR) / "data" / "tpcr";
const fs::path kGolden = fs::path(IDXADVISOR_TEST_DATA_DIR) / "golden";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("idxadvisor_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> base_args(const fs::path& out) {
  return {"--workload", (kData / "workload.sql").string(), "--schema", (kData / "schema.txt").string(),
          "--stats",    (kData / "stats.txt").string(),    "--out",    out.string()};
}

}  // namespace

TEST_CASE("cli: fixture run writes the three outputs and matches the golden DDL") {
  auto out = scratch("golden");
  auto args = base_args(out);
  args.insert(args.end(), {"--minsup", "0.25", "--strategy", "all"});
  auto r = run(args);
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(out / "report.txt"));
  CHECK(fs::exists(out / "report.dat"));
  auto sql = slurp(out / "recommendation.sql");
  CHECK_FALSE(sql.empty());
  CHECK(sql == slurp(kGolden / "tpcr_minsup025_all.sql"));
}

TEST_CASE("cli: two runs produce byte-identical files") {
  auto a = scratch("det_a");
  auto b = scratch("det_b");
  auto args_a = base_args(a);
  auto args_b = base_args(b);
  for (auto* args : {&args_a, &args_b}) args->insert(args->end(), {"--minsup", "0.25", "--strategy", "large-tables"});
  REQUIRE(run(args_a).code == 0);
  REQUIRE(run(args_b).code == 0);
  for (const char* f : {"recommendation.sql", "report.txt", "report.dat"}) {
    CAPTURE(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("cli: exit codes") {
  auto out = scratch("codes");
  const std::string workload = (kData / "workload.sql").string();
  const std::string schema = (kData / "schema.txt").string();
  const std::string stats = (kData / "stats.txt").string();

  CHECK(run({"--workload", "/nonexistent/w.sql", "--schema", schema, "--out", out.string()}).code == 2);
  CHECK(run({"--workload", workload, "--schema", "/nonexistent/s.txt", "--out", out.string()}).code == 2);
  CHECK(run({"--workload", workload, "--schema", schema, "--strategy", "large-tables", "--out",
             out.string()})
            .code == 1);
  CHECK(run({"--workload", workload, "--schema", schema, "--minsup", "0", "--out", out.string()}).code == 1);
  CHECK(run({"--workload", workload, "--schema", schema, "--minsup", "1.5", "--out", out.string()}).code == 1);
  CHECK(run({"--workload", workload, "--schema", schema, "--strategy", "some", "--out", out.string()}).code ==
        1);
  CHECK(run({"--workload", workload, "--schema", schema, "--policy", "select", "--out", out.string()}).code ==
        1);
  CHECK(run({"--workload", workload, "--schema", schema, "--dialect", "mssql", "--out", out.string()}).code ==
        1);
  CHECK(run({"--workload", workload, "--out", out.string()}).code == 1);
  CHECK(run({"--bogus-flag"}).code == 1);
  CHECK(run({"--workload", workload, "--schema", schema, "--threshold-rows", "-4"}).code == 1);
  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--minsup") != std::string::npos);
}

TEST_CASE("cli: malformed input files exit 2") {
  auto dir = scratch("malformed");
  std::ofstream(dir / "bad_schema.txt") << "TABLE t\n  a\n  a\n";
  std::ofstream(dir / "bad_stats.txt") << "t\t-1\n";
  std::ofstream(dir / "bad_utf8.sql") << "SELECT a FROM t WHERE b = '\xff';";
  const std::string workload = (kData / "workload.sql").string();
  const std::string schema = (kData / "schema.txt").string();
  const std::string out = (dir / "out").string();
  CHECK(run({"--workload", workload, "--schema", (dir / "bad_schema.txt").string(), "--out", out}).code == 2);
  CHECK(run({"--workload", workload, "--schema", schema, "--stats", (dir / "bad_stats.txt").string(), "--out",
             out})
            .code == 2);
  CHECK(run({"--workload", (dir / "bad_utf8.sql").string(), "--schema", schema, "--out", out}).code == 2);
}

TEST_CASE("cli: per-statement SQL problems do not change the exit code") {
  auto dir = scratch("diag");
  std::ofstream(dir / "w.sql") << "SELECT FROM nowhere; SELECT 1 FROM lineitem WHERE no_such_col = 1;"
                                  "SELECT 1 FROM lineitem WHERE l_shipdate > date '1995-01-01';";
  auto r = run({"--workload", (dir / "w.sql").string(), "--schema", (kData / "schema.txt").string(), "--minsup",
                "1", "--out", (dir / "out").string(), "-v"});
  CHECK(r.code == 0);
  CHECK(r.err.find("statement 0") != std::string::npos);
  CHECK(r.err.find("statement 1") != std::string::npos);
  CHECK(slurp(dir / "out" / "recommendation.sql") == "CREATE INDEX idx_lineitem_l_shipdate ON lineitem (l_shipdate);\n");
}

TEST_CASE("cli: empty workload gives an empty recommendation and exit 0") {
  auto dir = scratch("empty");
  std::ofstream(dir / "w.sql") << "-- nothing here\n";
  auto args = std::vector<std::string>{"--workload", (dir / "w.sql").string(), "--schema",
                                       (kData / "schema.txt").string(), "--out", (dir / "out").string()};
  auto r = run(args);
  CHECK(r.code == 0);
  CHECK(slurp(dir / "out" / "recommendation.sql").empty());
  args.push_back("--dump-itemsets");
  auto dump = run(args);
  CHECK(dump.code == 0);
  CHECK(dump.out.empty());
}

TEST_CASE("cli: mine dump matches the brute-force oracle on a small workload") {
  auto dir = scratch("dump");
  std::ofstream(dir / "w.sql")
      << "SELECT * FROM orders, lineitem WHERE o_orderkey = l_orderkey AND l_shipdate > date '1995-01-01';"
         "SELECT * FROM orders WHERE o_orderdate < date '1995-01-01' ORDER BY o_orderkey;"
         "SELECT * FROM lineitem WHERE l_shipdate > date '1995-01-01' GROUP BY l_orderkey;"
         "SELECT * FROM orders, lineitem WHERE o_orderkey = l_orderkey;"
         "INSERT INTO orders VALUES (1);";
  auto schema_path = kData / "schema.txt";
  auto r = run({"--workload", (dir / "w.sql").string(), "--schema", schema_path.string(), "--minsup", "0.4",
                "--dump-itemsets"});
  REQUIRE(r.code == 0);

  PipelineOptions options;
  options.minsup = mining::MinSupport::fraction(0.4);
  auto mined = mine_workload(slurp(dir / "w.sql"), parse_schema(slurp(schema_path)), options);
  auto oracle = mining::mine_bruteforce(mined.database, options.minsup);
  CHECK(r.out == dump_itemsets(oracle, mined.dictionary));
  CHECK(r.out ==
        "3\tlineitem.l_orderkey\n"
        "3\torders.o_orderkey\n"
        "2\tlineitem.l_orderkey,lineitem.l_shipdate\n"
        "2\tlineitem.l_orderkey,orders.o_orderkey\n");
}

TEST_CASE("cli: output directory from the environment") {
  auto dir = scratch("env");
  ::setenv(cli::kOutDirEnv, (dir / "from_env").string().c_str(), 1);
  auto r = run({"--workload", (kData / "workload.sql").string(), "--schema", (kData / "schema.txt").string()});
  ::unsetenv(cli::kOutDirEnv);
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "from_env" / "recommendation.sql"));
}

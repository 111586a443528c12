#include <doctest.h>

#include <json.hpp>

#include "dopkit/report.hpp"
#include "dopkit/version.hpp"

using dopkit::Report;

namespace {

Report sample() {
  Report r;
  r.command = "dops";
  r.add_config("ring", "field QQ; vars x:1;");
  r.add_config("order", 2);
  r.columns = {"degree", "dim"};
  r.add_row({"-1", "0"});
  r.add_row({"0", "1"});
  r.add_note("window [-1:0]");
  return r;
}

}  // namespace

TEST_CASE("report: TSV layout") {
  std::string expect = std::string("# dopkit ") + dopkit::version() +
                       "\n"
                       "# command: dops\n"
                       "# config ring: field QQ; vars x:1;\n"
                       "# config order: 2\n"
                       "# note: window [-1:0]\n"
                       "degree\tdim\n"
                       "-1\t0\n"
                       "0\t1\n";
  CHECK(sample().to_tsv() == expect);
}

TEST_CASE("report: JSON schema and determinism") {
  std::string s = sample().to_json();
  CHECK(s == sample().to_json());

  auto j = nlohmann::json::parse(s);
  CHECK(j["schema"] == "dopkit-report/1");
  CHECK(j["version"] == dopkit::version());
  CHECK(j["command"] == "dops");
  CHECK(j["config"]["order"] == "2");
  CHECK(j["columns"].size() == 2);
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][1][1] == "1");
  CHECK(j["notes"].size() == 1);
}

TEST_CASE("report: malformed use is rejected") {
  Report r = sample();
  CHECK_THROWS_AS(r.add_row({"only-one-cell"}), std::logic_error);
  CHECK_THROWS_AS((void)r.render("xml"), std::invalid_argument);
  CHECK(r.render("tsv") == r.to_tsv());
  CHECK(r.render("json") == r.to_json());
}

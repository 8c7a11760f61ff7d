#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "qwzeta/io.hpp"

using namespace qwz;

TEST_CASE("doubles round trip through their text form") {
  for (double v : {0.0, 1.0, -0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, 0.13258252147247765}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-2.0) == "-2");
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("explicit:0,3") == "\"explicit:0,3\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  std::ostringstream out;
  write_csv_row(out, {"a", "b,c", ""});
  CHECK(out.str() == "a,\"b,c\",\r\n");
}

TEST_CASE("complex parsing") {
  CHECK(parse_complex("0.5") == Complex(0.5, 0.0));
  CHECK(parse_complex("-1e-3") == Complex(-1e-3, 0.0));
  CHECK(parse_complex("0.3+0.2i") == Complex(0.3, 0.2));
  CHECK(parse_complex("0.3-0.2j") == Complex(0.3, -0.2));
  CHECK(parse_complex("2i") == Complex(0.0, 2.0));
  CHECK(parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(parse_complex("1e-2+1e-3i") == Complex(1e-2, 1e-3));
  CHECK(parse_complex("1+i") == Complex(1.0, 1.0));
  for (const char* bad : {"", "abc", "0.3+xi", "1..2", "nan", "0.5 "}) {
    CHECK_THROWS_AS(parse_complex(bad), std::invalid_argument);
  }
}

TEST_CASE("zeta csv fields") {
  ZetaValue z;
  z.value = Complex(0.25, 0.0);
  z.u = Complex(0.3, 0.2);
  z.method = ZetaMethod::Direct;
  z.flags = kZetaBranchSensitive | kZetaSingular;
  const auto f = zeta_csv_fields(z, 2, 4, "half");
  REQUIRE(f.size() == kZetaCsvHeader.size());
  CHECK(f[0] == "direct");
  CHECK(f[1] == "2");
  CHECK(f[2] == "4");
  CHECK(f[3] == "half");
  CHECK(f[4] == "0.29999999999999999");
  CHECK(f[5] == "0.20000000000000001");
  CHECK(f[6] == "0.25");
  CHECK(f[8] == "singular|branch-sensitive");
  CHECK(zeta_csv_fields(z, 1, std::nullopt, "")[2].empty());
}

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "mmlink/csv.hpp"
#include "mmlink/errors.hpp"

using namespace mmlink;

TEST_CASE("value formatting round-trips doubles and prints integers plainly") {
    CHECK(format_value(0.125) == "0.125"); // exact binary fraction stays short
    CHECK(format_value(2.0) == "2");
    CHECK(format_value(42) == "42");
    CHECK(format_value(-7L) == "-7");
    CHECK(format_value(0L) == "0");

    for (double v : {3.14159265358979312, 1.0 / 3.0, 1e-300, 6.02214076e23,
                     -12345.678901234567, 9.109383e-31}) {
        const std::string s = format_value(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v); // decimal text recovers every bit
    }
}

TEST_CASE("rendering joins cells with commas and terminates every line") {
    CsvTable t;
    t.header = {"a", "b", "c"};
    t.add_row({"1", "2", "3"});
    t.add_row({"x", "", "z"}); // empty cells are legal (sparse sweep columns)
    CHECK(render_csv(t) == "a,b,c\n1,2,3\nx,,z\n");

    CsvTable one;
    one.header = {"k"};
    one.add_row({"v"});
    CHECK(render_csv(one) == "k\nv\n");

    CsvTable headers_only;
    headers_only.header = {"p", "q"};
    CHECK(render_csv(headers_only) == "p,q\n");
}

TEST_CASE("table guards") {
    CsvTable t;
    t.header = {"a", "b"};
    CHECK_THROWS_AS(t.add_row({"only-one"}), IoError);
    CHECK_THROWS_AS(t.add_row({"1", "2", "3"}), IoError);
    CsvTable empty;
    CHECK_THROWS_AS(render_csv(empty), IoError);
    CHECK_THROWS_AS(emit_csv(empty, "/tmp/mmlink_csv_never_written.csv"), IoError);
}

TEST_CASE("file emission writes exactly the rendered bytes") {
    CsvTable t;
    t.header = {"n", "rate"};
    t.add_row({format_value(1), format_value(1.0 / 3.0)});
    t.add_row({format_value(2), format_value(0.125)});

    const std::string path = "/tmp/mmlink_csv_test.csv";
    emit_csv(t, path);
    std::ifstream in(path, std::ios::binary);
    REQUIRE(static_cast<bool>(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == render_csv(t));
    std::remove(path.c_str());

    CHECK_THROWS_AS(emit_csv(t, "/nonexistent-dir-for-mmlink/out.csv"), IoError);
}

#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fsorail/csv.hpp"
#include "test_helpers.hpp"

using namespace fsorail::csv;

TEST_CASE("doubles render with nine significant digits and parse back") {
    CHECK(format_double(2000.0) == "2000");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1e-9) == "1e-09");
    for (const double v : {993.2172288783599, -21.947648499945324, 3.1415926535897932,
                           1.0 / 3.0, 9.9936149327115131e-10, 5.4990398430162615e-5,
                           -51.937304483428206, 1e-300}) {
        const double back = std::stod(format_double(v));
        CHECK(rel_eq(back, v, 5e-9));
    }
}

TEST_CASE("tables render as comma-separated lines") {
    Table t;
    t.header = {"a", "b"};
    t.rows = {{"1", "2"}, {"3", "4"}};
    CHECK(t.to_string() == "a,b\n1,2\n3,4\n");

    t.rows.push_back({"only-one"});
    CHECK_THROWS_AS(t.to_string(), std::logic_error);
}

TEST_CASE("atomic writes land complete and overwrite cleanly") {
    const std::string path = "/tmp/fsorail_test_atomic.csv";
    write_file_atomic(path, "first\n");
    write_file_atomic(path, "second version\n");

    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "second version\n");
    std::remove(path.c_str());

    // No temp droppings left behind.
    for (const auto& entry : std::filesystem::directory_iterator("/tmp")) {
        const auto name = entry.path().filename().string();
        CHECK(name.find("fsorail_test_atomic.csv.tmp") == std::string::npos);
    }
}

TEST_CASE("atomic write to an unwritable directory fails loudly") {
    CHECK_THROWS_AS(write_file_atomic("/nonexistent-dir/x.csv", "data"),
                    std::runtime_error);
}

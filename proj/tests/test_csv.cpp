#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "meantest/csv.hpp"

using namespace meantest;

namespace {

std::string contains(const std::exception& e) { return e.what(); }

}  // namespace

TEST_CASE("basic matrices parse") {
    const Matrix m = parse_matrix_csv("1,0\n0,1\n", "t");
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 2);
    CHECK(m(0, 0) == 1.0);
    CHECK(m(1, 1) == 1.0);

    const Matrix single = parse_matrix_csv("3.5", "t");
    CHECK(single.rows() == 1);
    CHECK(single.cols() == 1);

    // Whitespace and CRLF line endings are tolerated.
    const Matrix spaced = parse_matrix_csv(" 1 , 2 \r\n 3 , 4 \r\n", "t");
    CHECK(spaced(1, 0) == 3.0);

    // Blank lines are skipped.
    const Matrix blanks = parse_matrix_csv("1,2\n\n3,4\n\n", "t");
    CHECK(blanks.rows() == 2);
}

TEST_CASE("header rows are skipped") {
    const Matrix m = parse_matrix_csv("a,b\n1,2\n3,4\n", "t");
    REQUIRE(m.rows() == 2);
    CHECK(m(0, 1) == 2.0);

    // A single header with no data is still an empty file.
    CHECK_THROWS_AS(parse_matrix_csv("x,y\n", "t"), ParseError);
}

TEST_CASE("ragged rows name the offending row") {
    try {
        parse_matrix_csv("1,2\n3\n", "t");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(contains(e).find("row 2") != std::string::npos);
    }
}

TEST_CASE("non-numeric cells name row and column") {
    try {
        parse_matrix_csv("1,2\nfoo,4\n", "t");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(contains(e).find("row 2") != std::string::npos);
        CHECK(contains(e).find("column 1") != std::string::npos);
    }
}

TEST_CASE("non-finite and empty cells are rejected") {
    CHECK_THROWS_AS(parse_matrix_csv("1,2\nnan,4\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_matrix_csv("1,2\ninf,4\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_matrix_csv("1,,3\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_matrix_csv("", "t"), ParseError);
    CHECK_THROWS_AS(parse_matrix_csv("\n\n", "t"), ParseError);
}

TEST_CASE("file round trip and vectors") {
    const std::string dir = "/tmp";
    const std::string mpath = dir + "/meantest_csv_test_matrix.csv";
    const std::string rpath = dir + "/meantest_csv_test_row.csv";
    const std::string cpath = dir + "/meantest_csv_test_col.csv";
    std::ofstream(mpath) << "1,2\n3,4\n";
    std::ofstream(rpath) << "1,2,3\n";
    std::ofstream(cpath) << "1\n2\n3\n";

    CHECK(read_matrix_csv(mpath).rows() == 2);
    CHECK(read_vector_csv(rpath) == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(read_vector_csv(cpath) == std::vector<double>{1.0, 2.0, 3.0});
    CHECK_THROWS_AS(read_vector_csv(mpath), ParseError);
    CHECK_THROWS_AS(read_matrix_csv("/nonexistent/nope.csv"), IoError);

    std::remove(mpath.c_str());
    std::remove(rpath.c_str());
    std::remove(cpath.c_str());
}

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "eddr/errors.hpp"
#include "eddr/io.hpp"

using namespace eddr;

TEST_SUITE("io") {

TEST_CASE("csv with and without header") {
  const Matrix a = parse_csv("x,y\n1,2\n3.5,-4e-1\n");
  REQUIRE(a.rows() == 2);
  REQUIRE(a.cols() == 2);
  CHECK(a(1, 0) == 3.5);
  CHECK(a(1, 1) == -0.4);
  const Matrix b = parse_csv("1,2\n3,4", HeaderMode::Auto);
  CHECK(b.rows() == 2);
  CHECK(parse_csv("1,2\n3,4", HeaderMode::Present).rows() == 1);
  CHECK(parse_csv("").size() == 0);
  CHECK(parse_csv("1, 2\r\n3 ,4\r\n").rows() == 2);
}

TEST_CASE("csv errors name the row and column") {
  try {
    parse_csv("1,2\n3,abc\n");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_csv("1,2\n3\n"), DataError);
  CHECK_THROWS_AS(parse_csv("a,b\n1,2\n", HeaderMode::Absent), DataError);
  CHECK_THROWS_AS(read_csv("/nonexistent/file.csv"), DataError);
}

TEST_CASE("config") {
  const auto m = parse_config("# comment\np = 64\n  N = 32,64 # trailing\n\nrho=0.5\n");
  CHECK(m.at("p") == "64");
  CHECK(m.at("N") == "32,64");
  CHECK(m.at("rho") == "0.5");
  CHECK(m.size() == 3);
  CHECK_THROWS_AS(parse_config("novalue\n"), DataError);
}

TEST_CASE("atomic write") {
  const auto dir = std::filesystem::temp_directory_path() / "eddr_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.txt").string();
  write_file_atomic(path, "first\n");
  write_file_atomic(path, "second\n");
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  CHECK(s == "second");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("format_sig") {
  CHECK(format_sig(0.1012581234) == "0.101258");
  CHECK(format_sig(2.0) == "2");
  CHECK(format_sig(1.0 / 3, 3) == "0.333");
}

}

#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "cflgap/io.hpp"
#include "helpers.hpp"

using namespace testing;

TEST_SUITE("io") {

TEST_CASE("instances round-trip") {
  for (const Instance& inst : {mini(), tiny(), build_family_instance(10, 2)}) {
    const auto j = io::instance_to_json(inst);
    CHECK(io::instance_from_json(j) == inst);
    CHECK(io::dump(io::instance_to_json(io::instance_from_json(j))) == io::dump(j));
  }
  CHECK(io::instance_to_json(build_family_instance(10, 2))["family_params"]["eps"] == "1/10");
}

TEST_CASE("core files and vectors round-trip") {
  const Instance inst = build_family_instance(10, 2);
  const CoreIndex idx = make_core_index(inst, range_ids(5, 15), range_ids(30, 40));
  const io::CoreFile f = io::core_file_from_json(io::core_file_to_json(inst, idx));
  CHECK(f.index == idx);
  CHECK(f.instance == inst);
  CHECK_FALSE(first_difference(f.vector, make_core_vector(inst, idx)).has_value());

  const FracVector dense = make_core_vector(mini(), {0, 1}, {2, 3}).to_dense();
  const FracVector back = io::vector_from_json(io::vector_to_json(dense));
  CHECK_FALSE(first_difference(dense, back).has_value());
}

TEST_CASE("solutions round-trip") {
  const IntSolution s{{true, false, true, true}, {0, 2, 2, 3, 0}};
  CHECK(io::solution_from_json(io::solution_to_json(s)) == s);
}

TEST_CASE("malformed documents are rejected") {
  auto j = io::instance_to_json(mini());
  j["family_params"]["eps"] = "2/0";
  CHECK_THROWS_AS(io::instance_from_json(j), Error);
  j = io::instance_to_json(mini());
  j.erase("capacity");
  CHECK_THROWS_AS(io::instance_from_json(j), Error);
  CHECK_THROWS_AS(io::read_file("/nonexistent/dir/file.json"), Error);
}

TEST_CASE("files are written with a trailing newline and read back") {
  const auto path = std::filesystem::temp_directory_path() / "cflgap_io_test.json";
  io::write_file(path.string(), io::instance_to_json(mini()));
  CHECK(io::instance_from_json(io::read_file(path.string())) == mini());
  std::filesystem::remove(path);
  try {
    io::write_file("/nonexistent/dir/out.json", io::Json::object());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::io);
  }
}

}

#include "permbal/error.hpp"
#include "permbal/registry.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <unistd.h>

using namespace permbal;

namespace {

struct TempFile {
  std::string path;
  TempFile() : path((std::filesystem::temp_directory_path() / ("permbal_reg_" + std::to_string(::getpid()) + ".jsonl")).string()) {
    std::remove(path.c_str());
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("registry lines round trip") {
  auto r = make_witness(Permutation::from_one_line({3, 4, 9, 8, 5, 2, 1, 6, 7}), 3, "exhaustive", 42);
  const auto back = parse_json_line(to_json_line(r));
  CHECK(back.n == 9);
  CHECK(back.k == 3);
  CHECK(back.scaled_delta == 0);
  CHECK(back.perm == r.perm);
  CHECK(back.method == "exhaustive");
  CHECK(back.seed == std::optional<std::uint64_t>(42));
  CHECK(back.created_at == r.created_at);
  auto unseeded = make_witness(Permutation::from_one_line({1, 2, 3}), 2, "construct:2bal", std::nullopt);
  CHECK_FALSE(parse_json_line(to_json_line(unseeded)).seed.has_value());
  CHECK(unseeded.scaled_delta == 3);
  CHECK_THROWS_AS(parse_json_line("{\"n\": 3"), Error);
  CHECK_THROWS_AS(parse_json_line("{\"n\": 3, \"k\": 2}"), Error);
}

TEST_CASE("registry scan reports bad lines by number") {
  TempFile tmp;
  CHECK(scan_registry(tmp.path).records.empty());
  append_witnesses(tmp.path, {make_witness(Permutation::from_one_line({2, 4, 1, 3}), 2, "x", 1)});
  {
    std::ofstream out(tmp.path, std::ios::app);
    out << "not json\n";
    out << R"({"n":4,"k":2,"scaled_delta":"5","perm":"2,4,1,3","method":"x","seed":null})" << "\n";
    out << R"({"n":5,"k":2,"scaled_delta":"0","perm":"2,4,1,3","method":"x","seed":null})" << "\n";
  }
  append_witnesses(tmp.path, {make_witness(Permutation::from_one_line({1, 2}), 2, "y", std::nullopt)});
  const auto scan = scan_registry(tmp.path);
  CHECK(scan.records.size() == 2);
  REQUIRE(scan.issues.size() == 3);
  CHECK(scan.issues[0].line == 2);
  CHECK(scan.issues[0].code == ErrorCode::ParseError);
  CHECK(scan.issues[1].line == 3);
  CHECK(scan.issues[1].code == ErrorCode::VerificationFailed);
  CHECK(scan.issues[2].line == 4);
}

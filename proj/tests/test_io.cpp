#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "fsig/cache.hpp"
#include "fsig/parse.hpp"
#include "fsig/table_io.hpp"

using namespace fsig;

namespace {

std::filesystem::path fresh_temp_file(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  const auto dir = std::filesystem::temp_directory_path();
  return dir / (tag + "-" + std::to_string(rng()) + ".jsonl");
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& tag) : path(fresh_temp_file(tag)) {}
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

}  // namespace

TEST_CASE("decimal rendering is byte-stable") {
  REQUIRE(decimal_string(Rational(0)) == "0");
  REQUIRE(decimal_string(Rational(1)) == "1.00000000000");
  REQUIRE(decimal_string(Rational(1, 2)) == "0.500000000000");
  REQUIRE(decimal_string(Rational(2, 25)) == "0.0800000000000");
  REQUIRE(decimal_string(Rational(1, 3)) == "0.333333333333");
  REQUIRE(decimal_string(Rational(2, 3)) == "0.666666666667");
  REQUIRE(decimal_string(Rational(-1, 3)) == "-0.333333333333");
  REQUIRE(decimal_string(Rational(123456789)) == "123456789.000");
  REQUIRE(decimal_string(Rational(BigInt("12345678901234"))) ==
          "12345678901200");
  REQUIRE(decimal_string(Rational(3, 2), 1) == "2");  // half rounds to even
  REQUIRE(decimal_string(Rational(5, 2), 1) == "2");
  REQUIRE_THROWS_AS(decimal_string(Rational(1), 0), std::invalid_argument);
}

TEST_CASE("decimal rendering rounds half to even at full precision") {
  // 1.0000000000005 and friends, at 12 significant digits.
  const BigInt den("2000000000000");
  REQUIRE(decimal_string(Rational(BigInt("2000000000001"), den)) ==
          "1.00000000000");
  REQUIRE(decimal_string(Rational(BigInt("2000000000030"), den)) ==
          "1.00000000002");
  REQUIRE(decimal_string(Rational(BigInt("2000000000050"), den)) ==
          "1.00000000002");
}

TEST_CASE("decimal rendering carries across a power of ten") {
  const Rational nearly_one(BigInt("999999999999999"), pow10_big(15));
  REQUIRE(decimal_string(nearly_one) == "1.00000000000");
}

TEST_CASE("signature tables render to exact CSV bytes") {
  const SparsePoly f = parse_poly("x", 1, 2);
  const SignatureTable table = signature_table(f, 2, 1, Rational(1));
  std::ostringstream os;
  write_signature_csv(os, table);
  REQUIRE(os.str() ==
          "a,t_num,t_den,s_num,s_den,s_dec\n"
          "0,0,1,1,1,1.00000000000\n"
          "1,1,2,1,2,0.500000000000\n"
          "2,1,1,0,1,0\n");

  std::ostringstream ds;
  write_slopes_csv(ds, derivative_table(table));
  REQUIRE(ds.str() ==
          "a,t_num,t_den,ds_num,ds_den,ds_dec\n"
          "0,0,1,-1,1,-1.00000000000\n"
          "1,1,2,-1,1,-1.00000000000\n");
}

TEST_CASE("sequence tables render to exact CSV bytes") {
  const SparsePoly f = parse_poly("x*y", 2, 2);
  std::ostringstream os;
  write_sequence_csv(os, hk_sequence(f, 2));
  REQUIRE(os.str() ==
          "e,v_num,v_den,v_dec\n"
          "1,3,2,1.50000000000\n"
          "2,7,4,1.75000000000\n");
}

TEST_CASE("JSON output carries exact numerators and denominators") {
  const SparsePoly f = parse_poly("x", 1, 2);
  const SignatureTable table = signature_table(f, 2, 1, Rational(1));
  std::ostringstream os;
  write_signature_json(os, table);
  const nlohmann::json arr = nlohmann::json::parse(os.str());
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 3);
  REQUIRE(arr[1].at("a").get<std::uint64_t>() == 1);
  REQUIRE(arr[1].at("t_num").get<std::string>() == "1");
  REQUIRE(arr[1].at("t_den").get<std::string>() == "2");
  REQUIRE(arr[1].at("s_num").get<std::string>() == "1");
  REQUIRE(arr[1].at("s_den").get<std::string>() == "2");
  REQUIRE(arr[1].at("s_dec").get<std::string>() == "0.500000000000");

  std::ostringstream seq;
  write_sequence_json(seq, hk_sequence(parse_poly("x*y", 2, 2), 1));
  const nlohmann::json sarr = nlohmann::json::parse(seq.str());
  REQUIRE(sarr.size() == 1);
  REQUIRE(sarr[0].at("e").get<unsigned>() == 1);
  REQUIRE(sarr[0].at("v_num").get<std::string>() == "3");
}

TEST_CASE("CSV tables round-trip through the reader") {
  const SparsePoly f = parse_poly("x*y", 2, 3);
  const SignatureTable table = signature_table(f, 3, 1, Rational(1));
  std::ostringstream os;
  write_signature_csv(os, table);
  std::istringstream is(os.str());
  const auto rows = read_samples_csv(is);
  REQUIRE(rows.size() == table.samples().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].a == table.samples()[i].a);
    REQUIRE(rows[i].t == table.samples()[i].t);
    REQUIRE(rows[i].value == table.samples()[i].value);
  }

  std::istringstream empty("");
  REQUIRE_THROWS_AS(read_samples_csv(empty), std::runtime_error);
  std::istringstream bad("a,t_num,t_den,s_num,s_den,s_dec\n1,2,3\n");
  REQUIRE_THROWS_AS(read_samples_csv(bad), std::runtime_error);
}

TEST_CASE("length cache stores, reloads and serves lengths") {
  TempFile file("fsig-cache");
  const CacheKey key{5, 2, 3, 75, "x^3+y^2"};
  {
    LengthCache cache(file.path);
    REQUIRE(cache.size() == 0);
    REQUIRE_FALSE(cache.lookup(key).has_value());
    cache.store(key, BigInt(1250));
    cache.store(key, BigInt(1250));  // duplicate store is a no-op
    REQUIRE(cache.size() == 1);
    REQUIRE(cache.lookup(key).value() == 1250);
  }
  // The record is one canonical JSON line with alphabetical keys.
  {
    std::ifstream in(file.path);
    std::string line;
    REQUIRE(std::getline(in, line));
    REQUIRE(line ==
            R"({"a":75,"c":3,"f":"x^3+y^2","length":"1250","n":2,"p":5})");
    REQUIRE_FALSE(std::getline(in, line));
  }
  // A new instance sees the persisted record.
  {
    LengthCache cache(file.path);
    REQUIRE(cache.size() == 1);
    REQUIRE(cache.lookup(key).value() == 1250);
  }
}

TEST_CASE("corrupt cache lines are skipped, valid ones kept") {
  TempFile file("fsig-cache-corrupt");
  {
    std::ofstream out(file.path);
    out << "this is not json\n";
    out << R"({"a":1,"c":1,"f":"x","length":"-4","n":1,"p":2})" << "\n";
    out << R"({"a":1,"c":1,"f":"x","length":"9","n":1,"p":2})" << "\n";
    out << R"({"a":1,"c":1,"f":"x","length":"1","n":1,"p":4})" << "\n";
    out << R"({"a":2,"c":1,"f":"x","length":"1","n":1,"p":2})" << "\n";
    out << R"({"a":1,"c":1,"f":"x","length":"1"})" << "\n";
  }
  LengthCache cache(file.path);
  // Only the line with a valid prime, in-range length and full key survives.
  REQUIRE(cache.size() == 1);
  REQUIRE(cache.lookup(CacheKey{2, 1, 1, 2, "x"}).value() == 1);
}

TEST_CASE("cache-backed providers short-circuit computation") {
  TempFile file("fsig-cache-provider");
  LengthCache cache(file.path);
  const SparsePoly f = parse_poly("x", 1, 3);
  const TruncationParams tp(3, 1, 1);

  // A planted value wins over recomputation, proving lookup comes first.
  cache.store(CacheKey{3, 1, 1, 1, "x"}, BigInt(777));
  REQUIRE(cache.provider()(f, 1, tp) == 777);

  // A miss computes the true value and persists it.
  REQUIRE(cache.provider()(f, 2, tp) == colon_length(f, 2, tp).length);
  REQUIRE(cache.size() == 2);
  LengthCache reread(file.path);
  REQUIRE(reread.lookup(CacheKey{3, 1, 1, 2, "x"}).has_value());
}

TEST_CASE("memory-only caches never touch the filesystem") {
  LengthCache cache;
  const CacheKey key{2, 1, 1, 1, "x"};
  cache.store(key, BigInt(1));
  REQUIRE(cache.lookup(key).value() == 1);
  REQUIRE(cache.size() == 1);
}

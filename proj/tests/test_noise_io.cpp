#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mfp/io.hpp"
#include "mfp/noise.hpp"
#include "mfp/supervised.hpp"

using namespace mfp;

namespace {

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("zero noise level returns the input bitwise") {
  std::vector<double> f{1.0, -2.5, 0.37, 1e-12};
  const auto out = add_noise(f, {0.0, 99});
  REQUIRE(out.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(out[i] == f[i]);
}

TEST_CASE("noise is a deterministic function of the seed") {
  std::vector<double> f(100, 1.0);
  const auto a = add_noise(f, {0.05, 7});
  const auto b = add_noise(f, {0.05, 7});
  const auto c = add_noise(f, {0.05, 8});
  bool differs = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(a[i] == b[i]);
    differs = differs || a[i] != c[i];
  }
  CHECK(differs);
}

TEST_CASE("sample statistics match the prescribed std") {
  // std = level * max|f|; with 1e4 samples the sample std estimate has
  // relative error ~ 1/sqrt(2e4) ~ 0.7%, so 3% is a safe gate.
  std::vector<double> f(10000, 0.0);
  f[0] = 2.0;  // max |f| = 2 -> std = 0.1
  const auto noisy = add_noise(f, {0.05, 1234});
  double mean = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) mean += noisy[i];
  mean /= static_cast<double>(f.size() - 1);
  double var = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    var += (noisy[i] - mean) * (noisy[i] - mean);
  }
  var /= static_cast<double>(f.size() - 2);
  CHECK(std::abs(std::sqrt(var) - 0.1) / 0.1 < 0.03);
}

TEST_CASE("split noise scales each block from its own maximum") {
  std::vector<double> f(20000, 0.0);
  f[0] = 10.0;      // force block max
  f[10000] = 1.0;   // displacement block max
  const auto noisy = add_noise_split(f, 10000, {0.1, 77});
  auto block_std = [&](std::size_t lo, std::size_t hi) {
    double mean = 0.0;
    for (std::size_t i = lo; i < hi; ++i) mean += noisy[i] - f[i];
    mean /= static_cast<double>(hi - lo);
    double var = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      var += (noisy[i] - f[i] - mean) * (noisy[i] - f[i] - mean);
    }
    return std::sqrt(var / static_cast<double>(hi - lo - 1));
  };
  CHECK(std::abs(block_std(0, 10000) - 1.0) < 0.03);
  CHECK(std::abs(block_std(10000, 20000) - 0.1) < 0.003);
}

TEST_CASE("double formatting round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-308, 6.02214076e23, 0.0,
                   -0.0, 123456789.123456789}) {
    CHECK(parse_double(format_double(v)) == v);
  }
}

TEST_CASE("database files round-trip bitwise") {
  const Database db =
      generate_supervised_database(HomogeneousProtocol::standard(), {8, false});
  const auto path = temp_path("roundtrip.mfpd");
  write_database(db, path);
  const Database back = read_database(path);
  std::filesystem::remove(path);

  CHECK(back.kind == db.kind);
  CHECK(back.protocol == db.protocol);
  CHECK(back.protocol_hash() == db.protocol_hash());
  CHECK(back.n_f == db.n_f);
  CHECK(back.n_force == db.n_force);
  REQUIRE(back.fingerprints.size() == db.fingerprints.size());
  for (std::size_t i = 0; i < db.fingerprints.size(); ++i) {
    CHECK(back.fingerprints[i] == db.fingerprints[i]);
  }
  REQUIRE(back.records.size() == db.records.size());
  for (std::size_t i = 0; i < db.records.size(); ++i) {
    CHECK(back.records[i].family == db.records[i].family);
    CHECK(back.records[i].theta_bar == db.records[i].theta_bar);
    CHECK(back.records[i].alpha == db.records[i].alpha);
    CHECK(back.records[i].source_norm == db.records[i].source_norm);
  }
}

TEST_CASE("query CSV files round-trip and carry their protocol hash") {
  std::vector<double> values{0.1, -3.5e7, 1.0 / 7.0, 0.0};
  const auto path = temp_path("query.csv");
  write_query_csv(path, values, 0xdeadbeefcafef00dULL);
  const QueryFile q = read_query_csv(path);
  std::filesystem::remove(path);
  CHECK(q.protocol_hash == 0xdeadbeefcafef00dULL);
  REQUIRE(q.values.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(q.values[i] == values[i]);
  }
}

TEST_CASE("query files without a protocol hash header are rejected") {
  const auto path = temp_path("bad_query.csv");
  {
    std::ofstream out(path);
    out << "1.0\n2.0\n";
  }
  CHECK_THROWS_AS(read_query_csv(path), ProtocolMismatch);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_query_csv(temp_path("no_such_file.csv")), IoError);
  CHECK_THROWS_AS(read_database(temp_path("no_such_file.mfpd")), IoError);
}

TEST_CASE("CSV export lists every record") {
  const Database db =
      generate_supervised_database(HomogeneousProtocol::standard(), {5, false});
  const auto path = temp_path("export.csv");
  export_database_csv(db, path);
  std::ifstream in(path);
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  std::filesystem::remove(path);
  CHECK(lines == db.size() + 2);  // hash + column headers, then rows
}

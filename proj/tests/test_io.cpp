// Copyright rsmom contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "rsmom/io.hpp"
#include "rsmom/mlp.hpp"

using namespace rsmom;

namespace {
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("rsmom_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};
}  // namespace

TEST_CASE("surface csv round trip at full precision") {
  TempDir tmp;
  Eigen::VectorXd x(3), h(3);
  x << -8.0, 0.1234567890123456, 7.9999999999999;
  h << 0.4, -1.0 / 3.0, 1e-17;
  write_surface_csv(tmp.file("s.csv"), x, h);
  auto [x2, h2] = read_surface_csv(tmp.file("s.csv"));
  CHECK(x2 == x);
  CHECK(h2 == h);
}

TEST_CASE("field csv round trips both kinds") {
  TempDir tmp;
  Eigen::VectorXd x(2);
  x << -1.0, 2.0;
  Eigen::VectorXcd v(2);
  v << std::complex<double>(0.5, -0.25), std::complex<double>(1.0 / 7.0, 3.0);
  write_field_csv(tmp.file("f.csv"), x, v);
  FieldCsv f = read_field_csv(tmp.file("f.csv"));
  CHECK_FALSE(f.phaseless);
  CHECK(f.x == x);
  CHECK(f.values == v);

  Eigen::VectorXd amp = v.cwiseAbs();
  write_field_csv(tmp.file("a.csv"), x, amp);
  FieldCsv a = read_field_csv(tmp.file("a.csv"));
  CHECK(a.phaseless);
  CHECK(a.amplitude == amp);
}

TEST_CASE("manifest kv round trip and json emission") {
  TempDir tmp;
  Manifest m;
  m.set("polarization", "TE");
  m.set("k", 2.0 * 3.14159265358979323846);
  m.set("n_obs", 240LL);
  m.set("note", "contains = signs = fine");
  m.write_kv(tmp.file("m.kv"));
  Manifest r = Manifest::read_kv(tmp.file("m.kv"));
  CHECK(r.entries() == m.entries());
  CHECK(r.get_double("k") == 2.0 * 3.14159265358979323846);

  m.write_json(tmp.file("m.json"));
  CHECK(std::filesystem::file_size(tmp.file("m.json")) > 10);
  CHECK_THROWS(r.get("missing"));
}

TEST_CASE("surrogate checkpoint round trip") {
  TempDir tmp;
  MlpParams p(3, 16);
  glorot_init(p, 1234);
  save_checkpoint(p, tmp.file("p.ckpt"));
  MlpParams q = load_checkpoint(tmp.file("p.ckpt"));
  CHECK(q.sizes() == p.sizes());
  CHECK(q.theta == p.theta);
}

TEST_CASE("format_shortest round trips") {
  for (double v : {0.1, 1.0 / 3.0, 6.57, 1e-300, -723.001}) {
    CHECK(std::stod(format_shortest(v)) == v);
  }
}

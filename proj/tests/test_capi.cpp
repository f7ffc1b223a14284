#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "wrgoal.h"

namespace {

std::string take_string(char* s) {
  std::string out = s ? s : "";
  wrgoal_string_free(s);
  return out;
}

struct ConfigHandle {
  wrgoal_config* c = nullptr;
  ~ConfigHandle() { wrgoal_config_free(c); }
};

struct ResultHandle {
  wrgoal_result* r = nullptr;
  ~ResultHandle() { wrgoal_result_free(r); }
};

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("null arguments are rejected with a message") {
  CHECK(wrgoal_config_parse(nullptr, nullptr) == WRGOAL_EINVAL);
  CHECK(std::strlen(wrgoal_last_error()) > 0);
  wrgoal_config* cfg = nullptr;
  CHECK(wrgoal_config_preset(nullptr, &cfg) == WRGOAL_EINVAL);
  CHECK(wrgoal_run(nullptr, nullptr, nullptr) == WRGOAL_EINVAL);
}

TEST_CASE("bad presets and configs report their category") {
  wrgoal_config* cfg = nullptr;
  CHECK(wrgoal_config_preset("exp7", &cfg) == WRGOAL_EINVAL);
  CHECK(std::string(wrgoal_last_error()).find("exp7") != std::string::npos);
  CHECK(cfg == nullptr);

  CHECK(wrgoal_config_parse("{ this is not json", &cfg) == WRGOAL_EPARSE);
  CHECK(std::string(wrgoal_last_error()).find("line") != std::string::npos);
  CHECK(cfg == nullptr);

  CHECK(wrgoal_config_parse("{\"problem\": 3}", &cfg) == WRGOAL_EPARSE);
}

TEST_CASE("configs are edited and read back through keys") {
  ConfigHandle h;
  REQUIRE(wrgoal_config_preset("exp1", &h.c) == WRGOAL_OK);

  char* name = nullptr;
  REQUIRE(wrgoal_config_get(h.c, "name", &name) == WRGOAL_OK);
  CHECK(take_string(name) == "exp1");

  CHECK(wrgoal_config_set(h.c, "levels", "4") == WRGOAL_OK);
  CHECK(wrgoal_config_set(h.c, "fraction", "0.5") == WRGOAL_OK);
  CHECK(wrgoal_config_set(h.c, "splitting", "gauss-seidel") == WRGOAL_OK);
  CHECK(wrgoal_config_set(h.c, "variants", "cn:goal,euler:uniform") == WRGOAL_OK);
  CHECK(wrgoal_config_set(h.c, "emit_matrices", "true") == WRGOAL_OK);

  char* out = nullptr;
  REQUIRE(wrgoal_config_get(h.c, "levels", &out) == WRGOAL_OK);
  CHECK(take_string(out) == "4");
  REQUIRE(wrgoal_config_get(h.c, "fraction", &out) == WRGOAL_OK);
  CHECK(take_string(out) == "0.5");
  REQUIRE(wrgoal_config_get(h.c, "splitting", &out) == WRGOAL_OK);
  CHECK(take_string(out) == "gauss-seidel");
  REQUIRE(wrgoal_config_get(h.c, "variants", &out) == WRGOAL_OK);
  CHECK(take_string(out) == "cn:goal,euler:uniform");
  REQUIRE(wrgoal_config_get(h.c, "emit_matrices", &out) == WRGOAL_OK);
  CHECK(take_string(out) == "true");

  SUBCASE("bad keys and values fail without changing the config") {
    CHECK(wrgoal_config_set(h.c, "warp", "9") == WRGOAL_EINVAL);
    CHECK(std::string(wrgoal_last_error()).find("warp") != std::string::npos);
    CHECK(wrgoal_config_set(h.c, "levels", "minus two") == WRGOAL_EINVAL);
    CHECK(wrgoal_config_set(h.c, "fraction", "2.0") == WRGOAL_EINVAL);
    CHECK(wrgoal_config_set(h.c, "variants", "euler:warp") == WRGOAL_EPARSE);
    REQUIRE(wrgoal_config_get(h.c, "levels", &out) == WRGOAL_OK);
    CHECK(take_string(out) == "4");
  }

  SUBCASE("formatting round-trips through parse") {
    char* text = nullptr;
    REQUIRE(wrgoal_config_format(h.c, &text) == WRGOAL_OK);
    const std::string json = take_string(text);
    wrgoal_config* back = nullptr;
    REQUIRE(wrgoal_config_parse(json.c_str(), &back) == WRGOAL_OK);
    ConfigHandle hb;
    hb.c = back;
    char* text2 = nullptr;
    REQUIRE(wrgoal_config_format(hb.c, &text2) == WRGOAL_OK);
    CHECK(take_string(text2) == json);
  }
}

TEST_CASE("a small run exposes levels, values and files") {
  ConfigHandle h;
  REQUIRE(wrgoal_config_preset("exp1", &h.c) == WRGOAL_OK);
  REQUIRE(wrgoal_config_set(h.c, "levels", "2") == WRGOAL_OK);

  ResultHandle r;
  REQUIRE(wrgoal_run(h.c, "euler:goal", &r.r) == WRGOAL_OK);
  REQUIRE(r.r != nullptr);

  CHECK(wrgoal_result_variant_count(r.r) == 1);
  CHECK(std::string(wrgoal_result_variant_name(r.r, 0)) == "euler:goal");
  REQUIRE(wrgoal_result_level_count(r.r, 0) == 3);

  const double ref = wrgoal_result_reference_qoi(r.r);
  CHECK(std::abs(ref - 0.982751901572333) < 1e-12);

  long prev_n = 0;
  for (int l = 0; l < 3; ++l) {
    wrgoal_level_info info;
    REQUIRE(wrgoal_result_level(r.r, 0, l, &info) == WRGOAL_OK);
    CHECK(info.level == l);
    CHECK(info.n_cells > prev_n);
    prev_n = info.n_cells;
    CHECK(info.k_used >= 1);
    CHECK(info.k_used <= 12);
    CHECK(info.mu_total > 0.0);
    CHECK(info.j_error == std::abs(info.j_value - ref));
  }

  wrgoal_level_info info;
  CHECK(wrgoal_result_level(r.r, 0, 99, &info) == WRGOAL_EINVAL);
  CHECK(wrgoal_result_level(r.r, 5, 0, &info) == WRGOAL_EINVAL);
  CHECK(wrgoal_result_variant_name(r.r, 5) == nullptr);

  const auto dir = std::filesystem::temp_directory_path() / "wrgoal_capi_check";
  std::filesystem::remove_all(dir);
  REQUIRE(wrgoal_result_write(r.r, dir.c_str()) == WRGOAL_OK);
  CHECK(std::filesystem::exists(dir / "run_euler_goal.csv"));
  CHECK(std::filesystem::exists(dir / "estimator_euler_goal.csv"));
  CHECK(std::filesystem::exists(dir / "mesh_euler_goal.txt"));
  CHECK(std::filesystem::exists(dir / "mesh_euler_goal.svg"));
  CHECK(std::filesystem::exists(dir / "convergence.svg"));
  CHECK(std::filesystem::exists(dir / "iterations.svg"));

  std::ifstream csv(dir / "run_euler_goal.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "level,N,K,nu,mu_total,J_discrete,J_error_vs_reference");
  int rows = 0;
  for (std::string line; std::getline(csv, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("variant overrides are validated before running") {
  ConfigHandle h;
  REQUIRE(wrgoal_config_preset("exp1", &h.c) == WRGOAL_OK);
  wrgoal_result* res = nullptr;
  CHECK(wrgoal_run(h.c, "euler:goal,", &res) == WRGOAL_EPARSE);
  CHECK(res == nullptr);
  CHECK(wrgoal_run(h.c, "euler:odd", &res) == WRGOAL_EPARSE);
}

}  // TEST_SUITE

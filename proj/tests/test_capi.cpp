#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "gfra.h"

namespace {

const char* kTinyConfig = R"({
  "protocol": "irsa",
  "load_sweep": [0.2, 0.8],
  "seed": 11,
  "realizations": 4,
  "sim_time_s": 0.5
})";

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("c api: version and error buffer") {
  CHECK(std::strlen(gfra_version()) > 0);
  CHECK(gfra_last_error() != nullptr);
}

TEST_CASE("c api: config rejection surfaces a parse status and message") {
  gfra_experiment* exp = nullptr;
  CHECK(gfra_experiment_create("{ not json", &exp) == GFRA_ERR_PARSE);
  CHECK(exp == nullptr);
  CHECK(std::strlen(gfra_last_error()) > 0);

  CHECK(gfra_experiment_create(R"({"protocol": "irsa"})", &exp) == GFRA_ERR_PARSE);
  CHECK(gfra_experiment_create(nullptr, &exp) == GFRA_ERR_INVALID);
}

TEST_CASE("c api: full run through the opaque handles") {
  gfra_experiment* exp = nullptr;
  REQUIRE(gfra_experiment_create(kTinyConfig, &exp) == GFRA_OK);
  REQUIRE(exp != nullptr);

  CHECK(gfra_experiment_set_workers(exp, 2) == GFRA_OK);
  CHECK(gfra_experiment_set_realizations(exp, 3) == GFRA_OK);
  CHECK(gfra_experiment_set_seed(exp, 99) == GFRA_OK);
  const double loads[] = {0.3, 0.9};
  CHECK(gfra_experiment_set_loads(exp, loads, 2) == GFRA_OK);

  char protocol[16];
  CHECK(gfra_experiment_protocol(exp, protocol, sizeof(protocol)) == GFRA_OK);
  CHECK(std::string(protocol) == "irsa");

  gfra_reports* reports = nullptr;
  REQUIRE(gfra_experiment_run(exp, &reports) == GFRA_OK);
  REQUIRE(reports != nullptr);
  REQUIRE(gfra_reports_count(reports) == 2);

  gfra_report low;
  gfra_report high;
  CHECK(gfra_reports_get(reports, 0, &low) == GFRA_OK);
  CHECK(gfra_reports_get(reports, 1, &high) == GFRA_OK);
  CHECK(low.load == doctest::Approx(0.3));
  CHECK(high.load == doctest::Approx(0.9));
  CHECK(low.plr <= high.plr);
  CHECK(low.realizations == 3);

  gfra_report out_of_range;
  CHECK(gfra_reports_get(reports, 9, &out_of_range) == GFRA_ERR_INVALID);

  const auto csv = temp_path("gfra_capi.csv");
  CHECK(gfra_reports_write_csv(reports, csv.string().c_str()) == GFRA_OK);
  CHECK(std::filesystem::exists(csv));

  const auto plots = temp_path("gfra_capi_plots");
  std::filesystem::remove_all(plots);
  CHECK(gfra_plot_data_from_csv(csv.string().c_str(), "plr",
                                plots.string().c_str()) == GFRA_OK);
  CHECK(std::filesystem::exists(plots / "plr_irsa.dat"));
  CHECK(gfra_plot_data_from_csv(csv.string().c_str(), "zorp",
                                plots.string().c_str()) == GFRA_ERR_INVALID);

  std::filesystem::remove(csv);
  std::filesystem::remove_all(plots);
  gfra_reports_destroy(reports);
  gfra_experiment_destroy(exp);
}

TEST_CASE("c api: identical seeds give identical csv bytes") {
  auto run_once = [](const char* path) {
    gfra_experiment* exp = nullptr;
    REQUIRE(gfra_experiment_create(kTinyConfig, &exp) == GFRA_OK);
    gfra_reports* reports = nullptr;
    REQUIRE(gfra_experiment_run(exp, &reports) == GFRA_OK);
    REQUIRE(gfra_reports_write_csv(reports, path) == GFRA_OK);
    gfra_reports_destroy(reports);
    gfra_experiment_destroy(exp);
  };
  const auto a = temp_path("gfra_det_a.csv");
  const auto b = temp_path("gfra_det_b.csv");
  run_once(a.string().c_str());
  run_once(b.string().c_str());

  std::ifstream fa(a, std::ios::binary);
  std::ifstream fb(b, std::ios::binary);
  const std::string ca((std::istreambuf_iterator<char>(fa)),
                       std::istreambuf_iterator<char>());
  const std::string cb((std::istreambuf_iterator<char>(fb)),
                       std::istreambuf_iterator<char>());
  CHECK(ca == cb);
  CHECK(!ca.empty());
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "fracspec/config.hpp"
#include "fracspec/csv.hpp"
#include "fracspec/error.hpp"
#include "fracspec/experiments.hpp"

using namespace fracspec;

namespace {

const CsvTable& table(const ExperimentResult& r, const std::string& name) {
  for (const auto& t : r.tables)
    if (t.name == name) return t;
  throw std::runtime_error("no table " + name);
}

std::size_t column(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == name) return i;
  throw std::runtime_error("no column " + name);
}

}  // namespace

TEST(Config, DefaultsAndRequiredKey) {
  const ExperimentConfig c = parse_config(R"({"experiment": "toy-pde"})");
  EXPECT_EQ(c.experiment, ExperimentKind::ToyPde);
  EXPECT_EQ(c.method, QuadMethod::BirkSong);
  EXPECT_EQ(c.toy_pde.k, 10.0);
  EXPECT_THROW(parse_config(R"({"alpha": 0.5})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "triangle"})"), ConfigError);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_config(R"({"experiment": "toy-pde", "alhpa": 0.5})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "toy-pde", "toy_pde": {"kk": 1}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "toy-pde", "alpha": 1.5})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "toy-pde", "dt": -1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "toy-pde", "K": "forty"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "disk-wave", "disk_wave": {"tau": -1}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "caputo-direct", "caputo_direct": {"function": "sin"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "toy-pde", "method": "simpson"})"), ConfigError);
  EXPECT_THROW(parse_config("{ not json"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "toy-pde", "T": 1.0, "dt": 0.3})"), ConfigError);
}

TEST(Config, RoundTrip) {
  ExperimentConfig c;
  c.experiment = ExperimentKind::DiskWave;
  c.method = QuadMethod::Diethelm;
  c.alpha = 0.1;
  c.L = 33;
  c.dt = 1.0 / 1024.0;
  c.T = 0.5;
  c.disk_wave.tau = 0.25;
  c.disk_wave.initial = "bump";
  c.disk_wave.unscaled_psi_term = true;
  c.caputo_direct.runs = {{65, 1.0 / 256.0}, {10, 0.125}};
  c.psi_stability.dts = {0.25, 1.0 / 3.0};
  const ExperimentConfig back = parse_config(serialize_config(c));
  EXPECT_EQ(back, c);
  EXPECT_EQ(parse_config(serialize_config(back)), back);
}

TEST(Config, ShippedConfigsLoad) {
  const std::filesystem::path dir = FRACSPEC_CONFIG_DIR;
  std::size_t n = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() != ".json") continue;
    const ExperimentConfig c = load_config(e.path());
    EXPECT_EQ(parse_config(serialize_config(c)), c) << e.path();
    ++n;
  }
  EXPECT_GE(n, 4u);
}

TEST(Config, Overrides) {
  ExperimentConfig c = parse_config(R"({"experiment": "disk-wave"})");
  c = apply_override(c, "disk_wave.tau=0");
  EXPECT_EQ(c.disk_wave.tau, 0.0);
  c = apply_override(c, "method=diethelm");
  EXPECT_EQ(c.method, QuadMethod::Diethelm);
  c = apply_override(c, "disk_wave.initial=bump");
  EXPECT_EQ(c.disk_wave.initial, "bump");
  c = apply_override(c, "K=12");
  EXPECT_EQ(c.K, 12u);
  EXPECT_THROW(apply_override(c, "disk_wave.speed=3"), ConfigError);
  EXPECT_THROW(apply_override(c, "no_equals_sign"), ConfigError);
  EXPECT_THROW(apply_override(c, "alpha=2"), ConfigError);
}

// dt alone breaks T = n dt; together with T it is fine.
TEST(Config, OverridesValidatedTogether) {
  const ExperimentConfig c = parse_config(R"({"experiment": "toy-pde", "dt": 0.25, "T": 1.0})");
  EXPECT_THROW(apply_override(c, "dt=0.3"), ConfigError);
  const ExperimentConfig d = apply_overrides(c, {"dt=0.3", "T=0.9"});
  EXPECT_EQ(d.dt, 0.3);
  EXPECT_EQ(d.T, 0.9);
  EXPECT_THROW(apply_overrides(c, {"dt=0.3"}), ConfigError);
}

TEST(Csv, FormatAndStamp) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(format_number(std::nan("")), "");
  EXPECT_EQ(format_number(3.0), "3");
  const ExperimentConfig c = parse_config(R"({"experiment": "toy-pde"})");
  const auto dir = std::filesystem::temp_directory_path() / "fracspec_csv_test";
  std::filesystem::create_directories(dir);
  CsvTable t{"demo", {"a", "b"}, {{1.0, 2.5}, {std::nan(""), -1e-300}}};
  write_csv(dir / "demo.csv", t, config_stamp(c));
  std::ifstream in(dir / "demo.csv");
  std::string l1, l2, l3, l4;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  std::getline(in, l4);
  EXPECT_EQ(l1, "# " + config_stamp(c));
  EXPECT_EQ(l2, "a,b");
  EXPECT_EQ(l3, "1,2.5");
  EXPECT_EQ(l4, ",-1e-300");
  EXPECT_EQ(parse_config(l1.substr(2)), c);
}

TEST(Experiments, CaputoDirectConstantIsZero) {
  ExperimentConfig c = parse_config(R"({"experiment": "caputo-direct", "L": 20, "dt": 0.01, "T": 1,
                                        "caputo_direct": {"function": "constant", "samples": 10}})");
  const auto r = run_caputo_direct(c);
  const auto& t = table(r, "caputo_direct");
  const std::size_t num = column(t, "numeric");
  for (const auto& row : t.rows) EXPECT_LT(std::abs(row[num]), 1e-13);
}

TEST(Experiments, CaputoDirectTSquaredConverges) {
  ExperimentConfig c = parse_config(R"({"experiment": "caputo-direct", "alpha": 0.6666666666666666, "T": 1,
      "caputo_direct": {"function": "tsquared", "samples": 4,
        "runs": [{"L": 65, "dt": 0.00390625}, {"L": 65, "dt": 0.0009765625}, {"L": 65, "dt": 0.000244140625},
                 {"L": 65, "dt": 0.00006103515625}]}})");
  const auto res = run_caputo_direct(c);
  const auto& t = table(res, "caputo_direct");
  const std::size_t tc = column(t, "t"), rel = column(t, "rel_err");
  std::vector<double> end_err;
  for (const auto& row : t.rows)
    if (row[tc] == 1.0) end_err.push_back(row[rel]);
  ASSERT_EQ(end_err.size(), 4u);
  for (std::size_t i = 1; i < end_err.size(); ++i) EXPECT_LT(end_err[i], end_err[i - 1]);
  EXPECT_LE(end_err.back(), 1e-5);
}

TEST(Experiments, MittagTestFunction) {
  const TestFunction f = make_test_function("mittag", 0.5, 0.5);
  // derivative consistent with the function
  const double h = 1e-6, t = 0.7;
  EXPECT_NEAR((f.f(t + h) - f.f(t - h)) / (2 * h), f.df(t), 1e-6);
  EXPECT_THROW(make_test_function("sin", 0.5), ConfigError);
  const TestFunction e = make_test_function("exp", 0.5);
  EXPECT_NEAR(e.caputo(1.0), std::exp(1.0) * std::erf(1.0), 1e-13);
}

TEST(Experiments, PsiStabilityZeroFunction) {
  const ExperimentConfig c = parse_config(R"({"experiment": "psi-stability", "L": 10, "dt": 0.01, "T": 1,
                                              "psi_stability": {"function": "zero", "samples": 10}})");
  const auto res = run_psi_stability(c);
  const auto& t = table(res, "psi_stability");
  const std::size_t d = column(t, "max_abs_discrepancy");
  ASSERT_FALSE(t.rows.empty());
  for (const auto& row : t.rows) EXPECT_EQ(row[d], 0.0);
}

TEST(Experiments, PsiStabilitySmallerDtSmallerDiscrepancy) {
  const ExperimentConfig c = parse_config(R"({"experiment": "psi-stability", "L": 30, "T": 1,
      "psi_stability": {"function": "exp", "samples": 5, "dts": [0.00390625, 0.0009765625, 0.000244140625]}})");
  const auto res = run_psi_stability(c);
  const auto& t = table(res, "psi_stability");
  const std::size_t dtc = column(t, "dt"), tc = column(t, "t"), d = column(t, "max_abs_discrepancy");
  std::vector<double> end;
  for (const auto& row : t.rows)
    if (row[tc] == 1.0) end.push_back(row[d]);
  (void)dtc;
  ASSERT_EQ(end.size(), 3u);
  EXPECT_LT(end[1], end[0]);
  EXPECT_LT(end[2], end[1]);
}

TEST(Experiments, ToyPdeGrid) {
  const ExperimentConfig c = parse_config(R"({"experiment": "toy-pde", "K": 20, "L": 30, "dt": 0.0009765625,
                                              "T": 0.25, "toy_pde": {"grid": 8}})");
  const auto res = run_toy_pde(c);
  const auto& t = table(res, "toy_pde");
  EXPECT_EQ(t.rows.size(), 64u);
  const std::size_t tc = column(t, "t"), num = column(t, "numeric"), ref = column(t, "reference");
  for (const auto& row : t.rows)
    if (row[tc] == 0.0) {
      EXPECT_EQ(row[num], 0.0);
      EXPECT_EQ(row[ref], 0.0);
    }
}

TEST(Experiments, DiskWaveTablesAndZeroData) {
  ExperimentConfig c = parse_config(R"({"experiment": "disk-wave", "K": 10, "L": 12, "dt": 0.001953125,
      "T": 0.0390625, "disk_wave": {"initial": "zero", "sensor_count": 7, "grid": 11, "decimation": 5}})");
  const auto r = run_disk_wave(c);
  const auto& sensors = table(r, "disk_sensors");
  EXPECT_EQ(sensors.header.size(), 8u);
  for (const auto& row : sensors.rows)
    for (std::size_t i = 1; i < row.size(); ++i) EXPECT_EQ(row[i], 0.0);
  const auto& field = table(r, "disk_field");
  const std::size_t v = column(field, "value"), x = column(field, "x"), y = column(field, "y");
  for (const auto& row : field.rows) {
    if (row[x] * row[x] + row[y] * row[y] > 1.0)
      EXPECT_TRUE(std::isnan(row[v]));
    else
      EXPECT_EQ(row[v], 0.0);
  }
  for (const auto& row : table(r, "disk_coeff_decay").rows) EXPECT_EQ(row[1], 0.0);
  const auto dir = std::filesystem::temp_directory_path() / "fracspec_disk_test";
  const auto paths = write_result(r, c, dir);
  EXPECT_EQ(paths.size(), r.tables.size());
  for (const auto& p : paths) EXPECT_TRUE(std::filesystem::exists(p));
}

TEST(Experiments, SeventySensorsGiveSeventyOneColumns) {
  ExperimentConfig c = parse_config(R"({"experiment": "disk-wave", "alpha": 0.1, "K": 10, "L": 12, "dt": 0.001953125,
      "T": 0.0390625, "disk_wave": {"initial": "bump", "grid": 5, "decimation": 5}})");
  const auto r = run_disk_wave(c);
  EXPECT_EQ(table(r, "disk_sensors").header.size(), 71u);
}

#include <doctest.h>

#include <filesystem>

#include "rpcd/experiments.hpp"
#include "rpcd/io.hpp"

using namespace rpcd;

TEST_CASE("presets") {
  auto ids = preset_ids();
  for (const char* want : {"fig1", "fig2", "fig3", "fig4_i", "fig4_ii", "fig4_iii", "fig4_iv", "appendixF_grid",
                           "appendixC", "appendixG"})
    CHECK(std::find(ids.begin(), ids.end(), want) != ids.end());
  CHECK_THROWS_AS(preset("fig9"), DomainError);

  ExperimentPreset f1 = preset("fig1");
  REQUIRE(f1.settings.size() == 1);
  CHECK(f1.settings[0].rcd_iterations == 200);
  CHECK(f1.settings[0].rpcd_epochs == 8);
  CHECK(f1.settings[0].trials * f1.settings[0].init_points == 100);
  CHECK(dimension(f1.settings[0].spec) == 25);

  ExperimentPreset f4 = preset("fig4_iv");
  for (const auto& s : f4.settings) {
    CHECK(s.rcd_iterations == 600);
    CHECK(std::holds_alternative<Logistic>(s.spec));
  }
  CHECK(preset("appendixG").cells.size() == 3);
  for (const auto& id : ids) CHECK_NOTHROW(preset(id));
}

TEST_CASE("sigma grid") {
  auto g = sigma_grid(0.01, 0.99);
  REQUIRE(g.size() == 99);
  CHECK(g[0] == 0.01);
  CHECK(g[98] == 0.99);
  CHECK(g[49] == 0.5);
}

TEST_CASE("rho curves") {
  RhoCurveConfig cfg;
  cfg.n = 12;
  cfg.sigma_grid = {0.2, 0.5, 1.0};
  auto rows = rho_curves(cfg);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.rho_n <= r.rho_max_k + 1e-15);
    CHECK(r.rho_max_k <= r.rpcd_ub + 1e-10);
    CHECK(r.rcd_lb_pi_pow_n >= r.rpcd_ub);
  }
  CHECK(rows[2].rho_n == 0);
  std::string csv = to_csv(rows, NormMode::None);
  CHECK(csv.rfind("sigma,rho_n,rho_max_k,rpcd_ub,rcd_lb_pi_pow_n", 0) == 0);
  cfg.n = 100;
  CHECK_THROWS_AS(rho_curves(cfg), DomainError);
  cfg.norm = NormMode::ExactPI;
  CHECK(rho_curves(cfg).size() == 3);
}

TEST_CASE("run setting") {
  Setting s{"t", PIQuadratic{6, 0.5, 6}, 30, 5, 2, 2, 3};
  SettingResult r = run_setting(s);
  CHECK(r.rcd.per_step.size() == 31);
  CHECK(r.rpcd.per_step.size() == 6);
  CHECK(r.rcd.axis == "iteration");
  CHECK(r.rpcd.axis == "epoch");
}

TEST_CASE("svg emitter") {
  PlotSeries a{"rcd", {0, 1, 2}, {1, 0.5, 0.25}, {1, 0.4, 0.2}, {1, 0.6, 0.3}};
  std::string svg = svg_line_plot("t", "x", "y", {a});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("polygon") != std::string::npos);
  CHECK(svg.find("rcd") != std::string::npos);
  PlotSeries z{"z", {0, 1}, {1, 0}, {1, 0}, {1, 0}};
  CHECK_NOTHROW(svg_line_plot("t", "x", "y", {z}));

  auto dir = std::filesystem::temp_directory_path() / "rpcd_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_text_file((dir / "a.txt").string(), "hello\n");
  CHECK(read_text_file((dir / "a.txt").string()) == "hello\n");
  std::filesystem::remove_all(dir.parent_path());
}

// Writes a synthetic weekly price panel for the ingest pipeline.

#include "ellcov/synthetic_panel.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Synthetic weekly price panel with an optional covariance break"};
  ellcov::sim::PanelSynthesisConfig config;
  std::string out_path;
  app.add_option("--out", out_path, "Output CSV")->required();
  app.add_option("--seed", config.seed)->capture_default_str();
  app.add_option("--tickers", config.tickers)->capture_default_str();
  app.add_option("--break-scale", config.break_scale, "Covariance multiplier after 2017Q2")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  try {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "'");
    ellcov::sim::write_synthetic_price_panel(out, config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

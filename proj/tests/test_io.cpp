#include "synthlab/io.hpp"

#include "synthlab/dictionary.hpp"
#include "synthlab/rng.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace synthlab;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("synthlab_test_" + name);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("double formatting round-trips exactly") {
  Generator gen(1);
  for (int i = 0; i < 1000; ++i) {
    const double value = gen.normal() * std::pow(10.0, gen.normal() * 5.0);
    const double parsed = std::stod(format_double(value));
    CHECK(parsed == value);
  }
  CHECK(format_double(0.0) == "0");
}

TEST_CASE("dictionary binary round-trip") {
  const Dictionary dict = make_gaussian(7, 11, 5);
  const auto path = temp_file("dict.bin");
  save_dictionary_binary(dict, path);
  const Dictionary loaded = load_dictionary_binary(path);
  CHECK(loaded.matrix == dict.matrix);
  CHECK(loaded.label == dict.label);
  CHECK(loaded.atom_norms == dict.atom_norms);
  std::filesystem::remove(path);
}

TEST_CASE("dictionary csv round-trip") {
  const Dictionary dict = make_haar_redundant(8, 2);
  const auto path = temp_file("dict.csv");
  save_dictionary_csv(dict, path);
  const Dictionary loaded = load_dictionary_csv(path);
  CHECK(loaded.matrix == dict.matrix);
  CHECK(loaded.label == dict.label);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "8,24,haar");
  std::filesystem::remove(path);
}

TEST_CASE("experiment csv output is byte-stable") {
  PhaseGrid grid;
  grid.m_values = {2, 4};
  grid.s_values = {3};
  grid.trials_per_cell = 5;
  grid.success_counts_coef = {{1, 4}};
  grid.success_counts_sig = {{2, 5}};
  grid.solver_failures = {{0, 0}};
  grid.overlay = {3.5};
  grid.overlay_stderr = {0.25};

  const auto a = temp_file("phase_a.csv");
  const auto b = temp_file("phase_b.csv");
  write_phase_csv(grid, a);
  write_phase_csv(grid, b);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.find("s,m,trials,coef_successes,sig_successes,solver_failures,statdim,"
                   "statdim_stderr\n") == 0);
  CHECK(text.find("3,2,5,1,2,0,3.5,0.25") != std::string::npos);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("decomposition csv carries the axis vector") {
  ConeDecomposition dec;
  dec.lineality_basis = Matrix::Identity(3, 1);
  dec.range_cone.generators = Matrix::Identity(3, 2);
  dec.has_circumcenter = true;
  dec.circum_alpha = 0.5;
  dec.circum_theta = (Vector(3) << 1.0, 0.0, 0.0).finished();

  const auto path = temp_file("dec.csv");
  std::filesystem::remove(path);
  append_decomposition_csv("demo", dec, path);
  const std::string text = slurp(path);
  CHECK(text == "label,lineality_dim,range_generators,alpha,theta\n"
                "demo,1,2,0.5,1;0;0\n");
  std::filesystem::remove(path);
}

TEST_CASE("width csv appends with a single header") {
  const auto path = temp_file("width.csv");
  std::filesystem::remove(path);
  WidthEstimate est;
  est.statdim = 4.25;
  est.stderr_ = 0.5;
  est.samples = 300;
  est.seed = 9;
  append_width_csv("haar-s4", est, path);
  append_width_csv("haar-s8", est, path);
  const std::string text = slurp(path);
  CHECK(text == "cone_label,statdim,stderr,samples,seed\n"
                "haar-s4,4.25,0.5,300,9\n"
                "haar-s8,4.25,0.5,300,9\n");
  std::filesystem::remove(path);
}

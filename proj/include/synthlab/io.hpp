#pragma once

#include "synthlab/dictionary.hpp"
#include "synthlab/lab.hpp"
#include "synthlab/types.hpp"

#include <filesystem>
#include <string>

namespace synthlab {

/// Shortest decimal form that round-trips a double exactly (17 significant
/// digits).
std::string format_double(double value);

void save_dictionary_binary(const Dictionary& dict, const std::filesystem::path& path);
Dictionary load_dictionary_binary(const std::filesystem::path& path);

/// CSV with header row `n,d,label` followed by the matrix rows.
void save_dictionary_csv(const Dictionary& dict, const std::filesystem::path& path);
Dictionary load_dictionary_csv(const std::filesystem::path& path);

/// Columns: s,m,trials,coef_successes,sig_successes,solver_failures,statdim,statdim_stderr
void write_phase_csv(const PhaseGrid& grid, const std::filesystem::path& path);

/// Columns: eta,trials,mean_coef_err,mean_sig_err,bound_sig
void write_noise_csv(const NoiseSweep& sweep, const std::filesystem::path& path);

/// Columns: cone_label,statdim,stderr,samples,seed (appends when the file exists)
void append_width_csv(const std::string& cone_label, const WidthEstimate& estimate,
                      const std::filesystem::path& path);

/// Columns: label,lineality_dim,range_generators,alpha,theta with the axis
/// vector serialized as semicolon-joined components (appends when the file
/// exists).
void append_decomposition_csv(const std::string& label, const ConeDecomposition& dec,
                              const std::filesystem::path& path);

struct GeometryRow {
  int n = 0;
  int d = 0;
  int s_bar = 0;
  int lineality_dim = 0;
  int range_generators = 0;
  double alpha = 0.0;
  double tan2_alpha = 0.0;
  double statdim = 0.0;
  double statdim_stderr = 0.0;
  double bound_polyhedral = 0.0;       // range width bound squared, plus lineality
  double bound_gauge = 0.0;            // maximal-support squared-width bound
  double bound_corollary = 0.0;        // s_bar + tan^2(a) log(2(d - s_bar)/sqrt(2 pi))
  double bound_condition = 0.0;        // condition-number transfer, NaN without lambda_min
  double bound_coherence = 0.0;        // coherence bound on tan^2(a), NaN when inapplicable
};

void write_geometry_csv(const std::vector<GeometryRow>& rows, const std::filesystem::path& path);

}  // namespace synthlab

#include "synthlab/io.hpp"

#include "synthlab/errors.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace synthlab {

namespace {

constexpr char kBinaryMagic[8] = {'S', 'L', 'D', 'I', 'C', 'T', '0', '1'};

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  return in;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void save_dictionary_binary(const Dictionary& dict, const std::filesystem::path& path) {
  auto out = open_out(path, std::ios::binary);
  out.write(kBinaryMagic, sizeof(kBinaryMagic));
  const std::int64_t n = dict.n(), d = dict.d();
  const std::int64_t label_len = static_cast<std::int64_t>(dict.label.size());
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&d), sizeof(d));
  out.write(reinterpret_cast<const char*>(&label_len), sizeof(label_len));
  out.write(dict.label.data(), label_len);
  out.write(reinterpret_cast<const char*>(dict.matrix.data()),
            static_cast<std::streamsize>(sizeof(double)) * n * d);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Dictionary load_dictionary_binary(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kBinaryMagic, sizeof(magic)) != 0)
    throw std::runtime_error("not a dictionary container: " + path.string());
  std::int64_t n = 0, d = 0, label_len = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  in.read(reinterpret_cast<char*>(&d), sizeof(d));
  in.read(reinterpret_cast<char*>(&label_len), sizeof(label_len));
  if (!in || n < 1 || d < 1 || label_len < 0)
    throw std::runtime_error("corrupt dictionary container: " + path.string());
  Dictionary dict;
  dict.label.resize(static_cast<std::size_t>(label_len));
  in.read(dict.label.data(), label_len);
  dict.matrix.resize(n, d);
  in.read(reinterpret_cast<char*>(dict.matrix.data()),
          static_cast<std::streamsize>(sizeof(double)) * n * d);
  if (!in) throw std::runtime_error("truncated dictionary container: " + path.string());
  dict.atom_norms = dict.matrix.colwise().norm();
  return dict;
}

void save_dictionary_csv(const Dictionary& dict, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << dict.n() << ',' << dict.d() << ',' << dict.label << '\n';
  for (Eigen::Index i = 0; i < dict.n(); ++i) {
    for (Eigen::Index j = 0; j < dict.d(); ++j) {
      if (j) out << ',';
      out << format_double(dict.matrix(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Dictionary load_dictionary_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("empty dictionary csv: " + path.string());
  std::istringstream hs(header);
  std::string n_str, d_str, label;
  if (!std::getline(hs, n_str, ',') || !std::getline(hs, d_str, ',') || !std::getline(hs, label))
    throw std::runtime_error("bad dictionary csv header: " + path.string());
  const int n = std::stoi(n_str), d = std::stoi(d_str);
  if (n < 1 || d < 1) throw std::runtime_error("bad dictionary csv dimensions: " + path.string());

  Dictionary dict;
  dict.label = label;
  dict.matrix.resize(n, d);
  std::string line;
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated dictionary csv: " + path.string());
    std::istringstream ls(line);
    std::string cell;
    for (int j = 0; j < d; ++j) {
      if (!std::getline(ls, cell, ',')) throw std::runtime_error("short row in dictionary csv");
      dict.matrix(i, j) = std::stod(cell);
    }
  }
  dict.atom_norms = dict.matrix.colwise().norm();
  return dict;
}

void write_phase_csv(const PhaseGrid& grid, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "s,m,trials,coef_successes,sig_successes,solver_failures,statdim,statdim_stderr\n";
  for (std::size_t si = 0; si < grid.s_values.size(); ++si) {
    const bool has_overlay = si < grid.overlay.size();
    for (std::size_t mi = 0; mi < grid.m_values.size(); ++mi) {
      out << grid.s_values[si] << ',' << grid.m_values[mi] << ',' << grid.trials_per_cell << ','
          << grid.success_counts_coef[si][mi] << ',' << grid.success_counts_sig[si][mi] << ','
          << grid.solver_failures[si][mi] << ','
          << (has_overlay ? format_double(grid.overlay[si]) : "") << ','
          << (has_overlay ? format_double(grid.overlay_stderr[si]) : "") << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_noise_csv(const NoiseSweep& sweep, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "eta,trials,mean_coef_err,mean_sig_err,bound_sig\n";
  for (std::size_t ei = 0; ei < sweep.eta_values.size(); ++ei) {
    out << format_double(sweep.eta_values[ei]) << ',' << sweep.trials[ei].size() << ','
        << format_double(sweep.mean_coef_err[ei]) << ',' << format_double(sweep.mean_sig_err[ei])
        << ',' << format_double(sweep.bound_sig[ei]) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void append_width_csv(const std::string& cone_label, const WidthEstimate& estimate,
                      const std::filesystem::path& path) {
  const bool fresh = !std::filesystem::exists(path);
  auto out = open_out(path, std::ios::app);
  if (fresh) out << "cone_label,statdim,stderr,samples,seed\n";
  out << cone_label << ',' << format_double(estimate.statdim) << ','
      << format_double(estimate.stderr_) << ',' << estimate.samples << ',' << estimate.seed << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void append_decomposition_csv(const std::string& label, const ConeDecomposition& dec,
                              const std::filesystem::path& path) {
  const bool fresh = !std::filesystem::exists(path);
  auto out = open_out(path, std::ios::app);
  if (fresh) out << "label,lineality_dim,range_generators,alpha,theta\n";
  out << label << ',' << dec.lineality_dim() << ',' << dec.range_cone.generator_count() << ','
      << (dec.has_circumcenter ? format_double(dec.circum_alpha) : "");
  out << ',';
  if (dec.has_circumcenter) {
    for (Eigen::Index i = 0; i < dec.circum_theta.size(); ++i) {
      if (i) out << ';';
      out << format_double(dec.circum_theta[i]);
    }
  }
  out << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_geometry_csv(const std::vector<GeometryRow>& rows, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "n,d,s_bar,lineality_dim,range_generators,alpha,tan2_alpha,statdim,statdim_stderr,"
         "bound_polyhedral,bound_gauge,bound_corollary,bound_condition,bound_coherence\n";
  for (const GeometryRow& r : rows) {
    out << r.n << ',' << r.d << ',' << r.s_bar << ',' << r.lineality_dim << ','
        << r.range_generators << ',' << format_double(r.alpha) << ','
        << format_double(r.tan2_alpha) << ',' << format_double(r.statdim) << ','
        << format_double(r.statdim_stderr) << ',' << format_double(r.bound_polyhedral) << ','
        << format_double(r.bound_gauge) << ',' << format_double(r.bound_corollary) << ','
        << format_double(r.bound_condition) << ',' << format_double(r.bound_coherence) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace synthlab

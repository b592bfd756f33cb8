#include "mpidyn/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace mpidyn {

namespace {

constexpr char magic[6] = {'M', 'P', 'D', 'B', 'I', 'N'};
constexpr std::uint8_t format_version = 1;
constexpr std::uint8_t kind_system = 1;
constexpr std::uint8_t kind_signal = 2;
constexpr std::uint8_t kind_spline = 3;

// Little-endian host assumed (checked in the writer).
bool host_is_little_endian() {
  const std::uint16_t probe = 1;
  return *reinterpret_cast<const std::uint8_t*>(&probe) == 1;
}

class Writer {
 public:
  explicit Writer(const std::string& path) : final_path_(path), tmp_path_(path + ".tmp") {
    if (!host_is_little_endian()) throw IoError("binary writer requires a little-endian host");
    out_.open(tmp_path_, std::ios::binary | std::ios::trunc);
    if (!out_) throw IoError("cannot open '" + tmp_path_ + "' for writing");
  }
  ~Writer() {
    if (!committed_) {
      out_.close();
      std::remove(tmp_path_.c_str());
    }
  }
  void bytes(const void* p, size_t n) { out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); }
  template <typename T>
  void pod(const T& v) { bytes(&v, sizeof v); }
  void matrix_row_major(const Eigen::MatrixXd& m) {
    std::vector<double> row(static_cast<size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
      for (Eigen::Index i = 0; i < m.cols(); ++i) row[static_cast<size_t>(i)] = m(j, i);
      bytes(row.data(), row.size() * sizeof(double));
    }
  }
  void matrix_row_major(const Eigen::MatrixXcd& m) {
    std::vector<double> row(2 * static_cast<size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
      for (Eigen::Index i = 0; i < m.cols(); ++i) {
        row[2 * static_cast<size_t>(i)] = m(j, i).real();
        row[2 * static_cast<size_t>(i) + 1] = m(j, i).imag();
      }
      bytes(row.data(), row.size() * sizeof(double));
    }
  }
  void commit() {
    out_.flush();
    if (!out_) throw IoError("write to '" + tmp_path_ + "' failed");
    out_.close();
    if (std::rename(tmp_path_.c_str(), final_path_.c_str()) != 0)
      throw IoError("cannot move '" + tmp_path_ + "' to '" + final_path_ + "'");
    committed_ = true;
  }

 private:
  std::string final_path_, tmp_path_;
  std::ofstream out_;
  bool committed_ = false;
};

class Reader {
 public:
  explicit Reader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw IoError("cannot open '" + path + "'");
  }
  void bytes(void* p, size_t n) {
    in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (!in_) throw IoError("unexpected end of file in '" + path_ + "'");
  }
  template <typename T>
  T pod() {
    T v;
    bytes(&v, sizeof v);
    return v;
  }
  Eigen::MatrixXd matrix_row_major(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    std::vector<double> row(static_cast<size_t>(cols));
    for (Eigen::Index j = 0; j < rows; ++j) {
      bytes(row.data(), row.size() * sizeof(double));
      for (Eigen::Index i = 0; i < cols; ++i) m(j, i) = row[static_cast<size_t>(i)];
    }
    return m;
  }
  Eigen::MatrixXcd cmatrix_row_major(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXcd m(rows, cols);
    std::vector<double> row(2 * static_cast<size_t>(cols));
    for (Eigen::Index j = 0; j < rows; ++j) {
      bytes(row.data(), row.size() * sizeof(double));
      for (Eigen::Index i = 0; i < cols; ++i)
        m(j, i) = std::complex<double>(row[2 * static_cast<size_t>(i)],
                                       row[2 * static_cast<size_t>(i) + 1]);
    }
    return m;
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
};

void write_header(Writer& w, std::uint8_t kind, const Grid& grid) {
  w.bytes(magic, sizeof magic);
  w.pod(format_version);
  w.pod(kind);
  const GridSpec& s = grid.spec();
  w.pod(static_cast<std::int32_t>(s.nx));
  w.pod(static_cast<std::int32_t>(s.ny));
  w.pod(static_cast<std::int32_t>(s.nz));
  w.pod(s.voxel_size.x());
  w.pod(s.voxel_size.y());
  w.pod(s.voxel_size.z());
  w.pod(static_cast<std::int32_t>(s.samples_per_cycle));
  w.pod(static_cast<std::int32_t>(s.frame_count));
  w.pod(s.cycle_time);
  w.pod(grid.hash());
}

Grid read_header(Reader& r, std::uint8_t expected_kind) {
  char m[6];
  r.bytes(m, sizeof m);
  if (std::memcmp(m, magic, sizeof magic) != 0)
    throw IoError("'" + r.path() + "' is not a recognized binary file (bad magic)");
  const auto version = r.pod<std::uint8_t>();
  if (version != format_version)
    throw IoError("'" + r.path() + "': unsupported format version " + std::to_string(version));
  const auto kind = r.pod<std::uint8_t>();
  if (kind != expected_kind)
    throw IoError("'" + r.path() + "': wrong file kind " + std::to_string(kind) + " (expected " +
                  std::to_string(expected_kind) + ")");
  GridSpec s;
  s.nx = r.pod<std::int32_t>();
  s.ny = r.pod<std::int32_t>();
  s.nz = r.pod<std::int32_t>();
  s.voxel_size.x() = r.pod<double>();
  s.voxel_size.y() = r.pod<double>();
  s.voxel_size.z() = r.pod<double>();
  s.samples_per_cycle = r.pod<std::int32_t>();
  s.frame_count = r.pod<std::int32_t>();
  s.cycle_time = r.pod<double>();
  const auto stored_hash = r.pod<std::uint64_t>();
  Grid grid = Grid::make(s);
  if (grid.hash() != stored_hash)
    throw IoError("'" + r.path() + "': grid hash mismatch (corrupt header)");
  return grid;
}

void write_channels(Writer& w, const std::vector<Channel>& channels) {
  w.pod(static_cast<std::uint32_t>(channels.size()));
  for (Channel c : channels) w.pod(static_cast<std::uint8_t>(c));
}

std::vector<Channel> read_channels(Reader& r) {
  const auto count = r.pod<std::uint32_t>();
  if (count == 0 || count > 3) throw IoError("'" + r.path() + "': bad channel count");
  std::vector<Channel> channels;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto id = r.pod<std::uint8_t>();
    if (id > 2) throw IoError("'" + r.path() + "': bad channel id");
    channels.push_back(static_cast<Channel>(id));
  }
  return channels;
}

}  // namespace

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      throw IoError("write to '" + tmp + "' failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot move '" + tmp + "' to '" + path + "'");
  }
}

void save_system(const SystemMatrixPair& pair, const std::string& path, bool with_time,
                 bool with_frequency) {
  if (with_time && !pair.has_time()) throw IoError("save_system: no time-domain data to write");
  if (with_frequency && !pair.has_frequency())
    throw IoError("save_system: no frequency-domain data to write");
  if (!with_time && !with_frequency) throw IoError("save_system: nothing selected to write");

  Writer w(path);
  write_header(w, kind_system, pair.grid);
  const std::uint8_t domain_flags =
      static_cast<std::uint8_t>((with_time ? 1 : 0) | (with_frequency ? 2 : 0));
  w.pod(domain_flags);
  w.pod(pair.signal_scale);
  write_channels(w, pair.channels);
  for (size_t c = 0; c < pair.channels.size(); ++c) {
    if (with_time) {
      w.matrix_row_major(pair.s1[c]);
      w.matrix_row_major(pair.s2[c]);
    }
    if (with_frequency) {
      w.matrix_row_major(pair.s1_hat[c]);
      w.matrix_row_major(pair.s2_hat[c]);
    }
  }
  w.commit();
}

SystemMatrixPair load_system(const std::string& path) {
  Reader r(path);
  SystemMatrixPair pair;
  pair.grid = read_header(r, kind_system);
  const auto domain_flags = r.pod<std::uint8_t>();
  pair.signal_scale = r.pod<double>();
  pair.channels = read_channels(r);
  const Eigen::Index n_t = pair.grid.samples_per_cycle();
  const Eigen::Index nr = pair.grid.voxel_count();
  for (size_t c = 0; c < pair.channels.size(); ++c) {
    if (domain_flags & 1) {
      pair.s1.push_back(r.matrix_row_major(n_t, nr));
      pair.s2.push_back(r.matrix_row_major(n_t, nr));
    }
    if (domain_flags & 2) {
      pair.s1_hat.push_back(r.cmatrix_row_major(n_t, nr));
      pair.s2_hat.push_back(r.cmatrix_row_major(n_t, nr));
    }
  }
  return pair;
}

void save_signal(const Signal& signal, const std::string& path) {
  if (!signal.has_time() && !signal.has_frequency())
    throw IoError("save_signal: empty signal");
  Writer w(path);
  w.bytes(magic, sizeof magic);
  w.pod(format_version);
  w.pod(kind_signal);
  w.pod(static_cast<std::int32_t>(signal.frame_count));
  w.pod(static_cast<std::int32_t>(signal.samples_per_cycle));
  w.pod(signal.cycle_time);
  w.pod(signal.grid_hash);
  const std::uint8_t domain_flags =
      static_cast<std::uint8_t>((signal.has_time() ? 1 : 0) | (signal.has_frequency() ? 2 : 0));
  w.pod(domain_flags);
  write_channels(w, signal.channels);
  for (size_t c = 0; c < signal.channels.size(); ++c) {
    if (signal.has_time()) {
      const Eigen::VectorXd& u = signal.samples[c];
      w.bytes(u.data(), static_cast<size_t>(u.size()) * sizeof(double));
    }
    if (signal.has_frequency()) {
      const Eigen::VectorXcd& u = signal.spectra[c];
      w.bytes(u.data(), static_cast<size_t>(u.size()) * 2 * sizeof(double));
    }
  }
  w.commit();
}

Signal load_signal(const std::string& path) {
  Reader r(path);
  char m[6];
  r.bytes(m, sizeof m);
  if (std::memcmp(m, magic, sizeof magic) != 0)
    throw IoError("'" + path + "' is not a recognized binary file (bad magic)");
  if (r.pod<std::uint8_t>() != format_version)
    throw IoError("'" + path + "': unsupported format version");
  if (r.pod<std::uint8_t>() != kind_signal)
    throw IoError("'" + path + "': not a signal file");
  Signal s;
  s.frame_count = r.pod<std::int32_t>();
  s.samples_per_cycle = r.pod<std::int32_t>();
  s.cycle_time = r.pod<double>();
  s.grid_hash = r.pod<std::uint64_t>();
  const auto domain_flags = r.pod<std::uint8_t>();
  s.channels = read_channels(r);
  if (s.frame_count < 1 || s.samples_per_cycle < 2)
    throw IoError("'" + path + "': bad signal dimensions");
  for (size_t c = 0; c < s.channels.size(); ++c) {
    if (domain_flags & 1) {
      Eigen::VectorXd u(static_cast<Eigen::Index>(s.frame_count) * s.samples_per_cycle);
      r.bytes(u.data(), static_cast<size_t>(u.size()) * sizeof(double));
      s.samples.push_back(std::move(u));
    }
    if (domain_flags & 2) {
      Eigen::VectorXcd u(s.samples_per_cycle);
      r.bytes(u.data(), static_cast<size_t>(u.size()) * 2 * sizeof(double));
      s.spectra.push_back(std::move(u));
    }
  }
  return s;
}

void save_spline(const SplineConcentration& sc, const Grid& grid, const std::string& path) {
  if (sc.coefficients.cols() != grid.voxel_count())
    throw IoError("save_spline: coefficients do not match the grid");
  Writer w(path);
  write_header(w, kind_spline, grid);
  w.pod(static_cast<std::int32_t>(sc.basis.size()));
  w.pod(static_cast<std::int32_t>(sc.basis.segments()));
  w.matrix_row_major(sc.coefficients);
  w.commit();
}

std::pair<SplineConcentration, Grid> load_spline(const std::string& path) {
  Reader r(path);
  Grid grid = read_header(r, kind_spline);
  const auto m = r.pod<std::int32_t>();
  const auto segments = r.pod<std::int32_t>();
  if (segments < 1 || m != segments + 3) throw IoError("'" + path + "': bad spline basis");
  CubicBsplineBasis basis(grid.frame_count() * grid.cycle_time(), segments);
  SplineConcentration sc{basis, r.matrix_row_major(m, grid.voxel_count()), grid.hash()};
  return {std::move(sc), std::move(grid)};
}

void export_concentration_csv(const std::string& path, const std::vector<double>& times,
                              const Eigen::MatrixXd& values, const Eigen::MatrixXd* rates) {
  if (static_cast<Eigen::Index>(times.size()) != values.rows())
    throw IoError("export_concentration_csv: time/value shape mismatch");
  std::ostringstream out;
  out << (rates ? "voxel,time_s,concentration,rate\n" : "voxel,time_s,concentration\n");
  for (Eigen::Index i = 0; i < values.cols(); ++i)
    for (Eigen::Index j = 0; j < values.rows(); ++j) {
      out << (i + 1) << ',' << format_full(times[static_cast<size_t>(j)]) << ','
          << format_full(values(j, i));
      if (rates) out << ',' << format_full((*rates)(j, i));
      out << '\n';
    }
  write_text_atomic(path, out.str());
}

void export_signal_csv(const std::string& path, const Signal& signal) {
  if (!signal.has_time()) throw IoError("export_signal_csv: time-domain signal required");
  std::ostringstream out;
  out << "time_s";
  for (Channel c : signal.channels) out << ",u_" << channel_name(c);
  out << '\n';
  for (int j = 0; j < signal.record_length(); ++j) {
    out << format_full(signal.record_time_sample(j));
    for (size_t c = 0; c < signal.channels.size(); ++c)
      out << ',' << format_full(signal.samples[c][j]);
    out << '\n';
  }
  write_text_atomic(path, out.str());
}

void export_spectrum_csv(const std::string& path, const Eigen::VectorXd& magnitude,
                         const Eigen::VectorXd& hull, double bin_width_hz) {
  if (magnitude.size() != hull.size())
    throw IoError("export_spectrum_csv: magnitude/hull size mismatch");
  std::ostringstream out;
  out << "bin,frequency_hz,magnitude,hull\n";
  for (Eigen::Index k = 0; k < magnitude.size(); ++k)
    out << k << ',' << format_full(k * bin_width_hz) << ',' << format_full(magnitude[k]) << ','
        << format_full(hull[k]) << '\n';
  write_text_atomic(path, out.str());
}

void export_split_csv(const std::string& path, const SplitTerms& split, double bin_width_hz) {
  std::ostringstream out;
  out << "bin,frequency_hz,abs_a_sum,abs_b_sum,max_voxel_abs_a,max_voxel_abs_b\n";
  for (Eigen::Index k = 0; k < split.a_sum.size(); ++k) {
    double max_a = 0.0, max_b = 0.0;
    for (Eigen::Index i = 0; i < split.a.cols(); ++i) {
      max_a = std::max(max_a, std::abs(split.a(k, i)));
      max_b = std::max(max_b, std::abs(split.b(k, i)));
    }
    out << k << ',' << format_full(k * bin_width_hz) << ',' << format_full(std::abs(split.a_sum[k]))
        << ',' << format_full(std::abs(split.b_sum[k])) << ',' << format_full(max_a) << ','
        << format_full(max_b) << '\n';
  }
  write_text_atomic(path, out.str());
}

void export_frames_csv(const std::string& path, const Eigen::MatrixXd& frames) {
  std::ostringstream out;
  out << "frame";
  for (Eigen::Index i = 0; i < frames.cols(); ++i) out << ",c_" << (i + 1);
  out << '\n';
  for (Eigen::Index f = 0; f < frames.rows(); ++f) {
    out << (f + 1);
    for (Eigen::Index i = 0; i < frames.cols(); ++i) out << ',' << format_full(frames(f, i));
    out << '\n';
  }
  write_text_atomic(path, out.str());
}

void export_residuals_csv(const std::string& path,
                          const std::vector<std::vector<double>>& per_channel,
                          const std::vector<Channel>& channels) {
  std::ostringstream out;
  out << "channel,iteration,residual\n";
  for (size_t c = 0; c < per_channel.size(); ++c) {
    const char* name = c < channels.size() ? channel_name(channels[c]) : "joint";
    for (size_t it = 0; it < per_channel[c].size(); ++it)
      out << name << ',' << it << ',' << format_full(per_channel[c][it]) << '\n';
  }
  write_text_atomic(path, out.str());
}

void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ostringstream out;
  for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
  write_text_atomic(path, out.str());
}

}  // namespace mpidyn

#include "mpidyn.h"

#include "mpidyn/analysis.hpp"
#include "mpidyn/config.hpp"
#include "mpidyn/io.hpp"

#include <cmath>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>

using namespace mpidyn;

struct mpd_config {
  RunConfig cfg;
};
struct mpd_system {
  SystemMatrixPair pair;
};
struct mpd_phantom {
  SplineConcentration conc;
  Grid grid;
};
struct mpd_signal {
  Signal signal;
};
struct mpd_recon {
  std::string mode;
  bool use_s2 = false;
  std::vector<Channel> channels;
  std::vector<double> times;       // row times of `values`
  Eigen::MatrixXd values;          // rows x R, channel average
  Eigen::MatrixXd rates;           // parametric only (same shape), else empty
  Eigen::MatrixXd frame_images;    // F x R
  std::vector<std::vector<double>> residuals;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
int guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const IoError& e) {
    g_last_error = e.what();
    return MPD_ERR_IO;
  } catch (const ConfigError& e) {
    g_last_error = e.what();
    return MPD_ERR_ARGUMENT;
  } catch (const NumericError& e) {
    g_last_error = e.what();
    return MPD_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MPD_ERR_NUMERIC;
  }
}

int argument_error(const char* message) {
  g_last_error = message;
  return MPD_ERR_ARGUMENT;
}

RunConfig profile_defaults(const char* profile) {
  const std::string p = profile ? profile : "default";
  if (p == "default" || p.empty()) return default_config();
  if (p == "spectra") return spectra_config();
  throw ConfigError("unknown config profile '" + p + "' (use 'default' or 'spectra')");
}

Grid grid_from(const RunConfig& cfg) {
  GridSpec spec = cfg.grid;
  spec.cycle_time = cfg.scanner.cycle_time;
  return Grid::make(spec);
}

// Peak statistics of one spline-concentration voxel on a dense time grid.
void voxel_peak(const SplineConcentration& sc, int voxel, const Grid& grid, double& c_max,
                double& cdot_max, double& t_peak) {
  const int n = grid.record_length();
  const int oversample = 4;
  const int dense = n * oversample;
  c_max = 0.0;
  cdot_max = 0.0;
  t_peak = 0.0;
  const double duration = sc.basis.duration();
  for (int j = 0; j <= dense; ++j) {
    const double t = duration * static_cast<double>(j) / dense;
    const double v = sc.value(voxel, t);
    const double d = std::abs(sc.rate(voxel, t));
    if (v > c_max) {
      c_max = v;
      t_peak = t;
    }
    if (d > cdot_max) cdot_max = d;
  }
}

std::vector<std::pair<std::string, std::string>> spectrum_report(
    const Eigen::MatrixXcd& s_hat, const std::string& tag, int window, double bin_width,
    const std::string& csv_path) {
  const Eigen::VectorXd m = max_spectrum(s_hat);
  // peak structure and hull are measured with the DC bin stripped, matching
  // log-frequency spectrum plots; the exported hull repeats m(0) there
  const Eigen::VectorXd body = m.segment(1, m.size() - 1);
  const Eigen::VectorXd hull_body = hull_approximation(body, window);
  Eigen::VectorXd hull(m.size());
  hull[0] = m[0];
  hull.tail(m.size() - 1) = hull_body;
  export_spectrum_csv(csv_path, m, hull, bin_width);

  const PeakMetrics raw = peak_metrics(body);
  const PeakMetrics smooth = peak_metrics(hull_body);
  std::vector<std::pair<std::string, std::string>> entries;
  entries.emplace_back(tag + "_max", format_full(raw.global_max));
  entries.emplace_back(tag + "_peak_count", std::to_string(raw.peak_count));
  entries.emplace_back(tag + "_spacing_bins",
                       raw.spacing_defined ? format_full(raw.spacing_bins) : "none");
  entries.emplace_back(tag + "_hull_spacing_bins",
                       smooth.spacing_defined ? format_full(smooth.spacing_bins) : "none");
  entries.emplace_back(tag + "_hull_fwhm_bins",
                       raw.global_max > 0.0 ? format_full(smooth.fwhm_bins) : "none");
  if (raw.peak_count < 2) entries.emplace_back(tag + "_note", "no peaks");
  return entries;
}

}  // namespace

extern "C" {

const char* mpd_version(void) { return "1.0.0"; }

const char* mpd_last_error(void) { return g_last_error.c_str(); }

int mpd_config_create(const char* profile, mpd_config** out) {
  if (!out) return argument_error("mpd_config_create: out is null");
  return guarded([&] {
    *out = new mpd_config{profile_defaults(profile)};
    return MPD_OK;
  });
}

int mpd_config_load(const char* path, const char* profile, mpd_config** out) {
  if (!out || !path) return argument_error("mpd_config_load: null argument");
  return guarded([&]() -> int {
    RunConfig defaults = profile_defaults(profile);
    try {
      *out = new mpd_config{load_config(path, defaults)};
    } catch (const ConfigError& e) {
      // config parse problems are file problems from the caller's view
      throw IoError(e.what());
    }
    return MPD_OK;
  });
}

int mpd_config_set(mpd_config* cfg, const char* dotted_key, const char* value) {
  if (!cfg || !dotted_key || !value) return argument_error("mpd_config_set: null argument");
  return guarded([&] {
    apply_override(cfg->cfg, dotted_key, value);
    return MPD_OK;
  });
}

int mpd_config_text(const mpd_config* cfg, char* buffer, size_t* size) {
  if (!cfg || !size) return argument_error("mpd_config_text: null argument");
  return guarded([&]() -> int {
    const std::string text = serialize_config(cfg->cfg);
    if (!buffer) {
      *size = text.size() + 1;
      return MPD_OK;
    }
    if (*size < text.size() + 1) return argument_error("mpd_config_text: buffer too small");
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *size = text.size() + 1;
    return MPD_OK;
  });
}

void mpd_config_free(mpd_config* cfg) { delete cfg; }

int mpd_system_build(const mpd_config* cfg, mpd_system** out) {
  if (!cfg || !out) return argument_error("mpd_system_build: null argument");
  return guarded([&] {
    const Grid grid = grid_from(cfg->cfg);
    *out = new mpd_system{
        build_system_pair(grid, cfg->cfg.scanner, cfg->cfg.particle, cfg->cfg.channels)};
    return MPD_OK;
  });
}

int mpd_system_with_frequency(mpd_system* sys) {
  if (!sys) return argument_error("mpd_system_with_frequency: null argument");
  return guarded([&] {
    if (!sys->pair.has_frequency()) sys->pair = to_frequency(sys->pair);
    return MPD_OK;
  });
}

int mpd_system_save(const mpd_system* sys, const char* path, int with_time, int with_frequency) {
  if (!sys || !path) return argument_error("mpd_system_save: null argument");
  return guarded([&] {
    save_system(sys->pair, path, with_time != 0, with_frequency != 0);
    return MPD_OK;
  });
}

int mpd_system_load(const char* path, mpd_system** out) {
  if (!path || !out) return argument_error("mpd_system_load: null argument");
  return guarded([&] {
    *out = new mpd_system{load_system(path)};
    return MPD_OK;
  });
}

int mpd_system_dims(const mpd_system* sys, int32_t* samples_per_cycle, int32_t* voxels,
                    int32_t* channels) {
  if (!sys) return argument_error("mpd_system_dims: null argument");
  if (samples_per_cycle) *samples_per_cycle = sys->pair.grid.samples_per_cycle();
  if (voxels) *voxels = sys->pair.grid.voxel_count();
  if (channels) *channels = static_cast<int32_t>(sys->pair.channels.size());
  return MPD_OK;
}

void mpd_system_free(mpd_system* sys) { delete sys; }

int mpd_phantom_create(const mpd_config* cfg, const char* name, mpd_phantom** out) {
  if (!cfg || !name || !out) return argument_error("mpd_phantom_create: null argument");
  return guarded([&]() -> int {
    const Grid grid = grid_from(cfg->cfg);
    const int spans = cfg->cfg.phantom.spans_per_frame;
    const std::string n = name;
    SplineConcentration sc = [&] {
      if (n == "one-peak-1F") return one_peak_phantom(OnePeakVariant::one_frame, grid, spans);
      if (n == "one-peak-2F") return one_peak_phantom(OnePeakVariant::two_frame, grid, spans);
      if (n == "one-peak-4F") return one_peak_phantom(OnePeakVariant::four_frame, grid, spans);
      if (n == "three-peak") return three_peak_phantom(grid, spans);
      if (n == "zero") return zero_phantom(grid, spans);
      throw ConfigError("unknown phantom '" + n +
                        "' (use one-peak-1F/2F/4F, three-peak or zero)");
    }();
    *out = new mpd_phantom{std::move(sc), grid};
    return MPD_OK;
  });
}

int mpd_phantom_load(const char* path, mpd_phantom** out) {
  if (!path || !out) return argument_error("mpd_phantom_load: null argument");
  return guarded([&] {
    auto [sc, grid] = load_spline(path);
    *out = new mpd_phantom{std::move(sc), std::move(grid)};
    return MPD_OK;
  });
}

int mpd_phantom_save(const mpd_phantom* ph, const char* path) {
  if (!ph || !path) return argument_error("mpd_phantom_save: null argument");
  return guarded([&] {
    save_spline(ph->conc, ph->grid, path);
    return MPD_OK;
  });
}

int mpd_phantom_export_csv(const mpd_phantom* ph, const char* path) {
  if (!ph || !path) return argument_error("mpd_phantom_export_csv: null argument");
  return guarded([&] {
    const SampledConcentration sampled = eval_spline(ph->conc, ph->grid);
    export_concentration_csv(path, ph->grid.record_times(), sampled.values, &sampled.rates);
    return MPD_OK;
  });
}

int mpd_phantom_stats(const mpd_phantom* ph, int32_t voxel, double* c_max, double* cdot_max,
                      double* t_peak) {
  if (!ph) return argument_error("mpd_phantom_stats: null argument");
  if (voxel < 1 || voxel > ph->grid.voxel_count())
    return argument_error("mpd_phantom_stats: voxel index out of range (1-based)");
  return guarded([&] {
    double cm, dm, tp;
    voxel_peak(ph->conc, voxel - 1, ph->grid, cm, dm, tp);
    if (c_max) *c_max = cm;
    if (cdot_max) *cdot_max = dm;
    if (t_peak) *t_peak = tp;
    return MPD_OK;
  });
}

void mpd_phantom_free(mpd_phantom* ph) { delete ph; }

int mpd_simulate(const mpd_system* sys, const mpd_phantom* ph, mpd_signal** out) {
  if (!sys || !ph || !out) return argument_error("mpd_simulate: null argument");
  return guarded([&]() -> int {
    if (sys->pair.grid.hash() != ph->grid.hash())
      throw ConfigError("mpd_simulate: phantom and system matrices use different grids");
    const SampledConcentration sampled = eval_spline(ph->conc, ph->grid);
    *out = new mpd_signal{forward_dynamic(sys->pair, sampled)};
    return MPD_OK;
  });
}

int mpd_signal_save(const mpd_signal* sig, const char* path) {
  if (!sig || !path) return argument_error("mpd_signal_save: null argument");
  return guarded([&] {
    save_signal(sig->signal, path);
    return MPD_OK;
  });
}

int mpd_signal_load(const char* path, mpd_signal** out) {
  if (!path || !out) return argument_error("mpd_signal_load: null argument");
  return guarded([&] {
    *out = new mpd_signal{load_signal(path)};
    return MPD_OK;
  });
}

int mpd_signal_export_csv(const mpd_signal* sig, const char* path) {
  if (!sig || !path) return argument_error("mpd_signal_export_csv: null argument");
  return guarded([&] {
    export_signal_csv(path, sig->signal);
    return MPD_OK;
  });
}

int mpd_signal_dims(const mpd_signal* sig, int32_t* frames, int32_t* samples_per_cycle,
                    int32_t* channels) {
  if (!sig) return argument_error("mpd_signal_dims: null argument");
  if (frames) *frames = sig->signal.frame_count;
  if (samples_per_cycle) *samples_per_cycle = sig->signal.samples_per_cycle;
  if (channels) *channels = static_cast<int32_t>(sig->signal.channels.size());
  return MPD_OK;
}

int mpd_signal_copy_channel(const mpd_signal* sig, int32_t channel_index, double* out,
                            int64_t capacity) {
  if (!sig || !out) return argument_error("mpd_signal_copy_channel: null argument");
  if (channel_index < 0 || channel_index >= static_cast<int32_t>(sig->signal.channels.size()))
    return argument_error("mpd_signal_copy_channel: channel index out of range");
  const Eigen::VectorXd& u = sig->signal.samples[static_cast<size_t>(channel_index)];
  if (capacity < u.size()) return argument_error("mpd_signal_copy_channel: buffer too small");
  std::memcpy(out, u.data(), static_cast<size_t>(u.size()) * sizeof(double));
  return MPD_OK;
}

void mpd_signal_free(mpd_signal* sig) { delete sig; }

int mpd_reconstruct(const mpd_system* sys, const mpd_signal* sig, const mpd_config* cfg,
                    const char* mode, int use_s2, mpd_recon** out) {
  if (!sys || !sig || !mode || !out) return argument_error("mpd_reconstruct: null argument");
  return guarded([&]() -> int {
    const ReconConfig rc = cfg ? cfg->cfg.recon : ReconConfig{};
    const Signal& signal = sig->signal;
    const std::string m = mode;
    auto rec = std::make_unique<mpd_recon>();
    rec->mode = m;
    rec->use_s2 = use_s2 != 0;
    rec->channels = signal.channels;

    const int frames = signal.frame_count;
    const double tc = signal.cycle_time;
    const int r = sys->pair.grid.voxel_count();

    if (m == "parametric") {
      const ParametricResult res = reconstruct_parametric(sys->pair, signal, rc, use_s2 != 0);
      GridSpec spec = sys->pair.grid.spec();
      spec.frame_count = frames;
      const Grid record_grid = Grid::make(spec);
      const SampledConcentration sampled = eval_spline(res.average, record_grid);
      rec->times = record_grid.record_times();
      rec->values = sampled.values;
      rec->rates = sampled.rates;
      rec->residuals = res.residuals;
      rec->frame_images.resize(frames, r);
      for (int f = 0; f < frames; ++f)
        for (int i = 0; i < r; ++i)
          rec->frame_images(f, i) = res.average.value(i, (f + 0.5) * tc);
    } else if (m == "frames" || m == "kaczmarz") {
      const FrameResult res = m == "frames"
                                  ? reconstruct_frames(sys->pair, signal, rc, use_s2 != 0)
                                  : reconstruct_frames_kaczmarz(sys->pair, signal, rc);
      rec->times.resize(static_cast<size_t>(frames));
      for (int f = 0; f < frames; ++f) rec->times[static_cast<size_t>(f)] = (f + 0.5) * tc;
      rec->values = res.average;
      rec->frame_images = res.average;
      rec->residuals = res.residuals;
    } else {
      throw ConfigError("mpd_reconstruct: unknown mode '" + m +
                        "' (use kaczmarz, parametric or frames)");
    }
    *out = rec.release();
    return MPD_OK;
  });
}

int mpd_recon_info(const mpd_recon* rec, int32_t* rows, int32_t* voxels) {
  if (!rec) return argument_error("mpd_recon_info: null argument");
  if (rows) *rows = static_cast<int32_t>(rec->values.rows());
  if (voxels) *voxels = static_cast<int32_t>(rec->values.cols());
  return MPD_OK;
}

int mpd_recon_copy_values(const mpd_recon* rec, double* out, int64_t capacity) {
  if (!rec || !out) return argument_error("mpd_recon_copy_values: null argument");
  const int64_t needed = static_cast<int64_t>(rec->values.size());
  if (capacity < needed) return argument_error("mpd_recon_copy_values: buffer too small");
  for (Eigen::Index j = 0; j < rec->values.rows(); ++j)
    for (Eigen::Index i = 0; i < rec->values.cols(); ++i)
      out[j * rec->values.cols() + i] = rec->values(j, i);
  return MPD_OK;
}

int mpd_recon_export(const mpd_recon* rec, const char* out_prefix) {
  if (!rec || !out_prefix) return argument_error("mpd_recon_export: null argument");
  return guarded([&] {
    const std::string prefix = out_prefix;
    export_concentration_csv(prefix + "_concentration.csv", rec->times, rec->values,
                             rec->rates.size() > 0 ? &rec->rates : nullptr);
    export_frames_csv(prefix + "_frames.csv", rec->frame_images);
    export_residuals_csv(prefix + "_residuals.csv", rec->residuals, rec->channels);

    std::vector<std::pair<std::string, std::string>> entries;
    entries.emplace_back("mode", rec->mode);
    entries.emplace_back("use_s2", rec->use_s2 ? "true" : "false");
    entries.emplace_back("voxels", std::to_string(rec->values.cols()));
    int peak_voxel = 0;
    double peak_value = 0.0, peak_time = 0.0;
    for (Eigen::Index i = 0; i < rec->values.cols(); ++i) {
      Eigen::Index arg = 0;
      const double v = rec->values.col(i).maxCoeff(&arg);
      const double t = rec->times[static_cast<size_t>(arg)];
      entries.emplace_back("voxel_" + std::to_string(i + 1) + "_peak", format_full(v));
      entries.emplace_back("voxel_" + std::to_string(i + 1) + "_peak_time_s", format_full(t));
      if (v > peak_value) {
        peak_value = v;
        peak_voxel = static_cast<int>(i) + 1;
        peak_time = t;
      }
    }
    entries.emplace_back("peak_voxel", std::to_string(peak_voxel));
    entries.emplace_back("peak_value", format_full(peak_value));
    entries.emplace_back("peak_time_s", format_full(peak_time));
    write_summary(prefix + "_summary.txt", entries);
    return MPD_OK;
  });
}

void mpd_recon_free(mpd_recon* rec) { delete rec; }

int mpd_analyze_system(const mpd_system* sys, int window, const char* out_prefix) {
  if (!sys || !out_prefix) return argument_error("mpd_analyze_system: null argument");
  if (window < 1) return argument_error("mpd_analyze_system: window must be >= 1");
  return guarded([&] {
    const SystemMatrixPair pair =
        sys->pair.has_frequency() ? sys->pair : to_frequency(sys->pair);
    const std::string prefix = out_prefix;
    const double bin_width = 1.0 / pair.grid.cycle_time();

    std::vector<std::pair<std::string, std::string>> entries;
    for (size_t c = 0; c < pair.channels.size(); ++c) {
      const std::string ch = channel_name(pair.channels[c]);
      auto e1 = spectrum_report(pair.s1_hat[c], "s1_" + ch, window, bin_width,
                                prefix + "_spectrum_s1_" + ch + ".csv");
      auto e2 = spectrum_report(pair.s2_hat[c], "s2_" + ch, window, bin_width,
                                prefix + "_spectrum_s2_" + ch + ".csv");
      entries.insert(entries.end(), e1.begin(), e1.end());
      entries.insert(entries.end(), e2.begin(), e2.end());
      const double m1 = max_spectrum(pair.s1_hat[c]).maxCoeff();
      const double m2 = max_spectrum(pair.s2_hat[c]).maxCoeff();
      entries.emplace_back("max_ratio_s2_over_s1_" + ch,
                           m1 > 0.0 ? format_full(m2 / m1) : "none");
    }

    // reference bolus velocities from the canonical 4F one-peak dynamics
    {
      GridSpec spec;
      spec.nx = spec.ny = 3;
      spec.nz = 1;
      spec.samples_per_cycle = 408;
      spec.frame_count = 4;
      spec.cycle_time = pair.grid.cycle_time();
      const Grid recon_grid = Grid::make(spec);
      const SplineConcentration four_f =
          one_peak_phantom(OnePeakVariant::four_frame, recon_grid);
      double c_max, cdot_max, t_peak;
      voxel_peak(four_f, 4, recon_grid, c_max, cdot_max, t_peak);
      const BolusVelocity v =
          bolus_velocity(2e-3, 4.0 * recon_grid.cycle_time(), c_max, cdot_max);
      entries.emplace_back("bolus_c_max", format_full(c_max));
      entries.emplace_back("bolus_cdot_max", format_full(cdot_max));
      entries.emplace_back("velocity_average_m_per_s", format_full(v.average));
      entries.emplace_back("velocity_max_m_per_s", format_full(v.peak));
    }
    write_summary(prefix + "_summary.txt", entries);
    return MPD_OK;
  });
}

int mpd_analyze_example(const mpd_config* cfg, int kind, const char* out_prefix) {
  if (!cfg || !out_prefix) return argument_error("mpd_analyze_example: null argument");
  return guarded([&] {
    const RunConfig& rc = cfg->cfg;
    const ExampleConcentration ex =
        example_concentration(kind, rc.grid.samples_per_cycle, rc.scanner.cycle_time);
    const std::string prefix = std::string(out_prefix) + "_example" + std::to_string(kind);
    const int n = rc.grid.samples_per_cycle;

    {
      std::vector<double> times(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j)
        times[static_cast<size_t>(j)] = static_cast<double>(j) * rc.scanner.cycle_time / (n - 1);
      Eigen::MatrixXd values = ex.values, rates = ex.rates;
      export_concentration_csv(prefix + "_curve.csv", times, values, &rates);
    }
    {
      const Eigen::Index half = n / 2 + 1;
      Eigen::VectorXd mc(half), md(half);
      for (Eigen::Index k = 0; k < half; ++k) {
        mc[k] = std::abs(ex.spectrum[k]);
        md[k] = std::abs(ex.rate_spectrum[k]);
      }
      std::ostringstream out;
      out << "bin,frequency_hz,abs_c_hat,abs_dc_hat\n";
      for (Eigen::Index k = 0; k < half; ++k)
        out << k << ',' << format_full(k / rc.scanner.cycle_time) << ',' << format_full(mc[k])
            << ',' << format_full(md[k]) << '\n';
      write_text_atomic(prefix + "_spectrum.csv", out.str());
    }
    const double ratio = ex.rate_spectrum.cwiseAbs().maxCoeff() > 0.0
                             ? ex.spectrum.cwiseAbs().maxCoeff() /
                                   ex.rate_spectrum.cwiseAbs().maxCoeff()
                             : 0.0;
    write_summary(prefix + "_summary.txt",
                  {{"kind", std::to_string(kind)},
                   {"max_abs_c_hat", format_full(ex.spectrum.cwiseAbs().maxCoeff())},
                   {"max_abs_dc_hat", format_full(ex.rate_spectrum.cwiseAbs().maxCoeff())},
                   {"spectral_ratio", format_full(ratio)}});
    return MPD_OK;
  });
}

int mpd_analyze_split(const mpd_system* sys, int kind, const char* out_prefix) {
  if (!sys || !out_prefix) return argument_error("mpd_analyze_split: null argument");
  return guarded([&] {
    const SystemMatrixPair pair =
        sys->pair.has_frequency() ? sys->pair : to_frequency(sys->pair);
    const Grid& grid = pair.grid;
    const ExampleConcentration ex =
        example_concentration(kind, grid.samples_per_cycle(), grid.cycle_time());

    // the example curve applied to every voxel
    SampledConcentration conc;
    conc.values = ex.values.replicate(1, grid.voxel_count());
    conc.rates = ex.rates.replicate(1, grid.voxel_count());

    const Signal full = forward_dynamic_freq(pair, conc);
    const std::string prefix = std::string(out_prefix) + "_split" + std::to_string(kind);
    std::vector<std::pair<std::string, std::string>> entries;
    entries.emplace_back("kind", std::to_string(kind));
    for (size_t c = 0; c < pair.channels.size(); ++c) {
      const Channel channel = pair.channels[c];
      const SplitTerms split = signal_split(pair, conc, channel);
      export_split_csv(prefix + "_" + channel_name(channel) + ".csv", split,
                       1.0 / grid.cycle_time());
      const Eigen::VectorXcd recombined =
          pair.signal_scale * (split.a_sum + split.b_sum);
      const double rel = (recombined - full.spectra[c]).norm() /
                         (full.spectra[c].norm() > 0.0 ? full.spectra[c].norm() : 1.0);
      const std::string ch = channel_name(channel);
      entries.emplace_back("max_voxel_abs_a_" + ch, format_full(split.a.cwiseAbs().maxCoeff()));
      entries.emplace_back("max_voxel_abs_b_" + ch, format_full(split.b.cwiseAbs().maxCoeff()));
      entries.emplace_back("recombination_rel_error_" + ch, format_full(rel));
    }
    write_summary(prefix + "_summary.txt", entries);
    return MPD_OK;
  });
}

}  // extern "C"

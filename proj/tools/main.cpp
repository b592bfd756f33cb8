// Command-line frontend for the mpidyn shared library. Talks to the core
// exclusively through the C API in mpidyn.h.

#include <mpidyn.h>

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

int report(int status, const char* what) {
  if (status != MPD_OK)
    std::fprintf(stderr, "error: %s: %s\n", what, mpd_last_error());
  return status;
}

struct ConfigHandle {
  mpd_config* ptr = nullptr;
  ~ConfigHandle() { mpd_config_free(ptr); }
};
struct SystemHandle {
  mpd_system* ptr = nullptr;
  ~SystemHandle() { mpd_system_free(ptr); }
};
struct PhantomHandle {
  mpd_phantom* ptr = nullptr;
  ~PhantomHandle() { mpd_phantom_free(ptr); }
};
struct SignalHandle {
  mpd_signal* ptr = nullptr;
  ~SignalHandle() { mpd_signal_free(ptr); }
};
struct ReconHandle {
  mpd_recon* ptr = nullptr;
  ~ReconHandle() { mpd_recon_free(ptr); }
};

// Loads the config file when given, otherwise the named profile's defaults,
// then applies command-line overrides.
int make_config(const std::string& config_path, const char* profile,
                const std::vector<std::pair<std::string, std::string>>& overrides,
                ConfigHandle& out) {
  int rc = config_path.empty() ? mpd_config_create(profile, &out.ptr)
                               : mpd_config_load(config_path.c_str(), profile, &out.ptr);
  if (rc != MPD_OK) return report(rc, "loading configuration");
  for (const auto& [key, value] : overrides) {
    rc = mpd_config_set(out.ptr, key.c_str(), value.c_str());
    if (rc != MPD_OK) return report(rc, "applying override");
  }
  return MPD_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mpidyn: dynamic-concentration MPI simulation and reconstruction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mpd_version()));

  std::string config_path, out_path, matrix_path, signal_path, phantom_name, spline_path;
  std::string mode = "parametric", domain = "time", channels;
  bool use_s2 = true;
  int frames = 0, window = 15, example_kind = 0;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "configuration file (key = value sections)");
  };
  auto add_channels = [&](CLI::App* cmd) {
    cmd->add_option("--channels", channels, "receive channels, e.g. xy");
  };

  CLI::App* cmd_defaults = app.add_subcommand(
      "print-defaults", "print the default configuration (reconstruction profile)");
  cmd_defaults->add_option("--out", out_path, "write to a file instead of stdout");

  CLI::App* cmd_build = app.add_subcommand("build-matrix", "sample the system matrix pair");
  add_config(cmd_build);
  add_channels(cmd_build);
  cmd_build->add_option("--out", out_path, "output matrix file")->required();
  cmd_build->add_option("--domain", domain, "time, frequency or both")
      ->check(CLI::IsMember({"time", "frequency", "both"}));

  CLI::App* cmd_sim = app.add_subcommand("simulate", "simulate a dynamic measurement");
  add_config(cmd_sim);
  add_channels(cmd_sim);
  cmd_sim->add_option("--matrix", matrix_path, "system matrix file (built on the fly if absent)");
  cmd_sim->add_option("--phantom", phantom_name,
                      "one-peak-1F, one-peak-2F, one-peak-4F, three-peak or zero");
  cmd_sim->add_option("--spline", spline_path, "spline coefficient file instead of a name");
  cmd_sim->add_option("--frames", frames, "override the frame count");
  cmd_sim->add_option("--out", out_path, "output signal file")->required();

  CLI::App* cmd_rec = app.add_subcommand("reconstruct", "reconstruct a measurement");
  add_config(cmd_rec);
  cmd_rec->add_option("--signal", signal_path, "signal file")->required();
  cmd_rec->add_option("--matrix", matrix_path, "system matrix file")->required();
  cmd_rec->add_option("--mode", mode, "kaczmarz, parametric or frames")
      ->check(CLI::IsMember({"kaczmarz", "parametric", "frames"}));
  cmd_rec->add_flag("--use-s2,!--no-s2", use_s2, "include the dynamic S2 term (default on)");
  cmd_rec->add_option("--out", out_path, "output prefix")->required();

  CLI::App* cmd_an = app.add_subcommand("analyze", "spectral analyses and A/B signal split");
  add_config(cmd_an);
  cmd_an->add_option("--matrix", matrix_path, "system matrix file (built on the fly if absent)");
  cmd_an->add_option("--example", example_kind, "example concentration kind 1..4")
      ->check(CLI::Range(1, 4));
  cmd_an->add_option("--window", window, "hull window in frequency bins");
  cmd_an->add_option("--out", out_path, "output prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return MPD_ERR_ARGUMENT;  // uniform usage-error code
  }

  std::vector<std::pair<std::string, std::string>> overrides;
  if (!channels.empty()) overrides.emplace_back("channels.use", channels);

  if (cmd_defaults->parsed()) {
    ConfigHandle cfg;
    int rc = make_config(config_path, "default", overrides, cfg);
    if (rc != MPD_OK) return rc;
    size_t size = 0;
    mpd_config_text(cfg.ptr, nullptr, &size);
    std::string text(size, '\0');
    rc = mpd_config_text(cfg.ptr, text.data(), &size);
    if (rc != MPD_OK) return report(rc, "serializing defaults");
    text.resize(size - 1);
    if (out_path.empty()) {
      std::fputs(text.c_str(), stdout);
    } else {
      std::FILE* f = std::fopen(out_path.c_str(), "wb");
      if (!f) {
        std::fprintf(stderr, "error: cannot open '%s'\n", out_path.c_str());
        return MPD_ERR_IO;
      }
      std::fputs(text.c_str(), f);
      std::fclose(f);
    }
    return 0;
  }

  if (cmd_build->parsed()) {
    ConfigHandle cfg;
    int rc = make_config(config_path, "spectra", overrides, cfg);
    if (rc != MPD_OK) return rc;
    SystemHandle sys;
    rc = report(mpd_system_build(cfg.ptr, &sys.ptr), "building system matrices");
    if (rc != MPD_OK) return rc;
    const bool with_time = domain != "frequency";
    const bool with_freq = domain != "time";
    if (with_freq) {
      rc = report(mpd_system_with_frequency(sys.ptr), "transforming to frequency domain");
      if (rc != MPD_OK) return rc;
    }
    rc = report(mpd_system_save(sys.ptr, out_path.c_str(), with_time, with_freq),
                "writing matrix file");
    if (rc != MPD_OK) return rc;
    int32_t n_t = 0, voxels = 0, ch = 0;
    mpd_system_dims(sys.ptr, &n_t, &voxels, &ch);
    std::printf("wrote %s: %d x %d per channel (%d channel(s), %s domain)\n", out_path.c_str(),
                n_t, voxels, ch, domain.c_str());
    return 0;
  }

  if (cmd_sim->parsed()) {
    if (phantom_name.empty() == spline_path.empty()) {
      std::fprintf(stderr, "error: simulate needs exactly one of --phantom or --spline\n");
      return MPD_ERR_ARGUMENT;
    }
    if (phantom_name == "three-peak" && frames == 0 && config_path.empty()) frames = 10;
    if (frames > 0) overrides.emplace_back("grid.frames", std::to_string(frames));

    ConfigHandle cfg;
    int rc = make_config(config_path, "default", overrides, cfg);
    if (rc != MPD_OK) return rc;

    PhantomHandle ph;
    if (!spline_path.empty()) {
      rc = report(mpd_phantom_load(spline_path.c_str(), &ph.ptr), "loading spline file");
    } else {
      rc = report(mpd_phantom_create(cfg.ptr, phantom_name.c_str(), &ph.ptr),
                  "creating phantom");
    }
    if (rc != MPD_OK) return rc;

    SystemHandle sys;
    if (!matrix_path.empty()) {
      rc = report(mpd_system_load(matrix_path.c_str(), &sys.ptr), "loading matrix file");
    } else {
      rc = report(mpd_system_build(cfg.ptr, &sys.ptr), "building system matrices");
    }
    if (rc != MPD_OK) return rc;

    SignalHandle sig;
    rc = report(mpd_simulate(sys.ptr, ph.ptr, &sig.ptr), "simulating");
    if (rc != MPD_OK) return rc;
    rc = report(mpd_signal_save(sig.ptr, out_path.c_str()), "writing signal file");
    if (rc != MPD_OK) return rc;
    rc = report(mpd_signal_export_csv(sig.ptr, (out_path + ".csv").c_str()),
                "writing signal CSV");
    if (rc != MPD_OK) return rc;
    int32_t f = 0, n_t = 0, ch = 0;
    mpd_signal_dims(sig.ptr, &f, &n_t, &ch);
    std::printf("wrote %s: %d frame(s) x %d samples, %d channel(s)\n", out_path.c_str(), f, n_t,
                ch);
    return 0;
  }

  if (cmd_rec->parsed()) {
    ConfigHandle cfg;
    int rc = make_config(config_path, "default", overrides, cfg);
    if (rc != MPD_OK) return rc;
    SystemHandle sys;
    rc = report(mpd_system_load(matrix_path.c_str(), &sys.ptr), "loading matrix file");
    if (rc != MPD_OK) return rc;
    SignalHandle sig;
    rc = report(mpd_signal_load(signal_path.c_str(), &sig.ptr), "loading signal file");
    if (rc != MPD_OK) return rc;
    ReconHandle rec;
    rc = report(mpd_reconstruct(sys.ptr, sig.ptr, cfg.ptr, mode.c_str(), use_s2 ? 1 : 0,
                                &rec.ptr),
                "reconstructing");
    if (rc != MPD_OK) return rc;
    rc = report(mpd_recon_export(rec.ptr, out_path.c_str()), "writing reconstruction outputs");
    if (rc != MPD_OK) return rc;
    std::printf("wrote %s_{concentration,frames,residuals}.csv and %s_summary.txt\n",
                out_path.c_str(), out_path.c_str());
    return 0;
  }

  if (cmd_an->parsed()) {
    ConfigHandle cfg;
    int rc = make_config(config_path, "spectra", overrides, cfg);
    if (rc != MPD_OK) return rc;
    SystemHandle sys;
    if (!matrix_path.empty()) {
      rc = report(mpd_system_load(matrix_path.c_str(), &sys.ptr), "loading matrix file");
    } else {
      rc = report(mpd_system_build(cfg.ptr, &sys.ptr), "building system matrices");
    }
    if (rc != MPD_OK) return rc;
    rc = report(mpd_analyze_system(sys.ptr, window, out_path.c_str()), "analyzing spectra");
    if (rc != MPD_OK) return rc;
    if (example_kind > 0) {
      rc = report(mpd_analyze_example(cfg.ptr, example_kind, out_path.c_str()),
                  "analyzing example concentration");
      if (rc != MPD_OK) return rc;
      rc = report(mpd_analyze_split(sys.ptr, example_kind, out_path.c_str()),
                  "computing the A/B split");
      if (rc != MPD_OK) return rc;
    }
    std::printf("wrote analysis tables under prefix %s\n", out_path.c_str());
    return 0;
  }

  return MPD_ERR_ARGUMENT;
}

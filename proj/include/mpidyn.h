/* mpidyn: forward simulation and reconstruction for magnetic particle
 * imaging with time-varying tracer concentrations.
 *
 * C API of the shared library. All objects are opaque handles created and
 * released through these functions; every fallible call returns a status
 * code and leaves a human-readable message in mpd_last_error() on failure.
 */
#ifndef MPIDYN_H
#define MPIDYN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MPD_API __declspec(dllexport)
#else
#define MPD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; they double as CLI exit codes. */
#define MPD_OK 0
#define MPD_ERR_ARGUMENT 1 /* bad arguments / incompatible inputs */
#define MPD_ERR_IO 2       /* file system or parse failures */
#define MPD_ERR_NUMERIC 3  /* numerical failure (divergence, ...) */

typedef struct mpd_config mpd_config;
typedef struct mpd_system mpd_system;
typedef struct mpd_phantom mpd_phantom;
typedef struct mpd_signal mpd_signal;
typedef struct mpd_recon mpd_recon;

MPD_API const char* mpd_version(void);
/* Message of the most recent failure on this thread; empty string if none. */
MPD_API const char* mpd_last_error(void);

/* ---- configuration ----------------------------------------------------- */

/* profile: "default" (3x3x1 grid, 408 samples/cycle, 4 frames) or
 * "spectra" (19x19x1 grid, 1632 samples/cycle, 1 frame). */
MPD_API int mpd_config_create(const char* profile, mpd_config** out);
/* Parses a key-value config file on top of the given profile's defaults. */
MPD_API int mpd_config_load(const char* path, const char* profile, mpd_config** out);
MPD_API int mpd_config_set(mpd_config* cfg, const char* dotted_key, const char* value);
/* Serializes the config. Two-call protocol: pass buffer = NULL to query the
 * required size (including the terminating NUL) in *size. */
MPD_API int mpd_config_text(const mpd_config* cfg, char* buffer, size_t* size);
MPD_API void mpd_config_free(mpd_config* cfg);

/* ---- system matrices ---------------------------------------------------- */

MPD_API int mpd_system_build(const mpd_config* cfg, mpd_system** out);
/* Adds the frequency-domain matrices (columnwise DFT) in place. */
MPD_API int mpd_system_with_frequency(mpd_system* sys);
MPD_API int mpd_system_save(const mpd_system* sys, const char* path, int with_time,
                            int with_frequency);
MPD_API int mpd_system_load(const char* path, mpd_system** out);
MPD_API int mpd_system_dims(const mpd_system* sys, int32_t* samples_per_cycle, int32_t* voxels,
                            int32_t* channels);
MPD_API void mpd_system_free(mpd_system* sys);

/* ---- phantoms ----------------------------------------------------------- */

/* name: "one-peak-1F", "one-peak-2F", "one-peak-4F", "three-peak", "zero".
 * The named phantoms require the 3x3x1 reconstruction grid with the matching
 * frame count (4 for one-peak, 10 for three-peak). */
MPD_API int mpd_phantom_create(const mpd_config* cfg, const char* name, mpd_phantom** out);
MPD_API int mpd_phantom_load(const char* path, mpd_phantom** out);
MPD_API int mpd_phantom_save(const mpd_phantom* ph, const char* path);
MPD_API int mpd_phantom_export_csv(const mpd_phantom* ph, const char* path);
/* Peak statistics of one voxel (1-based index): max c, max |dc/dt|, argmax t. */
MPD_API int mpd_phantom_stats(const mpd_phantom* ph, int32_t voxel, double* c_max,
                              double* cdot_max, double* t_peak);
MPD_API void mpd_phantom_free(mpd_phantom* ph);

/* ---- signals ------------------------------------------------------------ */

/* Simulates the dynamic forward model; refuses grid-mismatched inputs. */
MPD_API int mpd_simulate(const mpd_system* sys, const mpd_phantom* ph, mpd_signal** out);
MPD_API int mpd_signal_save(const mpd_signal* sig, const char* path);
MPD_API int mpd_signal_load(const char* path, mpd_signal** out);
MPD_API int mpd_signal_export_csv(const mpd_signal* sig, const char* path);
MPD_API int mpd_signal_dims(const mpd_signal* sig, int32_t* frames, int32_t* samples_per_cycle,
                            int32_t* channels);
/* Copies one channel's time samples (frames * samples_per_cycle values). */
MPD_API int mpd_signal_copy_channel(const mpd_signal* sig, int32_t channel_index, double* out,
                                    int64_t capacity);
MPD_API void mpd_signal_free(mpd_signal* sig);

/* ---- reconstruction ------------------------------------------------------ */

/* mode: "kaczmarz" (per-frame static Kaczmarz), "parametric" (spline
 * coefficients via CG), "frames" (per-frame gradient descent with the
 * divided-difference coupling). use_s2 toggles the dynamic term where it
 * applies. */
MPD_API int mpd_reconstruct(const mpd_system* sys, const mpd_signal* sig, const mpd_config* cfg,
                            const char* mode, int use_s2, mpd_recon** out);
MPD_API int mpd_recon_info(const mpd_recon* rec, int32_t* rows, int32_t* voxels);
/* Channel-averaged concentration, row-major rows x voxels. */
MPD_API int mpd_recon_copy_values(const mpd_recon* rec, double* out, int64_t capacity);
/* Writes <prefix>_concentration.csv, <prefix>_frames.csv,
 * <prefix>_residuals.csv and <prefix>_summary.txt. */
MPD_API int mpd_recon_export(const mpd_recon* rec, const char* out_prefix);
MPD_API void mpd_recon_free(mpd_recon* rec);

/* ---- analyses ------------------------------------------------------------ */

/* Max-over-voxel spectra, hull approximation, peak spacing/FWHM and the
 * reference bolus velocities; writes per-matrix CSV tables and a key-value
 * summary under the prefix. */
MPD_API int mpd_analyze_system(const mpd_system* sys, int window, const char* out_prefix);
/* The four example concentration dynamics (kind = 1..4) with their spectra. */
MPD_API int mpd_analyze_example(const mpd_config* cfg, int kind, const char* out_prefix);
/* A/B split of the dynamic forward model for an example concentration applied
 * to every voxel of the system's grid. */
MPD_API int mpd_analyze_split(const mpd_system* sys, int kind, const char* out_prefix);

#ifdef __cplusplus
}
#endif

#endif /* MPIDYN_H */

#pragma once

#include "mpidyn/types.hpp"

#include <cstdint>
#include <vector>

namespace mpidyn {

struct GridSpec {
  int nx = 19, ny = 19, nz = 1;
  Eigen::Vector3d voxel_size{0.0107, 0.0107, 0.0107};  // [m]
  int samples_per_cycle = 1632;                        // n_T
  int frame_count = 1;                                 // F
  double cycle_time = 652.8e-6;                        // T_c [s]
};

/// Voxel grid centered on the origin plus two-level time sampling:
/// t_j = (j-1) T_c/(n_T-1) within a cycle and tau_j = (j-1) F T_c/(F n_T - 1)
/// across the record. Indices are 0-based internally; file headers and docs
/// speak 1-based to match the r_1..r_9 voxel labels.
class Grid {
 public:
  static Grid make(const GridSpec& spec);

  int nx() const { return spec_.nx; }
  int ny() const { return spec_.ny; }
  int nz() const { return spec_.nz; }
  int voxel_count() const { return spec_.nx * spec_.ny * spec_.nz; }
  int samples_per_cycle() const { return spec_.samples_per_cycle; }
  int frame_count() const { return spec_.frame_count; }
  int record_length() const { return spec_.frame_count * spec_.samples_per_cycle; }
  double cycle_time() const { return spec_.cycle_time; }
  const Eigen::Vector3d& voxel_size() const { return spec_.voxel_size; }
  double voxel_volume() const {
    return spec_.voxel_size.x() * spec_.voxel_size.y() * spec_.voxel_size.z();
  }
  Eigen::Vector3d extent() const {  // derived FOV, n * voxel size
    return Eigen::Vector3d(spec_.nx * spec_.voxel_size.x(), spec_.ny * spec_.voxel_size.y(),
                           spec_.nz * spec_.voxel_size.z());
  }
  const GridSpec& spec() const { return spec_; }

  /// Voxel center, 0-based index, x fastest: i = ix + nx*(iy + ny*iz).
  Eigen::Vector3d voxel_center(int i) const;
  const std::vector<Eigen::Vector3d>& voxel_centers() const { return centers_; }

  /// Cycle-local sample time t_j (0-based j in [0, n_T)); the endpoints land
  /// on 0 and T_c exactly.
  double cycle_time_sample(int j) const {
    if (j == spec_.samples_per_cycle - 1) return spec_.cycle_time;
    return static_cast<double>(j) * spec_.cycle_time / (spec_.samples_per_cycle - 1);
  }
  /// Multi-frame record time tau_j (0-based j in [0, F*n_T)); the endpoints
  /// land on 0 and F*T_c exactly.
  double record_time_sample(int j) const {
    if (j == record_length() - 1) return spec_.frame_count * spec_.cycle_time;
    return static_cast<double>(j) * spec_.frame_count * spec_.cycle_time /
           (record_length() - 1);
  }
  std::vector<double> cycle_times() const;
  std::vector<double> record_times() const;

  /// 0-based cycle-local index for a 0-based record index.
  int cycle_local_index(int j) const { return j % spec_.samples_per_cycle; }

  /// Frequency of DFT bin k over one cycle [Hz].
  double bin_frequency(int k) const { return static_cast<double>(k) / spec_.cycle_time; }

  /// FNV-1a hash over the defining parameters; stored in every file header so
  /// mismatched matrices/phantoms/signals are refused.
  std::uint64_t hash() const;

 private:
  GridSpec spec_;
  std::vector<Eigen::Vector3d> centers_;
};

/// Per-cycle sample-index wrap, 1-based on both sides: j in [1, F*n_T] maps to
/// [1, n_T] with j = n_T landing on n_T and j = n_T + 1 back on 1.
int frame_time_index(int j, int samples_per_cycle, int frame_count);

}  // namespace mpidyn

#include "mpidyn/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace mpidyn {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a number, got '" + v + "'");
  }
}

int parse_int(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected an integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(where + ": expected true/false, got '" + v + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto dbl = [](double ScannerConfig::* field) {
      return [field](RunConfig& c, const std::string& v, const std::string& w) {
        c.scanner.*field = parse_double(v, w);
      };
    };
    auto vec3 = [](Eigen::Vector3d ScannerConfig::* field, int axis) {
      return [field, axis](RunConfig& c, const std::string& v, const std::string& w) {
        (c.scanner.*field)[axis] = parse_double(v, w);
      };
    };
    for (int l = 0; l < 3; ++l) {
      const std::string axis(1, "xyz"[l]);
      t["scanner.amplitude_" + axis] = vec3(&ScannerConfig::amplitude, l);
      t["scanner.frequency_" + axis] = vec3(&ScannerConfig::frequency, l);
      t["scanner.phase_" + axis] = vec3(&ScannerConfig::phase, l);
      t["scanner.gradient_" + axis] = vec3(&ScannerConfig::gradient, l);
    }
    t["scanner.cycle_time"] = dbl(&ScannerConfig::cycle_time);

    t["particle.temperature"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.particle.temperature = parse_double(v, w);
    };
    t["particle.saturation_magnetization"] = [](RunConfig& c, const std::string& v,
                                                const std::string& w) {
      c.particle.saturation_magnetization = parse_double(v, w);
    };
    t["particle.core_diameter"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.particle.core_diameter = parse_double(v, w);
    };

    t["grid.nx"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.grid.nx = parse_int(v, w);
    };
    t["grid.ny"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.grid.ny = parse_int(v, w);
    };
    t["grid.nz"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.grid.nz = parse_int(v, w);
    };
    for (int l = 0; l < 3; ++l) {
      const std::string axis(1, "xyz"[l]);
      t["grid.voxel_" + axis] = [l](RunConfig& c, const std::string& v, const std::string& w) {
        c.grid.voxel_size[l] = parse_double(v, w);
      };
    }
    t["grid.samples_per_cycle"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.grid.samples_per_cycle = parse_int(v, w);
    };
    t["grid.frames"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.grid.frame_count = parse_int(v, w);
    };

    t["phantom.spans_per_frame"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.phantom.spans_per_frame = parse_int(v, w);
    };

    t["recon.cg_iterations"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.recon.cg_iterations = parse_int(v, w);
    };
    t["recon.gd_iterations"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.recon.gd_iterations = parse_int(v, w);
    };
    t["recon.kaczmarz_sweeps"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.recon.kaczmarz_sweeps = parse_int(v, w);
    };
    t["recon.tikhonov"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.recon.tikhonov = parse_double(v, w);
    };
    t["recon.spans_per_frame"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.recon.spans_per_frame = parse_int(v, w);
    };
    t["recon.frame_dt"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.recon.frame_dt = parse_double(v, w);
    };
    t["recon.joint_channels"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      c.recon.joint_channels = parse_bool(v, w);
    };

    t["channels.use"] = [](RunConfig& c, const std::string& v, const std::string& w) {
      try {
        c.channels = parse_channels(v);
      } catch (const ConfigError& e) {
        throw ConfigError(w + ": " + e.what());
      }
    };
    return t;
  }();
  return table;
}

}  // namespace

std::vector<Channel> parse_channels(const std::string& text) {
  std::vector<Channel> out;
  for (char ch : text) {
    switch (std::tolower(static_cast<unsigned char>(ch))) {
      case 'x': out.push_back(Channel::x); break;
      case 'y': out.push_back(Channel::y); break;
      case 'z': out.push_back(Channel::z); break;
      case ',': case ' ': break;
      default:
        throw ConfigError(std::string("unknown channel '") + ch + "' (use x, y, z)");
    }
  }
  if (out.empty()) throw ConfigError("channel list is empty");
  return out;
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.grid.nx = cfg.grid.ny = 3;
  cfg.grid.nz = 1;
  cfg.grid.samples_per_cycle = 408;
  cfg.grid.frame_count = 4;
  cfg.grid.cycle_time = cfg.scanner.cycle_time;
  return cfg;
}

RunConfig spectra_config() {
  RunConfig cfg;
  cfg.grid.nx = cfg.grid.ny = 19;
  cfg.grid.nz = 1;
  cfg.grid.samples_per_cycle = 1632;
  cfg.grid.frame_count = 1;
  cfg.grid.cycle_time = cfg.scanner.cycle_time;
  return cfg;
}

RunConfig parse_config(const std::string& text, const std::string& origin,
                       const RunConfig& defaults) {
  RunConfig cfg = defaults;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (section.empty()) throw ConfigError(where + ": key outside any [section]");
    const std::string dotted = section + "." + key;
    const auto it = setters().find(dotted);
    if (it == setters().end()) throw ConfigError(where + ": unknown key '" + dotted + "'");
    it->second(cfg, value, where);
  }
  // the grid's cycle time always follows the scanner
  cfg.grid.cycle_time = cfg.scanner.cycle_time;
  return cfg;
}

RunConfig load_config(const std::string& path, const RunConfig& defaults) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path, defaults);
}

void apply_override(RunConfig& cfg, const std::string& dotted_key, const std::string& value) {
  const auto it = setters().find(dotted_key);
  if (it == setters().end()) throw ConfigError("unknown config key '" + dotted_key + "'");
  it->second(cfg, value, dotted_key);
  cfg.grid.cycle_time = cfg.scanner.cycle_time;
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[scanner]\n";
  const char* axes = "xyz";
  for (int l = 0; l < 3; ++l)
    out << "amplitude_" << axes[l] << " = " << format_double(cfg.scanner.amplitude[l]) << "\n";
  for (int l = 0; l < 3; ++l)
    out << "frequency_" << axes[l] << " = " << format_double(cfg.scanner.frequency[l]) << "\n";
  for (int l = 0; l < 3; ++l)
    out << "phase_" << axes[l] << " = " << format_double(cfg.scanner.phase[l]) << "\n";
  for (int l = 0; l < 3; ++l)
    out << "gradient_" << axes[l] << " = " << format_double(cfg.scanner.gradient[l]) << "\n";
  out << "cycle_time = " << format_double(cfg.scanner.cycle_time) << "\n";
  out << "\n[particle]\n";
  out << "temperature = " << format_double(cfg.particle.temperature) << "\n";
  out << "saturation_magnetization = " << format_double(cfg.particle.saturation_magnetization)
      << "\n";
  out << "core_diameter = " << format_double(cfg.particle.core_diameter) << "\n";
  out << "\n[grid]\n";
  out << "nx = " << cfg.grid.nx << "\nny = " << cfg.grid.ny << "\nnz = " << cfg.grid.nz << "\n";
  for (int l = 0; l < 3; ++l)
    out << "voxel_" << axes[l] << " = " << format_double(cfg.grid.voxel_size[l]) << "\n";
  out << "samples_per_cycle = " << cfg.grid.samples_per_cycle << "\n";
  out << "frames = " << cfg.grid.frame_count << "\n";
  out << "\n[phantom]\n";
  out << "spans_per_frame = " << cfg.phantom.spans_per_frame << "\n";
  out << "\n[recon]\n";
  out << "cg_iterations = " << cfg.recon.cg_iterations << "\n";
  out << "gd_iterations = " << cfg.recon.gd_iterations << "\n";
  out << "kaczmarz_sweeps = " << cfg.recon.kaczmarz_sweeps << "\n";
  out << "tikhonov = " << format_double(cfg.recon.tikhonov) << "\n";
  out << "spans_per_frame = " << cfg.recon.spans_per_frame << "\n";
  out << "frame_dt = " << format_double(cfg.recon.frame_dt) << "\n";
  out << "joint_channels = " << (cfg.recon.joint_channels ? "true" : "false") << "\n";
  out << "\n[channels]\n";
  out << "use = ";
  for (Channel c : cfg.channels) out << channel_name(c);
  out << "\n";
  return out.str();
}

}  // namespace mpidyn

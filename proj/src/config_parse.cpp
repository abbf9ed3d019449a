#include "reulab/config_parse.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "reulab/csv.hpp"

namespace reulab {

std::string kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::single_run: return "single-run";
    case ScenarioKind::delta_study: return "delta-study";
    case ScenarioKind::rotation_sweep: return "rotation-sweep";
    case ScenarioKind::strichartz: return "strichartz";
    case ScenarioKind::verify_lemmas: return "verify-lemmas";
  }
  return "?";
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool consumed = false;
};

using EntryMap = std::map<std::string, Entry>;  // "section.key" -> entry

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

EntryMap tokenize(const std::string& text) {
  EntryMap entries;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    }
    if (section.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": key '" + key +
                        "' outside any [section]");
    }
    const std::string full = section + "." + key;
    auto it = entries.find(full);
    if (it != entries.end()) {
      throw ConfigError("config: duplicate key '" + full + "' at lines " +
                        std::to_string(it->second.line) + " and " + std::to_string(lineno));
    }
    entries[full] = Entry{value, lineno, false};
  }
  return entries;
}

class Reader {
 public:
  explicit Reader(EntryMap entries) : entries_(std::move(entries)) {}

  bool has(const std::string& full) const { return entries_.count(full) > 0; }

  std::string require_string(const std::string& full) {
    Entry* e = find(full);
    if (!e) throw ConfigError("config: missing required key '" + full + "'");
    return e->value;
  }

  std::string get_string(const std::string& full, const std::string& fallback) {
    Entry* e = find(full);
    return e ? e->value : fallback;
  }

  double get_double(const std::string& full, double fallback) {
    Entry* e = find(full);
    if (!e) return fallback;
    return parse_number(e->value, full, e->line);
  }

  long get_int(const std::string& full, long fallback) {
    Entry* e = find(full);
    if (!e) return fallback;
    const double v = parse_number(e->value, full, e->line);
    const long r = static_cast<long>(v);
    if (static_cast<double>(r) != v) {
      throw ConfigError("config line " + std::to_string(e->line) + ": key '" + full +
                        "' expects an integer, got '" + e->value + "'");
    }
    return r;
  }

  std::uint64_t get_u64(const std::string& full, std::uint64_t fallback) {
    Entry* e = find(full);
    if (!e) return fallback;
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(e->value, &used);
      if (used != e->value.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config line " + std::to_string(e->line) + ": key '" + full +
                        "' expects an unsigned integer, got '" + e->value + "'");
    }
  }

  bool get_bool(const std::string& full, bool fallback) {
    Entry* e = find(full);
    if (!e) return fallback;
    if (e->value == "on" || e->value == "true" || e->value == "1") return true;
    if (e->value == "off" || e->value == "false" || e->value == "0") return false;
    throw ConfigError("config line " + std::to_string(e->line) + ": key '" + full +
                      "' expects on/off, got '" + e->value + "'");
  }

  std::vector<double> get_double_list(const std::string& full) {
    Entry* e = find(full);
    if (!e) return {};
    std::vector<double> out;
    std::stringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) {
        throw ConfigError("config line " + std::to_string(e->line) + ": key '" + full +
                          "' has an empty list element");
      }
      out.push_back(parse_number(item, full, e->line));
    }
    if (out.empty()) {
      throw ConfigError("config line " + std::to_string(e->line) + ": key '" + full +
                        "' expects a comma-separated list");
    }
    return out;
  }

  int line_of(const std::string& full) const {
    auto it = entries_.find(full);
    return it == entries_.end() ? 0 : it->second.line;
  }

  // Every key must have been consumed by the schema.
  void finish() const {
    for (const auto& [full, entry] : entries_) {
      if (!entry.consumed) {
        throw ConfigError("config line " + std::to_string(entry.line) + ": unknown key '" + full +
                          "'");
      }
    }
  }

 private:
  Entry* find(const std::string& full) {
    auto it = entries_.find(full);
    if (it == entries_.end()) return nullptr;
    it->second.consumed = true;
    return &it->second;
  }

  static double parse_number(const std::string& value, const std::string& full, int line) {
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config line " + std::to_string(line) + ": key '" + full +
                        "' expects a number, got '" + value + "'");
    }
  }

  EntryMap entries_;
};

bool filesystem_safe(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

ScenarioKind parse_kind(const std::string& value, int line) {
  if (value == "single-run") return ScenarioKind::single_run;
  if (value == "delta-study") return ScenarioKind::delta_study;
  if (value == "rotation-sweep") return ScenarioKind::rotation_sweep;
  if (value == "strichartz") return ScenarioKind::strichartz;
  if (value == "verify-lemmas") return ScenarioKind::verify_lemmas;
  throw ConfigError("config line " + std::to_string(line) + ": unknown kind '" + value + "'");
}

}  // namespace

ScenarioSpec parse_config(const std::string& text) {
  Reader reader(tokenize(text));
  ScenarioSpec spec;

  spec.name = reader.require_string("scenario.name");
  if (!filesystem_safe(spec.name)) {
    throw ConfigError("config line " + std::to_string(reader.line_of("scenario.name")) +
                      ": scenario name must be nonempty and filesystem-safe");
  }
  spec.kind = parse_kind(reader.require_string("scenario.kind"), reader.line_of("scenario.kind"));
  spec.outputs = reader.get_string("scenario.outputs", "out/" + spec.name);

  spec.solver.n = static_cast<int>(reader.get_int("solver.n", spec.solver.n));
  spec.solver.box_size = reader.get_double("solver.box_size", spec.solver.box_size);
  spec.solver.omega = reader.get_double("solver.omega", spec.solver.omega);
  spec.solver.delta = reader.get_double("solver.delta", spec.solver.delta);
  spec.solver.dt = reader.get_double("solver.dt", spec.solver.dt);
  spec.solver.t_end = reader.get_double("solver.t_end", spec.solver.t_end);
  spec.solver.cfl_max = reader.get_double("solver.cfl_max", spec.solver.cfl_max);
  spec.solver.dealias = reader.get_bool("solver.dealias", spec.solver.dealias);
  spec.solver.enable_nonlinear =
      reader.get_bool("solver.nonlinear", spec.solver.enable_nonlinear);
  spec.solver.snapshot_stride =
      static_cast<int>(reader.get_int("solver.snapshot_stride", spec.solver.snapshot_stride));
  spec.solver.bkm_increment_ceiling =
      reader.get_double("solver.bkm_ceiling", spec.solver.bkm_increment_ceiling);
  {
    const std::string scheme = reader.get_string("solver.scheme", "ifrk4");
    if (scheme == "ifrk4") {
      spec.solver.scheme = Scheme::ifrk4;
    } else if (scheme == "picard") {
      spec.solver.scheme = Scheme::picard;
    } else {
      throw ConfigError("config line " + std::to_string(reader.line_of("solver.scheme")) +
                        ": unknown scheme '" + scheme + "'");
    }
  }

  spec.data.generator = reader.get_string("data.generator", spec.data.generator);
  if (spec.data.generator != "taylor-green" && spec.data.generator != "beltrami" &&
      spec.data.generator != "random" && spec.data.generator != "coherent-shell") {
    throw ConfigError("config line " + std::to_string(reader.line_of("data.generator")) +
                      ": unknown generator '" + spec.data.generator + "'");
  }
  spec.data.amplitude = reader.get_double("data.amplitude", spec.data.amplitude);
  spec.data.seed = reader.get_u64("data.seed", spec.data.seed);
  spec.data.k0 = reader.get_double("data.k0", spec.data.k0);
  spec.data.kvec[0] = static_cast<int>(reader.get_int("data.kx", spec.data.kvec[0]));
  spec.data.kvec[1] = static_cast<int>(reader.get_int("data.ky", spec.data.kvec[1]));
  spec.data.kvec[2] = static_cast<int>(reader.get_int("data.kz", spec.data.kvec[2]));
  spec.data.helicity = static_cast<int>(reader.get_int("data.helicity", spec.data.helicity));
  spec.data.shell = static_cast<int>(reader.get_int("data.shell", spec.data.shell));

  switch (spec.kind) {
    case ScenarioKind::delta_study:
      if (!reader.has("delta-study.deltas")) {
        throw ConfigError("config: kind delta-study requires key 'delta-study.deltas'");
      }
      spec.deltas = reader.get_double_list("delta-study.deltas");
      break;
    case ScenarioKind::rotation_sweep:
      if (!reader.has("rotation-sweep.omegas")) {
        throw ConfigError("config: kind rotation-sweep requires key 'rotation-sweep.omegas'");
      }
      spec.sweep_omegas = reader.get_double_list("rotation-sweep.omegas");
      spec.u_threshold = reader.get_double("rotation-sweep.u_threshold", spec.u_threshold);
      break;
    case ScenarioKind::strichartz:
      if (!reader.has("strichartz.omegas")) {
        throw ConfigError("config: kind strichartz requires key 'strichartz.omegas'");
      }
      spec.strichartz_omegas = reader.get_double_list("strichartz.omegas");
      spec.strichartz_r = reader.get_double("strichartz.r", spec.strichartz_r);
      spec.strichartz_shell =
          static_cast<int>(reader.get_int("strichartz.shell", spec.strichartz_shell));
      spec.strichartz_horizon =
          reader.get_double("strichartz.horizon", spec.strichartz_horizon);
      break;
    case ScenarioKind::verify_lemmas:
      spec.ensemble = static_cast<int>(reader.get_int("verify-lemmas.ensemble", spec.ensemble));
      break;
    case ScenarioKind::single_run:
      break;
  }

  reader.finish();

  try {
    spec.solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return spec;
}

ScenarioSpec parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

namespace {
std::string double_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += csv::format_double(xs[i]);
  }
  return out;
}
}  // namespace

std::string render_config(const ScenarioSpec& spec) {
  std::ostringstream out;
  out << "[scenario]\n";
  out << "name = " << spec.name << "\n";
  out << "kind = " << kind_name(spec.kind) << "\n";
  out << "outputs = " << spec.outputs << "\n\n";

  out << "[solver]\n";
  out << "n = " << spec.solver.n << "\n";
  out << "box_size = " << csv::format_double(spec.solver.box_size) << "\n";
  out << "omega = " << csv::format_double(spec.solver.omega) << "\n";
  out << "delta = " << csv::format_double(spec.solver.delta) << "\n";
  out << "dt = " << csv::format_double(spec.solver.dt) << "\n";
  out << "t_end = " << csv::format_double(spec.solver.t_end) << "\n";
  out << "scheme = " << (spec.solver.scheme == Scheme::ifrk4 ? "ifrk4" : "picard") << "\n";
  out << "dealias = " << (spec.solver.dealias ? "on" : "off") << "\n";
  out << "nonlinear = " << (spec.solver.enable_nonlinear ? "on" : "off") << "\n";
  out << "cfl_max = " << csv::format_double(spec.solver.cfl_max) << "\n";
  out << "snapshot_stride = " << spec.solver.snapshot_stride << "\n";
  out << "bkm_ceiling = " << csv::format_double(spec.solver.bkm_increment_ceiling) << "\n\n";

  out << "[data]\n";
  out << "generator = " << spec.data.generator << "\n";
  out << "amplitude = " << csv::format_double(spec.data.amplitude) << "\n";
  out << "seed = " << spec.data.seed << "\n";
  out << "k0 = " << csv::format_double(spec.data.k0) << "\n";
  out << "kx = " << spec.data.kvec[0] << "\n";
  out << "ky = " << spec.data.kvec[1] << "\n";
  out << "kz = " << spec.data.kvec[2] << "\n";
  out << "helicity = " << spec.data.helicity << "\n";
  out << "shell = " << spec.data.shell << "\n";

  switch (spec.kind) {
    case ScenarioKind::delta_study:
      out << "\n[delta-study]\n";
      out << "deltas = " << double_list(spec.deltas) << "\n";
      break;
    case ScenarioKind::rotation_sweep:
      out << "\n[rotation-sweep]\n";
      out << "omegas = " << double_list(spec.sweep_omegas) << "\n";
      out << "u_threshold = " << csv::format_double(spec.u_threshold) << "\n";
      break;
    case ScenarioKind::strichartz:
      out << "\n[strichartz]\n";
      out << "omegas = " << double_list(spec.strichartz_omegas) << "\n";
      out << "r = " << csv::format_double(spec.strichartz_r) << "\n";
      out << "shell = " << spec.strichartz_shell << "\n";
      out << "horizon = " << csv::format_double(spec.strichartz_horizon) << "\n";
      break;
    case ScenarioKind::verify_lemmas:
      out << "\n[verify-lemmas]\n";
      out << "ensemble = " << spec.ensemble << "\n";
      break;
    case ScenarioKind::single_run:
      break;
  }
  return out.str();
}

}  // namespace reulab

#include "fockcalc/run_config.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace fockcalc {

double RunConfig::tol(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

void RunConfig::apply_line(const std::string& key, const std::string& value) {
  if (key == "d")
    d = std::stoi(value);
  else if (key == "N")
    N = std::stoi(value);
  else if (key == "Q")
    Q = std::stoi(value);
  else if (key == "R")
    R = std::stod(value);
  else if (key == "h")
    h = std::stod(value);
  else if (key == "seed")
    seed = std::stoull(value);
  else if (key == "preset")
    preset = value;
  else if (key == "t")
    t_text = value;
  else if (key == "out")
    out_dir = value;
  else if (key.rfind("tol.", 0) == 0)
    tolerances[key.substr(4)] = std::stod(value);
  else
    throw std::invalid_argument("config: unknown key " + key);
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  RunConfig cfg;
  std::string line;
  while (std::getline(is, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) cfg.apply_line(key, value);
  }
  return cfg;
}

std::string RunConfig::canonical_json() const {
  nlohmann::json j;
  j["d"] = d;
  j["N"] = N;
  j["Q"] = effective_Q();
  j["R"] = R;
  j["h"] = h;
  j["seed"] = seed;
  j["preset"] = preset;
  j["t"] = t_text;
  nlohmann::json t;
  for (const auto& [k, v] : tolerances) t[k] = v;
  j["tol"] = t;
  return j.dump();
}

}  // namespace fockcalc

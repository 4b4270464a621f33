#include "cantorval/config.hpp"

#include <fstream>
#include <sstream>

#include "cantorval/errors.hpp"

namespace cantorval {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Options load_config(const std::string& path, Options base) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::SyntaxError, path + ":" + std::to_string(lineno) +
                                       ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "bound") base.bound = std::stoi(value);
      else if (key == "samples") base.samples = std::stoll(value);
      else if (key == "burn_in") base.burn_in = std::stoll(value);
      else if (key == "seed") base.seed = std::stoull(value);
      else if (key == "bin_width") base.bin_width = std::stod(value);
      else if (key == "hull_eps") base.hull_eps = std::stod(value);
      else if (key == "power_tol") base.power_tol = std::stod(value);
      else if (key == "dim_tolerance") base.dim_tolerance = std::stod(value);
      else if (key == "length_cap") base.length_cap = std::stoll(value);
      else if (key == "node_cap") base.node_cap = std::stoi(value);
      else if (key == "witness_samples") base.witness_samples = std::stoll(value);
      else if (key == "witness_tol") base.witness_tol = std::stod(value);
      else
        fail(ErrorCode::SyntaxError,
             path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(ErrorCode::SyntaxError, path + ":" + std::to_string(lineno) +
                                       ": bad value for '" + key + "'");
    }
  }
  return base;
}

}  // namespace cantorval

#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nltl::testing {

inline std::string spec_path(const std::string& name) { return std::string(NLTL_SPEC_DIR) + "/" + name; }

inline std::string read_spec(const std::string& name) {
  std::ifstream in(spec_path(name));
  if (!in) throw std::runtime_error("cannot open " + spec_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace nltl::testing

#pragma once

// Configuration file format: a JSON array of [x, y] pairs where each
// coordinate is a string "num/den" (or a bare integer string).  JSON number
// literals are rejected: they would be parsed through double and lose
// exactness.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "heilbronn/config_verifier.hpp"

namespace heilbronn {

inline RationalConfig parse_config_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_array())
    throw ConfigError("config must be a JSON array of [x, y] pairs");

  RationalConfig config;
  int index = 0;
  for (const auto& entry : doc) {
    if (!entry.is_array() || entry.size() != 2)
      throw ConfigError("point " + std::to_string(index) +
                            " is not an [x, y] pair",
                        index);
    RationalPoint pt;
    for (int axis = 0; axis < 2; ++axis) {
      const auto& coord = entry[axis];
      if (!coord.is_string())
        throw ConfigError("point " + std::to_string(index) +
                              ": coordinates must be exact strings like "
                              "\"num/den\"; numeric literals are rejected",
                          index);
      try {
        (axis == 0 ? pt.x : pt.y) = parse_rational(coord.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError("point " + std::to_string(index) + ": " + e.what(),
                          index);
      }
    }
    config.points.push_back(std::move(pt));
    ++index;
  }
  return config;
}

inline RationalConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_json(buf.str());
}

}  // namespace heilbronn

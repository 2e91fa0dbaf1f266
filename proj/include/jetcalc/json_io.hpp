#pragma once

#include <string>
#include <vector>

#include "jetcalc/rational.hpp"

namespace jetcalc {

// Hand-rolled JSON fragments: the CLI output format is byte-stable, with
// ", " between items and ": " after keys. Integer rationals render as bare
// JSON numbers, non-integers as quoted "p/q" strings.
inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string json_string(const std::string& s) { return "\"" + json_escape(s) + "\""; }

inline std::string json_rat(const Rat& r) {
  return r.is_integer() ? r.str() : json_string(r.str());
}

inline std::string json_rat_array(const std::vector<Rat>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += json_rat(xs[i]);
  }
  return out + "]";
}

// key/value pairs already rendered as JSON fragments
inline std::string json_object(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out = "{";
  for (std::size_t i = 0; i < kv.size(); ++i) {
    if (i) out += ", ";
    out += json_string(kv[i].first) + ": " + kv[i].second;
  }
  return out + "}";
}

}  // namespace jetcalc

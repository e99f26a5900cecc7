#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include <ccnorm/ccnorm.hpp>

namespace ccnorm::cli {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double parse_real(const std::string& s, const std::string& what) {
  double x = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
  if (b < e && *b == '+') ++b;
  const auto [p, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || p != e || b == e) throw ParseError("bad number for " + what + ": '" + s + "'");
  return x;
}

inline Weight weight_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ParseError("weight JSON needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") return Weight::power(j.at("alpha").get<double>());
  if (kind == "list") return Weight::list(j.at("values").get<std::vector<double>>());
  throw ParseError("unknown weight kind '" + kind + "'");
}

inline json weight_to_json(const Weight& w) {
  if (w.is_power()) return {{"kind", "power"}, {"alpha", w.alpha()}};
  return {{"kind", "list"}, {"values", w.values()}};
}

// one value per line; blank lines and '#' comments skipped, and a
// non-numeric first line is taken as a header
inline std::vector<double> read_list_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::vector<double> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    while (!line.empty() && (line.back() == ',' || line.back() == '\r')) line.pop_back();
    const bool header = first && line.find_first_of("0123456789") == std::string::npos;
    first = false;
    if (header) continue;
    out.push_back(parse_real(line, path));
  }
  return out;
}

struct WeightSpec {
  Weight weight = Weight::power(0.0);
  bool pair = false;  // powerpair:a
};

// power:<a> | powerpair:<a> | list:<file.csv> | json:<file.json>
inline WeightSpec parse_weight_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("weight spec needs kind:value, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  try {
    if (kind == "power") return {Weight::power(parse_real(arg, "power")), false};
    if (kind == "powerpair") return {Weight::power(parse_real(arg, "powerpair")), true};
    if (kind == "list") return {Weight::list(read_list_csv(arg)), false};
    if (kind == "json") {
      std::ifstream in(arg);
      if (!in) throw ParseError("cannot open '" + arg + "'");
      return {weight_from_json(json::parse(in)), false};
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad weight JSON: ") + e.what());
  }
  throw ParseError("unknown weight kind '" + kind + "'");
}

// shortest round-trip text for a double; "inf" for +inf
inline std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, p) : std::string("nan");
}

inline json number_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace ccnorm::cli

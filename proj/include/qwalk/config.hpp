#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/coins.hpp"
#include "qwalk/lattice_state.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

// One experiment: which walk to run and for how long.  Coin and initial
// state are kept in their textual form so emitted artifacts can echo the
// configuration verbatim; custom matrices are loaded into `custom_matrix`
// by the io layer before the config reaches the engine.
struct WalkConfig {
  int dim = 1;
  std::string coin = "hadamard";  // hadamard | dft | grover | custom:<path>
  bool dressed = false;
  std::string initial = "all_minus";  // standard name or comma-separated amplitudes
  int steps = 100;
  std::uint64_t seed = 0;
  int trials = 1;
  int t_min = 10;
  std::optional<std::vector<Complex>> custom_matrix;
};

inline bool has_custom_coin(const WalkConfig& config) {
  return std::string_view(config.coin).starts_with("custom:");
}

inline std::string custom_coin_path(const WalkConfig& config) {
  return config.coin.substr(7);
}

// Parses "a", "bi", "a+bi", "i", "-i"; exponents allowed in both parts.
inline Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty complex literal");

  auto parse_part = [](std::string part) -> double {
    if (part.empty() || part == "+") part += "1";
    else if (part == "-") part = "-1";
    const char* begin = part.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end != begin + part.size()) {
      throw std::invalid_argument("bad number in complex literal: '" + part + "'");
    }
    return value;
  };

  if (s.back() != 'i' && s.back() != 'I') return Complex{parse_part(s), 0.0};

  s.pop_back();
  // Split at the last top-level sign; a sign right after e/E belongs to an exponent.
  for (size_t pos = s.size(); pos-- > 1;) {
    if ((s[pos] == '+' || s[pos] == '-') && s[pos - 1] != 'e' && s[pos - 1] != 'E') {
      return Complex{parse_part(s.substr(0, pos)), parse_part(s.substr(pos))};
    }
  }
  return Complex{0.0, parse_part(s)};
}

inline std::vector<Complex> parse_amplitude_list(std::string_view text) {
  std::vector<Complex> amps;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = text.find(',', start);
    const size_t end = comma == std::string_view::npos ? text.size() : comma;
    amps.push_back(parse_complex(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return amps;
}

inline CoinOperator make_coin(const WalkConfig& config) {
  check_dimension(config.dim);
  if (config.coin == "hadamard") return hadamard_tensor(config.dim);
  if (config.coin == "dft") return dft(config.dim);
  if (config.coin == "grover") return grover(config.dim);
  if (has_custom_coin(config)) {
    if (!config.custom_matrix) {
      throw std::invalid_argument("custom coin '" + config.coin + "' has not been loaded");
    }
    return custom_coin(config.dim, *config.custom_matrix);
  }
  throw std::invalid_argument("unknown coin '" + config.coin +
                              "' (expected hadamard, dft, grover, or custom:<path>)");
}

inline InternalState make_initial(const WalkConfig& config) {
  check_dimension(config.dim);
  if (config.initial == "all_minus") return standard_internal(StandardState::kAllMinus, config.dim);
  if (config.initial == "all_plus") return standard_internal(StandardState::kAllPlus, config.dim);
  if (config.initial == "symmetric_product") {
    return standard_internal(StandardState::kSymmetricProduct, config.dim);
  }
  if (config.initial == "singlet") return standard_internal(StandardState::kSinglet, config.dim);
  return InternalState(config.dim, parse_amplitude_list(config.initial));
}

}  // namespace qwalk

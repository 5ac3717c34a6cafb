#include "statenet/fxp_map.hpp"

#include <stdexcept>

namespace statenet {

const char* to_string(QuantizationMode mode) {
  switch (mode) {
    case QuantizationMode::Round: return "round";
    case QuantizationMode::Floor: return "floor";
    case QuantizationMode::Ceil: return "ceil";
  }
  return "?";
}

QuantizationMode parse_quantization_mode(const std::string& text) {
  if (text == "round") return QuantizationMode::Round;
  if (text == "floor") return QuantizationMode::Floor;
  if (text == "ceil") return QuantizationMode::Ceil;
  throw std::invalid_argument("unknown quantization mode '" + text +
                              "' (expected round, floor or ceil)");
}

ControlParameter::ControlParameter(std::uint64_t numerator, unsigned exponent)
    : raw_num_(numerator), raw_exp_(exponent) {
  if (exponent > kMaxPrecisionBits) {
    throw std::invalid_argument("mu exponent " + std::to_string(exponent) +
                                " exceeds the precision cap of " +
                                std::to_string(kMaxPrecisionBits));
  }
  if (numerator == 0) {
    throw std::invalid_argument("mu numerator must be positive");
  }
  if (numerator >= (std::uint64_t{4} << exponent)) {
    throw std::invalid_argument("mu = " + std::to_string(numerator) + "/2^" +
                                std::to_string(exponent) +
                                " is not in (0, 4)");
  }
  // Normalize to the odd-numerator form; the value is unchanged.
  while (numerator % 2 == 0 && exponent > 0) {
    numerator /= 2;
    --exponent;
  }
  if (numerator % 2 == 0) {
    throw std::invalid_argument(
        "mu has no odd-numerator dyadic form (even integer value)");
  }
  num_ = numerator;
  exp_ = exponent;
}

double ControlParameter::value() const {
  return static_cast<double>(num_) / static_cast<double>(std::uint64_t{1} << exp_);
}

std::string ControlParameter::str() const {
  return std::to_string(num_) + "/2^" + std::to_string(exp_);
}

std::string ControlParameter::raw_str() const {
  return std::to_string(raw_num_) + "/2^" + std::to_string(raw_exp_);
}

Precision::Precision(unsigned b) : bits(b) {
  if (b < 1 || b > kMaxPrecisionBits) {
    throw std::invalid_argument("precision must be in [1, " +
                                std::to_string(kMaxPrecisionBits) +
                                "] bits, got " + std::to_string(b));
  }
}

unsigned ExactRatio::frac_quarter() const {
  const unsigned d = log2_den;
  const uint128 frac = d == 0 ? 0 : num & ((uint128{1} << d) - 1);
  // Quarter boundaries are exact powers of two; shift instead of comparing.
  const uint128 q = d >= 2 ? frac >> (d - 2) : frac << (2 - d);
  return static_cast<unsigned>(q);
}

ExactRatio exact_value(node_t i, const ControlParameter& mu, Precision n) {
  if (n.bits < mu.exponent()) {
    throw std::domain_error("precision n = " + std::to_string(n.bits) +
                            " is below the mu exponent n_mu = " +
                            std::to_string(mu.exponent()));
  }
  if (i > n.max_label()) {
    throw std::domain_error("node label " + std::to_string(i) +
                            " outside the valid range [0, 2^" +
                            std::to_string(n.bits) + "] = [0, " +
                            std::to_string(n.max_label()) + "]");
  }
  // f_n(i) * 2^n = N_mu * i * (2^n - i) / 2^(n_mu + n), all exact.
  const uint128 parabola = uint128{i} * (n.max_label() - i);
  return ExactRatio{uint128{mu.numerator()} * parabola, mu.exponent() + n.bits};
}

std::uint64_t quantize(const ExactRatio& r, QuantizationMode mode) {
  const unsigned d = r.log2_den;
  if (d >= 128) {
    throw std::domain_error("quantize: log2_den out of range");
  }
  const uint128 frac = d == 0 ? 0 : r.num & ((uint128{1} << d) - 1);
  uint128 q = r.num >> d;
  switch (mode) {
    case QuantizationMode::Floor:
      break;
    case QuantizationMode::Ceil:
      if (frac != 0) ++q;
      break;
    case QuantizationMode::Round:
      // Half up: increment iff frac >= 1/2, i.e. top fractional bit set.
      if (d > 0 && (frac >> (d - 1)) != 0) ++q;
      break;
  }
  if (q > uint128{UINT64_MAX}) {
    throw std::overflow_error("quantize: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(q);
}

node_t logistic_step(node_t i, const ControlParameter& mu, Precision n,
                     QuantizationMode mode) {
  return quantize(exact_value(i, mu, n), mode);
}

std::string dyadic_decimal_string(std::uint64_t num, unsigned log2_den) {
  if (log2_den > 60) {
    throw std::domain_error("dyadic_decimal_string: log2_den out of range");
  }
  const std::uint64_t mask = (std::uint64_t{1} << log2_den) - 1;
  std::string out = std::to_string(num >> log2_den);
  std::uint64_t frac = log2_den == 0 ? 0 : (num & mask);
  if (frac == 0) return out;
  out += '.';
  while (frac != 0) {
    frac *= 10;
    out += static_cast<char>('0' + (frac >> log2_den));
    frac &= mask;
  }
  return out;
}

}  // namespace statenet

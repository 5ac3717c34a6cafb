#pragma once

#include <cstdint>
#include <string>

namespace statenet {

// Node labels of an n-bit state network live in {0, ..., 2^n}.
using node_t = std::uint64_t;
using uint128 = unsigned __int128;

// Highest precision the exact evaluation path supports: the unreduced
// numerator N_mu * i * (2^n - i) must fit a 128-bit integer.
inline constexpr unsigned kMaxPrecisionBits = 40;

enum class QuantizationMode { Round, Floor, Ceil };

const char* to_string(QuantizationMode mode);
QuantizationMode parse_quantization_mode(const std::string& text);

// Control parameter mu = numerator / 2^exponent with 0 < mu < 4, stored in
// normalized form (odd numerator). The form given at construction is kept
// alongside so reports can echo the caller's spelling.
class ControlParameter {
 public:
  ControlParameter(std::uint64_t numerator, unsigned exponent);

  std::uint64_t numerator() const { return num_; }
  unsigned exponent() const { return exp_; }
  std::uint64_t raw_numerator() const { return raw_num_; }
  unsigned raw_exponent() const { return raw_exp_; }

  double value() const;
  std::string str() const;      // normalized, e.g. "121/2^5"
  std::string raw_str() const;  // as constructed, e.g. "484/2^7"

  friend bool operator==(const ControlParameter&, const ControlParameter&) = default;

 private:
  std::uint64_t num_;
  unsigned exp_;
  std::uint64_t raw_num_;
  unsigned raw_exp_;
};

// Fixed-point precision in bits; valid range [1, kMaxPrecisionBits].
struct Precision {
  unsigned bits;

  explicit Precision(unsigned b);

  node_t max_label() const { return node_t{1} << bits; }   // 2^n
  node_t node_count() const { return max_label() + 1; }    // 2^n + 1

  friend bool operator==(const Precision&, const Precision&) = default;
};

// Exact non-negative dyadic rational num / 2^log2_den. exact_value() fills it
// with f_n(i) * 2^n, whose fractional part drives the rounding case analysis.
struct ExactRatio {
  uint128 num = 0;
  unsigned log2_den = 0;

  // floor(4 * frac(num / 2^log2_den)) in {0,1,2,3}: which quarter of [0,1)
  // the fractional part falls in.
  unsigned frac_quarter() const;
};

// f_n(i) * 2^n as an exact ratio: num = N_mu * i * (2^n - i),
// log2_den = n_mu + n. Requires 0 <= i <= 2^n and n >= n_mu.
ExactRatio exact_value(node_t i, const ControlParameter& mu, Precision n);

// Integer quantization R(.). Round is half up (all inputs are non-negative).
std::uint64_t quantize(const ExactRatio& r, QuantizationMode mode);

// F_n(i) = R(f_n(i) * 2^n). Always lands back in {0, ..., 2^n}.
node_t logistic_step(node_t i, const ControlParameter& mu, Precision n,
                     QuantizationMode mode);

// Exact decimal expansion of num / 2^log2_den (terminates since the
// denominator is a power of two), e.g. (1, 5) -> "0.03125".
std::string dyadic_decimal_string(std::uint64_t num, unsigned log2_den);

}  // namespace statenet

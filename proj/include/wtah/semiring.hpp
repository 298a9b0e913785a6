#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wtah/error.hpp"

namespace wtah {

using BigInt = boost::multiprecision::cpp_int;

class Weight;

enum class SemiringKind { Boolean, Natural, Integer, Tropical, Arctic, Modular };

struct SemiringDescriptor;

/// One of the built-in commutative semirings. Cheap to copy; compares by identity
/// (kind and, for residue rings, the modulus).
class Semiring {
 public:
  static Semiring boolean() { return Semiring(SemiringKind::Boolean); }
  static Semiring natural() { return Semiring(SemiringKind::Natural); }
  static Semiring integer() { return Semiring(SemiringKind::Integer); }
  static Semiring tropical() { return Semiring(SemiringKind::Tropical); }
  static Semiring arctic() { return Semiring(SemiringKind::Arctic); }
  /// Residues modulo k, k >= 2.
  static Semiring modular(unsigned k);

  /// Accepts `boolean`, `natural`, `integer`, `tropical`, `arctic`, `Z<k>` and
  /// `modular-<k>` (plus the one-letter aliases B, N, Z, T, A).
  static Semiring from_id(std::string_view id);

  SemiringKind kind() const { return kind_; }
  unsigned modulus() const { return modulus_; }
  std::string id() const;
  SemiringDescriptor descriptor() const;

  bool finite() const;
  bool zero_sum_free() const;
  bool zero_divisor_free() const;

  Weight zero() const;
  Weight one() const;

  /// The whole carrier, in increasing numeric order. Only for finite semirings.
  std::vector<Weight> elements() const;

  friend bool operator==(const Semiring&, const Semiring&) = default;

 private:
  explicit Semiring(SemiringKind kind, unsigned modulus = 0) : kind_(kind), modulus_(modulus) {}

  SemiringKind kind_;
  unsigned modulus_;
};

/// An element of a semiring. Immutable value.
///
/// For the tropical semiring `infinite` stands for +inf, for the arctic semiring
/// it stands for -inf; in both cases it is the additive zero.
class Weight {
 public:
  Weight(Semiring semiring, BigInt value, bool infinite = false);

  const Semiring& semiring() const { return semiring_; }
  const BigInt& value() const { return value_; }
  bool infinite() const { return infinite_; }

  bool is_zero() const;
  bool is_one() const;

  std::string to_string() const;

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.semiring_ == b.semiring_ && a.infinite_ == b.infinite_ && a.value_ == b.value_;
  }

  /// Arbitrary but fixed total order inside one semiring, for use as a map key.
  friend bool operator<(const Weight& a, const Weight& b);

 private:
  Semiring semiring_;
  BigInt value_;
  bool infinite_;
};

struct SemiringDescriptor {
  std::string id;
  std::string carrier;
  Weight zero;
  Weight one;
  bool zero_sum_free;
  bool finite;
  bool zero_divisor_free;
};

Weight weight_add(const Weight& a, const Weight& b);
Weight weight_mul(const Weight& a, const Weight& b);

inline Weight operator+(const Weight& a, const Weight& b) { return weight_add(a, b); }
inline Weight operator*(const Weight& a, const Weight& b) { return weight_mul(a, b); }

Weight power(const Weight& s, std::size_t exponent);

struct PowerCycle {
  std::size_t index;
  std::size_t period;

  friend bool operator==(const PowerCycle&, const PowerCycle&) = default;
};

/// Smallest (index, period) with s^(index+period) = s^index. Finite semirings only.
PowerCycle power_index_period(const Weight& s);

/// Parses a weight literal (decimal; `inf` / `-inf` for the tropical / arctic zero).
Weight parse_weight(const Semiring& semiring, std::string_view text);

/// Like parse_weight, but rejects the additive zero, which is not a legal rule weight.
Weight parse_rule_weight(const Semiring& semiring, std::string_view text);

}  // namespace wtah

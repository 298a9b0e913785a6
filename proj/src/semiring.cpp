#include "wtah/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace wtah {

namespace {

bool is_prime(unsigned k) {
  if (k < 2) return false;
  for (unsigned d = 2; d * d <= k; ++d)
    if (k % d == 0) return false;
  return true;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

void require_same(const Weight& a, const Weight& b) {
  if (!(a.semiring() == b.semiring()))
    throw SemiringMismatch("semiring mismatch: " + a.semiring().id() + " vs " + b.semiring().id());
}

}  // namespace

Semiring Semiring::modular(unsigned k) {
  if (k < 2) throw Error("modulus must be at least 2");
  return Semiring(SemiringKind::Modular, k);
}

Semiring Semiring::from_id(std::string_view id) {
  static const std::map<std::string_view, SemiringKind> named = {
      {"boolean", SemiringKind::Boolean}, {"B", SemiringKind::Boolean},
      {"natural", SemiringKind::Natural}, {"N", SemiringKind::Natural},
      {"integer", SemiringKind::Integer}, {"Z", SemiringKind::Integer},
      {"tropical", SemiringKind::Tropical}, {"T", SemiringKind::Tropical},
      {"arctic", SemiringKind::Arctic}, {"A", SemiringKind::Arctic},
  };
  if (auto it = named.find(id); it != named.end()) return Semiring(it->second);

  std::string_view digits;
  if (id.size() > 1 && id[0] == 'Z')
    digits = id.substr(1);
  else if (id.starts_with("modular-"))
    digits = id.substr(8);
  if (all_digits(digits) && digits.size() < 9) {
    unsigned k = static_cast<unsigned>(std::stoul(std::string(digits)));
    if (k >= 2) return modular(k);
  }
  throw ParseError("unknown semiring '" + std::string(id) + "'");
}

std::string Semiring::id() const {
  switch (kind_) {
    case SemiringKind::Boolean: return "boolean";
    case SemiringKind::Natural: return "natural";
    case SemiringKind::Integer: return "integer";
    case SemiringKind::Tropical: return "tropical";
    case SemiringKind::Arctic: return "arctic";
    case SemiringKind::Modular: return "Z" + std::to_string(modulus_);
  }
  return {};
}

SemiringDescriptor Semiring::descriptor() const {
  std::string carrier;
  switch (kind_) {
    case SemiringKind::Boolean: carrier = "({0,1}, or, and, 0, 1)"; break;
    case SemiringKind::Natural: carrier = "(N, +, *, 0, 1)"; break;
    case SemiringKind::Integer: carrier = "(Z, +, *, 0, 1)"; break;
    case SemiringKind::Tropical: carrier = "(N u {inf}, min, +, inf, 0)"; break;
    case SemiringKind::Arctic: carrier = "(N u {-inf}, max, +, -inf, 0)"; break;
    case SemiringKind::Modular:
      carrier = "(Z/" + std::to_string(modulus_) + "Z, +, *, 0, 1)";
      break;
  }
  return {id(), carrier, zero(), one(), zero_sum_free(), finite(), zero_divisor_free()};
}

bool Semiring::finite() const {
  return kind_ == SemiringKind::Boolean || kind_ == SemiringKind::Modular;
}

bool Semiring::zero_sum_free() const {
  return kind_ != SemiringKind::Integer && kind_ != SemiringKind::Modular;
}

bool Semiring::zero_divisor_free() const {
  return kind_ != SemiringKind::Modular || is_prime(modulus_);
}

Weight Semiring::zero() const {
  switch (kind_) {
    case SemiringKind::Tropical:
    case SemiringKind::Arctic: return Weight(*this, 0, true);
    default: return Weight(*this, 0);
  }
}

Weight Semiring::one() const {
  switch (kind_) {
    case SemiringKind::Tropical:
    case SemiringKind::Arctic: return Weight(*this, 0);
    default: return Weight(*this, 1);
  }
}

std::vector<Weight> Semiring::elements() const {
  std::vector<Weight> out;
  if (kind_ == SemiringKind::Boolean) {
    out.emplace_back(*this, 0);
    out.emplace_back(*this, 1);
  } else if (kind_ == SemiringKind::Modular) {
    for (unsigned v = 0; v < modulus_; ++v) out.emplace_back(*this, v);
  } else {
    throw Error("semiring " + id() + " is infinite");
  }
  return out;
}

Weight::Weight(Semiring semiring, BigInt value, bool infinite)
    : semiring_(semiring), value_(std::move(value)), infinite_(infinite) {
  switch (semiring_.kind()) {
    case SemiringKind::Boolean:
      if (infinite_) throw Error("boolean weight cannot be infinite");
      value_ = value_ != 0 ? 1 : 0;
      break;
    case SemiringKind::Modular: {
      if (infinite_) throw Error("residue weight cannot be infinite");
      BigInt k = semiring_.modulus();
      value_ %= k;
      if (value_ < 0) value_ += k;
      break;
    }
    case SemiringKind::Integer:
      if (infinite_) throw Error("integer weight cannot be infinite");
      break;
    case SemiringKind::Natural:
      if (infinite_) throw Error("natural weight cannot be infinite");
      if (value_ < 0) throw Error("natural weight must be nonnegative");
      break;
    case SemiringKind::Tropical:
    case SemiringKind::Arctic:
      if (infinite_)
        value_ = 0;
      else if (value_ < 0)
        throw Error(semiring_.id() + " weight must be nonnegative or infinite");
      break;
  }
}

bool Weight::is_zero() const { return *this == semiring_.zero(); }

bool Weight::is_one() const { return *this == semiring_.one(); }

std::string Weight::to_string() const {
  if (infinite_) return semiring_.kind() == SemiringKind::Tropical ? "inf" : "-inf";
  return value_.str();
}

bool operator<(const Weight& a, const Weight& b) {
  require_same(a, b);
  if (a.infinite_ != b.infinite_) return a.infinite_ < b.infinite_;
  return a.value_ < b.value_;
}

Weight weight_add(const Weight& a, const Weight& b) {
  require_same(a, b);
  const Semiring& s = a.semiring();
  switch (s.kind()) {
    case SemiringKind::Boolean: return Weight(s, (a.value() != 0 || b.value() != 0) ? 1 : 0);
    case SemiringKind::Natural:
    case SemiringKind::Integer:
    case SemiringKind::Modular: return Weight(s, a.value() + b.value());
    case SemiringKind::Tropical:
      if (a.infinite()) return b;
      if (b.infinite()) return a;
      return Weight(s, std::min(a.value(), b.value()));
    case SemiringKind::Arctic:
      if (a.infinite()) return b;
      if (b.infinite()) return a;
      return Weight(s, std::max(a.value(), b.value()));
  }
  return s.zero();
}

Weight weight_mul(const Weight& a, const Weight& b) {
  require_same(a, b);
  const Semiring& s = a.semiring();
  switch (s.kind()) {
    case SemiringKind::Boolean: return Weight(s, (a.value() != 0 && b.value() != 0) ? 1 : 0);
    case SemiringKind::Natural:
    case SemiringKind::Integer:
    case SemiringKind::Modular: return Weight(s, a.value() * b.value());
    case SemiringKind::Tropical:
    case SemiringKind::Arctic:
      if (a.infinite() || b.infinite()) return s.zero();
      return Weight(s, a.value() + b.value());
  }
  return s.zero();
}

Weight power(const Weight& s, std::size_t exponent) {
  Weight result = s.semiring().one();
  Weight base = s;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

PowerCycle power_index_period(const Weight& s) {
  if (!s.semiring().finite()) throw Error("power cycle requested over infinite semiring " + s.semiring().id());
  // s^0 = 1 is part of the sequence; the first repeated power closes the cycle.
  std::vector<Weight> seen;
  Weight current = s.semiring().one();
  for (;;) {
    auto it = std::find(seen.begin(), seen.end(), current);
    if (it != seen.end()) {
      std::size_t index = static_cast<std::size_t>(it - seen.begin());
      return {index, seen.size() - index};
    }
    seen.push_back(current);
    current = current * s;
  }
}

Weight parse_weight(const Semiring& semiring, std::string_view text) {
  auto bad = [&]() {
    return ParseError("invalid " + semiring.id() + " weight '" + std::string(text) + "'");
  };
  switch (semiring.kind()) {
    case SemiringKind::Boolean:
      if (text == "0" || text == "1") return Weight(semiring, text == "1" ? 1 : 0);
      throw bad();
    case SemiringKind::Natural:
      if (!all_digits(text)) throw bad();
      return Weight(semiring, BigInt(std::string(text)));
    case SemiringKind::Integer: {
      std::string_view digits = text;
      if (!digits.empty() && digits[0] == '-') digits.remove_prefix(1);
      if (!all_digits(digits)) throw bad();
      return Weight(semiring, BigInt(std::string(text)));
    }
    case SemiringKind::Tropical:
      if (text == "inf") return semiring.zero();
      if (!all_digits(text)) throw bad();
      return Weight(semiring, BigInt(std::string(text)));
    case SemiringKind::Arctic:
      if (text == "-inf") return semiring.zero();
      if (!all_digits(text)) throw bad();
      return Weight(semiring, BigInt(std::string(text)));
    case SemiringKind::Modular: {
      if (!all_digits(text)) throw bad();
      BigInt v{std::string(text)};
      if (v >= semiring.modulus()) throw bad();
      return Weight(semiring, v);
    }
  }
  throw bad();
}

Weight parse_rule_weight(const Semiring& semiring, std::string_view text) {
  Weight w = parse_weight(semiring, text);
  if (w.is_zero()) throw ValidationError("rule weight must not be the semiring zero (" + std::string(text) + ")");
  return w;
}

}  // namespace wtah

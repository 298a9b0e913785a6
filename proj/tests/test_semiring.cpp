#include "doctest.h"

#include <algorithm>
#include <vector>

#include "wtah/semiring.hpp"

using namespace wtah;

namespace {

Weight w(const Semiring& s, const char* text) { return parse_weight(s, text); }

// Finite carriers are used whole; infinite ones get a fixed grid that includes
// the zero, so every sample set below yields at least 6^3 = 216 triples.
std::vector<Weight> carrier_sample(const Semiring& s) {
  if (s.finite()) return s.elements();
  std::vector<Weight> out{s.zero(), s.one()};
  for (int v : {2, 3, 7, 12}) out.emplace_back(s, v);
  if (s.kind() == SemiringKind::Integer)
    for (int v : {-1, -5}) out.emplace_back(s, v);
  return out;
}

std::vector<Semiring> all_semirings() {
  return {Semiring::boolean(),    Semiring::natural(),    Semiring::integer(), Semiring::tropical(),
          Semiring::arctic(),     Semiring::modular(2),   Semiring::modular(5), Semiring::modular(6)};
}

}  // namespace

TEST_CASE("addition examples") {
  CHECK(w(Semiring::tropical(), "3") + w(Semiring::tropical(), "5") == w(Semiring::tropical(), "3"));
  CHECK(w(Semiring::natural(), "0") + w(Semiring::natural(), "7") == w(Semiring::natural(), "7"));
  CHECK(w(Semiring::modular(6), "2") + w(Semiring::modular(6), "4") == Semiring::modular(6).zero());
  CHECK(w(Semiring::arctic(), "3") + w(Semiring::arctic(), "5") == w(Semiring::arctic(), "5"));
  CHECK(w(Semiring::boolean(), "1") + w(Semiring::boolean(), "1") == Semiring::boolean().one());
}

TEST_CASE("multiplication examples") {
  const Semiring A = Semiring::arctic();
  CHECK(w(A, "2") * w(A, "-inf") == A.zero());
  CHECK((w(A, "2") * w(A, "-inf")).is_zero());
  CHECK(w(Semiring::tropical(), "3") * w(Semiring::tropical(), "5") == w(Semiring::tropical(), "8"));
  CHECK(w(Semiring::modular(6), "2") * w(Semiring::modular(6), "3") == Semiring::modular(6).zero());
  CHECK(w(Semiring::integer(), "-3") * w(Semiring::integer(), "4") == w(Semiring::integer(), "-12"));
}

TEST_CASE("weights of different semirings do not mix") {
  CHECK_THROWS_AS(Semiring::natural().one() + Semiring::integer().one(), SemiringMismatch);
  CHECK_THROWS_AS(Semiring::modular(5).one() * Semiring::modular(6).one(), SemiringMismatch);
}

TEST_CASE("natural weights do not overflow") {
  const Semiring N = Semiring::natural();
  Weight big = power(w(N, "2"), 100);
  CHECK(big.to_string() == "1267650600228229401496703205376");
  CHECK(big * big == power(w(N, "2"), 200));
}

TEST_CASE("power index and period") {
  const Semiring Z6 = Semiring::modular(6);
  CHECK(power_index_period(w(Z6, "2")) == PowerCycle{1, 2});
  CHECK(power_index_period(w(Z6, "1")) == PowerCycle{0, 1});
  CHECK(power_index_period(Semiring::boolean().zero()) == PowerCycle{1, 1});
  CHECK(power_index_period(w(Z6, "3")) == PowerCycle{1, 1});
  CHECK_THROWS_AS(power_index_period(w(Semiring::natural(), "2")), Error);

  // brute force: first repetition in the power sequence
  for (unsigned k : {4u, 6u, 8u, 12u}) {
    const Semiring Zk = Semiring::modular(k);
    for (const Weight& s : Zk.elements()) {
      std::vector<Weight> seen{Zk.one()};
      for (;;) {
        Weight next = seen.back() * s;
        auto it = std::find(seen.begin(), seen.end(), next);
        if (it != seen.end()) {
          std::size_t index = static_cast<std::size_t>(it - seen.begin());
          CHECK(power_index_period(s) == PowerCycle{index, seen.size() - index});
          break;
        }
        seen.push_back(next);
      }
    }
  }
}

TEST_CASE("weight literals") {
  CHECK(w(Semiring::tropical(), "inf") == Semiring::tropical().zero());
  CHECK(w(Semiring::arctic(), "-inf") == Semiring::arctic().zero());
  CHECK(w(Semiring::integer(), "-3").value() == -3);
  CHECK(w(Semiring::boolean(), "0").is_zero());
  CHECK(w(Semiring::modular(6), "5").value() == 5);

  CHECK_THROWS_AS(w(Semiring::natural(), "-3"), ParseError);
  CHECK_THROWS_AS(w(Semiring::natural(), "inf"), ParseError);
  CHECK_THROWS_AS(w(Semiring::boolean(), "2"), ParseError);
  CHECK_THROWS_AS(w(Semiring::modular(6), "6"), ParseError);
  CHECK_THROWS_AS(w(Semiring::tropical(), "3x"), ParseError);

  CHECK_THROWS_AS(parse_rule_weight(Semiring::natural(), "0"), Error);
  CHECK_THROWS_AS(parse_rule_weight(Semiring::tropical(), "inf"), Error);
  CHECK(parse_rule_weight(Semiring::tropical(), "0") == Semiring::tropical().one());

  for (const Semiring& s : all_semirings())
    for (const Weight& x : carrier_sample(s)) CHECK(parse_weight(s, x.to_string()) == x);
}

TEST_CASE("semiring identifiers") {
  CHECK(Semiring::from_id("Z6") == Semiring::modular(6));
  CHECK(Semiring::from_id("modular-6") == Semiring::modular(6));
  CHECK(Semiring::from_id("T") == Semiring::tropical());
  CHECK(Semiring::from_id("arctic") == Semiring::arctic());
  CHECK_THROWS(Semiring::from_id("Z1"));
  CHECK_THROWS(Semiring::from_id("real"));
  for (const Semiring& s : all_semirings()) CHECK(Semiring::from_id(s.id()) == s);
}

TEST_CASE("flags") {
  CHECK(Semiring::boolean().zero_sum_free());
  CHECK(Semiring::natural().zero_sum_free());
  CHECK(Semiring::tropical().zero_sum_free());
  CHECK(Semiring::arctic().zero_sum_free());
  CHECK_FALSE(Semiring::integer().zero_sum_free());
  CHECK_FALSE(Semiring::modular(6).zero_sum_free());
  CHECK_FALSE(Semiring::modular(6).zero_divisor_free());
  CHECK(Semiring::modular(5).zero_divisor_free());
  CHECK(Semiring::modular(6).descriptor().zero == Semiring::modular(6).zero());
}

TEST_CASE("semiring axioms") {
  for (const Semiring& s : all_semirings()) {
    CAPTURE(s.id());
    const std::vector<Weight> xs = carrier_sample(s);
    if (!s.finite()) REQUIRE(xs.size() * xs.size() * xs.size() >= 100);
    const Weight zero = s.zero(), one = s.one();
    for (const Weight& a : xs) {
      CHECK(a + zero == a);
      CHECK(a * one == a);
      CHECK(a * zero == zero);
      for (const Weight& b : xs) {
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (s.zero_sum_free() && (a + b).is_zero()) CHECK((a.is_zero() && b.is_zero()));
        if (s.zero_divisor_free() && (a * b).is_zero()) CHECK((a.is_zero() || b.is_zero()));
        for (const Weight& c : xs) {
          CHECK((a + b) + c == a + (b + c));
          CHECK((a * b) * c == a * (b * c));
          CHECK(a * (b + c) == a * b + a * c);
        }
      }
    }
  }
}

TEST_CASE("zero-sum freeness flag matches the carrier") {
  for (const Semiring& s : all_semirings()) {
    bool found = false;
    for (const Weight& a : carrier_sample(s))
      for (const Weight& b : carrier_sample(s)) found = found || (!a.is_zero() && (a + b).is_zero());
    CHECK(found == !s.zero_sum_free());
  }
}

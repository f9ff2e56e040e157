// Copyright 2026 The bvterm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <stdexcept>

#include "bvterm/bitvec.h"
#include "doctest.h"

using bvterm::BitVec;
using bvterm::CompareOp;

namespace {

BitVec b(std::string_view digits) { return BitVec::from_digits(digits); }

}  // namespace

TEST_CASE("add wraps modulo the width") {
  CHECK(bv_add(b("0000"), b("0001")) == b("0001"));
  CHECK(bv_add(b("1111"), b("0001")) == b("0000"));
  CHECK(bv_add(b("0111"), b("0001")) == b("1000"));
}

TEST_CASE("sub wraps modulo the width") {
  CHECK(bv_sub(b("0001"), b("0000")) == b("0001"));
  CHECK(bv_sub(b("1001"), b("1000")) == b("0001"));
  CHECK(bv_sub(b("0000"), b("0001")) == b("1111"));
}

TEST_CASE("signed and unsigned comparison differ on the sign bit") {
  CHECK(bv_compare(CompareOp::Slt, b("0000"), b("0010")));
  CHECK(bv_compare(CompareOp::Slt, b("1000"), b("0000")));
  CHECK_FALSE(bv_compare(CompareOp::Ult, b("1000"), b("0000")));
  CHECK(bv_compare(CompareOp::Sge, b("0111"), b("1000")));
  CHECK(bv_compare(CompareOp::Ule, b("0111"), b("1000")));
}

TEST_CASE("trailing zeros") {
  CHECK(trailing_zeros(b("0001")) == 0);
  CHECK(trailing_zeros(b("0000")) == 4);
  CHECK(trailing_zeros(b("0110")) == 1);
  CHECK(trailing_zeros(BitVec::zeros(130)) == 130);
  CHECK(trailing_zeros(BitVec::from_limbs(130, {0, 0, 2})) == 129);
}

TEST_CASE("textual forms") {
  CHECK(b("0101").to_smtlib() == "#b0101");
  CHECK(BitVec::from_smtlib("#b0101") == b("0101"));
  CHECK(BitVec(4, 0x1f) == b("1111"));
  CHECK(b("1000").to_signed() == -8);
  CHECK(b("1000").to_unsigned() == 8);
  CHECK_THROWS_AS(BitVec::from_digits(""), std::invalid_argument);
  CHECK_THROWS_AS(BitVec::from_digits("012"), std::invalid_argument);
  CHECK_THROWS_AS(BitVec::from_smtlib("0101"), std::invalid_argument);
}

TEST_CASE("width mismatch is a usage error") {
  CHECK_THROWS_AS(bv_add(b("0001"), b("001")), std::invalid_argument);
  CHECK_THROWS_AS(bv_sub(b("0001"), b("001")), std::invalid_argument);
  CHECK_THROWS_AS(bv_compare(CompareOp::Eq, b("0001"), b("001")), std::invalid_argument);
}

TEST_CASE("equality is width-sensitive") {
  CHECK(b("01") != b("0001"));
  CHECK(b("01") < b("0001"));
}

TEST_CASE("ring laws hold exhaustively at widths 1 to 4") {
  for (unsigned w = 1; w <= 4; ++w) {
    for (std::uint64_t x = 0; x < (1u << w); ++x) {
      for (std::uint64_t y = 0; y < (1u << w); ++y) {
        BitVec bx(w, x), by(w, y);
        REQUIRE(bv_sub(bv_add(bx, by), by) == bx);
        REQUIRE(bv_add(bx, bv_sub(by, bx)) == by);
      }
    }
  }
}

TEST_CASE("arithmetic agrees with integers at width 8") {
  std::mt19937_64 rng(8);
  for (int n = 0; n < 20000; ++n) {
    std::int64_t x = static_cast<std::int64_t>(rng() % 256), y = static_cast<std::int64_t>(rng() % 256);
    BitVec bx(8, x), by(8, y);
    auto sx = x >= 128 ? x - 256 : x;
    auto sy = y >= 128 ? y - 256 : y;
    REQUIRE(bv_add(bx, by).to_unsigned() == static_cast<std::uint64_t>((x + y) % 256));
    REQUIRE(bv_sub(bx, by).to_unsigned() == static_cast<std::uint64_t>(((x - y) % 256 + 256) % 256));
    REQUIRE(bv_compare(CompareOp::Eq, bx, by) == (x == y));
    REQUIRE(bv_compare(CompareOp::Ult, bx, by) == (x < y));
    REQUIRE(bv_compare(CompareOp::Ule, bx, by) == (x <= y));
    REQUIRE(bv_compare(CompareOp::Uge, bx, by) == (x >= y));
    REQUIRE(bv_compare(CompareOp::Slt, bx, by) == (sx < sy));
    REQUIRE(bv_compare(CompareOp::Sle, bx, by) == (sx <= sy));
    REQUIRE(bv_compare(CompareOp::Sge, bx, by) == (sx >= sy));
  }
}

TEST_CASE("trailing zeros marks the lowest set digit") {
  for (std::uint64_t x = 1; x < 256; ++x) {
    BitVec bx(8, x);
    unsigned a = trailing_zeros(bx);
    REQUIRE(bx.bit(a));
    for (unsigned k = 0; k < a; ++k) REQUIRE_FALSE(bx.bit(k));
  }
}

TEST_CASE("wide vectors carry across limbs") {
  BitVec ones = BitVec::ones(100);
  BitVec one(100, 1);
  CHECK(bv_add(ones, one).is_zero());
  CHECK(bv_sub(BitVec::zeros(100), one) == ones);
  BitVec low = BitVec::from_limbs(100, {~std::uint64_t{0}, 0});
  CHECK(bv_add(low, one) == BitVec::from_limbs(100, {0, 1}));
  CHECK(bv_compare(CompareOp::Slt, ones, BitVec::zeros(100)));
  CHECK_FALSE(bv_compare(CompareOp::Ult, ones, BitVec::zeros(100)));
  CHECK(ones.digits() == std::string(100, '1'));
  CHECK(ones.successor().is_zero());
}

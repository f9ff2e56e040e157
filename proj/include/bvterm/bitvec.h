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

#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bvterm {

/// Fixed-width two's-complement bit-vector.
///
/// The width is a runtime value (>= 1). Vectors of up to 64 bits live in a
/// single inline word; wider ones spill into a limb vector. Bits above the
/// width are always zero, so equality is plain limb equality.
class BitVec {
 public:
  /// Truncates `value` to the low `width` bits.
  BitVec(unsigned width, std::uint64_t value);

  static BitVec zeros(unsigned width) { return BitVec(width, 0); }
  static BitVec ones(unsigned width);

  /// Little-endian 64-bit limbs; excess bits are dropped.
  static BitVec from_limbs(unsigned width, std::vector<std::uint64_t> limbs) {
    return BitVec(width, std::move(limbs));
  }

  /// Parses a digit string, most significant first ("0101").
  static BitVec from_digits(std::string_view msb_first);
  /// Parses SMT-LIB binary literal syntax ("#b0101").
  static BitVec from_smtlib(std::string_view literal);

  unsigned width() const { return width_; }

  /// Bit `index` counted from the least significant end.
  bool bit(unsigned index) const;

  bool is_zero() const;

  /// Low 64 bits of the unsigned interpretation.
  std::uint64_t low_word() const { return limbs()[0]; }

  /// Unsigned interpretation; requires width <= 64.
  std::uint64_t to_unsigned() const;
  /// Two's-complement interpretation; requires width <= 64.
  std::int64_t to_signed() const;

  /// Digits, most significant first.
  std::string digits() const;
  std::string to_smtlib() const { return "#b" + digits(); }

  /// The next value in wraparound order (x + 1 mod 2^width).
  BitVec successor() const;

  std::span<const std::uint64_t> limbs() const {
    if (wide_.empty()) return {&word_, 1};
    return wide_;
  }

  friend bool operator==(const BitVec& a, const BitVec& b);
  /// Orders by width, then by unsigned value.
  friend std::strong_ordering operator<=>(const BitVec& a, const BitVec& b);

 private:
  BitVec(unsigned width, std::vector<std::uint64_t> limbs);
  std::span<std::uint64_t> mutable_limbs() {
    if (wide_.empty()) return {&word_, 1};
    return wide_;
  }
  void normalize();

  unsigned width_;
  std::uint64_t word_ = 0;
  std::vector<std::uint64_t> wide_;
};

enum class CompareOp { Eq, Ult, Slt, Uge, Sge, Ule, Sle };

BitVec bv_add(const BitVec& x, const BitVec& y);
BitVec bv_sub(const BitVec& x, const BitVec& y);
bool bv_compare(CompareOp op, const BitVec& x, const BitVec& y);

/// Number of consecutive zero digits at the least significant end; equals
/// the width for the all-zero vector.
unsigned trailing_zeros(const BitVec& x);

inline BitVec operator+(const BitVec& x, const BitVec& y) { return bv_add(x, y); }
inline BitVec operator-(const BitVec& x, const BitVec& y) { return bv_sub(x, y); }

}  // namespace bvterm

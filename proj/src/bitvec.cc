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

#include "bvterm/bitvec.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bvterm {

namespace {

constexpr unsigned kLimbBits = 64;

std::size_t limb_count(unsigned width) { return (width + kLimbBits - 1) / kLimbBits; }

void require_same_width(const BitVec& x, const BitVec& y, const char* op) {
  if (x.width() != y.width()) {
    throw std::invalid_argument(std::string(op) + ": width mismatch (" +
                                std::to_string(x.width()) + " vs " +
                                std::to_string(y.width()) + ")");
  }
}

int compare_unsigned(const BitVec& x, const BitVec& y) {
  auto a = x.limbs();
  auto b = y.limbs();
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  }
  return 0;
}

int compare_signed(const BitVec& x, const BitVec& y) {
  bool sx = x.bit(x.width() - 1);
  bool sy = y.bit(y.width() - 1);
  if (sx != sy) return sx ? -1 : 1;
  // Same sign: two's-complement order agrees with unsigned order.
  return compare_unsigned(x, y);
}

}  // namespace

BitVec::BitVec(unsigned width, std::uint64_t value) : width_(width) {
  if (width == 0) throw std::invalid_argument("BitVec: width must be >= 1");
  if (width <= kLimbBits) {
    word_ = value;
  } else {
    wide_.assign(limb_count(width), 0);
    wide_[0] = value;
  }
  normalize();
}

BitVec::BitVec(unsigned width, std::vector<std::uint64_t> limbs) : width_(width) {
  if (width <= kLimbBits) {
    word_ = limbs.empty() ? 0 : limbs[0];
  } else {
    wide_ = std::move(limbs);
    wide_.resize(limb_count(width), 0);
  }
  normalize();
}

void BitVec::normalize() {
  unsigned top_bits = width_ % kLimbBits;
  if (top_bits == 0) return;
  auto l = mutable_limbs();
  l.back() &= (std::uint64_t{1} << top_bits) - 1;
}

BitVec BitVec::ones(unsigned width) {
  if (width <= kLimbBits) return BitVec(width, ~std::uint64_t{0});
  return BitVec(width, std::vector<std::uint64_t>(limb_count(width), ~std::uint64_t{0}));
}

BitVec BitVec::from_digits(std::string_view msb_first) {
  if (msb_first.empty()) throw std::invalid_argument("BitVec: empty digit string");
  auto width = static_cast<unsigned>(msb_first.size());
  std::vector<std::uint64_t> limbs(limb_count(width), 0);
  for (unsigned k = 0; k < width; ++k) {
    char c = msb_first[width - 1 - k];
    if (c != '0' && c != '1') {
      throw std::invalid_argument("BitVec: invalid binary digit '" + std::string(1, c) + "'");
    }
    if (c == '1') limbs[k / kLimbBits] |= std::uint64_t{1} << (k % kLimbBits);
  }
  return BitVec(width, std::move(limbs));
}

BitVec BitVec::from_smtlib(std::string_view literal) {
  if (literal.size() < 3 || literal.substr(0, 2) != "#b") {
    throw std::invalid_argument("BitVec: expected #b literal, got '" + std::string(literal) + "'");
  }
  return from_digits(literal.substr(2));
}

bool BitVec::bit(unsigned index) const {
  if (index >= width_) throw std::out_of_range("BitVec::bit: index out of range");
  return (limbs()[index / kLimbBits] >> (index % kLimbBits)) & 1U;
}

bool BitVec::is_zero() const {
  auto l = limbs();
  return std::all_of(l.begin(), l.end(), [](std::uint64_t w) { return w == 0; });
}

std::uint64_t BitVec::to_unsigned() const {
  if (width_ > kLimbBits) throw std::range_error("BitVec::to_unsigned: width exceeds 64");
  return word_;
}

std::int64_t BitVec::to_signed() const {
  if (width_ > kLimbBits) throw std::range_error("BitVec::to_signed: width exceeds 64");
  if (width_ == kLimbBits) return static_cast<std::int64_t>(word_);
  if (bit(width_ - 1)) {
    return static_cast<std::int64_t>(word_) - (std::int64_t{1} << width_);
  }
  return static_cast<std::int64_t>(word_);
}

std::string BitVec::digits() const {
  std::string out(width_, '0');
  for (unsigned k = 0; k < width_; ++k) {
    if (bit(k)) out[width_ - 1 - k] = '1';
  }
  return out;
}

BitVec BitVec::successor() const { return bv_add(*this, BitVec(width_, 1)); }

bool operator==(const BitVec& a, const BitVec& b) {
  if (a.width_ != b.width_) return false;
  auto x = a.limbs();
  auto y = b.limbs();
  return std::equal(x.begin(), x.end(), y.begin());
}

std::strong_ordering operator<=>(const BitVec& a, const BitVec& b) {
  if (a.width_ != b.width_) return a.width_ <=> b.width_;
  return compare_unsigned(a, b) <=> 0;
}

BitVec bv_add(const BitVec& x, const BitVec& y) {
  require_same_width(x, y, "bv_add");
  if (x.width() <= kLimbBits) return BitVec(x.width(), x.low_word() + y.low_word());
  auto a = x.limbs();
  auto b = y.limbs();
  std::vector<std::uint64_t> out(a.size());
  std::uint64_t carry = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::uint64_t s = a[k] + b[k];
    std::uint64_t c1 = s < a[k] ? 1 : 0;
    std::uint64_t t = s + carry;
    std::uint64_t c2 = t < s ? 1 : 0;
    out[k] = t;
    carry = c1 | c2;
  }
  return BitVec::from_limbs(x.width(), std::move(out));
}

BitVec bv_sub(const BitVec& x, const BitVec& y) {
  require_same_width(x, y, "bv_sub");
  if (x.width() <= kLimbBits) return BitVec(x.width(), x.low_word() - y.low_word());
  auto a = x.limbs();
  auto b = y.limbs();
  std::vector<std::uint64_t> out(a.size());
  std::uint64_t borrow = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::uint64_t d = a[k] - b[k];
    std::uint64_t b1 = a[k] < b[k] ? 1 : 0;
    std::uint64_t t = d - borrow;
    std::uint64_t b2 = d < borrow ? 1 : 0;
    out[k] = t;
    borrow = b1 | b2;
  }
  return BitVec::from_limbs(x.width(), std::move(out));
}

bool bv_compare(CompareOp op, const BitVec& x, const BitVec& y) {
  require_same_width(x, y, "bv_compare");
  switch (op) {
    case CompareOp::Eq:
      return x == y;
    case CompareOp::Ult:
      return compare_unsigned(x, y) < 0;
    case CompareOp::Slt:
      return compare_signed(x, y) < 0;
    case CompareOp::Uge:
      return compare_unsigned(x, y) >= 0;
    case CompareOp::Sge:
      return compare_signed(x, y) >= 0;
    case CompareOp::Ule:
      return compare_unsigned(x, y) <= 0;
    case CompareOp::Sle:
      return compare_signed(x, y) <= 0;
  }
  return false;
}

unsigned trailing_zeros(const BitVec& x) {
  unsigned count = 0;
  for (std::uint64_t w : x.limbs()) {
    if (w != 0) return std::min(count + static_cast<unsigned>(std::countr_zero(w)), x.width());
    count += kLimbBits;
  }
  return x.width();
}

}  // namespace bvterm

#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "cykas/bytes.hpp"

namespace cykas {

// Fixed-length bit vector indexed by process id. Trailing bits of the last
// word are kept zero so equality and ordering can work word-wise.
class Bitvec {
 public:
  Bitvec() = default;
  explicit Bitvec(std::uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::uint32_t size() const { return n_; }

  bool test(std::uint32_t i) const {
    assert(i < n_);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  void set(std::uint32_t i) {
    assert(i < n_);
    words_[i >> 6] |= std::uint64_t(1) << (i & 63);
  }

  void reset(std::uint32_t i) {
    assert(i < n_);
    words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
  }

  bool all_zero() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::uint32_t count() const {
    std::uint32_t c = 0;
    for (auto w : words_) c += static_cast<std::uint32_t>(__builtin_popcountll(w));
    return c;
  }

  friend bool operator==(const Bitvec&, const Bitvec&) = default;
  friend std::strong_ordering operator<=>(const Bitvec& a, const Bitvec& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

  void encode(ByteSink& sink) const {
    for (std::uint32_t i = 0; i < (n_ + 7) / 8; ++i)
      sink.put_u8(static_cast<std::uint8_t>(words_[i >> 3] >> ((i & 7) * 8)));
  }

  static Bitvec decode(ByteReader& in, std::uint32_t n) {
    Bitvec b(n);
    for (std::uint32_t i = 0; i < (n + 7) / 8; ++i)
      b.words_[i >> 3] |= static_cast<std::uint64_t>(in.get_u8()) << ((i & 7) * 8);
    return b;
  }

  // "0110..." with index 0 leftmost, matching the trace column layout.
  std::string to_string() const {
    std::string s(n_, '0');
    for (std::uint32_t i = 0; i < n_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace cykas

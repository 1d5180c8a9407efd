#pragma once

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cykas {

// Canonical byte encoding used for state fingerprints and the model
// checker's frontier. Fixed-width little-endian fields; every encoder has
// a matching decoder so frontier states round-trip exactly.
class ByteSink {
 public:
  void put_u8(std::uint8_t v) { buf_.push_back(v); }

  // Model-checker encodings store counts, ids and clock entries as single
  // bytes; bounded exploration enforces the 255 ceiling up front.
  void put_u8_checked(std::uint64_t v) {
    if (v > 0xff) throw std::out_of_range("ByteSink: value exceeds one-byte encoding");
    buf_.push_back(static_cast<std::uint8_t>(v));
  }

  void put_u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void put_u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void put_f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64(bits);
  }

  void put_bytes(const std::uint8_t* p, std::size_t len) { buf_.insert(buf_.end(), p, p + len); }

  const std::vector<std::uint8_t>& bytes() const { return buf_; }
  std::vector<std::uint8_t> take() { return std::move(buf_); }
  void clear() { buf_.clear(); }

 private:
  std::vector<std::uint8_t> buf_;
};

class ByteReader {
 public:
  ByteReader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}
  explicit ByteReader(const std::vector<std::uint8_t>& v) : ByteReader(v.data(), v.size()) {}

  std::uint8_t get_u8() {
    need(1);
    return data_[pos_++];
  }

  std::uint32_t get_u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
    return v;
  }

  std::uint64_t get_u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
    return v;
  }

  double get_f64() {
    std::uint64_t bits = get_u64();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }

  void get_bytes(std::uint8_t* out, std::size_t len) {
    need(len);
    std::memcpy(out, data_ + pos_, len);
    pos_ += len;
  }

  bool at_end() const { return pos_ == size_; }
  std::size_t remaining() const { return size_ - pos_; }

 private:
  void need(std::size_t k) const {
    if (pos_ + k > size_) throw std::out_of_range("ByteReader: truncated buffer");
  }

  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

// 128-bit fingerprint of an encoded state: two independently seeded 64-bit
// mix hashes. Collision odds at 10^8 states are ~1e-22, well below any
// soundness concern for bounded exploration.
struct Fingerprint {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t hash_bytes(const std::uint8_t* p, std::size_t len, std::uint64_t seed) {
  std::uint64_t h = seed ^ (len * 0x9e3779b97f4a7c15ULL);
  while (len >= 8) {
    std::uint64_t w;
    std::memcpy(&w, p, 8);
    h = mix64(h ^ w) * 0x9e3779b97f4a7c15ULL;
    p += 8;
    len -= 8;
  }
  std::uint64_t tail = 0;
  if (len > 0) std::memcpy(&tail, p, len);
  return mix64(h ^ tail);
}

}  // namespace detail

inline Fingerprint fingerprint_bytes(const std::vector<std::uint8_t>& buf) {
  return Fingerprint{detail::hash_bytes(buf.data(), buf.size(), 0x517cc1b727220a95ULL),
                     detail::hash_bytes(buf.data(), buf.size(), 0x2545f4914f6cdd1dULL)};
}

struct FingerprintHash {
  std::size_t operator()(const Fingerprint& f) const noexcept {
    return static_cast<std::size_t>(f.lo ^ detail::mix64(f.hi));
  }
};

}  // namespace cykas

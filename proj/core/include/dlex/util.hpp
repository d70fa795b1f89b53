#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace dlex {

// Fixed-universe bit set.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(size_t n, bool fill = false)
      : n_(n), w_((n + 63) / 64, fill ? ~0ULL : 0ULL) {
    trim();
  }

  size_t size() const { return n_; }

  bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v = true) {
    if (v)
      w_[i >> 6] |= 1ULL << (i & 63);
    else
      w_[i >> 6] &= ~(1ULL << (i & 63));
  }

  size_t count() const {
    size_t c = 0;
    for (uint64_t w : w_) c += static_cast<size_t>(__builtin_popcountll(w));
    return c;
  }

  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  DynBitset& operator&=(const DynBitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }

  void flip_all() {
    for (auto& w : w_) w = ~w;
    trim();
  }

  bool subset_of(const DynBitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  bool intersects(const DynBitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  friend bool operator==(const DynBitset&, const DynBitset&) = default;
  friend auto operator<=>(const DynBitset& a, const DynBitset& b) {
    return a.w_ <=> b.w_;
  }

  size_t hash() const {
    size_t h = n_;
    for (uint64_t w : w_) h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  void trim() {
    if (n_ % 64 && !w_.empty()) w_.back() &= (1ULL << (n_ % 64)) - 1;
  }

  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

struct DynBitsetHash {
  size_t operator()(const DynBitset& b) const { return b.hash(); }
};

}  // namespace dlex

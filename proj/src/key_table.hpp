#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

namespace busout::detail {

// Insert-only set of fixed-width word keys. Keys live contiguously in one
// arena; the open-addressing index stores entry numbers, so memory per key is
// about width*8 + 8 bytes at the maximum load.
class KeyTable {
 public:
  explicit KeyTable(std::size_t width) : width_(width) { rehash(1024); }

  std::size_t size() const { return count_; }
  std::size_t width() const { return width_; }

  // Returns true if the key was not present.
  bool insert(std::span<const std::uint64_t> key) {
    if ((count_ + 1) * 10 > slots_.size() * 7) rehash(slots_.size() * 2);
    const std::uint64_t h = hash(key.data());
    std::size_t i = h & mask_;
    while (true) {
      const std::uint32_t slot = slots_[i];
      if (slot == 0) break;
      if (hashes_[slot - 1] == h && std::memcmp(entry(slot - 1), key.data(), width_ * 8) == 0) return false;
      i = (i + 1) & mask_;
    }
    arena_.insert(arena_.end(), key.begin(), key.end());
    hashes_.push_back(h);
    slots_[i] = static_cast<std::uint32_t>(++count_);
    return true;
  }

  bool contains(std::span<const std::uint64_t> key) const {
    const std::uint64_t h = hash(key.data());
    for (std::size_t i = h & mask_;; i = (i + 1) & mask_) {
      const std::uint32_t slot = slots_[i];
      if (slot == 0) return false;
      if (hashes_[slot - 1] == h && std::memcmp(entry(slot - 1), key.data(), width_ * 8) == 0) return true;
    }
  }

 private:
  const std::uint64_t* entry(std::size_t n) const { return arena_.data() + n * width_; }

  std::uint64_t hash(const std::uint64_t* key) const {
    std::uint64_t h = 0x243F6A8885A308D3ull ^ width_;
    for (std::size_t i = 0; i < width_; ++i) {
      h ^= key[i];
      h *= 0x9E3779B97F4A7C15ull;
      h ^= h >> 29;
    }
    h *= 0xBF58476D1CE4E5B9ull;
    return h ^ (h >> 31);
  }

  void rehash(std::size_t capacity) {
    slots_.assign(capacity, 0);
    mask_ = capacity - 1;
    for (std::size_t n = 0; n < count_; ++n) {
      std::size_t i = hashes_[n] & mask_;
      while (slots_[i] != 0) i = (i + 1) & mask_;
      slots_[i] = static_cast<std::uint32_t>(n + 1);
    }
  }

  std::size_t width_;
  std::size_t count_ = 0;
  std::size_t mask_ = 0;
  std::vector<std::uint64_t> arena_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> slots_;
};

}  // namespace busout::detail

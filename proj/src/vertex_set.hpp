#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>

namespace interplan {

// Subset of vertices [0, 64) as a bitmask. Graphs in this project are small
// (clique handling is exponential long before 64 vertices), so a single word
// with O(1) membership is the right representation.
class VertexSet {
 public:
  constexpr VertexSet() = default;

  static constexpr VertexSet from_mask(uint64_t bits) {
    VertexSet s;
    s.bits_ = bits;
    return s;
  }
  static VertexSet of(std::initializer_list<int> vs) {
    VertexSet s;
    for (int v : vs) s.add(v);
    return s;
  }
  static constexpr VertexSet full(int n) {
    return from_mask(n >= 64 ? ~0ull : (1ull << n) - 1);
  }

  void add(int v) {
    assert(v >= 0 && v < 64);
    bits_ |= 1ull << v;
  }
  void remove(int v) {
    assert(v >= 0 && v < 64);
    bits_ &= ~(1ull << v);
  }
  bool contains(int v) const { return v >= 0 && v < 64 && (bits_ >> v & 1); }

  int count() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  uint64_t mask() const { return bits_; }

  VertexSet operator|(VertexSet o) const { return from_mask(bits_ | o.bits_); }
  VertexSet operator&(VertexSet o) const { return from_mask(bits_ & o.bits_); }
  VertexSet minus(VertexSet o) const { return from_mask(bits_ & ~o.bits_); }
  VertexSet with(int v) const {
    VertexSet s = *this;
    s.add(v);
    return s;
  }
  VertexSet without(int v) const {
    VertexSet s = *this;
    s.remove(v);
    return s;
  }

  bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }
  bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }

  int lowest() const {
    assert(bits_ != 0);
    return std::countr_zero(bits_);
  }

  // Visits members in increasing order.
  template <typename F>
  void for_each(F f) const {
    for (uint64_t b = bits_; b != 0;) {
      int v = std::countr_zero(b);
      b &= b - 1;
      f(v);
    }
  }

  friend bool operator==(VertexSet a, VertexSet b) { return a.bits_ == b.bits_; }
  friend bool operator!=(VertexSet a, VertexSet b) { return a.bits_ != b.bits_; }
  friend bool operator<(VertexSet a, VertexSet b) { return a.bits_ < b.bits_; }

 private:
  uint64_t bits_ = 0;
};

}  // namespace interplan

#pragma once

#include "srds/rational.hpp"

#include <vector>

namespace srds {

/// One contiguous bit-range of a file, endpoints as fractions of the
/// normalized file length. `coded=true` marks a range of MDS-coded unit
/// space (relay-cached blocks) rather than plain file bits.
struct Segment {
  int file = 0;
  Rat lo = 0;
  Rat hi = 0;
  bool coded = false;

  Rat length() const { return hi - lo; }
  bool operator==(const Segment& other) const = default;
};

/// Ordered list of segments; the concatenation order is significant.
using SegmentChain = std::vector<Segment>;

Rat chain_length(const SegmentChain& chain);

/// Sub-chain covering offsets [from, to) of the concatenation, splitting
/// segments as needed. Requires 0 <= from <= to <= length.
SegmentChain chain_slice(const SegmentChain& chain, const Rat& from, const Rat& to);

/// Removes the leading `amount` of the chain and returns it.
SegmentChain chain_take_prefix(SegmentChain& chain, const Rat& amount);

void chain_append(SegmentChain& chain, const SegmentChain& tail);

}  // namespace srds

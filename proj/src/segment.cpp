#include "srds/segment.hpp"

namespace srds {

Rat chain_length(const SegmentChain& chain) {
  Rat total = 0;
  for (const auto& seg : chain) total += seg.length();
  return total;
}

SegmentChain chain_slice(const SegmentChain& chain, const Rat& from, const Rat& to) {
  if (from < 0 || to < from) throw std::invalid_argument("bad chain slice bounds");
  SegmentChain out;
  if (from == to) return out;
  Rat pos = 0;
  for (const auto& seg : chain) {
    Rat len = seg.length();
    Rat seg_end = pos + len;
    if (seg_end > from && pos < to) {
      Rat cut_lo = seg.lo + (from > pos ? from - pos : Rat(0));
      Rat cut_hi = seg.lo + (to < seg_end ? to - pos : len);
      out.push_back({seg.file, cut_lo, cut_hi, seg.coded});
    }
    pos = seg_end;
    if (pos >= to) break;
  }
  if (pos < to) throw std::invalid_argument("chain slice past end of chain");
  return out;
}

SegmentChain chain_take_prefix(SegmentChain& chain, const Rat& amount) {
  SegmentChain taken = chain_slice(chain, 0, amount);
  chain = chain_slice(chain, amount, chain_length(chain));
  return taken;
}

void chain_append(SegmentChain& chain, const SegmentChain& tail) {
  chain.insert(chain.end(), tail.begin(), tail.end());
}

}  // namespace srds

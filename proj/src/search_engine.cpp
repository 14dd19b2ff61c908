#include "search_engine.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace busout::detail {
namespace {

constexpr std::uint64_t pack_spot(std::uint32_t color, std::uint64_t remaining) {
  return (static_cast<std::uint64_t>(color + 1) << 32) | remaining;
}
constexpr std::uint32_t spot_color_plus1(std::uint64_t spot) { return static_cast<std::uint32_t>(spot >> 32); }
constexpr std::uint64_t spot_remaining(std::uint64_t spot) { return spot & 0xFFFFFFFFull; }

void set_bit(std::vector<std::uint64_t>& bits, std::size_t i) { bits[i >> 6] |= std::uint64_t{1} << (i & 63); }
void clear_bit(std::vector<std::uint64_t>& bits, std::size_t i) { bits[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

}  // namespace

SearchEngine::SearchEngine(const Configuration& root, BoardingPolicy policy, KeyMode keys)
    : policy_(policy), keys_(keys) {
  const auto& g = root.graph();
  original_ = g.vertices();
  const std::size_t n = original_.size();
  std::vector<std::uint32_t> dense(g.universe_size(), UINT32_MAX);
  for (std::size_t i = 0; i < n; ++i) dense[original_[i].value] = static_cast<std::uint32_t>(i);
  labels_.resize(n);
  blocked_.resize(n);
  out_degree_.assign(n, 0);
  std::vector<std::vector<std::uint32_t>> undirected(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels_[i] = g.label(original_[i]);
    for (BusId v : g.blockers_of(original_[i])) {
      const std::uint32_t j = dense[v.value];
      if (j == UINT32_MAX) continue;
      ++out_degree_[i];
      blocked_[j].push_back(static_cast<std::uint32_t>(i));
      undirected[i].push_back(j);
      undirected[j].push_back(static_cast<std::uint32_t>(i));
    }
  }
  words_ = (n + 63) / 64;
  remaining_.assign(words_, 0);
  free_.assign(words_, 0);
  for (std::size_t i = 0; i < n; ++i) {
    set_bit(remaining_, i);
    if (out_degree_[i] == 0) set_bit(free_, i);
  }

  // Connected components, each with a signature under its ascending local
  // order. Equal signatures mean the order-preserving map is an isomorphism.
  comp_of_.assign(n, UINT32_MAX);
  local_of_.assign(n, 0);
  std::map<std::vector<std::uint64_t>, std::uint32_t> class_ids;
  std::uint32_t mask_offset = 0;
  bool chain_ok = true;
  for (std::size_t root_bus = 0; root_bus < n; ++root_bus) {
    if (comp_of_[root_bus] != UINT32_MAX) continue;
    const auto comp = static_cast<std::uint32_t>(components_.size());
    std::vector<std::uint32_t> members{static_cast<std::uint32_t>(root_bus)};
    comp_of_[root_bus] = comp;
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (std::uint32_t w : undirected[members[k]]) {
        if (comp_of_[w] == UINT32_MAX) {
          comp_of_[w] = comp;
          members.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    for (std::size_t k = 0; k < members.size(); ++k) local_of_[members[k]] = static_cast<std::uint32_t>(k);
    std::vector<std::uint64_t> signature{members.size()};
    for (std::uint32_t m : members) signature.push_back((std::uint64_t{labels_[m].color.value} << 32) | labels_[m].capacity);
    std::vector<std::uint64_t> edges;
    for (std::uint32_t m : members) {
      for (std::uint32_t u : blocked_[m]) edges.push_back((std::uint64_t{local_of_[u]} << 32) | local_of_[m]);
    }
    std::sort(edges.begin(), edges.end());
    signature.insert(signature.end(), edges.begin(), edges.end());
    auto [it, inserted] = class_ids.emplace(std::move(signature), static_cast<std::uint32_t>(classes_.size()));
    if (inserted) classes_.emplace_back();
    classes_[it->second].push_back(comp);
    if (chain_ok) {
      const auto head = std::find_if(members.begin(), members.end(), [&](std::uint32_t m) { return out_degree_[m] == 0; });
      bool is_chain = head != members.end();
      for (std::uint32_t m : members) is_chain = is_chain && out_degree_[m] <= 1 && blocked_[m].size() <= 1;
      if (is_chain) {
        chain_begin_.push_back(static_cast<std::uint32_t>(chain_order_.size()));
        for (std::uint32_t v = *head;;) {
          chain_order_.push_back(v);
          if (blocked_[v].empty()) break;
          v = blocked_[v].front();
        }
      } else {
        chain_ok = false;
      }
    }
    const auto mw = static_cast<std::uint32_t>((members.size() + 63) / 64);
    components_.push_back({it->second, static_cast<std::uint32_t>(members.size()), mask_offset, mw});
    mask_offset += mw;
  }
  if (!chain_ok) {
    chain_begin_.clear();
    chain_order_.clear();
  }
  comp_masks_.assign(mask_offset, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = components_[comp_of_[i]];
    comp_masks_[c.mask_offset + (local_of_[i] >> 6)] |= std::uint64_t{1} << (local_of_[i] & 63);
  }

  runs_ = root.queue().runs();
  ends_.clear();
  std::uint64_t acc = 0;
  for (const auto& r : runs_) ends_.push_back(acc += r.count);
  cursor_ = root.queue().cursor();
  run_ = static_cast<std::size_t>(std::upper_bound(ends_.begin(), ends_.end(), cursor_) - ends_.begin());

  for (const auto& s : root.spots().spots()) spots_.push_back(s ? pack_spot(s->color.value, s->remaining) : 0);
  key_width_ = 1 + spots_.size() + words_;
  max_capacity_.assign(root.palette().size(), 0);
  for (const auto& l : labels_) max_capacity_[l.color.value] = std::max<std::uint64_t>(max_capacity_[l.color.value], l.capacity);
  for (std::uint64_t sp : spots_) {
    if (sp) max_capacity_[spot_color_plus1(sp) - 1] = std::max(max_capacity_[spot_color_plus1(sp) - 1], spot_remaining(sp));
  }
  normalize();
}

bool SearchEngine::is_empty() const {
  if (run_ < runs_.size()) return false;
  for (std::uint64_t w : remaining_) {
    if (w) return false;
  }
  return std::all_of(spots_.begin(), spots_.end(), [](std::uint64_t s) { return s == 0; });
}

bool SearchEngine::has_empty_spot() const {
  return std::any_of(spots_.begin(), spots_.end(), [](std::uint64_t s) { return s == 0; });
}

std::optional<ColorId> SearchEngine::front() const {
  if (run_ >= runs_.size()) return std::nullopt;
  return runs_[run_].color;
}

void SearchEngine::normalize() {
  while (run_ < runs_.size()) {
    const std::uint32_t want = runs_[run_].color.value + 1u;
    std::size_t target = spots_.size();
    for (std::size_t i = 0; i < spots_.size(); ++i) {
      if (spot_color_plus1(spots_[i]) != want) continue;
      if (policy_ == BoardingPolicy::kLeftmost) {
        target = i;
        break;
      }
      if (target == spots_.size() || spot_remaining(spots_[i]) < spot_remaining(spots_[target])) target = i;
    }
    if (target == spots_.size()) return;
    const std::uint64_t avail = ends_[run_] - cursor_;
    std::uint64_t rem = spot_remaining(spots_[target]);
    const std::uint64_t take = std::min(avail, rem);
    cursor_ += take;
    rem -= take;
    spots_[target] = rem ? ((spots_[target] & ~0xFFFFFFFFull) | rem) : 0;
    if (cursor_ == ends_[run_]) ++run_;
  }
}

void SearchEngine::legal_moves(std::vector<std::uint32_t>& out) const {
  out.clear();
  if (!has_empty_spot()) return;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = free_[w];
    while (bits) {
      const auto bus = static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits));
      bits &= bits - 1;
      if (keys_ == KeyMode::kSymmetric) {
        const auto& c = components_[comp_of_[bus]];
        bool duplicate = false;
        for (std::uint32_t prev : out) {
          const auto& pc = components_[comp_of_[prev]];
          if (pc.klass != c.klass || local_of_[prev] != local_of_[bus]) continue;
          if (std::equal(comp_masks_.begin() + pc.mask_offset, comp_masks_.begin() + pc.mask_offset + pc.mask_words,
                         comp_masks_.begin() + c.mask_offset)) {
            duplicate = true;
            break;
          }
        }
        if (duplicate) continue;
      }
      out.push_back(bus);
    }
  }
}

void SearchEngine::order_moves(std::span<std::uint32_t> moves) const {
  const auto fr = front();
  std::sort(moves.begin(), moves.end(), [&](std::uint32_t a, std::uint32_t b) {
    const bool ma = fr && labels_[a].color == *fr;
    const bool mb = fr && labels_[b].color == *fr;
    if (ma != mb) return ma;
    if (labels_[a].capacity != labels_[b].capacity) return labels_[a].capacity > labels_[b].capacity;
    return a < b;
  });
}

void SearchEngine::save(Snapshot& snap, std::vector<std::uint64_t>& spot_stack) const {
  snap.cursor = cursor_;
  snap.run = run_;
  snap.spots_offset = spot_stack.size();
  spot_stack.insert(spot_stack.end(), spots_.begin(), spots_.end());
}

void SearchEngine::remove_bus(std::uint32_t bus) {
  clear_bit(remaining_, bus);
  clear_bit(free_, bus);
  const auto& c = components_[comp_of_[bus]];
  comp_masks_[c.mask_offset + (local_of_[bus] >> 6)] &= ~(std::uint64_t{1} << (local_of_[bus] & 63));
  for (std::uint32_t u : blocked_[bus]) {
    if (--out_degree_[u] == 0) set_bit(free_, u);
  }
}

void SearchEngine::restore_bus(std::uint32_t bus) {
  for (std::uint32_t u : blocked_[bus]) {
    if (out_degree_[u]++ == 0) clear_bit(free_, u);
  }
  set_bit(remaining_, bus);
  set_bit(free_, bus);
  const auto& c = components_[comp_of_[bus]];
  comp_masks_[c.mask_offset + (local_of_[bus] >> 6)] |= std::uint64_t{1} << (local_of_[bus] & 63);
}

void SearchEngine::dispatch(std::uint32_t bus) {
  std::size_t slot = 0;
  while (spots_[slot] != 0) ++slot;
  spots_[slot] = pack_spot(labels_[bus].color.value, labels_[bus].capacity);
  remove_bus(bus);
  normalize();
}

void SearchEngine::undo(std::uint32_t bus, const Snapshot& snap, std::vector<std::uint64_t>& spot_stack) {
  restore_bus(bus);
  cursor_ = snap.cursor;
  run_ = snap.run;
  std::copy(spot_stack.begin() + static_cast<std::ptrdiff_t>(snap.spots_offset),
            spot_stack.begin() + static_cast<std::ptrdiff_t>(snap.spots_offset + spots_.size()), spots_.begin());
  spot_stack.resize(snap.spots_offset);
}

bool SearchEngine::closure_feasible() const {
  if (chain_begin_.empty() || run_ >= runs_.size()) return true;
  // Just before and just after the last passenger of each run.
  for (std::size_t r = run_; r < std::min(run_ + 2, runs_.size()); ++r) {
    if (ends_[r] - 1 > cursor_ && !feasible_at(ends_[r] - 1)) return false;
    if (!feasible_at(ends_[r])) return false;
  }
  return true;
}

// Reachable seat totals per color form a table indexed by all colors but the
// widest in mixed radix, with the widest color as a bitset along each row.
bool SearchEngine::feasible_at(std::uint64_t position) const {
  constexpr std::size_t kMaxWords = std::size_t{1} << 15;
  const std::size_t colors = max_capacity_.size();
  const std::uint64_t s = spots_.size();
  std::vector<std::uint64_t> demand(colors, 0), seats(colors, 0), radix(colors), stride(colors, 0);
  for (std::size_t r = run_; r < runs_.size(); ++r) {
    const std::uint64_t from = std::max(cursor_, r ? ends_[r - 1] : 0);
    if (from >= position) break;
    demand[runs_[r].color.value] += std::min(position, ends_[r]) - from;
  }
  for (std::uint64_t sp : spots_) {
    if (sp) seats[spot_color_plus1(sp) - 1] += spot_remaining(sp);
  }
  std::size_t last = 0;
  for (std::size_t y = 0; y < colors; ++y) {
    radix[y] = demand[y] + s * max_capacity_[y] + 1;
    if (seats[y] >= radix[y]) return false;
    if (radix[y] > radix[last]) last = y;
  }
  std::uint64_t rows = 1;
  for (std::size_t y = 0; y < colors; ++y) {
    if (y == last) continue;
    stride[y] = rows;
    rows *= radix[y];
    if (rows > kMaxWords) return true;
  }
  const std::uint64_t width = (radix[last] + 63) / 64;
  if (rows * width > kMaxWords) return true;
  const std::uint64_t tail_mask = radix[last] % 64 ? (std::uint64_t{1} << (radix[last] % 64)) - 1 : ~std::uint64_t{0};

  table_.assign(rows * width, 0);
  std::uint64_t start = 0;
  for (std::size_t y = 0; y < colors; ++y) start += seats[y] * stride[y];
  table_[start * width + seats[last] / 64] |= std::uint64_t{1} << (seats[last] % 64);

  std::vector<std::uint64_t> add(colors), index(colors);
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const auto& comp = components_[c];
    std::uint32_t left = 0;
    for (std::uint32_t k = 0; k < comp.mask_words; ++k) left += static_cast<std::uint32_t>(std::popcount(comp_masks_[comp.mask_offset + k]));
    if (left == 0) continue;
    next_table_ = table_;
    std::fill(add.begin(), add.end(), 0);
    const std::uint32_t* chain = chain_order_.data() + chain_begin_[c];
    for (std::uint32_t k = comp.size - left; k < comp.size; ++k) {
      const auto& l = labels_[chain[k]];
      if ((add[l.color.value] += l.capacity) >= radix[l.color.value]) break;
      std::uint64_t row_shift = 0;
      for (std::size_t y = 0; y < colors; ++y) row_shift += add[y] * stride[y];
      const std::uint64_t word_shift = add[last] / 64;
      const unsigned bit_shift = add[last] % 64;
      std::fill(index.begin(), index.end(), 0);
      for (std::uint64_t row = 0; row < rows; ++row) {
        bool fits = true;
        for (std::size_t y = 0; y < colors && fits; ++y) fits = y == last || index[y] + add[y] < radix[y];
        if (fits) {
          const std::uint64_t* src = table_.data() + row * width;
          std::uint64_t* dst = next_table_.data() + (row + row_shift) * width;
          for (std::uint64_t w = 0; w + word_shift < width; ++w) {
            if (!src[w]) continue;
            dst[w + word_shift] |= src[w] << bit_shift;
            if (bit_shift && w + word_shift + 1 < width) dst[w + word_shift + 1] |= src[w] >> (64 - bit_shift);
          }
          dst[width - 1] &= tail_mask;
        }
        for (std::size_t y = 0; y < colors; ++y) {
          if (y == last) continue;
          if (++index[y] < radix[y]) break;
          index[y] = 0;
        }
      }
    }
    table_.swap(next_table_);
  }

  // Take the instant just before passenger `position` boards: every demand
  // so far is covered, the leftover seats fit in <= s spots, and a parked bus
  // of that passenger's color has a free seat.
  std::vector<std::uint64_t> need = demand;
  if (position < ends_.back()) {
    ++need[runs_[std::upper_bound(ends_.begin(), ends_.end(), position) - ends_.begin()].color.value];
  }
  auto spots_needed = [&](std::size_t y, std::uint64_t total) {
    if (total <= demand[y]) return std::uint64_t{0};
    return (total - demand[y] + max_capacity_[y] - 1) / max_capacity_[y];
  };
  std::fill(index.begin(), index.end(), 0);
  for (std::uint64_t row = 0; row < rows; ++row) {
    std::uint64_t used = 0;
    bool covered = true;
    for (std::size_t y = 0; y < colors && covered; ++y) {
      if (y == last) continue;
      covered = index[y] >= need[y];
      if (covered) used += spots_needed(y, index[y]);
    }
    if (covered && used <= s) {
      const std::uint64_t* bits = table_.data() + row * width;
      for (std::uint64_t b = need[last]; b < radix[last]; ++b) {
        if (used + spots_needed(last, b) > s) break;
        if ((bits[b / 64] >> (b % 64)) & 1) return true;
      }
    }
    for (std::size_t y = 0; y < colors; ++y) {
      if (y == last) continue;
      if (++index[y] < radix[y]) break;
      index[y] = 0;
    }
  }
  return false;
}

void SearchEngine::write_key(std::uint64_t* out) const {
  *out++ = cursor_;
  std::copy(spots_.begin(), spots_.end(), out);
  if (policy_ == BoardingPolicy::kFewestRemaining) std::sort(out, out + spots_.size());
  out += spots_.size();
  if (keys_ == KeyMode::kIdentity) {
    std::copy(remaining_.begin(), remaining_.end(), out);
    return;
  }
  std::fill(out, out + words_, 0);
  std::size_t bit = 0;
  auto append = [&](const Component& c) {
    for (std::uint32_t k = 0; k < c.mask_words; ++k) {
      const std::uint64_t w = comp_masks_[c.mask_offset + k];
      const std::uint32_t len = std::min<std::uint32_t>(64, c.size - k * 64);
      out[bit >> 6] |= w << (bit & 63);
      if ((bit & 63) + len > 64) out[(bit >> 6) + 1] |= w >> (64 - (bit & 63));
      bit += len;
    }
  };
  for (const auto& members : classes_) {
    if (members.size() == 1) {
      append(components_[members[0]]);
      continue;
    }
    scratch_.assign(members.begin(), members.end());
    const auto& comps = components_;
    const auto& masks = comp_masks_;
    std::sort(scratch_.begin(), scratch_.end(), [&](std::uint32_t a, std::uint32_t b) {
      const auto& ca = comps[a];
      const auto& cb = comps[b];
      for (std::uint32_t k = ca.mask_words; k-- > 0;) {
        const std::uint64_t wa = masks[ca.mask_offset + k];
        const std::uint64_t wb = masks[cb.mask_offset + k];
        if (wa != wb) return wa < wb;
      }
      return false;
    });
    for (std::uint32_t comp : scratch_) append(components_[comp]);
  }
}

}  // namespace busout::detail

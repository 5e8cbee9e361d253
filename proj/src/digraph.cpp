#include "gsdbench/digraph.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace gsdbench {

namespace {

class BitRows {
 public:
  BitRows(std::size_t rows, std::size_t bits)
      : words_((bits + 63) / 64), data_(rows * words_, 0) {}

  void set(std::size_t row, std::size_t bit) {
    data_[row * words_ + bit / 64] |= std::uint64_t{1} << (bit % 64);
  }
  void merge_into(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_; ++w)
      data_[dst * words_ + w] |= data_[src * words_ + w];
  }
  void or_into(std::vector<std::uint64_t>& dst, std::size_t row) const {
    for (std::size_t w = 0; w < words_; ++w) dst[w] |= data_[row * words_ + w];
  }
  std::size_t words() const { return words_; }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

}  // namespace

std::vector<std::vector<int>> transitive_reduction(
    const std::vector<std::vector<int>>& succ) {
  const std::size_t n = succ.size();
  // Topological order by DFS; a cycle is a caller error here.
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> state(n, 0);
  std::vector<std::pair<int, std::size_t>> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start] != 0) continue;
    stack.emplace_back(static_cast<int>(start), 0);
    state[start] = 1;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < succ[v].size()) {
        const int w = succ[v][idx++];
        if (state[w] == 1) throw std::invalid_argument("cycle in dominance graph");
        if (state[w] == 0) {
          state[w] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        state[v] = 2;
        order.push_back(v);
        stack.pop_back();
      }
    }
  }

  // `order` is reverse-topological: successors appear before predecessors,
  // so one pass accumulates full reachability.
  BitRows reach(n, n);
  for (int v : order) {
    for (int w : succ[v]) {
      reach.set(v, static_cast<std::size_t>(w));
      reach.merge_into(v, static_cast<std::size_t>(w));
    }
  }

  // (v,w) is covering iff w is not reachable through another successor of v.
  std::vector<std::uint64_t> blocked(reach.words());
  std::vector<std::vector<int>> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::fill(blocked.begin(), blocked.end(), 0);
    for (int w : succ[v]) reach.or_into(blocked, static_cast<std::size_t>(w));
    for (int w : succ[v])
      if (!((blocked[w / 64] >> (w % 64)) & 1)) out[v].push_back(w);
    std::sort(out[v].begin(), out[v].end());
    out[v].erase(std::unique(out[v].begin(), out[v].end()), out[v].end());
  }
  return out;
}

}  // namespace gsdbench

#ifndef ASRDIFF_ALIGNMENT_IMPL_H_
#define ASRDIFF_ALIGNMENT_IMPL_H_

#include <algorithm>

namespace asrdiff {

template <typename T>
WordAlignment Align(std::span<const T> ref, std::span<const T> hyp) {
  const size_t n = ref.size();
  const size_t m = hyp.size();
  // cost[i][j]: distance between ref[0, i) and hyp[0, j).
  std::vector<int> cost((n + 1) * (m + 1));
  auto at = [m](size_t i, size_t j) { return i * (m + 1) + j; };
  for (size_t i = 0; i <= n; ++i) cost[at(i, 0)] = static_cast<int>(i);
  for (size_t j = 0; j <= m; ++j) cost[at(0, j)] = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      const int diag = cost[at(i - 1, j - 1)] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const int del = cost[at(i - 1, j)] + 1;
      const int ins = cost[at(i, j - 1)] + 1;
      cost[at(i, j)] = std::min({diag, del, ins});
    }
  }

  WordAlignment result;
  result.distance = cost[at(n, m)];
  size_t i = n;
  size_t j = m;
  while (i > 0 || j > 0) {
    const int here = cost[at(i, j)];
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (cost[at(i - 1, j - 1)] + (same ? 0 : 1) == here) {
        result.ops.push_back({same ? EditKind::kMatch : EditKind::kSubstitute, static_cast<int>(i - 1),
                              static_cast<int>(j - 1)});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && cost[at(i - 1, j)] + 1 == here) {
      result.ops.push_back({EditKind::kDelete, static_cast<int>(i - 1), -1});
      --i;
      continue;
    }
    result.ops.push_back({EditKind::kInsert, -1, static_cast<int>(j - 1)});
    --j;
  }
  std::reverse(result.ops.begin(), result.ops.end());
  return result;
}

template <typename T>
int EditDistance(std::span<const T> a, std::span<const T> b) {
  // Two-row variant; the full table is only needed for a backtrace.
  std::vector<int> prev(b.size() + 1);
  std::vector<int> cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1), prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace asrdiff

#endif  // ASRDIFF_ALIGNMENT_IMPL_H_

#include "qairy/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace qairy {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k] < 1) throw std::invalid_argument("partition parts must be positive");
    if (k > 0 && parts_[k] > parts_[k - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
  total_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

int lambda_of(const Partition& p, int i) {
  if (i < 1 || i > p.size())
    throw std::out_of_range("lambda_of: index " + std::to_string(i) + " outside 1.." +
                            std::to_string(p.size()));
  int prefix = 0;
  for (int s = 0; s < p.length(); ++s) {
    prefix += p.parts()[s];
    if (prefix >= i) return s + 1;
  }
  return p.length();  // unreachable: prefix reaches r
}

bool LambdaIndexSet::contains(int i, int m) const {
  auto it = bounds.find(i);
  return it != bounds.end() && m >= it->second;
}

LambdaIndexSet lambda_good_set(const Partition& p) {
  LambdaIndexSet set;
  set.r = p.size();
  for (int i = 1; i <= p.size(); ++i) set.bounds[i] = i - lambda_of(p, i);
  return set;
}

namespace {

void generate(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    generate(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

bool matches(const Partition& p, const std::map<int, int>& profile) {
  for (const auto& [i, want] : profile) {
    if (i < 1 || i > p.size()) return false;
    if (lambda_of(p, i) != want) return false;
  }
  return true;
}

}  // namespace

std::vector<Partition> partitions_of(int r) {
  if (r < 0) throw std::invalid_argument("partitions_of: negative size");
  std::vector<Partition> out;
  std::vector<int> cur;
  generate(r, r, cur, out);
  return out;
}

std::vector<Partition> partitions_matching(int r, const std::map<int, int>& profile) {
  std::vector<Partition> out;
  for (auto& p : partitions_of(r)) {
    if (matches(p, profile)) out.push_back(std::move(p));
  }
  return out;
}

std::optional<Partition> find_partition_with_profile(int r, const std::map<int, int>& profile) {
  for (const auto& [i, want] : profile) {
    if (want > i || want < 1) return std::nullopt;
  }
  // partitions_of yields lexicographically decreasing order
  for (auto& p : partitions_of(r)) {
    if (matches(p, profile)) return p;
  }
  return std::nullopt;
}

}  // namespace qairy

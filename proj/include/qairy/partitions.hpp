#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qairy {

/// Integer partition with weakly decreasing positive parts.
class Partition {
 public:
  Partition() = default;
  /// Throws std::invalid_argument unless parts are positive and weakly decreasing.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return total_; }
  int length() const { return static_cast<int>(parts_.size()); }

  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition& o) const { return parts_ <=> o.parts_; }

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

/// lambda(i) = min{ s : lambda_1 + ... + lambda_s >= i }, for 1 <= i <= r.
int lambda_of(const Partition& p, int i);

/// The lambda-good index set: (i, m) admissible iff m >= bounds[i].
struct LambdaIndexSet {
  int r = 0;
  std::map<int, int> bounds;  // i -> minimal admissible m

  bool contains(int i, int m) const;
  bool operator==(const LambdaIndexSet&) const = default;
};

LambdaIndexSet lambda_good_set(const Partition& p);

/// All partitions of r, lexicographically decreasing.
std::vector<Partition> partitions_of(int r);

/// Profile as a map i -> required lambda(i) on 1..r. Exhaustive search over
/// the partitions of r; among several matches the lexicographically largest
/// is returned. Profiles with lambda(i) > i are unsatisfiable.
std::optional<Partition> find_partition_with_profile(int r, const std::map<int, int>& profile);

/// Every partition of `r` whose lambda-profile agrees with `profile` on the
/// indices the profile defines (a partial profile is allowed).
std::vector<Partition> partitions_matching(int r, const std::map<int, int>& profile);

}  // namespace qairy

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace aqim {

/// Hilbert spaces above this total dimension are refused by constructive
/// operations (tensor products, samplers); dense storage would be hopeless
/// anyway.
inline constexpr std::int64_t kMaxTotalDim = std::int64_t{1} << 20;

/// Multipartite factorization d_1 x d_2 x ... x d_m with party 1 as the most
/// significant tensor factor.
class PartitionSpec {
 public:
  explicit PartitionSpec(std::vector<std::int64_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("PartitionSpec: need at least one party");
    total_ = 1;
    for (auto d : dims_) {
      if (d < 1) throw std::invalid_argument("PartitionSpec: party dimensions must be >= 1");
      if (total_ > kMaxTotalDim / d)
        throw std::length_error("PartitionSpec: total dimension exceeds capacity");
      total_ *= d;
    }
  }

  static PartitionSpec single(std::int64_t d) { return PartitionSpec({d}); }

  static PartitionSpec qudits(int parties, std::int64_t d) {
    if (parties < 1) throw std::invalid_argument("PartitionSpec: need at least one party");
    return PartitionSpec(std::vector<std::int64_t>(static_cast<std::size_t>(parties), d));
  }

  static PartitionSpec qubits(int parties) { return qudits(parties, 2); }

  static PartitionSpec bipartite(std::int64_t d1, std::int64_t d2) {
    return PartitionSpec({d1, d2});
  }

  const std::vector<std::int64_t>& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  std::int64_t total_dim() const { return total_; }
  std::int64_t dim(int party) const { return dims_.at(static_cast<std::size_t>(party - 1)); }

  /// Stride of a party index in the flattened state vector (party 1 most
  /// significant).
  std::int64_t stride(int party) const {
    std::int64_t s = 1;
    for (int i = party + 1; i <= parties(); ++i) s *= dim(i);
    return s;
  }

  PartitionSpec concatenated(const PartitionSpec& other) const {
    std::vector<std::int64_t> d = dims_;
    d.insert(d.end(), other.dims_.begin(), other.dims_.end());
    return PartitionSpec(std::move(d));
  }

  bool same_dims(const PartitionSpec& other) const { return dims_ == other.dims_; }

 private:
  std::vector<std::int64_t> dims_;
  std::int64_t total_ = 1;
};

/// A subset S of parties, stored as strictly increasing 1-based indices.
/// The complement S^c is implicit.
class SubsystemSelector {
 public:
  explicit SubsystemSelector(std::vector<int> keep) : keep_(std::move(keep)) {
    if (keep_.empty()) throw std::invalid_argument("SubsystemSelector: empty keep set");
    for (std::size_t i = 0; i < keep_.size(); ++i) {
      if (keep_[i] < 1) throw std::invalid_argument("SubsystemSelector: party indices are 1-based");
      if (i > 0 && keep_[i] <= keep_[i - 1])
        throw std::invalid_argument("SubsystemSelector: keep set must be strictly increasing");
    }
  }

  static SubsystemSelector parties(std::initializer_list<int> keep) {
    return SubsystemSelector(std::vector<int>(keep));
  }

  const std::vector<int>& keep() const { return keep_; }
  int size() const { return static_cast<int>(keep_.size()); }

  void check_against(const PartitionSpec& part) const {
    if (keep_.back() > part.parties())
      throw std::invalid_argument("SubsystemSelector: party index " +
                                  std::to_string(keep_.back()) + " out of range for " +
                                  std::to_string(part.parties()) + " parties");
  }

  std::int64_t kept_dim(const PartitionSpec& part) const {
    check_against(part);
    std::int64_t d = 1;
    for (int p : keep_) d *= part.dim(p);
    return d;
  }

  std::vector<int> complement(const PartitionSpec& part) const {
    check_against(part);
    std::vector<int> comp;
    std::size_t j = 0;
    for (int p = 1; p <= part.parties(); ++p) {
      if (j < keep_.size() && keep_[j] == p) {
        ++j;
      } else {
        comp.push_back(p);
      }
    }
    return comp;
  }

  PartitionSpec kept_partition(const PartitionSpec& part) const {
    check_against(part);
    std::vector<std::int64_t> d;
    d.reserve(keep_.size());
    for (int p : keep_) d.push_back(part.dim(p));
    return PartitionSpec(std::move(d));
  }

 private:
  std::vector<int> keep_;
};

/// All size-k subsets of {1,...,m} in lexicographic order.
inline std::vector<SubsystemSelector> selectors_of_order(int m, int k) {
  if (k < 1 || k > m) throw std::invalid_argument("selectors_of_order: need 1 <= k <= m");
  std::vector<SubsystemSelector> out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 1);
  while (true) {
    out.emplace_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - (k - 1 - i)) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace aqim

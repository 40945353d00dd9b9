#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsys/affine.hpp"

namespace gsys {

using GroupTuple = std::vector<std::size_t>;

/// Finite group given by a validated multiplication table over labelled elements.
class FiniteGroup {
 public:
  /// table[a][b] = index of a*b. Throws GroupAxiomError naming the violated axiom and a witness.
  static FiniteGroup build(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> table);
  /// Table keyed by label pairs; every pair must be present.
  static FiniteGroup build(std::vector<std::string> labels,
                           const std::map<std::pair<std::string, std::string>, std::string>& table);

  /// Z/n with labels e, g, g2, ..., g{n-1}; Z/2 uses e, s.
  static FiniteGroup cyclic(int n);
  /// S3 as permutations of {0,1,2}, composition (p*q)(i) = p(q(i)); labels are one-line notation.
  static FiniteGroup symmetric3();

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t g) const { return labels_.at(g); }
  /// Throws FormatError for unknown labels.
  std::size_t index_of(const std::string& label) const;

  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t inverse(std::size_t g) const { return inverse_[g]; }
  /// g_1 g_2 ... g_k (identity for the empty tuple).
  std::size_t product(std::span<const std::size_t> tuple) const;

  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.labels_ == b.labels_ && a.table_ == b.table_;
  }

 private:
  FiniteGroup() = default;

  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

/// All of G^k in lexicographic order of element indices; k = 0 gives one empty tuple.
std::vector<GroupTuple> enumerate_tuples(const FiniteGroup& group, int k);

/// Position of `tuple` in enumerate_tuples(group, tuple.size()).
std::size_t tuple_index(const FiniteGroup& group, std::span<const std::size_t> tuple);

std::size_t tuple_count(const FiniteGroup& group, int k);

std::string tuple_label(const FiniteGroup& group, std::span<const std::size_t> tuple);

/// g -> phi_g. Construction only checks shapes; use action_validate for the group law.
class AffineAction {
 public:
  AffineAction(FiniteGroup group, std::vector<AffineDiffeo> maps);

  static AffineAction trivial(FiniteGroup group, int dimension);

  const FiniteGroup& group() const noexcept { return group_; }
  int dimension() const noexcept { return maps_.front().dimension(); }
  const AffineDiffeo& map(std::size_t g) const { return maps_.at(g); }
  const std::vector<AffineDiffeo>& maps() const noexcept { return maps_; }
  bool is_trivial() const;

  friend bool operator==(const AffineAction& a, const AffineAction& b) = default;

 private:
  FiniteGroup group_;
  std::vector<AffineDiffeo> maps_;
};

struct ActionReport {
  bool valid = true;
  bool identity_ok = true;
  /// Pairs (g, h) with phi_{gh} != phi_g o phi_h.
  std::vector<std::pair<std::size_t, std::size_t>> failing_pairs;
};

/// Checks phi_e = id and phi_{gh} = phi_g o phi_h for every pair.
ActionReport action_validate(const AffineAction& action);

}  // namespace gsys

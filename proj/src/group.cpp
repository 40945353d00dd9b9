#include "gsys/group.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "gsys/error.hpp"

namespace gsys {

FiniteGroup FiniteGroup::build(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> table) {
  const std::size_t n = labels.size();
  if (n == 0) throw GroupAxiomError("nonempty", {}, "group must have at least one element");
  {
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw GroupAxiomError("labels", {*dup}, "duplicate element label '" + *dup + "'");
  }
  if (table.size() != n) throw GroupAxiomError("closure", {}, "multiplication table has wrong number of rows");
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) {
      throw GroupAxiomError("closure", {labels[a]}, "multiplication table row '" + labels[a] + "' is incomplete");
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) {
        throw GroupAxiomError("closure", {labels[a], labels[b]},
                              "product " + labels[a] + "*" + labels[b] + " is not an element");
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw GroupAxiomError("associativity", {labels[a], labels[b], labels[c]},
                                "associativity fails for (" + labels[a] + ", " + labels[b] + ", " + labels[c] + ")");
        }
  std::size_t identity = n;
  for (std::size_t e = 0; e < n && identity == n; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) identity = e;
  }
  if (identity == n) throw GroupAxiomError("identity", {}, "no two-sided identity element");
  std::vector<std::size_t> inv(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == identity && table[b][a] == identity) inv[a] = b;
    if (inv[a] == n) throw GroupAxiomError("inverse", {labels[a]}, "element '" + labels[a] + "' has no inverse");
  }
  FiniteGroup g;
  g.labels_ = std::move(labels);
  g.table_ = std::move(table);
  g.identity_ = identity;
  g.inverse_ = std::move(inv);
  return g;
}

FiniteGroup FiniteGroup::build(std::vector<std::string> labels,
                               const std::map<std::pair<std::string, std::string>, std::string>& table) {
  const std::size_t n = labels.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(labels[i], i);
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto it = table.find({labels[a], labels[b]});
      if (it == table.end()) {
        throw GroupAxiomError("closure", {labels[a], labels[b]},
                              "multiplication table has no entry for " + labels[a] + "," + labels[b]);
      }
      auto target = index.find(it->second);
      if (target == index.end()) {
        throw GroupAxiomError("closure", {labels[a], labels[b]},
                              "product " + labels[a] + "*" + labels[b] + " = '" + it->second + "' is not an element");
      }
      t[a][b] = target->second;
    }
  }
  for (const auto& [key, value] : table) {
    if (!index.contains(key.first) || !index.contains(key.second)) {
      throw GroupAxiomError("closure", {key.first, key.second}, "table entry refers to an unknown element");
    }
  }
  return build(std::move(labels), std::move(t));
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n <= 0) throw PreconditionError("cyclic group order must be positive");
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    if (i == 0) labels.push_back("e");
    else if (n == 2) labels.push_back("s");
    else if (i == 1) labels.push_back("g");
    else labels.push_back("g" + std::to_string(i));
  }
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = static_cast<std::size_t>((a + b) % n);
  return build(std::move(labels), std::move(t));
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> labels;
  for (const auto& q : perms) labels.push_back(q == std::array<int, 3>{0, 1, 2} ? "e" : std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
  const std::size_t n = perms.size();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return build(std::move(labels), std::move(t));
}

std::size_t FiniteGroup::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw FormatError("unknown group element '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t FiniteGroup::product(std::span<const std::size_t> tuple) const {
  std::size_t acc = identity_;
  for (auto g : tuple) acc = table_[acc][g];
  return acc;
}

std::vector<GroupTuple> enumerate_tuples(const FiniteGroup& group, int k) {
  if (k < 0) throw PreconditionError("negative tuple length");
  const std::size_t n = group.size();
  std::vector<GroupTuple> out;
  out.reserve(tuple_count(group, k));
  GroupTuple cur(k, 0);
  while (true) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && ++cur[pos] == n) cur[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

std::size_t tuple_index(const FiniteGroup& group, std::span<const std::size_t> tuple) {
  std::size_t idx = 0;
  for (auto g : tuple) idx = idx * group.size() + g;
  return idx;
}

std::size_t tuple_count(const FiniteGroup& group, int k) {
  std::size_t c = 1;
  for (int i = 0; i < k; ++i) c *= group.size();
  return c;
}

std::string tuple_label(const FiniteGroup& group, std::span<const std::size_t> tuple) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ",";
    out += group.label(tuple[i]);
  }
  return out;
}

AffineAction::AffineAction(FiniteGroup group, std::vector<AffineDiffeo> maps)
    : group_(std::move(group)), maps_(std::move(maps)) {
  if (maps_.size() != group_.size()) throw PreconditionError("action must assign a map to every group element");
  for (const auto& m : maps_) require_same_dimension(maps_.front().dimension(), m.dimension(), "affine action");
}

AffineAction AffineAction::trivial(FiniteGroup group, int dimension) {
  std::vector<AffineDiffeo> maps(group.size(), AffineDiffeo::identity(dimension));
  return AffineAction(std::move(group), std::move(maps));
}

bool AffineAction::is_trivial() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const AffineDiffeo& m) { return m.is_identity(); });
}

ActionReport action_validate(const AffineAction& action) {
  ActionReport report;
  const FiniteGroup& g = action.group();
  report.identity_ok = action.map(g.identity()).is_identity();
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b)
      if (!(action.map(g.multiply(a, b)) == affine_compose(action.map(a), action.map(b)))) {
        report.failing_pairs.emplace_back(a, b);
      }
  report.valid = report.identity_ok && report.failing_pairs.empty();
  return report;
}

}  // namespace gsys

#include "princlat/order.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace princlat {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotAPartialOrder: return "NotAPartialOrder";
    case Errc::NotALattice: return "NotALattice";
    case Errc::NotSurjective: return "NotSurjective";
    case Errc::NotAChain: return "NotAChain";
    case Errc::LabelCollision: return "LabelCollision";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::NotAnIdeal: return "NotAnIdeal";
    case Errc::NoZero: return "NoZero";
    case Errc::NotDirected: return "NotDirected";
    case Errc::NotAChainOfIdeals: return "NotAChainOfIdeals";
    case Errc::UnknownGadget: return "UnknownGadget";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

std::vector<std::string> default_labels(std::size_t n, std::vector<std::string> labels) {
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != n)
    throw Error(Errc::IndexOutOfRange, "label table size does not match carrier size");
  return labels;
}

void transitive_closure(BitMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m.test(i, k)) m.or_row(i, k);
}

}  // namespace

QuasiOrder::QuasiOrder(BitMatrix rel, std::vector<std::string> labels)
    : rel_(std::move(rel)), labels_(default_labels(rel_.size(), std::move(labels))) {}

QuasiOrder QuasiOrder::from_matrix(BitMatrix rel, std::vector<std::string> labels) {
  const std::size_t n = rel.size();
  for (std::size_t x = 0; x < n; ++x)
    if (!rel.test(x, x))
      throw Error(Errc::NotAPartialOrder, "relation is not reflexive", {Index(x)});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!rel.test(x, y)) continue;
      const auto rx = rel.row(x);
      const auto ry = rel.row(y);
      for (std::size_t k = 0; k < rx.size(); ++k)
        if ((ry[k] & ~rx[k]) != 0)
          throw Error(Errc::NotAPartialOrder, "relation is not transitive",
                      {Index(x), Index(y)});
    }
  return QuasiOrder(std::move(rel), std::move(labels));
}

std::vector<IndexPair> QuasiOrder::pairs() const {
  std::vector<IndexPair> out;
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y : rel_.row_indices(x)) out.emplace_back(Index(x), Index(y));
  return out;
}

std::optional<Index> QuasiOrder::find(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return Index(it - labels_.begin());
}

std::vector<Index> QuasiOrder::least_elements() const {
  std::vector<Index> out;
  for (std::size_t x = 0; x < size(); ++x)
    if (rel_.row_count(x) == size()) out.push_back(Index(x));
  return out;
}

std::vector<Index> QuasiOrder::greatest_elements() const {
  std::vector<Index> out;
  for (std::size_t x = 0; x < size(); ++x) {
    bool top = true;
    for (std::size_t y = 0; y < size() && top; ++y) top = rel_.test(y, x);
    if (top) out.push_back(Index(x));
  }
  return out;
}

bool QuasiOrder::is_antisymmetric() const noexcept {
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = x + 1; y < size(); ++y)
      if (rel_.test(x, y) && rel_.test(y, x)) return false;
  return true;
}

QuasiOrder quos(std::size_t size, std::span<const IndexPair> seed,
                std::vector<std::string> labels) {
  BitMatrix m = BitMatrix::identity(size);
  for (const auto& [x, y] : seed) {
    if (x >= size || y >= size)
      throw Error(Errc::IndexOutOfRange, "seed pair index out of range", {x, y});
    m.set(x, y);
  }
  transitive_closure(m);
  return QuasiOrder(std::move(m), std::move(labels));
}

Poset::Poset(QuasiOrder q) : q_(std::move(q)) {
  const auto lo = q_.least_elements();
  const auto hi = q_.greatest_elements();
  if (lo.size() == 1) least_ = lo.front();
  if (hi.size() == 1) greatest_ = hi.front();
}

Poset Poset::from_quasiorder(QuasiOrder q) {
  for (std::size_t x = 0; x < q.size(); ++x)
    for (std::size_t y = x + 1; y < q.size(); ++y)
      if (q.leq(Index(x), Index(y)) && q.leq(Index(y), Index(x)))
        throw Error(Errc::NotAPartialOrder,
                    "relation is not antisymmetric: " + q.label(Index(x)) +
                        " and " + q.label(Index(y)),
                    {Index(x), Index(y)});
  return Poset(std::move(q));
}

std::vector<IndexPair> Poset::cover_pairs() const {
  std::vector<IndexPair> out;
  const std::size_t n = size();
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      if (!less(x, y)) continue;
      bool cover = true;
      for (Index z = 0; z < n && cover; ++z)
        if (less(x, z) && less(z, y)) cover = false;
      if (cover) out.emplace_back(x, y);
    }
  return out;
}

Poset Poset::restrict_to(std::span<const Index> elements) const {
  const std::size_t k = elements.size();
  BitMatrix m(k);
  std::vector<std::string> labels;
  labels.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    labels.push_back(label(elements[i]));
    for (std::size_t j = 0; j < k; ++j)
      if (leq(elements[i], elements[j])) m.set(i, j);
  }
  return Poset::from_quasiorder(QuasiOrder::from_matrix(std::move(m), std::move(labels)));
}

bool IsoWitness::validates(const Poset& from, const Poset& to) const {
  const std::size_t n = from.size();
  if (to.size() != n || map.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Index m : map) {
    if (m >= n || hit[m]) return false;
    hit[m] = true;
  }
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      if (from.leq(x, y) != to.leq(map[x], map[y])) return false;
  return true;
}

IsoWitness IsoWitness::inverse() const {
  IsoWitness inv;
  inv.map.assign(map.size(), 0);
  for (Index x = 0; x < map.size(); ++x) inv.map[map[x]] = x;
  return inv;
}

ThetaQuotient theta_quotient(const QuasiOrder& q) {
  const std::size_t n = q.size();
  std::vector<Index> projection(n, 0);
  std::vector<Index> representative;
  std::vector<bool> seen(n, false);
  for (Index x = 0; x < n; ++x) {
    if (seen[x]) continue;
    const Index block = Index(representative.size());
    representative.push_back(x);
    for (Index y = x; y < n; ++y)
      if (!seen[y] && q.leq(x, y) && q.leq(y, x)) {
        seen[y] = true;
        projection[y] = block;
      }
  }
  const std::size_t k = representative.size();
  BitMatrix m(k);
  std::vector<std::string> labels;
  labels.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    labels.push_back(q.label(representative[i]));
    for (std::size_t j = 0; j < k; ++j)
      if (q.leq(representative[i], representative[j])) m.set(i, j);
  }
  return {Poset::from_quasiorder(QuasiOrder::from_matrix(std::move(m), std::move(labels))),
          std::move(projection)};
}

bool is_directed_with_zero(const Poset& p) {
  if (!p.least()) return false;
  const std::size_t n = p.size();
  const BitMatrix& m = p.as_quasiorder().matrix();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      bool bounded = false;
      const auto rx = m.row(x);
      const auto ry = m.row(y);
      for (std::size_t k = 0; k < rx.size() && !bounded; ++k) bounded = (rx[k] & ry[k]) != 0;
      if (!bounded) return false;
    }
  return true;
}

std::vector<Index> principal_ideal(const Poset& p, Index c) {
  if (c >= p.size()) throw Error(Errc::IndexOutOfRange, "element out of range", {c});
  std::vector<Index> out;
  for (Index x = 0; x < p.size(); ++x)
    if (p.leq(x, c)) out.push_back(x);
  return out;
}

namespace {

using Profile = std::array<std::size_t, 4>;

std::vector<Profile> profiles(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<Profile> out(n, Profile{0, 0, 0, 0});
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      if (p.leq(y, x)) ++out[x][0];
      if (p.leq(x, y)) ++out[x][1];
    }
  for (const auto& [lo, hi] : p.cover_pairs()) {
    ++out[hi][2];
    ++out[lo][3];
  }
  return out;
}

class IsoSearch {
 public:
  IsoSearch(const Poset& p, const Poset& q) : p_(p), q_(q) {}

  std::optional<IsoWitness> run() {
    const std::size_t n = p_.size();
    if (q_.size() != n) return std::nullopt;
    const auto pp = profiles(p_);
    const auto qp = profiles(q_);
    std::map<Profile, std::vector<Index>> buckets;
    for (Index y = 0; y < n; ++y) buckets[qp[y]].push_back(y);
    std::map<Profile, std::size_t> source_counts;
    for (Index x = 0; x < n; ++x) ++source_counts[pp[x]];
    for (const auto& [prof, count] : source_counts) {
      const auto it = buckets.find(prof);
      if (it == buckets.end() || it->second.size() != count) return std::nullopt;
    }
    candidates_.resize(n);
    for (Index x = 0; x < n; ++x) candidates_[x] = buckets[pp[x]];

    order_.resize(n);
    std::iota(order_.begin(), order_.end(), Index{0});
    std::stable_sort(order_.begin(), order_.end(), [&](Index a, Index b) {
      return candidates_[a].size() < candidates_[b].size();
    });
    map_.assign(n, 0);
    used_.assign(n, false);
    if (!extend(0)) return std::nullopt;
    return IsoWitness{map_};
  }

 private:
  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const Index x = order_[depth];
    for (Index y : candidates_[x]) {
      if (used_[y] || !consistent(depth, x, y)) continue;
      map_[x] = y;
      used_[y] = true;
      if (extend(depth + 1)) return true;
      used_[y] = false;
    }
    return false;
  }

  bool consistent(std::size_t depth, Index x, Index y) const {
    for (std::size_t d = 0; d < depth; ++d) {
      const Index x2 = order_[d];
      const Index y2 = map_[x2];
      if (p_.leq(x, x2) != q_.leq(y, y2) || p_.leq(x2, x) != q_.leq(y2, y)) return false;
    }
    return true;
  }

  const Poset& p_;
  const Poset& q_;
  std::vector<std::vector<Index>> candidates_;
  std::vector<Index> order_;
  std::vector<Index> map_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<IsoWitness> poset_isomorphic(const Poset& p, const Poset& q) {
  return IsoSearch(p, q).run();
}

}  // namespace princlat

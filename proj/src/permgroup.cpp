#include "branchcov/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <utility>

#include "branchcov/error.hpp"

namespace branchcov {

namespace {

/// Union-find with path halving; union by size.
class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  /// Returns the new root, or nothing if already joined.
  std::optional<std::uint32_t> unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return std::nullopt;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }

  std::size_t size_of(std::uint32_t x) { return size_[find(x)]; }

private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::size_t> size_;
};

void check_point(const GeneratorSet& gens, Point x) {
  if (x < 1 || x > gens.degree())
    throw Error(Errc::PointOutOfRange, "point " + std::to_string(x) + " not in 1.." +
                                           std::to_string(gens.degree()));
}

/// Merge a ~ b and close under the generators: whenever x ~ y, also
/// x^g ~ y^g. The queue only ever holds pairs of former roots, so the work
/// is O(d |gens|) finds.
DisjointSets block_closure(const GeneratorSet& gens, std::uint32_t a0, std::uint32_t b0) {
  DisjointSets classes(gens.degree());
  std::deque<std::pair<std::uint32_t, std::uint32_t>> pending;
  if (classes.unite(a0, b0)) pending.emplace_back(a0, b0);
  while (!pending.empty()) {
    auto [x, y] = pending.front();
    pending.pop_front();
    for (const auto& g : gens.generators()) {
      const std::uint32_t gx = g.image0(x);
      const std::uint32_t gy = g.image0(y);
      const std::uint32_t rx = classes.find(gx);
      const std::uint32_t ry = classes.find(gy);
      if (rx != ry) {
        classes.unite(rx, ry);
        pending.emplace_back(rx, ry);
      }
    }
  }
  return classes;
}

BlockSystem classes_to_system(DisjointSets& classes, std::size_t degree) {
  std::map<std::uint32_t, std::vector<Point>> by_root;
  for (std::uint32_t x = 0; x < degree; ++x)
    by_root[classes.find(x)].push_back(static_cast<Point>(x + 1));
  BlockSystem out{degree, {}};
  for (auto& [root, block] : by_root) out.blocks.push_back(std::move(block));
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace

GeneratorSet::GeneratorSet(std::vector<Permutation> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty()) throw Error(Errc::BadInput, "generator set is empty");
  for (const auto& g : generators_)
    if (g.degree() != generators_.front().degree())
      throw Error(Errc::DegreeMismatch, "generators of different degree");
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Primitive: return "primitive";
    case Verdict::Imprimitive: return "imprimitive";
    case Verdict::Intransitive: return "intransitive";
  }
  return "unknown";
}

std::vector<Point> orbit(const GeneratorSet& gens, Point x) {
  check_point(gens, x);
  std::vector<bool> seen(gens.degree(), false);
  std::vector<std::uint32_t> frontier{x - 1};
  seen[x - 1] = true;
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (const auto& g : gens.generators()) {
      const auto y = g.image0(frontier[i]);
      if (!seen[y]) {
        seen[y] = true;
        frontier.push_back(y);
      }
    }
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(static_cast<Point>(i + 1));
  return out;
}

bool is_transitive(const GeneratorSet& gens) { return orbit(gens, 1).size() == gens.degree(); }

BlockSystem minimal_block_system(const GeneratorSet& gens, Point a, Point b) {
  check_point(gens, a);
  check_point(gens, b);
  if (a == b) throw Error(Errc::BadInput, "minimal block needs two distinct points");
  if (!is_transitive(gens)) throw Error(Errc::NotTransitive, "group is not transitive");
  auto classes = block_closure(gens, a - 1, b - 1);
  return classes_to_system(classes, gens.degree());
}

std::vector<Point> minimal_block(const GeneratorSet& gens, Point a, Point b) {
  const auto system = minimal_block_system(gens, a, b);
  for (const auto& block : system.blocks)
    if (std::binary_search(block.begin(), block.end(), a)) return block;
  throw Error(Errc::VerificationFailed, "point missing from block system");
}

PrimitivityCertificate is_primitive(const GeneratorSet& gens) {
  const std::size_t d = gens.degree();
  auto orb = orbit(gens, 1);
  if (orb.size() != d) return {Verdict::Intransitive, std::nullopt, std::move(orb)};
  for (std::uint32_t b = 1; b < d; ++b) {
    auto classes = block_closure(gens, 0, b);
    if (classes.size_of(0) < d) return {Verdict::Imprimitive, classes_to_system(classes, d), {}};
  }
  return {};
}

std::optional<bool> long_cycle_shortcut(const GeneratorSet& gens) {
  if (!is_transitive(gens)) throw Error(Errc::NotTransitive, "group is not transitive");
  const std::uint64_t d = gens.degree();
  std::uint64_t largest_divisor = 0;  // largest divisor of d strictly between 1 and d
  for (std::uint64_t k = 2; k < d; ++k)
    if (d % k == 0) largest_divisor = k;

  for (const auto& g : gens.generators()) {
    std::vector<std::uint64_t> lengths;
    for (const auto& c : cycles(g).cycles) lengths.push_back(c.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      const std::uint64_t ell = lengths[i];
      if (ell < 2) continue;
      // g^m with m = lcm(other lengths) kills every other cycle and leaves an
      // ell-cycle exactly when gcd(ell, m) = 1.
      std::uint64_t m = 1;
      for (std::size_t j = 0; j < lengths.size(); ++j)
        if (j != i) m = std::lcm(m, lengths[j]);
      if (gcd_u64(ell, m) != 1) continue;
      if (ell + 1 == d) return true;
      if (gcd_u64(ell, d) == 1 && ell > largest_divisor) return true;
    }
  }
  return std::nullopt;
}

bool is_stable(const GeneratorSet& gens, const BlockSystem& system) {
  const std::size_t d = gens.degree();
  if (system.degree != d) return false;
  std::vector<std::size_t> block_of(d, SIZE_MAX);
  for (std::size_t k = 0; k < system.blocks.size(); ++k)
    for (Point x : system.blocks[k]) {
      if (x < 1 || x > d || block_of[x - 1] != SIZE_MAX) return false;
      block_of[x - 1] = k;
    }
  if (std::find(block_of.begin(), block_of.end(), SIZE_MAX) != block_of.end()) return false;
  for (const auto& block : system.blocks)
    if (block.size() != system.block_size()) return false;
  for (const auto& g : gens.generators())
    for (const auto& block : system.blocks) {
      const std::size_t target = block_of[g.image0(block.front() - 1)];
      for (Point x : block)
        if (block_of[g.image0(x - 1)] != target) return false;
    }
  return true;
}

}  // namespace branchcov

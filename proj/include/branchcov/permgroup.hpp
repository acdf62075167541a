#pragma once

#include <optional>
#include <vector>

#include "branchcov/permutation.hpp"

namespace branchcov {

/// Generators of a permutation group; non-empty, one shared degree.
class GeneratorSet {
public:
  explicit GeneratorSet(std::vector<Permutation> generators);

  std::size_t degree() const noexcept { return generators_.front().degree(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

private:
  std::vector<Permutation> generators_;
};

/// Blocks of equal size partitioning {1..d}; each block sorted, blocks
/// ordered by least point.
struct BlockSystem {
  std::size_t degree = 0;
  std::vector<std::vector<Point>> blocks;

  std::size_t block_size() const { return blocks.empty() ? 0 : blocks.front().size(); }
  bool is_trivial() const { return blocks.size() <= 1 || block_size() <= 1; }

  friend bool operator==(const BlockSystem&, const BlockSystem&) = default;
};

enum class Verdict { Primitive, Imprimitive, Intransitive };

struct PrimitivityCertificate {
  Verdict verdict = Verdict::Primitive;
  std::optional<BlockSystem> blocks;      // set for Imprimitive
  std::optional<std::vector<Point>> orbit;  // set for Intransitive: the orbit of 1

  bool primitive() const noexcept { return verdict == Verdict::Primitive; }
};

const char* to_string(Verdict v) noexcept;

/// Throws PointOutOfRange. Result sorted ascending.
std::vector<Point> orbit(const GeneratorSet& gens, Point x);

bool is_transitive(const GeneratorSet& gens);

/// Smallest block containing a and b. Throws NotTransitive, BadInput for a == b.
std::vector<Point> minimal_block(const GeneratorSet& gens, Point a, Point b);

/// Block system generated by {a, b}: the finest invariant partition in which
/// a and b share a class. Throws NotTransitive.
BlockSystem minimal_block_system(const GeneratorSet& gens, Point a, Point b);

PrimitivityCertificate is_primitive(const GeneratorSet& gens);

/// True when some generator has a power that is a (d-1)-cycle, or an l-cycle
/// with gcd(l, d) = 1 and l larger than every proper divisor of d other than
/// 1; empty otherwise. Never false. Throws NotTransitive.
std::optional<bool> long_cycle_shortcut(const GeneratorSet& gens);

/// Stability check: every generator maps each block onto a block.
bool is_stable(const GeneratorSet& gens, const BlockSystem& system);

}  // namespace branchcov

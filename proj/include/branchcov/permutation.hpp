#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace branchcov {

/// Points are 1-indexed: a permutation of degree d acts on {1, ..., d}.
using Point = std::uint32_t;

class Partition;

/// A bijection of {1..d}.
///
/// Products act on the right: x^(pq) = (x^p)^q, so compose(p, q) applies p
/// first. Under this convention the commutator [a,b] = a b a^-1 b^-1 and
/// conjugation s p s^-1 relabels each cycle of p through s^-1.
class Permutation {
public:
  static Permutation identity(std::size_t degree);

  /// `images[x-1]` is the image of x. Throws MalformedImages unless the
  /// array is a bijection of {1..n}.
  static Permutation from_images(std::span<const Point> images);

  /// Cycles may omit fixed points. Throws MalformedCycles on a repeated or
  /// out-of-range point.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return image_.size(); }

  /// The image x^p of a 1-indexed point; throws PointOutOfRange.
  Point apply(Point x) const;
  Point operator()(Point x) const { return apply(x); }

  /// 1-indexed image array.
  std::vector<Point> images() const;

  bool is_identity() const noexcept;

  /// Unchecked 0-indexed access for inner loops.
  std::uint32_t image0(std::size_t x0) const noexcept { return image_[x0]; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  explicit Permutation(std::vector<std::uint32_t> image0) : image_(std::move(image0)) {}

  std::vector<std::uint32_t> image_;  // 0-indexed

  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);
};

/// Cycles in canonical form: each rotated to start at its least point, sorted
/// by length descending and then by least point ascending. Fixed points are
/// included as 1-cycles.
struct CycleDecomposition {
  std::size_t degree = 0;
  std::vector<std::vector<Point>> cycles;

  friend bool operator==(const CycleDecomposition&, const CycleDecomposition&) = default;
};

/// r(x) = q(p(x)); throws DegreeMismatch.
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);

/// s p s^-1.
Permutation conjugate(const Permutation& p, const Permutation& s);

/// a b a^-1 b^-1.
Permutation commutator(const Permutation& a, const Permutation& b);

Permutation power(const Permutation& p, long long exponent);

CycleDecomposition cycles(const Permutation& p);

/// Cycle lengths, fixed points included, descending.
Partition cycle_type(const Permutation& p);

/// d minus the number of cycles.
std::size_t defect(const Permutation& p);

/// 0 for even, 1 for odd.
unsigned parity(const Permutation& p);

std::vector<Point> support(const Permutation& p);
std::vector<Point> fixed_points(const Permutation& p);

/// Returns s with s p s^-1 = q, built by aligning the canonical cycle
/// decompositions of p and q entry by entry. Throws NotConjugate when the
/// cycle types differ.
Permutation find_conjugator(const Permutation& p, const Permutation& q);

/// "(1 2 3)(4 5)": cycles ordered by least point, fixed points omitted; the
/// identity renders as "()".
std::string to_cycle_string(const Permutation& p);

}  // namespace branchcov

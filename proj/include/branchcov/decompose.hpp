#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "branchcov/partition.hpp"

namespace branchcov {

/// D = U.W for one partition D of u*w.
///
/// `inner[j]` is the partition of w multiplied by `outer[j]`; pairs
/// (outer[j], inner[j]) are sorted descending. `assignment[k]` is the index j
/// of the outer component that D's k-th component (in D's order) came from.
struct SingleFactorization {
  std::uint32_t u = 0;
  std::uint32_t w = 0;
  Partition outer{{1}};
  std::vector<Partition> inner;
  std::vector<std::size_t> assignment;

  /// Checks every structural invariant against D: divisibility, the
  /// per-group quotients, the assignment and the product.
  bool validates(const Partition& d) const;

  /// Equality ignores `assignment`, which is determined by the rest.
  friend bool operator==(const SingleFactorization& a, const SingleFactorization& b) {
    return a.u == b.u && a.w == b.w && a.outer == b.outer && a.inner == b.inner;
  }
  friend auto operator<=>(const SingleFactorization& a, const SingleFactorization& b) {
    if (auto c = a.u <=> b.u; c != 0) return c;
    if (auto c = a.w <=> b.w; c != 0) return c;
    if (auto c = a.outer <=> b.outer; c != 0) return c;
    return a.inner <=> b.inner;
  }
};

/// Every factorization of `d` with outer degree u and inner degree w,
/// duplicate-free, sorted ascending. Throws BadFactorPair unless u*w equals
/// the total and u, w > 1.
std::vector<SingleFactorization> factor_single(const Partition& d, std::uint32_t u, std::uint32_t w);

/// Every component of every partition is a*b with a <= u and b <= w.
/// False means no factorization with this (u, w) can exist.
bool component_prune(const BranchData& data, std::uint32_t u, std::uint32_t w);

/// Evidence that admissible data factor with a non-trivial admissible first
/// factor.
struct DecompositionWitness {
  std::uint32_t u = 0;
  std::uint32_t w = 0;
  std::vector<SingleFactorization> per_point;  // one per branch point
  BranchData first_factor{{Partition{{1}}}};   // U_x, degree u
  std::vector<Partition> second_factor;        // every W, degree w, in point order
  bool second_factor_trivial = false;
  /// The intermediate surface K given by Riemann-Hurwitz over the base.
  CoverEuler intermediate{0, SurfaceKind::torus(1)};

  bool validates(const BranchData& data) const;
};

/// The least witness for `data` (smallest u, then the lexicographically
/// least tuple of per-point factorizations), or empty if the data are
/// indecomposable. `base` only shapes `intermediate`. Throws NotAdmissible.
std::optional<DecompositionWitness> is_decomposable(const BranchData& data,
                                                    const SurfaceKind& base = SurfaceKind::torus(1));

/// All witnesses in the same order, stopping after `limit`.
std::vector<DecompositionWitness> all_decompositions(const BranchData& data,
                                                     const SurfaceKind& base = SurfaceKind::torus(1),
                                                     std::size_t limit = 1000);

}  // namespace branchcov

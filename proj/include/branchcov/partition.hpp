#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "branchcov/permutation.hpp"

namespace branchcov {

/// A partition of a positive integer, components stored in non-increasing
/// order.
class Partition {
public:
  /// Accepts components in any order; throws InvalidPartition when empty or
  /// when a component is zero.
  explicit Partition(std::vector<std::uint32_t> components);

  /// [1, 1, ..., 1].
  static Partition trivial(std::uint32_t total);

  std::uint32_t total() const noexcept { return total_; }
  std::size_t length() const noexcept { return components_.size(); }
  const std::vector<std::uint32_t>& components() const noexcept { return components_; }
  std::uint32_t operator[](std::size_t i) const { return components_[i]; }

  /// total minus the number of components.
  std::uint32_t defect() const noexcept { return total_ - static_cast<std::uint32_t>(length()); }
  bool is_trivial() const noexcept { return defect() == 0; }

  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.components_ <=> b.components_;
  }

private:
  std::vector<std::uint32_t> components_;
  std::uint32_t total_ = 0;
};

/// All partitions of n in reverse-lexicographic order ([n] first).
std::vector<Partition> partitions_of(std::uint32_t n);

/// One partition of the degree per branch point. Branch points are labeled,
/// so the list is ordered; decisions about admissibility and decomposability
/// only depend on the multiset.
class BranchData {
public:
  /// Throws EmptyBranchData or InconsistentData.
  explicit BranchData(std::vector<Partition> partitions);

  std::uint32_t degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return partitions_.size(); }
  const std::vector<Partition>& partitions() const noexcept { return partitions_; }
  const Partition& operator[](std::size_t i) const { return partitions_[i]; }

  bool is_trivial() const noexcept;

  /// Same partitions sorted into descending lexicographic order.
  BranchData canonical() const;

  std::string to_string() const;

  friend bool operator==(const BranchData&, const BranchData&) = default;

private:
  std::vector<Partition> partitions_;
  std::uint32_t degree_ = 0;
};

/// A closed surface with non-positive Euler characteristic: T_g (g >= 1) or
/// the connected sum P_g of g >= 2 projective planes.
class SurfaceKind {
public:
  /// Throws BadInput when the genus breaks the bounds above.
  SurfaceKind(bool orientable, std::uint32_t genus);

  static SurfaceKind torus(std::uint32_t genus) { return {true, genus}; }
  static SurfaceKind projective(std::uint32_t genus) { return {false, genus}; }

  bool orientable() const noexcept { return orientable_; }
  std::uint32_t genus() const noexcept { return genus_; }
  std::int64_t euler_char() const noexcept;

  /// "T1", "P2", ...
  std::string name() const;

  /// Parses "T<g>" or "P<g>"; throws BadInput.
  static SurfaceKind parse(const std::string& text);

  friend bool operator==(const SurfaceKind&, const SurfaceKind&) = default;

private:
  bool orientable_;
  std::uint32_t genus_;
};

std::uint64_t total_defect(const BranchData& data);

/// Hurwitz's condition: the total defect is even.
bool is_admissible(const BranchData& data);

struct CoverEuler {
  std::int64_t euler_char;
  SurfaceKind cover;
};

/// Riemann-Hurwitz: chi(M) = d chi(N) - nu(D). The cover is orientable
/// exactly when the base is. Throws DegreeMismatch if the data's degree is
/// not `degree`, InconsistentData when no closed surface of the required
/// kind has that characteristic.
CoverEuler euler_char_cover(std::uint32_t degree, const SurfaceKind& base, const BranchData& data);

/// U.W: the union over i of U[i] times each component of ws[i]. Throws
/// ShapeMismatch when ws does not have one partition per component of U or
/// the totals of ws differ.
Partition product_partition(const Partition& outer, std::span<const Partition> ws);

}  // namespace branchcov

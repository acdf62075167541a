#pragma once

#include <optional>
#include <string>
#include <vector>

#include "branchcov/partition.hpp"
#include "branchcov/permgroup.hpp"
#include "branchcov/permutation.hpp"

namespace branchcov {

/// Which one-branch-point base the two-generator realization targets.
enum class SurfaceStyle { Torus, Klein };

const char* to_string(SurfaceStyle style) noexcept;

/// alpha of cycle type `target` written as a commutator (torus) or as
/// omega^2 theta^2 (Klein bottle) of two generators of a primitive group.
///
/// Torus: alpha = [partner, beta] with partner = lambda.
/// Klein: alpha = partner^2 theta^2 with partner = omega and
///        theta = omega^-1 beta^-1.
struct TwoGeneratorRealization {
  Partition target;
  SurfaceStyle style;
  Permutation alpha;
  Permutation beta;
  Permutation partner;
  std::optional<Permutation> theta;
  PrimitivityCertificate certificate;

  /// <lambda, beta> for the torus, <omega, theta> for the Klein bottle.
  GeneratorSet group() const;

  /// The defining product identity holds exactly.
  bool identity_holds() const;
};

/// Layout for a partition with several parts, some of them different
/// from 2. Components are reordered as (max, min, the rest in input order);
/// cycle i occupies offsets[i]+1 .. offsets[i+1], its tail drops the first
/// point; beta visits the cycle heads and then every tail in order.
struct CaseThreeScaffold {
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> offsets;  // size t+1, offsets[0] = 0
  std::vector<std::vector<Point>> cycles;
  std::vector<std::vector<Point>> tails;
  Permutation alpha;
  Permutation beta;
};

/// Throws BadInput when the partition is trivial, has one part, is all 2's
/// or has odd defect.
CaseThreeScaffold case_three_scaffold(const Partition& d);

/// D = [d], d = 2k+1 >= 3. Throws BadInput.
TwoGeneratorRealization realize_case1(std::uint32_t d, SurfaceStyle style);

/// D = [2, ..., 2] with t parts, t even >= 2. Throws BadInput.
TwoGeneratorRealization realize_case2(std::uint32_t t, SurfaceStyle style);

/// Every other admissible partition with more than one part. Throws
/// BadInput; VerificationFailed if the built group is not primitive.
TwoGeneratorRealization realize_case3(const Partition& d, SurfaceStyle style);

/// Dispatch on the shape of `d`. Throws TrivialPartition, NotAdmissible,
/// UnsupportedDegree (d < 2) or BadInput (d = 2, which has no non-trivial
/// partition with even defect).
TwoGeneratorRealization realize_partition(const Partition& d, SurfaceStyle style);

/// Images of one handle: (a, b) over an orientable base, a alone otherwise.
struct Handle {
  Permutation a;
  std::optional<Permutation> b;

  friend bool operator==(const Handle&, const Handle&) = default;
};

/// Images of the generators of the punctured base's fundamental group.
///
/// Relators: u_1 ... u_t = [b_g, a_g] ... [b_1, a_1] over T_g, and
/// u_1 ... u_t = a_g^2 ... a_1^2 over P_g.
struct MonodromyRepresentation {
  std::uint32_t degree;
  SurfaceKind base;
  std::vector<Permutation> branch_images;
  std::vector<Handle> handles;

  /// Every branch and handle image.
  GeneratorSet group() const;

  friend bool operator==(const MonodromyRepresentation&, const MonodromyRepresentation&) = default;
};

struct VerificationReport {
  bool relator_ok = false;
  bool cycle_types_ok = false;
  std::vector<Partition> cycle_types;
  bool transitive = false;
  PrimitivityCertificate primitivity;
  std::optional<bool> long_cycle_shortcut;
  std::optional<CoverEuler> cover;
  std::vector<std::string> failures;

  /// Primitivity is reported but not required.
  bool overall_ok() const { return relator_ok && cycle_types_ok && transitive; }
};

/// Throws ShapeMismatch when degrees, branch counts or handle counts
/// disagree with the data and base.
VerificationReport verify(const MonodromyRepresentation& rep, const BranchData& data);

struct RealizedData {
  MonodromyRepresentation representation;
  VerificationReport report;
  /// The single partition realized on T_1 / P_2 and conjugated into place;
  /// empty for degree 2.
  std::optional<TwoGeneratorRealization> core;
};

/// Indecomposable primitive realization of `data` over `base`. Throws
/// NotAdmissible, TrivialData, UnsupportedDegree, VerificationFailed.
RealizedData realize_data(const BranchData& data, const SurfaceKind& base);

/// One permutation per partition, each of the given type, cycles laid out on
/// consecutive points in the partition's order.
Permutation block_layout(const Partition& d);

}  // namespace branchcov

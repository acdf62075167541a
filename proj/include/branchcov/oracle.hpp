#pragma once

// Brute-force references for desk-scale inputs. Nothing here calls into the
// block, factorization or construction algorithms it is used to check.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "branchcov/decompose.hpp"
#include "branchcov/partition.hpp"
#include "branchcov/permgroup.hpp"
#include "branchcov/realize.hpp"

namespace branchcov::oracle {

struct ClosureBudget {
  std::size_t max_group_order = 50000;
  std::size_t max_degree = 8;
};

/// Every element of the group, by breadth-first multiplication. Throws
/// DegreeTooLarge or BudgetExceeded; never truncates.
std::set<Permutation> group_closure(const GeneratorSet& gens, const ClosureBudget& budget = {});

/// Tests every subset containing 1 whose size properly divides d against
/// every group element. Intransitive groups get an Intransitive verdict.
PrimitivityCertificate primitive_bruteforce(const GeneratorSet& gens, const ClosureBudget& budget = {});

/// All factorizations of D with outer degree u, found by enumerating every
/// set partition of D's components and every multiplier per group. Throws
/// TooLarge above ten components, BadFactorPair on a bad (u, w).
std::set<SingleFactorization> factorizations_bruteforce(const Partition& d, std::uint32_t u,
                                                        std::uint32_t w);

/// Search over Sigma_d x Sigma_d in lexicographic order of image arrays for
/// a pair (lambda, beta) with [lambda, beta] of type D generating a
/// primitive group. Throws DegreeTooLarge for d > 5.
std::optional<TwoGeneratorRealization> realization_search(const Partition& d);

/// Random generator sets for concordance sampling: a mix of unrestricted
/// permutations, elements preserving a hidden block system, and sparse
/// generators that are often intransitive. Deterministic for a given engine
/// state.
GeneratorSet random_generator_set(std::size_t degree, std::mt19937_64& rng);

}  // namespace branchcov::oracle

#include "branchcov/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <unordered_set>

#include "branchcov/error.hpp"

namespace branchcov::oracle {

namespace {

// Group elements packed four bits per point; enough for degree 16.
using Packed = std::uint64_t;
constexpr std::size_t kPackLimit = 16;

Packed pack(const Permutation& p) {
  Packed out = 0;
  for (std::size_t x = 0; x < p.degree(); ++x) out |= static_cast<Packed>(p.image0(x)) << (4 * x);
  return out;
}

unsigned image_of(Packed e, unsigned x) { return static_cast<unsigned>((e >> (4 * x)) & 0xFu); }

Permutation unpack(Packed e, std::size_t degree) {
  std::vector<Point> img(degree);
  for (unsigned x = 0; x < degree; ++x) img[x] = image_of(e, x) + 1;
  return Permutation::from_images(img);
}

std::vector<Packed> closure_packed(const GeneratorSet& gens, const ClosureBudget& budget) {
  const std::size_t d = gens.degree();
  if (d > budget.max_degree || d > kPackLimit)
    throw Error(Errc::DegreeTooLarge, "degree " + std::to_string(d) + " exceeds the closure budget");
  std::vector<Packed> gen_packed;
  for (const auto& g : gens.generators()) gen_packed.push_back(pack(g));

  const Packed id = pack(Permutation::identity(d));
  std::vector<Packed> elements{id};
  std::unordered_set<Packed> seen{id};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Packed e = elements[i];
    for (Packed g : gen_packed) {
      Packed prod = 0;  // apply e, then g
      for (unsigned x = 0; x < d; ++x)
        prod |= static_cast<Packed>(image_of(g, image_of(e, x))) << (4 * x);
      if (seen.insert(prod).second) {
        if (seen.size() > budget.max_group_order)
          throw Error(Errc::BudgetExceeded,
                      "group order exceeds " + std::to_string(budget.max_group_order));
        elements.push_back(prod);
      }
    }
  }
  return elements;
}

std::uint32_t image_mask(Packed e, std::uint32_t mask, unsigned d) {
  std::uint32_t out = 0;
  for (unsigned x = 0; x < d; ++x)
    if (mask & (1u << x)) out |= 1u << image_of(e, x);
  return out;
}

std::vector<Point> mask_points(std::uint32_t mask, unsigned d) {
  std::vector<Point> out;
  for (unsigned x = 0; x < d; ++x)
    if (mask & (1u << x)) out.push_back(x + 1);
  return out;
}

}  // namespace

std::set<Permutation> group_closure(const GeneratorSet& gens, const ClosureBudget& budget) {
  std::set<Permutation> out;
  for (Packed e : closure_packed(gens, budget)) out.insert(unpack(e, gens.degree()));
  return out;
}

PrimitivityCertificate primitive_bruteforce(const GeneratorSet& gens, const ClosureBudget& budget) {
  const auto elements = closure_packed(gens, budget);
  const unsigned d = static_cast<unsigned>(gens.degree());
  const std::uint32_t all = (1u << d) - 1;

  std::uint32_t orbit_of_first = 0;
  for (Packed e : elements) orbit_of_first |= 1u << image_of(e, 0);
  if (orbit_of_first != all)
    return {Verdict::Intransitive, std::nullopt, mask_points(orbit_of_first, d)};

  for (unsigned size = 2; size < d; ++size) {
    if (d % size != 0) continue;
    // Candidates contain point 1, i.e. bit 0.
    for (std::uint32_t rest = 0; rest < (1u << (d - 1)); ++rest) {
      if (static_cast<unsigned>(std::popcount(rest)) != size - 1) continue;
      const std::uint32_t candidate = 1u | (rest << 1);
      bool is_block = true;
      for (Packed e : elements) {
        const std::uint32_t img = image_mask(e, candidate, d);
        if (img != candidate && (img & candidate) != 0) {
          is_block = false;
          break;
        }
      }
      if (!is_block) continue;
      std::set<std::uint32_t> translates;
      for (Packed e : elements) translates.insert(image_mask(e, candidate, d));
      BlockSystem system{d, {}};
      for (auto m : translates) system.blocks.push_back(mask_points(m, d));
      std::sort(system.blocks.begin(), system.blocks.end());
      return {Verdict::Imprimitive, std::move(system), std::nullopt};
    }
  }
  return {};
}

std::set<SingleFactorization> factorizations_bruteforce(const Partition& d, std::uint32_t u,
                                                        std::uint32_t w) {
  if (u < 2 || w < 2 || static_cast<std::uint64_t>(u) * w != d.total())
    throw Error(Errc::BadFactorPair, "bad factor pair");
  const std::size_t n = d.length();
  if (n > 10) throw Error(Errc::TooLarge, "more than ten components");

  std::set<SingleFactorization> out;
  std::vector<std::size_t> group_of(n, 0);  // restricted growth string

  auto try_multipliers = [&](std::size_t groups) {
    std::vector<std::vector<std::size_t>> members(groups);
    for (std::size_t k = 0; k < n; ++k) members[group_of[k]].push_back(k);
    std::vector<std::uint32_t> mult(groups, 1);
    // A group's multiplier must divide each member and bring the quotients
    // to w; multipliers must sum to u. Checked per group as soon as assigned.
    auto group_fits = [&](std::size_t g) {
      std::uint32_t sum = 0;
      for (auto k : members[g]) {
        if (d[k] % mult[g] != 0) return false;
        sum += d[k] / mult[g];
      }
      return sum == w;
    };
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t j, std::uint32_t used_u) {
      if (j < groups) {
        for (std::uint32_t m = 1; used_u + m + (groups - j - 1) <= u; ++m) {
          mult[j] = m;
          if (group_fits(j)) rec(j + 1, used_u + m);
        }
        return;
      }
      if (used_u != u) return;
      std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> pairs;
      for (std::size_t g = 0; g < groups; ++g) {
        std::vector<std::uint32_t> quotients;
        std::uint32_t sum = 0;
        for (auto k : members[g]) {
          if (d[k] % mult[g] != 0) return;
          quotients.push_back(d[k] / mult[g]);
          sum += d[k] / mult[g];
        }
        if (sum != w) return;
        std::sort(quotients.rbegin(), quotients.rend());
        pairs.emplace_back(mult[g], std::move(quotients));
      }
      std::vector<std::size_t> rank(groups);
      std::iota(rank.begin(), rank.end(), 0u);
      std::sort(rank.begin(), rank.end(), [&](auto a, auto b) { return pairs[a] > pairs[b]; });
      SingleFactorization f;
      f.u = u;
      f.w = w;
      std::vector<std::uint32_t> outer;
      std::vector<std::size_t> position(groups);
      for (std::size_t pos = 0; pos < groups; ++pos) {
        outer.push_back(pairs[rank[pos]].first);
        f.inner.emplace_back(pairs[rank[pos]].second);
        position[rank[pos]] = pos;
      }
      f.outer = Partition(outer);
      for (std::size_t k = 0; k < n; ++k) f.assignment.push_back(position[group_of[k]]);
      out.insert(std::move(f));
    };
    rec(0, 0);
  };

  std::function<void(std::size_t, std::size_t)> partitions = [&](std::size_t k, std::size_t used) {
    if (k == n) {
      try_multipliers(used);
      return;
    }
    for (std::size_t g = 0; g <= used && g < n; ++g) {
      group_of[k] = g;
      partitions(k + 1, g == used ? used + 1 : used);
    }
  };
  partitions(0, 0);
  return out;
}

std::optional<TwoGeneratorRealization> realization_search(const Partition& d) {
  const std::uint32_t n = d.total();
  if (n > 5) throw Error(Errc::DegreeTooLarge, "exhaustive search limited to degree 5");
  std::vector<Permutation> all;
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), 1u);
  do {
    all.push_back(Permutation::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));

  for (const auto& lambda : all)
    for (const auto& beta : all) {
      const Permutation alpha = commutator(lambda, beta);
      if (cycle_type(alpha) != d) continue;
      auto cert = primitive_bruteforce(GeneratorSet({lambda, beta}));
      if (!cert.primitive()) continue;
      return TwoGeneratorRealization{d, SurfaceStyle::Torus, alpha, beta, lambda, std::nullopt,
                                     std::move(cert)};
    }
  return std::nullopt;
}

namespace {

Permutation random_permutation(std::size_t degree, std::mt19937_64& rng) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), 1u);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation::from_images(img);
}

/// A random element of S_b wr S_k acting on blocks {i*b+1 .. i*b+b}.
Permutation random_wreath_element(std::size_t block, std::size_t count, std::mt19937_64& rng) {
  std::vector<std::size_t> top(count);
  std::iota(top.begin(), top.end(), 0u);
  std::shuffle(top.begin(), top.end(), rng);
  std::vector<Point> img(block * count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::size_t> inner(block);
    std::iota(inner.begin(), inner.end(), 0u);
    std::shuffle(inner.begin(), inner.end(), rng);
    for (std::size_t j = 0; j < block; ++j) img[i * block + j] = static_cast<Point>(top[i] * block + inner[j] + 1);
  }
  return Permutation::from_images(img);
}

}  // namespace

GeneratorSet random_generator_set(std::size_t degree, std::mt19937_64& rng) {
  std::vector<std::size_t> divisors;
  for (std::size_t k = 2; k < degree; ++k)
    if (degree % k == 0) divisors.push_back(k);
  const std::size_t count = 1 + rng() % 3;
  std::vector<Permutation> gens;
  switch (rng() % 3) {
    case 0:
      for (std::size_t i = 0; i < count; ++i) gens.push_back(random_permutation(degree, rng));
      break;
    case 1:
      if (!divisors.empty()) {
        const std::size_t block = divisors[rng() % divisors.size()];
        const Permutation relabel = random_permutation(degree, rng);
        for (std::size_t i = 0; i < count; ++i)
          gens.push_back(conjugate(random_wreath_element(block, degree / block, rng), relabel));
        break;
      }
      [[fallthrough]];
    default:
      // A single random cycle plus transpositions: frequently intransitive.
      for (std::size_t i = 0; i < count; ++i) {
        std::vector<Point> pts(degree);
        std::iota(pts.begin(), pts.end(), 1u);
        std::shuffle(pts.begin(), pts.end(), rng);
        const std::size_t len = 2 + rng() % (degree > 2 ? degree - 1 : 1);
        pts.resize(std::min(len, degree));
        gens.push_back(Permutation::from_cycles(degree, {pts}));
      }
  }
  return GeneratorSet(std::move(gens));
}

}  // namespace branchcov::oracle

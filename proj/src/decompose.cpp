#include "branchcov/decompose.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

#include "branchcov/error.hpp"

namespace branchcov {

namespace {

/// Multiset of D's components as (value, multiplicity), values descending.
using Counts = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

Counts count_components(const Partition& d) {
  Counts out;
  for (auto c : d.components()) {
    if (!out.empty() && out.back().first == c)
      ++out.back().second;
    else
      out.emplace_back(c, 1);
  }
  return out;
}

/// Removes every component of `inner` scaled by `mult` from `counts`;
/// returns false (leaving counts untouched) if any is unavailable.
bool take(Counts& counts, const Partition& inner, std::uint32_t mult) {
  Counts trial = counts;
  for (auto c : inner.components()) {
    const std::uint32_t value = c * mult;
    auto it = std::find_if(trial.begin(), trial.end(), [&](const auto& e) { return e.first == value; });
    if (it == trial.end() || it->second == 0) return false;
    --it->second;
  }
  counts = std::move(trial);
  return true;
}

bool counts_empty(const Counts& counts) {
  return std::all_of(counts.begin(), counts.end(), [](const auto& e) { return e.second == 0; });
}

std::vector<std::size_t> canonical_assignment(const Partition& d, const std::vector<std::uint32_t>& outer,
                                              const std::vector<Partition>& inner) {
  std::vector<std::size_t> assignment(d.length(), SIZE_MAX);
  for (std::size_t j = 0; j < inner.size(); ++j)
    for (auto c : inner[j].components()) {
      for (std::size_t k = 0; k < d.length(); ++k)
        if (assignment[k] == SIZE_MAX && d[k] == c * outer[j]) {
          assignment[k] = j;
          break;
        }
    }
  return assignment;
}

// Witness search state: bit (2 * parity + nontrivial) of the first factor
// assembled so far.
constexpr unsigned state_bit(unsigned parity, bool nontrivial) {
  return 1u << (2 * parity + (nontrivial ? 1 : 0));
}
constexpr unsigned kGoal = state_bit(0, true);

struct Choice {
  unsigned parity;
  bool nontrivial;
};

unsigned shift_states(unsigned states, const Choice& c) {
  unsigned out = 0;
  for (unsigned p = 0; p < 2; ++p)
    for (unsigned n = 0; n < 2; ++n)
      if (states & state_bit(p, n)) out |= state_bit(p ^ c.parity, n || c.nontrivial);
  return out;
}

struct PairSearch {
  std::uint32_t u, w;
  std::vector<std::vector<SingleFactorization>> options;  // per point
  std::vector<std::vector<Choice>> choices;
  std::vector<unsigned> reach;  // reach[i]: states reachable using points i..end from the empty state
};

std::optional<PairSearch> prepare(const BranchData& data, std::uint32_t u, std::uint32_t w) {
  if (!component_prune(data, u, w)) return std::nullopt;
  PairSearch s{u, w, {}, {}, {}};
  for (const auto& d : data.partitions()) {
    auto opts = factor_single(d, u, w);
    if (opts.empty()) return std::nullopt;
    std::vector<Choice> cs;
    for (const auto& f : opts) cs.push_back({f.outer.defect() % 2u, !f.outer.is_trivial()});
    s.options.push_back(std::move(opts));
    s.choices.push_back(std::move(cs));
  }
  const std::size_t r = data.size();
  s.reach.assign(r + 1, 0);
  s.reach[r] = state_bit(0, false);
  for (std::size_t i = r; i-- > 0;) {
    unsigned acc = 0;
    for (const auto& c : s.choices[i]) acc |= shift_states(s.reach[i + 1], c);
    s.reach[i] = acc;
  }
  return s;
}

/// Does some completion of points i.. from prefix state (p, n) hit the goal?
bool completes(const PairSearch& s, std::size_t i, unsigned p, bool n) {
  const unsigned shifted = shift_states(s.reach[i], Choice{p, n});
  return (shifted & kGoal) != 0;
}

DecompositionWitness build_witness(const BranchData& data, const SurfaceKind& base,
                                   const PairSearch& s, const std::vector<std::size_t>& picks) {
  DecompositionWitness wit;
  wit.u = s.u;
  wit.w = s.w;
  std::vector<Partition> first;
  std::uint64_t second_defect = 0;
  for (std::size_t i = 0; i < picks.size(); ++i) {
    const auto& f = s.options[i][picks[i]];
    wit.per_point.push_back(f);
    first.push_back(f.outer);
    for (const auto& inner : f.inner) {
      wit.second_factor.push_back(inner);
      second_defect += inner.defect();
    }
  }
  wit.first_factor = BranchData(std::move(first));
  wit.second_factor_trivial = second_defect == 0;
  const std::uint64_t first_defect = total_defect(wit.first_factor);
  if (total_defect(data) != second_defect + s.w * first_defect || second_defect % 2 != 0)
    throw Error(Errc::VerificationFailed, "defect identity broken for witness");
  wit.intermediate = euler_char_cover(s.u, base, wit.first_factor);
  if (!wit.validates(data)) throw Error(Errc::VerificationFailed, "witness does not validate");
  return wit;
}

void require_admissible(const BranchData& data) {
  if (!is_admissible(data))
    throw Error(Errc::NotAdmissible, "total defect " + std::to_string(total_defect(data)) + " is odd");
}

}  // namespace

bool SingleFactorization::validates(const Partition& d) const {
  if (u * w != d.total() || outer.total() != u || inner.size() != outer.length()) return false;
  if (assignment.size() != d.length()) return false;
  for (const auto& p : inner)
    if (p.total() != w) return false;
  std::vector<std::vector<std::uint32_t>> groups(outer.length());
  for (std::size_t k = 0; k < d.length(); ++k) {
    const std::size_t j = assignment[k];
    if (j >= outer.length() || d[k] % outer[j] != 0) return false;
    groups[j].push_back(d[k] / outer[j]);
  }
  for (std::size_t j = 0; j < groups.size(); ++j) {
    if (groups[j].empty() || Partition(groups[j]) != inner[j]) return false;
  }
  return product_partition(outer, inner) == d;
}

std::vector<SingleFactorization> factor_single(const Partition& d, std::uint32_t u, std::uint32_t w) {
  if (u < 2 || w < 2 || static_cast<std::uint64_t>(u) * w != d.total())
    throw Error(Errc::BadFactorPair, std::to_string(u) + "*" + std::to_string(w) +
                                         " is not a non-trivial factorization of " +
                                         std::to_string(d.total()));
  const auto w_parts = partitions_of(w);
  std::vector<SingleFactorization> out;
  std::vector<std::uint32_t> outer;
  std::vector<Partition> inner;

  // Pairs (outer_j, inner_j) are chosen in non-increasing order, so each
  // multiset of pairs is produced once. Within equal outer_j the inner
  // partitions are taken at non-decreasing index in w_parts (which lists
  // partitions in descending order).
  std::function<void(Counts&, std::uint32_t, std::uint32_t, std::size_t)> rec =
      [&](Counts& counts, std::uint32_t u_left, std::uint32_t max_mult, std::size_t min_index) {
        if (u_left == 0) {
          if (!counts_empty(counts)) return;
          SingleFactorization f;
          f.u = u;
          f.w = w;
          f.outer = Partition(outer);
          f.inner = inner;
          f.assignment = canonical_assignment(d, outer, inner);
          out.push_back(std::move(f));
          return;
        }
        if (counts_empty(counts)) return;
        for (std::uint32_t mult = std::min(u_left, max_mult); mult >= 1; --mult) {
          const std::size_t start = mult == max_mult ? min_index : 0;
          for (std::size_t idx = start; idx < w_parts.size(); ++idx) {
            Counts next = counts;
            if (!take(next, w_parts[idx], mult)) continue;
            outer.push_back(mult);
            inner.push_back(w_parts[idx]);
            rec(next, u_left - mult, mult, idx);
            outer.pop_back();
            inner.pop_back();
          }
        }
      };
  Counts counts = count_components(d);
  rec(counts, u, u, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool component_prune(const BranchData& data, std::uint32_t u, std::uint32_t w) {
  for (const auto& p : data.partitions())
    for (auto c : p.components()) {
      bool ok = false;
      for (std::uint32_t a = 1; a <= u && !ok; ++a)
        if (c % a == 0 && c / a <= w) ok = true;
      if (!ok) return false;
    }
  return true;
}

bool DecompositionWitness::validates(const BranchData& data) const {
  if (u < 2 || w < 2 || static_cast<std::uint64_t>(u) * w != data.degree()) return false;
  if (per_point.size() != data.size() || first_factor.size() != data.size()) return false;
  if (first_factor.degree() != u) return false;
  if (first_factor.is_trivial() || !is_admissible(first_factor)) return false;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& f = per_point[i];
    if (f.u != u || f.w != w || f.outer != first_factor[i] || !f.validates(data[i])) return false;
    for (const auto& inner : f.inner) {
      if (cursor >= second_factor.size() || second_factor[cursor] != inner) return false;
      ++cursor;
    }
  }
  if (cursor != second_factor.size()) return false;
  std::uint64_t second_defect = 0;
  for (const auto& p : second_factor) second_defect += p.defect();
  return second_defect % 2 == 0 && (second_defect == 0) == second_factor_trivial;
}

std::optional<DecompositionWitness> is_decomposable(const BranchData& data, const SurfaceKind& base) {
  require_admissible(data);
  const std::uint32_t d = data.degree();
  for (std::uint32_t u = 2; u < d; ++u) {
    if (d % u != 0) continue;
    const auto search = prepare(data, u, d / u);
    if (!search || !completes(*search, 0, 0, false)) continue;
    std::vector<std::size_t> picks;
    unsigned p = 0;
    bool n = false;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto& cs = search->choices[i];
      for (std::size_t c = 0; c < cs.size(); ++c) {
        const unsigned np = p ^ cs[c].parity;
        const bool nn = n || cs[c].nontrivial;
        if (completes(*search, i + 1, np, nn)) {
          picks.push_back(c);
          p = np;
          n = nn;
          break;
        }
      }
    }
    return build_witness(data, base, *search, picks);
  }
  return std::nullopt;
}

std::vector<DecompositionWitness> all_decompositions(const BranchData& data, const SurfaceKind& base,
                                                     std::size_t limit) {
  require_admissible(data);
  std::vector<DecompositionWitness> out;
  const std::uint32_t d = data.degree();
  for (std::uint32_t u = 2; u < d && out.size() < limit; ++u) {
    if (d % u != 0) continue;
    const auto search = prepare(data, u, d / u);
    if (!search || !completes(*search, 0, 0, false)) continue;
    std::vector<std::size_t> picks;
    std::function<void(std::size_t, unsigned, bool)> rec = [&](std::size_t i, unsigned p, bool n) {
      if (out.size() >= limit) return;
      if (i == data.size()) {
        out.push_back(build_witness(data, base, *search, picks));
        return;
      }
      const auto& cs = search->choices[i];
      for (std::size_t c = 0; c < cs.size() && out.size() < limit; ++c) {
        const unsigned np = p ^ cs[c].parity;
        const bool nn = n || cs[c].nontrivial;
        if (!completes(*search, i + 1, np, nn)) continue;
        picks.push_back(c);
        rec(i + 1, np, nn);
        picks.pop_back();
      }
    };
    rec(0, 0, false);
  }
  return out;
}

}  // namespace branchcov

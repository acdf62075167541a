#include "branchcov/realize.hpp"

#include <algorithm>

#include "branchcov/error.hpp"

namespace branchcov {

namespace {

Permutation product(const std::vector<Permutation>& factors, std::size_t degree) {
  Permutation acc = Permutation::identity(degree);
  for (const auto& f : factors) acc = compose(acc, f);
  return acc;
}

/// Completes a (alpha, beta) pair for which beta and alpha*beta share a
/// cycle type into the requested style.
TwoGeneratorRealization from_alpha_beta(const Partition& target, SurfaceStyle style,
                                        const Permutation& alpha, const Permutation& beta) {
  const Permutation ab = compose(alpha, beta);
  if (style == SurfaceStyle::Torus) {
    // lambda beta lambda^-1 = alpha beta, hence [lambda, beta] = alpha.
    Permutation lambda = find_conjugator(beta, ab);
    return {target, style, alpha, beta, std::move(lambda), std::nullopt, {}};
  }
  // omega beta^-1 omega^-1 = alpha beta and theta = omega^-1 beta^-1 give
  // omega^2 theta^2 = alpha.
  const Permutation beta_inv = inverse(beta);
  Permutation omega = find_conjugator(beta_inv, ab);
  Permutation theta = compose(inverse(omega), beta_inv);
  return {target, style, alpha, beta, std::move(omega), std::move(theta), {}};
}

TwoGeneratorRealization certify(TwoGeneratorRealization r) {
  if (cycle_type(r.alpha) != r.target)
    throw Error(Errc::VerificationFailed, "alpha has the wrong cycle type");
  if (!r.identity_holds())
    throw Error(Errc::VerificationFailed, "product identity fails for " + r.target.to_string());
  r.certificate = is_primitive(r.group());
  if (!r.certificate.primitive())
    throw Error(Errc::VerificationFailed,
                std::string("group for ") + r.target.to_string() + " is " + to_string(r.certificate.verdict));
  return r;
}

bool all_twos(const Partition& d) {
  return std::all_of(d.components().begin(), d.components().end(), [](auto c) { return c == 2; });
}

}  // namespace

const char* to_string(SurfaceStyle style) noexcept {
  return style == SurfaceStyle::Torus ? "torus" : "klein";
}

GeneratorSet TwoGeneratorRealization::group() const {
  if (style == SurfaceStyle::Torus) return GeneratorSet({partner, beta});
  return GeneratorSet({partner, *theta});
}

bool TwoGeneratorRealization::identity_holds() const {
  if (style == SurfaceStyle::Torus) return commutator(partner, beta) == alpha;
  if (!theta) return false;
  return compose(compose(partner, partner), compose(*theta, *theta)) == alpha;
}

Permutation block_layout(const Partition& d) {
  std::vector<std::vector<Point>> cycs;
  Point next = 1;
  for (auto c : d.components()) {
    std::vector<Point> cyc;
    for (std::uint32_t k = 0; k < c; ++k) cyc.push_back(next++);
    cycs.push_back(std::move(cyc));
  }
  return Permutation::from_cycles(d.total(), cycs);
}

CaseThreeScaffold case_three_scaffold(const Partition& d) {
  if (d.length() < 2 || d.is_trivial() || all_twos(d) || d.defect() % 2 != 0)
    throw Error(Errc::BadInput, "partition " + d.to_string() + " is not a case-three partition");
  const std::uint32_t total = d.total();

  // Components arrive descending: the max is first and the min is last.
  std::vector<std::uint32_t> order;
  order.push_back(d[0]);
  order.push_back(d[d.length() - 1]);
  for (std::size_t i = 1; i + 1 < d.length(); ++i) order.push_back(d[i]);

  CaseThreeScaffold s{order, {0}, {}, {}, Permutation::identity(total), Permutation::identity(total)};
  for (auto c : order) s.offsets.push_back(s.offsets.back() + c);
  std::vector<Point> beta_cycle;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::vector<Point> cyc;
    for (Point x = s.offsets[i] + 1; x <= s.offsets[i + 1]; ++x) cyc.push_back(x);
    s.tails.emplace_back(cyc.begin() + 1, cyc.end());
    s.cycles.push_back(std::move(cyc));
    beta_cycle.push_back(s.offsets[i] + 1);
  }
  for (const auto& tail : s.tails) beta_cycle.insert(beta_cycle.end(), tail.begin(), tail.end());
  s.alpha = Permutation::from_cycles(total, s.cycles);
  s.beta = Permutation::from_cycles(total, {beta_cycle});

  if (cycle_type(s.alpha) != d) throw Error(Errc::VerificationFailed, "scaffold alpha has wrong type");
  if (cycle_type(compose(s.alpha, s.beta)) != Partition({total}))
    throw Error(Errc::VerificationFailed, "alpha*beta is not a full cycle for " + d.to_string());
  return s;
}

TwoGeneratorRealization realize_case1(std::uint32_t d, SurfaceStyle style) {
  if (d < 3 || d % 2 == 0)
    throw Error(Errc::BadInput, "a single full cycle needs odd degree >= 3, got " + std::to_string(d));
  const std::uint32_t k = (d - 1) / 2;
  const Partition target({d});
  std::vector<Point> full(d);
  for (Point x = 1; x <= d; ++x) full[x - 1] = x;
  const Permutation alpha = Permutation::from_cycles(d, {full});

  std::vector<Point> tail;  // (k+1 k+2 ... 2k+1)
  for (Point x = k + 1; x <= d; ++x) tail.push_back(x);
  const Permutation lambda = Permutation::from_cycles(d, {tail});

  if (style == SurfaceStyle::Torus) {
    // beta: i -> 2k+2-i for i <= k+1, and k+1+j -> j.
    std::vector<Point> img(d);
    for (Point i = 1; i <= k + 1; ++i) img[i - 1] = 2 * k + 2 - i;
    for (Point j = 1; j <= k; ++j) img[k + j] = j;
    const Permutation beta = Permutation::from_images(img);
    return certify({target, style, alpha, beta, lambda, std::nullopt, {}});
  }

  // theta: 1 -> 2k+1, i -> k+i-1 for 2 <= i <= k+1, k+1+j -> j. This gives
  // omega theta omega theta^-1 = alpha with omega = lambda; rewriting with
  // x = omega theta, y = theta^-1 yields x^2 y^2 = alpha.
  std::vector<Point> img(d);
  img[0] = d;
  for (Point i = 2; i <= k + 1; ++i) img[i - 1] = k + i - 1;
  for (Point j = 1; j <= k; ++j) img[k + j] = j;
  const Permutation theta0 = Permutation::from_images(img);
  const Permutation& omega0 = lambda;
  if (compose(compose(omega0, theta0), compose(omega0, inverse(theta0))) != alpha)
    throw Error(Errc::VerificationFailed, "alternate Klein relator fails");
  Permutation x = compose(omega0, theta0);
  Permutation y = inverse(theta0);
  Permutation beta = inverse(compose(x, y));  // keeps theta = omega^-1 beta^-1
  return certify({target, style, alpha, std::move(beta), std::move(x), std::move(y), {}});
}

TwoGeneratorRealization realize_case2(std::uint32_t t, SurfaceStyle style) {
  if (t < 2 || t % 2 != 0)
    throw Error(Errc::BadInput, "all-2 partition needs an even number of parts, got " + std::to_string(t));
  const std::uint32_t d = 2 * t;
  std::vector<std::vector<Point>> pairs;
  for (Point x = 1; x < d; x += 2) pairs.push_back({x, x + 1});
  const Permutation alpha = Permutation::from_cycles(d, pairs);

  // (1 3 5 ... 2t-1 4)(2 6 8 ... 2t)
  std::vector<Point> odd_cycle, even_cycle;
  for (Point x = 1; x < d; x += 2) odd_cycle.push_back(x);
  odd_cycle.push_back(4);
  for (Point x = 2; x <= d; x += 2)
    if (x != 4) even_cycle.push_back(x);
  const Permutation beta = Permutation::from_cycles(d, {odd_cycle, even_cycle});
  return certify(from_alpha_beta(Partition(std::vector<std::uint32_t>(t, 2u)), style, alpha, beta));
}

TwoGeneratorRealization realize_case3(const Partition& d, SurfaceStyle style) {
  const auto s = case_three_scaffold(d);
  return certify(from_alpha_beta(d, style, s.alpha, s.beta));
}

TwoGeneratorRealization realize_partition(const Partition& d, SurfaceStyle style) {
  if (d.total() < 2) throw Error(Errc::UnsupportedDegree, "degree must be at least 2");
  if (d.is_trivial()) throw Error(Errc::TrivialPartition, d.to_string() + " is trivial");
  if (d.defect() % 2 != 0) throw Error(Errc::NotAdmissible, d.to_string() + " has odd defect");
  if (d.length() == 1) return realize_case1(d.total(), style);
  if (all_twos(d)) return realize_case2(static_cast<std::uint32_t>(d.length()), style);
  return realize_case3(d, style);
}

GeneratorSet MonodromyRepresentation::group() const {
  std::vector<Permutation> gens = branch_images;
  for (const auto& h : handles) {
    gens.push_back(h.a);
    if (h.b) gens.push_back(*h.b);
  }
  return GeneratorSet(std::move(gens));
}

VerificationReport verify(const MonodromyRepresentation& rep, const BranchData& data) {
  const std::size_t d = rep.degree;
  if (data.degree() != d)
    throw Error(Errc::ShapeMismatch, "representation degree " + std::to_string(d) +
                                         " but data degree " + std::to_string(data.degree()));
  if (rep.branch_images.size() != data.size())
    throw Error(Errc::ShapeMismatch, std::to_string(rep.branch_images.size()) + " branch images for " +
                                         std::to_string(data.size()) + " branch points");
  if (rep.handles.size() != rep.base.genus())
    throw Error(Errc::ShapeMismatch, std::to_string(rep.handles.size()) + " handles for genus " +
                                         std::to_string(rep.base.genus()));
  for (const auto& p : rep.branch_images)
    if (p.degree() != d) throw Error(Errc::ShapeMismatch, "branch image of wrong degree");
  for (const auto& h : rep.handles) {
    if (h.a.degree() != d) throw Error(Errc::ShapeMismatch, "handle image of wrong degree");
    if (rep.base.orientable() != h.b.has_value())
      throw Error(Errc::ShapeMismatch, rep.base.orientable() ? "orientable handle needs a and b"
                                                             : "non-orientable handle takes only a");
    if (h.b && h.b->degree() != d) throw Error(Errc::ShapeMismatch, "handle image of wrong degree");
  }

  VerificationReport report;
  const Permutation lhs = product(rep.branch_images, d);
  Permutation rhs = Permutation::identity(d);
  for (std::size_t j = rep.handles.size(); j-- > 0;) {
    const auto& h = rep.handles[j];
    rhs = compose(rhs, h.b ? commutator(*h.b, h.a) : compose(h.a, h.a));
  }
  report.relator_ok = lhs == rhs;
  if (!report.relator_ok) report.failures.push_back("relator");

  report.cycle_types_ok = true;
  for (std::size_t x = 0; x < data.size(); ++x) {
    report.cycle_types.push_back(cycle_type(rep.branch_images[x]));
    if (report.cycle_types.back() != data[x]) {
      report.cycle_types_ok = false;
      report.failures.push_back("cycle_type[" + std::to_string(x) + "]");
    }
  }

  const GeneratorSet group = rep.group();
  report.primitivity = is_primitive(group);
  report.transitive = report.primitivity.verdict != Verdict::Intransitive;
  if (!report.transitive) report.failures.push_back("transitive");
  else report.long_cycle_shortcut = long_cycle_shortcut(group);

  try {
    report.cover = euler_char_cover(static_cast<std::uint32_t>(d), rep.base, data);
  } catch (const Error& e) {
    if (e.code() != Errc::InconsistentData) throw;
  }
  return report;
}

RealizedData realize_data(const BranchData& data, const SurfaceKind& base) {
  const std::uint32_t d = data.degree();
  if (d < 2) throw Error(Errc::UnsupportedDegree, "degree 1 has no branched covering to build");
  if (!is_admissible(data))
    throw Error(Errc::NotAdmissible, "total defect " + std::to_string(total_defect(data)) + " is odd");

  if (d == 2) {
    // Any transitive representation in degree 2 is primitive.
    const Permutation swap = Permutation::from_cycles(2, {{1, 2}});
    const Permutation id = Permutation::identity(2);
    MonodromyRepresentation rep{d, base, {}, {}};
    for (const auto& p : data.partitions()) rep.branch_images.push_back(p.is_trivial() ? id : swap);
    for (std::uint32_t j = 0; j < base.genus(); ++j)
      rep.handles.push_back({j == 0 ? swap : id, base.orientable() ? std::optional(id) : std::nullopt});
    auto report = verify(rep, data);
    if (!report.overall_ok() || !report.primitivity.primitive())
      throw Error(Errc::VerificationFailed, "degree-2 representation failed verification");
    return {std::move(rep), std::move(report), std::nullopt};
  }
  if (data.is_trivial()) throw Error(Errc::TrivialData, "every partition is trivial");

  std::vector<Permutation> gammas;
  for (const auto& p : data.partitions()) gammas.push_back(block_layout(p));

  if (product(gammas, d).is_identity()) {
    // Invert a factor with a cycle of length >= 3; failing that, move one
    // point of a transposition into the following cycle.
    std::vector<std::vector<Permutation>> candidates;
    const bool has_long = std::any_of(data.partitions().begin(), data.partitions().end(),
                                      [](const Partition& p) { return p[0] >= 3; });
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      const auto& p = data[i];
      if (has_long && p[0] >= 3) {
        auto alt = gammas;
        alt[i] = inverse(gammas[i]);
        candidates.push_back(std::move(alt));
      } else if (!has_long && p[0] == 2) {
        // First 2-cycle is (1 2); the next cycle starts at 3.
        const Permutation swap = Permutation::from_cycles(d, {{2, 3}});
        auto alt = gammas;
        alt[i] = conjugate(gammas[i], swap);
        candidates.push_back(std::move(alt));
      }
    }
    bool fixed = false;
    for (auto& alt : candidates) {
      for (std::size_t i = 0; i < alt.size(); ++i)
        if (cycle_type(alt[i]) != data[i])
          throw Error(Errc::VerificationFailed, "perturbation changed a cycle type");
      if (!product(alt, d).is_identity()) {
        gammas = std::move(alt);
        fixed = true;
        break;
      }
    }
    if (!fixed) throw Error(Errc::VerificationFailed, "no perturbation makes the product non-trivial");
  }

  const Permutation prod = product(gammas, d);
  const Partition reduced = cycle_type(prod);
  auto core = realize_partition(reduced, base.orientable() ? SurfaceStyle::Torus : SurfaceStyle::Klein);

  // Conjugating the whole tuple moves the product onto alpha exactly.
  const Permutation sigma = find_conjugator(prod, core.alpha);
  MonodromyRepresentation rep{d, base, {}, {}};
  for (const auto& g : gammas) rep.branch_images.push_back(conjugate(g, sigma));
  if (product(rep.branch_images, d) != core.alpha)
    throw Error(Errc::VerificationFailed, "conjugated product differs from alpha");

  const Permutation id = Permutation::identity(d);
  if (base.orientable()) {
    rep.handles.push_back({core.beta, core.partner});
    for (std::uint32_t j = 1; j < base.genus(); ++j) rep.handles.push_back({id, id});
  } else {
    rep.handles.push_back({*core.theta, std::nullopt});
    rep.handles.push_back({core.partner, std::nullopt});
    for (std::uint32_t j = 2; j < base.genus(); ++j) rep.handles.push_back({id, std::nullopt});
  }

  auto report = verify(rep, data);
  if (!report.overall_ok() || !report.primitivity.primitive())
    throw Error(Errc::VerificationFailed, "realization of " + data.to_string() + " over " + base.name() +
                                              " failed verification");
  return {std::move(rep), std::move(report), std::move(core)};
}

}  // namespace branchcov

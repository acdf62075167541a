#include <doctest.h>

#include <functional>
#include <random>

#include "branchcov/error.hpp"
#include "branchcov/oracle.hpp"
#include "branchcov/realize.hpp"
#include "generators.hpp"

using namespace branchcov;

namespace {

Permutation cyc(std::size_t d, std::vector<std::vector<Point>> c) { return Permutation::from_cycles(d, c); }
Partition P(std::vector<std::uint32_t> v) { return Partition(std::move(v)); }
Permutation img(std::vector<Point> v) { return Permutation::from_images(v); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::BadInput;
}

void check_realization(const TwoGeneratorRealization& r, const Partition& d) {
  CHECK(cycle_type(r.alpha) == d);
  CHECK(r.identity_holds());
  if (r.style == SurfaceStyle::Torus) {
    CHECK(commutator(r.partner, r.beta) == r.alpha);
  } else {
    REQUIRE(r.theta.has_value());
    CHECK(compose(compose(r.partner, r.partner), compose(*r.theta, *r.theta)) == r.alpha);
    CHECK(*r.theta == compose(inverse(r.partner), inverse(r.beta)));
  }
  CHECK(r.certificate.primitive());
  CHECK(is_primitive(r.group()).primitive());
}

}  // namespace

TEST_CASE("case 1 at small k") {
  const auto t3 = realize_case1(3, SurfaceStyle::Torus);
  CHECK(t3.partner == cyc(3, {{2, 3}}));
  CHECK(t3.beta == cyc(3, {{1, 3}}));
  CHECK(t3.alpha == cyc(3, {{1, 2, 3}}));
  check_realization(t3, P({3}));

  const auto t5 = realize_case1(5, SurfaceStyle::Torus);
  CHECK(t5.partner == cyc(5, {{3, 4, 5}}));
  CHECK(t5.beta == img({5, 4, 3, 1, 2}));
  CHECK(t5.alpha == cyc(5, {{1, 2, 3, 4, 5}}));
  check_realization(t5, P({5}));

  const auto k3 = realize_case1(3, SurfaceStyle::Klein);
  check_realization(k3, P({3}));

  CHECK(code_of([] { realize_case1(4, SurfaceStyle::Torus); }) == Errc::BadInput);
  CHECK(code_of([] { realize_case1(1, SurfaceStyle::Klein); }) == Errc::BadInput);
}

TEST_CASE("case 2") {
  const auto r2 = realize_case2(2, SurfaceStyle::Torus);
  CHECK(r2.alpha == cyc(4, {{1, 2}, {3, 4}}));
  CHECK(r2.beta == cyc(4, {{1, 3, 4}}));
  CHECK(compose(r2.alpha, r2.beta) == cyc(4, {{1, 2, 3}}));
  check_realization(r2, P({2, 2}));

  const auto r4 = realize_case2(4, SurfaceStyle::Klein);
  CHECK(r4.beta == cyc(8, {{1, 3, 5, 7, 4}, {2, 6, 8}}));
  CHECK(cycle_type(compose(r4.alpha, r4.beta)) == P({5, 3}));
  check_realization(r4, P({2, 2, 2, 2}));

  CHECK(code_of([] { realize_case2(3, SurfaceStyle::Torus); }) == Errc::BadInput);
}

TEST_CASE("case 3 scaffold") {
  const auto s = case_three_scaffold(P({3, 1}));
  CHECK(s.alpha == cyc(4, {{1, 2, 3}}));
  CHECK(s.beta == cyc(4, {{1, 4, 2, 3}}));
  CHECK(compose(s.alpha, s.beta) == cyc(4, {{1, 3, 4, 2}}));

  // Reordered as (2, 1, 2, 1): cycles (1 2)(3)(4 5)(6), heads 1 3 4 6,
  // tails 2 and 5.
  const auto s2 = case_three_scaffold(P({2, 2, 1, 1}));
  CHECK(s2.order == std::vector<std::uint32_t>{2, 1, 2, 1});
  CHECK(s2.alpha == cyc(6, {{1, 2}, {4, 5}}));
  CHECK(s2.beta == cyc(6, {{1, 3, 4, 6, 2, 5}}));
  CHECK(compose(s2.alpha, s2.beta) == cyc(6, {{1, 5, 6, 2, 3, 4}}));

  CHECK(case_three_scaffold(P({1, 1, 3})).order == std::vector<std::uint32_t>{3, 1, 1});
  CHECK(case_three_scaffold(P({1, 2, 3, 2})).order == std::vector<std::uint32_t>{3, 1, 2, 2});

  CHECK(code_of([] { case_three_scaffold(P({2, 2})); }) == Errc::BadInput);
  CHECK(code_of([] { case_three_scaffold(P({5})); }) == Errc::BadInput);
  CHECK(code_of([] { case_three_scaffold(P({2, 1})); }) == Errc::BadInput);
}

TEST_CASE("alpha beta is a full cycle for every case-3 partition, d <= 14") {
  std::size_t count = 0;
  for (std::uint32_t d = 3; d <= 14; ++d) {
    for (const auto& p : partitions_of(d)) {
      if (p.length() < 2 || p.is_trivial() || p.defect() % 2) continue;
      bool twos = true;
      for (auto c : p.components()) twos = twos && c == 2;
      if (twos) continue;
      const auto s = case_three_scaffold(p);
      CHECK(cycle_type(s.alpha) == p);
      CHECK(cycle_type(s.beta) == P({d}));
      CHECK(cycle_type(compose(s.alpha, s.beta)) == P({d}));
      ++count;
    }
  }
  CHECK(count == 242);
}

TEST_CASE("dispatch and errors") {
  CHECK(realize_partition(P({9}), SurfaceStyle::Torus).alpha == cyc(9, {{1, 2, 3, 4, 5, 6, 7, 8, 9}}));
  CHECK(realize_partition(P({2, 2, 2, 2}), SurfaceStyle::Torus).beta == cyc(8, {{1, 3, 5, 7, 4}, {2, 6, 8}}));
  CHECK(cycle_type(realize_partition(P({3, 3, 2, 2}), SurfaceStyle::Klein).alpha) == P({3, 3, 2, 2}));
  CHECK(code_of([] { realize_partition(P({1, 1, 1}), SurfaceStyle::Torus); }) == Errc::TrivialPartition);
  CHECK(code_of([] { realize_partition(P({2, 1}), SurfaceStyle::Torus); }) == Errc::NotAdmissible);
  CHECK(code_of([] { realize_partition(P({1}), SurfaceStyle::Torus); }) == Errc::UnsupportedDegree);
}

TEST_CASE("every admissible non-trivial partition, d <= 12, both styles") {
  for (std::uint32_t d = 2; d <= 12; ++d) {
    for (const auto& p : partitions_of(d)) {
      if (p.is_trivial() || p.defect() % 2) continue;
      for (auto style : {SurfaceStyle::Torus, SurfaceStyle::Klein}) {
        CAPTURE(p.to_string());
        const auto r = realize_partition(p, style);
        check_realization(r, p);
        if (d <= 8) CHECK(oracle::primitive_bruteforce(r.group()).primitive());
      }
    }
  }
}

TEST_CASE("larger degrees still realize") {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 40; ++iter) {
    const std::uint32_t d = 13 + rng() % 28;
    Partition p = testgen::random_partition(d, rng);
    if (p.is_trivial() || p.defect() % 2) continue;
    CAPTURE(p.to_string());
    check_realization(realize_partition(p, iter % 2 ? SurfaceStyle::Klein : SurfaceStyle::Torus), p);
  }
}

TEST_CASE("the degree-9 representation verifies") {
  const auto a = cyc(9, {{1, 4, 5, 6, 7, 8, 9, 3, 2}});
  const auto b = cyc(9, {{2, 4, 5, 6, 7, 8, 9, 3}});
  const auto u = cyc(9, {{1, 2, 3}, {4, 5}, {6, 7}, {8, 9}});
  const BranchData data({P({3, 2, 2, 2}), P({3, 2, 2, 2})});
  MonodromyRepresentation rep{9, SurfaceKind::torus(1), {u, u}, {Handle{a, b}}};
  const auto r = verify(rep, data);
  CHECK(r.relator_ok);
  CHECK(r.cycle_types_ok);
  CHECK(r.transitive);
  CHECK(r.primitivity.primitive());
  CHECK(r.long_cycle_shortcut == true);
  REQUIRE(r.cover.has_value());
  CHECK(r.cover->euler_char == -10);
  CHECK(r.cover->cover == SurfaceKind::torus(6));
  CHECK(r.overall_ok());

  auto broken = rep;
  broken.branch_images[1] = Permutation::identity(9);
  const auto rb = verify(broken, data);
  CHECK_FALSE(rb.cycle_types_ok);
  CHECK_FALSE(rb.overall_ok());
  CHECK(std::find(rb.failures.begin(), rb.failures.end(), "cycle_type[1]") != rb.failures.end());
}

TEST_CASE("an imprimitive representation is still valid") {
  const auto c = cyc(4, {{1, 2, 3, 4}});
  const BranchData data({P({4}), P({4})});
  const auto id = Permutation::identity(4);
  MonodromyRepresentation rep{4, SurfaceKind::torus(1), {c, inverse(c)}, {Handle{id, id}}};
  const auto r = verify(rep, data);
  CHECK(r.overall_ok());
  CHECK(r.primitivity.verdict == Verdict::Imprimitive);
}

TEST_CASE("verify rejects shape mismatches") {
  const BranchData data({P({2}), P({2})});
  const auto s = cyc(2, {{1, 2}});
  MonodromyRepresentation few{2, SurfaceKind::torus(1), {s}, {Handle{s, s}}};
  CHECK(code_of([&] { verify(few, data); }) == Errc::ShapeMismatch);
  MonodromyRepresentation handles{2, SurfaceKind::torus(2), {s, s}, {Handle{s, s}}};
  CHECK(code_of([&] { verify(handles, data); }) == Errc::ShapeMismatch);
  MonodromyRepresentation missing_b{2, SurfaceKind::torus(1), {s, s}, {Handle{s, std::nullopt}}};
  CHECK(code_of([&] { verify(missing_b, data); }) == Errc::ShapeMismatch);
  MonodromyRepresentation wrong_degree{3, SurfaceKind::torus(1), {s, s}, {Handle{s, s}}};
  CHECK(code_of([&] { verify(wrong_degree, data); }) == Errc::ShapeMismatch);
}

TEST_CASE("realize_data on hand-checked cases") {
  const BranchData ex({P({3, 2, 2, 2}), P({3, 2, 2, 2})});
  const auto out = realize_data(ex, SurfaceKind::torus(1));
  CHECK(out.report.overall_ok());
  CHECK(out.report.primitivity.primitive());
  for (const auto& u : out.representation.branch_images) CHECK(cycle_type(u) == P({3, 2, 2, 2}));
  const auto& h = out.representation.handles.at(0);
  CHECK(compose(out.representation.branch_images[0], out.representation.branch_images[1]) == commutator(*h.b, h.a));

  const auto two = realize_data(BranchData({P({2}), P({2})}), SurfaceKind::torus(1));
  const auto swap = cyc(2, {{1, 2}});
  CHECK(two.representation.branch_images == std::vector<Permutation>{swap, swap});
  CHECK(two.representation.handles.at(0).a == swap);
  CHECK(two.representation.handles.at(0).b == Permutation::identity(2));
  CHECK(two.report.overall_ok());
  CHECK(two.report.primitivity.primitive());
  CHECK_FALSE(two.core.has_value());

  const auto two_p = realize_data(BranchData({P({2}), P({2})}), SurfaceKind::projective(2));
  CHECK(two_p.representation.handles.size() == 2);
  CHECK_FALSE(two_p.representation.handles[0].b.has_value());
  CHECK(two_p.report.overall_ok());

  // Trivial data in degree 2 are still realizable: the handle alone makes
  // the group transitive.
  CHECK(realize_data(BranchData({P({1, 1})}), SurfaceKind::torus(1)).report.overall_ok());

  const auto thirteen = realize_data(BranchData({P({1, 3})}), SurfaceKind::torus(1));
  REQUIRE(thirteen.core.has_value());
  CHECK(thirteen.core->target == P({3, 1}));
  CHECK(thirteen.report.primitivity.primitive());
}

TEST_CASE("realize_data errors") {
  CHECK(code_of([] { realize_data(BranchData({P({2})}), SurfaceKind::torus(1)); }) == Errc::NotAdmissible);
  CHECK(code_of([] { realize_data(BranchData({P({1, 1, 1})}), SurfaceKind::torus(1)); }) == Errc::TrivialData);
  CHECK(code_of([] { realize_data(BranchData({P({1})}), SurfaceKind::torus(1)); }) == Errc::UnsupportedDegree);
}

TEST_CASE("perturbations keep cycle types") {
  // Each layout below multiplies to the identity, so the product must be
  // perturbed: by a transposition move when all cycles are short, by an
  // inversion when a 3-cycle is present.
  for (const auto& data : {BranchData({P({2, 1}), P({2, 1})}), BranchData({P({2, 2}), P({2, 2})}),
                           BranchData({P({2, 1, 1}), P({2, 1, 1}), P({3, 1}), P({3, 1}), P({3, 1})})}) {
    std::vector<Permutation> layout;
    for (const auto& p : data.partitions()) layout.push_back(block_layout(p));
    Permutation prod = Permutation::identity(data.degree());
    for (const auto& g : layout) prod = compose(prod, g);
    REQUIRE(prod.is_identity());
    for (auto base : {SurfaceKind::torus(1), SurfaceKind::projective(2), SurfaceKind::torus(3)}) {
      const auto out = realize_data(data, base);
      CHECK(out.report.overall_ok());
      CHECK(out.report.primitivity.primitive());
      for (std::size_t i = 0; i < data.size(); ++i) CHECK(cycle_type(out.representation.branch_images[i]) == data[i]);
    }
  }
}

TEST_CASE("random branch data over assorted bases") {
  std::mt19937_64 rng(77);
  const std::vector<SurfaceKind> bases{SurfaceKind::torus(1), SurfaceKind::torus(2), SurfaceKind::torus(4),
                                       SurfaceKind::projective(2), SurfaceKind::projective(3),
                                       SurfaceKind::projective(6)};
  int realized = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const std::uint32_t d = 3 + rng() % 20;
    std::vector<Partition> ps;
    const std::size_t count = 1 + rng() % 5;
    for (std::size_t i = 0; i < count; ++i) ps.push_back(testgen::random_partition(d, rng));
    const BranchData data(ps);
    if (!is_admissible(data) || data.is_trivial()) continue;
    const auto& base = bases[rng() % bases.size()];
    CAPTURE(data.to_string());
    const auto out = realize_data(data, base);
    ++realized;
    CHECK(out.report.overall_ok());
    CHECK(out.report.primitivity.primitive());
    CHECK(out.representation.handles.size() == base.genus());
    // Re-verify from scratch.
    const auto again = verify(out.representation, data);
    CHECK(again.relator_ok);
    CHECK(again.cycle_types_ok);
  }
  CHECK(realized > 100);
}

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "branchcov/decompose.hpp"
#include "branchcov/error.hpp"
#include "branchcov/io.hpp"
#include "branchcov/oracle.hpp"
#include "branchcov/partition.hpp"
#include "branchcov/permgroup.hpp"
#include "branchcov/realize.hpp"
#include "cli.hpp"

using namespace branchcov;
using nlohmann::json;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

namespace fs = std::filesystem;

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / ("branchcov_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

int run_cli(const std::vector<std::string>& args, std::string& out) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  out = o.str();
  return code;
}

Permutation cyc(std::size_t d, std::vector<std::vector<Point>> c) { return Permutation::from_cycles(d, c); }

const Permutation kA = cyc(9, {{1, 4, 5, 6, 7, 8, 9, 3, 2}});
const Permutation kB = cyc(9, {{2, 4, 5, 6, 7, 8, 9, 3}});
const Permutation kU = cyc(9, {{1, 2, 3}, {4, 5}, {6, 7}, {8, 9}});
const BranchData kExample{{Partition{{3, 2, 2, 2}}, Partition{{3, 2, 2, 2}}}};

// Criterion 1 ------------------------------------------------------------
Outcome example_representation(const fs::path& dir) {
  Outcome r;
  MonodromyRepresentation rep{9, SurfaceKind::torus(1), {kU, kU}, {Handle{kA, kB}}};
  write(dir / "ex31_rep.json", io::dump(io::to_json(io::RepresentationFile{rep, {}})));
  write(dir / "ex31_data.json", io::dump(io::to_json(io::BranchDataFile{kExample, SurfaceKind::torus(1)})));
  std::string out;
  const int code = run_cli({"verify", (dir / "ex31_rep.json").string(), (dir / "ex31_data.json").string()}, out);
  if (code != 0) r.fail("verify exit code " + std::to_string(code));
  const json rep_json = json::parse(out);
  if (!rep_json["relator_ok"].get<bool>()) r.fail("relator not satisfied");
  if (rep_json["cycle_types"] != json::parse("[[3,2,2,2],[3,2,2,2]]")) r.fail("cycle types " + rep_json["cycle_types"].dump());
  if (!rep_json["transitive"].get<bool>()) r.fail("not transitive");
  if (rep_json["primitivity"]["verdict"] != "primitive") r.fail("verdict " + rep_json["primitivity"].dump());
  if (rep_json["long_cycle_shortcut"] != true) r.fail("long-cycle shortcut did not fire");
  if (r.ok) r.detail = "relator ok, types [3,2,2,2] x2, transitive, primitive, shortcut fired";
  return r;
}

// Criterion 2 ------------------------------------------------------------
Outcome decomposability_decisions() {
  Outcome r;
  const auto w = is_decomposable(kExample);
  if (!w) {
    r.fail("degree-9 data reported indecomposable");
  } else {
    const BranchData expected{{Partition{{1, 2}}, Partition{{1, 2}}}};
    if (w->u != 3 || w->w != 3) r.fail("witness u,w = " + std::to_string(w->u) + "," + std::to_string(w->w));
    if (!(w->first_factor == expected)) r.fail("first factor " + w->first_factor.to_string());
    if (!w->validates(kExample)) r.fail("witness does not validate");
  }
  if (is_decomposable(BranchData{{Partition{{2, 2}}}})) r.fail("{[2,2]} reported decomposable");
  if (is_decomposable(BranchData{{Partition{{1, 3}}}})) r.fail("{[1,3]} reported decomposable");
  if (r.ok) r.detail = "u=w=3 with U={[2,1],[2,1]}; {[2,2]}, {[1,3]} indecomposable";
  return r;
}

// Criteria 3 and 6 share one sweep -----------------------------------------
struct FactorSweep {
  std::size_t checked = 0;
  std::size_t factorizations = 0;
  std::size_t identity_checks = 0;
  Outcome completeness;
  Outcome identity;
};

FactorSweep factor_sweep() {
  FactorSweep s;
  const Partition ex{{2, 2, 2, 1, 1, 1}};
  const auto ex_f = factor_single(ex, 3, 3);
  std::set<std::pair<Partition, std::vector<Partition>>> got;
  for (const auto& f : ex_f) got.insert({f.outer, f.inner});
  const std::set<std::pair<Partition, std::vector<Partition>>> want{
      {Partition{{1, 1, 1}}, {Partition{{2, 1}}, Partition{{2, 1}}, Partition{{2, 1}}}},
      {Partition{{2, 1}}, {Partition{{1, 1, 1}}, Partition{{1, 1, 1}}}}};
  if (ex_f.size() != 2 || got != want) s.completeness.fail("[2,2,2,1,1,1] with u=w=3 does not give the two expected factorizations");

  for (std::uint32_t d = 4; d <= 10; ++d) {
    for (std::uint32_t u = 2; u < d; ++u) {
      if (d % u != 0) continue;
      const std::uint32_t w = d / u;
      for (const auto& p : partitions_of(d)) {
        ++s.checked;
        const auto fast = factor_single(p, u, w);
        const std::set<SingleFactorization> fast_set(fast.begin(), fast.end());
        const auto slow = oracle::factorizations_bruteforce(p, u, w);
        if (fast_set.size() != fast.size()) s.completeness.fail("duplicates for " + p.to_string());
        if (fast_set != slow)
          s.completeness.fail("mismatch for " + p.to_string() + " u=" + std::to_string(u) + ": " +
                              std::to_string(fast.size()) + " vs " + std::to_string(slow.size()));
        s.factorizations += fast.size();
        for (const auto& f : fast) {
          // nu(D) = nu(W) + w nu(U) on single-point data {D}.
          std::uint64_t nu_w = 0;
          for (const auto& inner : f.inner) nu_w += inner.defect();
          ++s.identity_checks;
          if (p.defect() != nu_w + static_cast<std::uint64_t>(w) * f.outer.defect())
            s.identity.fail("identity fails for " + p.to_string());
        }
      }
    }
  }
  // And the multi-point form on every witness enumerated for two-point data.
  for (std::uint32_t d = 4; d <= 10; ++d) {
    const auto parts = partitions_of(d);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i; j < parts.size(); ++j) {
        const BranchData data{{parts[i], parts[j]}};
        if (!is_admissible(data)) continue;
        for (const auto& wit : all_decompositions(data, SurfaceKind::torus(1), 100000)) {
          std::uint64_t nu_w = 0;
          for (const auto& p : wit.second_factor) nu_w += p.defect();
          ++s.identity_checks;
          if (total_defect(data) != nu_w + static_cast<std::uint64_t>(wit.w) * total_defect(wit.first_factor))
            s.identity.fail("identity fails for " + data.to_string());
        }
      }
    }
  }
  if (s.completeness.ok)
    s.completeness.detail = std::to_string(s.checked) + " (partition, u) cases, " +
                            std::to_string(s.factorizations) + " factorizations, all equal to brute force";
  if (s.identity.ok) s.identity.detail = std::to_string(s.identity_checks) + " factorizations checked";
  return s;
}

// Criterion 4 ------------------------------------------------------------
Outcome partition_sweep() {
  Outcome r;
  std::size_t count = 0, oracle_checked = 0;
  for (std::uint32_t d = 2; d <= 12; ++d) {
    for (const auto& p : partitions_of(d)) {
      if (p.is_trivial() || p.defect() % 2 != 0) continue;
      for (auto style : {SurfaceStyle::Torus, SurfaceStyle::Klein}) {
        ++count;
        const std::string tag = p.to_string() + "/" + to_string(style);
        try {
          const auto real = realize_partition(p, style);
          if (!(cycle_type(real.alpha) == p)) r.fail(tag + ": alpha has the wrong type");
          if (style == SurfaceStyle::Torus && !(commutator(real.partner, real.beta) == real.alpha))
            r.fail(tag + ": [lambda,beta] != alpha");
          if (style == SurfaceStyle::Klein) {
            const auto& w = real.partner;
            const auto& t = *real.theta;
            if (!(compose(compose(w, w), compose(t, t)) == real.alpha)) r.fail(tag + ": omega^2 theta^2 != alpha");
          }
          const auto fresh = is_primitive(real.group());
          if (!real.certificate.primitive() || !fresh.primitive()) r.fail(tag + ": not primitive");
          if (d <= 8) {
            ++oracle_checked;
            if (!oracle::primitive_bruteforce(real.group()).primitive()) r.fail(tag + ": brute force disagrees");
          }
        } catch (const std::exception& e) {
          r.fail(tag + ": " + e.what());
        }
      }
    }
  }
  if (r.ok)
    r.detail = std::to_string(count) + " realizations, " + std::to_string(oracle_checked) + " confirmed by brute force";
  return r;
}

// Criteria 5 and 7 share one sweep -----------------------------------------
std::vector<BranchData> data_multisets(std::uint32_t d, std::size_t max_points) {
  std::vector<BranchData> all;
  const auto parts = partitions_of(d);
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!pick.empty()) {
      std::vector<Partition> ps;
      for (auto i : pick) ps.push_back(parts[i]);
      all.emplace_back(std::move(ps));
    }
    if (pick.size() == max_points) return;
    for (std::size_t i = from; i < parts.size(); ++i) {
      pick.push_back(i);
      rec(i);
      pick.pop_back();
    }
  };
  rec(0);
  return all;
}

// Pointwise composition straight from the image arrays, independent of verify().
bool relator_by_hand(const MonodromyRepresentation& rep) {
  const std::size_t d = rep.degree;
  auto mul = [&](const std::vector<Point>& p, const std::vector<Point>& q) {
    std::vector<Point> r(d);
    for (std::size_t x = 0; x < d; ++x) r[x] = q[p[x] - 1];
    return r;
  };
  auto inv = [&](const std::vector<Point>& p) {
    std::vector<Point> r(d);
    for (std::size_t x = 0; x < d; ++x) r[p[x] - 1] = static_cast<Point>(x + 1);
    return r;
  };
  std::vector<Point> lhs = Permutation::identity(d).images(), rhs = lhs;
  for (const auto& u : rep.branch_images) lhs = mul(lhs, u.images());
  for (std::size_t i = rep.handles.size(); i-- > 0;) {
    const auto a = rep.handles[i].a.images();
    if (rep.base.orientable()) {
      const auto b = rep.handles[i].b->images();
      rhs = mul(rhs, mul(mul(mul(b, a), inv(b)), inv(a)));
    } else {
      rhs = mul(rhs, mul(a, a));
    }
  }
  return lhs == rhs;
}

struct DataSweep {
  Outcome realization;
  Outcome bookkeeping;
};

DataSweep data_sweep() {
  DataSweep s;
  const std::vector<SurfaceKind> bases{SurfaceKind::torus(1), SurfaceKind::torus(2), SurfaceKind::projective(2),
                                       SurfaceKind::projective(3)};
  std::size_t realized = 0, skipped_trivial = 0, brute_forced = 0;
  for (std::uint32_t d = 2; d <= 8; ++d) {
    for (const auto& data : data_multisets(d, 3)) {
      if (!is_admissible(data)) continue;
      for (const auto& base : bases) {
        const std::string tag = data.to_string() + " on " + base.name();
        if (d > 2 && data.is_trivial()) {
          // Nothing to realize; the library must refuse rather than guess.
          try {
            realize_data(data, base);
            s.realization.fail(tag + ": trivial data were not rejected");
          } catch (const Error& e) {
            if (e.code() != Errc::TrivialData) s.realization.fail(tag + ": " + e.what());
          }
          ++skipped_trivial;
          continue;
        }
        try {
          const auto out = realize_data(data, base);
          ++realized;
          const auto report = verify(out.representation, data);
          if (!report.overall_ok()) s.realization.fail(tag + ": verification failed");
          if (!report.primitivity.primitive()) s.realization.fail(tag + ": not primitive");
          if (!relator_by_hand(out.representation)) s.realization.fail(tag + ": relator recomputed by hand fails");
          if (base == bases.front()) {
            ++brute_forced;
            if (!oracle::primitive_bruteforce(out.representation.group()).primitive())
              s.realization.fail(tag + ": brute-force block test finds a block");
          }
          for (std::size_t i = 0; i < data.size(); ++i)
            if (!(cycle_type(out.representation.branch_images[i]) == data[i]))
              s.realization.fail(tag + ": wrong type at point " + std::to_string(i));
          if (!report.cover) {
            s.bookkeeping.fail(tag + ": no cover reported");
            continue;
          }
          const std::int64_t chi = static_cast<std::int64_t>(d) * base.euler_char() -
                                   static_cast<std::int64_t>(total_defect(data));
          const auto& cover = report.cover->cover;
          if (report.cover->euler_char != chi) s.bookkeeping.fail(tag + ": chi(M) mismatch");
          if (cover.euler_char() != chi) s.bookkeeping.fail(tag + ": cover surface has the wrong chi");
          if (cover.orientable() != base.orientable()) s.bookkeeping.fail(tag + ": cover orientability");
          if (cover.orientable() ? cover.genus() < 1 : cover.genus() < 2)
            s.bookkeeping.fail(tag + ": cover genus out of range");
        } catch (const std::exception& e) {
          s.realization.fail(tag + ": " + e.what());
        }
      }
    }
  }
  const auto ex = euler_char_cover(9, SurfaceKind::torus(1), kExample);
  if (ex.euler_char != -10 || !(ex.cover == SurfaceKind::torus(6))) s.bookkeeping.fail("degree-9 cover is not T6");
  if (s.realization.ok)
    s.realization.detail = std::to_string(realized) + " realizations verified primitive, " + std::to_string(brute_forced) +
                           " by brute force (" +
                           std::to_string(skipped_trivial) + " all-trivial cases correctly refused)";
  if (s.bookkeeping.ok) s.bookkeeping.detail = std::to_string(realized) + " covers checked; degree-9 example gives T6";
  return s;
}

// Criterion 8 ------------------------------------------------------------
Outcome concordance() {
  Outcome r;
  std::mt19937_64 rng(20260601);
  std::ostringstream tally;
  for (std::size_t d : {4, 6, 8}) {
    std::size_t counts[3] = {0, 0, 0}, disagree = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto gens = oracle::random_generator_set(d, rng);
      const auto fast = is_primitive(gens);
      const auto slow = oracle::primitive_bruteforce(gens);
      ++counts[static_cast<int>(slow.verdict)];
      if (fast.verdict != slow.verdict) ++disagree;
    }
    if (disagree) r.fail(std::to_string(disagree) + " disagreements at degree " + std::to_string(d));
    tally << " d=" << d << ": " << counts[0] << "P/" << counts[1] << "I/" << counts[2] << "T";
  }
  if (r.ok) r.detail = "3000 samples, 0 disagreements;" + tally.str();
  return r;
}

// Criterion 9 ------------------------------------------------------------
Outcome coexistence(const fs::path& dir) {
  Outcome r;
  write(dir / "coexist.json", io::dump(io::to_json(io::BranchDataFile{kExample, SurfaceKind::torus(1)})));
  std::string out;
  if (run_cli({"factorize", (dir / "coexist.json").string()}, out) != 0) r.fail("factorize did not find a witness");
  const json f = json::parse(out);
  if (f["witness"]["first_factor"] != json::parse("[[2,1],[2,1]]")) r.fail("witness first factor " + f["witness"]["first_factor"].dump());
  const auto rep_file = dir / "coexist_rep.json";
  if (run_cli({"realize", (dir / "coexist.json").string(), "--out", rep_file.string()}, out) != 0)
    r.fail("realize failed");
  if (run_cli({"verify", rep_file.string(), (dir / "coexist.json").string()}, out) != 0) r.fail("verify failed");
  const json v = json::parse(out);
  if (v["primitivity"]["verdict"] != "primitive") r.fail("realization not primitive");
  if (r.ok) r.detail = "decomposable via U={[2,1],[2,1]} and realized by a primitive (indecomposable) representation";
  return r;
}

}  // namespace

int main() {
  const auto dir = scratch_dir();
  bool all_ok = true;
  using clock = std::chrono::steady_clock;

  auto report = [&](int n, const char* name, const Outcome& o, double seconds, double limit) {
    const bool in_time = limit <= 0 || seconds < limit;
    const bool ok = o.ok && in_time;
    all_ok = all_ok && ok;
    std::printf("%s criterion %d: %s (%.2fs%s) %s%s\n", ok ? "PASS" : "FAIL", n, name, seconds,
                limit > 0 ? (" < " + std::to_string(static_cast<int>(limit)) + "s").c_str() : "",
                o.detail.c_str(), in_time ? "" : " [time limit exceeded]");
    std::fflush(stdout);
  };
  auto timed = [&](auto&& fn) {
    const auto t0 = clock::now();
    auto result = fn();
    return std::pair{std::move(result), std::chrono::duration<double>(clock::now() - t0).count()};
  };

  {
    auto [o, t] = timed([&] { return example_representation(dir); });
    report(1, "degree-9 example verifies", o, t, 1);
  }
  {
    auto [o, t] = timed(decomposability_decisions);
    report(2, "decomposability decisions", o, t, 1);
  }
  {
    auto [s, t] = timed(factor_sweep);
    report(3, "factorization completeness", s.completeness, t, 60);
    report(6, "defect identity nu(D) = nu(W) + w nu(U)", s.identity, t, 0);
  }
  {
    auto [o, t] = timed(partition_sweep);
    report(4, "single-partition realization sweep d<=12", o, t, 120);
  }
  {
    auto [s, t] = timed(data_sweep);
    report(5, "branch-data realization sweep d<=8", s.realization, t, 600);
    report(7, "Riemann-Hurwitz bookkeeping", s.bookkeeping, t, 0);
  }
  {
    auto [o, t] = timed(concordance);
    report(8, "primitivity oracle concordance", o, t, 300);
  }
  {
    auto [o, t] = timed([&] { return coexistence(dir); });
    report(9, "decomposable and indecomposable realizations coexist", o, t, 0);
  }

  std::error_code ec;
  fs::remove_all(dir, ec);
  std::printf("%s\n", all_ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all_ok ? 0 : 1;
}

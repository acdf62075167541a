#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "branchcov/decompose.hpp"
#include "branchcov/error.hpp"
#include "branchcov/io.hpp"
#include "branchcov/oracle.hpp"
#include "branchcov/partition.hpp"
#include "branchcov/permgroup.hpp"
#include "branchcov/realize.hpp"

namespace branchcov::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

io::BranchDataFile load_data(const std::string& path, const std::string& base_override) {
  auto file = io::parse_branch_data(read_file(path));
  if (!base_override.empty()) file.surface = SurfaceKind::parse(base_override);
  return file;
}

int cmd_check(const std::string& path, const std::string& base, std::ostream& out) {
  const auto file = load_data(path, base);
  const bool admissible = is_admissible(file.data);
  const auto nu = total_defect(file.data);
  json report{{"degree", file.data.degree()},
              {"surface", io::to_json(file.surface)},
              {"admissible", admissible},
              {"total_defect", nu}};
  std::string summary = std::string(admissible ? "admissible" : "not admissible") + ", nu=" + std::to_string(nu);
  try {
    const auto cover = euler_char_cover(file.data.degree(), file.surface, file.data);
    report["euler_char_cover"] = cover.euler_char;
    report["cover"] = io::to_json(cover.cover);
    summary += ", cover=" + cover.cover.name() + " (chi=" + std::to_string(cover.euler_char) + ")";
  } catch (const Error& e) {
    if (e.code() != Errc::InconsistentData) throw;
    report["euler_char_cover"] = nullptr;
    report["cover"] = nullptr;
  }
  report["summary"] = summary;
  out << io::dump(report);
  return admissible ? kOk : kNegative;
}

int cmd_realize(const std::string& path, const std::string& base, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
  const auto file = load_data(path, base);
  RealizedData realized = [&] {
    try {
      return realize_data(file.data, file.surface);
    } catch (const Error& e) {
      if (e.code() == Errc::VerificationFailed) throw;
      err << "cannot realize: " << e.what() << "\n";
      throw std::invalid_argument("negative");
    }
  }();
  const std::string text = io::dump(io::to_json(io::representation_file(realized)));
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error(Errc::ParseError, "cannot write '" + out_path + "'");
    f << text;
    json summary{{"written", out_path},
                 {"primitive", realized.report.primitivity.primitive()},
                 {"overall_ok", realized.report.overall_ok()}};
    out << io::dump(summary);
  }
  return kOk;
}

int cmd_factorize(const std::string& path, const std::string& base, bool all, std::size_t limit,
                  std::ostream& out, std::ostream& err) {
  const auto file = load_data(path, base);
  if (!is_admissible(file.data)) {
    err << "data are not admissible: total defect " << total_defect(file.data) << " is odd\n";
    return kNegative;
  }
  json report{{"degree", file.data.degree()}, {"surface", io::to_json(file.surface)}};
  if (all) {
    const auto witnesses = all_decompositions(file.data, file.surface, limit);
    json list = json::array();
    for (const auto& w : witnesses) list.push_back(io::to_json(w));
    report["decomposable"] = !witnesses.empty();
    report["witnesses"] = list;
    report["truncated"] = witnesses.size() >= limit;
    if (witnesses.empty()) report["summary"] = "indecomposable on every base with chi<=0";
    out << io::dump(report);
    return witnesses.empty() ? kNegative : kOk;
  }
  const auto witness = is_decomposable(file.data, file.surface);
  report["decomposable"] = witness.has_value();
  report["witness"] = witness ? io::to_json(*witness) : json(nullptr);
  if (!witness) report["summary"] = "indecomposable on every base with chi<=0";
  out << io::dump(report);
  return witness ? kOk : kNegative;
}

int cmd_verify(const std::string& rep_path, const std::string& data_path, std::ostream& out,
               std::ostream& err) {
  const auto rep = io::parse_representation(read_file(rep_path));
  const auto data = io::parse_branch_data(read_file(data_path));
  if (!(rep.representation.base == data.surface))
    throw Error(Errc::ShapeMismatch, "representation is over " + rep.representation.base.name() +
                                         " but the data file names " + data.surface.name());
  const auto report = verify(rep.representation, data.data);
  out << io::dump(io::to_json(report));
  if (!report.overall_ok()) {
    for (const auto& f : report.failures) err << "failed check: " << f << "\n";
    return kNegative;
  }
  return kOk;
}

bool same_verdict(const PrimitivityCertificate& a, const PrimitivityCertificate& b) {
  return a.verdict == b.verdict;
}

int cmd_oracle(const std::string& data_path, std::size_t degree, std::size_t samples, std::uint64_t seed,
               std::ostream& out) {
  json report = json::object();
  std::size_t disagreements = 0;

  if (!data_path.empty()) {
    const auto file = io::parse_branch_data(read_file(data_path));
    const auto& data = file.data;
    const std::uint32_t d = data.degree();
    json fact = json::array();
    for (std::uint32_t u = 2; u < d; ++u) {
      if (d % u != 0) continue;
      for (const auto& p : data.partitions()) {
        if (p.length() > 10) continue;
        const auto fast = factor_single(p, u, d / u);
        const auto slow = oracle::factorizations_bruteforce(p, u, d / u);
        const bool agree = std::set<SingleFactorization>(fast.begin(), fast.end()) == slow;
        if (!agree) ++disagreements;
        fact.push_back({{"partition", io::to_json(p)}, {"u", u}, {"w", d / u},
                        {"count", fast.size()}, {"agree", agree}});
      }
    }
    report["factorizations"] = fact;
    if (d >= 2 && d <= 8 && is_admissible(data) && (d == 2 || !data.is_trivial())) {
      const auto realized = realize_data(data, file.surface);
      const auto group = realized.representation.group();
      const auto slow = oracle::primitive_bruteforce(group);
      const bool agree = same_verdict(realized.report.primitivity, slow);
      if (!agree) ++disagreements;
      report["realization_primitivity"] = {{"fast", to_string(realized.report.primitivity.verdict)},
                                           {"bruteforce", to_string(slow.verdict)},
                                           {"agree", agree}};
    }
    if (data.size() == 1 && d <= 5) {
      const auto found = oracle::realization_search(data[0]);
      report["realization_search"] = {{"found", found.has_value()}};
      if (found) {
        report["realization_search"]["lambda"] = found->partner.images();
        report["realization_search"]["beta"] = found->beta.images();
      }
    }
  }

  if (samples > 0) {
    std::mt19937_64 rng(seed);
    std::size_t counts[3] = {0, 0, 0};
    std::size_t sample_disagreements = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      const auto gens = oracle::random_generator_set(degree, rng);
      const auto fast = is_primitive(gens);
      const auto slow = oracle::primitive_bruteforce(gens);
      ++counts[static_cast<int>(slow.verdict)];
      if (!same_verdict(fast, slow)) ++sample_disagreements;
    }
    disagreements += sample_disagreements;
    report["concordance"] = {{"degree", degree},
                             {"samples", samples},
                             {"seed", seed},
                             {"primitive", counts[0]},
                             {"imprimitive", counts[1]},
                             {"intransitive", counts[2]},
                             {"disagreements", sample_disagreements}};
  }
  report["disagreements"] = disagreements;
  out << io::dump(report);
  return disagreements == 0 ? kOk : kInternal;
}

}  // namespace

int exit_code_for(const Error& e) { return e.code() == Errc::VerificationFailed ? kInternal : kBadInput; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Admissibility, decomposability and primitive realization of branch data"};
  app.require_subcommand(1);
  std::string base;

  std::string check_path;
  auto* check = app.add_subcommand("check", "Hurwitz condition and Riemann-Hurwitz bookkeeping");
  check->add_option("data", check_path, "branch data file")->required();
  check->add_option("--base", base, "override the base surface, e.g. T2 or P3");

  std::string realize_path, out_path;
  auto* realize = app.add_subcommand("realize", "build an indecomposable primitive representation");
  realize->add_option("data", realize_path, "branch data file")->required();
  realize->add_option("--out", out_path, "write the representation here instead of stdout");
  realize->add_option("--base", base, "override the base surface");

  std::string factor_path;
  bool all = false;
  std::size_t limit = 1000;
  auto* factorize = app.add_subcommand("factorize", "decide decomposability and print a witness");
  factorize->add_option("data", factor_path, "branch data file")->required();
  factorize->add_flag("--all", all, "print every witness (up to --limit)");
  factorize->add_option("--limit", limit, "cap for --all")->check(CLI::PositiveNumber);
  factorize->add_option("--base", base, "override the base surface");

  std::string rep_path, verify_data;
  auto* verify_cmd = app.add_subcommand("verify", "check a representation against branch data");
  verify_cmd->add_option("representation", rep_path, "representation file")->required();
  verify_cmd->add_option("data", verify_data, "branch data file")->required();

  std::string oracle_data;
  std::size_t degree = 6, samples = 0;
  std::uint64_t seed = 1;
  auto* oracle_cmd = app.add_subcommand("oracle", "cross-check against brute-force references");
  oracle_cmd->add_option("data", oracle_data, "optional branch data file");
  oracle_cmd->add_option("--degree", degree, "degree for random concordance samples")
      ->check(CLI::Range(2, 8));
  oracle_cmd->add_option("--samples", samples, "number of random generator sets");
  oracle_cmd->add_option("--seed", seed, "sampling seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*check) return cmd_check(check_path, base, out);
    if (*realize) return cmd_realize(realize_path, base, out_path, out, err);
    if (*factorize) return cmd_factorize(factor_path, base, all, limit, out, err);
    if (*verify_cmd) return cmd_verify(rep_path, verify_data, out, err);
    if (*oracle_cmd) {
      if (oracle_data.empty() && samples == 0) samples = 100;
      return cmd_oracle(oracle_data, degree, samples, seed, out);
    }
  } catch (const std::invalid_argument&) {
    return kNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kBadInput;
}

}  // namespace branchcov::cli

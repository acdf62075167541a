#include "branchcov/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "branchcov/error.hpp"

namespace branchcov {

Partition::Partition(std::vector<std::uint32_t> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(Errc::InvalidPartition, "partition has no components");
  std::uint64_t sum = 0;
  for (auto c : components_) {
    if (c == 0) throw Error(Errc::InvalidPartition, "partition component must be positive");
    sum += c;
  }
  if (sum > UINT32_MAX) throw Error(Errc::InvalidPartition, "partition total too large");
  std::sort(components_.begin(), components_.end(), std::greater<>{});
  total_ = static_cast<std::uint32_t>(sum);
}

Partition Partition::trivial(std::uint32_t total) {
  return Partition(std::vector<std::uint32_t>(total, 1u));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < components_.size(); ++i) os << (i ? "," : "") << components_[i];
  os << ']';
  return os.str();
}

std::vector<Partition> partitions_of(std::uint32_t n) {
  std::vector<Partition> out;
  if (n == 0) return out;
  std::vector<std::uint32_t> current;
  std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t rest,
                                                              std::uint32_t cap) {
    if (rest == 0) {
      out.emplace_back(current);
      return;
    }
    for (std::uint32_t part = std::min(rest, cap); part >= 1; --part) {
      current.push_back(part);
      rec(rest - part, part);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

BranchData::BranchData(std::vector<Partition> partitions) : partitions_(std::move(partitions)) {
  if (partitions_.empty()) throw Error(Errc::EmptyBranchData, "branch data needs a branch point");
  degree_ = partitions_.front().total();
  for (std::size_t i = 0; i < partitions_.size(); ++i)
    if (partitions_[i].total() != degree_)
      throw Error(Errc::InconsistentData, "partition " + std::to_string(i) + " sums to " +
                                              std::to_string(partitions_[i].total()) +
                                              ", expected " + std::to_string(degree_));
}

bool BranchData::is_trivial() const noexcept {
  return std::all_of(partitions_.begin(), partitions_.end(),
                     [](const Partition& p) { return p.is_trivial(); });
}

BranchData BranchData::canonical() const {
  auto sorted = partitions_;
  std::sort(sorted.begin(), sorted.end(), std::greater<>{});
  return BranchData(std::move(sorted));
}

std::string BranchData::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < partitions_.size(); ++i)
    out += (i ? "," : "") + partitions_[i].to_string();
  return out + "}";
}

SurfaceKind::SurfaceKind(bool orientable, std::uint32_t genus)
    : orientable_(orientable), genus_(genus) {
  if (orientable && genus < 1)
    throw Error(Errc::BadInput, "orientable base needs genus >= 1");
  if (!orientable && genus < 2)
    throw Error(Errc::BadInput, "non-orientable base needs genus >= 2");
}

std::int64_t SurfaceKind::euler_char() const noexcept {
  return orientable_ ? 2 - 2 * static_cast<std::int64_t>(genus_)
                     : 2 - static_cast<std::int64_t>(genus_);
}

std::string SurfaceKind::name() const {
  return (orientable_ ? "T" : "P") + std::to_string(genus_);
}

SurfaceKind SurfaceKind::parse(const std::string& text) {
  if (text.size() < 2 || (text[0] != 'T' && text[0] != 'P'))
    throw Error(Errc::BadInput, "surface must look like T<g> or P<g>, got '" + text + "'");
  std::uint64_t genus = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9' || genus > 100000000)
      throw Error(Errc::BadInput, "bad genus in '" + text + "'");
    genus = genus * 10 + static_cast<std::uint64_t>(text[i] - '0');
  }
  return SurfaceKind(text[0] == 'T', static_cast<std::uint32_t>(genus));
}

std::uint64_t total_defect(const BranchData& data) {
  std::uint64_t sum = 0;
  for (const auto& p : data.partitions()) sum += p.defect();
  return sum;
}

bool is_admissible(const BranchData& data) { return total_defect(data) % 2 == 0; }

CoverEuler euler_char_cover(std::uint32_t degree, const SurfaceKind& base, const BranchData& data) {
  if (data.degree() != degree)
    throw Error(Errc::DegreeMismatch, "data has degree " + std::to_string(data.degree()) +
                                          ", expected " + std::to_string(degree));
  const std::int64_t chi = static_cast<std::int64_t>(degree) * base.euler_char() -
                           static_cast<std::int64_t>(total_defect(data));
  if (base.orientable()) {
    if (chi % 2 != 0)
      throw Error(Errc::InconsistentData,
                  "chi(M) = " + std::to_string(chi) + " is odd over an orientable base");
    const std::int64_t genus = (2 - chi) / 2;
    if (genus < 1)
      throw Error(Errc::InconsistentData, "cover genus " + std::to_string(genus) + " < 1");
    return {chi, SurfaceKind::torus(static_cast<std::uint32_t>(genus))};
  }
  const std::int64_t genus = 2 - chi;
  if (genus < 2)
    throw Error(Errc::InconsistentData, "cover genus " + std::to_string(genus) + " < 2");
  return {chi, SurfaceKind::projective(static_cast<std::uint32_t>(genus))};
}

Partition product_partition(const Partition& outer, std::span<const Partition> ws) {
  if (ws.size() != outer.length())
    throw Error(Errc::ShapeMismatch, "expected " + std::to_string(outer.length()) +
                                         " inner partitions, got " + std::to_string(ws.size()));
  std::vector<std::uint32_t> comps;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (ws[i].total() != ws[0].total())
      throw Error(Errc::ShapeMismatch, "inner partitions have different totals");
    for (auto c : ws[i].components()) comps.push_back(c * outer[i]);
  }
  return Partition(std::move(comps));
}

}  // namespace branchcov

#include "branchcov/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "branchcov/error.hpp"
#include "branchcov/partition.hpp"

namespace branchcov {

Permutation Permutation::identity(std::size_t degree) {
  if (degree == 0) throw Error(Errc::BadInput, "degree must be positive");
  std::vector<std::uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  return Permutation(std::move(img));
}

Permutation Permutation::from_images(std::span<const Point> images) {
  const std::size_t n = images.size();
  if (n == 0) throw Error(Errc::MalformedImages, "empty image array");
  std::vector<std::uint32_t> img(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Point y = images[i];
    if (y < 1 || y > n)
      throw Error(Errc::MalformedImages, "image " + std::to_string(y) + " out of range 1.." +
                                             std::to_string(n));
    if (seen[y - 1]) throw Error(Errc::MalformedImages, "image " + std::to_string(y) + " repeated");
    seen[y - 1] = true;
    img[i] = y - 1;
  }
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycle_list) {
  if (degree == 0) throw Error(Errc::BadInput, "degree must be positive");
  std::vector<std::uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycle_list) {
    for (Point x : cyc) {
      if (x < 1 || x > degree)
        throw Error(Errc::MalformedCycles, "point " + std::to_string(x) + " out of range");
      if (used[x - 1]) throw Error(Errc::MalformedCycles, "point " + std::to_string(x) + " repeated");
      used[x - 1] = true;
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) img[cyc[i] - 1] = cyc[(i + 1) % cyc.size()] - 1;
  }
  return Permutation(std::move(img));
}

Point Permutation::apply(Point x) const {
  if (x < 1 || x > degree())
    throw Error(Errc::PointOutOfRange, "point " + std::to_string(x) + " not in 1.." +
                                           std::to_string(degree()));
  return image_[x - 1] + 1;
}

std::vector<Point> Permutation::images() const {
  std::vector<Point> out(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) out[i] = image_[i] + 1;
  return out;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw Error(Errc::DegreeMismatch,
                std::to_string(p.degree()) + " vs " + std::to_string(q.degree()));
  std::vector<std::uint32_t> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = q.image_[p.image_[i]];
  return Permutation(std::move(img));
}

Permutation inverse(const Permutation& p) {
  std::vector<std::uint32_t> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[p.image_[i]] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(img));
}

Permutation conjugate(const Permutation& p, const Permutation& s) {
  return compose(compose(s, p), inverse(s));
}

Permutation commutator(const Permutation& a, const Permutation& b) {
  return compose(compose(compose(a, b), inverse(a)), inverse(b));
}

Permutation power(const Permutation& p, long long exponent) {
  Permutation base = exponent < 0 ? inverse(p) : p;
  unsigned long long e = exponent < 0 ? 0ull - static_cast<unsigned long long>(exponent)
                                      : static_cast<unsigned long long>(exponent);
  Permutation result = Permutation::identity(p.degree());
  while (e > 0) {
    if (e & 1u) result = compose(result, base);
    base = compose(base, base);
    e >>= 1u;
  }
  return result;
}

CycleDecomposition cycles(const Permutation& p) {
  const std::size_t n = p.degree();
  CycleDecomposition out{n, {}};
  std::vector<bool> seen(n, false);
  // Scanning from the least unseen point yields cycles already rotated to
  // their minimum and ordered by minimum.
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<Point> cyc;
    for (std::size_t x = start; !seen[x]; x = p.image0(x)) {
      seen[x] = true;
      cyc.push_back(static_cast<Point>(x + 1));
    }
    out.cycles.push_back(std::move(cyc));
  }
  std::stable_sort(out.cycles.begin(), out.cycles.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

Partition cycle_type(const Permutation& p) {
  std::vector<std::uint32_t> lengths;
  for (const auto& c : cycles(p).cycles) lengths.push_back(static_cast<std::uint32_t>(c.size()));
  return Partition(std::move(lengths));
}

std::size_t defect(const Permutation& p) {
  const std::size_t n = p.degree();
  std::vector<bool> seen(n, false);
  std::size_t count = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    ++count;
    for (std::size_t x = start; !seen[x]; x = p.image0(x)) seen[x] = true;
  }
  return n - count;
}

unsigned parity(const Permutation& p) { return static_cast<unsigned>(defect(p) % 2); }

std::vector<Point> support(const Permutation& p) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < p.degree(); ++i)
    if (p.image0(i) != i) out.push_back(static_cast<Point>(i + 1));
  return out;
}

std::vector<Point> fixed_points(const Permutation& p) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < p.degree(); ++i)
    if (p.image0(i) == i) out.push_back(static_cast<Point>(i + 1));
  return out;
}

Permutation find_conjugator(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw Error(Errc::DegreeMismatch,
                std::to_string(p.degree()) + " vs " + std::to_string(q.degree()));
  const auto cp = cycles(p);
  const auto cq = cycles(q);
  if (cycle_type(p) != cycle_type(q))
    throw Error(Errc::NotConjugate, cycle_type(p).to_string() + " vs " + cycle_type(q).to_string());
  // s p s^-1 carries a cycle (c_1 ... c_k) of p to (c_1^{s^-1} ... c_k^{s^-1}),
  // so aligning canonical forms requires s(q_j) = p_j.
  std::vector<Point> img(p.degree());
  for (std::size_t c = 0; c < cp.cycles.size(); ++c)
    for (std::size_t j = 0; j < cp.cycles[c].size(); ++j)
      img[cq.cycles[c][j] - 1] = cp.cycles[c][j];
  return Permutation::from_images(img);
}

std::string to_cycle_string(const Permutation& p) {
  std::ostringstream os;
  std::vector<bool> seen(p.degree(), false);
  bool any = false;
  for (std::size_t start = 0; start < p.degree(); ++start) {
    if (seen[start] || p.image0(start) == start) continue;
    any = true;
    os << '(';
    bool first = true;
    for (std::size_t x = start; !seen[x]; x = p.image0(x)) {
      seen[x] = true;
      if (!first) os << ' ';
      os << x + 1;
      first = false;
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

}  // namespace branchcov

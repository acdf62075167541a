#include "branchcov/io.hpp"

#include <cctype>

#include "branchcov/error.hpp"

namespace branchcov::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(Errc::ParseError, "field '" + path + "': " + what);
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                      ": malformed JSON");
  }
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::uint32_t positive(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  const auto n = v.get<std::int64_t>();
  if (n < 1 || n > 1'000'000) fail(path, "expected an integer in 1..1000000");
  return static_cast<std::uint32_t>(n);
}

const json& array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

SurfaceKind parse_surface(const json& v, const std::string& path) {
  const json& orient = member(v, "orientable", path);
  if (!orient.is_boolean()) fail(join(path, "orientable"), "expected true or false");
  const std::uint32_t genus = positive(member(v, "genus", path), join(path, "genus"));
  try {
    return SurfaceKind(orient.get<bool>(), genus);
  } catch (const Error& e) {
    fail(join(path, "genus"), e.what());
  }
}

Permutation parse_images(const json& v, std::size_t degree, const std::string& path) {
  array(v, path);
  if (v.size() != degree)
    fail(path, "expected " + std::to_string(degree) + " images, got " + std::to_string(v.size()));
  std::vector<Point> img;
  for (std::size_t i = 0; i < v.size(); ++i) img.push_back(positive(v[i], index(path, i)));
  try {
    return Permutation::from_images(img);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

json images_json(const Permutation& p) { return p.images(); }

}  // namespace

BranchDataFile parse_branch_data(const std::string& text) {
  const json root = parse_text(text);
  const std::uint32_t degree = positive(member(root, "degree", ""), "degree");
  const SurfaceKind surface = parse_surface(member(root, "surface", ""), "surface");
  const json& parts = array(member(root, "partitions", ""), "partitions");
  if (parts.empty()) fail("partitions", "branch data needs at least one partition");
  std::vector<Partition> partitions;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string path = index("partitions", i);
    const json& comps = array(parts[i], path);
    if (comps.empty()) fail(path, "empty partition");
    std::vector<std::uint32_t> values;
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      values.push_back(positive(comps[k], index(path, k)));
      sum += values.back();
    }
    if (sum != degree)
      fail(path, "components sum to " + std::to_string(sum) + ", degree is " + std::to_string(degree));
    partitions.emplace_back(std::move(values));
  }
  return {BranchData(std::move(partitions)), surface};
}

RepresentationFile parse_representation(const std::string& text) {
  const json root = parse_text(text);
  const std::uint32_t degree = positive(member(root, "degree", ""), "degree");
  const SurfaceKind surface = parse_surface(member(root, "surface", ""), "surface");
  MonodromyRepresentation rep{degree, surface, {}, {}};

  const json& branch = array(member(root, "branch_images", ""), "branch_images");
  if (branch.empty()) fail("branch_images", "needs at least one branch image");
  for (std::size_t i = 0; i < branch.size(); ++i)
    rep.branch_images.push_back(parse_images(branch[i], degree, index("branch_images", i)));

  const json& handles = array(member(root, "handle_images", ""), "handle_images");
  if (handles.size() != surface.genus())
    fail("handle_images", "expected " + std::to_string(surface.genus()) + " handles for " + surface.name() +
                              ", got " + std::to_string(handles.size()));
  for (std::size_t i = 0; i < handles.size(); ++i) {
    const std::string path = index("handle_images", i);
    Handle h{parse_images(member(handles[i], "a", path), degree, join(path, "a")), std::nullopt};
    const bool has_b = handles[i].contains("b");
    if (surface.orientable() && !has_b) fail(join(path, "b"), "missing");
    if (!surface.orientable() && has_b) fail(join(path, "b"), "not allowed over a non-orientable base");
    if (has_b) h.b = parse_images(handles[i]["b"], degree, join(path, "b"));
    rep.handles.push_back(std::move(h));
  }

  RepresentationMetadata meta;
  if (root.contains("metadata")) {
    const json& m = root["metadata"];
    if (!m.is_object()) fail("metadata", "expected an object");
    if (m.contains("primitive")) {
      if (!m["primitive"].is_boolean()) fail("metadata.primitive", "expected true or false");
      meta.primitive = m["primitive"].get<bool>();
    }
    if (m.contains("euler_char_cover")) {
      if (!m["euler_char_cover"].is_number_integer()) fail("metadata.euler_char_cover", "expected an integer");
      meta.euler_char_cover = m["euler_char_cover"].get<std::int64_t>();
    }
    if (m.contains("tool_version")) {
      if (!m["tool_version"].is_string()) fail("metadata.tool_version", "expected a string");
      meta.tool_version = m["tool_version"].get<std::string>();
    }
  }
  return {std::move(rep), meta};
}

json to_json(const SurfaceKind& surface) {
  return {{"orientable", surface.orientable()}, {"genus", surface.genus()}};
}

json to_json(const Partition& partition) { return partition.components(); }

json to_json(const BranchDataFile& file) {
  json parts = json::array();
  for (const auto& p : file.data.partitions()) parts.push_back(to_json(p));
  return {{"degree", file.data.degree()}, {"surface", to_json(file.surface)}, {"partitions", parts}};
}

json to_json(const RepresentationFile& file) {
  const auto& rep = file.representation;
  json branch = json::array(), branch_cycles = json::array(), handles = json::array();
  for (const auto& p : rep.branch_images) {
    branch.push_back(images_json(p));
    branch_cycles.push_back(to_cycle_string(p));
  }
  for (const auto& h : rep.handles) {
    json entry{{"a", images_json(h.a)}, {"a_cycles", to_cycle_string(h.a)}};
    if (h.b) {
      entry["b"] = images_json(*h.b);
      entry["b_cycles"] = to_cycle_string(*h.b);
    }
    handles.push_back(std::move(entry));
  }
  json meta = json::object();
  if (file.metadata.primitive) meta["primitive"] = *file.metadata.primitive;
  if (file.metadata.euler_char_cover) meta["euler_char_cover"] = *file.metadata.euler_char_cover;
  if (file.metadata.tool_version) meta["tool_version"] = *file.metadata.tool_version;
  return {{"degree", rep.degree},          {"surface", to_json(rep.base)},
          {"branch_images", branch},       {"branch_cycles", branch_cycles},
          {"handle_images", handles},      {"metadata", meta}};
}

json to_json(const PrimitivityCertificate& cert) {
  json out{{"verdict", to_string(cert.verdict)}};
  if (cert.blocks) out["blocks"] = cert.blocks->blocks;
  if (cert.orbit) out["orbit"] = *cert.orbit;
  return out;
}

json to_json(const VerificationReport& report) {
  json types = json::array();
  for (const auto& p : report.cycle_types) types.push_back(to_json(p));
  json out{{"relator_ok", report.relator_ok},
           {"cycle_types_ok", report.cycle_types_ok},
           {"cycle_types", types},
           {"transitive", report.transitive},
           {"primitivity", to_json(report.primitivity)},
           {"overall_ok", report.overall_ok()},
           {"failures", report.failures}};
  out["long_cycle_shortcut"] = report.long_cycle_shortcut ? json(*report.long_cycle_shortcut) : json(nullptr);
  if (report.cover) {
    out["euler_char_cover"] = report.cover->euler_char;
    out["cover"] = to_json(report.cover->cover);
    out["cover_name"] = report.cover->cover.name();
  } else {
    out["euler_char_cover"] = nullptr;
    out["cover"] = nullptr;
  }
  return out;
}

json to_json(const DecompositionWitness& witness) {
  json first = json::array(), second = json::array(), points = json::array();
  for (const auto& p : witness.first_factor.partitions()) first.push_back(to_json(p));
  for (const auto& p : witness.second_factor) second.push_back(to_json(p));
  for (const auto& f : witness.per_point) {
    json inner = json::array();
    for (const auto& p : f.inner) inner.push_back(to_json(p));
    points.push_back({{"outer", to_json(f.outer)}, {"inner", inner}, {"assignment", f.assignment}});
  }
  return {{"u", witness.u},
          {"w", witness.w},
          {"first_factor", first},
          {"second_factor", second},
          {"second_factor_trivial", witness.second_factor_trivial},
          {"per_point", points},
          {"intermediate_cover",
           {{"euler_char", witness.intermediate.euler_char},
            {"surface", to_json(witness.intermediate.cover)},
            {"name", witness.intermediate.cover.name()}}}};
}

RepresentationFile representation_file(const RealizedData& realized) {
  RepresentationMetadata meta;
  meta.primitive = realized.report.primitivity.primitive();
  if (realized.report.cover) meta.euler_char_cover = realized.report.cover->euler_char;
  meta.tool_version = kToolVersion;
  return {realized.representation, meta};
}

std::string dump(const json& value) { return value.dump(2) + "\n"; }

Permutation parse_cycles(std::size_t degree, const std::string& text) {
  std::vector<std::vector<Point>> cycs;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw Error(Errc::ParseError, "expected '(' at offset " + std::to_string(i));
    ++i;
    std::vector<Point> cyc;
    for (;;) {
      skip();
      if (i >= text.size()) throw Error(Errc::ParseError, "unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error(Errc::ParseError, "unexpected character at offset " + std::to_string(i));
      std::uint64_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (value > UINT32_MAX) throw Error(Errc::ParseError, "point too large");
        ++i;
      }
      cyc.push_back(static_cast<Point>(value));
    }
    if (!cyc.empty()) cycs.push_back(std::move(cyc));
    skip();
  }
  return Permutation::from_cycles(degree, cycs);
}

}  // namespace branchcov::io

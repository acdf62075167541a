#pragma once

// File formats and report serialization for the command-line tool.
//
// Branch data file:
//   {"degree": 9, "surface": {"orientable": true, "genus": 1},
//    "partitions": [[3,2,2,2],[3,2,2,2]]}
//
// Representation file: permutations are 1-indexed image arrays; the
// "*_cycles" strings are an echo for humans and ignored on input.
//   {"degree": 9, "surface": {...},
//    "branch_images": [[...], ...], "branch_cycles": ["(1 2 3)(4 5)", ...],
//    "handle_images": [{"a": [...], "b": [...]}, ...],
//    "metadata": {"primitive": true, "euler_char_cover": -10, "tool_version": "..."}}
//
// Objects are written with sorted keys and two-space indentation, so equal
// inputs give byte-identical output.

#include <optional>
#include <string>

#include <json.hpp>

#include "branchcov/decompose.hpp"
#include "branchcov/partition.hpp"
#include "branchcov/permgroup.hpp"
#include "branchcov/realize.hpp"

namespace branchcov::io {

inline constexpr const char* kToolVersion = "0.1.0";

struct BranchDataFile {
  BranchData data;
  SurfaceKind surface;
};

struct RepresentationMetadata {
  std::optional<bool> primitive;
  std::optional<std::int64_t> euler_char_cover;
  std::optional<std::string> tool_version;
};

struct RepresentationFile {
  MonodromyRepresentation representation;
  RepresentationMetadata metadata;
};

/// Throws Error(ParseError) with a line/column or field-path diagnostic.
BranchDataFile parse_branch_data(const std::string& text);
RepresentationFile parse_representation(const std::string& text);

nlohmann::json to_json(const BranchDataFile& file);
nlohmann::json to_json(const RepresentationFile& file);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const PrimitivityCertificate& cert);
nlohmann::json to_json(const DecompositionWitness& witness);
nlohmann::json to_json(const SurfaceKind& surface);
nlohmann::json to_json(const Partition& partition);

/// Builds the file for a freshly realized representation.
RepresentationFile representation_file(const RealizedData& realized);

/// Pretty-printed with a trailing newline.
std::string dump(const nlohmann::json& value);

/// "(1 2 3)(4 5)" in the given degree; "()" or "" is the identity.
/// Throws Error(ParseError) or MalformedCycles.
Permutation parse_cycles(std::size_t degree, const std::string& text);

}  // namespace branchcov::io

#pragma once

#include "permbal/arith.hpp"
#include "permbal/error.hpp"
#include "permbal/permutation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace permbal {

// One discovered permutation, one JSON object per line of the registry.
struct WitnessRecord {
  int n = 0;
  int k = 0;
  BigInt scaled_delta;
  Permutation perm;
  std::string method;
  std::optional<std::uint64_t> seed;
  std::string created_at;  // UTC, ISO 8601
};

std::string current_utc_timestamp();

// A record with its distance computed from the permutation itself.
WitnessRecord make_witness(const Permutation& perm, int k, std::string method, std::optional<std::uint64_t> seed);

std::string to_json_line(const WitnessRecord& r);
// Throws Error(ParseError) on malformed lines.
WitnessRecord parse_json_line(std::string_view line);

// PERMBAL_REGISTRY when set, otherwise permbal_registry.jsonl in the working
// directory.
std::string default_registry_path();

// Appends under an exclusive advisory lock. Throws Error(ParseError) when the
// file cannot be opened for writing.
void append_witnesses(const std::string& path, const std::vector<WitnessRecord>& records);

struct RegistryIssue {
  std::size_t line = 0;  // 1-based
  ErrorCode code = ErrorCode::ParseError;
  std::string message;
};

struct RegistryScan {
  std::vector<WitnessRecord> records;
  std::vector<RegistryIssue> issues;
};

// Reads every line and recomputes each record's distance. Malformed lines and
// mismatches are collected with their line numbers. A missing file is empty.
RegistryScan scan_registry(const std::string& path);

}  // namespace permbal

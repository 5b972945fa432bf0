#include "permbal/registry.hpp"

#include "permbal/algebra.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace permbal {

namespace {

// Holds an flock on a file descriptor for the lifetime of the object.
class LockedFile {
 public:
  LockedFile(const std::string& path, int flags, int lock) : fd_(::open(path.c_str(), flags, 0644)) {
    if (fd_ >= 0 && ::flock(fd_, lock) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~LockedFile() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  LockedFile(const LockedFile&) = delete;
  LockedFile& operator=(const LockedFile&) = delete;

  int fd() const { return fd_; }

 private:
  int fd_;
};

}  // namespace

std::string current_utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

WitnessRecord make_witness(const Permutation& perm, int k, std::string method, std::optional<std::uint64_t> seed) {
  WitnessRecord r;
  r.n = perm.size();
  r.k = k;
  r.scaled_delta = delta_scaled(perm, k);
  r.perm = perm;
  r.method = std::move(method);
  r.seed = seed;
  r.created_at = current_utc_timestamp();
  return r;
}

std::string to_json_line(const WitnessRecord& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["scaled_delta"] = to_string(r.scaled_delta);
  j["perm"] = format_one_line(r.perm);
  j["method"] = r.method;
  j["seed"] = r.seed ? nlohmann::ordered_json(std::to_string(*r.seed)) : nlohmann::ordered_json(nullptr);
  j["created_at"] = r.created_at;
  return j.dump();
}

WitnessRecord parse_json_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("not JSON: ") + e.what());
  }
  try {
    WitnessRecord r;
    r.n = j.at("n").get<int>();
    r.k = j.at("k").get<int>();
    r.scaled_delta = parse_bigint(j.at("scaled_delta").get<std::string>());
    r.perm = parse_permutation(j.at("perm").get<std::string>());
    r.method = j.at("method").get<std::string>();
    if (j.contains("seed") && !j.at("seed").is_null()) r.seed = std::stoull(j.at("seed").get<std::string>());
    r.created_at = j.value("created_at", "");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad field: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(ErrorCode::ParseError, std::string("bad seed: ") + e.what());
  }
}

std::string default_registry_path() {
  if (const char* env = std::getenv("PERMBAL_REGISTRY"); env != nullptr && *env != '\0') return env;
  return "permbal_registry.jsonl";
}

void append_witnesses(const std::string& path, const std::vector<WitnessRecord>& records) {
  LockedFile file(path, O_WRONLY | O_CREAT | O_APPEND, LOCK_EX);
  if (file.fd() < 0) throw Error(ErrorCode::ParseError, "cannot open registry " + path + " for writing");
  std::string text;
  for (const auto& r : records) text += to_json_line(r) + "\n";
  std::size_t done = 0;
  while (done < text.size()) {
    const ssize_t w = ::write(file.fd(), text.data() + done, text.size() - done);
    if (w < 0) throw Error(ErrorCode::ParseError, "write to registry " + path + " failed");
    done += static_cast<std::size_t>(w);
  }
}

RegistryScan scan_registry(const std::string& path) {
  RegistryScan scan;
  LockedFile lock(path, O_RDONLY, LOCK_SH);
  if (lock.fd() < 0) return scan;
  std::ifstream in(path);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) {
      scan.issues.push_back({number, ErrorCode::ParseError, "empty line"});
      continue;
    }
    try {
      auto r = parse_json_line(line);
      if (r.perm.size() != r.n) {
        scan.issues.push_back({number, ErrorCode::VerificationFailed, "n does not match the permutation"});
        continue;
      }
      const BigInt actual = delta_scaled(r.perm, r.k);
      if (actual != r.scaled_delta) {
        scan.issues.push_back({number, ErrorCode::VerificationFailed,
                               "scaled_delta " + to_string(r.scaled_delta) + " but the permutation gives " +
                                   to_string(actual)});
        continue;
      }
      scan.records.push_back(std::move(r));
    } catch (const Error& e) {
      scan.issues.push_back({number, e.code(), e.what()});
    }
  }
  return scan;
}

}  // namespace permbal

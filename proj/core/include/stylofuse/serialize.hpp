#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "stylofuse/errors.hpp"

namespace stylofuse {

/// One versioned, checksummed binary container backs every model file. The
/// layout is: 8-byte magic, format version (u32), a `kind` string naming the
/// payload, the entries sorted by key, and a trailing 64-bit checksum over
/// everything after the version field. Writing the same entries always
/// produces the same bytes.
inline constexpr std::uint32_t kContainerFormatVersion = 1;

struct Tensor {
  std::vector<std::uint64_t> shape;  // row-major
  std::vector<double> data;
};

using ContainerValue = std::variant<std::int64_t, double, std::string, Tensor,
                                    std::vector<std::string>>;

class Container {
 public:
  explicit Container(std::string kind) : kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

  void put_int(const std::string& key, std::int64_t value);
  void put_real(const std::string& key, double value);
  void put_string(const std::string& key, std::string value);
  void put_tensor(const std::string& key, const Eigen::MatrixXd& value);
  void put_vector(const std::string& key, const Eigen::VectorXd& value);
  void put_strings(const std::string& key, std::vector<std::string> value);

  bool has(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  double get_real(const std::string& key) const;
  const std::string& get_string(const std::string& key) const;
  /// Requires a rank-2 tensor (possibly 0 x 0).
  Eigen::MatrixXd get_matrix(const std::string& key) const;
  /// Requires a rank-1 tensor.
  Eigen::VectorXd get_vector(const std::string& key) const;
  const std::vector<std::string>& get_strings(const std::string& key) const;

  /// Serializes to bytes and writes atomically enough for our purposes:
  /// failures throw IoError and leave no usable file behind.
  void save(const std::filesystem::path& path) const;

  /// Parses and verifies a container. Throws CorruptFile on bad magic,
  /// truncation, or checksum mismatch; VersionMismatch when the format
  /// version differs from kContainerFormatVersion; MalformedFile when the
  /// stored kind is not `expected_kind`.
  static Container load(const std::filesystem::path& path,
                        const std::string& expected_kind);

  std::vector<std::uint8_t> to_bytes() const;
  static Container from_bytes(const std::vector<std::uint8_t>& bytes,
                              const std::string& expected_kind);

 private:
  const ContainerValue& entry(const std::string& key, const char* want) const;

  std::string kind_;
  std::map<std::string, ContainerValue> entries_;
};

}  // namespace stylofuse

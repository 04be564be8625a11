#ifndef SPINSIM_SERIALIZE_HPP_
#define SPINSIM_SERIALIZE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinsim/harness.hpp"

namespace spinsim {

enum class Format { Json, Csv };

const char* to_string(Format f);
Format parse_format(const std::string& s);

inline constexpr int kSchemaVersion = 1;

struct ExactRecord {
  Mode mode;
  double theta_a;
  double theta_b;
  double correlation;
  std::uint64_t seed;
};

struct MatrixRecord {
  Mode mode;
  double theta_a;
  double theta_b;
  Eigen::Matrix2d single;
  /// Present in bipartite mode only.
  std::optional<Eigen::Matrix2d> singlet;
  std::uint64_t seed;
};

struct SampleRow {
  double theta;
  CorrelationEstimate estimate;
  double p_plus;
  double p_minus;
};

struct SampleRecord {
  Mode mode;
  std::size_t n;
  std::uint64_t seed;
  std::vector<SampleRow> rows;
};

/// JSON documents carry snake_case keys plus "schema_version". CSV output
/// is a header line followed by data lines, floats printed with 17
/// significant digits and an empty field for undefined values.
std::string serialize(const ExactRecord& r, Format f);
std::string serialize(const MatrixRecord& r, Format f);
std::string serialize(const SampleRecord& r, Format f);
std::string serialize(const SweepReport& r, Format f);
std::string serialize(const ChshResult& r, Format f);
std::string serialize(const KsResult& r, Format f);

/// %.17g formatting used by the CSV writer.
std::string format_double(double x);

/// Writes bytes to a sibling temporary file and renames it over path, so
/// a failed write leaves no partial output. Throws std::runtime_error.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);

}  // namespace spinsim

#endif  // SPINSIM_SERIALIZE_HPP_

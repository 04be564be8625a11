#include "spinsim/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace spinsim {

namespace {

using Json = nlohmann::ordered_json;

Json header(const char* command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json matrix_json(const Eigen::Matrix2d& m) {
  return Json::array({Json::array({m(0, 0), m(0, 1)}), Json::array({m(1, 0), m(1, 1)})});
}

Json optional_number(const std::optional<double>& x) {
  return x ? Json(*x) : Json(nullptr);
}

// Minimal CSV row builder.
class CsvLine {
 public:
  CsvLine& operator<<(double x) { return field(format_double(x)); }
  CsvLine& operator<<(const std::optional<double>& x) { return field(x ? format_double(*x) : ""); }
  CsvLine& operator<<(std::uint64_t x) { return field(std::to_string(x)); }
  CsvLine& operator<<(bool b) { return field(b ? "true" : "false"); }
  CsvLine& operator<<(const char* s) { return field(s); }
  std::string str() const { return out_ + "\n"; }

 private:
  CsvLine& field(const std::string& s) {
    if (!first_) out_ += ',';
    out_ += s;
    first_ = false;
    return *this;
  }
  std::string out_;
  bool first_ = true;
};

std::uint64_t u64(std::size_t n) { return static_cast<std::uint64_t>(n); }

}  // namespace

const char* to_string(Format f) { return f == Format::Json ? "json" : "csv"; }

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw std::invalid_argument("unknown format '" + s + "'");
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string serialize(const ExactRecord& r, Format f) {
  if (f == Format::Csv) {
    return "mode,theta_a,theta_b,correlation,seed\n" +
           (CsvLine() << to_string(r.mode) << r.theta_a << r.theta_b << r.correlation << r.seed).str();
  }
  Json j = header("exact");
  j["mode"] = to_string(r.mode);
  j["seed"] = r.seed;
  j["theta_a"] = r.theta_a;
  j["theta_b"] = r.theta_b;
  j["correlation"] = r.correlation;
  return dump(j);
}

std::string serialize(const MatrixRecord& r, Format f) {
  if (f == Format::Csv) {
    std::string out = r.singlet ? "given_a,single_p_plus,single_p_minus,singlet_p_plus,singlet_p_minus\n"
                                : "given_a,p_plus,p_minus\n";
    for (int i = 0; i < 2; ++i) {
      CsvLine line;
      line << (i == 0 ? "+" : "-") << r.single(i, 0) << r.single(i, 1);
      if (r.singlet) line << (*r.singlet)(i, 0) << (*r.singlet)(i, 1);
      out += line.str();
    }
    return out;
  }
  Json j = header("matrix");
  j["mode"] = to_string(r.mode);
  j["seed"] = r.seed;
  j["theta_a"] = r.theta_a;
  j["theta_b"] = r.theta_b;
  j["single"] = matrix_json(r.single);
  if (r.singlet) j["singlet"] = matrix_json(*r.singlet);
  return dump(j);
}

std::string serialize(const SampleRecord& r, Format f) {
  if (f == Format::Csv) {
    std::string out = "theta,mean,std_error,n,seed,p_plus,p_minus\n";
    for (const auto& row : r.rows) {
      out += (CsvLine() << row.theta << row.estimate.mean << row.estimate.std_error
                        << u64(row.estimate.n) << row.estimate.seed << row.p_plus << row.p_minus)
                 .str();
    }
    return out;
  }
  Json j = header("sample");
  j["mode"] = to_string(r.mode);
  j["n"] = r.n;
  j["seed"] = r.seed;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json e;
    e["theta"] = row.theta;
    e["mean"] = row.estimate.mean;
    e["std_error"] = row.estimate.std_error;
    e["n"] = row.estimate.n;
    e["seed"] = row.estimate.seed;
    e["p_plus"] = row.p_plus;
    e["p_minus"] = row.p_minus;
    rows.push_back(std::move(e));
  }
  j["estimates"] = std::move(rows);
  return dump(j);
}

std::string serialize(const SweepReport& r, Format f) {
  if (f == Format::Csv) {
    std::string out = "theta,exact,sampled_mean,std_error,z_score\n";
    for (const auto& row : r.rows) {
      out += (CsvLine() << row.theta << row.exact << row.sampled_mean << row.std_error << row.z_score).str();
    }
    return out;
  }
  Json j = header("sweep");
  j["mode"] = to_string(r.mode);
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["grid_size"] = r.rows.size();
  j["max_abs_z"] = r.max_abs_z();
  j["flagged"] = r.flagged();
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json e;
    e["theta"] = row.theta;
    e["exact"] = row.exact;
    e["sampled_mean"] = row.sampled_mean;
    e["std_error"] = row.std_error;
    e["z_score"] = optional_number(row.z_score);
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  return dump(j);
}

std::string serialize(const ChshResult& r, Format f) {
  if (f == Format::Csv) {
    return "engine,a,a_prime,b,b_prime,e_ab,e_ab_prime,e_a_prime_b,e_a_prime_b_prime,"
           "s_value,s_std_error,n,seed,shared_stream\n" +
           (CsvLine() << to_string(r.engine) << r.angles.a << r.angles.a_prime << r.angles.b
                      << r.angles.b_prime << r.correlations[0] << r.correlations[1]
                      << r.correlations[2] << r.correlations[3] << r.s_value << r.s_std_error
                      << u64(r.n) << r.seed << r.shared_stream)
               .str();
  }
  Json j = header("chsh");
  j["engine"] = to_string(r.engine);
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["shared_stream"] = r.shared_stream;
  j["angles"] = {{"a", r.angles.a}, {"a_prime", r.angles.a_prime}, {"b", r.angles.b},
                 {"b_prime", r.angles.b_prime}};
  j["correlations"] = Json::array({r.correlations[0], r.correlations[1], r.correlations[2],
                                   r.correlations[3]});
  j["std_errors"] = Json::array({r.std_errors[0], r.std_errors[1], r.std_errors[2], r.std_errors[3]});
  j["s_value"] = r.s_value;
  j["s_std_error"] = r.s_std_error;
  return dump(j);
}

std::string serialize(const KsResult& r, Format f) {
  if (f == Format::Csv) {
    return "statistic,critical_001,pass,n,seed\n" +
           (CsvLine() << r.statistic << r.critical_001 << r.pass << u64(r.n) << r.seed).str();
  }
  Json j = header("kstest");
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["statistic"] = r.statistic;
  j["critical_001"] = r.critical_001;
  j["pass"] = r.pass;
  return dump(j);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output path '" + path.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed writing '" + path.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace spinsim

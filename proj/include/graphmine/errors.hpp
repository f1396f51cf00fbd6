#pragma once

#include <stdexcept>
#include <string>

namespace graphmine {

// Error taxonomy. The CLI maps kinds to exit codes: Config -> 2, Data -> 3,
// Runtime -> 4. Every error carries a stable code string for the
// machine-readable error record.
enum class ErrorKind { Config, Data, Runtime };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& msg)
      : std::runtime_error(msg), kind_(kind), code_(std::move(code)) {}
  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

// ---- data ingestion ----

struct MissingColumn : Error {
  explicit MissingColumn(const std::string& name)
      : Error(ErrorKind::Data, "MissingColumn", "column not found: " + name),
        column(name) {}
  std::string column;
};

struct ParseError : Error {
  ParseError(long row_, const std::string& column_, const std::string& what_)
      : Error(ErrorKind::Data, "ParseError",
              "row " + std::to_string(row_) + ", column " + column_ + ": " + what_),
        row(row_), column(column_) {}
  long row;            // 1-based data row (header not counted)
  std::string column;
};

struct EmptyDataset : Error {
  EmptyDataset() : Error(ErrorKind::Data, "EmptyDataset", "no data rows") {}
};

struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& why)
      : Error(ErrorKind::Data, "InvalidSpec", "invalid synthetic spec: " + why) {}
};

struct SingleClassError : Error {
  SingleClassError()
      : Error(ErrorKind::Data, "SingleClassError",
              "dataset contains a single class; both classes are required") {}
};

struct IoError : Error {
  explicit IoError(const std::string& path)
      : Error(ErrorKind::Data, "IoError", "cannot open: " + path), path(path) {}
  std::string path;
};

// ---- graph construction ----

struct NonPositiveSigma : Error {
  explicit NonPositiveSigma(double sigma)
      : Error(ErrorKind::Runtime, "NonPositiveSigma",
              "bandwidth must be > 0, got " + std::to_string(sigma)) {}
};

struct DegenerateData : Error {
  DegenerateData()
      : Error(ErrorKind::Runtime, "DegenerateData",
              "all pairwise distances are zero") {}
};

struct InvalidK : Error {
  InvalidK(int k, long n)
      : Error(ErrorKind::Runtime, "InvalidK",
              "k=" + std::to_string(k) + " outside [1, N-1] for N=" + std::to_string(n)) {}
};

struct InvalidBins : Error {
  explicit InvalidBins(int bins)
      : Error(ErrorKind::Runtime, "InvalidBins",
              "bin count must be >= 2, got " + std::to_string(bins)) {}
};

struct ZeroNeighborhood : Error {
  explicit ZeroNeighborhood(long node)
      : Error(ErrorKind::Runtime, "ZeroNeighborhood",
              "node " + std::to_string(node) + " has non-positive neighborhood weight") {}
};

// ---- model / training ----

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what_)
      : Error(ErrorKind::Runtime, "DimensionMismatch", what_) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& what_)
      : Error(ErrorKind::Runtime, "LengthMismatch", what_) {}
};

struct NonFiniteLoss : Error {
  explicit NonFiniteLoss(int epoch_)
      : Error(ErrorKind::Runtime, "NonFiniteLoss",
              "loss became non-finite at epoch " + std::to_string(epoch_)),
        epoch(epoch_) {}
  int epoch;
};

// ---- mining ----

struct EmptyScope : Error {
  EmptyScope()
      : Error(ErrorKind::Runtime, "EmptyScope", "mining scope has no transactions") {}
};

struct OracleTooLarge : Error {
  explicit OracleTooLarge(int n_items)
      : Error(ErrorKind::Runtime, "OracleTooLarge",
              "oracle limited to 20 items, got " + std::to_string(n_items)) {}
};

struct UndefinedConfidence : Error {
  UndefinedConfidence()
      : Error(ErrorKind::Runtime, "UndefinedConfidence",
              "pattern occurs in no transaction") {}
};

struct NoMinority : Error {
  NoMinority()
      : Error(ErrorKind::Runtime, "NoMinority", "no minority transactions") {}
};

// ---- pca ----

struct RankRequestTooLarge : Error {
  RankRequestTooLarge(int r, long d)
      : Error(ErrorKind::Runtime, "RankRequestTooLarge",
              "rank " + std::to_string(r) + " outside [1, " + std::to_string(d) + "]") {}
};

// ---- configuration ----

struct ConfigSyntaxError : Error {
  explicit ConfigSyntaxError(const std::string& detail)
      : Error(ErrorKind::Config, "ConfigSyntaxError", detail) {}
};

struct UnknownKey : Error {
  explicit UnknownKey(const std::string& key_)
      : Error(ErrorKind::Config, "UnknownKey", "unknown config key: " + key_),
        key(key_) {}
  std::string key;
};

struct InvalidValue : Error {
  InvalidValue(const std::string& key_, const std::string& reason_)
      : Error(ErrorKind::Config, "InvalidValue", key_ + ": " + reason_),
        key(key_), reason(reason_) {}
  std::string key;
  std::string reason;
};

// Contract violations that the spec of an operation assumes away.
struct Precondition : Error {
  explicit Precondition(const std::string& what_)
      : Error(ErrorKind::Runtime, "Precondition", what_) {}
};

}  // namespace graphmine

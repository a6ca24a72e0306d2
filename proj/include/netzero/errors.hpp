#pragma once

#include <stdexcept>
#include <string>

namespace netzero {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownSubLabelError : Error {
  explicit UnknownSubLabelError(const std::string& sublabel)
      : Error("unknown sub-label: '" + sublabel + "'"), sublabel(sublabel) {}
  std::string sublabel;
};

struct InputShapeError : Error {
  using Error::Error;
};

struct EmptyDatasetError : Error {
  EmptyDatasetError() : Error("dataset is empty") {}
};

struct StratificationInfeasibleError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct ModelNotFoundError : Error {
  using Error::Error;
};

struct InputError : Error {
  using Error::Error;
};

struct ExtractionError : Error {
  using Error::Error;
};

struct EmptyEventError : Error {
  EmptyEventError() : Error("event has no sentence records") {}
};

struct UnknownSampleError : Error {
  explicit UnknownSampleError(const std::string& id)
      : Error("unknown sample id: '" + id + "'"), sample_id(id) {}
  std::string sample_id;
};

struct MissingPredictionsError : Error {
  MissingPredictionsError()
      : Error("cross-validation run did not retain per-sample predictions") {}
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace netzero

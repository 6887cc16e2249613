#pragma once

#include <stdexcept>
#include <string>

namespace measaudit {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ingest
struct EmptyInputError : Error { using Error::Error; };
struct RaggedRowError : Error { using Error::Error; };
struct DuplicateColumnError : Error { using Error::Error; };
struct AllRowsDroppedError : Error { using Error::Error; };
struct NoNumericColumnsError : Error { using Error::Error; };
struct EncodingError : Error { using Error::Error; };

// split
struct EmptyTrainError : Error { using Error::Error; };
struct EmptyTestError : Error { using Error::Error; };
struct InvalidSplitError : Error { using Error::Error; };

// modeling / metrics
struct DimensionMismatchError : Error { using Error::Error; };
struct TooFewRowsError : Error { using Error::Error; };
struct RankDeficientError : Error { using Error::Error; };
struct UnknownColumnError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct NonPositiveSigmaError : Error { using Error::Error; };
struct NegativeNoiseLevelError : Error { using Error::Error; };

// stability
struct TooFewPointsError : Error { using Error::Error; };
struct FewerThanTwoRealizationsError : Error { using Error::Error; };

// synth
struct InvalidSpecError : Error { using Error::Error; };

// config / io
struct ConfigError : Error {
    ConfigError(const std::string& kind, const std::string& key_path,
                const std::string& detail = "")
        : Error(kind + ": " + key_path + (detail.empty() ? "" : " (" + detail + ")")),
          kind(kind), key_path(key_path) {}
    std::string kind;      // "UnknownKey", "MissingRequired", "InvalidValue"
    std::string key_path;  // e.g. "split.train_frac"
};
struct IoError : Error { using Error::Error; };

}  // namespace measaudit

#include "stablab/error.hpp"

namespace stablab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kInvalidVertex: return "InvalidVertex";
    case ErrorCode::kZeroDisplacement: return "ZeroDisplacement";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kOracleInconsistent: return "OracleInconsistent";
    case ErrorCode::kBallTooLarge: return "BallTooLarge";
    case ErrorCode::kNotSmallCancellation: return "NotSmallCancellation";
    case ErrorCode::kNotHyperbolicType: return "NotHyperbolicType";
    case ErrorCode::kImageEscapesBall: return "ImageEscapesBall";
    case ErrorCode::kBadT: return "BadT";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kMarginViolation: return "MarginViolation";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNotGeodesic: return "NotGeodesic";
    case ErrorCode::kHypothesisViolated: return "HypothesisViolated";
    case ErrorCode::kPeripheralNotSubgenerated: return "PeripheralNotSubgenerated";
    case ErrorCode::kCosetOutsideBall: return "CosetOutsideBall";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kCacheCorrupt: return "CacheCorrupt";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

}  // namespace stablab

#include "stablab/deadline.hpp"

namespace stablab {

void Deadline::check(const std::string& what) const {
  if (expired()) throw Error(ErrorCode::kBudgetExceeded, what + ": time budget exhausted");
}

}  // namespace stablab

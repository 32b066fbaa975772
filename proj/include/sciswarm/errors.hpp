// Error types shared across the simulation engine.
#pragma once

#include <stdexcept>
#include <string>

namespace sciswarm {

// Base class for all engine errors.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapExceeded final : SimError { using SimError::SimError; };
struct OutOfBounds final : SimError { using SimError::SimError; };
struct UnknownLab final : SimError { using SimError::SimError; };
struct EmptySwarm final : SimError { using SimError::SimError; };
struct UnknownLandscape final : SimError { using SimError::SimError; };
struct DimensionMismatch final : SimError { using SimError::SimError; };
struct NoReference final : SimError { using SimError::SimError; };
struct ModeMismatch final : SimError { using SimError::SimError; };
struct InvalidCap final : SimError { using SimError::SimError; };
struct BadReference final : SimError { using SimError::SimError; };
struct Unsupported final : SimError { using SimError::SimError; };
struct DuplicateName final : SimError { using SimError::SimError; };

// Configuration loading errors. ParseError covers malformed documents
// (including duplicate keys); ValidationError names the offending key.
struct ParseError final : SimError { using SimError::SimError; };
struct ValidationError final : SimError { using SimError::SimError; };

struct IoError final : SimError { using SimError::SimError; };

} // namespace sciswarm

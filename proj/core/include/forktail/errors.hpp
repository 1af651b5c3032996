#pragma once

#include <stdexcept>
#include <string>

namespace forktail {

/// Base class for all recoverable engine errors (bad input data, bad
/// config, malformed files). Programming errors use std::logic_error.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad configuration value or unknown configuration key.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed corpus, judgment, or topic data.
class DataError : public Error {
public:
    using Error::Error;
};

/// An item with the same external id was already added to the index.
class DuplicateIdError : public DataError {
public:
    using DataError::DataError;
};

/// Query reduced to zero content stems after preprocessing.
class EmptyQueryError : public DataError {
public:
    using DataError::DataError;
};

/// No indexed item matches any query stem; pseudo-relevance feedback
/// has nothing to work with.
class EmptyFeedbackError : public DataError {
public:
    using DataError::DataError;
};

// Index file loading failures, one type per failure mode so callers can
// tell them apart.

class IndexLoadError : public DataError {
public:
    using DataError::DataError;
};

class IndexFormatError : public IndexLoadError {
public:
    using IndexLoadError::IndexLoadError;
};

class IndexVersionError : public IndexLoadError {
public:
    using IndexLoadError::IndexLoadError;
};

class IndexTruncatedError : public IndexLoadError {
public:
    using IndexLoadError::IndexLoadError;
};

class IndexChecksumError : public IndexLoadError {
public:
    using IndexLoadError::IndexLoadError;
};

} // namespace forktail

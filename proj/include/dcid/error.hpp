#pragma once

#include <stdexcept>
#include <string>

namespace dcid {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad configuration, inconsistent shapes, insufficient samples, non-finite input.
class ValidationError : public Error {
public:
    using Error::Error;
};

class RankDeficiencyError : public Error {
public:
    using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
public:
    using Error::Error;
};

// The shared estimate selected no components, so it has no prediction function.
class EmptyEstimateError : public Error {
public:
    using Error::Error;
};

// Feature selection is undefined (all-zero head weights).
class SelectionError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace dcid

#pragma once

#include <stdexcept>
#include <string>

namespace saw {

// Base class for every error raised by the library. Each subclass maps onto
// one failure mode the CLI reports with a distinct diagnostic.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidVertexError : public Error {
public:
    using Error::Error;
};

class CatalogError : public Error {
public:
    using Error::Error;
};

class GraphSpecError : public Error {
public:
    using Error::Error;
};

class LoopError : public Error {
public:
    using Error::Error;
};

class InvalidActionError : public Error {
public:
    using Error::Error;
};

class InvalidLabelError : public Error {
public:
    using Error::Error;
};

class SymmetryRequiredError : public Error {
public:
    using Error::Error;
};

class InfiniteQuotientError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class NoContractionError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

class BudgetExceededError : public Error {
public:
    using Error::Error;
};

class NotImplementedError : public Error {
public:
    using Error::Error;
};

}  // namespace saw

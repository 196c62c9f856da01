#pragma once

#include <stdexcept>
#include <string>

namespace unitsum {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands belong to different orders.
class FieldMismatch : public Error {
public:
    using Error::Error;
};

/// A numeric procedure could not reach the requested accuracy.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Catalog data is inconsistent with its declared invariants.
class CatalogError : public Error {
public:
    using Error::Error;
};

}  // namespace unitsum

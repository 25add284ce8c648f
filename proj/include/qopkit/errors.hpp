// Copyright (c) 2026 the qopkit authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qopkit {

/// Base class for all qopkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct NotHermitian : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  using Error::Error;
};
struct NotPSD : Error {
  using Error::Error;
};
struct NotCP : Error {
  using Error::Error;
};
struct NotEquivalent : Error {
  using Error::Error;
};
struct ZeroProbability : Error {
  using Error::Error;
};
struct NotTracePreserving : Error {
  using Error::Error;
};
struct NotReversible : Error {
  using Error::Error;
};
struct InvalidModel : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct IndexOutOfRange : Error {
  using Error::Error;
};
struct NotInSubspace : Error {
  using Error::Error;
};
struct ResidualOutsideSubspaces : Error {
  using Error::Error;
};
struct DegenerateCode : Error {
  using Error::Error;
};
struct ZeroRestriction : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace qopkit

//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>
#include <string>

namespace moltext {

// Error families map onto CLI exit codes: usage=1, data=2, numeric=3.

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace moltext

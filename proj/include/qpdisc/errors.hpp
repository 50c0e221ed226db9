// Copyright 2026 The qpdisc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qpdisc {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSquare : Error {
  using Error::Error;
};
struct NotHermitian : Error {
  using Error::Error;
};
struct NotUnitary : Error {
  using Error::Error;
};
struct NotPsd : Error {
  using Error::Error;
};
struct NotNormalized : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct InvalidChannel : Error {
  using Error::Error;
};
struct InvalidStrategy : Error {
  using Error::Error;
};
struct ZeroTotalProbability : Error {
  using Error::Error;
};
struct InvalidSpec : Error {
  using Error::Error;
};
struct MissingResult : Error {
  using Error::Error;
};

// CLI-facing errors; the driver maps these to distinct exit codes.
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct UnsupportedTask : Error {
  using Error::Error;
};

}  // namespace qpdisc

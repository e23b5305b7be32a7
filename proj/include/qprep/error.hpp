// Copyright 2026 The qprep Authors
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

namespace qprep {

/// Base class for all qprep errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: register widths, caps, table contents, config files.
struct ConfigError : Error {
  using Error::Error;
};

/// A numeric contract was violated (non-unitary matrix, layout mismatch,
/// value register not cleared where required, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// Post-selection on an outcome of (near-)zero probability.
struct PostselectError : Error {
  using Error::Error;
};

/// File reading or parsing failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace qprep

// Copyright 2026 The detailprior Authors.
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

#include <filesystem>
#include <stdexcept>
#include <string>

namespace detailprior {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or argument violates its documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two rasters that must agree in shape do not.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A numerical invariant that should be unreachable was observed.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// File-level failure. The path is always part of the message.
class IoError : public Error {
 public:
  enum class Kind {
    kUnreadable,         // cannot open or read
    kUnsupportedFormat,  // unknown magic, bit depth or layout
    kCorrupt,            // malformed header or truncated payload
    kWriteFailed,
  };

  IoError(Kind kind, std::filesystem::path path, const std::string& what)
      : Error(path.string() + ": " + what), kind_(kind), path_(std::move(path)) {}

  Kind kind() const noexcept { return kind_; }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  Kind kind_;
  std::filesystem::path path_;
};

}  // namespace detailprior

// Copyright 2026 The groundmem Authors
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

namespace groundmem {

// Broad failure classes. The CLI maps them onto stable exit codes
// (usage 2, data 3, session 4).
enum class ErrorKind {
  kInvalidArgument,
  kData,
  kSession,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Precondition violations on arguments and configuration values.
class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& what)
      : Error(ErrorKind::kInvalidArgument, what) {}
};

// Malformed or inconsistent files. Carries the offending path and field so
// the message can point at the exact spot.
class FormatError : public Error {
 public:
  FormatError(const std::string& path, const std::string& field,
              const std::string& detail)
      : Error(ErrorKind::kData, path + ": " + field + ": " + detail),
        path_(path),
        field_(field) {}

  const std::string& path() const { return path_; }
  const std::string& field() const { return field_; }

 private:
  std::string path_;
  std::string field_;
};

// Geometry that cannot support the requested construction, e.g. a collinear
// footprint passed to the yaw box fit.
class DegenerateGeometryError : public Error {
 public:
  explicit DegenerateGeometryError(const std::string& what)
      : Error(ErrorKind::kData, what) {}
};

// Agent-session failures: client transport, executor plumbing, protocol.
class SessionError : public Error {
 public:
  explicit SessionError(const std::string& what)
      : Error(ErrorKind::kSession, what) {}
};

}  // namespace groundmem

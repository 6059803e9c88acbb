// SPDX-License-Identifier: Apache-2.0
//
// eepn-lab: equalization-enhanced phase noise simulation and modelling
// Copyright (C) 2026 The eepn-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eepn {

// Error kinds surfaced through the C API as status codes.
enum class ErrorKind {
    invalid_argument,
    out_of_range,
    format,
    numeric,
    config,
    io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

class OutOfRange : public Error {
public:
    explicit OutOfRange(const std::string& what) : Error(ErrorKind::out_of_range, what) {}
};

/// Malformed input file. `line` is 1-based; 0 when the problem is not tied to a line.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t line)
        : Error(ErrorKind::format, line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

/// Bad configuration value; `field` names the offending key.
class ConfigError : public Error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : Error(ErrorKind::config, field + ": " + what), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace eepn

// SPDX-License-Identifier: Apache-2.0
//
// uecal - UE-aided absolute calibration of massive MIMO front-ends
// Copyright (C) 2026 The uecal authors
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
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uecal {

enum class ErrorKind {
    InvalidArgument,
    DegenerateEstimate,
    NumericalDomain,
    SingularFim,
    DegenerateSchur,
    InvalidConfig,
    Io,
};

const char *to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. `kind()` lets callers (the CLI in
/// particular) map failures onto exit codes without a chain of catch blocks.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind)
    {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidArgument : public Error
{
public:
    explicit InvalidArgument(const std::string &what) : Error(ErrorKind::InvalidArgument, what) {}
};

/// The phase of a chain is undefined because its snapshot sum is exactly zero.
class DegenerateEstimate : public Error
{
public:
    DegenerateEstimate(std::size_t chain, const std::string &what)
        : Error(ErrorKind::DegenerateEstimate, what), chain_(chain)
    {}

    std::size_t chain() const noexcept { return chain_; }

private:
    std::size_t chain_;
};

class NumericalDomain : public Error
{
public:
    explicit NumericalDomain(const std::string &what) : Error(ErrorKind::NumericalDomain, what) {}
};

class SingularFim : public Error
{
public:
    explicit SingularFim(const std::string &what) : Error(ErrorKind::SingularFim, what) {}
};

class DegenerateSchur : public Error
{
public:
    explicit DegenerateSchur(const std::string &what) : Error(ErrorKind::DegenerateSchur, what) {}
};

class InvalidConfig : public Error
{
public:
    explicit InvalidConfig(const std::string &what) : Error(ErrorKind::InvalidConfig, what) {}
};

class IoError : public Error
{
public:
    explicit IoError(const std::string &what) : Error(ErrorKind::Io, what) {}
};

} // namespace uecal

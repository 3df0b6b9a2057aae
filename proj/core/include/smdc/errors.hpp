// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace smdc {

/// Broad failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
    invalid_parameter,
    field_mismatch,
    insufficient_shares,
    decode_failure,
    region_violation,
    infeasible_corner,
    budget_exceeded,
    resource_exhausted,
    format_error,
    io_error,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidParameterError : public Error {
public:
    explicit InvalidParameterError(const std::string& what) : Error(ErrorKind::invalid_parameter, what) {}
};

class FieldMismatchError : public Error {
public:
    explicit FieldMismatchError(const std::string& what) : Error(ErrorKind::field_mismatch, what) {}
};

class InsufficientSharesError : public Error {
public:
    InsufficientSharesError(std::size_t needed, std::size_t got)
        : Error(ErrorKind::insufficient_shares,
                "insufficient shares: need " + std::to_string(needed) + ", got " + std::to_string(got) + " (" +
                    std::to_string(needed - got) + " more needed)"),
          needed_(needed),
          got_(got) {}
    std::size_t needed() const noexcept { return needed_; }
    std::size_t got() const noexcept { return got_; }

private:
    std::size_t needed_;
    std::size_t got_;
};

class DecodeError : public Error {
public:
    explicit DecodeError(const std::string& what) : Error(ErrorKind::decode_failure, what) {}
};

/// A rate tuple lies outside the admissible region; `subset()` is the
/// violated constraint's encoder set (0-based), empty for a negative entry.
class RegionViolationError : public Error {
public:
    RegionViolationError(const std::string& what, std::vector<std::size_t> subset)
        : Error(ErrorKind::region_violation, what), subset_(std::move(subset)) {}
    const std::vector<std::size_t>& subset() const noexcept { return subset_; }

private:
    std::vector<std::size_t> subset_;
};

class InfeasibleCornerError : public Error {
public:
    explicit InfeasibleCornerError(const std::string& what) : Error(ErrorKind::infeasible_corner, what) {}
};

class BudgetExceededError : public Error {
public:
    explicit BudgetExceededError(const std::string& what) : Error(ErrorKind::budget_exceeded, what) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(ErrorKind::resource_exhausted, what) {}
};

class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error(ErrorKind::format_error, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io_error, what) {}
};

/// A broken internal invariant (two independent computations disagree).
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(ErrorKind::internal, what) {}
};

}  // namespace smdc

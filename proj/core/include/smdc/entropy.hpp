// SPDX-License-Identifier: Apache-2.0
//
// Randomness supplied to encoders for key material. Encoders never own an
// entropy source; callers pass one in and keep it.
#pragma once

#include "smdc/finite_field.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace smdc {

class EntropySource {
public:
    virtual ~EntropySource() = default;

    /// A uniform value in [0, q).
    virtual Symbol next_symbol(std::uint32_t q) = 0;

    /// A child source for an independent sub-stream (domain separation).
    virtual std::unique_ptr<EntropySource> fork(std::uint64_t domain) = 0;
};

/// Operating-system randomness (std::random_device). The production default.
class SystemEntropy final : public EntropySource {
public:
    Symbol next_symbol(std::uint32_t q) override;
    std::unique_ptr<EntropySource> fork(std::uint64_t domain) override;

private:
    std::random_device device_;
};

/// Deterministic stream for tests and reproducible runs. Keys derived from a
/// known seed give no secrecy.
class SeededEntropy final : public EntropySource {
public:
    explicit SeededEntropy(std::uint64_t seed, std::vector<std::uint64_t> path = {});

    Symbol next_symbol(std::uint32_t q) override;
    std::unique_ptr<EntropySource> fork(std::uint64_t domain) override;

private:
    std::uint64_t seed_;
    std::vector<std::uint64_t> path_;
    std::mt19937_64 engine_;
};

/// Replays a fixed script of symbols. Forks share the parent's cursor, so
/// the whole fork tree consumes the script in call order. Used by the
/// verifier to push every key realization through an encoder.
class ScriptedEntropy final : public EntropySource {
public:
    explicit ScriptedEntropy(std::vector<Symbol> script);

    Symbol next_symbol(std::uint32_t q) override;
    std::unique_ptr<EntropySource> fork(std::uint64_t domain) override;

    std::size_t consumed() const { return state_->cursor; }

private:
    struct State {
        std::vector<Symbol> script;
        std::size_t cursor = 0;
    };
    explicit ScriptedEntropy(std::shared_ptr<State> state) : state_(std::move(state)) {}
    std::shared_ptr<State> state_;
};

/// Returns zeros and counts requests across the fork tree.
class CountingEntropy final : public EntropySource {
public:
    CountingEntropy() : count_(std::make_shared<std::size_t>(0)) {}

    Symbol next_symbol(std::uint32_t q) override;
    std::unique_ptr<EntropySource> fork(std::uint64_t domain) override;

    std::size_t count() const { return *count_; }

private:
    explicit CountingEntropy(std::shared_ptr<std::size_t> count) : count_(std::move(count)) {}
    std::shared_ptr<std::size_t> count_;
};

}  // namespace smdc

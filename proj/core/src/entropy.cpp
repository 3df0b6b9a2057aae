// SPDX-License-Identifier: Apache-2.0
#include "smdc/entropy.hpp"

#include "smdc/errors.hpp"

#include <limits>

namespace smdc {

namespace {

template <typename Engine>
Symbol uniform_below(Engine& engine, std::uint32_t q) {
    if (q == 0) throw InvalidParameterError("alphabet size must be positive");
    // Rejection sampling keeps the output exactly uniform and independent of
    // the standard library's distribution implementation.
    constexpr std::uint64_t span = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = span - (span % q + 1) % q;
    while (true) {
        std::uint64_t v = 0;
        if constexpr (sizeof(typename Engine::result_type) >= 8) {
            v = engine();
        } else {
            v = (static_cast<std::uint64_t>(engine()) << 32) | engine();
        }
        if (v <= limit) return static_cast<Symbol>(v % q);
    }
}

}  // namespace

Symbol SystemEntropy::next_symbol(std::uint32_t q) { return uniform_below(device_, q); }

std::unique_ptr<EntropySource> SystemEntropy::fork(std::uint64_t) { return std::make_unique<SystemEntropy>(); }

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, const std::vector<std::uint64_t>& path) {
    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                     static_cast<std::uint32_t>(path.size())};
    for (std::uint64_t p : path) {
        words.push_back(static_cast<std::uint32_t>(p));
        words.push_back(static_cast<std::uint32_t>(p >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

}  // namespace

SeededEntropy::SeededEntropy(std::uint64_t seed, std::vector<std::uint64_t> path)
    : seed_(seed), path_(std::move(path)), engine_(make_engine(seed_, path_)) {}

Symbol SeededEntropy::next_symbol(std::uint32_t q) { return uniform_below(engine_, q); }

std::unique_ptr<EntropySource> SeededEntropy::fork(std::uint64_t domain) {
    auto path = path_;
    path.push_back(domain);
    return std::make_unique<SeededEntropy>(seed_, std::move(path));
}

ScriptedEntropy::ScriptedEntropy(std::vector<Symbol> script) : state_(std::make_shared<State>()) {
    state_->script = std::move(script);
}

Symbol ScriptedEntropy::next_symbol(std::uint32_t q) {
    if (state_->cursor >= state_->script.size()) throw InvalidParameterError("entropy script exhausted");
    const Symbol s = state_->script[state_->cursor++];
    if (s >= q) throw InvalidParameterError("scripted symbol outside the requested alphabet");
    return s;
}

std::unique_ptr<EntropySource> ScriptedEntropy::fork(std::uint64_t) {
    return std::unique_ptr<EntropySource>(new ScriptedEntropy(state_));
}

Symbol CountingEntropy::next_symbol(std::uint32_t) {
    ++*count_;
    return 0;
}

std::unique_ptr<EntropySource> CountingEntropy::fork(std::uint64_t) {
    return std::unique_ptr<EntropySource>(new CountingEntropy(count_));
}

}  // namespace smdc

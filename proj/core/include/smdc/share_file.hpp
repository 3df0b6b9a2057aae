// SPDX-License-Identifier: Apache-2.0
//
// On-disk share format, little-endian:
//
//   "SMDC" | version 0x01 | L | N | index (1-based) | field id (u16)
//   | source count | payload symbols (u32 each) | message bytes (u64 each)
//   | body: one byte per symbol, sub-payloads in source order
//
// Field ids: 0x0005 GF(5), 0x0007 GF(7), 0x0100 GF(2^8) mod 0x11B. Over a
// prime field each input byte is one symbol and must be below p.
#pragma once

#include "smdc/entropy.hpp"
#include "smdc/finite_field.hpp"
#include "smdc/smdc.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace smdc::share {

inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kFixedHeaderBytes = 11;

std::uint16_t field_id(const FieldSpec& spec);
/// Throws FormatError for an unknown id.
FieldSpec field_from_id(std::uint16_t id);

struct Header {
    std::uint8_t L = 0;
    std::uint8_t N = 0;
    std::uint8_t index = 0;  // 1-based
    std::uint16_t field = 0;
    std::vector<std::uint32_t> payload_symbols;  // per source
    std::vector<std::uint64_t> message_bytes;    // per source

    std::size_t header_bytes() const { return kFixedHeaderBytes + 12 * payload_symbols.size(); }
    std::size_t body_bytes() const;
    /// Everything except the encoder index agrees.
    bool same_run_shape(const Header& other) const;
    friend bool operator==(const Header&, const Header&) = default;
};

struct ShareFile {
    Header header;
    std::vector<Symbol> body;
};

std::vector<std::uint8_t> serialize(const ShareFile& file);

/// Strict parser. Throws FormatError naming the first inconsistency.
ShareFile parse(std::span<const std::uint8_t> bytes);

/// Layout implied by a header: every source at its symmetric point.
multilevel::Layout layout_of(const Header& header);

/// Splits L - N byte sources into L share files.
std::vector<ShareFile> split(std::size_t L, std::size_t N, const FieldSpec& field,
                             std::span<const std::vector<std::uint8_t>> sources, EntropySource& entropy);

/// Recovers S_1..S_{|U|-N} from share files of distinct encoders. Throws
/// FormatError on mixed or conflicting shares, InsufficientSharesError when
/// |U| <= N, DecodeError when the shares are inconsistent.
std::vector<std::vector<std::uint8_t>> join(std::span<const ShareFile> shares);

}  // namespace smdc::share

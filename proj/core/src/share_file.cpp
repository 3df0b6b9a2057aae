// SPDX-License-Identifier: Apache-2.0
#include "smdc/share_file.hpp"

#include "smdc/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace smdc::share {

namespace {

constexpr std::uint8_t kMagic[4] = {'S', 'M', 'D', 'C'};

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

template <typename T>
T get_le(std::span<const std::uint8_t> bytes, std::size_t at) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(bytes[at + i]) << (8 * i);
    return v;
}

}  // namespace

std::uint16_t field_id(const FieldSpec& spec) {
    if (spec == FieldSpec::prime(5)) return 0x0005;
    if (spec == FieldSpec::prime(7)) return 0x0007;
    if (spec == FieldSpec::binary8(0x11B)) return 0x0100;
    throw InvalidParameterError("field " + spec.name() + " has no share-file id (use 5, 7 or 256)");
}

FieldSpec field_from_id(std::uint16_t id) {
    switch (id) {
        case 0x0005: return FieldSpec::prime(5);
        case 0x0007: return FieldSpec::prime(7);
        case 0x0100: return FieldSpec::binary8(0x11B);
        default: break;
    }
    throw FormatError("unknown field id " + std::to_string(id));
}

std::size_t Header::body_bytes() const {
    std::size_t total = 0;
    for (auto n : payload_symbols) total += n;
    return total;
}

bool Header::same_run_shape(const Header& other) const {
    return L == other.L && N == other.N && field == other.field && payload_symbols == other.payload_symbols &&
           message_bytes == other.message_bytes;
}

std::vector<std::uint8_t> serialize(const ShareFile& file) {
    const Header& h = file.header;
    if (h.payload_symbols.size() != h.message_bytes.size() || h.payload_symbols.size() > 0xFF)
        throw InvalidParameterError("header source lists disagree");
    if (file.body.size() != h.body_bytes()) throw InvalidParameterError("body length disagrees with header");
    std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
    out.push_back(kVersion);
    out.push_back(h.L);
    out.push_back(h.N);
    out.push_back(h.index);
    put_le<std::uint16_t>(out, h.field);
    out.push_back(static_cast<std::uint8_t>(h.payload_symbols.size()));
    for (auto n : h.payload_symbols) put_le<std::uint32_t>(out, n);
    for (auto n : h.message_bytes) put_le<std::uint64_t>(out, n);
    for (Symbol s : file.body) {
        if (s > 0xFF) throw InvalidParameterError("symbol does not fit in one byte");
        out.push_back(static_cast<std::uint8_t>(s));
    }
    return out;
}

ShareFile parse(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kFixedHeaderBytes)
        throw FormatError("share file truncated: " + std::to_string(bytes.size()) + " bytes");
    if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) throw FormatError("bad magic");
    if (bytes[4] != kVersion) throw FormatError("unsupported version " + std::to_string(bytes[4]));

    ShareFile file;
    Header& h = file.header;
    h.L = bytes[5];
    h.N = bytes[6];
    h.index = bytes[7];
    h.field = get_le<std::uint16_t>(bytes, 8);
    const std::size_t sources = bytes[10];

    if (h.L == 0 || h.N >= h.L)
        throw FormatError("invalid parameters L=" + std::to_string(h.L) + ", N=" + std::to_string(h.N));
    if (h.index == 0 || h.index > h.L)
        throw FormatError("encoder index " + std::to_string(h.index) + " outside 1.." + std::to_string(h.L));
    const Field field(field_from_id(h.field));
    if (h.L + 1u > field.order())
        throw FormatError("field " + field.spec().name() + " cannot serve " + std::to_string(h.L) + " encoders");
    if (sources != static_cast<std::size_t>(h.L - h.N))
        throw FormatError("source count " + std::to_string(sources) + " differs from L-N=" +
                          std::to_string(h.L - h.N));
    if (bytes.size() < kFixedHeaderBytes + 12 * sources) throw FormatError("share file truncated in header");

    std::size_t at = kFixedHeaderBytes;
    for (std::size_t k = 0; k < sources; ++k, at += 4) h.payload_symbols.push_back(get_le<std::uint32_t>(bytes, at));
    for (std::size_t k = 0; k < sources; ++k, at += 8) h.message_bytes.push_back(get_le<std::uint64_t>(bytes, at));

    for (std::size_t k = 0; k < sources; ++k) {
        // Source k + 1 is coded in blocks of k + 1 symbols, one symbol per
        // block to each encoder.
        const std::uint64_t level = k + 1;
        const std::uint64_t expected = h.message_bytes[k] / level + (h.message_bytes[k] % level != 0);
        if (h.payload_symbols[k] != expected)
            throw FormatError("source " + std::to_string(k + 1) + ": payload of " +
                              std::to_string(h.payload_symbols[k]) + " symbols does not match message length " +
                              std::to_string(h.message_bytes[k]));
    }
    const std::uint64_t body = h.body_bytes();
    if (bytes.size() - at != body)
        throw FormatError("body has " + std::to_string(bytes.size() - at) + " bytes, header declares " +
                          std::to_string(body));
    file.body.reserve(body);
    for (; at < bytes.size(); ++at) {
        if (!field.contains(bytes[at]))
            throw FormatError("symbol " + std::to_string(bytes[at]) + " outside " + field.spec().name());
        file.body.push_back(bytes[at]);
    }
    return file;
}

multilevel::Layout layout_of(const Header& header) {
    multilevel::Params params{header.L, header.N, Field(field_from_id(header.field)), {}};
    for (auto n : header.message_bytes) {
        if (n > std::numeric_limits<std::size_t>::max()) throw FormatError("message length too large");
        params.source_lengths.push_back(static_cast<std::size_t>(n));
    }
    return multilevel::plan(params);
}

std::vector<ShareFile> split(std::size_t L, std::size_t N, const FieldSpec& spec,
                             std::span<const std::vector<std::uint8_t>> sources, EntropySource& entropy) {
    if (L == 0 || L > 0xFF) throw InvalidParameterError("L must be in 1..255");
    if (N >= L) throw InvalidParameterError("N must be below L");
    const std::uint16_t id = field_id(spec);
    const Field field(spec);
    if (sources.size() != L - N)
        throw InvalidParameterError("expected " + std::to_string(L - N) + " sources, got " +
                                    std::to_string(sources.size()));

    multilevel::Params params{L, N, field, {}};
    std::vector<std::vector<Symbol>> symbols;
    for (std::size_t k = 0; k < sources.size(); ++k) {
        const auto& src = sources[k];
        const std::uint64_t level = k + 1;
        if (src.size() / level + (src.size() % level != 0) > std::numeric_limits<std::uint32_t>::max())
            throw InvalidParameterError("source " + std::to_string(k + 1) + " is too large for 4-byte lengths");
        std::vector<Symbol> s(src.begin(), src.end());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!field.contains(s[i]))
                throw InvalidParameterError("source " + std::to_string(k + 1) + " byte " + std::to_string(i) +
                                            " has value " + std::to_string(s[i]) + ", not a symbol of " + spec.name());
        }
        params.source_lengths.push_back(s.size());
        symbols.push_back(std::move(s));
    }

    const auto layout = multilevel::plan(params);
    const auto bundle = multilevel::encode(layout, symbols, entropy);
    std::vector<ShareFile> out;
    for (std::size_t l = 0; l < L; ++l) {
        ShareFile f;
        f.header.L = static_cast<std::uint8_t>(L);
        f.header.N = static_cast<std::uint8_t>(N);
        f.header.index = static_cast<std::uint8_t>(l + 1);
        f.header.field = id;
        for (std::size_t k = 0; k < sources.size(); ++k) {
            f.header.payload_symbols.push_back(static_cast<std::uint32_t>(layout.sources[k].payload_lengths[l]));
            f.header.message_bytes.push_back(sources[k].size());
        }
        f.body = bundle.payload(l);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<std::vector<std::uint8_t>> join(std::span<const ShareFile> shares) {
    if (shares.empty()) throw InsufficientSharesError(1, 0);
    const Header& first = shares.front().header;
    std::map<std::size_t, const ShareFile*> by_index;
    for (const auto& s : shares) {
        if (!s.header.same_run_shape(first))
            throw FormatError("share " + std::to_string(s.header.index) +
                              " has a different header from share " + std::to_string(first.index) +
                              " (mixed split runs)");
        auto [it, inserted] = by_index.emplace(s.header.index, &s);
        if (!inserted && it->second->body != s.body)
            throw FormatError("two different shares claim encoder index " + std::to_string(s.header.index));
    }
    if (by_index.size() <= first.N) throw InsufficientSharesError(first.N + 1u, by_index.size());

    const auto layout = layout_of(first);
    std::vector<ssdc::EncoderPayload> observed;
    for (const auto& [index, file] : by_index) observed.push_back({index - 1, file->body});
    const auto decoded = multilevel::decode(layout, observed);
    std::vector<std::vector<std::uint8_t>> out;
    for (const auto& s : decoded) out.emplace_back(s.begin(), s.end());
    return out;
}

}  // namespace smdc::share

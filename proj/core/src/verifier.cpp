// SPDX-License-Identifier: Apache-2.0
#include "smdc/verifier.hpp"

#include "smdc/errors.hpp"
#include "smdc/rate_region.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <optional>
#include <numeric>
#include <sstream>
#include <thread>

namespace smdc::verify {

namespace {

using Grouping = JointDistribution::Grouping;
__extension__ typedef unsigned __int128 Wide;

// Above this many possible keys, grouping sorts instead of indexing.
constexpr std::uint64_t kDenseKeys = std::uint64_t{1} << 22;

std::string symbols_to_string(const std::vector<Symbol>& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
    return os.str();
}

std::vector<std::size_t> one_based(std::span<const std::size_t> v) {
    std::vector<std::size_t> out;
    for (std::size_t x : v) out.push_back(x + 1);
    return out;
}

// Groups outcomes by key (all keys below `bound`); ids follow first
// appearance in outcome order.
Grouping group_keys(const std::vector<std::uint64_t>& keys, std::uint64_t bound, const JointDistribution& dist) {
    constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
    Grouping g;
    g.group.resize(keys.size());
    auto add = [&](std::size_t i) {
        g.group[i] = static_cast<std::uint32_t>(g.counts.size());
        g.counts.push_back(dist.count(i));
        g.representative.push_back(i);
    };
    if (bound <= kDenseKeys) {
        std::vector<std::uint32_t> slot(bound, none);
        for (std::size_t i = 0; i < keys.size(); ++i) {
            auto& s = slot[keys[i]];
            if (s == none) {
                s = static_cast<std::uint32_t>(g.counts.size());
                add(i);
            } else {
                g.group[i] = s;
                g.counts[s] += dist.count(i);
            }
        }
        return g;
    }
    std::vector<std::uint32_t> order(keys.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return keys[a] != keys[b] ? keys[a] < keys[b] : a < b;
    });
    // Runs of equal keys start at their smallest index; renumber by that.
    std::vector<std::uint32_t> leader(keys.size());
    for (std::size_t r = 0; r < order.size(); ++r)
        leader[order[r]] = r > 0 && keys[order[r]] == keys[order[r - 1]] ? leader[order[r - 1]] : order[r];
    std::vector<std::uint32_t> id(keys.size(), none);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (leader[i] == i) {
            id[i] = static_cast<std::uint32_t>(g.counts.size());
            add(i);
        } else {
            g.group[i] = id[leader[i]];
            g.counts[g.group[i]] += dist.count(i);
        }
    }
    return g;
}

Grouping combine(const Grouping& a, const Grouping& b, const JointDistribution& dist) {
    const std::uint64_t nb = b.counts.size();
    std::vector<std::uint64_t> keys(a.group.size());
    for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = a.group[i] * nb + b.group[i];
    return group_keys(keys, std::max<std::uint64_t>(1, a.counts.size() * nb), dist);
}

double entropy_of(const Grouping& g, std::uint64_t total) {
    if (total == 0) return 0;
    // Near-uniform tables have few distinct counts; summing per count keeps
    // the rounding error independent of the table size.
    std::map<std::uint64_t, std::uint64_t> multiplicity;
    for (std::uint64_t c : g.counts) ++multiplicity[c];
    double acc = 0;
    for (const auto& [c, m] : multiplicity) {
        const double x = static_cast<double>(c);
        acc += static_cast<double>(m) * x * std::log2(x);
    }
    return std::log2(static_cast<double>(total)) - acc / static_cast<double>(total);
}

Selection all_sources(const JointDistribution& dist) {
    Selection s;
    s.sources.resize(dist.source_count());
    std::iota(s.sources.begin(), s.sources.end(), std::size_t{0});
    return s;
}

Selection first_sources(std::size_t k) {
    Selection s;
    s.sources.resize(k);
    std::iota(s.sources.begin(), s.sources.end(), std::size_t{0});
    return s;
}

/// Exact factorization of the pair table of two groupings; returns the
/// first offending joint group.
std::optional<std::size_t> first_dependent_group(const Grouping& joint, const Grouping& a, const Grouping& b,
                                                 std::uint64_t total) {
    // Checking only the nonzero joint cells is enough: if every such cell
    // factors, summing over the support shows no product cell is missing.
    for (std::size_t p = 0; p < joint.counts.size(); ++p) {
        const std::size_t r = joint.representative[p];
        const Wide lhs = static_cast<Wide>(joint.counts[p]) * total;
        const Wide rhs = static_cast<Wide>(a.counts[a.group[r]]) * b.counts[b.group[r]];
        if (lhs != rhs) return p;
    }
    return std::nullopt;
}

void check_indices(std::span<const std::size_t> set, std::size_t L, const char* what) {
    std::vector<std::size_t> sorted(set.begin(), set.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidParameterError(std::string(what) + " repeats an encoder");
    for (std::size_t l : sorted) {
        if (l >= L)
            throw InvalidParameterError(std::string(what) + " names encoder " + std::to_string(l + 1) + " outside 1.." +
                                        std::to_string(L));
    }
}

}  // namespace


std::size_t CodecInstance::access_threshold() const {
    for (std::size_t u = 1; u <= L; ++u) {
        if (recoverable_sources(u) > 0) return u;
    }
    return L + 1;
}

CodecInstance ssdc_instance(const ssdc::Layout& layout) {
    const auto& p = layout.params;
    CodecInstance c;
    c.description = "single-level (" + std::to_string(p.L) + "," + std::to_string(p.N) + "," + std::to_string(p.m) +
                    ") over " + p.field.spec().name() + ", message " + std::to_string(layout.message_length) +
                    " symbols";
    c.field = p.field;
    c.L = p.L;
    c.N = p.N;
    c.source_lengths = {layout.message_length};
    c.payload_lengths = layout.payload_lengths;
    const std::size_t m = p.m;
    c.recoverable_sources = [m](std::size_t u) -> std::size_t { return u >= m ? 1 : 0; };
    c.encode = [layout](std::span<const std::vector<Symbol>> sources, EntropySource& e) {
        return ssdc::encode(layout, sources.front(), e).payloads;
    };
    c.decode = [layout](std::span<const ssdc::EncoderPayload> observed) {
        return Sources{ssdc::decode(layout, observed)};
    };
    return c;
}

CodecInstance smdc_instance(const multilevel::Layout& layout) {
    const auto& p = layout.params;
    CodecInstance c;
    std::string lengths;
    for (std::size_t i = 0; i < p.source_lengths.size(); ++i)
        lengths += (i ? "," : "") + std::to_string(p.source_lengths[i]);
    c.description = "multilevel (" + std::to_string(p.L) + "," + std::to_string(p.N) + ") over " + p.field.spec().name() +
                    ", sources " + lengths + " symbols";
    c.field = p.field;
    c.L = p.L;
    c.N = p.N;
    c.multilevel = true;
    c.source_lengths = p.source_lengths;
    for (std::size_t l = 0; l < p.L; ++l) c.payload_lengths.push_back(layout.payload_length(l));
    const std::size_t N = p.N;
    const std::size_t K = p.source_count();
    c.recoverable_sources = [N, K](std::size_t u) -> std::size_t { return u > N ? std::min(u - N, K) : 0; };
    c.encode = [layout](std::span<const std::vector<Symbol>> sources, EntropySource& e) {
        const auto bundle = multilevel::encode(layout, sources, e);
        Payloads out;
        for (std::size_t l = 0; l < layout.params.L; ++l) out.push_back(bundle.payload(l));
        return out;
    };
    c.decode = [layout](std::span<const ssdc::EncoderPayload> observed) { return multilevel::decode(layout, observed); };
    return c;
}


JointDistribution::JointDistribution(Field field, std::size_t L, std::vector<std::size_t> source_lengths,
                                     std::vector<std::size_t> payload_lengths, std::size_t key_symbols,
                                     std::map<Row, std::uint64_t> counts)
    : field_(std::move(field)),
      source_lengths_(std::move(source_lengths)),
      payload_lengths_(std::move(payload_lengths)),
      key_symbols_(key_symbols) {
    init(L);
    for (const auto& [row, c] : counts) {
        if (row.size() != width_) throw InvalidParameterError("outcome row has the wrong width");
        for (Symbol s : row) {
            if (s > std::numeric_limits<std::uint16_t>::max()) throw InvalidParameterError("symbol out of range");
            rows_.push_back(static_cast<std::uint16_t>(s));
        }
        counts_.push_back(c);
        total_ += c;
    }
}

JointDistribution::JointDistribution(Field field, std::size_t L, std::vector<std::size_t> source_lengths,
                                     std::vector<std::size_t> payload_lengths, std::size_t key_symbols,
                                     std::vector<std::uint16_t> rows, std::vector<std::uint64_t> counts)
    : field_(std::move(field)),
      source_lengths_(std::move(source_lengths)),
      payload_lengths_(std::move(payload_lengths)),
      key_symbols_(key_symbols) {
    init(L);
    if (rows.size() != counts.size() * width_) throw InvalidParameterError("outcome table has the wrong width");
    const std::size_t w = width_;
    std::vector<std::uint32_t> order(counts.size());
    std::iota(order.begin(), order.end(), 0u);
    auto at = [&](std::uint32_t i) { return rows.begin() + static_cast<std::ptrdiff_t>(std::size_t{i} * w); };
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(at(a), at(a) + static_cast<std::ptrdiff_t>(w), at(b),
                                            at(b) + static_cast<std::ptrdiff_t>(w));
    });
    rows_.reserve(rows.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        const auto first = at(order[r]);
        if (r > 0 && std::equal(first, first + static_cast<std::ptrdiff_t>(w), at(order[r - 1]))) {
            counts_.back() += counts[order[r]];
        } else {
            rows_.insert(rows_.end(), first, first + static_cast<std::ptrdiff_t>(w));
            counts_.push_back(counts[order[r]]);
        }
        total_ += counts[order[r]];
    }
}

void JointDistribution::init(std::size_t L) {
    if (payload_lengths_.size() != L) throw InvalidParameterError("expected one payload length per encoder");
    std::size_t offset = 0;
    for (std::size_t len : source_lengths_) {
        source_offsets_.push_back(offset);
        offset += len;
    }
    for (std::size_t len : payload_lengths_) {
        payload_offsets_.push_back(offset);
        offset += len;
    }
    width_ = offset;
}

JointDistribution::Row JointDistribution::row(std::size_t i) const {
    const auto first = rows_.begin() + static_cast<std::ptrdiff_t>(i * width_);
    return Row(first, first + static_cast<std::ptrdiff_t>(width_));
}

std::map<JointDistribution::Row, std::uint64_t> JointDistribution::outcomes() const {
    std::map<Row, std::uint64_t> out;
    for (std::size_t i = 0; i < distinct(); ++i) out.emplace(row(i), counts_[i]);
    return out;
}

Rational JointDistribution::probability(const Row& r) const {
    if (r.size() != width_ || total_ == 0) return 0;
    // Rows are stored sorted.
    std::size_t lo = 0, hi = distinct();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const auto first = rows_.begin() + static_cast<std::ptrdiff_t>(mid * width_);
        if (std::lexicographical_compare(first, first + static_cast<std::ptrdiff_t>(width_), r.begin(), r.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == distinct() || row(lo) != r) return 0;
    return Rational(static_cast<long long>(counts_[lo])) / static_cast<long long>(total_);
}

std::vector<std::size_t> JointDistribution::columns(const Selection& selection) const {
    std::vector<std::size_t> cols;
    for (std::size_t k : selection.sources) {
        if (k >= source_count()) throw InvalidParameterError("source index out of range");
        for (std::size_t i = 0; i < source_lengths_[k]; ++i) cols.push_back(source_offsets_[k] + i);
    }
    for (std::size_t l : selection.encoders) {
        if (l >= encoders()) throw InvalidParameterError("encoder index out of range");
        for (std::size_t i = 0; i < payload_lengths_[l]; ++i) cols.push_back(payload_offsets_[l] + i);
    }
    return cols;
}

JointDistribution::Row JointDistribution::project(const Row& r, const Selection& selection) const {
    Row out;
    for (std::size_t c : columns(selection)) out.push_back(r.at(c));
    return out;
}

JointDistribution::Row JointDistribution::project(std::size_t i, const Selection& selection) const {
    Row out;
    for (std::size_t c : columns(selection)) out.push_back(rows_[i * width_ + c]);
    return out;
}

JointDistribution::Grouping JointDistribution::group_columns(const std::vector<std::size_t>& cols) const {
    const std::uint64_t q = field_.order();
    const std::size_t n = distinct();
    // Mixed-radix codes for as many columns as fit in 64 bits, then merge
    // the chunks pairwise.
    std::optional<Grouping> acc;
    std::size_t next = 0;
    while (next < cols.size() || !acc) {
        std::uint64_t bound = 1;
        std::size_t end = next;
        while (end < cols.size() && bound <= std::numeric_limits<std::uint64_t>::max() / q) {
            bound *= q;
            ++end;
        }
        std::vector<std::uint64_t> keys(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t key = 0;
            const std::uint16_t* r = rows_.data() + i * width_;
            for (std::size_t c = next; c < end; ++c) key = key * q + r[cols[c]];
            keys[i] = key;
        }
        Grouping g = group_keys(keys, bound, *this);
        acc = acc ? combine(*acc, g, *this) : std::move(g);
        next = end;
    }
    return std::move(*acc);
}

JointDistribution::Grouping JointDistribution::grouping(const Selection& selection) const {
    return group_columns(columns(selection));
}

std::map<JointDistribution::Row, std::uint64_t> JointDistribution::marginal(const Selection& selection) const {
    const Grouping g = grouping(selection);
    std::map<Row, std::uint64_t> out;
    for (std::size_t k = 0; k < g.counts.size(); ++k) out.emplace(project(g.representative[k], selection), g.counts[k]);
    return out;
}

Sources JointDistribution::sources_of(const Row& r) const {
    Sources out;
    for (std::size_t k = 0; k < source_count(); ++k) {
        const auto first = r.begin() + static_cast<std::ptrdiff_t>(source_offsets_[k]);
        out.emplace_back(first, first + static_cast<std::ptrdiff_t>(source_lengths_[k]));
    }
    return out;
}

std::vector<Symbol> JointDistribution::payload_of(const Row& r, std::size_t encoder) const {
    if (encoder >= encoders()) throw InvalidParameterError("encoder index out of range");
    const auto first = r.begin() + static_cast<std::ptrdiff_t>(payload_offsets_[encoder]);
    return {first, first + static_cast<std::ptrdiff_t>(payload_lengths_[encoder])};
}

double JointDistribution::entropy_bits(const Selection& selection) const {
    return entropy_of(grouping(selection), total_);
}

JointDistribution enumerate(const CodecInstance& codec, const Budget& budget) {
    if (budget.max_outcomes == 0) throw InvalidParameterError("verifier budget must be positive");
    if (budget.timeout.count() <= 0) throw InvalidParameterError("verifier timeout must be positive");
    if (codec.payload_lengths.size() != codec.L) throw InvalidParameterError("codec needs one payload length per encoder");

    const std::uint32_t q = codec.field.order();
    std::size_t source_symbols = 0;
    for (std::size_t len : codec.source_lengths) source_symbols += len;
    std::size_t width = source_symbols;
    for (std::size_t len : codec.payload_lengths) width += len;

    // Learn how many key symbols one encoding draws.
    Sources zeros;
    for (std::size_t len : codec.source_lengths) zeros.emplace_back(len, 0);
    CountingEntropy counter;
    codec.encode(zeros, counter);
    const std::size_t key_symbols = counter.count();

    const std::size_t digits = source_symbols + key_symbols;
    std::uint64_t outcomes = 1;
    for (std::size_t i = 0; i < digits; ++i) {
        if (outcomes > budget.max_outcomes / q)
            throw BudgetExceededError("exhaustive enumeration needs " + std::to_string(q) + "^" + std::to_string(digits) +
                                      " outcomes, budget is " + std::to_string(budget.max_outcomes));
        outcomes *= q;
    }

    unsigned threads = budget.threads ? budget.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, outcomes / 256)));
    const auto deadline = std::chrono::steady_clock::now() + budget.timeout;

    std::vector<std::uint16_t> table(outcomes * width);
    std::vector<std::exception_ptr> errors(threads);
    std::atomic<bool> stop{false};

    auto worker = [&](unsigned t) {
        try {
            const std::uint64_t first = outcomes * t / threads;
            const std::uint64_t last = outcomes * (t + 1) / threads;
            std::vector<Symbol> digit(digits);
            Sources sources = zeros;
            for (std::uint64_t index = first; index < last; ++index) {
                if ((index & 0xFFF) == 0) {
                    if (stop.load()) return;
                    if (std::chrono::steady_clock::now() > deadline)
                        throw BudgetExceededError("exhaustive enumeration exceeded the timeout of " +
                                                  std::to_string(budget.timeout.count()) + " ms");
                }
                std::uint64_t rest = index;
                for (std::size_t d = digits; d-- > 0;) {
                    digit[d] = static_cast<Symbol>(rest % q);
                    rest /= q;
                }
                std::size_t pos = 0;
                for (auto& s : sources) {
                    for (auto& x : s) x = digit[pos++];
                }
                ScriptedEntropy keys(std::vector<Symbol>(digit.begin() + static_cast<std::ptrdiff_t>(source_symbols),
                                                         digit.end()));
                const Payloads payloads = codec.encode(sources, keys);
                if (keys.consumed() != key_symbols)
                    throw InternalError("encoder drew " + std::to_string(keys.consumed()) + " key symbols, expected " +
                                        std::to_string(key_symbols));
                auto out = table.begin() + static_cast<std::ptrdiff_t>(index * width);
                out = std::copy(digit.begin(), digit.begin() + static_cast<std::ptrdiff_t>(source_symbols), out);
                for (std::size_t l = 0; l < codec.L; ++l) {
                    if (payloads.at(l).size() != codec.payload_lengths[l])
                        throw InternalError("encoder " + std::to_string(l + 1) + " emitted an unexpected length");
                    out = std::copy(payloads[l].begin(), payloads[l].end(), out);
                }
            }
        } catch (...) {
            errors[t] = std::current_exception();
            stop.store(true);
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return JointDistribution(codec.field, codec.L, codec.source_lengths, codec.payload_lengths, key_symbols,
                             std::move(table), std::vector<std::uint64_t>(outcomes, 1));
}

SecrecyVerdict check_perfect_secrecy(const JointDistribution& dist, std::span<const std::size_t> tapped) {
    check_indices(tapped, dist.encoders(), "wiretap set");
    const Selection src = all_sources(dist);
    const Selection taps{{}, {tapped.begin(), tapped.end()}};
    const Grouping ps = dist.grouping(src);
    const Grouping px = dist.grouping(taps);
    const Grouping joint = combine(ps, px, dist);
    const auto bad = first_dependent_group(joint, ps, px, dist.total());
    if (!bad) return {true, std::nullopt};
    const std::size_t r = joint.representative[*bad];
    const Rational t(static_cast<long long>(dist.total()));
    Cell cell{dist.project(r, src),
              dist.project(r, taps),
              Rational(static_cast<long long>(joint.counts[*bad])) / t,
              Rational(static_cast<long long>(ps.counts[ps.group[r]])) / t,
              Rational(static_cast<long long>(px.counts[px.group[r]])) / t};
    return {false, std::move(cell)};
}

ReconstructionVerdict check_reconstruction(const JointDistribution& dist, const CodecInstance& codec,
                                           std::span<const std::size_t> receiver) {
    check_indices(receiver, dist.encoders(), "receiver set");
    ReconstructionVerdict v;
    v.expected_sources = codec.recoverable_sources(receiver.size());
    const Selection taps{{}, {receiver.begin(), receiver.end()}};
    const Selection wanted = first_sources(v.expected_sources);
    const Grouping gu = dist.grouping(taps);
    const Grouping gs = dist.grouping(wanted);

    // Outcomes bucketed by the observed payloads: the decoder runs once per
    // distinct observation.
    const std::size_t groups = gu.counts.size();
    std::vector<std::size_t> start(groups + 1, 0);
    for (auto g : gu.group) ++start[g + 1];
    std::partial_sum(start.begin(), start.end(), start.begin());
    std::vector<std::size_t> members(dist.distinct());
    {
        auto fill = start;
        for (std::size_t i = 0; i < dist.distinct(); ++i) members[fill[gu.group[i]]++] = i;
    }

    auto record = [&](std::size_t i, const std::string& failure) {
        v.failures += dist.count(i);
        if (!v.counterexample) v.counterexample = failure;
    };
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t rep = gu.representative[g];
        const auto seen = dist.project(rep, taps);
        std::vector<ssdc::EncoderPayload> observed;
        std::size_t pos = 0;
        for (std::size_t l : receiver) {
            const auto first = seen.begin() + static_cast<std::ptrdiff_t>(pos);
            observed.push_back({l, {first, first + static_cast<std::ptrdiff_t>(codec.payload_lengths[l])}});
            pos += codec.payload_lengths[l];
        }
        std::string failure;
        std::optional<JointDistribution::Row> decoded;
        try {
            const Sources out = codec.decode(observed);
            if (v.expected_sources == 0) {
                failure = "decoder returned output below the access threshold";
            } else if (out.size() != v.expected_sources) {
                failure = "decoder returned " + std::to_string(out.size()) + " sources, expected " +
                          std::to_string(v.expected_sources);
            } else {
                decoded.emplace();
                for (const auto& s : out) decoded->insert(decoded->end(), s.begin(), s.end());
            }
        } catch (const InsufficientSharesError& e) {
            if (v.expected_sources == 0)
                v.refused = true;
            else
                failure = e.what();
        } catch (const Error& e) {
            failure = e.what();
        }
        if (!failure.empty()) {
            for (std::size_t at = start[g]; at < start[g + 1]; ++at) record(members[at], failure);
            continue;
        }
        if (!decoded) continue;
        // Rows sharing the representative's wanted sources share its verdict.
        const bool rep_ok = dist.project(rep, wanted) == *decoded;
        for (std::size_t at = start[g]; at < start[g + 1]; ++at) {
            const std::size_t i = members[at];
            const bool ok = gs.group[i] == gs.group[rep] ? rep_ok : dist.project(i, wanted) == *decoded;
            if (!ok)
                record(i, "decoded " + symbols_to_string(*decoded) + ", sources were " +
                              symbols_to_string(dist.project(i, wanted)));
        }
    }
    v.holds = v.failures == 0 && (v.expected_sources > 0 || v.refused || dist.distinct() == 0);
    return v;
}

EntropyReport conditional_entropy(const JointDistribution& dist, const Selection& target, const Selection& given) {
    const Grouping pt = dist.grouping(target);
    const Grouping pg = dist.grouping(given);
    const Grouping joint = combine(pt, pg, dist);
    EntropyReport r;
    r.bits = entropy_of(joint, dist.total()) - entropy_of(pg, dist.total());
    if (std::abs(r.bits) < kEntropyTolerance) r.bits = 0;
    r.independent = !first_dependent_group(joint, pt, pg, dist.total());
    return r;
}


Prop2Report check_prop2_inequality(const JointDistribution& dist, std::size_t N, std::size_t k,
                                   std::span<const std::size_t> tapped, std::span<const std::size_t> subset) {
    if (k == 0 || k > dist.source_count())
        throw InvalidParameterError("level k=" + std::to_string(k) + " outside 1.." + std::to_string(dist.source_count()));
    if (tapped.size() != N)
        throw InvalidParameterError("wiretap set must have " + std::to_string(N) + " encoders, got " +
                                    std::to_string(tapped.size()));
    if (subset.size() != k)
        throw InvalidParameterError("decoding set must have " + std::to_string(k) + " encoders, got " +
                                    std::to_string(subset.size()));
    check_indices(tapped, dist.encoders(), "wiretap set");
    check_indices(subset, dist.encoders(), "decoding set");
    for (std::size_t a : tapped) {
        if (std::find(subset.begin(), subset.end(), a) != subset.end())
            throw InvalidParameterError("wiretap and decoding sets overlap at encoder " + std::to_string(a + 1));
    }

    Selection d{{}, {subset.begin(), subset.end()}};
    Selection before{{}, {tapped.begin(), tapped.end()}};
    for (std::size_t i = 0; i + 1 < k; ++i) before.sources.push_back(i);
    Selection upto = before;
    upto.sources.push_back(k - 1);

    Prop2Report r;
    r.lhs = conditional_entropy(dist, d, before).bits;
    r.rhs = dist.entropy_bits(Selection{{k - 1}, {}}) + conditional_entropy(dist, d, upto).bits;
    r.slack = r.lhs - r.rhs;
    r.holds = r.slack >= -kEntropyTolerance;
    return r;
}

namespace {

nlohmann::json cell_json(const Cell& c) {
    return {{"sources", c.sources},
            {"shares", c.shares},
            {"joint", to_string(c.joint)},
            {"source_marginal", to_string(c.source_marginal)},
            {"share_marginal", to_string(c.share_marginal)}};
}

}  // namespace

Report run_all(const CodecInstance& codec, const Budget& budget) {
    const JointDistribution dist = enumerate(codec, budget);
    Report report;
    bool pass = true;
    nlohmann::json& j = report.json;
    j["instance"] = codec.description;
    j["field"] = codec.field.spec().name();
    j["L"] = codec.L;
    j["N"] = codec.N;
    j["outcomes"] = dist.total();
    j["key_symbols"] = dist.key_symbols();

    const Selection src = all_sources(dist);
    const double h_source = dist.entropy_bits(src);
    j["source_entropy_bits"] = h_source;

    j["secrecy"] = nlohmann::json::array();
    for (std::size_t size = 0; size <= codec.N; ++size) {
        for (const auto& a : region::subsets(codec.L, size)) {
            const auto v = check_perfect_secrecy(dist, a);
            const auto h = conditional_entropy(dist, src, Selection{{}, a});
            const bool agree = !h.independent || std::abs(h.bits - h_source) < kEntropyTolerance;
            nlohmann::json e{{"A", one_based(a)},
                             {"holds", v.holds},
                             {"conditional_entropy_bits", h.bits},
                             {"independent", h.independent},
                             {"float_agrees", agree}};
            if (v.counterexample) e["counterexample"] = cell_json(*v.counterexample);
            pass = pass && v.holds && agree;
            j["secrecy"].push_back(std::move(e));
        }
    }

    // Sanity direction: a set at the access threshold must leak whatever it
    // can decode.
    j["sanity"] = nlohmann::json::array();
    const std::size_t threshold = codec.access_threshold();
    if (threshold <= codec.L) {
        std::size_t leaked = 0;
        for (std::size_t k = 0; k < codec.recoverable_sources(threshold); ++k) leaked += codec.source_lengths[k];
        if (leaked > 0) {
            for (const auto& a : region::subsets(codec.L, threshold)) {
                const auto v = check_perfect_secrecy(dist, a);
                nlohmann::json e{{"A", one_based(a)}, {"leak_detected", !v.holds}};
                if (v.counterexample) e["counterexample"] = cell_json(*v.counterexample);
                pass = pass && !v.holds;
                j["sanity"].push_back(std::move(e));
            }
        }
    }

    j["reconstruction"] = nlohmann::json::array();
    for (std::size_t size = 1; size <= codec.L; ++size) {
        for (const auto& u : region::subsets(codec.L, size)) {
            const auto v = check_reconstruction(dist, codec, u);
            nlohmann::json e{{"U", one_based(u)},
                             {"expected_sources", v.expected_sources},
                             {"holds", v.holds},
                             {"refused", v.refused},
                             {"failures", v.failures}};
            if (v.counterexample) e["counterexample"] = *v.counterexample;
            pass = pass && v.holds;
            j["reconstruction"].push_back(std::move(e));
        }
    }

    j["converse"] = nlohmann::json::array();
    if (codec.multilevel) {
        for (std::size_t k = 1; k <= dist.source_count(); ++k) {
            for (const auto& a : region::subsets(codec.L, codec.N)) {
                std::vector<std::size_t> rest;
                for (std::size_t l = 0; l < codec.L; ++l) {
                    if (std::find(a.begin(), a.end(), l) == a.end()) rest.push_back(l);
                }
                if (rest.size() < k) continue;
                for (const auto& pick : region::subsets(rest.size(), k)) {
                    std::vector<std::size_t> d;
                    for (std::size_t i : pick) d.push_back(rest[i]);
                    const auto r = check_prop2_inequality(dist, codec.N, k, a, d);
                    pass = pass && r.holds;
                    j["converse"].push_back({{"k", k},
                                             {"A", one_based(a)},
                                             {"D", one_based(d)},
                                             {"lhs_bits", r.lhs},
                                             {"rhs_bits", r.rhs},
                                             {"slack_bits", r.slack},
                                             {"holds", r.holds}});
                }
            }
        }
    }

    j["pass"] = pass;
    report.pass = pass;
    return report;
}

}  // namespace smdc::verify

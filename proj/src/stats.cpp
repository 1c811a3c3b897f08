#include "takagi/stats.hpp"

#include "takagi/errors.hpp"
#include "takagi/humps.hpp"
#include "takagi/levelsets.hpp"
#include "takagi/locals.hpp"
#include "takagi/rng.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace takagi {

namespace {

// Runs body(i) for i in [0, n), splitting the range into contiguous chunks.
template <typename Body>
void parallel_for(std::uint64_t n, unsigned threads, Body&& body)
{
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(n, 256))));
    if (threads <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::uint64_t i = n * t / threads; i < n * (t + 1) / threads; ++i) {
                    body(i);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    pool.clear();
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace

SeriesValue integral_local_count_truncated(std::uint64_t max_order)
{
    auto series = catalan_series(max_order);
    if (series.exact) {
        *series.exact /= 2;
    }
    series.approx /= 2;
    return series;
}

Rational sample_level(const Rational& min_value, const Rational& height, std::uint64_t seed, std::uint64_t index)
{
    CounterRng rng(seed, index);
    Rational y = height * Rational(BigInt(static_cast<unsigned long>(rng.next53()))) * inv_pow2(53);
    y += min_value;
    y.canonicalize();
    return y;
}

McReport average_local_count(const SignSequence& seq, std::uint64_t samples, std::size_t max_order,
                             std::uint64_t seed, unsigned threads)
{
    if (samples < 2) {
        throw DomainError("average_local_count: need at least 2 samples");
    }
    const auto ext = extrema(seq);
    const PrincipalHumpIndex index(seq, max_order);
    std::vector<LocalCount> counts(samples);
    parallel_for(samples, threads, [&](std::uint64_t i) {
        counts[i] = index.count(sample_level(ext.min_value, ext.height, seed, i));
    });

    McReport out;
    out.seed = seed;
    out.truncation_order = max_order;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& c : counts) {
        if (c.boundary) {
            ++out.discarded;
            continue;
        }
        const auto v = static_cast<double>(c.count);
        sum += v;
        sum_sq += v * v;
        ++out.samples;
    }
    if (out.samples < 2) {
        throw DomainError("average_local_count: fewer than 2 usable samples");
    }
    const auto n = static_cast<double>(out.samples);
    out.estimate = sum / n;
    const double variance = std::max(0.0, (sum_sq - n * out.estimate * out.estimate) / (n - 1));
    out.std_error = std::sqrt(variance / n);
    out.analytic_truncated = *integral_local_count_truncated(max_order).exact / ext.height;
    out.analytic_limit = 1 / ext.height;
    const double target = to_double(out.analytic_truncated);
    out.z_score = out.std_error > 0 ? (out.estimate - target) / out.std_error : 0.0;
    return out;
}

CardinalityReport cardinality_histogram(const SignSequence& seq, std::uint64_t samples, std::size_t depth,
                                        std::uint64_t seed, unsigned threads)
{
    if (depth < 5) {
        throw DomainError("cardinality_histogram: depth must be at least 5");
    }
    const auto ext = extrema(seq);
    const std::vector<std::size_t> depths{depth - 4, depth - 2, depth};
    std::vector<std::vector<std::size_t>> counts(samples);
    parallel_for(samples, threads, [&](std::uint64_t i) {
        counts[i] = component_profile(seq, sample_level(ext.min_value, ext.height, seed, i), depths);
    });
    CardinalityReport out;
    out.samples = samples;
    out.seed = seed;
    out.depth = depth;
    for (const auto& c : counts) {
        if (c[0] == c[1] && c[1] == c[2]) {
            ++out.stabilized;
            ++out.histogram[c[2]];
        }
    }
    return out;
}

std::vector<Rational> level_grid(const SignSequence& seq, std::uint64_t grid)
{
    if (grid == 0) {
        throw DomainError("level_grid: grid must be positive");
    }
    const auto ext = extrema(seq);
    std::vector<Rational> out;
    out.reserve(grid);
    const Rational step = ext.height / Rational(BigInt(static_cast<unsigned long>(2 * grid)));
    for (std::uint64_t i = 0; i < grid; ++i) {
        Rational y = ext.min_value + step * BigInt(static_cast<unsigned long>(2 * i + 1));
        y.canonicalize();
        out.push_back(std::move(y));
    }
    return out;
}

std::vector<Rational> banach_profile(const SignSequence& seq, std::span<const std::size_t> depths,
                                     std::uint64_t grid, unsigned threads)
{
    const auto levels = level_grid(seq, grid);
    std::vector<std::vector<std::size_t>> counts(grid);
    parallel_for(grid, threads, [&](std::uint64_t i) { counts[i] = component_profile(seq, levels[i], depths); });
    std::vector<std::uint64_t> totals(depths.size(), 0);
    for (const auto& c : counts) {
        for (std::size_t d = 0; d < depths.size(); ++d) {
            totals[d] += c[d];
        }
    }
    const Rational spacing = extrema(seq).height / Rational(BigInt(static_cast<unsigned long>(grid)));
    std::vector<Rational> out;
    for (auto t : totals) {
        Rational v = spacing * BigInt(static_cast<unsigned long>(t));
        v.canonicalize();
        out.push_back(std::move(v));
    }
    return out;
}

Rational banach_lower_bound(const SignSequence& seq, std::size_t depth, std::uint64_t grid, unsigned threads)
{
    const std::size_t depths[] = {depth};
    return banach_profile(seq, depths, grid, threads).front();
}

} // namespace takagi

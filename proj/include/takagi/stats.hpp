#pragma once

#include "takagi/humps.hpp"
#include "takagi/rational.hpp"
#include "takagi/signs.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace takagi {

/// (1/2) * sum_{m <= M} C_m 4^-m: the integral of the local count over y when
/// humps of order above M are ignored. Exact for M up to kExactSeriesCutoff.
SeriesValue integral_local_count_truncated(std::uint64_t max_order);

/// A sample y = m(f) + h * k / 2^53 with k drawn from stream index of seed.
Rational sample_level(const Rational& min_value, const Rational& height, std::uint64_t seed, std::uint64_t index);

struct McReport {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t discarded = 0;
    std::uint64_t seed = 0;
    std::size_t truncation_order = 0;
    Rational analytic_truncated;
    Rational analytic_limit;
    /// (estimate - analytic_truncated) / std_error.
    double z_score = 0.0;
};

/// Monte Carlo mean of the local level set count over y uniform on the range.
/// Samples hitting a projection endpoint are discarded and counted.
McReport average_local_count(const SignSequence& seq, std::uint64_t samples, std::size_t max_order,
                             std::uint64_t seed, unsigned threads = 1);

struct CardinalityReport {
    std::uint64_t samples = 0;
    std::uint64_t stabilized = 0;
    std::uint64_t seed = 0;
    std::size_t depth = 0;
    /// Component count at the final depth -> number of stabilized samples.
    std::map<std::size_t, std::uint64_t> histogram;

    double stabilized_fraction() const
    {
        return samples == 0 ? 0.0 : static_cast<double>(stabilized) / static_cast<double>(samples);
    }
};

/// Component counts at depths N - 4, N - 2, N for random levels; a sample is
/// stabilized when the three agree.
CardinalityReport cardinality_histogram(const SignSequence& seq, std::uint64_t samples, std::size_t depth,
                                        std::uint64_t seed, unsigned threads = 1);

/// The midpoint grid y_i = m + h (2i + 1) / (2G), i < G.
std::vector<Rational> level_grid(const SignSequence& seq, std::uint64_t grid);

/// sum_i components(y_i, N) * h / G over the midpoint grid.
Rational banach_lower_bound(const SignSequence& seq, std::size_t depth, std::uint64_t grid, unsigned threads = 1);

/// banach_lower_bound at several depths from one pass per grid level.
std::vector<Rational> banach_profile(const SignSequence& seq, std::span<const std::size_t> depths,
                                     std::uint64_t grid, unsigned threads = 1);

} // namespace takagi

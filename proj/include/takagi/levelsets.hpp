#pragma once

#include "takagi/dyadics.hpp"
#include "takagi/eval.hpp"
#include "takagi/rational.hpp"
#include "takagi/signs.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace takagi {

/// Consecutive retained depth-N intervals, by inclusive index range.
struct IndexRun {
    BigInt first;
    BigInt last;

    friend bool operator==(const IndexRun&, const IndexRun&) = default;
};

/// A sound cover of L_f(y) by closed depth-N dyadic intervals, merged into runs.
struct LevelCover {
    Rational target_y;
    std::size_t depth = 0;
    std::vector<IndexRun> runs;
    std::uint64_t retained = 0;

    std::size_t component_count() const { return runs.size(); }
    /// The x-interval [first / 2^N, (last + 1) / 2^N] of a run.
    Enclosure run_interval(std::size_t i) const;
    bool contains(const Rational& x) const;
    /// The cover reflected by x -> 1 - x.
    LevelCover mirrored() const;
};

struct CoverOptions {
    /// Maximum retained intervals at any single depth.
    std::uint64_t max_retained = std::uint64_t{1} << 26;
};

/// Largest supported cover depth; interval indices are held in 128 bits.
inline constexpr std::size_t kMaxCoverDepth = 120;

/// Exact branch-and-bound from the root word: a word is discarded iff y lies
/// outside range_on_interval(word). Ties keep the word. An empty cover certifies
/// L_f(y) is empty.
LevelCover level_cover(const SignSequence& seq, const Rational& y, std::size_t depth, CoverOptions options = {});

/// Per-depth statistics of one branch-and-bound pass.
struct DepthProfile {
    std::vector<std::size_t> depths;
    std::vector<std::size_t> components;
    std::vector<std::uint64_t> retained;
};

DepthProfile depth_profile(const SignSequence& seq, const Rational& y, std::span<const std::size_t> depths,
                           CoverOptions options = {});

/// Component counts at increasing depths.
std::vector<std::size_t> component_profile(const SignSequence& seq, const Rational& y,
                                           std::span<const std::size_t> depths);

struct BoxDimension {
    double slope = 0.0;
    double residual = 0.0;
    std::vector<std::size_t> depths;
    std::vector<std::uint64_t> counts;
};

/// Least-squares slope of log2(retained count) against depth over
/// [first_depth, last_depth]. Throws DomainError on an empty cover or fewer
/// than four depths.
BoxDimension box_dimension_estimate(const SignSequence& seq, const Rational& y, std::size_t first_depth,
                                    std::size_t last_depth);

/// f*: f on the skeleton set X, frozen at f(x0) on each first-generation
/// interval I(x0). Exact when x is dyadic of exponent <= depth or a zero of the
/// walk occurs within depth digits; otherwise the range of f over the depth
/// prefix interval, which contains f*(x).
Enclosure f_star(const SignSequence& seq, const Rational& x, std::size_t depth);

/// f_n*: f_n with every first-generation flat segment of order 2m <= n fixed.
Rational f_star_partial(const SignSequence& seq, const Rational& x, std::size_t n);

struct SkeletonSolution {
    Enclosure x_enclosure;
    std::optional<BinaryWord> hit_balanced;
};

/// Bisection for f*(x) = y on [0, 1/2]. Requires y in [0, 1/2] when r_0 = +1
/// and y in [-1/2, 0] when r_0 = -1 (solved through -f).
SkeletonSolution solve_on_X(const SignSequence& seq, const Rational& y, std::size_t tolerance_exponent);

struct MonotonicityWitness {
    BinaryWord base;
    std::size_t generation = 0;
    DyadicRational x0;
    DyadicRational mid;
    DyadicRational end;
    Rational f_x0;
    Rational f_mid;
    Rational f_end;
};

/// A balanced x0 with I(x0) inside [lo, hi], so that f(x0) = f(x0 + d) while
/// f(x0 + d/2) = f(x0) +- d/2, d = |I(x0)|.
MonotonicityWitness non_monotonicity_witness(const SignSequence& seq, const DyadicRational& lo,
                                             const DyadicRational& hi);

/// Searches balanced words of order <= max_order for f(x0) = y. An empty result
/// only means no witness up to the cutoff.
std::optional<BinaryWord> in_balanced_image(const SignSequence& seq, const Rational& y, std::size_t max_order);

/// Number of cover runs whose open interior, clipped to region, is not inside
/// a single open hole. Exact for levels off the dyadic values of f.
std::size_t components_in_region(const LevelCover& cover, const Enclosure& region,
                                 std::span<const Enclosure> open_holes);

} // namespace takagi

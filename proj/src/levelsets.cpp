#include "takagi/levelsets.hpp"

#include "takagi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace takagi {

namespace {

__extension__ using Index = unsigned __int128;
__extension__ using Wide = __int128;

BigInt to_bigint(Index k)
{
    BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(k >> 64)));
    BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(k)));
    return hi * pow2(64) + lo;
}

// Callers guarantee |v| < 2^126.
Wide to_i128(const BigInt& v)
{
    static_assert(sizeof(mp_limb_t) == 8);
    const auto size = mpz_size(v.get_mpz_t());
    Index mag = 0;
    if (size > 0) {
        mag = mpz_getlimbn(v.get_mpz_t(), 0);
    }
    if (size > 1) {
        mag |= static_cast<Index>(mpz_getlimbn(v.get_mpz_t(), 1)) << 64;
    }
    const auto out = static_cast<Wide>(mag);
    return sgn(v) < 0 ? -out : out;
}

template <class Int>
Int convert(const BigInt& v)
{
    if constexpr (std::is_same_v<Int, BigInt>) {
        return v;
    } else {
        return to_i128(v);
    }
}

// One depth-first branch-and-bound pass to the deepest requested depth,
// recording runs at each requested depth. Words are visited in increasing
// index order at every depth, so runs close in order.
template <class Int>
class CoverSearch {
public:
    CoverSearch(const SignSequence& seq, const ShiftExtremaTable& table, const Rational& y,
                std::span<const std::size_t> depths, bool keep_runs, CoverOptions options)
        : seq_(seq), table_(table), options_(options), keep_runs_(keep_runs)
    {
        max_depth_ = depths.empty() ? 0 : *std::max_element(depths.begin(), depths.end());
        tracked_.assign(max_depth_ + 1, -1);
        for (std::size_t i = 0; i < depths.size(); ++i) {
            tracked_[depths[i]] = static_cast<int>(i);
        }
        stats_.resize(depths.size());
        for (std::size_t n = 0; n < table.size(); ++n) {
            const auto& ex = table.at(n);
            lo_num_.push_back(convert<Int>(ex.min_value.get_num()));
            lo_den_.push_back(convert<Int>(ex.min_value.get_den()));
            hi_num_.push_back(convert<Int>(ex.max_value.get_num()));
            hi_den_.push_back(convert<Int>(ex.max_value.get_den()));
        }
        q_ = convert<Int>(y.get_den());
        for (std::size_t n = 0; n <= max_depth_; ++n) {
            scaled_p_.push_back(convert<Int>(y.get_num() * pow2(n)));
        }
    }

    void run() { visit(0, Int(0), 0, 0); }

    struct DepthStats {
        std::size_t components = 0;
        std::uint64_t retained = 0;
        Index last = 0;
        std::vector<IndexRun> runs;
        Index run_first = 0;
    };

    std::vector<DepthStats>& stats() { return stats_; }

    void finish()
    {
        for (auto& s : stats_) {
            if (keep_runs_ && s.retained > 0) {
                s.runs.push_back({to_bigint(s.run_first), to_bigint(s.last)});
            }
        }
    }

private:
    bool admits(std::size_t n, const Int& g, std::int64_t slope) const
    {
        const auto c = table_.index_of(n);
        const Int other = g + Int(slope);
        const Int& low = slope < 0 ? other : g;
        const Int& high = slope < 0 ? g : other;
        const Int& p = scaled_p_[n];
        if ((low * lo_den_[c] + lo_num_[c]) * q_ > p * lo_den_[c]) {
            return false;
        }
        return p * hi_den_[c] <= (high * hi_den_[c] + hi_num_[c]) * q_;
    }

    void record(std::size_t n, Index k)
    {
        const auto slot = tracked_[n];
        if (slot < 0) {
            return;
        }
        auto& s = stats_[static_cast<std::size_t>(slot)];
        if (s.retained == 0) {
            s.components = 1;
            s.run_first = k;
        } else if (k != s.last + 1) {
            ++s.components;
            if (keep_runs_) {
                s.runs.push_back({to_bigint(s.run_first), to_bigint(s.last)});
            }
            s.run_first = k;
        }
        s.last = k;
        if (++s.retained > options_.max_retained) {
            throw BudgetError("level cover at depth " + std::to_string(n) + " exceeds " +
                              std::to_string(options_.max_retained) + " retained intervals");
        }
    }

    void visit(std::size_t n, const Int& g, std::int64_t slope, Index k)
    {
        if (!admits(n, g, slope)) {
            return;
        }
        record(n, k);
        if (n == max_depth_) {
            return;
        }
        const auto r = seq_.at(n);
        visit(n + 1, Int(2) * g, slope + r, 2 * k);
        visit(n + 1, Int(2) * g + Int(slope + r), slope - r, 2 * k + 1);
    }

    const SignSequence& seq_;
    const ShiftExtremaTable& table_;
    CoverOptions options_;
    bool keep_runs_;
    std::size_t max_depth_ = 0;
    std::vector<int> tracked_;
    std::vector<DepthStats> stats_;
    std::vector<Int> lo_num_, lo_den_, hi_num_, hi_den_;
    Int q_;
    std::vector<Int> scaled_p_;
};

std::size_t bit_length(const BigInt& v)
{
    return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

// Whether every product formed in CoverSearch::admits fits in 127 bits.
bool fits_fast_path(const ShiftExtremaTable& table, const Rational& y, std::size_t max_depth)
{
    std::size_t constant_bits = 0;
    for (std::size_t n = 0; n < table.size(); ++n) {
        const auto& ex = table.at(n);
        for (const auto* v : {&ex.min_value, &ex.max_value}) {
            constant_bits = std::max({constant_bits, bit_length(abs(v->get_num())), bit_length(v->get_den())});
        }
    }
    const auto y_bits = std::max(bit_length(abs(y.get_num())), bit_length(y.get_den()));
    if (constant_bits > 62 || y_bits > 62) {
        return false;
    }
    return max_depth + 3 + constant_bits + y_bits <= 124;
}

template <class Int>
DepthProfile profile_with(const SignSequence& seq, const ShiftExtremaTable& table, const Rational& y,
                          std::span<const std::size_t> depths, CoverOptions options)
{
    CoverSearch<Int> search(seq, table, y, depths, false, options);
    search.run();
    DepthProfile out;
    out.depths.assign(depths.begin(), depths.end());
    for (const auto& s : search.stats()) {
        out.components.push_back(s.components);
        out.retained.push_back(s.retained);
    }
    return out;
}

template <class Int>
LevelCover cover_with(const SignSequence& seq, const ShiftExtremaTable& table, const Rational& y,
                      std::size_t depth, CoverOptions options)
{
    const std::size_t depths[] = {depth};
    CoverSearch<Int> search(seq, table, y, depths, true, options);
    search.run();
    search.finish();
    LevelCover out;
    out.target_y = y;
    out.depth = depth;
    out.retained = search.stats()[0].retained;
    out.runs = std::move(search.stats()[0].runs);
    return out;
}

void check_depth(std::size_t depth)
{
    if (depth > kMaxCoverDepth) {
        throw DomainError("cover depth " + std::to_string(depth) + " exceeds the supported maximum " +
                          std::to_string(kMaxCoverDepth));
    }
}

} // namespace

Enclosure LevelCover::run_interval(std::size_t i) const
{
    Rational lo(runs[i].first, pow2(depth));
    Rational hi(runs[i].last + 1, pow2(depth));
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

bool LevelCover::contains(const Rational& x) const
{
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (run_interval(i).contains(x)) {
            return true;
        }
    }
    return false;
}

LevelCover LevelCover::mirrored() const
{
    LevelCover out = *this;
    const BigInt top = pow2(depth) - 1;
    out.runs.clear();
    for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
        out.runs.push_back({top - it->last, top - it->first});
    }
    return out;
}

LevelCover level_cover(const SignSequence& seq, const Rational& y, std::size_t depth, CoverOptions options)
{
    if (depth < 1) {
        throw DomainError("level_cover: depth must be at least 1");
    }
    check_depth(depth);
    const ShiftExtremaTable table(seq);
    if (fits_fast_path(table, y, depth)) {
        return cover_with<Wide>(seq, table, y, depth, options);
    }
    return cover_with<BigInt>(seq, table, y, depth, options);
}

DepthProfile depth_profile(const SignSequence& seq, const Rational& y, std::span<const std::size_t> depths,
                           CoverOptions options)
{
    if (depths.empty()) {
        return {};
    }
    const auto deepest = *std::max_element(depths.begin(), depths.end());
    check_depth(deepest);
    const ShiftExtremaTable table(seq);
    if (fits_fast_path(table, y, deepest)) {
        return profile_with<Wide>(seq, table, y, depths, options);
    }
    return profile_with<BigInt>(seq, table, y, depths, options);
}

std::vector<std::size_t> component_profile(const SignSequence& seq, const Rational& y,
                                           std::span<const std::size_t> depths)
{
    return depth_profile(seq, y, depths).components;
}

BoxDimension box_dimension_estimate(const SignSequence& seq, const Rational& y, std::size_t first_depth,
                                    std::size_t last_depth)
{
    if (last_depth < first_depth + 3) {
        throw DomainError("box_dimension_estimate: need at least four depths");
    }
    std::vector<std::size_t> depths;
    for (auto n = first_depth; n <= last_depth; ++n) {
        depths.push_back(n);
    }
    const auto profile = depth_profile(seq, y, depths);
    BoxDimension out;
    out.depths = depths;
    out.counts = profile.retained;
    const auto k = static_cast<double>(depths.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> ys;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        if (out.counts[i] == 0) {
            throw DomainError("box_dimension_estimate: empty cover at depth " + std::to_string(depths[i]));
        }
        const auto x = static_cast<double>(depths[i]);
        const auto v = std::log2(static_cast<double>(out.counts[i]));
        ys.push_back(v);
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
    }
    out.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    const auto intercept = (sy - out.slope * sx) / k;
    double ss = 0;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        const auto e = ys[i] - (intercept + out.slope * static_cast<double>(depths[i]));
        ss += e * e;
    }
    out.residual = std::sqrt(ss / k);
    return out;
}

namespace {

std::vector<std::uint8_t> leading_digits(const Rational& x, std::size_t count)
{
    return expand(x, count).bits();
}

struct StarScan {
    WordState state;
    std::optional<BinaryWord> balanced;
};

// Follows the digits until the walk first returns to zero.
StarScan scan_to_first_zero(const SignSequence& seq, const std::vector<std::uint8_t>& bits)
{
    StarScan out;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        out.state = out.state.child(seq, bits[j]);
        if (out.state.slope == 0) {
            out.balanced = BinaryWord({bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(j + 1)});
            return out;
        }
    }
    return out;
}

void check_unit(const Rational& x, const char* who)
{
    if (x < 0 || x > 1) {
        throw DomainError(std::string(who) + ": x must lie in [0, 1], got " + to_string(x));
    }
}

// f* at a dyadic point, with the first-generation base when x lies in some I(x0).
StarScan star_at_dyadic(const SignSequence& seq, const DyadicRational& x, Rational& value)
{
    if (x == DyadicRational(1, 0)) {
        value = 0;
        return {};
    }
    const auto word = digits(x, x.exponent());
    auto scan = scan_to_first_zero(seq, word.bits());
    value = scan.balanced ? scan.state.left_value() : eval_dyadic(seq, x);
    return scan;
}

} // namespace

Enclosure f_star(const SignSequence& seq, const Rational& x, std::size_t depth)
{
    check_unit(x, "f_star");
    if (x == 1) {
        return {0, 0};
    }
    if (is_dyadic(x)) {
        const auto dx = DyadicRational::from_rational(x);
        if (dx.exponent() <= depth) {
            Rational value;
            star_at_dyadic(seq, dx, value);
            return {value, value};
        }
    }
    const auto bits = leading_digits(x, depth);
    const auto scan = scan_to_first_zero(seq, bits);
    if (scan.balanced) {
        const auto v = scan.state.left_value();
        return {v, v};
    }
    return range_on_interval(seq, BinaryWord(bits));
}

Rational f_star_partial(const SignSequence& seq, const Rational& x, std::size_t n)
{
    check_unit(x, "f_star_partial");
    if (x == 1) {
        return eval_partial(seq, x, n);
    }
    const auto scan = scan_to_first_zero(seq, leading_digits(x, n));
    if (scan.balanced) {
        return scan.state.left_value();
    }
    return eval_partial(seq, x, n);
}

SkeletonSolution solve_on_X(const SignSequence& seq, const Rational& y, std::size_t tolerance_exponent)
{
    if (seq.at(0) < 0) {
        return solve_on_X(seq.negated(), -y, tolerance_exponent);
    }
    if (y < 0 || y > Rational(1, 2)) {
        throw DomainError("solve_on_X: y must lie in [0, 1/2] for r_0 = +1, got " + to_string(y));
    }
    if (tolerance_exponent < 1) {
        throw DomainError("solve_on_X: tolerance exponent must be at least 1");
    }
    DyadicRational lo(0, 0);
    DyadicRational hi(1, 1);
    const DyadicRational half_step(1, 1);
    SkeletonSolution out;
    for (std::size_t width = 1; width < tolerance_exponent; ++width) {
        const auto mid = (lo + hi) * half_step;
        Rational value;
        const auto scan = star_at_dyadic(seq, mid, value);
        if (value == y) {
            const auto point = scan.balanced ? scan.balanced->value() : mid;
            out.hit_balanced = scan.balanced;
            out.x_enclosure = {point.to_rational(), point.to_rational()};
            return out;
        }
        if (value < y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.x_enclosure = {lo.to_rational(), hi.to_rational()};
    return out;
}

MonotonicityWitness non_monotonicity_witness(const SignSequence& seq, const DyadicRational& lo,
                                             const DyadicRational& hi)
{
    const DyadicRational zero(0, 0);
    const DyadicRational one(1, 0);
    if (lo < zero || hi > one || !(lo < hi)) {
        throw DomainError("non_monotonicity_witness: need 0 <= lo < hi <= 1");
    }
    const auto diam = (hi - lo).to_rational();
    std::size_t n = 1;
    while (!(diam > 2 * inv_pow2(2 * n))) {
        ++n;
    }
    // Largest aligned dyadic interval inside [lo, hi].
    std::size_t d = 0;
    BigInt k;
    for (;; ++d) {
        const Rational scaled = lo.to_rational() * Rational(pow2(d));
        k = floor(scaled);
        if (Rational(k) != scaled) {
            k += 1;
        }
        if (Rational(k + 1, pow2(d)) <= hi.to_rational()) {
            break;
        }
    }
    auto bits = d == 0 ? std::vector<std::uint8_t>{} : digits(DyadicRational(k, d), d).bits();
    WordState state;
    std::size_t zeros = 0;
    for (auto b : bits) {
        state = state.child(seq, b);
        zeros += state.slope == 0 ? 1 : 0;
    }
    auto step_toward = [&](std::int64_t direction) {
        const auto r = seq.at(state.depth);
        const std::uint8_t bit = r == direction ? 0 : 1;
        bits.push_back(bit);
        state = state.child(seq, bit);
    };
    while (state.slope != 0) {
        step_toward(state.slope > 0 ? -1 : 1);
        if (state.slope == 0) {
            ++zeros;
        }
    }
    n = std::max(n, zeros);
    while (zeros < n) {
        step_toward(1);
        step_toward(-1);
        ++zeros;
    }
    MonotonicityWitness w;
    w.base = BinaryWord(bits);
    w.generation = zeros;
    w.x0 = w.base.value();
    const auto m = bits.size() / 2;
    w.end = w.x0 + DyadicRational(1, 2 * m);
    w.mid = w.x0 + DyadicRational(1, 2 * m + 1);
    w.f_x0 = eval_dyadic(seq, w.x0);
    w.f_mid = eval_dyadic(seq, w.mid);
    w.f_end = eval_dyadic(seq, w.end);
    const Rational gap = w.f_mid - w.f_x0;
    if (w.f_x0 != w.f_end || abs(gap) != inv_pow2(2 * m + 1)) {
        throw std::logic_error("non_monotonicity_witness: verification failed for base " + w.base.to_string());
    }
    return w;
}

namespace {

struct BalancedSearch {
    const SignSequence& seq;
    const ShiftExtremaTable& table;
    const Rational& y;
    std::size_t max_depth;
    std::vector<std::uint8_t> bits;
    std::optional<BinaryWord> best;

    bool admits(const WordState& s) const
    {
        const auto& ex = table.at(s.depth);
        const auto a = s.left_value();
        const auto b = s.right_value();
        const auto scale = inv_pow2(s.depth);
        return std::min(a, b) + scale * ex.min_value <= y && y <= std::max(a, b) + scale * ex.max_value;
    }

    void visit(const WordState& s)
    {
        if (best && best->depth() <= s.depth) {
            return;
        }
        if (!admits(s)) {
            return;
        }
        if (s.slope == 0 && s.left_value() == y) {
            best = BinaryWord(bits);
            return;
        }
        if (s.depth == max_depth) {
            return;
        }
        const auto remaining = static_cast<std::int64_t>(max_depth - s.depth) - 1;
        for (std::uint8_t bit = 0; bit <= 1; ++bit) {
            const auto next = s.child(seq, bit);
            if (std::abs(next.slope) > remaining) {
                continue;
            }
            bits.push_back(bit);
            visit(next);
            bits.pop_back();
        }
    }
};

} // namespace

std::optional<BinaryWord> in_balanced_image(const SignSequence& seq, const Rational& y, std::size_t max_order)
{
    const ShiftExtremaTable table(seq);
    BalancedSearch search{seq, table, y, 2 * max_order, {}, std::nullopt};
    search.visit(WordState{});
    return search.best;
}

std::size_t components_in_region(const LevelCover& cover, const Enclosure& region,
                                 std::span<const Enclosure> open_holes)
{
    std::vector<Enclosure> holes(open_holes.begin(), open_holes.end());
    std::sort(holes.begin(), holes.end(), [](const Enclosure& a, const Enclosure& b) { return a.lo < b.lo; });
    std::size_t count = 0;
    for (std::size_t i = 0; i < cover.runs.size(); ++i) {
        const auto run = cover.run_interval(i);
        const Rational lo = std::max(run.lo, region.lo);
        const Rational hi = std::min(run.hi, region.hi);
        if (lo > hi) {
            continue;
        }
        // Holes have disjoint interiors, so only the last one starting at or
        // before lo can contain (lo, hi).
        auto it = std::upper_bound(holes.begin(), holes.end(), lo,
                                   [](const Rational& v, const Enclosure& h) { return v < h.lo; });
        bool swallowed = false;
        if (it != holes.begin()) {
            swallowed = hi <= std::prev(it)->hi && lo < hi;
        }
        count += swallowed ? 0 : 1;
    }
    return count;
}

} // namespace takagi

#include "morsedc/chaos.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "morsedc/constructions.hpp"
#include "morsedc/errors.hpp"

namespace morsedc {

std::vector<Rational> default_delta_grid() {
    std::vector<Rational> grid;
    for (unsigned l = 1; l <= 8; ++l) grid.push_back(Rational::pow2_inv(l));
    for (unsigned r = 1; r <= 8; ++r) grid.push_back(Rational::one_minus_pow2_inv(r));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<Rational> parse_delta_grid(const std::string& text) {
    std::vector<Rational> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Rational r = Rational::parse(item);
        if (r.num == 0 || r > Rational::one())
            throw std::invalid_argument("delta grid values must lie in (0, 1]");
        grid.push_back(r);
    }
    if (grid.empty()) throw std::invalid_argument("empty delta grid");
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

void WindowAggregate::merge_from(const WindowAggregate& o) {
    for (size_t d = 0; d < lower.size(); ++d) {
        lower[d] += o.lower[d];
        upper[d] += o.upper[d];
    }
    // *_at == 0 marks an aggregate that has seen no k yet (k is 1-based)
    if (o.min_max_at != 0) {
        if (min_max_at == 0 || o.min_max_num < min_max_num) {
            min_max_num = o.min_max_num;
            min_max_at = o.min_max_at;
        } else if (o.min_max_num == min_max_num && o.min_max_at < min_max_at) {
            min_max_at = o.min_max_at;
        }
    }
    if (o.max_min_at != 0) {
        if (max_min_at == 0 || o.max_min_num > max_min_num) {
            max_min_num = o.max_min_num;
            max_min_at = o.max_min_at;
        } else if (o.max_min_num == max_min_num && o.max_min_at < max_min_at) {
            max_min_at = o.max_min_at;
        }
    }
}

namespace {

// conservative classification thresholds on the 2^-L lattice: A = ceil(d*2^L)
struct DeltaThreshold {
    unsigned __int128 a;
};

std::vector<DeltaThreshold> make_thresholds(const std::vector<Rational>& grid, int precision) {
    std::vector<DeltaThreshold> t;
    t.reserve(grid.size());
    for (const auto& d : grid) {
        unsigned __int128 num = (unsigned __int128)d.num << precision;
        t.push_back({(num + d.den - 1) / d.den});
    }
    return t;
}

inline void tally(CountTriple& c, uint64_t num, const DeltaThreshold& t) {
    if (num >= t.a)
        ++c.at_least;
    else if (num + 1 < t.a)
        ++c.below;
    else
        ++c.indeterminate;
}

// Sliding pairwise distance numerators over k in [k_from, k_to]: priming costs
// L symbol queries per point pair, each further k costs one query per point.
struct SlidingPair {
    const PointImpl* u;
    const PointImpl* v;
    uint64_t num = 0;
};

WindowAggregate sweep_range(const std::vector<const PointImpl*>& impls, uint64_t k_from,
                            uint64_t k_to, const std::vector<DeltaThreshold>& thresholds,
                            int precision, size_t n_deltas) {
    WindowAggregate agg;
    agg.k_from = k_from;
    agg.k_to = k_to;
    agg.lower.assign(n_deltas, {});
    agg.upper.assign(n_deltas, {});

    size_t n = impls.size();
    std::vector<SlidingPair> pairs;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) pairs.push_back({impls[i], impls[j], 0});

    const uint64_t mask = (uint64_t(1) << precision) - 1;  // precision <= 62
    // prime at k_from
    std::vector<uint8_t> symbols(n);
    for (auto& p : pairs)
        p.num = distance_numerator_at(*p.u, *p.v, k_from, k_from, precision);

    for (uint64_t k = k_from;; ++k) {
        uint64_t minn = UINT64_MAX, maxn = 0;
        for (const auto& p : pairs) {
            minn = std::min(minn, p.num);
            maxn = std::max(maxn, p.num);
        }
        for (size_t d = 0; d < n_deltas; ++d) {
            tally(agg.lower[d], minn, thresholds[d]);
            tally(agg.upper[d], maxn, thresholds[d]);
        }
        if (maxn < agg.min_max_num) {
            agg.min_max_num = maxn;
            agg.min_max_at = k;
        }
        if (minn > agg.max_min_num || agg.max_min_at == 0) {
            agg.max_min_num = minn;
            agg.max_min_at = k;
        }
        if (k == k_to) break;
        // slide every pair window one step: new rightmost symbol is k+1+L
        uint64_t pos = k + 1 + uint64_t(precision);
        for (size_t i = 0; i < n; ++i) symbols[i] = impls[i]->symbol(pos);
        size_t pi = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j, ++pi)
                pairs[pi].num = ((pairs[pi].num << 1) & mask) | uint64_t(symbols[i] != symbols[j]);
    }
    return agg;
}

}  // namespace

std::vector<WindowAggregate> sweep_tuple(const std::vector<SymbolicPoint>& points,
                                         const std::vector<uint64_t>& checkpoints,
                                         const std::vector<Rational>& delta_grid, int precision,
                                         int workers) {
    if (points.size() < 2) throw std::invalid_argument("sweep: need at least two points");
    if (precision < 1 || precision > kMaxPrecision)
        throw CapacityError("sweep: precision out of range");
    std::set<std::string> descriptors;
    for (const auto& p : points)
        if (!descriptors.insert(p.descriptor()).second)
            throw std::invalid_argument("sweep: duplicate descriptor (diagonal tuple): " +
                                        p.descriptor());
    if (checkpoints.empty()) throw std::invalid_argument("sweep: empty checkpoint list");
    for (size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 2) throw std::invalid_argument("sweep: checkpoints must be >= 2");
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("sweep: checkpoints must be strictly increasing");
    }
    if (workers < 1) throw std::invalid_argument("sweep: workers must be >= 1");

    // preflight: every point must be evaluable through the last window
    uint64_t last_index = (checkpoints.back() - 1) + uint64_t(precision);
    for (const auto& p : points) (void)p.symbol_at(last_index);

    std::vector<const PointImpl*> impls;
    for (const auto& p : points) impls.push_back(p.impl());
    auto thresholds = make_thresholds(delta_grid, precision);

    // static chunk list, windows never straddled
    constexpr uint64_t kChunk = 1 << 13;
    struct Chunk {
        size_t window;
        uint64_t from, to;
    };
    std::vector<Chunk> chunks;
    uint64_t prev = 1;
    for (size_t w = 0; w < checkpoints.size(); ++w) {
        uint64_t from = prev, to = checkpoints[w] - 1;
        for (uint64_t s = from; s <= to; s += kChunk)
            chunks.push_back({w, s, std::min(to, s + kChunk - 1)});
        prev = checkpoints[w];
    }

    std::vector<WindowAggregate> chunk_results(chunks.size());
    std::atomic<size_t> next{0};
    auto worker_fn = [&] {
        for (;;) {
            size_t c = next.fetch_add(1);
            if (c >= chunks.size()) return;
            chunk_results[c] = sweep_range(impls, chunks[c].from, chunks[c].to, thresholds,
                                           precision, delta_grid.size());
        }
    };
    if (workers == 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker_fn);
        for (auto& t : pool) t.join();
    }

    // deterministic reduce: chunk order is fixed, merging is order-free anyway
    std::vector<WindowAggregate> windows(checkpoints.size());
    prev = 1;
    for (size_t w = 0; w < checkpoints.size(); ++w) {
        windows[w].k_from = prev;
        windows[w].k_to = checkpoints[w] - 1;
        windows[w].lower.assign(delta_grid.size(), {});
        windows[w].upper.assign(delta_grid.size(), {});
        prev = checkpoints[w];
    }
    for (size_t c = 0; c < chunks.size(); ++c) windows[chunks[c].window].merge_from(chunk_results[c]);
    return windows;
}

DistributionEstimate estimate_df(const std::vector<SymbolicPoint>& points,
                                 const std::vector<Rational>& delta_grid, uint64_t horizon,
                                 int precision, int workers) {
    if (horizon < 2) throw std::invalid_argument("estimate_df: horizon must be >= 2 (m-1 >= 1)");
    auto windows = sweep_tuple(points, {horizon}, delta_grid, precision, workers);
    DistributionEstimate e;
    e.horizon = horizon;
    e.precision = precision;
    e.deltas = delta_grid;
    e.lower = std::move(windows[0].lower);
    e.upper = std::move(windows[0].upper);
    return e;
}

const char* tuple_class_name(TupleClass c) {
    switch (c) {
        case TupleClass::ScrambledEvidence: return "scrambled-evidence";
        case TupleClass::Cond1Fails: return "not-scrambled:condition1-fails";
        case TupleClass::Cond2Fails: return "not-scrambled:condition2-fails";
        case TupleClass::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// value_num / 2^L <= p/q
bool lattice_le(uint64_t num, int precision, const Rational& r) {
    return (unsigned __int128)num * r.den <= ((unsigned __int128)r.num << precision);
}
// value_num / 2^L >= p/q
bool lattice_ge(uint64_t num, int precision, const Rational& r) {
    return (unsigned __int128)num * r.den >= ((unsigned __int128)r.num << precision);
}

}  // namespace

TupleVerdict classify_tuple(const std::vector<SymbolicPoint>& points,
                            const ClassifyParams& params) {
    TupleVerdict v;
    for (const auto& p : points) v.descriptors.push_back(p.descriptor());
    v.checkpoints = params.checkpoints;
    v.precision = params.precision;
    v.smallness = params.effective_smallness();
    v.positivity_floor = params.positivity_floor;
    v.deltas = params.delta_grid;
    v.windows =
        sweep_tuple(points, params.checkpoints, params.delta_grid, params.precision, params.workers);

    size_t W = v.windows.size();
    v.cumulative_lower.resize(W);
    v.cumulative_upper.resize(W);
    v.liminf_running_num.resize(W);
    v.liminf_running_at.resize(W);
    std::vector<CountTriple> cum_lower(v.deltas.size()), cum_upper(v.deltas.size());
    uint64_t run_num = UINT64_MAX, run_at = 0;
    for (size_t w = 0; w < W; ++w) {
        for (size_t d = 0; d < v.deltas.size(); ++d) {
            cum_lower[d] += v.windows[w].lower[d];
            cum_upper[d] += v.windows[w].upper[d];
        }
        v.cumulative_lower[w] = cum_lower;
        v.cumulative_upper[w] = cum_upper;
        if (v.windows[w].min_max_num < run_num) {
            run_num = v.windows[w].min_max_num;
            run_at = v.windows[w].min_max_at;
        }
        v.liminf_running_num[w] = run_num;
        v.liminf_running_at[w] = run_at;
    }

    size_t tail_begin = W >= 2 ? 1 : 0;
    v.liminf_reaches_threshold =
        lattice_le(v.liminf_running_num.back() + 1, v.precision, v.smallness);
    v.tail_spikes_above_floor = true;
    v.tail_stays_below_threshold = true;
    for (size_t w = tail_begin; w < W; ++w) {
        if (!lattice_ge(v.windows[w].max_min_num, v.precision, v.positivity_floor))
            v.tail_spikes_above_floor = false;
        if (!lattice_le(v.windows[w].max_min_num + 1, v.precision, v.smallness))
            v.tail_stays_below_threshold = false;
    }
    v.positive_floor_exhibited = true;
    for (const auto& w : v.windows)
        if (w.min_max_num == 0) v.positive_floor_exhibited = false;

    if (v.liminf_reaches_threshold && v.tail_spikes_above_floor)
        v.classification = TupleClass::ScrambledEvidence;
    else if (v.tail_stays_below_threshold)
        v.classification = TupleClass::Cond2Fails;
    else if (v.positive_floor_exhibited)
        v.classification = TupleClass::Cond1Fails;
    else
        v.classification = TupleClass::Inconclusive;
    return v;
}

DistalitySweep shifted_pair_distality(const SymbolicPoint& u, const SymbolicPoint& v, uint64_t r,
                                      uint64_t horizon, int precision) {
    if (r == 0) throw std::invalid_argument("shifted_pair_distality: r must be positive");
    DistalitySweep s;
    s.r = r;
    s.horizon = horizon;
    if (precision == 0) {
        if (14 * r > uint64_t(kMaxPrecision))
            throw CapacityError("shifted_pair_distality: 14r exceeds max precision; pass r <= 4");
        precision = int(14 * r);
    }
    if (precision < 1 || precision > kMaxPrecision)
        throw CapacityError("shifted_pair_distality: precision out of range");
    s.precision = precision;
    s.floor = Rational(1, uint64_t(1) << std::min<uint64_t>(14 * r, 62));

    auto structured = [](const SymbolicPoint& p) {
        return block_structure(p).has_value() || p.descriptor() == "morse";
    };
    s.applicable = structured(u) && structured(v);

    // preflight the largest index
    (void)u.symbol_at(horizon + uint64_t(precision));
    (void)v.symbol_at(horizon + r + uint64_t(precision));

    const PointImpl& ui = *u.impl();
    const PointImpl& vi = *v.impl();
    const uint64_t mask = (uint64_t(1) << precision) - 1;
    uint64_t num = distance_numerator_at(ui, vi, 1, 1 + r, precision);
    s.min_num = num;
    s.min_at = 1;
    for (uint64_t k = 2; k <= horizon; ++k) {
        uint64_t pos = k + uint64_t(precision);
        num = ((num << 1) & mask) | uint64_t(ui.symbol(pos) != vi.symbol(pos + r));
        if (num < s.min_num) {
            s.min_num = num;
            s.min_at = k;
        }
    }
    // floor certified when the truncated value already reaches 2^-14r
    s.floor_ok = (unsigned __int128)s.min_num * s.floor.den >=
                 ((unsigned __int128)s.floor.num << precision);
    return s;
}

}  // namespace morsedc

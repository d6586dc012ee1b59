#pragma once

#include <cstdint>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

#include "geopulse/analytics.hpp"
#include "geopulse/corpus.hpp"
#include "geopulse/ethnic.hpp"
#include "geopulse/geo.hpp"
#include "geopulse/sentiment.hpp"

namespace geopulse {

// Immutable resources shared by every attribution worker.
struct PipelineContext {
    const StateGazetteer* states = nullptr;
    const ProvinceGazetteer* provinces = nullptr;
    const StopList* stoplist = nullptr;
    const Lexicon* lexicon = nullptr;
    const SurnameList* surnames = nullptr;
    SurnameMatchMode surname_mode = SurnameMatchMode::Segment;
};

struct AttributionStats {
    std::size_t input = 0;
    std::size_t stopped = 0;       // text hit a stop-list phrase
    std::size_t unattributed = 0;  // no state matched the place
    std::size_t attributed = 0;
};

// Applies fn to every item; the output order matches the input order
// regardless of thread count, so downstream results never depend on
// scheduling.
template <typename In, typename F>
auto parallel_map(std::span<const In> items, unsigned threads, F&& fn)
    -> std::vector<std::invoke_result_t<F&, const In&>> {
    using Out = std::invoke_result_t<F&, const In&>;
    std::vector<Out> out(items.size());
    const std::size_t n = items.size();
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(items[i]);
        return out;
    }
    const unsigned workers_n =
        unsigned(std::min<std::size_t>(threads, n));
    std::vector<std::thread> workers;
    workers.reserve(workers_n);
    for (unsigned w = 0; w < workers_n; ++w) {
        const std::size_t lo = n * w / workers_n;
        const std::size_t hi = n * (w + 1) / workers_n;
        workers.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = fn(items[i]);
        });
    }
    for (auto& t : workers) t.join();
    return out;
}

// Full per-record attribution: stop-list screen, state + province
// attribution, polarity, ethnicity flag, and regression features. Records
// that hit the stop list or match no state are dropped and counted.
std::vector<AttributedTweet> attribute_corpus(
    std::span<const TweetRecord> records, const PipelineContext& ctx,
    unsigned threads, AttributionStats* stats = nullptr);

// Keeps records whose created_at civil day lies in [first_day, last_day].
std::vector<TweetRecord> filter_window(std::vector<TweetRecord> records,
                                       std::int64_t first_day,
                                       std::int64_t last_day);

}  // namespace geopulse

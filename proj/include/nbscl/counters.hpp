#pragma once

#include <cstdint>

namespace nbscl {

// Instrumentation counters for decoding complexity measurements.
//
// field_ops counts GF(2^r) additions, multiplications and inversions.
// flops counts real additions, comparisons, multiplications and
// transcendental evaluations, one each. The check-node LLR combination
// (the f-function) is a two-argument transcendental kernel and counts as a
// single evaluation; the g-function is a single addition.
struct OpCounters {
    std::uint64_t field_ops = 0;
    std::uint64_t flops = 0;
    std::uint64_t compares = 0; // comparison subset of flops, for sorter diagnostics

    void reset() { field_ops = flops = compares = 0; }
};

namespace detail {
inline thread_local OpCounters* tl_active_counters = nullptr;
}

inline OpCounters* active_counters() noexcept { return detail::tl_active_counters; }

inline void add_field_ops(std::uint64_t n = 1) noexcept {
    if (OpCounters* c = detail::tl_active_counters) c->field_ops += n;
}

inline void add_flops(std::uint64_t n = 1) noexcept {
    if (OpCounters* c = detail::tl_active_counters) c->flops += n;
}

inline void add_compares(std::uint64_t n = 1) noexcept {
    if (OpCounters* c = detail::tl_active_counters) {
        c->flops += n;
        c->compares += n;
    }
}

// Activates a counter set on the current thread for the lifetime of the
// scope. Scopes nest; the enclosing scope's counters are restored on exit.
class CounterScope {
public:
    explicit CounterScope(OpCounters* counters) noexcept
        : prev_(detail::tl_active_counters) {
        detail::tl_active_counters = counters;
    }
    ~CounterScope() { detail::tl_active_counters = prev_; }

    CounterScope(const CounterScope&) = delete;
    CounterScope& operator=(const CounterScope&) = delete;

private:
    OpCounters* prev_;
};

} // namespace nbscl

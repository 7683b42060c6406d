#include "nano/schedule.hpp"

#include <stdexcept>
#include <string>

namespace nano {

std::uint64_t Schedule::push(Event e) {
    if (e.time < clock_)
        throw std::logic_error("event scheduled at " + std::to_string(e.time) +
                               " behind the clock " + std::to_string(clock_));
    e.seq = next_seq_++;
    if (e.kind != EventKind::Observe) ++pending_work_;
    heap_.push(e);
    return e.seq;
}

Event Schedule::pop() {
    if (heap_.empty()) throw std::logic_error("pop from an empty schedule");
    Event e = heap_.top();
    heap_.pop();
    if (e.kind != EventKind::Observe) --pending_work_;
    clock_ = e.time;
    return e;
}

std::optional<double> Schedule::next_time() const {
    if (heap_.empty()) return std::nullopt;
    return heap_.top().time;
}

}  // namespace nano

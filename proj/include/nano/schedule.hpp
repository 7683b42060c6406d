#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

namespace nano {

enum class EventKind { Setup, Observe, Act };

struct Event {
    double time = 0.0;
    /// Assigned by the schedule at push; breaks time ties in insertion
    /// order.
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Act;
    std::uint32_t agent = 0;        // Act: target agent id
    std::uint32_t behavior = 0;     // Act: index into the agent's behaviors
    std::uint32_t setup_index = 0;  // Setup: which setup action
};

/// Discrete-event queue: earliest time first, insertion order within a
/// time. The clock only moves forward, to the time of the popped event.
class Schedule {
public:
    /// Enqueues at e.time, which must not precede the clock. Returns the
    /// sequence number assigned.
    std::uint64_t push(Event e);

    /// Removes the earliest event and advances the clock to its time.
    Event pop();

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    std::optional<double> next_time() const;
    double clock() const { return clock_; }

    /// Setup and Act events currently queued. The observer uses this to
    /// decide whether anything can still happen.
    std::size_t pending_work() const { return pending_work_; }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };
    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_seq_ = 0;
    double clock_ = 0.0;
    std::size_t pending_work_ = 0;
};

}  // namespace nano

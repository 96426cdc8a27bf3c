#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "eegtda/eegtda.h"

namespace cli {

// Carries a library status (or a CLI-side one using the same numbering) up
// to main, which maps it to the exit code.
class Failure : public std::runtime_error {
public:
    Failure(eegtda_status status, const std::string& message) : std::runtime_error(message), status_(status) {}
    eegtda_status status() const noexcept { return status_; }

private:
    eegtda_status status_;
};

[[noreturn]] inline void fail(eegtda_status status, const std::string& message) { throw Failure(status, message); }

// Throws on any status other than OK; `context` prefixes the library message.
inline void check(eegtda_status status, const std::string& context = {}) {
    if (status == EEGTDA_OK) return;
    const std::string msg = eegtda_last_error();
    fail(status, context.empty() ? msg : context + ": " + msg);
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};

using Recording = std::unique_ptr<eegtda_recording, Deleter<eegtda_recording, eegtda_recording_free>>;
using Montage = std::unique_ptr<eegtda_montage, Deleter<eegtda_montage, eegtda_montage_free>>;
using Segments = std::unique_ptr<eegtda_segments, Deleter<eegtda_segments, eegtda_segments_free>>;
using Trajectory = std::unique_ptr<eegtda_trajectory, Deleter<eegtda_trajectory, eegtda_trajectory_free>>;
using Diagram = std::unique_ptr<eegtda_diagram, Deleter<eegtda_diagram, eegtda_diagram_free>>;
using Landscape = std::unique_ptr<eegtda_landscape, Deleter<eegtda_landscape, eegtda_landscape_free>>;
using Table = std::unique_ptr<eegtda_table, Deleter<eegtda_table, eegtda_table_free>>;
using Model = std::unique_ptr<eegtda_model, Deleter<eegtda_model, eegtda_model_free>>;
using Training = std::unique_ptr<eegtda_training, Deleter<eegtda_training, eegtda_training_free>>;

// Wraps a C constructor of the form f(args..., T** out).
template <class Handle, class F, class... Args>
Handle make(const std::string& context, F f, Args&&... args) {
    typename Handle::pointer raw = nullptr;
    check(f(std::forward<Args>(args)..., &raw), context);
    return Handle(raw);
}

}  // namespace cli

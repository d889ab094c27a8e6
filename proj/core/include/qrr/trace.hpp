#pragma once

#include <string>
#include <vector>

namespace qrr::trace {

/// Builder-trace capture, used by the registry's independence audit: while a
/// capture is active, each top-level kernel call (lattice_sum, poch_list,
/// phi_series, constant_term, ...) records a descriptor of its arguments.
/// Nested kernel calls are suppressed. State is thread-local.

bool active();
void begin();
std::vector<std::string> take();

/// Increments the nesting depth; returns true when this is the outermost
/// kernel call of an active capture.
bool scope_enter();
void scope_exit();
void record(std::string s);

/// RAII guard placed at kernel entry points.
class Scope {
public:
    template <class F>
    explicit Scope(F&& descriptor) {
        if (active()) {
            entered_ = true;
            if (scope_enter()) record(descriptor());
        }
    }
    ~Scope() {
        if (entered_) scope_exit();
    }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

private:
    bool entered_ = false;
};

} // namespace qrr::trace

#include "qrr/trace.hpp"

namespace qrr::trace {

namespace {
thread_local bool g_active = false;
thread_local int g_depth = 0;
thread_local std::vector<std::string> g_notes;
} // namespace

bool active() { return g_active; }

void begin() {
    g_active = true;
    g_depth = 0;
    g_notes.clear();
}

std::vector<std::string> take() {
    g_active = false;
    return std::move(g_notes);
}

bool scope_enter() { return g_depth++ == 0; }

void scope_exit() { --g_depth; }

void record(std::string s) { g_notes.push_back(std::move(s)); }

} // namespace qrr::trace

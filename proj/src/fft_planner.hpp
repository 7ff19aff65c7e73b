#pragma once

#include <mutex>

namespace tmodel::detail {

// FFTW's planner is not thread-safe; every plan create/destroy holds this.
std::mutex& planner_mutex();

// Applies the configured thread count to the next plan. Caller holds the
// planner mutex.
void apply_thread_setting();

}  // namespace tmodel::detail

#pragma once

#include <vector>

namespace inspection {

/// Persistent inspected flags, keyed by the scenario's global feature-point
/// order. Monotone: flags are only ever set, never cleared.
class InspectionMemory {
public:
    InspectionMemory() = default;
    explicit InspectionMemory(int n_points)
        : flags_(static_cast<size_t>(n_points), 0) {}

    int size() const { return static_cast<int>(flags_.size()); }
    bool inspected(int idx) const { return flags_[static_cast<size_t>(idx)] != 0; }
    void mark(int idx) { flags_[static_cast<size_t>(idx)] = 1; }
    int count() const {
        int n = 0;
        for (char f : flags_) n += f != 0;
        return n;
    }
    bool complete() const { return count() == size(); }

private:
    std::vector<char> flags_;
};

} // namespace inspection

#ifndef zipcover_filter_hpp
#define zipcover_filter_hpp

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zipcover/error.hpp"

namespace zipcover {

using StateId = std::size_t;
using ObservationId = std::size_t;
using OutputId = std::size_t;
using ObservationSequence = std::vector<ObservationId>;

struct Transition {
    StateId from = 0;
    ObservationId obs = 0;
    StateId to = 0;

    friend bool operator==(const Transition&, const Transition&) = default;
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

// Ingestion form of a filter: what a document parses into, before any
// invariant is checked.
struct FilterData {
    std::size_t num_states = 0;
    StateId initial = 0;
    std::vector<std::string> observations;
    std::vector<OutputId> outputs;               // one per state
    std::vector<std::string> labels;             // empty, or one per state
    std::vector<Transition> transitions;

    friend bool operator==(const FilterData&, const FilterData&) = default;
};

enum class ViolationCode {
    NoStates,
    InitialOutOfRange,
    MissingOutput,
    LabelCountMismatch,
    DanglingSource,
    DanglingTarget,
    UnknownObservation,
    NondeterministicTransition,
    DuplicateObservation
};

inline const char* to_string(ViolationCode code) {
    switch (code) {
        case ViolationCode::NoStates: return "NoStates";
        case ViolationCode::InitialOutOfRange: return "InitialOutOfRange";
        case ViolationCode::MissingOutput: return "MissingOutput";
        case ViolationCode::LabelCountMismatch: return "LabelCountMismatch";
        case ViolationCode::DanglingSource: return "DanglingSource";
        case ViolationCode::DanglingTarget: return "DanglingTarget";
        case ViolationCode::UnknownObservation: return "UnknownObservation";
        case ViolationCode::NondeterministicTransition: return "NondeterministicTransition";
        case ViolationCode::DuplicateObservation: return "DuplicateObservation";
    }
    return "Unknown";
}

struct Violation {
    ViolationCode code;
    std::string detail;
};

inline std::vector<Violation> validate(const FilterData& data) {
    std::vector<Violation> out;
    const auto n = data.num_states;
    if (n == 0) {
        out.push_back({ViolationCode::NoStates, "a filter needs at least one state"});
    }
    if (data.initial >= n) {
        out.push_back({ViolationCode::InitialOutOfRange,
                       "initial state " + std::to_string(data.initial) + " does not exist"});
    }
    if (data.outputs.size() != n) {
        out.push_back({ViolationCode::MissingOutput,
                       std::to_string(data.outputs.size()) + " outputs for " +
                           std::to_string(n) + " states"});
    }
    if (!data.labels.empty() && data.labels.size() != n) {
        out.push_back({ViolationCode::LabelCountMismatch,
                       std::to_string(data.labels.size()) + " labels for " +
                           std::to_string(n) + " states"});
    }
    {
        std::set<std::string> seen;
        for (const auto& name : data.observations) {
            if (!seen.insert(name).second) {
                out.push_back({ViolationCode::DuplicateObservation, "observation '" + name +
                                                                        "' listed twice"});
            }
        }
    }
    std::set<std::pair<StateId, ObservationId>> keys;
    for (const auto& t : data.transitions) {
        const auto where = "transition (" + std::to_string(t.from) + ", " +
                           std::to_string(t.obs) + ") -> " + std::to_string(t.to);
        if (t.from >= n) {
            out.push_back({ViolationCode::DanglingSource, where});
        }
        if (t.to >= n) {
            out.push_back({ViolationCode::DanglingTarget, where});
        }
        if (t.obs >= data.observations.size()) {
            out.push_back({ViolationCode::UnknownObservation, where});
        }
        if (!keys.insert({t.from, t.obs}).second) {
            out.push_back({ViolationCode::NondeterministicTransition, where});
        }
    }
    return out;
}

inline std::string describe(const std::vector<Violation>& violations) {
    std::string msg;
    for (const auto& v : violations) {
        if (!msg.empty()) {
            msg += "; ";
        }
        msg += to_string(v.code);
        msg += ": ";
        msg += v.detail;
    }
    return msg;
}

class InvalidFilterError : public InputError {
public:
    explicit InvalidFilterError(std::vector<Violation> violations)
        : InputError("invalid filter: " + describe(violations)),
          violations_(std::move(violations)) {}

    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

// Deterministic filter: states, initial state, observation alphabet, a
// partial transition function and an output per state. Immutable once built.
class Filter {
public:
    static Filter from(FilterData data) {
        auto violations = validate(data);
        if (!violations.empty()) {
            throw InvalidFilterError(std::move(violations));
        }
        Filter f;
        f.data_ = std::move(data);
        std::sort(f.data_.transitions.begin(), f.data_.transitions.end());
        const auto width = f.data_.observations.size();
        f.next_.assign(f.data_.num_states * width, kUndefined);
        for (const auto& t : f.data_.transitions) {
            f.next_[t.from * width + t.obs] = t.to;
        }
        return f;
    }

    std::size_t num_states() const { return data_.num_states; }
    StateId initial() const { return data_.initial; }
    std::size_t num_observations() const { return data_.observations.size(); }
    const std::vector<std::string>& observations() const { return data_.observations; }
    OutputId output(StateId s) const { return data_.outputs.at(s); }
    bool has_labels() const { return !data_.labels.empty(); }

    std::string label(StateId s) const {
        return data_.labels.empty() ? std::to_string(s) : data_.labels.at(s);
    }

    std::optional<StateId> next(StateId s, ObservationId y) const {
        const auto t = next_.at(s * num_observations() + y);
        if (t == kUndefined) {
            return std::nullopt;
        }
        return t;
    }

    std::optional<ObservationId> find_observation(const std::string& name) const {
        const auto& obs = data_.observations;
        auto it = std::find(obs.begin(), obs.end(), name);
        if (it == obs.end()) {
            return std::nullopt;
        }
        return static_cast<ObservationId>(it - obs.begin());
    }

    // Canonical data: transitions sorted by (from, obs).
    const FilterData& data() const { return data_; }

    friend bool operator==(const Filter& a, const Filter& b) { return a.data_ == b.data_; }

private:
    static constexpr StateId kUndefined = static_cast<StateId>(-1);

    FilterData data_;
    std::vector<StateId> next_;
};

inline std::vector<Violation> validate(const Filter& filter) { return validate(filter.data()); }

struct TraceResult {
    StateId end = 0;
    std::vector<OutputId> outputs;

    friend bool operator==(const TraceResult&, const TraceResult&) = default;
};

inline std::optional<TraceResult> trace(const Filter& filter, StateId from,
                                        const ObservationSequence& seq) {
    if (from >= filter.num_states()) {
        throw InputError("trace from unknown state " + std::to_string(from));
    }
    for (auto y : seq) {
        if (y >= filter.num_observations()) {
            throw InputError("trace with unknown observation id " + std::to_string(y));
        }
    }
    TraceResult result{from, {filter.output(from)}};
    for (auto y : seq) {
        auto next = filter.next(result.end, y);
        if (!next) {
            return std::nullopt;
        }
        result.end = *next;
        result.outputs.push_back(filter.output(*next));
    }
    return result;
}

struct PruneResult {
    Filter filter;
    // old state id -> new state id, absent for removed states
    std::vector<std::optional<StateId>> old_to_new;
};

inline PruneResult prune_unreachable(const Filter& filter) {
    const auto n = filter.num_states();
    std::vector<bool> reached(n, false);
    std::deque<StateId> queue{filter.initial()};
    reached[filter.initial()] = true;
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (ObservationId y = 0; y < filter.num_observations(); ++y) {
            if (auto t = filter.next(s, y); t && !reached[*t]) {
                reached[*t] = true;
                queue.push_back(*t);
            }
        }
    }

    std::vector<std::optional<StateId>> old_to_new(n);
    StateId next_id = 0;
    for (StateId s = 0; s < n; ++s) {
        if (reached[s]) {
            old_to_new[s] = next_id++;
        }
    }

    const auto& old = filter.data();
    FilterData data;
    data.num_states = next_id;
    data.initial = *old_to_new[old.initial];
    data.observations = old.observations;
    for (StateId s = 0; s < n; ++s) {
        if (reached[s]) {
            data.outputs.push_back(old.outputs[s]);
            if (!old.labels.empty()) {
                data.labels.push_back(old.labels[s]);
            }
        }
    }
    for (const auto& t : old.transitions) {
        if (reached[t.from]) {
            data.transitions.push_back({*old_to_new[t.from], t.obs, *old_to_new[t.to]});
        }
    }
    return {Filter::from(std::move(data)), std::move(old_to_new)};
}

inline bool is_reachable(const Filter& filter) {
    return prune_unreachable(filter).filter.num_states() == filter.num_states();
}

struct SimulationResult {
    bool holds = true;
    // Shortest failing sequence, smallest symbol ids first among equals.
    std::optional<ObservationSequence> witness;

    explicit operator bool() const { return holds; }
};

// Does `candidate` output-simulate `spec`? Breadth-first search over pairs
// (spec state, candidate state) reachable by sequences traceable on `spec`.
inline SimulationResult output_simulates(const Filter& spec, const Filter& candidate) {
    if (spec.observations() != candidate.observations()) {
        throw InputError("output simulation needs a shared observation alphabet");
    }
    if (spec.output(spec.initial()) != candidate.output(candidate.initial())) {
        return {false, ObservationSequence{}};
    }

    const auto m = candidate.num_states();
    const auto key = [m](StateId a, StateId b) { return a * m + b; };
    // parent links for witness reconstruction
    struct Visit {
        std::size_t parent;
        ObservationId obs;
    };
    std::vector<std::optional<Visit>> visited(spec.num_states() * m);
    const std::size_t root = key(spec.initial(), candidate.initial());
    visited[root] = Visit{root, 0};

    auto witness_to = [&](std::size_t node, std::optional<ObservationId> last) {
        ObservationSequence seq;
        if (last) {
            seq.push_back(*last);
        }
        while (node != root) {
            seq.push_back(visited[node]->obs);
            node = visited[node]->parent;
        }
        std::reverse(seq.begin(), seq.end());
        return seq;
    };

    std::deque<std::pair<StateId, StateId>> queue{{spec.initial(), candidate.initial()}};
    while (!queue.empty()) {
        auto [s, c] = queue.front();
        queue.pop_front();
        for (ObservationId y = 0; y < spec.num_observations(); ++y) {
            auto s_next = spec.next(s, y);
            if (!s_next) {
                continue;
            }
            auto c_next = candidate.next(c, y);
            if (!c_next) {
                return {false, witness_to(key(s, c), y)};
            }
            const auto child = key(*s_next, *c_next);
            if (visited[child]) {
                continue;
            }
            visited[child] = Visit{key(s, c), y};
            if (spec.output(*s_next) != candidate.output(*c_next)) {
                return {false, witness_to(child, std::nullopt)};
            }
            queue.emplace_back(*s_next, *c_next);
        }
    }
    return {true, std::nullopt};
}

}  // namespace zipcover

#endif /* zipcover_filter_hpp */

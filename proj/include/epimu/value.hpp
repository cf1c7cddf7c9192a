#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "epimu/process_set.hpp"

namespace epimu {

struct ViewEntry;

/// The private value of a vertex: a base datum, a pair (from products), or a view
/// (a set of (process, value) entries, from subdivisions). Immutable; copies share structure.
class Value {
public:
    enum class Kind { Base, Pair, View };

    Value() = default;
    static Value base(int v);
    static Value pair(Value first, Value second);
    /// Entries are sorted by process; duplicate processes are rejected.
    static Value view(std::vector<ViewEntry> entries);

    Kind kind() const;
    bool is_base() const { return node_ == nullptr; }
    int as_base() const;
    const Value& first() const;
    const Value& second() const;
    std::span<const ViewEntry> entries() const;

    std::size_t hash() const;
    std::string to_string() const;

    friend std::strong_ordering operator<=>(const Value& x, const Value& y);
    friend bool operator==(const Value& x, const Value& y) { return (x <=> y) == 0; }

private:
    struct Node;
    explicit Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    int base_ = 0;
    std::shared_ptr<const Node> node_;
};

struct ViewEntry {
    ProcessId process;
    Value value;

    friend std::strong_ordering operator<=>(const ViewEntry& x, const ViewEntry& y)
    {
        if (auto c = x.process <=> y.process; c != 0)
            return c;
        return x.value <=> y.value;
    }
    friend bool operator==(const ViewEntry& x, const ViewEntry& y) { return (x <=> y) == 0; }
};

struct ValueHash {
    std::size_t operator()(const Value& v) const { return v.hash(); }
};

}  // namespace epimu

#include "epimu/value.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "epimu/errors.hpp"

namespace epimu {

struct Value::Node {
    Kind kind;
    std::vector<Value> items;       // Pair: exactly two
    std::vector<ViewEntry> entries; // View
    std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t h)
{
    return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Value Value::base(int v)
{
    Value out;
    out.base_ = v;
    return out;
}

Value Value::pair(Value first, Value second)
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::Pair;
    node->hash = mix(mix(0x51ed27, first.hash()), second.hash());
    node->items = {std::move(first), std::move(second)};
    return Value(std::move(node));
}

Value Value::view(std::vector<ViewEntry> entries)
{
    std::sort(entries.begin(), entries.end());
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i - 1].process == entries[i].process)
            throw PreconditionError("view has two entries for process " + std::to_string(entries[i].process));
    auto node = std::make_shared<Node>();
    node->kind = Kind::View;
    std::size_t h = 0x7a3f1;
    for (const auto& e : entries)
        h = mix(mix(h, std::hash<int>{}(e.process)), e.value.hash());
    node->hash = h;
    node->entries = std::move(entries);
    return Value(std::move(node));
}

Value::Kind Value::kind() const
{
    return node_ ? node_->kind : Kind::Base;
}

int Value::as_base() const
{
    if (node_)
        throw PreconditionError("value " + to_string() + " is not a base value");
    return base_;
}

const Value& Value::first() const
{
    if (kind() != Kind::Pair)
        throw PreconditionError("value is not a pair");
    return node_->items[0];
}

const Value& Value::second() const
{
    if (kind() != Kind::Pair)
        throw PreconditionError("value is not a pair");
    return node_->items[1];
}

std::span<const ViewEntry> Value::entries() const
{
    if (kind() != Kind::View)
        throw PreconditionError("value is not a view");
    return node_->entries;
}

std::size_t Value::hash() const
{
    return node_ ? node_->hash : std::hash<int>{}(base_);
}

std::string Value::to_string() const
{
    switch (kind()) {
    case Kind::Base:
        return std::to_string(base_);
    case Kind::Pair:
        return "(" + node_->items[0].to_string() + "," + node_->items[1].to_string() + ")";
    case Kind::View: {
        std::string s = "{";
        for (std::size_t i = 0; i < node_->entries.size(); ++i) {
            if (i)
                s += ",";
            s += std::to_string(node_->entries[i].process) + ":" + node_->entries[i].value.to_string();
        }
        return s + "}";
    }
    }
    return {};
}

std::strong_ordering operator<=>(const Value& x, const Value& y)
{
    if (x.node_ == y.node_)
        return x.node_ ? std::strong_ordering::equal : x.base_ <=> y.base_;
    if (auto c = x.kind() <=> y.kind(); c != 0)
        return c;
    switch (x.kind()) {
    case Value::Kind::Base:
        return x.base_ <=> y.base_;
    case Value::Kind::Pair: {
        if (auto c = x.node_->items[0] <=> y.node_->items[0]; c != 0)
            return c;
        return x.node_->items[1] <=> y.node_->items[1];
    }
    case Value::Kind::View:
        if (x.node_->hash == y.node_->hash && x.node_->entries == y.node_->entries)
            return std::strong_ordering::equal;
        return std::lexicographical_compare_three_way(x.node_->entries.begin(), x.node_->entries.end(),
            y.node_->entries.begin(), y.node_->entries.end());
    }
    return std::strong_ordering::equal;
}

}  // namespace epimu

#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace epimu {

/// A process identifier in [0, n].
using ProcessId = int;

inline constexpr int kMaxProcesses = 32;

/// A subset of processes, stored as a bitmask. Iteration is in increasing id order.
class ProcessSet {
public:
    constexpr ProcessSet() = default;
    constexpr explicit ProcessSet(std::uint32_t bits) : bits_(bits) {}
    ProcessSet(std::initializer_list<ProcessId> ids)
    {
        for (auto id : ids)
            insert(id);
    }

    /// The range [lo, hi]; empty when hi < lo.
    static ProcessSet range(ProcessId lo, ProcessId hi)
    {
        ProcessSet s;
        for (ProcessId a = lo; a <= hi; ++a)
            s.insert(a);
        return s;
    }
    static ProcessSet all(int n) { return range(0, n); }
    static ProcessSet singleton(ProcessId a) { return ProcessSet(std::uint32_t{1} << a); }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    int size() const { return std::popcount(bits_); }
    bool contains(ProcessId a) const { return a >= 0 && a < kMaxProcesses && ((bits_ >> a) & 1u); }
    bool subset_of(ProcessSet o) const { return (bits_ & ~o.bits_) == 0; }

    void insert(ProcessId a) { bits_ |= std::uint32_t{1} << a; }
    void erase(ProcessId a) { bits_ &= ~(std::uint32_t{1} << a); }

    /// Smallest member; undefined on the empty set.
    ProcessId min() const { return std::countr_zero(bits_); }
    ProcessId max() const { return 31 - std::countl_zero(bits_); }

    ProcessSet operator|(ProcessSet o) const { return ProcessSet(bits_ | o.bits_); }
    ProcessSet operator&(ProcessSet o) const { return ProcessSet(bits_ & o.bits_); }
    ProcessSet operator-(ProcessSet o) const { return ProcessSet(bits_ & ~o.bits_); }
    ProcessSet& operator|=(ProcessSet o)
    {
        bits_ |= o.bits_;
        return *this;
    }

    friend constexpr bool operator==(ProcessSet, ProcessSet) = default;
    /// Orders by size, then lexicographically by members.
    friend bool operator<(ProcessSet x, ProcessSet y)
    {
        if (x.size() != y.size())
            return x.size() < y.size();
        return x.members() < y.members();
    }

    std::vector<ProcessId> members() const
    {
        std::vector<ProcessId> out;
        for (std::uint32_t b = bits_; b; b &= b - 1)
            out.push_back(std::countr_zero(b));
        return out;
    }

    class iterator {
    public:
        using value_type = ProcessId;
        using difference_type = std::ptrdiff_t;
        constexpr iterator() = default;
        constexpr explicit iterator(std::uint32_t b) : b_(b) {}
        ProcessId operator*() const { return std::countr_zero(b_); }
        iterator& operator++()
        {
            b_ &= b_ - 1;
            return *this;
        }
        iterator operator++(int)
        {
            auto t = *this;
            ++*this;
            return t;
        }
        friend constexpr bool operator==(iterator, iterator) = default;

    private:
        std::uint32_t b_ = 0;
    };
    iterator begin() const { return iterator(bits_); }
    iterator end() const { return iterator(0); }

    /// Renders as `{0,2}`.
    std::string to_string() const;

private:
    std::uint32_t bits_ = 0;
};

/// All nonempty subsets of [0, n], ordered by bitmask value.
std::vector<ProcessSet> nonempty_subsets(int n);

}  // namespace epimu

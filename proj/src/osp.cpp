#include "epimu/osp.hpp"

#include <algorithm>
#include <cctype>

#include "epimu/errors.hpp"

namespace epimu {

OrderedSetPartition::OrderedSetPartition(int n, std::vector<ProcessSet> blocks) : n_(n), blocks_(std::move(blocks))
{
    if (blocks_.empty())
        throw PreconditionError("an ordered set partition needs at least one block");
    ProcessSet seen;
    for (auto b : blocks_) {
        if (b.empty())
            throw PreconditionError("ordered set partition has an empty block");
        if (!(seen & b).empty())
            throw PreconditionError("ordered set partition blocks overlap");
        seen |= b;
    }
    if (seen != ProcessSet::all(n))
        throw PreconditionError("blocks " + seen.to_string() + " do not cover [0," + std::to_string(n) + "]");
}

OrderedSetPartition OrderedSetPartition::parse(std::string_view text)
{
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    auto expect = [&](char c) {
        skip();
        if (pos >= text.size() || text[pos] != c)
            throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    };
    expect('<');
    std::vector<ProcessSet> blocks(1);
    int max_id = -1;
    for (;;) {
        skip();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (start == pos)
            throw ParseError("expected process id", pos);
        int a = std::stoi(std::string(text.substr(start, pos - start)));
        if (a >= kMaxProcesses)
            throw ParseError("process id out of range", start);
        if (blocks.back().contains(a))
            throw ParseError("repeated process id", start);
        blocks.back().insert(a);
        max_id = std::max(max_id, a);
        skip();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
        } else if (pos < text.size() && text[pos] == '|') {
            ++pos;
            blocks.emplace_back();
        } else {
            break;
        }
    }
    expect('>');
    skip();
    if (pos != text.size())
        throw ParseError("unexpected trailing input", pos);
    try {
        return OrderedSetPartition(max_id, std::move(blocks));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what(), 0);
    }
}

std::size_t OrderedSetPartition::block_of(ProcessId a) const
{
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        if (blocks_[i].contains(a))
            return i;
    throw PreconditionError("process " + std::to_string(a) + " is not in the partition");
}

std::string OrderedSetPartition::to_string() const
{
    std::string s = "<";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i)
            s += "|";
        bool first = true;
        for (auto a : blocks_[i]) {
            if (!first)
                s += ",";
            s += std::to_string(a);
            first = false;
        }
    }
    return s + ">";
}

std::strong_ordering operator<=>(const OrderedSetPartition& x, const OrderedSetPartition& y)
{
    if (auto c = x.n_ <=> y.n_; c != 0)
        return c;
    auto key = [](ProcessSet s) { return s.members(); };
    return std::lexicographical_compare_three_way(x.blocks_.begin(), x.blocks_.end(), y.blocks_.begin(),
        y.blocks_.end(), [&](ProcessSet a, ProcessSet b) { return key(a) <=> key(b); });
}

namespace {

void compositions(int remaining, std::vector<int>& parts, std::vector<std::vector<int>>& out)
{
    if (remaining == 0) {
        out.push_back(parts);
        return;
    }
    for (int p = 1; p <= remaining; ++p) {
        parts.push_back(p);
        compositions(remaining - p, parts, out);
        parts.pop_back();
    }
}

/// Lexicographic k-combinations of `pool` (sorted).
void combinations(const std::vector<ProcessId>& pool, std::size_t k, std::size_t start, ProcessSet& cur,
    std::vector<ProcessSet>& out)
{
    if (static_cast<std::size_t>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
        cur.insert(pool[i]);
        combinations(pool, k, i + 1, cur, out);
        cur.erase(pool[i]);
    }
}

void fill_blocks(int n, const std::vector<int>& sizes, std::size_t idx, ProcessSet remaining,
    std::vector<ProcessSet>& blocks, std::vector<Osp>& out)
{
    if (idx == sizes.size()) {
        out.emplace_back(n, blocks);
        return;
    }
    std::vector<ProcessSet> choices;
    ProcessSet cur;
    combinations(remaining.members(), static_cast<std::size_t>(sizes[idx]), 0, cur, choices);
    for (auto block : choices) {
        blocks.push_back(block);
        fill_blocks(n, sizes, idx + 1, remaining - block, blocks, out);
        blocks.pop_back();
    }
}

}  // namespace

std::vector<Osp> enumerate_osp(int n)
{
    if (n < 0)
        throw PreconditionError("enumerate_osp needs n >= 0");
    std::vector<std::vector<int>> comps;
    std::vector<int> parts;
    compositions(n + 1, parts, comps);
    std::vector<Osp> out;
    std::vector<ProcessSet> blocks;
    for (const auto& sizes : comps)
        fill_blocks(n, sizes, 0, ProcessSet::all(n), blocks, out);
    return out;
}

std::vector<Osp> enumerate_osp_tail(int d, int n)
{
    if (d < 0 || d > n)
        throw PreconditionError("enumerate_osp_tail needs 0 <= d <= n");
    std::vector<Osp> out;
    for (const auto& head : enumerate_osp(d)) {
        std::vector<ProcessSet> blocks(head.blocks().begin(), head.blocks().end());
        for (ProcessId a = d + 1; a <= n; ++a)
            blocks.push_back(ProcessSet::singleton(a));
        out.emplace_back(n, std::move(blocks));
    }
    return out;
}

bool has_tail_form(const Osp& gamma, int d)
{
    const int n = gamma.n();
    if (d < 0 || d > n)
        return false;
    const auto blocks = gamma.blocks();
    const std::size_t tail = static_cast<std::size_t>(n - d);
    if (blocks.size() <= tail)
        return false;
    for (std::size_t i = 0; i < tail; ++i)
        if (blocks[blocks.size() - tail + i] != ProcessSet::singleton(d + 1 + static_cast<int>(i)))
            return false;
    return true;
}

ProcessSet view_in_osp(ProcessId a, const Osp& gamma)
{
    ProcessSet seen;
    for (auto block : gamma.blocks()) {
        seen |= block;
        if (block.contains(a))
            return seen;
    }
    throw PreconditionError("process " + std::to_string(a) + " is not in " + gamma.to_string());
}

Osp flip(ProcessSet group, const Osp& gamma)
{
    const int d = group.size();
    const ProcessSet prefix = ProcessSet::range(0, d);
    if (!group.subset_of(prefix) || (prefix - group).size() != 1)
        throw PreconditionError("flip needs A = [0,d] \\ {b}; got " + group.to_string());
    if (!has_tail_form(gamma, d))
        throw PreconditionError(gamma.to_string() + " is not of tail form for d = " + std::to_string(d));
    const ProcessId b = (prefix - group).min();

    std::vector<ProcessSet> blocks(gamma.blocks().begin(), gamma.blocks().end());
    const std::size_t r = blocks.size() - static_cast<std::size_t>(gamma.n() - d);
    const std::size_t s = gamma.block_of(b);

    if (blocks[s].size() > 1) {
        ProcessSet rest = blocks[s];
        rest.erase(b);
        blocks[s] = ProcessSet::singleton(b);
        blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(s) + 1, rest);
    } else if (s + 1 < r) {
        blocks[s + 1].insert(b);
        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(s));
    } else {
        throw UndefinedFlipError("flip is undefined: the last block over [0," + std::to_string(d) + "] of "
            + gamma.to_string() + " is {" + std::to_string(b) + "}");
    }
    return Osp(gamma.n(), std::move(blocks));
}

}  // namespace epimu

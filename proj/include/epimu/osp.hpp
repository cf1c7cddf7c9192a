#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epimu/process_set.hpp"

namespace epimu {

/// A sequence of nonempty, pairwise disjoint blocks whose union is [0, n]. One
/// immediate-snapshot round: processes in the same block run concurrently, and a process
/// sees every process in its own block and in earlier blocks.
class OrderedSetPartition {
public:
    /// Throws PreconditionError unless blocks partition [0, n].
    OrderedSetPartition(int n, std::vector<ProcessSet> blocks);

    /// Parses `<0,1|2|3>`; n is the largest id mentioned.
    static OrderedSetPartition parse(std::string_view text);

    int n() const { return n_; }
    std::span<const ProcessSet> blocks() const { return blocks_; }
    std::size_t num_blocks() const { return blocks_.size(); }
    /// Index of the block containing a.
    std::size_t block_of(ProcessId a) const;

    std::string to_string() const;

    friend std::strong_ordering operator<=>(const OrderedSetPartition& x, const OrderedSetPartition& y);
    friend bool operator==(const OrderedSetPartition& x, const OrderedSetPartition& y)
    {
        return x.n_ == y.n_ && x.blocks_ == y.blocks_;
    }

private:
    int n_;
    std::vector<ProcessSet> blocks_;
};

using Osp = OrderedSetPartition;

/// All ordered set partitions of [0, n], ordered by block-size composition (lexicographic),
/// then by block contents (lexicographic combinations). The count is the Fubini number of n+1.
std::vector<Osp> enumerate_osp(int n);

/// Partitions of the form <A_1|...|A_r|d+1|...|n> where A_1..A_r partition [0, d].
std::vector<Osp> enumerate_osp_tail(int d, int n);

/// True when gamma ends with the singletons {d+1},...,{n} and its other blocks cover [0, d].
bool has_tail_form(const Osp& gamma, int d);

/// Union of the blocks up to and including a's block.
ProcessSet view_in_osp(ProcessId a, const Osp& gamma);

/// The adjacent tail-form partition across the face colored by A = [0,d] \ {b}, where
/// d = |A|. Writing A_1..A_r for the blocks covering [0, d] and A_s for b's block:
///  - |A_s| > 1: b is split off into a singleton placed immediately before A_s \ {b};
///  - A_s = {b}, s < r: b is merged into A_{s+1};
///  - A_r = {b}: undefined, throws UndefinedFlipError.
/// The tail <d+1|...|n> is untouched.
Osp flip(ProcessSet group, const Osp& gamma);

}  // namespace epimu

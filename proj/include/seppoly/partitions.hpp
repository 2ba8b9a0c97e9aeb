#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "seppoly/errors.hpp"

namespace seppoly {

/// Hard cap on the number of parties a Block mask can hold.  Enumeration is
/// guarded separately (see enumerate_partitions).
inline constexpr int kMaxParties = 32;

/// Party count n for which exhaustive partition enumeration is allowed.
/// B(12) = 4,213,597 keeps brute-force operations tractable.
inline constexpr int kEnumerationGuard = 12;

/// The set of parties {0, ..., n-1}.
class PartySet {
  public:
    explicit PartySet(int n);
    int size() const { return n_; }
    bool operator==(const PartySet&) const = default;

  private:
    int n_;
};

/// A nonempty subset of party indices, stored as a bitmask.  Blocks order
/// lexicographically by their ascending member sequence.
class Block {
  public:
    Block() = default;
    static Block from_mask(std::uint32_t mask) { return Block(mask); }
    static Block from_members(std::span<const int> members);
    static Block from_members(std::initializer_list<int> members);
    static Block singleton(int party) { return Block(std::uint32_t{1} << party); }
    static Block full(int n);

    std::uint32_t mask() const { return mask_; }
    bool empty() const { return mask_ == 0; }
    int size() const;
    bool contains(int party) const { return (mask_ >> party) & 1u; }
    int min_member() const;
    std::vector<int> members() const;

    bool is_subset_of(const Block& other) const { return (mask_ & ~other.mask_) == 0; }
    bool intersects(const Block& other) const { return (mask_ & other.mask_) != 0; }
    Block unite(const Block& other) const { return Block(mask_ | other.mask_); }
    Block intersect(const Block& other) const { return Block(mask_ & other.mask_); }

    bool operator==(const Block&) const = default;
    bool operator<(const Block& other) const;

    /// Renders as a sorted member list, e.g. "{0,2,3}".
    std::string to_string() const;

  private:
    explicit Block(std::uint32_t mask) : mask_(mask) {}
    std::uint32_t mask_ = 0;
};

/// A set partition of {0, ..., n-1}: disjoint nonempty blocks covering the
/// party set, held in canonical order (sorted by minimal member).
class Partition {
  public:
    Partition(std::vector<Block> blocks, int party_count);

    static Partition finest(int n);
    static Partition one_block(int n);

    int party_count() const { return n_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const Block& block_of(int party) const;

    bool operator==(const Partition&) const = default;
    bool operator<(const Partition& other) const;

    std::string to_string() const;

  private:
    int n_ = 0;
    std::vector<Block> blocks_;
};

/// Relation of the first partition to the second under the refinement order,
/// which treats finer as greater.  Finer means the first refines the second,
/// so compare(p, q) == Finer reads q \preceq p.
enum class OrderRelation { Finer, Coarser, Equal, Incomparable };

std::string to_string(OrderRelation r);

/// Builds a canonical Partition from raw index blocks.
/// Throws OverlapError, CoverError, EmptyBlockError.
Partition make_partition(const std::vector<std::vector<int>>& blocks, int party_count);

/// True iff p refines q (every block of p lies inside a block of q),
/// i.e. q \preceq p.  Equal partitions refine each other.
bool refines(const Partition& p, const Partition& q);

OrderRelation compare(const Partition& p, const Partition& q);

/// Least upper bound: the coarsest common refinement (nonempty pairwise
/// block intersections).
Partition join(const Partition& p, const Partition& q);

/// Greatest lower bound: the finest common coarsening (connected components
/// of the "same block in p or q" graph on parties).
Partition meet(const Partition& p, const Partition& q);

/// Visits every partition of {0..n-1} exactly once, in restricted-growth
/// order.  Throws GuardExceeded for n > kEnumerationGuard.
void for_each_partition(int n, const std::function<void(const Partition&)>& visit);

/// Materialized form of for_each_partition; count equals the Bell number B(n).
std::vector<Partition> enumerate_partitions(int n);

/// An antichain of partitions: pairwise incomparable, nonempty, all over one
/// party set.  Elements are held sorted and deduplicated.
class PartitionAntichain {
  public:
    explicit PartitionAntichain(std::vector<Partition> elements);

    const std::vector<Partition>& elements() const { return elements_; }
    int size() const { return static_cast<int>(elements_.size()); }
    int party_count() const { return n_; }

    bool operator==(const PartitionAntichain&) const = default;

  private:
    int n_ = 0;
    std::vector<Partition> elements_;
};

/// The maximal (finest) elements of a set of partitions: those not strictly
/// refined by another element.  Throws EmptySetError, MismatchedPartySet.
PartitionAntichain maximal_elements(const std::vector<Partition>& ps);

/// Membership of s in the downward closure of a: true iff s \preceq m for
/// some m in a (some element of a refines s).
bool closure_contains(const PartitionAntichain& a, const Partition& s);

/// Merges the blocks containing parties a and b; identity when they already
/// share a block.  Throws IndexOutOfRange.
Partition merge_blocks(const Partition& p, int a, int b);

}  // namespace seppoly

#include "seppoly/partitions.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace seppoly {

PartySet::PartySet(int n) : n_(n) {
    if (n < 1)
        throw IndexOutOfRange("party count must be at least 1, got " + std::to_string(n));
    if (n > kMaxParties)
        throw GuardExceeded("party count " + std::to_string(n) + " exceeds representation limit " +
                            std::to_string(kMaxParties));
}

Block Block::from_members(std::span<const int> members) {
    std::uint32_t mask = 0;
    for (int p : members) {
        if (p < 0 || p >= kMaxParties)
            throw IndexOutOfRange("party index " + std::to_string(p) + " out of range");
        mask |= std::uint32_t{1} << p;
    }
    return Block(mask);
}

Block Block::from_members(std::initializer_list<int> members) {
    return from_members(std::span<const int>(members.begin(), members.size()));
}

Block Block::full(int n) {
    PartySet guard(n);
    return Block(n == kMaxParties ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
}

int Block::size() const { return std::popcount(mask_); }

int Block::min_member() const { return std::countr_zero(mask_); }

std::vector<int> Block::members() const {
    std::vector<int> out;
    for (int p = 0; p < kMaxParties; ++p)
        if (contains(p)) out.push_back(p);
    return out;
}

bool Block::operator<(const Block& other) const {
    // Lexicographic on the ascending member sequence.
    std::uint32_t a = mask_, b = other.mask_;
    while (a != 0 && b != 0) {
        int pa = std::countr_zero(a), pb = std::countr_zero(b);
        if (pa != pb) return pa < pb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;  // proper prefix is smaller
}

std::string Block::to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int p : members()) {
        if (!first) os << ',';
        os << p;
        first = false;
    }
    os << '}';
    return os.str();
}

Partition::Partition(std::vector<Block> blocks, int party_count) : n_(party_count), blocks_(std::move(blocks)) {
    PartySet guard(n_);
    const Block all = Block::full(n_);
    std::uint32_t seen = 0;
    for (const Block& b : blocks_) {
        if (b.empty()) throw EmptyBlockError("partition contains an empty block");
        if (!b.is_subset_of(all))
            throw IndexOutOfRange("block " + b.to_string() + " has members outside the party set");
        if (b.mask() & seen)
            throw OverlapError("blocks overlap at " + Block::from_mask(b.mask() & seen).to_string());
        seen |= b.mask();
    }
    if (seen != all.mask())
        throw CoverError("blocks do not cover the party set, missing " +
                         Block::from_mask(all.mask() & ~seen).to_string());
    std::sort(blocks_.begin(), blocks_.end(),
              [](const Block& a, const Block& b) { return a.min_member() < b.min_member(); });
}

Partition Partition::finest(int n) {
    std::vector<Block> bs;
    for (int p = 0; p < n; ++p) bs.push_back(Block::singleton(p));
    return Partition(std::move(bs), n);
}

Partition Partition::one_block(int n) { return Partition({Block::full(n)}, n); }

const Block& Partition::block_of(int party) const {
    if (party < 0 || party >= n_)
        throw IndexOutOfRange("party index " + std::to_string(party) + " out of range for n=" +
                              std::to_string(n_));
    for (const Block& b : blocks_)
        if (b.contains(party)) return b;
    throw CoverError("party " + std::to_string(party) + " not covered");  // unreachable for valid partitions
}

bool Partition::operator<(const Partition& other) const {
    return std::lexicographical_compare(blocks_.begin(), blocks_.end(), other.blocks_.begin(),
                                        other.blocks_.end());
}

std::string Partition::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const Block& b : blocks_) {
        if (!first) os << '|';
        bool f2 = true;
        for (int p : b.members()) {
            if (!f2) os << ',';
            os << p;
            f2 = false;
        }
        first = false;
    }
    return os.str();
}

std::string to_string(OrderRelation r) {
    switch (r) {
        case OrderRelation::Finer: return "Finer";
        case OrderRelation::Coarser: return "Coarser";
        case OrderRelation::Equal: return "Equal";
        case OrderRelation::Incomparable: return "Incomparable";
    }
    return "?";
}

Partition make_partition(const std::vector<std::vector<int>>& blocks, int party_count) {
    std::vector<Block> bs;
    bs.reserve(blocks.size());
    for (const auto& raw : blocks) bs.push_back(Block::from_members(raw));
    return Partition(std::move(bs), party_count);
}

static void require_same_party_set(const Partition& p, const Partition& q) {
    if (p.party_count() != q.party_count())
        throw MismatchedPartySet("party counts differ: " + std::to_string(p.party_count()) + " vs " +
                                 std::to_string(q.party_count()));
}

bool refines(const Partition& p, const Partition& q) {
    if (p.party_count() != q.party_count()) return false;
    for (const Block& b : p.blocks())
        if (!b.is_subset_of(q.block_of(b.min_member()))) return false;
    return true;
}

OrderRelation compare(const Partition& p, const Partition& q) {
    require_same_party_set(p, q);
    if (p == q) return OrderRelation::Equal;
    if (refines(p, q)) return OrderRelation::Finer;
    if (refines(q, p)) return OrderRelation::Coarser;
    return OrderRelation::Incomparable;
}

Partition join(const Partition& p, const Partition& q) {
    require_same_party_set(p, q);
    std::vector<Block> out;
    for (const Block& a : p.blocks())
        for (const Block& b : q.blocks()) {
            Block c = a.intersect(b);
            if (!c.empty()) out.push_back(c);
        }
    return Partition(std::move(out), p.party_count());
}

Partition meet(const Partition& p, const Partition& q) {
    require_same_party_set(p, q);
    const int n = p.party_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite_all = [&](const Partition& part) {
        for (const Block& b : part.blocks()) {
            int root = find(b.min_member());
            for (int m : b.members()) parent[find(m)] = root;
        }
    };
    unite_all(p);
    unite_all(q);
    std::vector<std::uint32_t> masks(n, 0);
    for (int i = 0; i < n; ++i) masks[find(i)] |= std::uint32_t{1} << i;
    std::vector<Block> out;
    for (int i = 0; i < n; ++i)
        if (masks[i] != 0) out.push_back(Block::from_mask(masks[i]));
    return Partition(std::move(out), n);
}

void for_each_partition(int n, const std::function<void(const Partition&)>& visit) {
    PartySet guard(n);
    if (n > kEnumerationGuard)
        throw GuardExceeded("enumeration limited to n <= " + std::to_string(kEnumerationGuard) +
                            ", got " + std::to_string(n));
    // Restricted growth strings: a[0] = 0 and a[i] <= b[i] = 1 + max(a[0..i-1]).
    std::vector<int> a(n, 0), b(n, 1);
    auto emit = [&]() {
        int nblocks = *std::max_element(a.begin(), a.end()) + 1;
        std::vector<std::uint32_t> masks(nblocks, 0);
        for (int i = 0; i < n; ++i) masks[a[i]] |= std::uint32_t{1} << i;
        std::vector<Block> bs;
        bs.reserve(nblocks);
        for (std::uint32_t m : masks) bs.push_back(Block::from_mask(m));
        visit(Partition(std::move(bs), n));
    };
    while (true) {
        emit();
        int i = n - 1;
        while (i > 0 && a[i] == b[i]) --i;
        if (i == 0) return;
        ++a[i];
        for (int j = i + 1; j < n; ++j) {
            a[j] = 0;
            b[j] = std::max(b[i], a[i] + 1);
        }
    }
}

std::vector<Partition> enumerate_partitions(int n) {
    std::vector<Partition> out;
    for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
    return out;
}

PartitionAntichain::PartitionAntichain(std::vector<Partition> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw EmptySetError("antichain must be nonempty");
    n_ = elements_[0].party_count();
    for (const Partition& p : elements_)
        if (p.party_count() != n_) throw MismatchedPartySet("antichain mixes party counts");
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    for (std::size_t i = 0; i < elements_.size(); ++i)
        for (std::size_t j = 0; j < elements_.size(); ++j)
            if (i != j && refines(elements_[i], elements_[j]))
                throw NotAntichain("element " + elements_[j].to_string() + " is refined by " +
                                   elements_[i].to_string());
}

PartitionAntichain maximal_elements(const std::vector<Partition>& ps) {
    if (ps.empty()) throw EmptySetError("maximal_elements of an empty set");
    for (const Partition& p : ps)
        if (p.party_count() != ps[0].party_count()) throw MismatchedPartySet("set mixes party counts");
    std::vector<Partition> sorted = ps;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Partition> kept;
    for (const Partition& m : sorted) {
        bool dominated = false;
        for (const Partition& x : sorted)
            if (!(x == m) && refines(x, m)) {
                dominated = true;
                break;
            }
        if (!dominated) kept.push_back(m);
    }
    return PartitionAntichain(std::move(kept));
}

bool closure_contains(const PartitionAntichain& a, const Partition& s) {
    if (s.party_count() != a.party_count())
        throw MismatchedPartySet("partition party count differs from antichain");
    for (const Partition& m : a.elements())
        if (refines(m, s)) return true;
    return false;
}

Partition merge_blocks(const Partition& p, int a, int b) {
    if (a < 0 || a >= p.party_count() || b < 0 || b >= p.party_count())
        throw IndexOutOfRange("merge_blocks targets out of range");
    const Block& ba = p.block_of(a);
    const Block& bb = p.block_of(b);
    if (ba == bb) return p;
    std::vector<Block> out;
    out.reserve(p.blocks().size() - 1);
    for (const Block& blk : p.blocks())
        if (!(blk == ba) && !(blk == bb)) out.push_back(blk);
    out.push_back(ba.unite(bb));
    return Partition(std::move(out), p.party_count());
}

}  // namespace seppoly

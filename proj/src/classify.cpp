#include "seppoly/classify.hpp"

#include <algorithm>

namespace seppoly {

std::string to_string(ThreeQubitKind k) {
    switch (k) {
        case ThreeQubitKind::FullyEntangled: return "FullyEntangled";
        case ThreeQubitKind::OneQubitBiseparable: return "OneQubitBiseparable";
        case ThreeQubitKind::TwoQubitBiseparable: return "TwoQubitBiseparable";
        case ThreeQubitKind::ThreeBiseparable: return "ThreeBiseparable";
        case ThreeQubitKind::FullySeparable: return "FullySeparable";
    }
    return "?";
}

ThreeQubitClass classify_three(const PartitionAntichain& a) {
    if (a.party_count() != 3)
        throw NotThreeParties("classification is defined for 3 parties, got " +
                              std::to_string(a.party_count()));

    // Valid 3-party antichains are: {finest}, {one-block}, or 1..3 of the
    // three bipartitions.
    if (a.size() == 1 && a.elements()[0] == Partition::finest(3))
        return {ThreeQubitKind::FullySeparable, {0, 1, 2}};
    if (a.size() == 1 && a.elements()[0] == Partition::one_block(3))
        return {ThreeQubitKind::FullyEntangled, {}};

    std::vector<int> splits;
    for (const Partition& p : a.elements()) {
        if (p.block_count() != 2)
            throw UnrecognizedAntichain("unexpected element " + p.to_string());
        for (const Block& b : p.blocks())
            if (b.size() == 1) splits.push_back(b.min_member());
    }
    std::sort(splits.begin(), splits.end());
    switch (splits.size()) {
        case 1: return {ThreeQubitKind::OneQubitBiseparable, splits};
        case 2: return {ThreeQubitKind::TwoQubitBiseparable, splits};
        case 3: return {ThreeQubitKind::ThreeBiseparable, splits};
    }
    throw UnrecognizedAntichain("antichain matches no 3-party class");
}

Partition relloc_partition(const PartitionAntichain& a) {
    if (a.elements().empty()) throw EmptyAntichain("relloc of an empty antichain");
    Partition acc = a.elements()[0];
    for (std::size_t i = 1; i < a.elements().size(); ++i) acc = join(acc, a.elements()[i]);
    return acc;
}

PolytopeSignature polytope_signature(const PartitionAntichain& a) {
    SimplicialComplex k = build_polytope(a);
    return {f_vector(k), connected_components(k), is_single_simplex(k)};
}

}  // namespace seppoly

#pragma once

#include "seppoly/simplicial.hpp"

namespace seppoly {

enum class ThreeQubitKind {
    FullyEntangled,
    OneQubitBiseparable,
    TwoQubitBiseparable,
    ThreeBiseparable,
    FullySeparable,
};

std::string to_string(ThreeQubitKind k);

/// Entanglement-pattern class of a 3-party antichain; `splits` lists the
/// parties that separate out in the bipartition cases.
struct ThreeQubitClass {
    ThreeQubitKind kind;
    std::vector<int> splits;

    bool operator==(const ThreeQubitClass&) const = default;
};

/// Maps a valid 3-party antichain to its class: the finest partition is
/// fully separable, the one-block partition fully entangled, and a set of
/// k bipartitions is k-fold biseparable.  Throws NotThreeParties.
ThreeQubitClass classify_three(const PartitionAntichain& a);

/// Coarsest common refinement of all maximal partitions: transformations
/// local to it leave the polytope unchanged.
Partition relloc_partition(const PartitionAntichain& a);

struct PolytopeSignature {
    FVector f;
    int components = 0;
    bool single_simplex = false;

    bool operator==(const PolytopeSignature&) const = default;
};

PolytopeSignature polytope_signature(const PartitionAntichain& a);

}  // namespace seppoly

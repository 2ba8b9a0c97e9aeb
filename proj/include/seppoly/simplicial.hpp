#pragma once

#include <map>
#include <string>
#include <vector>

#include "seppoly/partitions.hpp"

namespace seppoly {

/// A nonempty set of distinct block-labeled vertices, held in canonical
/// (sorted) order.  Dimension is vertex count minus one.
class Simplex {
  public:
    explicit Simplex(std::vector<Block> vertices);

    const std::vector<Block>& vertices() const { return vertices_; }
    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
    bool contains(const Block& v) const;
    bool is_face_of(const Simplex& other) const;

    bool operator==(const Simplex&) const = default;
    bool operator<(const Simplex& other) const;

    std::string to_string() const;

  private:
    std::vector<Block> vertices_;
};

/// An abstract simplicial complex with block-labeled vertices, described by
/// its maximal simplices.  The fields are open so invalid complexes can be
/// assembled by hand and fed to validate(); everything produced by
/// build_polytope satisfies the invariants by construction.
struct SimplicialComplex {
    int party_count = 0;
    std::vector<Block> vertices;    // sorted, duplicate-free when valid
    std::vector<Simplex> maximal;   // sorted, inclusion antichain when valid

    bool operator==(const SimplicialComplex&) const = default;
};

enum class ViolationKind {
    DuplicateLabel,
    UnusedVertex,
    UnknownVertex,
    AntichainViolation,
    IntersectionNotFace,
    BlockOverlap,
    CoverGap,
    OutOfRange,
};

struct Violation {
    ViolationKind kind;
    std::string detail;
};

std::string to_string(ViolationKind k);

/// Diagnoses a complex against the invariants; empty result means valid.
/// Never throws.
std::vector<Violation> validate(const SimplicialComplex& k);

/// Builds the polytope of an antichain: vertices are the blocks of its
/// partitions, deduplicated by label, and each partition spans one maximal
/// simplex.
SimplicialComplex build_polytope(const PartitionAntichain& a);

/// Overload that checks antichain-ness itself; throws NotAntichain.
SimplicialComplex build_polytope(const std::vector<Partition>& partitions);

/// Reads the maximal simplices back as partitions (the inverse of
/// build_polytope on valid partition-labeled complexes).
PartitionAntichain read_antichain(const SimplicialComplex& k);

struct FVector {
    std::vector<long> counts;  // counts[k] = number of distinct k-faces

    bool operator==(const FVector&) const = default;
};

std::string to_string(const FVector& f);

/// Counts distinct faces per dimension, deduplicating faces shared between
/// maximal simplices.
FVector f_vector(const SimplicialComplex& k);

/// Connected components of the 1-skeleton.
int connected_components(const SimplicialComplex& k);

/// True iff the complex has exactly one maximal simplex spanning all
/// vertices.
bool is_single_simplex(const SimplicialComplex& k);

/// A validated simplicial map: a total vertex table under which the image of
/// every maximal source simplex lies inside some target simplex.
class SimplicialMap {
  public:
    const SimplicialComplex& source() const { return source_; }
    const SimplicialComplex& target() const { return target_; }
    const std::map<Block, Block>& table() const { return table_; }
    Block apply(const Block& v) const;

    bool operator==(const SimplicialMap&) const = default;

  private:
    friend SimplicialMap make_simplicial_map(const SimplicialComplex&, const SimplicialComplex&,
                                             const std::map<Block, Block>&);
    SimplicialMap() = default;
    SimplicialComplex source_;
    SimplicialComplex target_;
    std::map<Block, Block> table_;
};

/// Validates and wraps a vertex table.  Throws UnmappedVertex when some
/// source vertex has no entry, NotSimplicial (naming a witness simplex) when
/// an image lies in no target simplex.
SimplicialMap make_simplicial_map(const SimplicialComplex& src, const SimplicialComplex& dst,
                                  const std::map<Block, Block>& vertex_map);

SimplicialMap identity_map(const SimplicialComplex& k);

/// Applies f first, then g.  Throws ChainMismatch unless f.target == g.source.
SimplicialMap compose(const SimplicialMap& f, const SimplicialMap& g);

}  // namespace seppoly

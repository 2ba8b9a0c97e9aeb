#include "seppoly/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace seppoly {

Simplex::Simplex(std::vector<Block> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw EmptySetError("simplex must have at least one vertex");
    std::sort(vertices_.begin(), vertices_.end());
    auto dup = std::adjacent_find(vertices_.begin(), vertices_.end());
    if (dup != vertices_.end())
        throw InvariantError("repeated vertex " + dup->to_string() + " in simplex");
}

bool Simplex::contains(const Block& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::is_face_of(const Simplex& other) const {
    return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                         vertices_.end());
}

bool Simplex::operator<(const Simplex& other) const {
    return std::lexicographical_compare(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                                        other.vertices_.end());
}

std::string Simplex::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (i) os << ' ';
        os << vertices_[i].to_string();
    }
    os << ']';
    return os.str();
}

std::string to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::DuplicateLabel: return "DuplicateLabel";
        case ViolationKind::UnusedVertex: return "UnusedVertex";
        case ViolationKind::UnknownVertex: return "UnknownVertex";
        case ViolationKind::AntichainViolation: return "AntichainViolation";
        case ViolationKind::IntersectionNotFace: return "IntersectionNotFace";
        case ViolationKind::BlockOverlap: return "BlockOverlap";
        case ViolationKind::CoverGap: return "CoverGap";
        case ViolationKind::OutOfRange: return "OutOfRange";
    }
    return "?";
}

std::vector<Violation> validate(const SimplicialComplex& k) {
    std::vector<Violation> out;
    const Block all = k.party_count >= 1 && k.party_count <= kMaxParties ? Block::full(k.party_count)
                                                                         : Block::from_mask(0);

    std::set<Block> labels;
    for (const Block& v : k.vertices) {
        if (!labels.insert(v).second)
            out.push_back({ViolationKind::DuplicateLabel, "vertex label " + v.to_string() + " repeats"});
        if (!v.is_subset_of(all) || v.empty())
            out.push_back({ViolationKind::OutOfRange, "vertex label " + v.to_string() + " outside party set"});
    }

    std::set<Block> used;
    for (const Simplex& s : k.maximal) {
        Block cover = Block::from_mask(0);
        bool overlap = false;
        for (const Block& v : s.vertices()) {
            if (labels.find(v) == labels.end())
                out.push_back({ViolationKind::UnknownVertex,
                               "simplex " + s.to_string() + " uses unlisted vertex " + v.to_string()});
            if (cover.intersects(v)) overlap = true;
            cover = cover.unite(v);
            used.insert(v);
        }
        if (overlap)
            out.push_back({ViolationKind::BlockOverlap, "blocks overlap within simplex " + s.to_string()});
        else if (!(cover == all))
            out.push_back({ViolationKind::CoverGap,
                           "simplex " + s.to_string() + " does not cover the party set"});
    }

    for (const Block& v : k.vertices)
        if (used.find(v) == used.end())
            out.push_back({ViolationKind::UnusedVertex,
                           "vertex " + v.to_string() + " belongs to no maximal simplex"});

    for (std::size_t i = 0; i < k.maximal.size(); ++i)
        for (std::size_t j = 0; j < k.maximal.size(); ++j)
            if (i != j && k.maximal[i].is_face_of(k.maximal[j]))
                out.push_back({ViolationKind::AntichainViolation,
                               "maximal simplex " + k.maximal[i].to_string() + " is contained in " +
                                   k.maximal[j].to_string()});

    // With abstract complexes the intersection of two simplices is always the
    // simplex on the shared vertices, hence a common face; asserted anyway.
    for (std::size_t i = 0; i < k.maximal.size(); ++i)
        for (std::size_t j = i + 1; j < k.maximal.size(); ++j) {
            std::vector<Block> shared;
            std::set_intersection(k.maximal[i].vertices().begin(), k.maximal[i].vertices().end(),
                                  k.maximal[j].vertices().begin(), k.maximal[j].vertices().end(),
                                  std::back_inserter(shared));
            if (shared.empty()) continue;
            Simplex face{shared};
            if (!face.is_face_of(k.maximal[i]) || !face.is_face_of(k.maximal[j]))
                out.push_back({ViolationKind::IntersectionNotFace,
                               "intersection of " + k.maximal[i].to_string() + " and " +
                                   k.maximal[j].to_string() + " is not a common face"});
        }

    return out;
}

SimplicialComplex build_polytope(const PartitionAntichain& a) {
    SimplicialComplex k;
    k.party_count = a.party_count();
    std::set<Block> labels;
    for (const Partition& p : a.elements()) {
        for (const Block& b : p.blocks()) labels.insert(b);
        k.maximal.emplace_back(std::vector<Block>(p.blocks().begin(), p.blocks().end()));
    }
    k.vertices.assign(labels.begin(), labels.end());
    std::sort(k.maximal.begin(), k.maximal.end());
    return k;
}

SimplicialComplex build_polytope(const std::vector<Partition>& partitions) {
    return build_polytope(PartitionAntichain(partitions));
}

PartitionAntichain read_antichain(const SimplicialComplex& k) {
    std::vector<Partition> ps;
    ps.reserve(k.maximal.size());
    for (const Simplex& s : k.maximal) ps.emplace_back(s.vertices(), k.party_count);
    return PartitionAntichain(std::move(ps));
}

FVector f_vector(const SimplicialComplex& k) {
    std::set<std::vector<Block>> faces;
    for (const Simplex& s : k.maximal) {
        const auto& vs = s.vertices();
        const std::size_t m = vs.size();
        for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << m); ++sub) {
            std::vector<Block> face;
            for (std::size_t i = 0; i < m; ++i)
                if ((sub >> i) & 1) face.push_back(vs[i]);
            faces.insert(std::move(face));
        }
    }
    FVector f;
    for (const auto& face : faces) {
        const std::size_t dim = face.size() - 1;
        if (f.counts.size() <= dim) f.counts.resize(dim + 1, 0);
        ++f.counts[dim];
    }
    return f;
}

std::string to_string(const FVector& f) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < f.counts.size(); ++i) {
        if (i) os << ',';
        os << f.counts[i];
    }
    os << ')';
    return os.str();
}

int connected_components(const SimplicialComplex& k) {
    const int nv = static_cast<int>(k.vertices.size());
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto index_of = [&](const Block& v) {
        return static_cast<int>(std::lower_bound(k.vertices.begin(), k.vertices.end(), v) -
                                k.vertices.begin());
    };
    for (const Simplex& s : k.maximal) {
        int root = find(index_of(s.vertices().front()));
        for (const Block& v : s.vertices()) parent[find(index_of(v))] = root;
    }
    int components = 0;
    for (int i = 0; i < nv; ++i)
        if (find(i) == i) ++components;
    return components;
}

bool is_single_simplex(const SimplicialComplex& k) {
    return k.maximal.size() == 1 && k.maximal[0].vertices().size() == k.vertices.size();
}

Block SimplicialMap::apply(const Block& v) const {
    auto it = table_.find(v);
    if (it == table_.end()) throw UnmappedVertex("vertex " + v.to_string() + " has no image");
    return it->second;
}

SimplicialMap make_simplicial_map(const SimplicialComplex& src, const SimplicialComplex& dst,
                                  const std::map<Block, Block>& vertex_map) {
    std::set<Block> dst_vertices(dst.vertices.begin(), dst.vertices.end());
    std::map<Block, Block> table;
    for (const Block& v : src.vertices) {
        auto it = vertex_map.find(v);
        if (it == vertex_map.end())
            throw UnmappedVertex("source vertex " + v.to_string() + " has no image");
        if (dst_vertices.find(it->second) == dst_vertices.end())
            throw NotSimplicial("image " + it->second.to_string() + " of vertex " + v.to_string() +
                                " is not a target vertex");
        table.emplace(v, it->second);
    }
    for (const Simplex& s : src.maximal) {
        std::set<Block> image;
        for (const Block& v : s.vertices()) image.insert(table.at(v));
        Simplex img{std::vector<Block>(image.begin(), image.end())};
        bool covered = false;
        for (const Simplex& t : dst.maximal)
            if (img.is_face_of(t)) {
                covered = true;
                break;
            }
        if (!covered)
            throw NotSimplicial("image " + img.to_string() + " of simplex " + s.to_string() +
                                " lies in no target simplex");
    }
    SimplicialMap m;
    m.source_ = src;
    m.target_ = dst;
    m.table_ = std::move(table);
    return m;
}

SimplicialMap identity_map(const SimplicialComplex& k) {
    std::map<Block, Block> table;
    for (const Block& v : k.vertices) table.emplace(v, v);
    return make_simplicial_map(k, k, table);
}

SimplicialMap compose(const SimplicialMap& f, const SimplicialMap& g) {
    if (!(f.target() == g.source()))
        throw ChainMismatch("compose: target of the first map differs from source of the second");
    std::map<Block, Block> table;
    for (const auto& [v, w] : f.table()) table.emplace(v, g.apply(w));
    return make_simplicial_map(f.source(), g.target(), table);
}

}  // namespace seppoly

#include "seppoly/dynamics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace seppoly {

std::string to_string(GateKind k) {
    switch (k) {
        case GateKind::Local1: return "local";
        case GateKind::Entangling2: return "entangling";
        case GateKind::Product2: return "product";
        case GateKind::Explicit2: return "explicit";
    }
    return "?";
}

static void require_two_distinct(int a, int b) {
    if (a == b) throw IndexOutOfRange("two-qubit gate targets must be distinct");
    if (a < 0 || b < 0) throw IndexOutOfRange("gate target is negative");
}

GateOp GateOp::local1(int target) {
    if (target < 0) throw IndexOutOfRange("gate target is negative");
    return GateOp{GateKind::Local1, {target}, {}, 2, 2};
}

GateOp GateOp::entangling2(int a, int b) {
    require_two_distinct(a, b);
    return GateOp{GateKind::Entangling2, {a, b}, {}, 2, 2};
}

GateOp GateOp::product2(int a, int b) {
    require_two_distinct(a, b);
    return GateOp{GateKind::Product2, {a, b}, {}, 2, 2};
}

GateOp GateOp::explicit2(int a, int b, Matrix unitary, int dim_a, int dim_b) {
    require_two_distinct(a, b);
    return GateOp{GateKind::Explicit2, {a, b}, std::move(unitary), dim_a, dim_b};
}

Circuit::Circuit(int party_count, std::vector<GateOp> gates)
    : party_count(party_count), gates(std::move(gates)) {
    PartySet guard(party_count);
    for (const GateOp& g : this->gates)
        for (int t : g.targets)
            if (t < 0 || t >= party_count)
                throw IndexOutOfRange("gate target " + std::to_string(t) + " out of range for " +
                                      std::to_string(party_count) + " parties");
}

bool is_entangling(const GateOp& g, double tol) {
    switch (g.kind) {
        case GateKind::Local1:
        case GateKind::Product2: return false;
        case GateKind::Entangling2: return true;
        case GateKind::Explicit2: return operator_schmidt_rank(g.unitary, g.dim_a, g.dim_b, tol) > 1;
    }
    return false;
}

Partition gate_on_partition(const Partition& s, const GateOp& g, double tol) {
    for (int t : g.targets)
        if (t < 0 || t >= s.party_count())
            throw IndexOutOfRange("gate target " + std::to_string(t) + " out of range");
    if (g.targets.size() < 2 || !is_entangling(g, tol)) return s;
    return merge_blocks(s, g.targets[0], g.targets[1]);
}

StepResult evolve_step(const PartitionAntichain& a, const GateOp& g, double tol) {
    const auto& olds = a.elements();
    std::vector<Partition> evolved;
    std::vector<MergeEvent> merges;
    evolved.reserve(olds.size());
    for (const Partition& s : olds) {
        Partition t = gate_on_partition(s, g, tol);
        if (!(t == s))
            merges.push_back({s, s.block_of(g.targets[0]), s.block_of(g.targets[1]),
                              t.block_of(g.targets[0])});
        evolved.push_back(std::move(t));
    }

    PartitionAntichain after = maximal_elements(evolved);
    SimplicialComplex before_k = build_polytope(a);
    SimplicialComplex after_k = build_polytope(after);
    std::set<Block> new_vertices(after_k.vertices.begin(), after_k.vertices.end());
    std::set<Partition> survivors(after.elements().begin(), after.elements().end());

    // Natural rule: an old block maps to the block of its own partition's
    // evolution that contains it.  A vertex shared between partitions must
    // receive one label, and the label must survive re-maximalization.
    std::map<Block, std::set<Block>> candidates;
    for (std::size_t i = 0; i < olds.size(); ++i)
        for (const Block& b : olds[i].blocks())
            candidates[b].insert(evolved[i].block_of(b.min_member()));

    auto vertex_clean = [&](const Block& b) {
        const auto& c = candidates.at(b);
        return c.size() == 1 && new_vertices.count(*c.begin()) > 0;
    };

    std::vector<bool> simplex_good(olds.size());
    bool all_good = true;
    for (std::size_t i = 0; i < olds.size(); ++i) {
        bool good = survivors.count(evolved[i]) > 0;
        for (const Block& b : olds[i].blocks())
            if (good && !vertex_clean(b)) good = false;
        simplex_good[i] = good;
        all_good = all_good && good;
    }

    std::map<Block, Block> table;
    bool degenerate = false;
    if (all_good) {
        for (const auto& [b, c] : candidates) table.emplace(b, *c.begin());
    } else {
        // Fall back per connected component of the old complex: components in
        // which the natural rule holds everywhere keep it, the rest collapse
        // to one deterministic vertex of a surviving simplex.
        degenerate = true;
        std::map<Block, int> comp;
        int ncomp = 0;
        for (const Block& v : before_k.vertices) comp[v] = ncomp++;
        // Union components through simplices (small sizes, direct relabel).
        for (const Partition& s : olds) {
            int target = comp[s.blocks().front()];
            for (const Block& b : s.blocks()) {
                int from = comp[b];
                if (from == target) continue;
                for (auto& [v, c] : comp)
                    if (c == from) c = target;
            }
        }
        std::set<int> bad_components;
        for (std::size_t i = 0; i < olds.size(); ++i)
            if (!simplex_good[i]) bad_components.insert(comp[olds[i].blocks().front()]);

        std::map<int, Block> collapse_target;
        for (std::size_t i = 0; i < olds.size(); ++i) {
            int c = comp[olds[i].blocks().front()];
            if (bad_components.count(c) == 0 || collapse_target.count(c) > 0) continue;
            // First surviving partition refining this simplex's evolution.
            for (const Partition& t : after.elements())
                if (refines(t, evolved[i])) {
                    collapse_target.emplace(c, t.blocks().front());
                    break;
                }
        }
        for (const auto& [b, c] : candidates) {
            int component = comp.at(b);
            if (bad_components.count(component) > 0)
                table.emplace(b, collapse_target.at(component));
            else
                table.emplace(b, *c.begin());
        }
    }

    StepResult out{std::move(after), make_simplicial_map(before_k, after_k, table),
                   std::move(merges), false, degenerate};
    out.changed = !(out.after == a);
    return out;
}

EvolutionTrace run_circuit(const PartitionAntichain& a0, const Circuit& c, double tol) {
    if (a0.party_count() != c.party_count)
        throw MismatchedPartySet("circuit party count differs from the antichain's");

    PartitionAntichain current = a0;
    SimplicialComplex current_k = build_polytope(current);
    SimplicialMap composed = identity_map(current_k);
    std::vector<TraceStep> steps;
    int last_changing = 0;
    for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
        StepResult r = evolve_step(current, c.gates[gi], tol);
        SimplicialComplex next_k = build_polytope(r.after);
        composed = compose(composed, r.map);
        if (r.changed) last_changing = static_cast<int>(gi) + 1;
        steps.push_back({c.gates[gi], current_k, next_k, r.map, std::move(r.merges), r.changed,
                         r.degenerate});
        current = std::move(r.after);
        current_k = std::move(next_k);
    }

    std::optional<int> fixed_point = last_changing;
    const bool terminal = current.size() == 1 && current.elements()[0].block_count() == 1;
    if (!steps.empty() && last_changing == static_cast<int>(steps.size()) && !terminal)
        fixed_point.reset();  // still coarsening when the circuit ended

    return EvolutionTrace{a0, std::move(current), std::move(steps), std::move(composed), fixed_point};
}

ProfileRun profile_seeded_run(const DensityMatrix& rho,
                              const std::vector<WitnessedEnsemble>& witnesses, const Circuit& c,
                              const ProfileOptions& opts) {
    if (rho.spec().party_count() != c.party_count)
        throw MismatchedPartySet("circuit party count differs from the state's");
    SeparabilityProfile profile = compute_profile(rho, witnesses, opts);
    EvolutionTrace trace = run_circuit(profile.certified_maximal, c, opts.ppt_tol);
    return ProfileRun{std::move(profile), std::move(trace)};
}

}  // namespace seppoly

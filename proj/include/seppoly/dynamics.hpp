#pragma once

#include <optional>
#include <vector>

#include "seppoly/quantum.hpp"
#include "seppoly/simplicial.hpp"

namespace seppoly {

enum class GateKind { Local1, Entangling2, Product2, Explicit2 };

std::string to_string(GateKind k);

/// One circuit step: a 1-qubit gate or a 2-qubit gate whose entangling
/// status is declared (Entangling2/Product2) or computed from an explicit
/// unitary (Explicit2).
struct GateOp {
    GateKind kind = GateKind::Local1;
    std::vector<int> targets;
    Matrix unitary;          // Explicit2 payload
    int dim_a = 2, dim_b = 2;

    static GateOp local1(int target);
    static GateOp entangling2(int a, int b);
    static GateOp product2(int a, int b);
    static GateOp explicit2(int a, int b, Matrix unitary, int dim_a = 2, int dim_b = 2);
};

struct Circuit {
    int party_count = 0;
    std::vector<GateOp> gates;

    Circuit(int party_count, std::vector<GateOp> gates);
};

/// Local and declared-product gates never entangle; Explicit2 gates are
/// classified by operator Schmidt rank.  Throws NotUnitary.
bool is_entangling(const GateOp& g, double tol = kDefaultPptTol);

/// Case (i): targets inside one block, or a non-entangling gate - the
/// partition is unchanged.  Case (ii): an entangling gate across two blocks
/// merges them.
Partition gate_on_partition(const Partition& s, const GateOp& g, double tol = kDefaultPptTol);

/// A block merge performed by one gate application within one maximal
/// partition.
struct MergeEvent {
    Partition source;
    Block first;
    Block second;
    Block merged;
};

struct StepResult {
    PartitionAntichain after;
    SimplicialMap map;
    std::vector<MergeEvent> merges;
    bool changed = false;
    /// Set when the natural vertex map (old block to the evolved block
    /// containing it) was not simplicial and a component collapse was
    /// substituted; see run_circuit notes in the README.
    bool degenerate = false;
};

/// Applies the gate to every maximal partition, re-maximalizes, rebuilds the
/// polytope and extracts the vertex map (identifying old vertices whose
/// evolved labels coincide).
StepResult evolve_step(const PartitionAntichain& a, const GateOp& g, double tol = kDefaultPptTol);

struct TraceStep {
    GateOp gate;
    SimplicialComplex before;
    SimplicialComplex after;
    SimplicialMap map;
    std::vector<MergeEvent> merged;
    bool changed = false;
    bool degenerate = false;
};

struct EvolutionTrace {
    PartitionAntichain initial;
    PartitionAntichain final_antichain;
    std::vector<TraceStep> steps;
    SimplicialMap composed;
    /// 1-based index of the last complex-changing step (0 when none changed);
    /// absent when the final step still changed a complex that could keep
    /// coarsening.
    std::optional<int> fixed_point_index;
};

EvolutionTrace run_circuit(const PartitionAntichain& a0, const Circuit& c,
                           double tol = kDefaultPptTol);

struct ProfileRun {
    SeparabilityProfile profile;  // unknown partitions reported here
    EvolutionTrace trace;
};

/// Seeds run_circuit with the certified-separable maxima of the state's
/// profile; Unknown partitions are excluded from the seed and surfaced in
/// the profile.
ProfileRun profile_seeded_run(const DensityMatrix& rho,
                              const std::vector<WitnessedEnsemble>& witnesses, const Circuit& c,
                              const ProfileOptions& opts = {});

}  // namespace seppoly

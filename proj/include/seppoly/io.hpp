#pragma once

#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>

#include "seppoly/classify.hpp"
#include "seppoly/dynamics.hpp"

namespace seppoly::io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

/// Structural document problems (missing keys, wrong types, mixed label
/// kinds).  Maps to CLI exit code 1; domain errors map to 2, guards to 3.
struct ParseError : Error {
    using Error::Error;
};

struct RunOptions {
    std::optional<double> tol;  // PPT / factorization tolerance override
    std::uint64_t seed = 0;     // default seed for haar factors

    ProfileOptions profile_options() const;
    double ppt_tol() const { return profile_options().ppt_tol; }
};

/// Party labels for documents that name parties with strings; index order is
/// the internal 0..n-1 order.
using LabelMap = std::vector<std::string>;

struct ParsedPartitions {
    int n = 0;
    std::vector<Partition> partitions;
    std::optional<LabelMap> labels;
};

struct ParsedState {
    DensityMatrix rho;
    std::vector<WitnessedEnsemble> witnesses;
};

bool looks_like_state_doc(const json& doc);

ParsedPartitions parse_partition_doc(const json& doc);
ParsedState parse_state_doc(const json& doc, const RunOptions& opt);
Circuit parse_circuit_doc(const json& doc);

ojson block_json(const Block& b);
ojson partition_json(const Partition& p);
ojson antichain_json(const PartitionAntichain& a);

/// Antichain plus bookkeeping shared by the polytope/classify/evolve
/// commands: Unknown-verdict partitions for state inputs, maximalization
/// warnings for partition documents.
struct Analysis {
    PartitionAntichain antichain;
    std::optional<std::vector<Partition>> unknown;  // present for state inputs
    std::vector<std::string> warnings;
    std::optional<LabelMap> labels;
};

Analysis analyze_input(const json& doc, const RunOptions& opt);

ojson polytope_report(const Analysis& a);
ojson classify_report(const Analysis& a);
ojson evolve_report(const EvolutionTrace& trace, const Analysis& seed_info);

std::string dot_skeleton(const SimplicialComplex& k);

/// Streams {"n", "count", "partitions": [...]} without materializing the
/// enumeration.
void write_enumeration(std::ostream& out, int n);

ojson lattice_compare(int n, const json& p, const json& q);
ojson lattice_join(int n, const json& p, const json& q);
ojson lattice_meet(int n, const json& p, const json& q);

}  // namespace seppoly::io

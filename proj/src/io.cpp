#include "seppoly/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>

namespace seppoly::io {

ProfileOptions RunOptions::profile_options() const {
    ProfileOptions o;
    if (tol) {
        o.ppt_tol = *tol;
        o.purity_tol = *tol;
    }
    return o;
}

namespace {

const json& require(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

int require_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<int>();
}

Complex parse_complex_entry(const json& e) {
    if (e.is_number()) return Complex{e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return Complex{e[0].get<double>(), e[1].get<double>()};
    throw ParseError("complex entries must be numbers or [re, im] pairs");
}

Vector parse_amplitudes(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("amplitudes must be a nonempty array");
    Vector v(static_cast<long>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<long>(i)) = parse_complex_entry(j[i]);
    return v;
}

Matrix parse_complex_matrix(const json& j, long dim) {
    if (!j.is_array() || static_cast<long>(j.size()) != dim * dim)
        throw ParseError("matrix must be a flat row-major array of " + std::to_string(dim * dim) +
                         " entries");
    Matrix m(dim, dim);
    for (long r = 0; r < dim; ++r)
        for (long c = 0; c < dim; ++c) m(r, c) = parse_complex_entry(j[static_cast<std::size_t>(r * dim + c)]);
    return m;
}

std::vector<int> parse_dims(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("dims must be a nonempty array");
    std::vector<int> dims;
    for (const json& d : j) dims.push_back(require_int(d, "dimension"));
    return dims;
}

PureState normalized_state(Vector amps, HilbertSpec spec) {
    const double norm = amps.norm();
    if (norm <= 0.0) throw ParseError("state amplitudes are all zero");
    amps /= norm;
    return PureState(std::move(amps), std::move(spec));
}

PureState resolve_pure(const json& spec, std::mt19937_64& rng);

PureState family_pure(const json& fam, std::mt19937_64& rng) {
    const std::string name = require(fam, "name").get<std::string>();
    if (name == "ghz") return ghz_state(fam.value("parties", 3), fam.value("dim", 2));
    if (name == "w") return w_state(fam.value("parties", 3));
    if (name == "bell") {
        static const std::map<std::string, int> which{
            {"phi+", 0}, {"phi-", 1}, {"psi+", 2}, {"psi-", 3}};
        auto it = which.find(fam.value("which", "phi+"));
        if (it == which.end()) throw ParseError("unknown bell state \"" + fam.value("which", "") + "\"");
        return bell_state(it->second);
    }
    if (name == "product") {
        const json& factors = require(fam, "factors");
        if (!factors.is_array() || factors.empty())
            throw ParseError("product family needs a nonempty factors array");
        std::vector<PureState> parts;
        for (const json& f : factors) parts.push_back(resolve_pure(f, rng));
        return tensor_pure(parts);
    }
    if (name == "mixture") throw ParseError("a mixture is not a pure state");
    throw ParseError("unknown state family \"" + name + "\"");
}

PureState resolve_pure(const json& spec, std::mt19937_64& rng) {
    if (spec.contains("family")) return family_pure(spec["family"], rng);
    if (spec.contains("haar"))
        return haar_random_state(HilbertSpec(parse_dims(require(spec["haar"], "dims"))), rng);
    if (spec.contains("amplitudes")) {
        Vector amps = parse_amplitudes(spec["amplitudes"]);
        HilbertSpec hs = spec.contains("dims")
                             ? HilbertSpec(parse_dims(spec["dims"]))
                             : HilbertSpec::qubits(static_cast<int>(std::llround(
                                   std::log2(static_cast<double>(amps.size())))));
        return normalized_state(std::move(amps), std::move(hs));
    }
    throw ParseError("state spec needs \"family\", \"haar\" or \"amplitudes\"");
}

std::uint64_t pick_seed(const json& doc, const RunOptions& opt) {
    if (doc.contains("family") && doc["family"].contains("seed"))
        return doc["family"]["seed"].get<std::uint64_t>();
    if (doc.contains("seed")) return doc["seed"].get<std::uint64_t>();
    return opt.seed;
}

WitnessedEnsemble parse_ensemble(const json& ens, const HilbertSpec& spec) {
    std::vector<std::vector<int>> blocks;
    for (const json& b : require(ens, "partition")) {
        std::vector<int> block;
        for (const json& m : b) block.push_back(require_int(m, "party index"));
        blocks.push_back(std::move(block));
    }
    Partition part = make_partition(blocks, spec.party_count());

    // Factors arrive in the document's block order; store them in the
    // partition's canonical order.
    std::vector<std::size_t> slot_of;
    for (const auto& raw : blocks) {
        Block b = Block::from_members(raw);
        slot_of.push_back(static_cast<std::size_t>(
            std::find(part.blocks().begin(), part.blocks().end(), b) - part.blocks().begin()));
    }

    WitnessedEnsemble e{part, spec, {}};
    for (const json& t : require(ens, "terms")) {
        EnsembleTerm term;
        term.weight = require(t, "weight").get<double>();
        term.factors.resize(part.blocks().size());
        const json& factors = require(t, "factors");
        if (factors.size() != part.blocks().size())
            throw ParseError("term needs one factor per partition block");
        for (std::size_t k = 0; k < factors.size(); ++k) {
            const long dim = spec.dim_of(part.blocks()[slot_of[k]]);
            const json& f = factors[k];
            if (f.contains("matrix")) {
                term.factors[slot_of[k]] = parse_complex_matrix(f["matrix"], dim);
            } else if (f.contains("state")) {
                Vector amps = parse_amplitudes(f["state"]);
                if (amps.size() != dim)
                    throw ParseError("factor state has length " + std::to_string(amps.size()) +
                                     ", block needs " + std::to_string(dim));
                amps /= amps.norm();
                term.factors[slot_of[k]] = amps * amps.adjoint();
            } else {
                throw ParseError("factor needs \"state\" or \"matrix\"");
            }
        }
        e.terms.push_back(std::move(term));
    }
    return e;
}

// Old-vertex groups identified into one new vertex by a map step.
ojson identifications_json(const SimplicialMap& map) {
    std::map<Block, std::vector<Block>> preimages;
    for (const auto& [src, dst] : map.table()) preimages[dst].push_back(src);
    ojson out = ojson::array();
    for (const auto& [dst, srcs] : preimages) {
        if (srcs.size() < 2) continue;
        ojson entry;
        entry["vertex"] = block_json(dst);
        ojson pre = ojson::array();
        for (const Block& s : srcs) pre.push_back(block_json(s));
        entry["preimages"] = pre;
        out.push_back(entry);
    }
    return out;
}

ojson vertex_map_json(const SimplicialMap& map) {
    ojson out = ojson::array();
    for (const auto& [src, dst] : map.table()) out.push_back(ojson::array({block_json(src), block_json(dst)}));
    return out;
}

ojson class_json(const ThreeQubitClass& c) {
    ojson out;
    out["kind"] = to_string(c.kind);
    out["splits"] = c.splits;
    return out;
}

ojson f_vector_json(const FVector& f) { return ojson(f.counts); }

ojson gate_json(const GateOp& g) {
    ojson out;
    out["kind"] = to_string(g.kind);
    out["targets"] = g.targets;
    return out;
}

Partition partition_from_json(const json& j, int n) {
    std::vector<std::vector<int>> blocks;
    if (!j.is_array()) throw ParseError("partition must be an array of blocks");
    for (const json& b : j) {
        std::vector<int> block;
        for (const json& m : b) block.push_back(require_int(m, "party index"));
        blocks.push_back(std::move(block));
    }
    return make_partition(blocks, n);
}

}  // namespace

bool looks_like_state_doc(const json& doc) {
    return doc.contains("family") || doc.contains("ensemble") || doc.contains("ensembles") ||
           doc.contains("amplitudes") || doc.contains("haar");
}

ParsedPartitions parse_partition_doc(const json& doc) {
    const json& parts = require(doc, "partitions");
    if (!parts.is_array() || parts.empty())
        throw ParseError("\"partitions\" must be a nonempty array");

    bool any_string = false, any_int = false;
    for (const json& p : parts)
        for (const json& b : p)
            for (const json& m : b) (m.is_string() ? any_string : any_int) = true;
    if (any_string && any_int) throw ParseError("party labels mix strings and integers");

    ParsedPartitions out;
    std::map<std::string, int> index_of;
    if (any_string) {
        LabelMap labels;
        if (doc.contains("parties")) {
            for (const json& l : doc["parties"]) labels.push_back(l.get<std::string>());
        } else {
            std::set<std::string> seen;
            for (const json& p : parts)
                for (const json& b : p)
                    for (const json& m : b) seen.insert(m.get<std::string>());
            labels.assign(seen.begin(), seen.end());
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (index_of.count(labels[i])) throw ParseError("duplicate party label " + labels[i]);
            index_of[labels[i]] = static_cast<int>(i);
        }
        out.n = static_cast<int>(labels.size());
        out.labels = std::move(labels);
        if (doc.contains("n") && require_int(doc["n"], "n") != out.n)
            throw ParseError("\"n\" disagrees with the number of party labels");
    } else {
        int max_index = -1;
        for (const json& p : parts)
            for (const json& b : p)
                for (const json& m : b) max_index = std::max(max_index, require_int(m, "party index"));
        out.n = doc.contains("n") ? require_int(doc["n"], "n") : max_index + 1;
    }

    for (const json& p : parts) {
        std::vector<std::vector<int>> blocks;
        for (const json& b : p) {
            std::vector<int> block;
            for (const json& m : b)
                block.push_back(any_string ? [&] {
                    auto it = index_of.find(m.get<std::string>());
                    if (it == index_of.end())
                        throw ParseError("party label " + m.get<std::string>() +
                                         " is not in \"parties\"");
                    return it->second;
                }() : m.get<int>());
            blocks.push_back(std::move(block));
        }
        out.partitions.push_back(make_partition(blocks, out.n));
    }
    return out;
}

ParsedState parse_state_doc(const json& doc, const RunOptions& opt) {
    std::mt19937_64 rng(pick_seed(doc, opt));

    if (doc.contains("ensembles") || doc.contains("ensemble")) {
        HilbertSpec spec(parse_dims(require(doc, "dims")));
        std::vector<WitnessedEnsemble> witnesses;
        if (doc.contains("ensembles")) {
            for (const json& e : doc["ensembles"]) witnesses.push_back(parse_ensemble(e, spec));
        } else {
            witnesses.push_back(parse_ensemble(doc["ensemble"], spec));
        }
        if (witnesses.empty()) throw ParseError("\"ensembles\" must be nonempty");
        DensityMatrix rho = assemble(witnesses[0]);
        return ParsedState{std::move(rho), std::move(witnesses)};
    }

    if (doc.contains("family") && require(doc["family"], "name").get<std::string>() == "mixture") {
        const json& fam = doc["family"];
        const json& terms = require(fam, "terms");
        if (!terms.is_array() || terms.empty())
            throw ParseError("mixture needs a nonempty terms array");
        std::optional<Matrix> sum;
        std::optional<HilbertSpec> spec;
        double total = 0.0;
        for (const json& t : terms) {
            const double w = require(t, "weight").get<double>();
            if (w < 0.0) throw WeightError("negative mixture weight");
            total += w;
            PureState psi = resolve_pure(require(t, "state"), rng);
            if (!spec) {
                spec = psi.spec();
                sum = Matrix::Zero(spec->total_dim(), spec->total_dim());
            } else if (!(psi.spec() == *spec)) {
                throw DimMismatch("mixture terms live on different Hilbert specs");
            }
            *sum += w * (psi.amplitudes() * psi.amplitudes().adjoint()).eval();
        }
        if (std::abs(total - 1.0) > kTraceTol)
            throw WeightError("mixture weights sum to " + std::to_string(total));
        return ParsedState{DensityMatrix(std::move(*sum), std::move(*spec)), {}};
    }

    PureState psi = resolve_pure(doc, rng);
    return ParsedState{DensityMatrix::pure(psi), {}};
}

Circuit parse_circuit_doc(const json& doc) {
    const int n = require_int(require(doc, "n"), "n");
    std::vector<GateOp> gates;
    for (const json& g : require(doc, "gates")) {
        const std::string kind = require(g, "kind").get<std::string>();
        const json& targets = require(g, "targets");
        if (kind == "local") {
            if (targets.size() != 1) throw ParseError("local gates take one target");
            gates.push_back(GateOp::local1(require_int(targets[0], "target")));
            continue;
        }
        if (targets.size() != 2) throw ParseError("two-qubit gates take two targets");
        const int a = require_int(targets[0], "target");
        const int b = require_int(targets[1], "target");
        if (kind == "entangling") {
            gates.push_back(GateOp::entangling2(a, b));
        } else if (kind == "product") {
            gates.push_back(GateOp::product2(a, b));
        } else if (kind == "explicit") {
            int da = 2, db = 2;
            if (g.contains("dims")) {
                auto dims = parse_dims(g["dims"]);
                if (dims.size() != 2) throw ParseError("explicit gate dims must list two factors");
                da = dims[0];
                db = dims[1];
            }
            gates.push_back(
                GateOp::explicit2(a, b, parse_complex_matrix(require(g, "matrix"), long{da} * db), da, db));
        } else {
            throw ParseError("unknown gate kind \"" + kind + "\"");
        }
    }
    return Circuit(n, std::move(gates));
}

ojson block_json(const Block& b) { return ojson(b.members()); }

ojson partition_json(const Partition& p) {
    ojson out = ojson::array();
    for (const Block& b : p.blocks()) out.push_back(block_json(b));
    return out;
}

ojson antichain_json(const PartitionAntichain& a) {
    ojson out = ojson::array();
    for (const Partition& p : a.elements()) out.push_back(partition_json(p));
    return out;
}

Analysis analyze_input(const json& doc, const RunOptions& opt) {
    if (looks_like_state_doc(doc)) {
        ParsedState st = parse_state_doc(doc, opt);
        SeparabilityProfile profile = compute_profile(st.rho, st.witnesses, opt.profile_options());
        return Analysis{profile.certified_maximal, profile.unknown, {}, {}};
    }
    ParsedPartitions pd = parse_partition_doc(doc);
    PartitionAntichain a = maximal_elements(pd.partitions);
    std::vector<std::string> warnings;
    std::set<Partition> kept(a.elements().begin(), a.elements().end());
    for (const Partition& p : pd.partitions)
        if (kept.find(p) == kept.end())
            warnings.push_back("non-maximal partition " + p.to_string() +
                               " dropped (covered by the downward closure)");
    return Analysis{std::move(a), {}, std::move(warnings), std::move(pd.labels)};
}

ojson polytope_report(const Analysis& a) {
    SimplicialComplex k = build_polytope(a.antichain);
    ojson r;
    r["n"] = k.party_count;
    if (a.labels) r["party_labels"] = *a.labels;
    ojson vs = ojson::array();
    for (const Block& v : k.vertices) vs.push_back(block_json(v));
    r["vertices"] = vs;
    r["partitions"] = antichain_json(a.antichain);
    r["f_vector"] = f_vector_json(f_vector(k));
    r["connected_components"] = connected_components(k);
    r["single_simplex"] = is_single_simplex(k);
    r["relloc"] = partition_json(relloc_partition(a.antichain));
    if (k.party_count == 3) r["class"] = class_json(classify_three(a.antichain));
    if (a.unknown) {
        ojson u = ojson::array();
        for (const Partition& p : *a.unknown) u.push_back(partition_json(p));
        r["unknown"] = u;
    }
    if (!a.warnings.empty()) r["warnings"] = a.warnings;
    return r;
}

ojson classify_report(const Analysis& a) {
    ThreeQubitClass c = classify_three(a.antichain);
    PolytopeSignature sig = polytope_signature(a.antichain);
    ojson r;
    r["n"] = 3;
    if (a.labels) r["party_labels"] = *a.labels;
    r["class"] = class_json(c);
    ojson s;
    s["f_vector"] = f_vector_json(sig.f);
    s["connected_components"] = sig.components;
    s["single_simplex"] = sig.single_simplex;
    r["signature"] = s;
    if (a.unknown) {
        ojson u = ojson::array();
        for (const Partition& p : *a.unknown) u.push_back(partition_json(p));
        r["unknown"] = u;
    }
    if (!a.warnings.empty()) r["warnings"] = a.warnings;
    return r;
}

ojson evolve_report(const EvolutionTrace& trace, const Analysis& seed_info) {
    ojson r;
    r["n"] = trace.initial.party_count();
    if (seed_info.labels) r["party_labels"] = *seed_info.labels;
    r["initial"] = antichain_json(trace.initial);
    ojson steps = ojson::array();
    for (const TraceStep& s : trace.steps) {
        ojson step;
        step["gate"] = gate_json(s.gate);
        step["changed"] = s.changed;
        if (s.degenerate) step["degenerate"] = true;
        step["before"] = antichain_json(read_antichain(s.before));
        step["after"] = antichain_json(read_antichain(s.after));
        step["vertex_map"] = vertex_map_json(s.map);
        ojson merges = ojson::array();
        for (const MergeEvent& m : s.merged) {
            ojson e;
            e["partition"] = partition_json(m.source);
            e["first"] = block_json(m.first);
            e["second"] = block_json(m.second);
            e["merged"] = block_json(m.merged);
            merges.push_back(e);
        }
        step["merges"] = merges;
        step["identified"] = identifications_json(s.map);
        steps.push_back(step);
    }
    r["steps"] = steps;
    r["final"] = antichain_json(trace.final_antichain);
    r["composed"] = vertex_map_json(trace.composed);
    if (trace.fixed_point_index)
        r["fixed_point_index"] = *trace.fixed_point_index;
    else
        r["fixed_point_index"] = nullptr;
    if (seed_info.unknown) {
        ojson u = ojson::array();
        for (const Partition& p : *seed_info.unknown) u.push_back(partition_json(p));
        r["unknown"] = u;
    }
    if (!seed_info.warnings.empty()) r["warnings"] = seed_info.warnings;
    return r;
}

std::string dot_skeleton(const SimplicialComplex& k) {
    const std::size_t nv = k.vertices.size();
    const double radius = nv <= 1 ? 0.0 : 1.0 + 0.4 * static_cast<double>(nv);
    std::string out = "graph separability_polytope {\n  layout=neato;\n  node [shape=circle];\n";
    char buf[128];
    for (std::size_t i = 0; i < nv; ++i) {
        const double angle = nv == 0 ? 0.0 : 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(nv);
        std::snprintf(buf, sizeof buf, "  v%zu [label=\"%s\", pos=\"%.4f,%.4f!\"];\n", i,
                      k.vertices[i].to_string().c_str(), radius * std::cos(angle),
                      radius * std::sin(angle));
        out += buf;
    }
    auto index_of = [&](const Block& v) {
        return static_cast<std::size_t>(std::lower_bound(k.vertices.begin(), k.vertices.end(), v) -
                                        k.vertices.begin());
    };
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const Simplex& s : k.maximal)
        for (std::size_t i = 0; i < s.vertices().size(); ++i)
            for (std::size_t j = i + 1; j < s.vertices().size(); ++j) {
                std::size_t a = index_of(s.vertices()[i]);
                std::size_t b = index_of(s.vertices()[j]);
                edges.insert({std::min(a, b), std::max(a, b)});
            }
    for (const auto& [a, b] : edges) {
        std::snprintf(buf, sizeof buf, "  v%zu -- v%zu;\n", a, b);
        out += buf;
    }
    out += "}\n";
    return out;
}

void write_enumeration(std::ostream& out, int n) {
    if (n < 1) throw IndexOutOfRange("party count must be at least 1");
    if (n > kEnumerationGuard)
        throw GuardExceeded("enumeration limited to n <= " + std::to_string(kEnumerationGuard));
    long long count = 0;
    for_each_partition(n, [&](const Partition&) { ++count; });
    out << "{\"n\": " << n << ", \"count\": " << count << ", \"partitions\": [\n";
    bool first = true;
    for_each_partition(n, [&](const Partition& p) {
        if (!first) out << ",\n";
        out << partition_json(p).dump();
        first = false;
    });
    out << "\n]}\n";
}

ojson lattice_compare(int n, const json& p, const json& q) {
    Partition pp = partition_from_json(p, n), qq = partition_from_json(q, n);
    ojson r;
    r["n"] = n;
    r["p"] = partition_json(pp);
    r["q"] = partition_json(qq);
    r["relation"] = to_string(compare(pp, qq));
    return r;
}

ojson lattice_join(int n, const json& p, const json& q) {
    Partition pp = partition_from_json(p, n), qq = partition_from_json(q, n);
    ojson r;
    r["n"] = n;
    r["p"] = partition_json(pp);
    r["q"] = partition_json(qq);
    r["result"] = partition_json(join(pp, qq));
    return r;
}

ojson lattice_meet(int n, const json& p, const json& q) {
    Partition pp = partition_from_json(p, n), qq = partition_from_json(q, n);
    ojson r;
    r["n"] = n;
    r["p"] = partition_json(pp);
    r["q"] = partition_json(qq);
    r["result"] = partition_json(meet(pp, qq));
    return r;
}

}  // namespace seppoly::io

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "seppoly/io.hpp"

using namespace seppoly;
using namespace seppoly::io;

namespace {

json J(const char* text) { return json::parse(text); }

}  // namespace

TEST_CASE("partition docs parse with integer labels") {
    auto pd = parse_partition_doc(J(R"({"n": 3, "partitions": [[[0],[1,2]]]})"));
    CHECK(pd.n == 3);
    CHECK(pd.partitions == std::vector<Partition>{make_partition({{0}, {1, 2}}, 3)});
    CHECK_FALSE(pd.labels.has_value());

    // n inferred from the largest index.
    auto inferred = parse_partition_doc(J(R"({"partitions": [[[0],[1],[2],[3]]]})"));
    CHECK(inferred.n == 4);

    CHECK_THROWS_AS(parse_partition_doc(J(R"({"partitions": []})")), ParseError);
    CHECK_THROWS_AS(parse_partition_doc(J(R"({"n": 3, "partitions": [[[0],[1,"C"]]]})")), ParseError);
    CHECK_THROWS_AS(parse_partition_doc(J(R"({"n": 3, "partitions": [[[0],[0,1,2]]]})")), OverlapError);
}

TEST_CASE("partition docs map string labels and echo them") {
    auto pd = parse_partition_doc(J(R"({"partitions": [[["A"],["B","C"]]]})"));
    CHECK(pd.n == 3);
    REQUIRE(pd.labels.has_value());
    CHECK(*pd.labels == LabelMap{"A", "B", "C"});
    CHECK(pd.partitions[0] == make_partition({{0}, {1, 2}}, 3));

    // Explicit party order wins over sorting.
    auto ordered = parse_partition_doc(J(R"({"parties": ["C","B","A"],
                                            "partitions": [[["C"],["B","A"]]]})"));
    CHECK(ordered.partitions[0] == make_partition({{0}, {1, 2}}, 3));

    Analysis a = analyze_input(J(R"({"partitions": [[["A"],["B","C"]]]})"), {});
    CHECK(polytope_report(a)["party_labels"] == json::array({"A", "B", "C"}));
}

TEST_CASE("non-antichain documents are maximalized with a warning") {
    Analysis a = analyze_input(
        J(R"({"n": 3, "partitions": [[[0],[1,2]], [[0,1,2]]]})"), {});
    CHECK(a.antichain.elements() == std::vector<Partition>{make_partition({{0}, {1, 2}}, 3)});
    REQUIRE(a.warnings.size() == 1);
    ojson report = polytope_report(a);
    CHECK(report.contains("warnings"));
}

TEST_CASE("polytope reports round trip through the partitions key") {
    ojson edge = polytope_report(analyze_input(J(R"({"n": 3, "partitions": [[[0],[1,2]]]})"), {}));
    CHECK(edge["vertices"].size() == 2);
    CHECK(edge["f_vector"] == json::array({2, 1}));
    CHECK(edge["class"]["kind"] == "OneQubitBiseparable");

    json doc = J(R"({"n": 3, "partitions": [[[0],[1,2]], [[1],[0,2]]]})");
    Analysis a = analyze_input(doc, {});
    ojson report = polytope_report(a);
    CHECK(report["f_vector"] == json::array({4, 2}));
    CHECK(report["connected_components"] == 2);
    CHECK(report["single_simplex"] == false);
    CHECK(report["class"]["kind"] == "TwoQubitBiseparable");

    Analysis again = analyze_input(json::parse(report.dump()), {});
    CHECK(build_polytope(again.antichain) == build_polytope(a.antichain));
}

TEST_CASE("state families build the advertised states") {
    RunOptions opt;
    ParsedState ghz = parse_state_doc(J(R"({"family": {"name": "ghz", "parties": 3}})"), opt);
    CHECK(ghz.rho.spec().party_count() == 3);
    CHECK(ghz.rho.purity() == doctest::Approx(1.0));

    ParsedState prod = parse_state_doc(
        J(R"({"family": {"name": "product",
                         "factors": [{"amplitudes": [1, 0]}, {"family": {"name": "bell"}}]}})"),
        opt);
    CHECK(prod.rho.spec().party_count() == 3);
    Analysis a = analyze_input(J(R"({"family": {"name": "product",
        "factors": [{"amplitudes": [1, 0]}, {"family": {"name": "bell"}}]}})"), opt);
    CHECK(a.antichain.elements() == std::vector<Partition>{make_partition({{0}, {1, 2}}, 3)});

    ParsedState mix = parse_state_doc(
        J(R"({"family": {"name": "mixture", "terms": [
            {"weight": 0.5, "state": {"amplitudes": [1,0,0,0]}},
            {"weight": 0.5, "state": {"amplitudes": [0,0,0,1]}}]}})"),
        opt);
    CHECK(mix.rho.purity() == doctest::Approx(0.5));

    CHECK_THROWS_AS(parse_state_doc(J(R"({"family": {"name": "nope"}})"), opt), ParseError);
    CHECK_THROWS_AS(parse_state_doc(
                        J(R"({"family": {"name": "mixture", "terms": [
                            {"weight": 0.9, "state": {"amplitudes": [1,0]}}]}})"),
                        opt),
                    WeightError);
}

TEST_CASE("haar factors are reproducible from the seed") {
    RunOptions opt;
    opt.seed = 42;
    json doc = J(R"({"family": {"name": "product", "factors": [{"haar": {"dims": [2,2]}}]}})");
    ParsedState one = parse_state_doc(doc, opt);
    ParsedState two = parse_state_doc(doc, opt);
    CHECK(one.rho.matrix().isApprox(two.rho.matrix()));

    opt.seed = 43;
    ParsedState three = parse_state_doc(doc, opt);
    CHECK_FALSE(one.rho.matrix().isApprox(three.rho.matrix()));

    // A seed inside the document overrides the CLI seed.
    json seeded = J(R"({"seed": 42, "family": {"name": "product",
                        "factors": [{"haar": {"dims": [2,2]}}]}})");
    ParsedState four = parse_state_doc(seeded, opt);
    CHECK(one.rho.matrix().isApprox(four.rho.matrix()));
}

TEST_CASE("ensemble docs carry witnesses into the profile") {
    json doc = J(R"({
        "dims": [2, 2, 2],
        "ensembles": [
          {"partition": [[0],[1,2]],
           "terms": [
             {"weight": 0.5, "factors": [{"state": [1,0]}, {"state": [1,0,0,0]}]},
             {"weight": 0.5, "factors": [{"state": [0,1]}, {"state": [0,0,0,1]}]}]},
          {"partition": [[0,1],[2]],
           "terms": [
             {"weight": 0.5, "factors": [{"state": [1,0,0,0]}, {"state": [1,0]}]},
             {"weight": 0.5, "factors": [{"state": [0,0,0,1]}, {"state": [0,1]}]}]}
        ]})");
    ParsedState st = parse_state_doc(doc, {});
    CHECK(st.witnesses.size() == 2);

    Analysis a = analyze_input(doc, {});
    CHECK(a.antichain.size() == 2);
    REQUIRE(a.unknown.has_value());
    CHECK_FALSE(a.unknown->empty());

    ojson report = classify_report(a);
    CHECK(report["class"]["kind"] == "TwoQubitBiseparable");
    CHECK(report["class"]["splits"] == json::array({0, 2}));
}

TEST_CASE("circuit docs parse all four gate kinds") {
    json doc = J(R"({
        "n": 3,
        "gates": [
          {"kind": "local", "targets": [0]},
          {"kind": "entangling", "targets": [0, 1]},
          {"kind": "product", "targets": [1, 2]},
          {"kind": "explicit", "targets": [0, 2],
           "matrix": [1,0,0,0, 0,1,0,0, 0,0,0,1, 0,0,1,0]}
        ]})");
    Circuit c = parse_circuit_doc(doc);
    CHECK(c.party_count == 3);
    REQUIRE(c.gates.size() == 4);
    CHECK(c.gates[0].kind == GateKind::Local1);
    CHECK(is_entangling(c.gates[3]));  // the explicit matrix is CNOT

    CHECK_THROWS_AS(parse_circuit_doc(J(R"({"n": 2, "gates": [{"kind": "warp", "targets": [0,1]}]})")),
                    ParseError);
    CHECK_THROWS_AS(parse_circuit_doc(J(R"({"n": 2, "gates": [{"kind": "local", "targets": [5]}]})")),
                    IndexOutOfRange);
}

TEST_CASE("evolve reports record merges and identifications") {
    json initial = J(R"({"n": 3, "partitions": [[[0,1],[2]], [[0],[1,2]]]})");
    json circuit = J(R"({"n": 3, "gates": [{"kind": "entangling", "targets": [0, 2]}]})");
    Analysis a = analyze_input(initial, {});
    EvolutionTrace trace = run_circuit(a.antichain, parse_circuit_doc(circuit), kDefaultPptTol);
    ojson report = evolve_report(trace, a);

    CHECK(report["fixed_point_index"] == 1);
    REQUIRE(report["steps"].size() == 1);
    const auto& step = report["steps"][0];
    CHECK(step["merges"].size() == 2);
    REQUIRE(step["identified"].size() == 1);
    CHECK(step["identified"][0]["vertex"] == json::array({0, 1, 2}));
    CHECK(step["identified"][0]["preimages"].size() == 4);
    CHECK(report["final"] == json::array({json::array({json::array({0, 1, 2})})}));
}

TEST_CASE("lattice helpers emit deterministic JSON") {
    ojson cmp = lattice_compare(4, J("[[0,1],[2,3]]"), J("[[0,2],[1,3]]"));
    CHECK(cmp["relation"] == "Incomparable");

    ojson jn = lattice_join(3, J("[[0],[1,2]]"), J("[[1],[0,2]]"));
    CHECK(jn["result"] == json::array({json::array({0}), json::array({1}), json::array({2})}));

    ojson mt = lattice_meet(3, J("[[0],[1,2]]"), J("[[1],[0,2]]"));
    CHECK(mt["result"] == json::array({json::array({0, 1, 2})}));

    std::ostringstream enumerated;
    write_enumeration(enumerated, 4);
    json parsed = json::parse(enumerated.str());
    CHECK(parsed["count"] == 15);
    CHECK(parsed["partitions"].size() == 15);

    std::ostringstream again;
    write_enumeration(again, 4);
    CHECK(enumerated.str() == again.str());

    CHECK_THROWS_AS(write_enumeration(enumerated, 13), GuardExceeded);
}

TEST_CASE("dot export lays vertices on a circle with skeleton edges") {
    Analysis a = analyze_input(J(R"({"n": 3, "partitions": [[[0],[1],[2]]]})"), {});
    std::string dot = dot_skeleton(build_polytope(a.antichain));
    CHECK(dot.find("graph separability_polytope") != std::string::npos);
    CHECK(dot.find("v0 [label=\"{0}\"") != std::string::npos);
    CHECK(dot.find("v0 -- v1;") != std::string::npos);
    CHECK(dot.find("v1 -- v2;") != std::string::npos);
    CHECK(dot == dot_skeleton(build_polytope(a.antichain)));
}

TEST_CASE("reports are byte-stable across repeated analysis") {
    json doc = J(R"({"seed": 7, "family": {"name": "product",
                     "factors": [{"haar": {"dims": [2]}}, {"family": {"name": "bell"}}]}})");
    RunOptions opt;
    std::string one = polytope_report(analyze_input(doc, opt)).dump(2);
    std::string two = polytope_report(analyze_input(doc, opt)).dump(2);
    CHECK(one == two);
}

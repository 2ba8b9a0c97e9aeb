#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "seppoly/io.hpp"

namespace {

using seppoly::io::json;
using seppoly::io::ojson;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitGuard = 3;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw seppoly::io::ParseError("cannot open " + path);
    json doc;
    in >> doc;
    return doc;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw seppoly::io::ParseError("cannot write " + path);
    out << content;
}

// Uniform error-to-exit-code policy for every subcommand.
int run_guarded(const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const seppoly::GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return kExitGuard;
    } catch (const seppoly::io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const seppoly::Error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    }
}

seppoly::io::RunOptions options_from(const std::optional<double>& tol, std::uint64_t seed) {
    seppoly::io::RunOptions opt;
    opt.seed = seed;
    if (tol) {
        opt.tol = tol;
    } else if (const char* env = std::getenv("SEPPOLY_TOL")) {
        opt.tol = std::strtod(env, nullptr);
    }
    return opt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separability polytopes: build, classify and evolve them"};
    app.require_subcommand(1);

    std::optional<double> tol;
    std::uint64_t seed = 0;
    app.add_option("--tol", tol, "PPT / factorization tolerance (or env SEPPOLY_TOL)");
    app.add_option("--seed", seed, "seed for randomized state families");

    auto* polytope = app.add_subcommand("polytope", "polytope report for partition or state docs");
    std::vector<std::string> poly_files;
    std::string dot_path;
    polytope->add_option("files", poly_files, "input JSON documents")->required();
    polytope->add_option("--dot", dot_path, "write the 1-skeleton as DOT");

    auto* classify = app.add_subcommand("classify", "3-party entanglement-pattern class");
    std::vector<std::string> classify_files;
    classify->add_option("files", classify_files, "input JSON documents")->required();

    auto* evolve = app.add_subcommand("evolve", "run a gate circuit over an initial polytope");
    std::string initial_file, circuit_file, dot_dir;
    evolve->add_option("initial", initial_file, "initial partition or state doc")->required();
    evolve->add_option("circuit", circuit_file, "circuit doc")->required();
    evolve->add_option("--dot-dir", dot_dir, "write per-step DOT files into this directory");

    auto* lattice = app.add_subcommand("lattice", "partition lattice utilities");
    lattice->require_subcommand(1);
    int lattice_n = 0;
    std::string arg_p, arg_q;
    auto* l_enum = lattice->add_subcommand("enumerate", "stream all partitions of n parties");
    l_enum->add_option("n", lattice_n, "party count")->required();
    auto* l_cmp = lattice->add_subcommand("compare", "order relation of two partitions");
    l_cmp->add_option("n", lattice_n, "party count")->required();
    l_cmp->add_option("p", arg_p, "first partition as JSON blocks")->required();
    l_cmp->add_option("q", arg_q, "second partition as JSON blocks")->required();
    auto* l_join = lattice->add_subcommand("join", "coarsest common refinement");
    l_join->add_option("n", lattice_n, "party count")->required();
    l_join->add_option("p", arg_p, "first partition as JSON blocks")->required();
    l_join->add_option("q", arg_q, "second partition as JSON blocks")->required();
    auto* l_meet = lattice->add_subcommand("meet", "finest common coarsening");
    l_meet->add_option("n", lattice_n, "party count")->required();
    l_meet->add_option("p", arg_p, "first partition as JSON blocks")->required();
    l_meet->add_option("q", arg_q, "second partition as JSON blocks")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    const seppoly::io::RunOptions opt = options_from(tol, seed);

    if (*polytope) {
        return run_guarded([&] {
            for (const std::string& file : poly_files) {
                seppoly::io::Analysis a = seppoly::io::analyze_input(load_json(file), opt);
                std::cout << seppoly::io::polytope_report(a).dump(2) << "\n";
                if (!dot_path.empty())
                    write_file(dot_path, seppoly::io::dot_skeleton(seppoly::build_polytope(a.antichain)));
            }
        });
    }

    if (*classify) {
        return run_guarded([&] {
            for (const std::string& file : classify_files) {
                seppoly::io::Analysis a = seppoly::io::analyze_input(load_json(file), opt);
                std::cout << seppoly::io::classify_report(a).dump(2) << "\n";
            }
        });
    }

    if (*evolve) {
        return run_guarded([&] {
            seppoly::io::Analysis a = seppoly::io::analyze_input(load_json(initial_file), opt);
            seppoly::Circuit circuit = seppoly::io::parse_circuit_doc(load_json(circuit_file));
            seppoly::EvolutionTrace trace =
                seppoly::run_circuit(a.antichain, circuit, opt.ppt_tol());
            std::cout << seppoly::io::evolve_report(trace, a).dump(2) << "\n";
            if (!dot_dir.empty()) {
                std::filesystem::create_directories(dot_dir);
                char name[32];
                std::snprintf(name, sizeof name, "step_%04d.dot", 0);
                write_file(dot_dir + "/" + name,
                           seppoly::io::dot_skeleton(seppoly::build_polytope(trace.initial)));
                for (std::size_t i = 0; i < trace.steps.size(); ++i) {
                    std::snprintf(name, sizeof name, "step_%04zu.dot", i + 1);
                    write_file(dot_dir + "/" + name, seppoly::io::dot_skeleton(trace.steps[i].after));
                }
            }
        });
    }

    // lattice
    return run_guarded([&] {
        if (*l_enum) {
            seppoly::io::write_enumeration(std::cout, lattice_n);
        } else if (*l_cmp) {
            std::cout << seppoly::io::lattice_compare(lattice_n, json::parse(arg_p), json::parse(arg_q))
                             .dump(2)
                      << "\n";
        } else if (*l_join) {
            std::cout << seppoly::io::lattice_join(lattice_n, json::parse(arg_p), json::parse(arg_q))
                             .dump(2)
                      << "\n";
        } else if (*l_meet) {
            std::cout << seppoly::io::lattice_meet(lattice_n, json::parse(arg_p), json::parse(arg_q))
                             .dump(2)
                      << "\n";
        }
    });
}

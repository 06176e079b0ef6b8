#include "opred/io.hpp"
#include "opred/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;

nlohmann::json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw opred::ArgumentError("cannot open input file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        // nlohmann reports "parse error at line L, column C: ..."
        throw opred::ArgumentError(std::string(e.what()));
    }
}

int run_reduce(const std::string& input, const std::string& format)
{
    using namespace opred;
    ProblemFile pf = parse_problem(load_json(input));

    std::vector<ReducedEquation> total;
    std::optional<PartialSystem> partial;
    if (pf.spec) {
        total = total_reduce_rank_one(*pf.spec);
        partial = pf.spec->degenerate()
                      ? partial_reduce_rational(*pf.spec)
                      : partial_reduce_jordan(*pf.spec);
    } else {
        total = total_reduce_adjugate(OperatorSystem(pf.matrix));
    }

    OperatorSystem sys(pf.matrix);
    if (format == "json") {
        nlohmann::json doc;
        doc["total"] = equations_to_json(total);
        if (partial) {
            nlohmann::json psys;
            psys["variable"] = partial->variable_name;
            psys["forcing"] = partial->forcing_name;
            nlohmann::json eqs = nlohmann::json::array();
            for (const auto& eq : partial->equations) {
                if (const auto* red = std::get_if<ReducedEquation>(&eq))
                    eqs.push_back(equation_to_json(*red));
                else {
                    const auto& cpl = std::get<CouplingEquation>(eq);
                    eqs.push_back({{"coupling", true},
                                   {"target", cpl.target + 1},
                                   {"source", cpl.source + 1},
                                   {"forcing_index", cpl.forcing + 1}});
                }
            }
            psys["equations"] = eqs;
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& row : partial->new_forcing)
                rows.push_back(forcing_to_json(row));
            psys["forcing_rows"] = rows;
            doc["partial"] = psys;
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "totally reduced system:\n";
        for (const auto& eq : total)
            std::cout << format_equation(eq, sys.variables, sys.forcing) << "\n";
        if (partial) {
            std::cout << "\npartially reduced system ("
                      << (partial->variable_name == "y" ? "Jordan" : "rational")
                      << " form):\n"
                      << format_partial_system(*partial);
        }
    }
    return kExitOk;
}

int run_solve(const std::string& input, double tol, const std::string& format)
{
    using namespace opred;
    CauchyProblem p = to_cauchy_problem(parse_problem(load_json(input)));
    Trajectory coupled = solve_coupled(p);
    Trajectory decoupled = solve_decoupled(p);
    const double dev = max_deviation(coupled, decoupled);

    if (format == "json") {
        nlohmann::json doc;
        doc["t"] = coupled.t;
        for (size_t i = 0; i < coupled.x.size(); ++i) {
            doc["x" + std::to_string(i + 1) + "_coupled"] = coupled.x[i];
            doc["x" + std::to_string(i + 1) + "_decoupled"] = decoupled.x[i];
        }
        doc["max_abs_deviation"] = dev;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << trajectories_to_csv(coupled, decoupled);
    }
    if (dev > tol) {
        std::cerr << "max deviation " << dev << " exceeds tolerance " << tol << "\n";
        return kExitVerifyFail;
    }
    return kExitOk;
}

int run_verify_cmd(int trials, uint64_t seed)
{
    opred::VerifyResult res = opred::run_verify(trials, seed);
    std::cout << "verify: " << res.passed << " passed, " << res.failed << " failed\n";
    for (const auto& f : res.failures)
        std::cout << "  FAIL " << f << "\n";
    return res.failed == 0 ? kExitOk : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact reduction of linear operator-equation systems"};
    app.require_subcommand(1);

    std::string input;
    std::string format = "csv";
    double tol = 1e-6;
    int trials = 100;
    uint64_t seed = 12345;

    auto* reduce = app.add_subcommand("reduce", "print the reduced systems");
    reduce->add_option("--input", input, "problem file (JSON)")->required();
    reduce->add_option("--format", format, "csv|json (json = machine-readable)");

    auto* solve = app.add_subcommand(
        "solve", "integrate coupled and decoupled systems and compare");
    solve->add_option("--input", input, "problem file (JSON)")->required();
    solve->add_option("--tol", tol, "max allowed coupled/decoupled deviation");
    solve->add_option("--format", format, "csv|json");

    auto* verify = app.add_subcommand("verify", "run randomized identity suites");
    verify->add_option("--trials", trials, "trials per suite");
    verify->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
        if (reduce->parsed())
            return run_reduce(input, format);
        if (solve->parsed())
            return run_solve(input, tol, format);
        return run_verify_cmd(trials, seed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitInputError : kExitOk;
    } catch (const opred::ArgumentError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const opred::DimensionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

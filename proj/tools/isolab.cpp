#include "isolab/scenarios.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace isolab;

namespace {

int exit_for(const std::vector<Report>& rs) {
    for (const auto& r : rs)
        if (!r.theorems_ok()) return exit_code::inconsistency;
    for (const auto& r : rs)
        if (!r.expectations_ok()) return exit_code::mismatch;
    return exit_code::ok;
}

void print(const Json& j, Format f) {
    if (f == Format::json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "```json\n" << j.dump(2) << "\n```\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isolab: commuting involutions, Cartan subspaces and contractions, in exact arithmetic"};
    app.require_subcommand(1);

    std::uint64_t seed = default_seed();
    int max_dim = 16;
    std::string format = "json";
    std::string scenario;
    auto common = [&](CLI::App* sub, bool with_seed) {
        sub->add_option("scenario", scenario, "builtin scenario name or path to a scenario JSON file")->required();
        sub->add_option("--max-dim", max_dim, "largest representation size allowed");
        sub->add_option("--format", format, "json or md")->check(CLI::IsMember({"json", "md", "markdown"}));
        if (with_seed) sub->add_option("--seed", seed, "global seed (default ISOLAB_SEED or 42)");
    };

    auto* list = app.add_subcommand("list", "list builtin scenarios");
    auto* show = app.add_subcommand("show", "print a scenario as JSON");
    show->add_option("scenario", scenario)->required();
    auto* decompose = app.add_subcommand("decompose", "dimension matrix and grading relations");
    common(decompose, false);
    auto* css = app.add_subcommand("css", "little and big Cartan subspaces");
    common(css, true);
    auto* coincidence = app.add_subcommand("coincidence", "coincidence table of Cartan subspaces");
    common(coincidence, true);
    auto* contract = app.add_subcommand("contract", "orbit and stabilizer report of one degenerated module");
    common(contract, true);
    std::string perm = "10,01,11", variant = "a";
    contract->add_option("--perm", perm, "alpha,beta,gamma labels");
    contract->add_option("--variant", variant, "a or b")->check(CLI::IsMember({"a", "b"}));
    auto* invariants = app.add_subcommand("invariants", "invariant degrees, bidegrees and vanishing on X");
    common(invariants, true);
    auto* verify = app.add_subcommand("verify", "run the full pipeline and check every theorem and expectation");
    common(verify, true);
    std::string suite = "all";
    verify->add_option("--suite", suite, "all, or a comma list of css, contraction, invariants");

    CLI11_PARSE(app, argc, argv);

    try {
        const Format fmt = parse_format(format);
        if (*list) {
            for (const auto& s : builtin_scenarios()) std::cout << s.name << "\n";
            return exit_code::ok;
        }
        if (*show) {
            std::cout << find_scenario(scenario).to_json().dump(2) << "\n";
            return exit_code::ok;
        }
        if (*verify) {
            const Suite sel = Suite::parse(suite);
            std::vector<Report> reports;
            if (scenario == "all") {
                for (const auto& s : builtin_scenarios()) {
                    if (parse_algebra(s.algebra)->rep_dim() > max_dim) {
                        std::cerr << "skipped " << s.name << ": exceeds --max-dim " << max_dim << "\n";
                        continue;
                    }
                    reports.push_back(run(s, sel, seed, max_dim));
                }
                std::cout << emit(reports, fmt);
            } else {
                reports.push_back(run(find_scenario(scenario), sel, seed, max_dim));
                std::cout << emit(reports.front(), fmt);
            }
            return exit_for(reports);
        }
        Built b = build(find_scenario(scenario), max_dim);
        if (*decompose) print(decompose_json(b), fmt);
        if (*css) print(css_json(b, seed), fmt);
        if (*coincidence) print(coincidence_json(b, seed), fmt);
        if (*contract) print(contract_json(b, parse_permutation(perm), parse_variant(variant), seed), fmt);
        if (*invariants) print(invariants_json(b, seed), fmt);
        return exit_code::ok;
    } catch (const ExpectationMismatch& e) {
        std::cerr << "expectation mismatch: " << e.what() << "\n";
        return exit_code::mismatch;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const Inconclusive& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return exit_code::inconclusive;
    } catch (const InternalInconsistency& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return exit_code::inconsistency;
    }
}

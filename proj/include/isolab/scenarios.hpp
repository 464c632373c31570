#pragma once

#include "isolab/invariants.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace isolab {

using Json = nlohmann::ordered_json;

enum class Construction { pair, dyad, canonical };
std::string to_string(Construction c);
Construction parse_construction(const std::string& s);

// phi with phi sigma_from phi^-1 = sigma_to, given as an automorphism string.
struct Conjugator {
    int from = 1, to = 2;
    std::string by;
};

struct Expectation {
    std::string pointer;  // JSON pointer into the report
    Json value;
    std::string provenance;
};

// pair: sigma1, sigma2 are automorphism strings.
// dyad: sigma1 is an automorphism string, sigma2 a matrix expression for the torus direction.
// canonical: sigma1 is the quasi-maximal inner involution mu, sigma2 is unused.
struct Scenario {
    std::string name;
    std::string algebra;
    Construction construction = Construction::pair;
    std::string sigma1, sigma2;
    std::vector<Conjugator> conjugators;
    std::vector<Expectation> expected;

    Json to_json() const;
    static Scenario from_json(const Json& j);
};

Scenario scenario_so2N(int n, int m);
Scenario scenario_dsum(const std::string& g_spec, const std::string& sigma_spec);
Scenario scenario_canonical(const std::string& g_spec, const std::string& mu_spec);
Scenario scenario_gh(int n, int p);
Scenario scenario_dyad(const std::string& g_spec, const std::string& sigma1, const std::string& torus);
Scenario scenario_pair(const std::string& name, const std::string& g_spec, const std::string& s1,
                       const std::string& s2);

std::vector<Scenario> builtin_scenarios();
// Builtin name or path to a scenario JSON file.
Scenario find_scenario(const std::string& name_or_path);

struct Built {
    Scenario scenario;
    QuaternionicDecomposition Q;
    std::optional<Dyad> dyad;
    std::optional<Automorphism> mu;  // canonical: sigma3 with its group witness
};
// Throws InvalidInput when the representation exceeds max_rep_dim.
Built build(const Scenario& s, int max_rep_dim = 16);

enum class Status { pass, fail, not_applicable, cited };
std::string to_string(Status s);

struct TheoremCheck {
    std::string name;
    bool hypothesis = false;
    std::string detail;  // hypothesis detection and conclusion summary, or the counterexample
    Status status = Status::not_applicable;
};

struct Suite {
    bool css = true;
    bool contraction = true;
    bool invariants = true;
    static Suite all() { return {}; }
    static Suite parse(const std::string& s);  // "all", "css", "contraction", "invariants", comma separated
};

struct Report {
    Json data;
    std::vector<TheoremCheck> theorems;
    std::vector<Expectation> expectations;
    std::vector<Json> mismatches;

    bool theorems_ok() const;
    bool expectations_ok() const { return mismatches.empty(); }
    Json to_json() const;
};

Report run(const Scenario& s, const Suite& suite, std::uint64_t seed, int max_rep_dim = 16);

enum class Format { json, markdown };
Format parse_format(const std::string& s);
std::string emit(const Report& r, Format f);
std::string emit(const std::vector<Report>& rs, Format f);

// Partial pipelines behind the CLI subcommands.
Json decompose_json(const Built& b);
Json css_json(const Built& b, std::uint64_t seed);
Json coincidence_json(const Built& b, std::uint64_t seed);
Json contract_json(const Built& b, const Permutation& p, Variant v, std::uint64_t seed);
Json invariants_json(const Built& b, std::uint64_t seed);

std::string markdown_dimension_matrix(const std::array<std::array<int, 2>, 2>& m, const std::string& title);

}  // namespace isolab

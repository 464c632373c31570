// One line per acceptance criterion; exit status is the number of failed criteria.
#include "isolab/scenarios.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>

using namespace isolab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct CliRun {
    std::string out;
    int status = -1;
    double seconds = 0;
};

CliRun run_cli(const std::string& args) {
    CliRun r;
    auto t0 = Clock::now();
    FILE* p = popen((std::string(ISOLAB_CLI) + " " + args).c_str(), "r");
    if (!p) return r;
    char buf[1 << 16];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.seconds = seconds_since(t0);
    return r;
}

struct Criterion {
    bool ok = true;
    std::string note;
    void require(bool c, const std::string& what) {
        if (!c) {
            ok = false;
            note += (note.empty() ? "" : "; ") + what;
        }
    }
};

std::map<std::string, Json> by_name;

const Json& report(const std::string& name) {
    auto it = by_name.find(name);
    if (it == by_name.end()) throw std::runtime_error("no report for " + name);
    return it->second;
}

std::string status_of(const Json& r, const std::string& prefix) {
    for (const auto& t : r["theorems"])
        if (t["name"].get<std::string>().rfind(prefix, 0) == 0) return t["status"].get<std::string>();
    return "missing";
}

bool coincide(const Json& r, const std::string& key) { return r["coincidences"][key]["coincide"].get<bool>(); }

std::string perm_part(const std::string& perm, int k) { return perm.substr(3 * k, 2); }

}  // namespace

int main() {
    int failed = 0;
    auto line = [&](int k, const std::string& what, const Criterion& c) {
        std::cout << (c.ok ? "PASS" : "FAIL") << "  criterion " << k << ": " << what;
        if (!c.note.empty()) std::cout << " [" << c.note << "]";
        std::cout << std::endl;
        if (!c.ok) ++failed;
    };

    CliRun first = run_cli("verify all --seed 42 --format json");
    CliRun second = run_cli("verify all --seed 42 --format json");
    Json all;
    try {
        all = Json::parse(first.out);
        for (const auto& r : all) by_name[r["scenario"].get<std::string>()] = r;
    } catch (const std::exception& e) {
        std::cout << "FAIL  cannot parse the output of isolab verify all: " << e.what() << std::endl;
        return 11;
    }
    std::cout << "verify all: " << all.size() << " scenarios, exit " << first.status << ", " << first.seconds
              << " s and " << second.seconds << " s" << std::endl;

    auto guarded = [&](int k, const std::string& what, const std::function<void(Criterion&)>& body) {
        Criterion c;
        try {
            body(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        line(k, what, c);
    };

    guarded(1, "so(2N) Cartan subspace table matches the closed forms", [](Criterion& c) {
        for (auto [n, m] : {std::pair{3, 1}, {3, 3}, {2, 2}, {2, 4}}) {
            const std::string name = "so2N-" + std::to_string(n) + "-" + std::to_string(m);
            const Json& r = report(name);
            const Json& css = r["css"];
            const int lo = std::min(n, m);
            c.require(css["c01"] == lo && css["c10"] == lo, name + " c01/c10");
            c.require(css["c11"] == n / 2 + m / 2, name + " c11");
            c.require(css["c1*"] == (n + m) / 2 && css["c*1"] == (n + m) / 2, name + " c1*/c*1");
            c.require(css["c*,1-*"] == 2 * lo, name + " c*,1-*");
            if (n % 2 && m % 2 && n != m)
                for (const auto& [key, e] : r["coincidences"].items())
                    c.require(e["coincide"] == false, name + " coincidence " + key);
            auto t0 = Clock::now();
            css_json(build(find_scenario(name)), 42);
            const double s = seconds_since(t0);
            c.require(s < 60, name + " table took " + std::to_string(s) + " s");
        }
    });

    guarded(2, "maximal rank sigma1 gives c11 ⊂ g*1 and c10 ⊂ g10+g01 coincidences", [](Criterion& c) {
        int seen = 0;
        for (const char* name : {"maxrank-sl3", "maxrank-sl4", "maxrank-so8"}) {
            const Json& r = report(name);
            c.require(r["involutions"][0]["maximal_rank"] == true, std::string(name) + " sigma1 not maximal rank");
            c.require(coincide(r, "11:01") && coincide(r, "10:01"), std::string(name) + " coincidences");
            ++seen;
        }
        c.require(seen >= 3, "fewer than 3 scenarios");
    });

    guarded(3, "dyads: c11 coincides in g1* and g*1, phi^4 = id, sigma1 sigma2 = phi^2", [](Criterion& c) {
        for (const char* name : {"dyad-sl2", "dyad-sl3", "dyad-sl4-outer", "dyad-sl4-inner"}) {
            const Json& r = report(name);
            c.require(coincide(r, "11:10") && coincide(r, "11:01"), std::string(name) + " coincidences");
            Built b = build(find_scenario(name));
            const int d = b.Q.algebra->dim();
            Mat phi2 = multiply(b.dyad->phi.map, b.dyad->phi.map);
            c.require(multiply(phi2, phi2) == identity(d), std::string(name) + " phi^4");
            c.require(multiply(b.Q.sigma1.map, b.Q.sigma2.map) == phi2, std::string(name) + " sigma1 sigma2");
        }
    });

    guarded(4, "quasi-maximal inner involutions: dim g0 - dim g1 = k0 - k1; regular semisimple iff regular nilpotent",
            [](Criterion& c) {
                Rng rng(42);
                for (auto [alg, s] : {std::pair{"sl(3)", "inner:diag(1,1,-1)"}, {"sl(4)", "inner:diag(1,1,-1,-1)"}}) {
                    auto g = parse_algebra(alg);
                    auto k = classify_involution(parse_automorphism(g, s), rng);
                    c.require(k.quasi_maximal == std::optional<bool>(true), std::string(alg) + " not certified");
                    c.require(k.dim_g0 - k.dim_g1 == g->k0() - g->k1(), std::string(alg) + " dimension identity");
                    c.require(k.regular_nilpotent_found == std::optional<bool>(true), std::string(alg) + " nilpotent");
                }
                auto sl4 = make_sl(4);
                auto n = classify_involution(parse_automorphism(sl4, "inner:diag(1,1,1,-1)"), rng);
                c.require(n.quasi_maximal == std::optional<bool>(false), "sl(4) diag(1,1,1,-1) quasi-maximal");
                c.require(n.regular_nilpotent_found == std::optional<bool>(false),
                          "sl(4) diag(1,1,1,-1) regular nilpotent");
            });

    guarded(5, "Jacobi on every contraction and the module law on all six modules of every scenario", [&](Criterion& c) {
        for (const auto& r : all) {
            const std::string name = r["scenario"];
            c.require(status_of(r, "Z2-contraction satisfies Jacobi") == "pass", name + " Jacobi");
            c.require(status_of(r, "degenerated module law") == "pass", name + " module law");
            c.require(r["modules"].size() == 12, name + " module count");
        }
    });

    guarded(6, "nilradical orbit reaches dim g_gamma exactly in coincidence cases", [&](Criterion& c) {
        for (const auto& r : all) {
            const std::string name = r["scenario"];
            for (const auto& m : r["modules"]) {
                const std::string perm = m["perm"], v = m["variant"];
                const std::string a = perm_part(perm, 0), g = perm_part(perm, 2);
                const std::string key = v == "a" ? a + ":" + g : g + ":" + a;
                const bool coin = coincide(r, key);
                c.require(m["witness_found"] == coin, name + " " + perm + "/" + v + " witness");
                if (coin) c.require(m["max_orbit_dim"] == m["orbit_bound"], name + " " + perm + "/" + v + " maximum");
            }
        }
        for (const auto& m : report("so2N-3-1")["modules"])
            if (m["variant"] == "a")
                c.require(m["max_orbit_dim"].get<int>() < m["orbit_bound"].get<int>(),
                          "so2N-3-1 " + m["perm"].get<std::string>() + " reaches the bound");
    });

    guarded(7, "generic stabilizer equals the closed form and the two trdeg formulas agree", [&](Criterion& c) {
        for (const auto& r : all) {
            const std::string name = r["scenario"];
            c.require(status_of(r, "generic stabilizer equals") == "pass", name + " stabilizer");
            c.require(status_of(r, "trdeg of invariants") == "pass", name + " trdeg");
            for (const auto& m : r["modules"]) c.require(m["agree"] == true, name + " " + m["perm"].get<std::string>());
        }
    });

    guarded(8, "top bihomogeneous components of every oracle are invariant on both variants", [&](Criterion& c) {
        for (const auto& r : all)
            c.require(status_of(r, "top bihomogeneous components") == "pass", r["scenario"].get<std::string>());
    });

    guarded(9, "degenerations of SO(n+1): trdeg, degrees and coincidence criteria", [](Criterion& c) {
        const Json& a = report("gh-6-2");
        c.require(a["invariants"]["trdeg"] == 3, "gh(6,2) trdeg");
        c.require(a["invariants"]["degrees"] == Json::parse("[2,4,6]"), "gh(6,2) degrees");
        c.require(coincide(report("gh-3-2"), "10:11") == true, "gh(3,2) c10 coincidence");
        for (auto [n, p] : {std::pair{6, 2}, {3, 2}, {5, 2}}) {
            const Json& r = report("gh-" + std::to_string(n) + "-" + std::to_string(p));
            c.require(coincide(r, "10:11") == (n - p == 1), "gh c10 criterion");
            c.require(coincide(r, "11:10") == (n - p <= p), "gh c11 criterion");
        }
        c.require(coincide(report("gh-5-2"), "11:10") == false, "gh(5,2) c11 coincidence");
    });

    guarded(10, "canonical sl(4): dimension formulas, little involutions of maximal rank, odd gradients",
            [](Criterion& c) {
                const Json& r = report("canonical-sl4");
                for (const char* t : {"canonical decomposition dimensions", "little involutions of a canonical",
                                      "theta, theta' of maximal rank", "odd-degree gradients independent"})
                    c.require(status_of(r, t) == "pass", t);
                c.require(r["dim_matrix"] == Json::parse("[[2,4],[4,5]]"), "dimension matrix");
            });

    guarded(11, "isolab verify all --seed 42 is byte-identical across runs and under 15 minutes", [&](Criterion& c) {
        c.require(first.status == 0 && second.status == 0,
                  "exit codes " + std::to_string(first.status) + ", " + std::to_string(second.status));
        c.require(!first.out.empty() && first.out == second.out, "outputs differ");
        c.require(first.seconds < 900 && second.seconds < 900, "too slow");
    });

    std::cout << (11 - failed) << " of 11 criteria pass" << std::endl;
    return failed;
}

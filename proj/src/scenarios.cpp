#include "isolab/scenarios.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

namespace isolab {

namespace {

constexpr std::array<Label, 3> kLabels = {Label::g01, Label::g10, Label::g11};

std::string big_name(int k) {
    switch (k) {
        case 1: return "1*";
        case 2: return "*1";
        case 3: return "*,1-*";
    }
    throw InvalidInput("sigma index must be 1, 2 or 3");
}

std::string entry_key(Label alpha, Label gamma) { return to_string(alpha) + ":" + to_string(gamma); }

std::string signs(std::initializer_list<std::pair<std::string, int>> blocks) {
    std::string s;
    for (const auto& [x, k] : blocks)
        for (int j = 0; j < k; ++j) s += (s.empty() ? "" : ",") + x;
    return s;
}

std::string slug(const std::string& spec) {
    std::string s;
    for (char c : spec) {
        if (c == '(' || c == ')') continue;
        s += (c == ':' || c == ',' || c == '+') ? '-' : c;
    }
    return s;
}

void expect(Scenario& s, const std::string& pointer, Json value, const std::string& provenance) {
    s.expected.push_back({pointer, std::move(value), provenance});
}

void expect_no_coincidence(Scenario& s, const std::string& provenance) {
    for (Label a : kLabels)
        for (Label c : kLabels)
            if (a != c) expect(s, "/coincidences/" + entry_key(a, c) + "/coincide", false, provenance);
}

Json dim_matrix_json(const QuaternionicDecomposition& Q) {
    auto m = Q.dim_matrix();
    return Json::array({Json::array({m[0][0], m[0][1]}), Json::array({m[1][0], m[1][1]})});
}

TheoremCheck check(const std::string& name, bool hypothesis, bool conclusion, const std::string& detail) {
    TheoremCheck t;
    t.name = name;
    t.hypothesis = hypothesis;
    t.detail = detail;
    t.status = !hypothesis ? Status::not_applicable : conclusion ? Status::pass : Status::fail;
    return t;
}


// Oracles for the invariants of G restricted to S, dropping those that vanish on S.
std::vector<InvariantOracle> oracles_on(const QuaternionicDecomposition& Q, const Subspace& S, Rng& rng) {
    std::vector<InvariantOracle> out;
    for (auto& F : charpoly_invariants(Q.algebra, S))
        if (!vanishes_on(F, S, rng).vanishes) out.push_back(std::move(F));
    return out;
}

std::string vec_str(const std::vector<int>& xs) {
    std::string s = "{";
    for (size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + std::to_string(xs[k]);
    return s + "}";
}

}  // namespace

std::string to_string(Construction c) {
    switch (c) {
        case Construction::pair: return "pair";
        case Construction::dyad: return "dyad";
        case Construction::canonical: return "canonical";
    }
    return "?";
}

Construction parse_construction(const std::string& s) {
    if (s == "pair") return Construction::pair;
    if (s == "dyad") return Construction::dyad;
    if (s == "canonical") return Construction::canonical;
    throw InvalidInput("unknown construction '" + s + "'");
}

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::not_applicable: return "n/a";
        case Status::cited: return "cited";
    }
    return "?";
}

Json Scenario::to_json() const {
    Json j;
    j["name"] = name;
    j["algebra"] = algebra;
    j["construction"] = isolab::to_string(construction);
    j["sigma1"] = sigma1;
    j["sigma2"] = sigma2;
    if (!conjugators.empty()) {
        j["conjugators"] = Json::array();
        for (const auto& c : conjugators) j["conjugators"].push_back({{"from", c.from}, {"to", c.to}, {"by", c.by}});
    }
    Json e = Json::object(), prov = Json::object();
    for (const auto& x : expected) {
        e[x.pointer] = x.value;
        prov[x.pointer] = x.provenance;
    }
    e["provenance"] = prov;
    j["expected"] = e;
    return j;
}

Scenario Scenario::from_json(const Json& j) {
    Scenario s;
    try {
        s.name = j.at("name").get<std::string>();
        s.algebra = j.at("algebra").get<std::string>();
        s.construction = parse_construction(j.value("construction", std::string("pair")));
        s.sigma1 = j.at("sigma1").get<std::string>();
        s.sigma2 = j.value("sigma2", std::string());
        if (j.contains("conjugators"))
            for (const auto& c : j.at("conjugators"))
                s.conjugators.push_back({c.at("from").get<int>(), c.at("to").get<int>(), c.at("by").get<std::string>()});
        if (j.contains("expected")) {
            const Json& e = j.at("expected");
            const Json prov = e.value("provenance", Json::object());
            for (const auto& [key, value] : e.items()) {
                if (key == "provenance") continue;
                if (!prov.contains(key)) throw InvalidInput("expectation " + key + " has no provenance");
                s.expected.push_back({key, value, prov.at(key).get<std::string>()});
            }
        }
    } catch (const Json::exception& ex) {
        throw InvalidInput(std::string("malformed scenario: ") + ex.what());
    }
    return s;
}

Scenario scenario_so2N(int n, int m) {
    if (n < 1 || m < 1) throw InvalidInput("so2N needs n, m >= 1");
    const int N = n + m;
    Scenario s;
    s.name = "so2N-" + std::to_string(n) + "-" + std::to_string(m);
    s.algebra = "so(" + std::to_string(2 * N) + ")";
    s.sigma1 = "inner:diag(" + signs({{"i", N}, {"-i", N}}) + ")";
    s.sigma2 = "inner:diag(" + signs({{"i", m}, {"-i", n}, {"i", n}, {"-i", m}}) + ")";
    const std::string f = "closed form in (n,m)";
    expect(s, "/css/c01", std::min(n, m), f + ": min(n,m)");
    expect(s, "/css/c10", std::min(n, m), f + ": min(n,m)");
    expect(s, "/css/c11", n / 2 + m / 2, f + ": floor(n/2)+floor(m/2)");
    expect(s, "/css/c1*", N / 2, f + ": floor((n+m)/2)");
    expect(s, "/css/c*1", N / 2, f + ": floor((n+m)/2)");
    expect(s, "/css/c*,1-*", 2 * std::min(n, m), f + ": 2 min(n,m)");
    if (n % 2 && m % 2 && n != m) expect_no_coincidence(s, "n, m odd and n != m: no coincidence");
    return s;
}

Scenario scenario_dsum(const std::string& g_spec, const std::string& sigma_spec) {
    Scenario s;
    s.name = "dsum-" + slug(g_spec) + "-" + slug(sigma_spec);
    s.algebra = g_spec + "+" + g_spec;
    s.sigma1 = "swap";
    s.sigma2 = "both:" + sigma_spec;
    // Expectations come from one summand: c1* is a Cartan subalgebra of g, c10 one of g^sigma,
    // c11 and the halves of c*1 are Cartan subspaces of g^-sigma.
    auto g = parse_algebra(g_spec);
    auto sigma = parse_automorphism(g, sigma_spec);
    Rng rng(1);
    const int r = find_css(*g, sigma.eigenspace(FieldScalar(-1)), rng).dim();
    const int r0 = find_css(*g, sigma.eigenspace(FieldScalar(1)), rng).dim();
    const std::string f = "recomputed on one summand";
    expect(s, "/css/c1*", g->rank(), f + ": rank of g");
    expect(s, "/css/c10", r0, f + ": rank of g^sigma");
    expect(s, "/css/c11", r, f + ": rank of the symmetric pair");
    expect(s, "/css/c*1", 2 * r, f + ": twice the rank of the symmetric pair");
    Rng rc(2);
    auto cls = classify_involution(sigma, rc, false);
    if (!sigma.is_inner() && !cls.maximal_rank) expect_no_coincidence(s, "sigma outer and not of maximal rank");
    return s;
}

Scenario scenario_canonical(const std::string& g_spec, const std::string& mu_spec) {
    Scenario s;
    s.name = "canonical-" + slug(g_spec);
    s.algebra = g_spec;
    s.construction = Construction::canonical;
    s.sigma1 = mu_spec;
    auto g = parse_algebra(g_spec);
    const int rk = g->rank(), k0 = g->k0(), k1 = g->k1();
    const int dim_u = (g->dim() - rk) / 2;
    const int x = (dim_u - k1) / 2;
    const std::string f = "canonical dimension formulas with dim U = " + std::to_string(dim_u) +
                          ", k1 = " + std::to_string(k1) + ", rk = " + std::to_string(rk);
    expect(s, "/dim_matrix", Json::array({Json::array({x, x + k1}), Json::array({x + k1, x + rk})}), f);
    if (k0 > 0) expect(s, "/vanishing/k", k0, "k equals the number of even exponents k0");
    return s;
}

Scenario scenario_gh(int n, int p) {
    if (p < 1 || p > n - 1) throw InvalidInput("gh needs 1 <= p <= n-1");
    Scenario s;
    s.name = "gh-" + std::to_string(n) + "-" + std::to_string(p);
    s.algebra = "so(" + std::to_string(n + 1) + ",standard)";
    s.sigma1 = "inner:diag(" + signs({{"1", p + 1}, {"-1", n - p}}) + ")";
    s.sigma2 = "inner:diag(" + signs({{"1", p}, {"-1", n - p + 1}}) + ")";
    const int q = n - p;
    const int c = std::min(p + 1, q);
    const std::string f = "closed form in (n,p)";
    expect(s, "/dim_matrix/0/0", p * (p - 1) / 2 + q * (q - 1) / 2, f + ": g00 = so(p) x so(n-p)");
    expect(s, "/css/c10", 1, f + ": dim c10 = 1");
    expect(s, "/css/c11", std::min(p, q), f + ": min(p, n-p)");
    expect(s, "/css/c1*", c, f + ": min(p+1, n-p)");
    expect(s, "/invariants/trdeg", c, f + ": min(p+1, n-p)");
    expect(s, "/coincidences/10:11/coincide", q == 1, f + ": c10 coincides iff n-p = 1");
    expect(s, "/coincidences/11:10/coincide", q <= p, f + ": c11 coincides iff n-p <= p");
    if (p + 1 != q) {
        Json degrees = Json::array();
        for (int d = 1; d <= c; ++d) degrees.push_back(2 * d);
        expect(s, "/invariants/degrees", degrees, f + ": 2, 4, ..., 2 min(p+1, n-p)");
    }
    return s;
}

Scenario scenario_dyad(const std::string& g_spec, const std::string& sigma1, const std::string& torus) {
    Scenario s;
    s.name = "dyad-" + slug(g_spec);
    s.algebra = g_spec;
    s.construction = Construction::dyad;
    s.sigma1 = sigma1;
    s.sigma2 = torus;
    return s;
}

Scenario scenario_pair(const std::string& name, const std::string& g_spec, const std::string& s1,
                       const std::string& s2) {
    Scenario s;
    s.name = name;
    s.algebra = g_spec;
    s.sigma1 = s1;
    s.sigma2 = s2;
    return s;
}

std::vector<Scenario> builtin_scenarios() {
    std::vector<Scenario> out;
    for (auto [n, m] : {std::pair{3, 1}, {3, 3}, {2, 2}, {2, 4}, {1, 1}}) out.push_back(scenario_so2N(n, m));

    for (auto [g, sigma, name] : {std::tuple{"sl(4)", "negtranspose:sp", "dsum-sl4-sp4"},
                                  std::tuple{"sl(3)", "negtranspose", "dsum-sl3-so3"},
                                  std::tuple{"sl(2)", "inner:diag(1,-1)", "dsum-sl2-gl1"}}) {
        out.push_back(scenario_dsum(g, sigma));
        out.back().name = name;
    }

    out.push_back(scenario_pair("maxrank-sl3", "sl(3)", "negtranspose", "inner:diag(1,1,-1)"));
    out.push_back(scenario_pair("maxrank-sl4", "sl(4)", "negtranspose", "inner:diag(1,-1,1,-1)"));
    out.push_back(scenario_pair("maxrank-so8", "so(8)", "inner:diag(1,1,-1,-1,-1,-1,1,1)",
                                "inner:diag(1,-1,1,-1,-1,1,-1,1)"));

    out.push_back(scenario_dyad("sl(2)", "inner:diag(1,-1)", "E(1,2)+E(2,1)"));
    out.push_back(scenario_dyad("sl(3)", "negtranspose", "diag(1,0,-1)"));
    Scenario d4 = scenario_dyad("sl(4)", "negtranspose", "diag(1,1,-1,-1)");
    d4.name = "dyad-sl4-outer";
    out.push_back(d4);
    Scenario d4i = scenario_dyad("sl(4)", "inner:diag(1,1,1,-1)", "E(1,4)+E(4,1)");
    d4i.name = "dyad-sl4-inner";
    out.push_back(d4i);

    Scenario t = scenario_pair("triad-sl2", "sl(2)", "inner:diag(1,-1)", "inner:antidiag(1,1)");
    t.conjugators = {{1, 2, "conj:E(1,1)+E(1,2)+E(2,1)-E(2,2)"}, {1, 3, "conj:E(1,1)+E(1,2)+i*E(2,1)-i*E(2,2)"}};
    expect_no_coincidence(t, "");
    for (auto& e : t.expected) {
        e.value = true;
        e.provenance = "pairwise conjugate involutions: every little CSS is big";
    }
    out.push_back(t);

    out.push_back(scenario_canonical("sl(3)", "inner:diag(1,1,-1)"));
    out.push_back(scenario_canonical("sl(4)", "inner:diag(1,1,-1,-1)"));

    for (auto [n, p] : {std::pair{6, 2}, {3, 2}, {5, 2}}) out.push_back(scenario_gh(n, p));
    return out;
}

Scenario find_scenario(const std::string& name_or_path) {
    for (auto& s : builtin_scenarios())
        if (s.name == name_or_path) return s;
    if (std::filesystem::is_regular_file(name_or_path)) {
        std::ifstream in(name_or_path);
        try {
            return Scenario::from_json(Json::parse(in));
        } catch (const Json::parse_error& e) {
            throw InvalidInput("cannot parse " + name_or_path + ": " + e.what());
        }
    }
    throw InvalidInput("unknown scenario '" + name_or_path + "'");
}

Built build(const Scenario& s, int max_rep_dim) {
    auto g = parse_algebra(s.algebra);
    if (g->rep_dim() > max_rep_dim)
        throw InvalidInput(s.name + ": representation size " + std::to_string(g->rep_dim()) +
                           " exceeds the guard " + std::to_string(max_rep_dim));
    switch (s.construction) {
        case Construction::pair:
            return {s, quaternionic(parse_automorphism(g, s.sigma1), parse_automorphism(g, s.sigma2)), std::nullopt,
                    std::nullopt};
        case Construction::dyad: {
            auto s1 = parse_automorphism(g, s.sigma1);
            Dyad d = build_dyad(s1, g->coords_checked(parse_matrix_expr(s.sigma2, g->rep_dim())));
            auto Q = quaternionic(s1, d.sigma2);
            return {s, std::move(Q), std::move(d), std::nullopt};
        }
        case Construction::canonical: {
            auto mu = parse_automorphism(g, s.sigma1);
            auto T = canonical_triple(g, mu);
            auto Q = quaternionic(T.theta, T.theta_prime);
            if (Q.sigma3 != mu) throw InternalInconsistency("canonical triple does not compose to mu");
            return {s, std::move(Q), std::nullopt, std::move(mu)};
        }
    }
    throw InvalidInput("unknown construction");
}

Suite Suite::parse(const std::string& spec) {
    if (spec == "all") return all();
    Suite s{false, false, false};
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part == "css") s.css = true;
        else if (part == "contraction") s.contraction = true;
        else if (part == "invariants") s.invariants = true;
        else throw InvalidInput("unknown suite '" + part + "'");
    }
    return s;
}

bool Report::theorems_ok() const {
    return std::none_of(theorems.begin(), theorems.end(), [](const TheoremCheck& t) { return t.status == Status::fail; });
}

Json Report::to_json() const {
    Json j = data;
    j["theorems"] = Json::array();
    for (const auto& t : theorems)
        j["theorems"].push_back(
            {{"name", t.name}, {"hypothesis", t.hypothesis}, {"status", to_string(t.status)}, {"detail", t.detail}});
    j["expectations"] = Json::array();
    for (const auto& e : expectations) {
        Json actual = data.contains(Json::json_pointer(e.pointer)) ? data.at(Json::json_pointer(e.pointer)) : Json();
        j["expectations"].push_back({{"pointer", e.pointer},
                                     {"expected", e.value},
                                     {"actual", actual},
                                     {"provenance", e.provenance},
                                     {"ok", actual == e.value}});
    }
    j["status"] = !theorems_ok() ? "fail" : !expectations_ok() ? "mismatch" : "pass";
    return j;
}

Json decompose_json(const Built& b) {
    const auto& Q = b.Q;
    Json j;
    j["scenario"] = b.scenario.name;
    j["algebra"] = Q.algebra->label();
    j["dimension"] = Q.algebra->dim();
    j["rank"] = Q.algebra->rank();
    j["dim_matrix"] = dim_matrix_json(Q);
    Json rel = Json::object();
    for (const auto& r : grading_relations(Q)) rel[r.name] = r.ok;
    for (const auto& r : killing_orthogonality(Q)) rel[r.name] = r.ok;
    j["relations"] = rel;
    return j;
}

namespace {

Json css_section(const CoincidenceTable& T) {
    Json c;
    for (Label l : kLabels) c["c" + to_string(l)] = T.little_css(l).dim();
    for (int k = 1; k <= 3; ++k) c["c" + big_name(k)] = T.big_css(k).dim();
    return c;
}

Json coincidence_section(const CoincidenceTable& T) {
    Json c = Json::object();
    for (const auto& e : T.entries)
        c[entry_key(e.alpha, e.gamma)] = {{"big", "g" + big_name(e.big)},
                                          {"little_dim", e.little_dim},
                                          {"big_dim", e.big_dim},
                                          {"dims_equal", e.dims_equal},
                                          {"saturated", e.saturated},
                                          {"witness_rank", e.witness_rank},
                                          {"coincide", e.coincide}};
    return c;
}

Json module_json(const StabilizerReport& s, const OrbitReport& o) {
    return {{"perm", s.perm.str()},
            {"variant", to_string(s.variant)},
            {"max_orbit_dim", o.max_orbit_dim},
            {"orbit_bound", o.bound},
            {"witness_found", o.witness_found},
            {"stabilizer_dim", s.stabilizer_dim()},
            {"trdeg_a", s.trdeg_a},
            {"trdeg_b", s.trdeg_b},
            {"agree", s.agree}};
}

std::string kind_name(InvariantKind k) { return k == InvariantKind::pfaffian ? "pfaffian" : "charpoly"; }

Json vanishing_json(const VanishingReport& v) {
    Json j = {{"condition_ok", v.condition_ok},
              {"condition_failure", v.condition_failure},
              {"dim_c10", v.dim_c10},
              {"dim_c1*", v.dim_big},
              {"k", v.k},
              {"vanishing", v.vanishing},
              {"vanishing_independent", v.vanishing_independent},
              {"translates_agree", v.translates_agree}};
    j["count_matches"] = v.count_matches ? Json(*v.count_matches) : Json();
    return j;
}

struct Pipeline {
    const Built& b;
    Rng rng;
    Report r;
    std::optional<CoincidenceTable> table;
    std::vector<DegeneratedModule> modules;  // perm-major, variant a then b

    const QuaternionicDecomposition& Q() const { return b.Q; }
    const LieAlgebra& g() const { return *b.Q.algebra; }

    const CoincidenceTable& T() {
        if (!table) {
            Rng rt = rng.fork("rank table");
            table = rank_table(Q(), rt);
        }
        return *table;
    }

    void add(TheoremCheck t) { r.theorems.push_back(std::move(t)); }

    void decomposition() {
        r.data["scenario"] = b.scenario.name;
        r.data["algebra"] = b.scenario.algebra;
        r.data["construction"] = to_string(b.scenario.construction);
        r.data["sigma1"] = b.scenario.sigma1;
        r.data["sigma2"] = b.scenario.sigma2;
        r.data["dimension"] = g().dim();
        r.data["rank"] = g().rank();
        r.data["dim_matrix"] = dim_matrix_json(Q());
        std::string bad;
        for (const auto& c : grading_relations(Q()))
            if (!c.ok) bad += c.name + "; ";
        for (const auto& c : killing_orthogonality(Q()))
            if (!c.ok) bad += c.name + "; ";
        add(check("grading relations and Killing orthogonality", true, bad.empty(),
                  bad.empty() ? "all bracket inclusions and orthogonalities hold" : "failed: " + bad));
    }

    void css() {
        const auto& t = T();
        r.data["css"] = css_section(t);
        r.data["coincidences"] = coincidence_section(t);

        bool certified = true;
        for (Label l : kLabels) certified = certified && (t.little_css(l).dim() == 0 || t.little_css(l).certificate.ok());
        for (int k = 1; k <= 3; ++k) certified = certified && (t.big_css(k).dim() == 0 || t.big_css(k).certificate.ok());
        add(check("Cartan subspace characterization", true, certified,
                  "z_g(c) ∩ ambient = c with a semisimple generic witness for all six subspaces"));

        Json inv = Json::array();
        std::vector<InvolutionClass> cls;
        for (int k = 1; k <= 3; ++k) {
            Rng rc = rng.fork("classify " + std::to_string(k));
            const Automorphism& s = (k == 3 && b.mu) ? *b.mu : Q().sigma(k);
            cls.push_back(classify_involution(s, rc, s.is_inner()));
            const auto& c = cls.back();
            Json e = {{"sigma", k},
                      {"inner", s.is_inner()},
                      {"maximal_rank", c.maximal_rank},
                      {"dim_g0", c.dim_g0},
                      {"dim_g1", c.dim_g1},
                      {"rank_g0", c.rank_g0}};
            e["quasi_maximal"] = c.quasi_maximal ? Json(*c.quasi_maximal) : Json();
            e["regular_nilpotent_found"] = c.regular_nilpotent_found ? Json(*c.regular_nilpotent_found) : Json();
            inv.push_back(e);
        }
        r.data["involutions"] = inv;

        {
            bool hyp = false, ok = true;
            std::string detail;
            for (int k = 1; k <= 3; ++k) {
                if (!cls[k - 1].maximal_rank) continue;
                hyp = true;
                const Label f = fixed_label(k);
                detail += "sigma" + std::to_string(k) + " of maximal rank:";
                for (Label a : kLabels) {
                    if (a == f) continue;
                    const bool c = t.entry(a, f).coincide;
                    ok = ok && c;
                    detail += " " + entry_key(a, f) + (c ? " coincides" : " does not coincide") + ";";
                }
            }
            add(check("maximal rank forces two coincidences", hyp, ok, hyp ? detail : "no sigma of maximal rank"));
        }
        {
            bool hyp = false, ok = true, hyp2 = false, ok2 = true;
            std::string detail, detail2;
            for (int k = 1; k <= 3; ++k) {
                const auto& c = cls[k - 1];
                if (c.quasi_maximal && *c.quasi_maximal) {
                    hyp = true;
                    const bool eq = c.dim_g0 - c.dim_g1 == g().k0() - g().k1();
                    ok = ok && eq;
                    detail += "sigma" + std::to_string(k) + ": " + std::to_string(c.dim_g0) + " - " +
                              std::to_string(c.dim_g1) + (eq ? " = " : " != ") + std::to_string(g().k0()) + " - " +
                              std::to_string(g().k1()) + "; ";
                }
                if (c.quasi_maximal && c.regular_nilpotent_found) {
                    hyp2 = true;
                    const bool eq = *c.quasi_maximal == *c.regular_nilpotent_found;
                    ok2 = ok2 && eq;
                    detail2 += "sigma" + std::to_string(k) + ": regular semisimple " +
                               (*c.quasi_maximal ? "found" : "not found") + ", regular nilpotent " +
                               (*c.regular_nilpotent_found ? "found" : "not found") + "; ";
                }
            }
            add(check("quasi-maximal: dim g0 - dim g1 = k0 - k1", hyp, ok,
                      hyp ? detail : "no certified quasi-maximal inner involution"));
            add(check("regular semisimple in g1 iff regular nilpotent in g1", hyp2, ok2,
                      hyp2 ? detail2 : "no inner involution"));
        }

        std::vector<std::pair<int, int>> conj;
        std::string conj_detail;
        for (const auto& c : b.scenario.conjugators) {
            auto phi = parse_automorphism(Q().algebra, c.by);
            const bool ok = conjugate(phi, Q().sigma(c.from)) == Q().sigma(c.to);
            conj_detail += c.by + (ok ? " conjugates " : " does not conjugate ") + "sigma" + std::to_string(c.from) +
                           " to sigma" + std::to_string(c.to) + "; ";
            if (ok) conj.push_back({c.from, c.to});
        }
        auto has = [&](int a, int c) { return std::find(conj.begin(), conj.end(), std::pair{a, c}) != conj.end(); };
        {
            const bool hyp = b.dyad.has_value() || has(1, 2);
            bool ok = t.entry(Label::g11, Label::g10).coincide && t.entry(Label::g11, Label::g01).coincide;
            std::string detail = "11:10 " + std::string(t.entry(Label::g11, Label::g10).coincide ? "coincides" : "does not") +
                                 ", 11:01 " + (t.entry(Label::g11, Label::g01).coincide ? "coincides" : "does not");
            if (b.dyad) {
                Mat phi2 = multiply(b.dyad->phi.map, b.dyad->phi.map);
                const bool id4 = multiply(phi2, phi2) == identity(g().dim());
                const bool prod = multiply(Q().sigma1.map, Q().sigma2.map) == phi2;
                ok = ok && id4 && prod;
                detail += std::string("; phi^4 = id ") + (id4 ? "holds" : "fails") + ", sigma1 sigma2 = phi^2 " +
                          (prod ? "holds" : "fails");
            }
            add(check("dyad: c11 is a Cartan subspace of both big spaces containing it", hyp, ok,
                      hyp ? detail : "sigma1 and sigma2 not shown conjugate"));
        }
        {
            const bool hyp = has(1, 2) && has(1, 3);
            bool ok = std::all_of(t.entries.begin(), t.entries.end(), [](const CoincidenceEntry& e) { return e.coincide; });
            add(check("triad: all six coincidences", hyp, ok,
                      hyp ? conj_detail : "sigma1, sigma2, sigma3 not shown pairwise conjugate"));
        }
        {
            bool ok = true;
            std::string detail;
            Rng rr = rng.fork("raspred");
            for (Label a : kLabels) {
                if (Q().space(a).is_zero()) continue;
                for (int k = 0; k < 3; ++k) {
                    auto res = verify_raspred(Q(), rr.element(Q().space(a), 3), a);
                    if (!res.equal()) {
                        ok = false;
                        detail += "x in g" + to_string(a) + ": " + std::to_string(res.dim_beta) + " vs " +
                                  std::to_string(res.dim_gamma) + "; ";
                    }
                }
            }
            add(check("dim [g_beta, x] = dim [g_gamma, x] for x in g_alpha", true, ok,
                      ok ? "3 random x in each nonzero label" : detail));
        }
        {
            const bool hyp = Q().g11.is_zero();
            bool ok = true;
            std::string bad;
            if (hyp)
                for (const auto& c : g11_zero_lemma(Q()))
                    if (!c.ok) {
                        ok = false;
                        bad += c.name + "; ";
                    }
            add(check("consequences of g11 = 0", hyp, ok, !hyp ? "g11 is nonzero" : ok ? "all hold" : bad));
        }
        if (b.scenario.construction == Construction::canonical) canonical_dims(cls);
    }

    void canonical_dims(const std::vector<InvolutionClass>& cls) {
        auto m = Q().dim_matrix();
        const int rk = g().rank(), k1 = g().k1();
        const int dim_u = (g().dim() - rk) / 2;
        const bool ok = 2 * m[0][0] == dim_u - k1 && m[0][1] == m[0][0] + k1 && m[1][0] == m[0][0] + k1 &&
                        m[1][1] == m[0][0] + rk;
        add(check("canonical decomposition dimensions", true, ok,
                  "dim U = " + std::to_string(dim_u) + ", k1 = " + std::to_string(k1) + ", rk = " +
                      std::to_string(rk)));
        bool little = true;
        std::string detail;
        for (int k = 1; k <= 3; ++k) {
            Rng rc = rng.fork("little rank " + std::to_string(k));
            const int r0 = find_css(g(), Q().big_plus(k), rc).dim();
            const int d = Q().space(fixed_label(k)).dim() - Q().g00.dim();
            little = little && d == r0;
            detail += "g^sigma" + std::to_string(k) + ": " + std::to_string(d) + (d == r0 ? " = " : " != ") + "rank " +
                      std::to_string(r0) + "; ";
        }
        add(check("little involutions of a canonical decomposition have maximal rank", true, little, detail));
        add(check("theta, theta' of maximal rank and mu quasi-maximal", true,
                  cls[0].maximal_rank && cls[1].maximal_rank && cls[2].quasi_maximal.value_or(false),
                  "classification of sigma1, sigma2, sigma3"));
    }

    void build_modules() {
        if (!modules.empty()) return;
        for (const auto& p : all_permutations())
            for (Variant v : {Variant::a, Variant::b}) modules.push_back(degenerate_module(Q(), p, v));
    }

    void contraction() {
        {
            bool ok = true;
            std::string detail;
            for (int k = 1; k <= 3; ++k) {
                if (Q().big_minus(k).is_zero()) continue;
                try {
                    z2_contract(Q().sigma(k));
                } catch (const InternalInconsistency& e) {
                    ok = false;
                    detail += "sigma" + std::to_string(k) + ": " + e.what() + "; ";
                }
            }
            add(check("Z2-contraction satisfies Jacobi on all basis triples", true, ok,
                      ok ? "sigma1, sigma2, sigma3" : detail));
        }
        {
            std::string failure;
            try {
                build_modules();
            } catch (const InternalInconsistency& e) {
                failure = e.what();
            }
            add(check("degenerated module law on full bases", true, failure.empty(),
                      failure.empty() ? "all six permutations, both variants" : failure));
            if (!failure.empty()) return;
        }
        {
            bool ok = true;
            std::string detail;
            for (size_t k = 0; k < modules.size(); k += 2) {
                try {
                    auto d = duality_check(modules[k], modules[k + 1]);
                    if (!d.nondegenerate) {
                        ok = false;
                        detail += modules[k].perm.str() + ": degenerate pairing; ";
                    }
                } catch (const InternalInconsistency& e) {
                    ok = false;
                    detail += modules[k].perm.str() + ": " + e.what() + "; ";
                }
            }
            add(check("variants a and b are dual via the Killing form", true, ok, ok ? "all six permutations" : detail));
        }
        const auto& t = T();
        Json mods = Json::array();
        bool orbit_ok = true, stab_ok = true, trdeg_ok = true;
        std::string orbit_detail, stab_detail, trdeg_detail;
        for (const auto& V : modules) {
            const std::string tag = V.perm.str() + "/" + to_string(V.variant);
            Rng ro = rng.fork("orbit " + tag);
            OrbitReport o = max_nilradical_orbit_dim(V, ro);
            const bool coincide = t.entry(V.first, V.second).coincide;
            if (o.witness_found != coincide || (o.witness_found && o.max_orbit_dim != o.bound) ||
                (!o.witness_found && o.max_orbit_dim >= o.bound)) {
                orbit_ok = false;
                orbit_detail += tag + ": max " + std::to_string(o.max_orbit_dim) + " of " + std::to_string(o.bound) +
                                ", coincidence " + (coincide ? "true" : "false") + "; ";
            }
            Rng rs = rng.fork("stabilizer " + tag);
            StabilizerReport s = generic_stabilizer(V, rs, 10);
            if (!(s.stabilizer == s.predicted && s.rosenlicht && s.cancellation && s.stable)) {
                stab_ok = false;
                stab_detail += tag + ": stabilizer " + std::to_string(s.stabilizer_dim()) + " vs closed form " +
                               std::to_string(s.predicted.dim()) + ", resampled " + vec_str(s.resampled_dims) + "; ";
            }
            const int big = t.big_css(big_index(V.first, V.second)).dim();
            if (!s.agree || s.trdeg_b != big) {
                trdeg_ok = false;
                trdeg_detail += tag + ": " + std::to_string(s.trdeg_a) + " vs " + std::to_string(s.trdeg_b) +
                                " vs big CSS " + std::to_string(big) + "; ";
            }
            mods.push_back(module_json(s, o));
        }
        r.data["modules"] = mods;
        add(check("nilradical orbit reaches g_gamma iff c_alpha coincides", true, orbit_ok,
                  orbit_ok ? "all twelve modules" : orbit_detail));
        add(check("generic stabilizer equals (g00^xi)^eta + g_beta^xi", true, stab_ok,
                  stab_ok ? "all twelve modules, 10 resamples each" : stab_detail));
        add(check("trdeg of invariants equals dim of the big Cartan subspace", true, trdeg_ok,
                  trdeg_ok ? "two formulas agree on all twelve modules" : trdeg_detail));
        add({"affineness of the group variety", false, "cited, not computed; only the duality pairing is checked",
             Status::cited});
    }

    void invariants() {
        const Subspace big = Q().big_minus(1);
        Rng ro = rng.fork("oracles g1*");
        auto Fs = oracles_on(Q(), big, ro);
        Json inv;
        inv["trdeg"] = T().big_css(1).dim();
        Rng rd = rng.fork("degrees");
        inv["degrees"] = independent_degrees(Fs, big, rd);

        std::optional<VanishingReport> van;
        if (!Q().g10.is_zero()) {
            Rng rv = rng.fork("vanishing");
            van = vanishing_on_X(Q(), Fs, rv, g().parts().empty(), false);
            r.data["vanishing"] = vanishing_json(*van);
        }
        Json oracles = Json::array();
        for (const auto& F : Fs) {
            Json o = {{"name", F.name()}, {"degree", F.degree}, {"kind", kind_name(F.kind)}};
            o["vanishes_on_X"] = Json();
            if (van)
                for (const auto& e : van->entries)
                    if (e.name == F.name()) o["vanishes_on_X"] = e.vanishes;
            if (Q().g10.is_zero()) {
                o["top_bidegree"] = {0, F.degree};
            } else if (Q().g11.is_zero()) {
                o["top_bidegree"] = {F.degree, 0};
            } else {
                Rng rb = rng.fork("bihomog " + F.name());
                auto split = bihomog_extract(F, Q().g10, Q().g11, rb);
                o["top_bidegree"] = {split.bidegree(split.top).first, split.bidegree(split.top).second};
            }
            oracles.push_back(o);
        }
        inv["oracles"] = oracles;
        r.data["invariants"] = inv;

        {
            const bool hyp = van && van->condition_ok;
            bool ok = hyp && van->translates_agree && van->count_matches.value_or(true);
            std::string detail;
            if (!van) detail = "g10 is zero";
            else if (!van->condition_ok) detail = van->condition_failure;
            else
                detail = "k = " + std::to_string(van->k) + ", vanishing independent = " +
                         std::to_string(van->vanishing_independent) +
                         (van->count_matches ? "" : " (count not asserted: not a simple algebra)");
            add(check("vanishing of k basic invariants on G00·c10", hyp, ok, detail));
        }

        build_modules();
        bool ok = true;
        int checked = 0;
        std::string detail;
        for (const auto& V : modules) {
            const std::string tag = V.perm.str() + "/" + to_string(V.variant);
            Rng rm = rng.fork("contracted " + tag);
            for (const auto& F : oracles_on(Q(), V.V, rm)) {
                Evaluator E = contracted_invariant(F, V, rm);
                auto res = verify_invariance(E, F.degree, V, rm, 20);
                ++checked;
                if (!res.ok) {
                    ok = false;
                    detail += tag + " " + F.name() + ": " + res.failure + "; ";
                }
            }
        }
        add(check("top bihomogeneous components are invariants of the contraction", true, ok,
                  ok ? std::to_string(checked) + " oracle/module pairs, 20 exact points each" : detail));

        if (b.scenario.construction == Construction::canonical) canonical_gradients(Fs, van);
    }

    void canonical_gradients(const std::vector<InvariantOracle>& Fs, const std::optional<VanishingReport>& van) {
        std::vector<InvariantOracle> odd;
        for (const auto& F : Fs)
            if (F.degree % 2) odd.push_back(F);
        bool vanish_ok = van.has_value();
        if (van)
            for (const auto& e : van->entries) vanish_ok = vanish_ok && e.vanishes == (e.degree % 2 == 1);
        add(check("vanishing invariants are the odd-degree basic invariants", g().k0() > 0, vanish_ok,
                  "k0 = " + std::to_string(g().k0())));

        Rng rn = rng.fork("regular nilpotent");
        auto c10 = find_css(g(), Q().g10, rn, "g10");
        auto t0 = find_split_css(g(), Q().g00, rn, "g00");
        const int want = Q().g10.dim() - c10.dim();
        auto e = borel_nilpotent_search(g(), t0.generators, Q().g10, rn, [&](const Vec& v) {
            return rank(bracket_map(g(), v, Q().g00)) == want;
        });
        if (!e) throw Inconclusive("no G00-regular nilpotent found in g10");
        const bool indep = is_nilpotent(g(), *e) && independence_at(*e, odd, Q().big_minus(1));
        add(check("odd-degree gradients independent at a G00-regular nilpotent of g10", g().k0() > 0, indep,
                  std::to_string(odd.size()) + " odd-degree invariants"));
    }

    void compare() {
        r.expectations = b.scenario.expected;
        for (const auto& e : r.expectations) {
            Json::json_pointer ptr(e.pointer);
            Json actual = r.data.contains(ptr) ? r.data.at(ptr) : Json();
            if (actual != e.value) r.mismatches.push_back({{"pointer", e.pointer}, {"expected", e.value}, {"actual", actual}});
        }
    }
};

}  // namespace

Report run(const Scenario& s, const Suite& suite, std::uint64_t seed, int max_rep_dim) {
    Built b = build(s, max_rep_dim);
    Pipeline p{b, Rng(seed).fork(s.name), {}, std::nullopt, {}};
    p.r.data["seed"] = seed;
    p.decomposition();
    if (suite.css) p.css();
    if (suite.contraction) p.contraction();
    if (suite.invariants) p.invariants();
    p.compare();
    return p.r;
}

Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "md" || s == "markdown") return Format::markdown;
    throw InvalidInput("unknown format '" + s + "'");
}

std::string markdown_dimension_matrix(const std::array<std::array<int, 2>, 2>& m, const std::string& title) {
    std::ostringstream out;
    out << "| " << title << " | σ2 = +1 | σ2 = −1 |\n|---|---|---|\n";
    out << "| σ1 = +1 | " << m[0][0] << " | " << m[0][1] << " |\n";
    out << "| σ1 = −1 | " << m[1][0] << " | " << m[1][1] << " |\n";
    return out.str();
}

namespace {

std::string cell(const Json& j) {
    if (j.is_null()) return "—";
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

std::string markdown(const Report& rep) {
    const Json j = rep.to_json();
    std::ostringstream out;
    out << "## " << j["scenario"].get<std::string>() << "\n\n";
    out << "algebra `" << j["algebra"].get<std::string>() << "`, construction " << j["construction"].get<std::string>()
        << ", σ1 `" << j["sigma1"].get<std::string>() << "`";
    if (!j["sigma2"].get<std::string>().empty()) out << ", σ2 `" << j["sigma2"].get<std::string>() << "`";
    out << ", seed " << j["seed"].dump() << ", status **" << j["status"].get<std::string>() << "**\n\n";
    out << "Rows are σ1 eigenvalues, columns σ2 eigenvalues: g_ij has σ1 = (−1)^i and σ2 = (−1)^j; σ3 = σ1σ2.\n\n";
    const Json& dm = j["dim_matrix"];
    out << markdown_dimension_matrix({{{dm[0][0].get<int>(), dm[0][1].get<int>()}, {dm[1][0].get<int>(), dm[1][1].get<int>()}}},
                                     "dim g_ij");
    if (j.contains("css")) {
        const Json& c = j["css"];
        out << "\n| dim c | σ2 = +1 | σ2 = −1 |\n|---|---|---|\n";
        out << "| σ1 = +1 | | " << cell(c["c01"]) << " |\n";
        out << "| σ1 = −1 | " << cell(c["c10"]) << " | " << cell(c["c11"]) << " |\n\n";
        out << "Big Cartan subspaces: c1* (σ1 = −1 row) " << cell(c["c1*"]) << ", c*1 (σ2 = −1 column) "
            << cell(c["c*1"]) << ", c*,1-* (σ3 = −1 antidiagonal) " << cell(c["c*,1-*"]) << "\n\n";
        out << "| little ⊂ big | dims | saturated | witness rank | coincide |\n|---|---|---|---|---|\n";
        for (const auto& [key, e] : j["coincidences"].items())
            out << "| c" << key.substr(0, 2) << " ⊂ " << e["big"].get<std::string>() << " | " << e["little_dim"] << " / "
                << e["big_dim"] << " | " << e["saturated"] << " | " << e["witness_rank"] << " | " << e["coincide"]
                << " |\n";
    }
    if (j.contains("modules")) {
        out << "\n| α,β,γ | variant | max orbit | dim g_γ | witness | stabilizer | trdeg a | trdeg b |\n";
        out << "|---|---|---|---|---|---|---|---|\n";
        for (const auto& m : j["modules"])
            out << "| " << m["perm"].get<std::string>() << " | " << m["variant"].get<std::string>() << " | "
                << m["max_orbit_dim"] << " | " << m["orbit_bound"] << " | " << m["witness_found"] << " | "
                << m["stabilizer_dim"] << " | " << m["trdeg_a"] << " | " << m["trdeg_b"] << " |\n";
    }
    if (j.contains("invariants")) {
        const Json& inv = j["invariants"];
        out << "\nInvariants on g1*: trdeg " << inv["trdeg"] << ", independent degrees " << inv["degrees"].dump()
            << "\n\n| invariant | degree | kind | vanishes on X | top bidegree |\n|---|---|---|---|---|\n";
        for (const auto& o : inv["oracles"])
            out << "| " << o["name"].get<std::string>() << " | " << o["degree"] << " | " << o["kind"].get<std::string>()
                << " | " << cell(o["vanishes_on_X"]) << " | " << o["top_bidegree"].dump() << " |\n";
    }
    out << "\n| check | hypothesis | status | detail |\n|---|---|---|---|\n";
    for (const auto& t : j["theorems"])
        out << "| " << t["name"].get<std::string>() << " | " << t["hypothesis"] << " | " << t["status"].get<std::string>()
            << " | " << t["detail"].get<std::string>() << " |\n";
    if (!j["expectations"].empty()) {
        out << "\n| expectation | expected | actual | ok | provenance |\n|---|---|---|---|---|\n";
        for (const auto& e : j["expectations"])
            out << "| `" << e["pointer"].get<std::string>() << "` | " << cell(e["expected"]) << " | " << cell(e["actual"])
                << " | " << e["ok"] << " | " << e["provenance"].get<std::string>() << " |\n";
    }
    return out.str();
}

}  // namespace

std::string emit(const Report& r, Format f) {
    if (f == Format::json) return r.to_json().dump(2) + "\n";
    return markdown(r);
}

std::string emit(const std::vector<Report>& rs, Format f) {
    if (f == Format::json) {
        Json a = Json::array();
        for (const auto& r : rs) a.push_back(r.to_json());
        return a.dump(2) + "\n";
    }
    std::string s;
    for (const auto& r : rs) s += markdown(r) + "\n";
    return s;
}

Json css_json(const Built& b, std::uint64_t seed) {
    Rng rng = Rng(seed).fork(b.scenario.name).fork("rank table");
    auto T = rank_table(b.Q, rng);
    Json j = {{"scenario", b.scenario.name}, {"css", css_section(T)}};
    return j;
}

Json coincidence_json(const Built& b, std::uint64_t seed) {
    Rng rng = Rng(seed).fork(b.scenario.name).fork("rank table");
    auto T = rank_table(b.Q, rng);
    return {{"scenario", b.scenario.name}, {"css", css_section(T)}, {"coincidences", coincidence_section(T)}};
}

Json contract_json(const Built& b, const Permutation& p, Variant v, std::uint64_t seed) {
    auto V = degenerate_module(b.Q, p, v);
    const std::string tag = p.str() + "/" + to_string(v);
    Rng base = Rng(seed).fork(b.scenario.name);
    Rng ro = base.fork("orbit " + tag), rs = base.fork("stabilizer " + tag);
    auto o = max_nilradical_orbit_dim(V, ro);
    auto s = generic_stabilizer(V, rs, 10);
    Json j = module_json(s, o);
    j["scenario"] = b.scenario.name;
    j["dim_V"] = V.V.dim();
    j["dim_k"] = V.dim_k();
    j["predicted_stabilizer_dim"] = s.predicted.dim();
    j["stabilizer_matches"] = s.stabilizer == s.predicted;
    j["resampled_dims"] = s.resampled_dims;
    return j;
}

Json invariants_json(const Built& b, std::uint64_t seed) {
    Report r = run(b.scenario, Suite{false, false, true}, seed, b.Q.algebra->rep_dim());
    Json j = {{"scenario", b.scenario.name}, {"invariants", r.data["invariants"]}};
    if (r.data.contains("vanishing")) j["vanishing"] = r.data["vanishing"];
    return j;
}

}  // namespace isolab

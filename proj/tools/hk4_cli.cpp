// hk4: verification suites, lattice queries and samplers for the H^4 model.

#include "hk4/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace hk4;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    bool text = false;
    std::string out;
};

void emit(const std::string& body, const OutputOptions& o) {
    if (o.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(o.out);
    if (!f)
        throw UsageError("cannot write " + o.out);
    f << body;
}

Json read_payload(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream f(arg.substr(1));
        if (!f)
            throw UsageError("cannot read " + arg.substr(1));
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("payload is not valid JSON: ") + e.what());
    }
}

// A class in H4, given as
//   "q" | "two_fifths_q" | "v0" | "c2"           named classes (delta0)
//   {"square": H2} | {"product": [H2, H2]}        products of H2 classes
//   {"sum": [{"coef": "p/q", "class": spec}...]}  rational combinations
//   {"(i,j)": "p/q", ...} or a dense array        explicit coordinates
H4Class class_from_spec(const Json& j) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "q")
            return build_q();
        if (name == "two_fifths_q")
            return two_fifths_q();
        if (name == "v0")
            return build_v0(ExceptionalClass::standard());
        if (name == "c2")
            return second_chern_class(ExceptionalClass::standard());
        throw std::invalid_argument("unknown class name: " + name);
    }
    if (j.is_object() && j.contains("square"))
        return square(h2_from_json(j.at("square")));
    if (j.is_object() && j.contains("product")) {
        const auto& p = j.at("product");
        if (!p.is_array() || p.size() != 2)
            throw std::invalid_argument("product needs two classes");
        return sym2_embed(h2_from_json(p[0]), h2_from_json(p[1]));
    }
    if (j.is_object() && j.contains("sum")) {
        H4Class total;
        for (const auto& term : j.at("sum"))
            total += rat_from_json(term.value("coef", Json("1"))) * class_from_spec(term.at("class"));
        return total;
    }
    return h4_from_json(j);
}

Json query(const std::string& kind, const Json& payload) {
    const Lattice& L = standard_L().lattice;
    if (kind == "membership") {
        H4Class x = class_from_spec(payload.at("class"));
        Json out{{"query", kind}, {"in_L", L.contains(x.coords())}, {"in_Sym2", x.is_integral()}};
        if (L.contains(x.coords()))
            out["t4_order"] = t4_order(x).get_str();
        return out;
    }
    if (kind == "divisibility") {
        H4Class x = class_from_spec(payload.at("class"));
        if (!L.contains(x.coords()))
            throw std::invalid_argument("class is not in H4");
        return {{"query", kind}, {"divisibility", divisibility(x.coords(), L).get_str()}};
    }
    if (kind == "vlambda") {
        H2Class l0 = h2_from_json(payload.at("lambda0"));
        Lattice v = v_lambda0(l0);
        Json basis = Json::array();
        for (std::size_t k = 0; k < v.rank(); ++k)
            basis.push_back(to_json(H4Class(v.basis_vector(k))));
        H4Class l2 = square(l0), tq = two_fifths_q();
        bool even = is_even(l0);
        Lattice closed(rows_from(even ? std::vector<H4Class>{l2, Rat(1, 8) * (l2 + tq)}
                                      : std::vector<H4Class>{l2, tq}),
                       fujiki_form_ptr());
        return {{"query", kind},
                {"parity", even ? "even" : "odd"},
                {"square", bb_square(l0).get_str()},
                {"basis", basis},
                {"gram", to_json(fujiki_gram(v))},
                {"matches_closed_form", v == closed},
                {"hodge_image_in_T4", to_json(hodge_image_in_T4(l0))}};
    }
    if (kind == "minimal-search") {
        auto p = picard_from_json(payload);
        Json out = to_json(minimal_class_search(p));
        out["query"] = kind;
        out["picard"] = to_json(p);
        out["assumption"] = assumption_holds(p.lambda0());
        return out;
    }
    throw UsageError("unknown query kind: " + kind);
}

Json sample(const std::string& kind, int count, std::uint64_t seed) {
    Rng rng(seed);
    Json items = Json::array();
    for (int i = 0; i < count; ++i) {
        if (kind == "exceptional") {
            auto d = sample_exceptional(rng);
            items.push_back({{"class", to_json(d.cls())}, {"exceptional", is_exceptional(d.cls())}});
        } else if (kind == "polarization-odd" || kind == "polarization-even") {
            bool even = kind == "polarization-even";
            H2Class l = even ? sample_even_polarization(rng) : sample_odd_polarization(rng);
            items.push_back({{"class", to_json(l)},
                             {"square", bb_square(l).get_str()},
                             {"primitive", is_primitive(l)},
                             {"parity", is_even(l) ? "even" : "odd"},
                             {"assumption", assumption_holds(l)}});
        } else {
            throw UsageError("unknown sample kind: " + kind);
        }
    }
    return {{"kind", kind}, {"seed", seed}, {"count", count}, {"samples", items}};
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        try {
            out.push_back(Int(item));
        } catch (const std::invalid_argument&) {
            throw UsageError("not an integer: " + item);
        }
    if (out.empty())
        throw UsageError("empty multiplier list");
    return out;
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact model of H^4 of K3^[2]-type hyperkaehler fourfolds"};
    app.require_subcommand(1);

    SuiteOptions sopt;
    OutputOptions oopt;
    std::string convention = "quadratic";
    auto add_output = [&](CLI::App* c) {
        auto* json_flag = c->add_flag("--json", "JSON output (default)");
        c->add_flag("--text", oopt.text, "Human-readable output")->excludes(json_flag);
        c->add_option("--out", oopt.out, "Write the output to a file");
    };

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "h4-torsion | minimal-class | even-odd | cubic | deformation | "
                                       "blowup | t4-structure | all")
        ->required();
    verify->add_option("--seed", sopt.seed, "PRNG seed");
    verify->add_option("--trials", sopt.trials, "Size of the main randomized loop")
        ->check(CLI::PositiveNumber);
    verify->add_option("--convention", convention, "Residue convention: quadratic | paper")
        ->check(CLI::IsMember({"quadratic", "paper"}));
    add_output(verify);

    auto* q = app.add_subcommand("query", "Exact lattice queries");
    std::string kind, payload;
    q->add_option("kind", kind, "membership | divisibility | vlambda | minimal-search")
        ->required()
        ->check(CLI::IsMember({"membership", "divisibility", "vlambda", "minimal-search"}));
    q->add_option("payload", payload, "JSON payload or @file")->required();
    add_output(q);

    auto* s = app.add_subcommand("sample", "Seeded random classes");
    std::string skind;
    int count = 5;
    std::uint64_t sseed = 7;
    s->add_option("kind", skind, "exceptional | polarization-odd | polarization-even")
        ->required()
        ->check(CLI::IsMember({"exceptional", "polarization-odd", "polarization-even"}));
    s->add_option("--count", count, "Number of samples")->check(CLI::PositiveNumber);
    s->add_option("--seed", sseed, "PRNG seed");
    add_output(s);

    auto* search = app.add_subcommand("search", "Searches");
    search->require_subcommand(1);
    auto* combos = search->add_subcommand("jacobian-combos", "Combinations with sum c_i^2 e_i = 1");
    std::string multipliers;
    long bound = 3;
    combos->add_option("--multipliers", multipliers, "Comma-separated multipliers")->required();
    combos->add_option("--bound", bound, "Coefficient bound")->check(CLI::PositiveNumber);
    combos->add_option("--convention", convention, "Residue convention: quadratic | paper")
        ->check(CLI::IsMember({"quadratic", "paper"}));
    add_output(combos);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        sopt.convention = parse_convention(convention);
        if (*verify) {
            if (!is_suite_name(suite))
                throw UsageError("unknown suite: " + suite);
            auto report = run_suite(suite, sopt);
            emit(oopt.text ? report.to_text() : render(report.to_json()), oopt);
            return report.ok() ? kExitPass : kExitFail;
        }
        if (*q) {
            Json out;
            try {
                out = query(kind, read_payload(payload));
            } catch (const Json::exception& e) {
                throw UsageError(std::string("malformed payload: ") + e.what());
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            emit(render(out), oopt);
            return kExitPass;
        }
        if (*s) {
            emit(render(sample(skind, count, sseed)), oopt);
            return kExitPass;
        }
        if (*combos) {
            auto mults = parse_int_list(multipliers);
            auto rep = potential_jacobian_search(mults, bound);
            Json out = to_json(rep, mults);
            out["convention"] = to_string(sopt.convention);
            if (oopt.text) {
                std::ostringstream os;
                os << rep.solutions.size() << " solutions with |c_i| <= " << bound << " ("
                   << rep.examined << " vectors examined)";
                if (rep.parity_certificate)
                    os << "; all multipliers even, so no solution exists";
                os << "\n";
                for (const auto& sol : rep.solutions) {
                    for (std::size_t i = 0; i < sol.size(); ++i)
                        os << (i ? " " : "") << sol[i].get_str();
                    os << "\n";
                }
                emit(os.str(), oopt);
            } else {
                emit(render(out), oopt);
            }
            return kExitPass;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}

// Command-line front end: check / construct / distance / enumerate /
// simulate over the line-oriented code file format. Exit codes: 0 the
// requested check passed, 1 it failed on principle, 2 operational error
// (bad input, cap exceeded, ...). Reports print human-readable by
// default, JSON (schema 1) with --json.

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cshield/codefile.hpp"
#include "cshield/construct.hpp"
#include "cshield/enumerator.hpp"
#include "cshield/oblivious.hpp"
#include "cshield/oracle.hpp"

using json = nlohmann::json;
using namespace cshield;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

unsigned default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

json entry_to_json(const CheckEntry& e) {
    json j{{"condition", e.condition}, {"pass", e.pass}};
    if (!e.representative.empty()) j["representative"] = e.representative;
    if (e.residual) j["residual"] = *e.residual;
    if (e.exact) j["exact"] = *e.exact;
    if (!e.witness.empty()) j["witness"] = e.witness;
    return j;
}

json report_to_json(const CheckReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) entries.push_back(entry_to_json(e));
    return json{{"verdict", report.verdict ? "pass" : "fail"}, {"entries", entries}, {"notes", report.notes}};
}

void print_report_human(const std::string& label, const CheckReport& report) {
    std::cout << label << ": " << (report.verdict ? "PASS" : "FAIL") << "\n";
    for (const auto& e : report.entries) {
        if (e.pass && report.verdict) continue;  // only itemize on failure
        std::cout << "  " << e.condition;
        if (!e.representative.empty()) std::cout << " a=" << e.representative;
        std::cout << " -> " << (e.pass ? "ok" : "VIOLATED");
        if (e.residual) std::cout << " residual=" << *e.residual;
        if (!e.witness.empty()) std::cout << " (" << e.witness << ")";
        std::cout << "\n";
    }
}

struct CheckArgs {
    std::string path;
    std::vector<double> angles;
    std::vector<int> levels;
    bool all_l = false;
    bool as_json = false;
    unsigned threads = default_threads();
};

int run_check(const CheckArgs& args) {
    const CodeFile file = parse_code_file(read_file(args.path));
    const StabilizerGroup group = to_group(file);
    if (!args.all_l && args.angles.empty() && args.levels.empty())
        throw Error("check: pick at least one of --all-l, --level, --angle");

    AngleCheckOptions opts;
    opts.threads = args.threads;
    bool all_pass = true;
    json results = json::array();

    auto record = [&](const std::string& label, const CheckReport& report, json extra = {}) {
        all_pass = all_pass && report.verdict;
        if (args.as_json) {
            json r = report_to_json(report);
            r["mode"] = label;
            for (auto& [k, v] : extra.items()) r[k] = v;
            results.push_back(std::move(r));
        } else {
            print_report_human(label, report);
        }
    };

    for (int level : args.levels) {
        const double angle = level_to_angle(level);
        record("level " + std::to_string(level), angle_preservation_check(group, angle, opts),
               json{{"angle", angle}});
    }
    for (double angle : args.angles)
        record("angle " + std::to_string(angle), angle_preservation_check(group, angle, opts),
               json{{"angle", angle}});
    if (args.all_l) record("all-l", obliviousness_check(group, opts));

    if (args.as_json) {
        json out{{"schema", 1},
                 {"command", "check"},
                 {"code", file.name},
                 {"n", file.n},
                 {"verdict", all_pass ? "pass" : "fail"},
                 {"results", results}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (all_pass ? "PASS" : "FAIL") << "\n";
    }
    return all_pass ? kExitPass : kExitFail;
}

std::vector<BinaryVector> parse_y_pattern(const std::string& pattern, std::size_t blocks, std::size_t m) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : pattern) {
        if (ch == ',') {
            parts.push_back(std::exchange(current, {}));
        } else {
            current.push_back(ch);
        }
    }
    parts.push_back(current);
    std::vector<BinaryVector> out;
    if (parts.size() == 1) {
        out.assign(blocks, BinaryVector::from_string(parts[0]));
    } else {
        for (const auto& p : parts) out.push_back(BinaryVector::from_string(p));
    }
    for (const auto& b : out)
        if (b.size() != m) throw Error("--y-pattern: block '" + pattern + "' does not have length M");
    return out;
}

struct ConstructArgs {
    std::string path;
    std::size_t m_copies = 2;
    std::string y_pattern;
    std::size_t padding = 0;
    std::string out_path;
    std::string family;
    std::size_t family_l = 1;
    bool as_json = false;
    unsigned threads = default_threads();
};

CodeFile codefile_from_css(const CssCode& css, const std::string& name) {
    CodeFile file;
    file.name = name;
    file.n = css.n;
    file.kind = CodeFile::Kind::css;
    file.xgens = css.basis_C2;
    file.zgens = css.basis_C1perp;
    file.y = css.y;
    file.u = css.u;
    return file;
}

int run_construct(const ConstructArgs& args) {
    CodeFile out_file;
    std::size_t k = 0;
    std::string d_lower = "?", d_upper = "?";

    if (!args.family.empty()) {
        if (args.family != "shor") throw Error("unknown --family '" + args.family + "'");
        const CssCode css = shor_code_family(args.family_l);
        out_file = codefile_from_css(css, "shor" + std::to_string(css.n));
        k = css.logical_qubits();
        d_lower = d_upper = std::to_string(2 * args.family_l);
    } else {
        if (args.path.empty()) throw Error("construct: need a seed code file or --family");
        const CodeFile seed_file = parse_code_file(read_file(args.path));
        ConstructionSpec spec;
        spec.seed = to_group(seed_file);
        spec.m_copies = args.m_copies;
        spec.padding = args.padding;
        if (!args.y_pattern.empty())
            spec.y_blocks = parse_y_pattern(args.y_pattern, spec.seed.n, args.m_copies);
        const StabilizerGroup lifted = construct_stabilizer_lift(spec);
        out_file.name = seed_file.name + "_m" + std::to_string(args.m_copies);
        out_file.n = lifted.n;
        out_file.kind = CodeFile::Kind::stab;
        out_file.gens = lifted.generators;
        k = lifted.n - lifted.generators.size();
        // distance bounds from the seed, when a seed search is feasible
        if (spec.seed.n <= 12 && rank(symplectic_matrix(spec.seed)) < spec.seed.n) {
            DistanceOptions dopts;
            dopts.threads = args.threads;
            const DistanceResult ds = min_distance(spec.seed, dopts);
            if (ds.exact) {
                d_lower = std::to_string(ds.d);
                d_upper = std::to_string(args.m_copies * ds.d);
            }
        }
    }

    const std::string text = serialize(out_file);
    if (!args.out_path.empty()) {
        std::ofstream out(args.out_path, std::ios::binary);
        if (!out.good()) throw Error("cannot write '" + args.out_path + "'");
        out << text;
    }

    if (args.as_json) {
        json j{{"schema", 1},
               {"command", "construct"},
               {"code", out_file.name},
               {"n", out_file.n},
               {"k", k},
               {"d_lower", d_lower},
               {"d_upper", d_upper}};
        if (!args.out_path.empty()) j["path"] = args.out_path;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "[[" << out_file.n << ", " << k << ", d in [" << d_lower << ", " << d_upper << "]]] -> "
                  << (args.out_path.empty() ? "(stdout)" : args.out_path) << "\n";
        if (args.out_path.empty()) std::cout << text;
    }
    return kExitPass;
}

struct DistanceArgs {
    std::string path;
    std::optional<std::size_t> cap_weight;
    bool as_json = false;
    unsigned threads = default_threads();
};

int run_distance(const DistanceArgs& args) {
    const CodeFile file = parse_code_file(read_file(args.path));
    const StabilizerGroup group = to_group(file);
    DistanceOptions opts;
    opts.cap_weight = args.cap_weight;
    opts.threads = args.threads;
    const DistanceResult result = min_distance(group, opts);
    if (args.as_json) {
        json j{{"schema", 1},
               {"command", "distance"},
               {"code", file.name},
               {"n", file.n},
               {"exact", result.exact}};
        j[result.exact ? "d" : "d_lower_bound"] = result.d;
        if (result.witness) j["witness"] = {{"x", result.witness->x.to_string()}, {"z", result.witness->z.to_string()}};
        std::cout << j.dump(2) << "\n";
    } else if (result.exact) {
        std::cout << "d = " << result.d;
        if (result.witness)
            std::cout << "  witness X:" << result.witness->x.to_string() << " Z:" << result.witness->z.to_string();
        std::cout << "\n";
    } else {
        std::cout << "d >= " << result.d << " (search capped at weight " << *args.cap_weight << ")\n";
    }
    return result.exact ? kExitPass : kExitError;
}

struct EnumerateArgs {
    std::string path;
    std::string which = "z";
    bool as_json = false;
};

int run_enumerate(const EnumerateArgs& args) {
    const CodeFile file = parse_code_file(read_file(args.path));
    BinaryMatrix basis(file.n);
    if (file.kind == CodeFile::Kind::css) {
        const CssCode css = to_css_code(file);
        basis = (args.which == "x") ? css.basis_C2 : css.basis_C1perp;
    } else {
        const StabilizerGroup group = to_group(file);
        if (args.which == "x") {
            const NormalForm nf = symplectic_normal_form(group);
            for (const auto& g : nf.mixed_rows) basis.append_row(g.x);
        } else {
            basis = pure_z_subgroup(group).basis;
        }
    }
    const WeightEnumerator we = weight_enumerator(basis);
    if (args.as_json) {
        json coeffs = json::array();
        for (std::size_t w = 0; w <= we.m; ++w)
            if (we.coeffs[w] != 0)
                coeffs.push_back({{"weight", w}, {"count", we.coeffs[w].convert_to<std::uint64_t>()}});
        std::cout << json{{"schema", 1},
                          {"command", "enumerate"},
                          {"code", file.name},
                          {"which", args.which},
                          {"coefficients", coeffs}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "weight enumerator (" << args.which << "-code) of " << file.name << ":\n";
        for (std::size_t w = 0; w <= we.m; ++w)
            if (we.coeffs[w] != 0) std::cout << "  A_" << w << " = " << we.coeffs[w] << "\n";
    }
    return kExitPass;
}

struct SimulateArgs {
    std::string path;
    std::vector<double> thetas;
    std::uint64_t seed = 20240901;
    bool as_json = false;
};

int run_simulate(const SimulateArgs& args) {
    const CodeFile file = parse_code_file(read_file(args.path));
    if (args.thetas.empty()) throw Error("simulate: need at least one --theta");
    InvarianceReport report = (file.kind == CodeFile::Kind::css)
                                  ? invariance_up_to_phase(to_css_code(file), args.thetas)
                                  : invariance_up_to_phase(to_group(file), args.thetas, args.seed);
    if (args.as_json) {
        json angles = json::array();
        for (const auto& a : report.per_angle)
            angles.push_back({{"theta", a.theta},
                              {"min_fidelity", a.min_fidelity},
                              {"max_projector_residual", a.max_projector_residual},
                              {"preserved", a.preserved},
                              {"invariant", a.invariant},
                              {"shared_phase", a.shared_phase},
                              {"phases", a.phases}});
        std::cout << json{{"schema", 1},
                          {"command", "simulate"},
                          {"code", file.name},
                          {"n", file.n},
                          {"basis_states", report.basis_states},
                          {"error_detecting", report.error_detecting},
                          {"verdict", report.all_invariant ? "pass" : "fail"},
                          {"angles", angles}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "theta        fidelity     residual     preserved invariant phase\n";
        for (const auto& a : report.per_angle) {
            std::printf("%-12.6g %-12.10g %-12.3g %-9s %-9s", a.theta, a.min_fidelity,
                        a.max_projector_residual, a.preserved ? "yes" : "no", a.invariant ? "yes" : "no");
            for (double p : a.phases) std::printf(" %.6g", p);
            std::printf("\n");
        }
        std::cout << (report.all_invariant ? "PASS" : "FAIL") << "\n";
    }
    return report.all_invariant ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis and construction of stabilizer codes oblivious to transversal coherent Z-noise"};
    app.require_subcommand(1);

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "decide code-space preservation / obliviousness");
    check->add_option("file", check_args.path, "code file")->required();
    check->add_option("--angle", check_args.angles, "rotation angle in radians (repeatable)");
    check->add_option("--level", check_args.levels, "level l, meaning angle 2*pi/2^l (repeatable)");
    check->add_flag("--all-l", check_args.all_l, "structural check covering every level at once");
    check->add_flag("--json", check_args.as_json, "JSON report");
    check->add_option("--threads", check_args.threads, "worker threads");

    ConstructArgs construct_args;
    auto* construct = app.add_subcommand("construct", "build an oblivious code from a seed");
    construct->add_option("file", construct_args.path, "seed code file");
    construct->add_option("--m", construct_args.m_copies, "copies per qubit (even)");
    construct->add_option("--y-pattern", construct_args.y_pattern,
                          "per-block sign pattern, e.g. '10' or '01,10,01'");
    construct->add_option("--pad", construct_args.padding, "extra padding qubits");
    construct->add_option("--out", construct_args.out_path, "output code file");
    construct->add_option("--family", construct_args.family, "built-in family (shor)");
    construct->add_option("--L", construct_args.family_l, "family size parameter");
    construct->add_flag("--json", construct_args.as_json, "JSON report");
    construct->add_option("--threads", construct_args.threads, "worker threads");

    DistanceArgs distance_args;
    std::size_t cap_weight_raw = 0;
    auto* distance = app.add_subcommand("distance", "exact minimum distance by weight-ordered search");
    distance->add_option("file", distance_args.path, "code file")->required();
    auto* cap_opt = distance->add_option("--cap-weight", cap_weight_raw, "stop the search at this weight");
    distance->add_flag("--json", distance_args.as_json, "JSON report");
    distance->add_option("--threads", distance_args.threads, "worker threads");

    EnumerateArgs enumerate_args;
    auto* enumerate = app.add_subcommand("enumerate", "exact weight enumerator of the X- or Z-code");
    enumerate->add_option("file", enumerate_args.path, "code file")->required();
    enumerate->add_option("--which", enumerate_args.which, "x or z (default z)")
        ->check(CLI::IsMember({"x", "z"}));
    enumerate->add_flag("--json", enumerate_args.as_json, "JSON report");

    SimulateArgs simulate_args;
    auto* simulate = app.add_subcommand("simulate", "statevector invariance under transversal Z-rotations");
    simulate->add_option("file", simulate_args.path, "code file")->required();
    simulate->add_option("--theta", simulate_args.thetas, "rotation angle in radians (repeatable)");
    simulate->add_option("--seed", simulate_args.seed, "RNG seed for non-CSS code states");
    simulate->add_flag("--json", simulate_args.as_json, "JSON report");

    try {
        app.parse(argc, argv);
        if (*check) return run_check(check_args);
        if (*construct) return run_construct(construct_args);
        if (*distance) {
            if (cap_opt->count()) distance_args.cap_weight = cap_weight_raw;
            return run_distance(distance_args);
        }
        if (*enumerate) return run_enumerate(enumerate_args);
        if (*simulate) return run_simulate(simulate_args);
        return kExitError;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

// Command-line front end: evaluate switch outputs, classify interference
// terms, search order sets, run the cross-check battery, and compute Holevo
// quantities. Exit codes: 0 success, 1 verification failure, 2 usage or
// input error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "switchsim/switchsim.hpp"

namespace {

using namespace switchsim;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        // e.what() carries the line/column context from the parser.
        throw std::runtime_error("malformed JSON in '" + path + "': " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::vector<Permutation> parse_perm_spec(const std::string& spec, int n) {
    if (spec == "cyclic") return cyclic_permutations(n);
    if (spec == "all" || spec == "all-pairs") return all_permutations(n);
    Json j;
    if (!spec.empty() && spec.front() == '[') {
        try {
            j = Json::parse(spec);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error(std::string("malformed inline permutation list: ") + e.what());
        }
    } else {
        j = read_json_file(spec);
    }
    std::vector<Permutation> perms = perms_from_json(j);
    for (const auto& p : perms)
        if (p.size() != n)
            throw std::runtime_error("permutation " + p.to_string() + " does not act on 1.." +
                                     std::to_string(n));
    return perms;
}

DensityMatrix parse_state(const std::string& spec, int d) {
    if (spec == "zero") return basis_state(d, 0);
    if (spec == "plus") return plus_state(d);
    if (spec == "mixed") return maximally_mixed(d);
    return DensityMatrix(matrix_from_json(read_json_file(spec)));
}

DensityMatrix parse_control(const std::string& spec, int m) {
    if (spec == "fourier") return fourier_control(m);
    return DensityMatrix(matrix_from_json(read_json_file(spec)));
}

std::string quoted_perm(const Permutation& p) {
    std::string s = "\"";
    for (int a = 1; a <= p.size(); ++a) {
        if (a > 1) s += ' ';
        s += std::to_string(p.image_of(a));
    }
    s += '"';
    return s;
}

// ---- evaluate ----

struct EvaluateArgs {
    std::string spec_path;
    bool cdpc = false;
    int d = 2;
    int n = 2;
    std::string perms = "cyclic";
    std::string rho = "zero";
    std::string control = "fourier";
    bool fast = false;
    bool both = false;
    double tolerance = 1e-10;
    std::string out_path;
};

int cmd_evaluate(const EvaluateArgs& args) {
    std::unique_ptr<SwitchSpec> spec;
    if (!args.spec_path.empty()) {
        spec = std::make_unique<SwitchSpec>(spec_from_json(read_json_file(args.spec_path)));
    } else if (args.cdpc) {
        std::vector<Permutation> perms = parse_perm_spec(args.perms, args.n);
        DensityMatrix control = parse_control(args.control, static_cast<int>(perms.size()));
        spec = std::make_unique<SwitchSpec>(args.d,
                                            std::vector<KrausChannel>(args.n, make_cdpc(args.d)),
                                            std::move(perms), std::move(control));
    } else {
        std::cerr << "evaluate: provide --spec FILE or --cdpc\n";
        return 2;
    }

    const DensityMatrix rho = parse_state(args.rho, spec->d);

    const bool need_fast = args.fast || args.both;
    if (need_fast) {
        for (const auto& ch : spec->channels)
            if (!is_cdpc(ch)) {
                std::cerr << "evaluate: --fast/--both requires completely depolarising channels\n";
                return 2;
            }
    }

    Json report;
    int exit_code = 0;
    if (args.fast) {
        report = output_to_json(switch_output_fast(spec->d, spec->perms, spec->control, rho));
        report["evaluator"] = "fast";
    } else if (args.both) {
        const SwitchOutput brute = switch_output(*spec, rho);
        const SwitchOutput fast = switch_output_fast(spec->d, spec->perms, spec->control, rho);
        double deviation = 0.0;
        for (int i = 0; i < brute.control_dim; ++i)
            for (int j = 0; j < brute.control_dim; ++j)
                deviation = std::max(deviation, max_abs_diff(brute.block(i, j), fast.block(i, j)));
        report = output_to_json(brute);
        report["evaluator"] = "both";
        report["max_deviation"] = deviation;
        if (deviation >= args.tolerance) {
            std::cerr << "evaluate: evaluators disagree by " << deviation << "\n";
            exit_code = 1;
        }
    } else {
        report = output_to_json(switch_output(*spec, rho));
        report["evaluator"] = "bruteforce";
    }
    write_text(args.out_path, report.dump(2) + "\n");
    return exit_code;
}

// ---- classify ----

int cmd_classify(int n, const std::string& perm_spec, const std::string& out_path) {
    if (n > 6) {
        std::cerr << "classify: N > 6 is refused (N! orders; the table would explode)\n";
        return 2;
    }
    const std::vector<Permutation> perms = parse_perm_spec(perm_spec, n);
    std::ostringstream csv;
    csv << "pi,pi_prime,kind,cycle_count,coeff_exponent,diagram_kind,diagram_loops\n";
    int disagreements = 0;
    for (const auto& pi : perms) {
        for (const auto& pip : perms) {
            const TermClass cls = classify_term(pi, pip);
            const WiringDiagram dg = build_diagram(pi, pip);
            const bool transmitting = is_information_transmitting(dg);
            const int loops = count_loops(modify_diagram(dg));
            const char* diagram_kind = transmitting ? "identity" : "depolarising";
            csv << quoted_perm(pi) << ',' << quoted_perm(pip) << ',' << to_string(cls.kind) << ','
                << cls.cycle_count << ',' << cls.coefficient_log_d << ',' << diagram_kind << ','
                << loops << '\n';
            if (transmitting != (cls.kind == TermKind::IdentityProportional) ||
                loops != cls.cycle_count)
                ++disagreements;
        }
    }
    write_text(out_path, csv.str());
    if (disagreements > 0) {
        std::cerr << "classify: " << disagreements
                  << " pairs disagree between the cycle and diagram oracles\n";
        return 1;
    }
    return 0;
}

// ---- search ----

struct SearchArgs {
    int n = 0;
    int m = 0;
    int d = 2;
    std::uint64_t sample = 0;
    std::uint64_t seed = 0;
    bool check_cyclic = false;
    std::string out_path;
};

int cmd_search(const SearchArgs& args) {
    SearchResult result;
    Json report;
    if (args.sample > 0) {
        result = sampled_search(args.n, args.m, args.d, args.sample, args.seed);
        report = search_result_to_json(result);
        report["mode"] = "sampled";
        report["seed"] = args.seed;
    } else {
        if (args.n > 4) {
            std::cerr << "search: exhaustive mode is limited to N <= 4; rerun with --sample "
                         "COUNT --seed SEED\n";
            return 2;
        }
        result = search_best(args.n, args.m, args.d);
        report = search_result_to_json(result);
        report["mode"] = "exhaustive";
    }
    write_text(args.out_path, report.dump(2) + "\n");
    if (args.check_cyclic) {
        for (const auto& ps : result.maximizers)
            for (std::size_t i = 0; i < ps.perm_set.size(); ++i)
                for (std::size_t j = i + 1; j < ps.perm_set.size(); ++j)
                    if (!is_mutually_cyclic(ps.perm_set[i], ps.perm_set[j])) {
                        std::cerr << "search: maximizer contains a pair that is not mutually "
                                     "cyclic: "
                                  << ps.perm_set[i].to_string() << " vs "
                                  << ps.perm_set[j].to_string() << "\n";
                        return 1;
                    }
    }
    return 0;
}

// ---- verify ----

int cmd_verify(double tolerance, bool quick, std::uint64_t seed) {
    VerifyOptions opt;
    opt.tolerance = tolerance;
    opt.quick = quick;
    opt.seed = seed;
    const std::vector<CheckResult> results = run_verification(opt);
    int failures = 0;
    for (const auto& r : results) {
        if (!r.passed) ++failures;
        std::printf("%s  %-55s worst %.3e", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.worst);
        if (r.bound > 0.0) std::printf("  (bound %.0e)", r.bound);
        if (!r.detail.empty()) std::printf("  [%s]", r.detail.c_str());
        std::printf("\n");
    }
    std::printf("----\n%zu checks, %d failed\n", results.size(), failures);
    return failures == 0 ? 0 : 1;
}

// ---- holevo ----

struct HolevoArgs {
    int n = 2;
    int d = 2;
    std::string perms = "cyclic";
    std::string ensemble = "orthogonal";
    std::string control = "fourier";
    bool discard_control = false;
    std::string out_path;
};

int cmd_holevo(const HolevoArgs& args) {
    const std::vector<Permutation> perms = parse_perm_spec(args.perms, args.n);
    const DensityMatrix control = parse_control(args.control, static_cast<int>(perms.size()));
    const Ensemble ensemble = args.ensemble == "orthogonal"
                                  ? orthogonal_ensemble(args.d)
                                  : ensemble_from_json(read_json_file(args.ensemble));
    const double chi = args.discard_control
                           ? holevo_of_protocol_control_discarded(perms, args.d, ensemble, control)
                           : holevo_of_protocol(perms, args.d, ensemble, control);
    Json report{{"N", args.n},
                {"d", args.d},
                {"perms", perms_to_json(perms)},
                {"control", args.discard_control ? "discarded" : "retained"},
                {"chi_bits", chi}};
    write_text(args.out_path, report.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"N-channel quantum switch: evaluators, term classifier, order-set search"};
    app.require_subcommand(1);

    EvaluateArgs ev;
    CLI::App* evaluate = app.add_subcommand("evaluate", "Compute a switch output state");
    evaluate->add_option("--spec", ev.spec_path, "Switch description JSON file");
    evaluate->add_flag("--cdpc", ev.cdpc, "Use N completely depolarising channels");
    evaluate->add_option("-d", ev.d, "System dimension (with --cdpc)");
    evaluate->add_option("-N", ev.n, "Number of channels (with --cdpc)");
    evaluate->add_option("--perms", ev.perms, "Orders: cyclic | all | JSON list or file");
    evaluate->add_option("--rho", ev.rho, "Input state: zero | plus | mixed | JSON file");
    evaluate->add_option("--control", ev.control, "Control state: fourier | JSON file");
    evaluate->add_flag("--fast", ev.fast, "Closed-form evaluator (depolarising channels only)");
    evaluate->add_flag("--both", ev.both, "Run both evaluators and report the max deviation");
    evaluate->add_option("--tolerance", ev.tolerance, "Deviation bound for --both")
        ->check(CLI::PositiveNumber);
    evaluate->add_option("-o,--output", ev.out_path, "Output path (default stdout)");
    evaluate->get_option("--spec")->excludes(evaluate->get_option("--cdpc"));
    evaluate->get_option("--fast")->excludes(evaluate->get_option("--both"));

    int cl_n = 0;
    std::string cl_perms = "all";
    std::string cl_out;
    CLI::App* classify = app.add_subcommand("classify", "Classify all ordered pairs of orders");
    classify->add_option("-N", cl_n, "Number of channels")->required();
    classify->add_option("--perms", cl_perms, "Orders: cyclic | all | JSON list or file");
    classify->add_option("-o,--output", cl_out, "Output path (default stdout)");

    SearchArgs se;
    CLI::App* search = app.add_subcommand("search", "Find the order sets maximising the objective");
    search->add_option("-N", se.n, "Number of channels")->required();
    search->add_option("-M", se.m, "Orders per set")->required();
    search->add_option("-d", se.d, "System dimension");
    auto* sample_opt = search->add_option("--sample", se.sample, "Sampled mode: subsets to draw");
    auto* seed_opt = search->add_option("--seed", se.seed, "Sampler seed");
    sample_opt->needs(seed_opt);
    search->add_flag("--check-cyclic", se.check_cyclic,
                     "Fail unless every maximizer is pairwise mutually cyclic");
    search->add_option("-o,--output", se.out_path, "Output path (default stdout)");

    double vf_tol = 1e-10;
    bool vf_quick = false;
    std::uint64_t vf_seed = 20240817u;
    CLI::App* verify = app.add_subcommand("verify", "Run the evaluator cross-check battery");
    verify->add_option("--tolerance", vf_tol, "Deviation bound for the numeric checks")
        ->check(CLI::PositiveNumber);
    verify->add_flag("--quick", vf_quick, "Restrict to N <= 3 (seconds instead of minutes)");
    verify->add_option("--seed", vf_seed, "Seed for the random states and channels");

    HolevoArgs ho;
    CLI::App* holevo = app.add_subcommand("holevo", "Holevo quantity of a switch encoding");
    holevo->add_option("-N", ho.n, "Number of channels")->required();
    holevo->add_option("-d", ho.d, "System dimension");
    holevo->add_option("--perms", ho.perms, "Orders: cyclic | all | JSON list or file");
    holevo->add_option("--ensemble", ho.ensemble, "Encoding: orthogonal | JSON file");
    holevo->add_option("--control", ho.control, "Control state: fourier | JSON file");
    holevo->add_flag("--discard-control", ho.discard_control,
                     "Trace out the control before scoring");
    holevo->add_option("-o,--output", ho.out_path, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(evaluate)) return cmd_evaluate(ev);
        if (app.got_subcommand(classify)) return cmd_classify(cl_n, cl_perms, cl_out);
        if (app.got_subcommand(search)) return cmd_search(se);
        if (app.got_subcommand(verify)) return cmd_verify(vf_tol, vf_quick, vf_seed);
        if (app.got_subcommand(holevo)) return cmd_holevo(ho);
    } catch (const std::exception& e) {
        std::cerr << "switchsim: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

// Command line front end: reduce points, enumerate orbits, run the bundled
// height and counting experiments. Exit codes: 0 success, 2 verification
// failure, 3 budget or iteration exhaustion, 1 anything else.

#include "orbitlab/lab.hpp"
#include "orbitlab/wspecial.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace orbitlab;

namespace {

json read_json_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return json::parse(buf.str());
    }
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return json::parse(in);
}

struct TolFlags {
    Tolerances tol;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tol-sym", tol.tol_sym, "symmetry tolerance");
        cmd->add_option("--tol-act", tol.tol_act, "action/verification tolerance");
        cmd->add_option("--tol-pd", tol.tol_pd, "positive definiteness tolerance");
        cmd->add_option("--max-iter", tol.max_iter, "reduction iteration cap");
        cmd->add_option("--cond-bound", tol.cond_bound, "condition number bound");
    }
};

int run(int argc, char** argv) {
    CLI::App app{"laboratory for symplectic similitudes, Siegel reduction, "
                 "isogeny orbits and height experiments"};
    app.require_subcommand(1);

    // reduce
    auto* reduce = app.add_subcommand("reduce", "reduce a mixed point to the fundamental set");
    std::string reduce_input;
    long reduce_N = 4;
    TolFlags reduce_tol;
    reduce->add_option("-i,--input", reduce_input, "mixed point JSON file ('-' for stdin)");
    reduce->add_option("-N,--level", reduce_N, "level N (even, >= 4)");
    reduce_tol.attach(reduce);

    // orbit
    auto* orbit = app.add_subcommand("orbit", "enumerate a Hecke orbit as JSON lines");
    double orbit_x = 0.0, orbit_y = 2.0;
    std::string orbit_v = "0,0";
    long orbit_nmax = 5, orbit_N = 4;
    TolFlags orbit_tol;
    orbit->add_option("-x", orbit_x, "base tau real part");
    orbit->add_option("-y", orbit_y, "base tau imaginary part")->check(CLI::PositiveNumber);
    orbit->add_option("-v", orbit_v, "base V-part, comma separated rationals");
    orbit->add_option("-n,--n-max", orbit_nmax, "complexity bound")->check(CLI::PositiveNumber);
    orbit->add_option("-N,--level", orbit_N, "level N (even, >= 4)");
    orbit_tol.attach(orbit);

    // heights
    auto* heights = app.add_subcommand("heights", "canonical height scaling on the curve suite");
    double heights_tol = 1e-5;
    HeightOptions heights_opt{1e-6, 24, 400000000};
    heights->add_option("--tol", heights_tol, "pass tolerance on |h(phi P) - 2 h(P)|");
    heights->add_option("--height-tol", heights_opt.tol, "duplication limit stopping tolerance");
    heights->add_option("--max-doublings", heights_opt.max_doublings, "doubling cap");
    heights->add_option("--bit-budget", heights_opt.bit_budget, "coordinate bit budget");

    // count
    auto* count = app.add_subcommand("count", "count bounded-height rational points");
    std::string count_oracle = "parabola";
    long count_T = 10;
    long long count_budget = 100000000;
    count->add_option("-o,--oracle", count_oracle, "oracle name: parabola, exp2, box");
    count->add_option("-T", count_T, "height bound")->check(CLI::PositiveNumber);
    count->add_option("--budget", count_budget, "candidate pair budget");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run an experiment from a config file");
    std::string exp_config;
    experiment->add_option("config", exp_config, "JSON config file")->required();
    std::map<std::string, std::string> exp_overrides;
    long exp_nmax = -1, exp_T = -1, exp_N = -1;
    int exp_threads = -1;
    std::string exp_output, exp_oracle;
    double exp_tol_act = -1;
    long long exp_budget = -1;
    experiment->add_option("--n-max", exp_nmax, "override n_max");
    experiment->add_option("-T", exp_T, "override T");
    experiment->add_option("-N,--level", exp_N, "override level N");
    experiment->add_option("--threads", exp_threads, "override thread count");
    experiment->add_option("--output-path", exp_output, "override output path");
    experiment->add_option("--oracle", exp_oracle, "override oracle");
    experiment->add_option("--tol-act", exp_tol_act, "override action tolerance");
    experiment->add_option("--budget", exp_budget, "override candidate budget");

    CLI11_PARSE(app, argc, argv);

    if (reduce->parsed()) {
        MixedPoint p = mixed_from_json(read_json_input(reduce_input), reduce_tol.tol);
        ReduceToFResult r = reduce_to_F(p, LevelStructure(reduce_N), reduce_tol.tol);
        json out{{"reduced", to_json(r.reduced)},
                 {"certificate", to_json(r.cert)},
                 {"coset_residue", to_json(r.coset_residue)}};
        std::cout << out.dump(2) << '\n';
        return 0;
    }

    if (orbit->parsed()) {
        std::vector<Rat> v;
        std::stringstream ss(orbit_v);
        std::string tok;
        while (std::getline(ss, tok, ',')) v.push_back(parse_rat(tok));
        if (v.size() != 2) throw Error("orbit: -v expects two rationals");
        MixedPoint base =
            MixedPoint::exact(std::move(v), SiegelPoint::tau(orbit_x, orbit_y, orbit_tol.tol));
        LevelStructure level(orbit_N);
        for (const OrbitPoint& pt : enumerate_orbit_g1(base, orbit_nmax, level, orbit_tol.tol)) {
            Lemma53Witness w = lemma53_witness(pt, base, orbit_tol.tol);
            std::cout << orbit_point_record(pt, w.H).dump() << '\n';
        }
        return 0;
    }

    if (heights->parsed()) {
        NtScalingReport rep = run_nt_scaling(bundled_curve_suite(), heights_tol, heights_opt);
        write_csv(rep, std::cout);
        return rep.all_pass ? 0 : 2;
    }

    if (count->parsed()) {
        long long c = count_rational_points(bundled_oracle(count_oracle), count_T, count_budget);
        std::cout << c << '\n';
        return 0;
    }

    // experiment
    json cfg_json = read_json_input(exp_config);
    if (exp_nmax >= 1) cfg_json["n_max"] = exp_nmax;
    if (exp_T >= 1) cfg_json["T"] = exp_T;
    if (exp_N >= 1) cfg_json["N"] = exp_N;
    if (exp_threads >= 1) cfg_json["threads"] = exp_threads;
    if (!exp_output.empty()) cfg_json["output_path"] = exp_output;
    if (!exp_oracle.empty()) cfg_json["oracle"] = exp_oracle;
    if (exp_tol_act > 0) cfg_json["tolerances"]["tol_act"] = exp_tol_act;
    if (exp_budget >= 1) cfg_json["budget"] = exp_budget;
    ExperimentConfig cfg = config_from_json(cfg_json);
    json summary = run_experiment(cfg);
    std::cerr << summary.dump(2) << '\n';
    if (summary.contains("all_pass") && !summary["all_pass"].get<bool>()) return 2;
    if (summary.contains("all_verified") && !summary["all_verified"].get<bool>()) return 2;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const WitnessVerificationFailed& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 3;
    } catch (const IterationLimit& e) {
        std::cerr << "iteration limit: " << e.what() << '\n';
        return 3;
    } catch (const PrecisionLoss& e) {
        std::cerr << "precision loss: " << e.what() << '\n';
        return 3;
    } catch (const DegreeSearchExhausted& e) {
        std::cerr << "degree search exhausted: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

#include "orbitlab/lab.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

namespace orbitlab {

namespace {

const char* kProvenance = "orbitlab/0.1";

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

} // namespace

CountOracle bundled_oracle(const std::string& name) {
    Rat zero(0), one(1);
    if (name == "parabola")
        return {name, [](const Rat& x, const Rat& y) { return y == x * x; }, zero, one, zero,
                one};
    if (name == "exp2")
        // 2^{p/q} is irrational for 0 < p/q < 1, so the graph meets Q^2 only
        // at the integer exponents.
        return {name,
                [](const Rat& x, const Rat& y) {
                    return (x == 0 && y == 1) || (x == 1 && y == 2);
                },
                zero, one, zero, one};
    if (name == "box") return {name, [](const Rat&, const Rat&) { return true; }, zero, one, zero, one};
    throw Error("bundled_oracle: unknown oracle '" + name + "'");
}

std::vector<std::string> bundled_oracle_names() { return {"parabola", "exp2", "box"}; }

namespace {

// All reduced fractions of height <= T inside [lo, hi].
std::vector<Rat> farey_axis(const Rat& lo, const Rat& hi, long T, long long budget) {
    std::vector<Rat> xs;
    for (long q = 1; q <= T; ++q) {
        for (long p = -T; p <= T; ++p) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            Rat x(p, q);
            if (x < lo || x > hi) continue;
            xs.push_back(std::move(x));
            if (static_cast<long long>(xs.size()) > budget)
                throw BudgetExceeded("count_rational_points: axis exceeds candidate budget");
        }
    }
    return xs;
}

} // namespace

long long count_rational_points(const CountOracle& oracle, long T, long long budget) {
    assert(T >= 1);
    std::vector<Rat> xs = farey_axis(oracle.x_min, oracle.x_max, T, budget);
    std::vector<Rat> ys = farey_axis(oracle.y_min, oracle.y_max, T, budget);
    if (!ys.empty() &&
        static_cast<long long>(xs.size()) > budget / static_cast<long long>(ys.size()))
        throw BudgetExceeded("count_rational_points: candidate grid exceeds budget");
    long long count = 0;
    for (const Rat& x : xs)
        for (const Rat& y : ys)
            if (oracle.member(x, y)) ++count;
    return count;
}

namespace {

// Per-complexity multiset of witness heights.
using HeightCounts = std::map<long long, unsigned long long>;
using Aggregates = std::map<long, HeightCounts>;

struct FiberScan {
    long d0;
    long long g11, g12, g21, g22; // reduction certificate gamma
    long long h_m;                // height of the matrix part of the witness
    double residual;
};

long long ll_of(const Int& v, const char* what) {
    if (!v.fits_slong_p()) throw Error(std::string("height scan: ") + what + " exceeds 64 bits");
    return v.get_si();
}

// Height of (r mod N q)/q, reduced; the value the witness shift carries.
long long shift_height(long long r, long long q, long long N) {
    long long m = N * q;
    r %= m;
    if (r < 0) r += m;
    long long g = std::gcd(r, q);
    return std::max(r / g, q / g);
}

void scan_fiber(const FiberScan& f, long n_max, long N,
                const std::vector<std::vector<std::pair<int, int>>>& pairs_by_q,
                Aggregates& agg) {
    for (long q = 1; q <= n_max; ++q) {
        long n = std::max(f.d0, q);
        HeightCounts& counts = agg[n];
        for (const auto& [p1, p2] : pairs_by_q[static_cast<std::size_t>(q)]) {
            long long h1 = shift_height(f.g11 * p1 + f.g12 * p2, q, N);
            long long h2 = shift_height(f.g21 * p1 + f.g22 * p2, q, N);
            ++counts[std::max({f.h_m, h1, h2})];
        }
    }
}

void merge_into(Aggregates& into, const Aggregates& from) {
    for (const auto& [n, counts] : from)
        for (const auto& [h, c] : counts) into[n][h] += c;
}

double median_of(const HeightCounts& counts) {
    unsigned long long total = 0;
    for (const auto& [h, c] : counts) total += c;
    unsigned long long lo_idx = (total - 1) / 2, hi_idx = total / 2;
    double lo = 0, hi = 0;
    unsigned long long seen = 0;
    for (const auto& [h, c] : counts) {
        if (seen <= lo_idx && lo_idx < seen + c) lo = static_cast<double>(h);
        if (seen <= hi_idx && hi_idx < seen + c) {
            hi = static_cast<double>(h);
            break;
        }
        seen += c;
    }
    return (lo + hi) / 2;
}

PowerFit fit_power_law(const std::vector<HeightScalingRow>& rows) {
    std::vector<double> xs, ys;
    for (const HeightScalingRow& r : rows) {
        if (r.count == 0) continue;
        xs.push_back(std::log(static_cast<double>(r.n)));
        ys.push_back(std::log(mpz_get_d(r.max_height.get_mpz_t())));
    }
    PowerFit fit;
    if (xs.size() < 2) return fit;
    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0) return fit;
    fit.exponent = sxy / sxx;
    fit.log_c = my - fit.exponent * mx;
    fit.defined = true;
    return fit;
}

bool is_zero_base(const MixedPoint& base) {
    if (!base.rational()) return false;
    for (const Rat& r : *base.v_exact)
        if (r != 0) return false;
    return true;
}

// Median-capable aggregation over exact heights for the generic path.
using ExactAggregates = std::map<long, std::map<Int, unsigned long long>>;

HeightScalingReport report_from(const Aggregates& agg, const std::vector<double>& residual_by_n,
                                double tol_act) {
    HeightScalingReport rep;
    for (const auto& [n, counts] : agg) {
        if (counts.empty()) continue;
        HeightScalingRow row;
        row.n = n;
        row.count = 0;
        long long max_h = 0;
        for (const auto& [h, c] : counts) {
            row.count += c;
            max_h = std::max(max_h, h);
        }
        row.max_height = Int(static_cast<long>(max_h));
        row.median_height = median_of(counts);
        row.residual = residual_by_n[static_cast<std::size_t>(n)];
        row.pass = row.residual <= tol_act;
        rep.points += row.count;
        rep.max_residual = std::max(rep.max_residual, row.residual);
        rep.rows.push_back(std::move(row));
    }
    rep.fit = fit_power_law(rep.rows);
    rep.all_verified = true;
    for (const HeightScalingRow& r : rep.rows) rep.all_verified = rep.all_verified && r.pass;
    return rep;
}

HeightScalingReport scaling_zero_base(const MixedPoint& base, long n_max,
                                      const LevelStructure& level, const Tolerances& tol,
                                      int threads) {
    std::vector<OrbitFiber> fibers = orbit_fibers_g1(base.Z, n_max, tol);
    std::vector<FiberScan> scans;
    scans.reserve(fibers.size());
    for (const OrbitFiber& f : fibers) {
        if (f.z_residual > tol.tol_act)
            throw WitnessVerificationFailed("run_height_scaling: fiber residual " +
                                            std::to_string(f.z_residual));
        FiberScan s;
        s.d0 = f.min_degree;
        s.g11 = ll_of(Int(f.gamma.at(0, 0).get_num()), "gamma");
        s.g12 = ll_of(Int(f.gamma.at(0, 1).get_num()), "gamma");
        s.g21 = ll_of(Int(f.gamma.at(1, 0).get_num()), "gamma");
        s.g22 = ll_of(Int(f.gamma.at(1, 1).get_num()), "gamma");
        s.h_m = ll_of(f.witness_M_height, "witness height");
        s.residual = f.z_residual;
        scans.push_back(s);
    }

    std::vector<std::vector<std::pair<int, int>>> pairs_by_q(
        static_cast<std::size_t>(n_max) + 1);
    for (long q = 1; q <= n_max; ++q)
        for (int p1 = 0; p1 < q; ++p1)
            for (int p2 = 0; p2 < q; ++p2)
                if (std::gcd(std::gcd(p1, p2), static_cast<int>(q)) == 1)
                    pairs_by_q[static_cast<std::size_t>(q)].emplace_back(p1, p2);

    Aggregates agg;
    int nthreads = std::max(1, threads);
    if (nthreads == 1 || scans.size() < 2) {
        for (const FiberScan& s : scans) scan_fiber(s, n_max, level.N, pairs_by_q, agg);
    } else {
        std::vector<Aggregates> partial(static_cast<std::size_t>(nthreads));
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = static_cast<std::size_t>(t); i < scans.size();
                     i += static_cast<std::size_t>(nthreads))
                    scan_fiber(scans[i], n_max, level.N, pairs_by_q,
                               partial[static_cast<std::size_t>(t)]);
            });
        for (std::thread& th : pool) th.join();
        // Exact counts commute, so the merge order cannot matter; results are
        // identical for every thread count.
        for (const Aggregates& p : partial) merge_into(agg, p);
    }

    std::vector<double> residual_by_n(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (const FiberScan& s : scans)
        residual_by_n[static_cast<std::size_t>(s.d0)] =
            std::max(residual_by_n[static_cast<std::size_t>(s.d0)], s.residual);
    for (long n = 2; n <= n_max; ++n)
        residual_by_n[static_cast<std::size_t>(n)] = std::max(
            residual_by_n[static_cast<std::size_t>(n)], residual_by_n[static_cast<std::size_t>(n - 1)]);

    return report_from(agg, residual_by_n, tol.tol_act);
}

HeightScalingReport scaling_generic(const MixedPoint& base, long n_max,
                                    const LevelStructure& level, const Tolerances& tol) {
    ExactAggregates agg;
    std::vector<double> residual_by_n(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (const OrbitPoint& pt : enumerate_orbit_g1(base, n_max, level, tol)) {
        Lemma53Witness w = lemma53_witness(pt, base, tol); // throws on miss
        long n = static_cast<long>(pt.complexity.get_si());
        ++agg[n][w.H];
        residual_by_n[static_cast<std::size_t>(n)] =
            std::max(residual_by_n[static_cast<std::size_t>(n)], w.residual);
    }
    for (long n = 2; n <= n_max; ++n)
        residual_by_n[static_cast<std::size_t>(n)] = std::max(
            residual_by_n[static_cast<std::size_t>(n)], residual_by_n[static_cast<std::size_t>(n - 1)]);

    // Re-key through the 64-bit aggregate shape used by the fast path.
    Aggregates narrowed;
    for (const auto& [n, counts] : agg)
        for (const auto& [h, c] : counts) narrowed[n][ll_of(h, "witness height")] += c;
    return report_from(narrowed, residual_by_n, tol.tol_act);
}

} // namespace

HeightScalingReport run_height_scaling(const MixedPoint& base, long n_max,
                                       const LevelStructure& level, const Tolerances& tol,
                                       int threads) {
    assert(n_max >= 1);
    if (!base.rational()) throw NotRational("run_height_scaling: base.v must be rational");
    assert(base.Z.g() == 1);
    if (is_zero_base(base)) return scaling_zero_base(base, n_max, level, tol, threads);
    return scaling_generic(base, n_max, level, tol);
}

CensusReport orbit_census(const MixedPoint& base, long n_max, const LevelStructure& level,
                          const Tolerances& tol, int threads) {
    HeightScalingReport scaling = run_height_scaling(base, n_max, level, tol, threads);
    CensusReport rep;
    unsigned long long acc = 0;
    std::size_t next = 0;
    for (long n = 1; n <= n_max; ++n) {
        while (next < scaling.rows.size() && scaling.rows[next].n <= n)
            acc += scaling.rows[next++].count;
        rep.rows.push_back({n, acc});
    }
    rep.total = acc;
    return rep;
}

std::vector<CurveSample> bundled_curve_suite() {
    auto mk = [](long A, long B, Rat x, Rat y) {
        return CurveSample{CurveQ::two_torsion_form(make_rat(A), make_rat(B)),
                           PointQ::affine(std::move(x), std::move(y))};
    };
    return {mk(0, -2, make_rat(-1), make_rat(1)), mk(0, 3, make_rat(1), make_rat(2)),
            mk(-2, 2, make_rat(1), make_rat(1)), mk(0, -5, make_rat(-1), make_rat(2)),
            mk(0, 8, make_rat(1), make_rat(3))};
}

NtScalingReport run_nt_scaling(const std::vector<CurveSample>& suite, double tol,
                               const HeightOptions& opt) {
    NtScalingReport rep;
    for (const CurveSample& s : suite) {
        TwoIsogeny phi = two_isogeny(s.curve);
        double hp = canonical_height(s.curve, s.point, opt);
        double hphip = canonical_height(phi.codomain, phi.apply(s.point), opt);
        double residual = std::abs(hphip - 2 * hp);
        NtScalingRow row{s.curve, s.point, hp, hphip, hp > 0 ? hphip / hp : 0.0, residual,
                         residual < tol};
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

void write_csv(const HeightScalingReport& r, std::ostream& os) {
    os << "n,count,max_H,median_H,residual,pass\n";
    for (const HeightScalingRow& row : r.rows)
        os << row.n << ',' << row.count << ',' << row.max_height.get_str() << ','
           << row.median_height << ',' << row.residual << ',' << (row.pass ? 1 : 0) << '\n';
}

void write_csv(const CensusReport& r, std::ostream& os) {
    os << "n,cumulative_count\n";
    for (const CensusRow& row : r.rows) os << row.n << ',' << row.cumulative << '\n';
}

void write_csv(const NtScalingReport& r, std::ostream& os) {
    os << "A,B,x,y,h_P,h_phiP,ratio,residual,pass\n";
    for (const NtScalingRow& row : r.rows)
        os << rat_str(row.curve.a2) << ',' << rat_str(row.curve.a4) << ','
           << rat_str(row.point.x()) << ',' << rat_str(row.point.y()) << ',' << row.h_p << ','
           << row.h_phi_p << ',' << row.ratio << ',' << row.residual << ','
           << (row.pass ? 1 : 0) << '\n';
}

json to_json(const HeightScalingReport& r) {
    json rows = json::array();
    for (const HeightScalingRow& row : r.rows)
        rows.push_back(json{{"n", row.n},
                            {"count", row.count},
                            {"max_H", row.max_height.get_str()},
                            {"median_H", row.median_height},
                            {"residual", row.residual},
                            {"pass", row.pass}});
    json fit;
    if (r.fit.defined)
        fit = json{{"log_c", r.fit.log_c}, {"kappa_emp", r.fit.exponent}};
    else
        fit = json{{"log_c", nullptr}, {"kappa_emp", nullptr}};
    return json{{"rows", std::move(rows)},
                {"fit", std::move(fit)},
                {"points", r.points},
                {"max_residual", r.max_residual},
                {"all_verified", r.all_verified}};
}

json to_json(const CensusReport& r) {
    json rows = json::array();
    for (const CensusRow& row : r.rows)
        rows.push_back(json{{"n", row.n}, {"cumulative_count", row.cumulative}});
    return json{{"rows", std::move(rows)}, {"total", r.total}};
}

json to_json(const NtScalingReport& r) {
    json rows = json::array();
    for (const NtScalingRow& row : r.rows)
        rows.push_back(json{{"curve", to_json(row.curve)},
                            {"point", to_json(row.point)},
                            {"h_P", row.h_p},
                            {"h_phiP", row.h_phi_p},
                            {"ratio", row.ratio},
                            {"residual", row.residual},
                            {"pass", row.pass}});
    return json{{"rows", std::move(rows)}, {"all_pass", r.all_pass}};
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.experiment = j.at("experiment").get<std::string>();
    if (j.contains("base_point")) cfg.base_point = mixed_from_json(j.at("base_point"));
    cfg.n_max = j.value("n_max", cfg.n_max);
    if (cfg.n_max < 1) throw Error("config: n_max must be >= 1");
    cfg.level = LevelStructure(j.value("N", 4L));
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        cfg.tol.tol_sym = t.value("tol_sym", cfg.tol.tol_sym);
        cfg.tol.tol_act = t.value("tol_act", cfg.tol.tol_act);
        cfg.tol.tol_pd = t.value("tol_pd", cfg.tol.tol_pd);
        cfg.tol.max_iter = t.value("max_iter", cfg.tol.max_iter);
        cfg.tol.cond_bound = t.value("cond_bound", cfg.tol.cond_bound);
    }
    if (j.contains("height_options")) {
        const json& h = j.at("height_options");
        cfg.height_opt.tol = h.value("tol", cfg.height_opt.tol);
        cfg.height_opt.max_doublings = h.value("max_doublings", cfg.height_opt.max_doublings);
        cfg.height_opt.bit_budget = h.value("bit_budget", cfg.height_opt.bit_budget);
    }
    cfg.nt_tol = j.value("nt_tol", cfg.nt_tol);
    cfg.oracle = j.value("oracle", cfg.oracle);
    cfg.T = j.value("T", cfg.T);
    cfg.budget = j.value("budget", cfg.budget);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.output_path = j.value("output_path", cfg.output_path);
    return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
    json j{{"experiment", cfg.experiment},
           {"n_max", cfg.n_max},
           {"N", cfg.level.N},
           {"seed", cfg.seed},
           {"tolerances",
            {{"tol_sym", cfg.tol.tol_sym},
             {"tol_act", cfg.tol.tol_act},
             {"tol_pd", cfg.tol.tol_pd},
             {"max_iter", cfg.tol.max_iter},
             {"cond_bound", cfg.tol.cond_bound}}},
           {"height_options",
            {{"tol", cfg.height_opt.tol},
             {"max_doublings", cfg.height_opt.max_doublings},
             {"bit_budget", cfg.height_opt.bit_budget}}},
           {"nt_tol", cfg.nt_tol},
           {"oracle", cfg.oracle},
           {"T", cfg.T},
           {"budget", cfg.budget},
           {"threads", cfg.threads},
           {"output_path", cfg.output_path}};
    if (cfg.base_point) j["base_point"] = to_json(*cfg.base_point);
    return j;
}

json run_experiment(const ExperimentConfig& cfg) {
    std::ofstream file;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path);
        if (!file) throw Error("run_experiment: cannot open " + cfg.output_path);
    }
    std::ostream& os = cfg.output_path.empty() ? std::cout : file;

    MixedPoint base = cfg.base_point
                          ? *cfg.base_point
                          : MixedPoint::exact({Rat(0), Rat(0)}, SiegelPoint::tau(0.0, 2.0));

    json summary;
    if (cfg.experiment == "height_scaling") {
        HeightScalingReport rep =
            run_height_scaling(base, cfg.n_max, cfg.level, cfg.tol, cfg.threads);
        write_csv(rep, os);
        summary = to_json(rep);
    } else if (cfg.experiment == "orbit_census") {
        CensusReport rep = orbit_census(base, cfg.n_max, cfg.level, cfg.tol, cfg.threads);
        write_csv(rep, os);
        summary = to_json(rep);
    } else if (cfg.experiment == "count_points") {
        long long count = count_rational_points(bundled_oracle(cfg.oracle), cfg.T, cfg.budget);
        os << "oracle,T,count\n" << cfg.oracle << ',' << cfg.T << ',' << count << '\n';
        summary = json{{"oracle", cfg.oracle}, {"T", cfg.T}, {"count", count}};
    } else if (cfg.experiment == "nt_scaling") {
        NtScalingReport rep = run_nt_scaling(bundled_curve_suite(), cfg.nt_tol, cfg.height_opt);
        write_csv(rep, os);
        summary = to_json(rep);
    } else {
        throw Error("run_experiment: unknown experiment '" + cfg.experiment + "'");
    }

    summary["experiment"] = cfg.experiment;
    summary["config_hash"] = hex64(fnv1a64(config_to_json(cfg).dump()));
    summary["provenance"] = kProvenance;
    return summary;
}

} // namespace orbitlab

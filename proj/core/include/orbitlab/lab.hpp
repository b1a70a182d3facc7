#pragma once

#include "orbitlab/elliptic.hpp"
#include "orbitlab/hecke.hpp"
#include "orbitlab/json_io.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace orbitlab {

// Exactly decidable membership predicate on a rational box. Desk-scale
// stand-in for a definable set fed to a point-counting step.
struct CountOracle {
    std::string name;
    std::function<bool(const Rat& x, const Rat& y)> member;
    Rat x_min, x_max, y_min, y_max;
};

// "parabola" (y = x^2 on [0,1]^2), "exp2" (y = 2^x on [0,1]^2), "box".
CountOracle bundled_oracle(const std::string& name);
std::vector<std::string> bundled_oracle_names();

// Exact count of (x, y) in the box with H(x) <= T, H(y) <= T and
// member(x, y), by Farey enumeration of each axis. Throws BudgetExceeded
// when the candidate-pair grid exceeds the budget.
long long count_rational_points(const CountOracle& oracle, long T,
                                long long budget = 100000000);

struct HeightScalingRow {
    long n;                    // complexity
    unsigned long long count;  // orbit points of complexity exactly n
    Int max_height;            // largest witness height among them
    double median_height;
    double residual;           // worst verification residual feeding this row
    bool pass;
};

struct PowerFit {
    double log_c = 0;
    double exponent = 0;
    bool defined = false; // needs >= 2 rows with distinct n
};

struct HeightScalingReport {
    std::vector<HeightScalingRow> rows; // ascending n, empty complexities skipped
    PowerFit fit;                       // least squares on (log n, log max_height)
    unsigned long long points = 0;
    double max_residual = 0;
    bool all_verified = false;
};

// Enumerates the orbit of a g=1 base point up to complexity n_max, verifies
// every height witness, and aggregates witness heights by complexity.
// Deterministic for any thread count. Throws WitnessVerificationFailed if
// any witness misses the tolerance.
HeightScalingReport run_height_scaling(const MixedPoint& base, long n_max,
                                       const LevelStructure& level,
                                       const Tolerances& tol = {}, int threads = 1);

struct CensusRow {
    long n;
    unsigned long long cumulative;
};

struct CensusReport {
    std::vector<CensusRow> rows; // n = 1 .. n_max
    unsigned long long total = 0;
};

CensusReport orbit_census(const MixedPoint& base, long n_max, const LevelStructure& level,
                          const Tolerances& tol = {}, int threads = 1);

struct CurveSample {
    CurveQ curve;
    PointQ point; // non-torsion, verified by tests
};

// Five curves y^2 = x^3 + A x^2 + B x with a rational non-torsion point.
std::vector<CurveSample> bundled_curve_suite();

struct NtScalingRow {
    CurveQ curve;
    PointQ point;
    double h_p;     // canonical height of P
    double h_phi_p; // canonical height of phi(P) on the 2-isogenous curve
    double ratio;   // h_phi_p / h_p
    double residual;
    bool pass;
};

struct NtScalingReport {
    std::vector<NtScalingRow> rows;
    bool all_pass = true;
};

// Checks the degree-2 height scaling h^(phi P) = 2 h^(P) on each sample,
// both sides through the duplication-limit oracle.
NtScalingReport run_nt_scaling(const std::vector<CurveSample>& suite, double tol = 1e-5,
                               const HeightOptions& opt = {1e-6, 24, 400000000});

void write_csv(const HeightScalingReport& r, std::ostream& os);
void write_csv(const CensusReport& r, std::ostream& os);
void write_csv(const NtScalingReport& r, std::ostream& os);

json to_json(const HeightScalingReport& r);
json to_json(const CensusReport& r);
json to_json(const NtScalingReport& r);

struct ExperimentConfig {
    std::string experiment; // height_scaling | count_points | orbit_census | nt_scaling
    std::optional<MixedPoint> base_point;
    long n_max = 1;
    LevelStructure level{4};
    long seed = 0;
    Tolerances tol;
    HeightOptions height_opt{1e-6, 24, 400000000};
    double nt_tol = 1e-5;
    std::string oracle = "parabola";
    long T = 10;
    long long budget = 100000000;
    int threads = 1;
    std::string output_path; // empty writes rows to stdout
};

ExperimentConfig config_from_json(const json& j);
json config_to_json(const ExperimentConfig& cfg);

// Runs the configured experiment, writes the CSV rows to output_path (or
// stdout), and returns a JSON summary stamped with the config hash and a
// provenance string.
json run_experiment(const ExperimentConfig& cfg);

} // namespace orbitlab

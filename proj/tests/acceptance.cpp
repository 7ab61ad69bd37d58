// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lpvdd/cli.hpp"
#include "lpvdd/errors.hpp"
#include "lpvdd/linalg.hpp"
#include "lpvdd/simulation.hpp"
#include "support.hpp"

using namespace lpvdd;
using lpvdd::testing::max_abs;
using lpvdd::testing::random_minimal_ss;
using lpvdd::testing::random_poly;
using lpvdd::testing::random_traj;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s -- %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void note(const std::string& text) {
    std::printf("       %s\n", text.c_str());
    std::fflush(stdout);
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

int pick(Rng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

cli::ExperimentConfig worked_example(std::uint64_t seed, int T) {
    cli::ExperimentConfig c;
    c.seed = seed;
    c.T = T;
    c.T_ini = 3;
    c.T_r = 7;
    return c;
}

void criterion1() {
    const LpvIoModel m = example_verhoek();
    int pass = 0, unexplained = 0, single_pass = 0;
    double worst_err = 0.0, worst_time = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto cfg = worked_example(seed, 40);
        const DataRecord data = cli::simulate_data(m, cfg).data;
        const auto qc = cli::simulate_query(m, cfg);
        const auto t0 = std::chrono::steady_clock::now();
        const PredictionResult r = predict(data, qc.query);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double err = max_abs(r.y_r.samples() - qc.y_truth.samples());
        worst_err = std::max(worst_err, err);
        worst_time = std::max(worst_time, secs);
        const bool ok = r.verdict == Verdict::Ok && err <= 1e-8 && secs < 1.0;
        pass += ok;
        // A miss must be flagged by the result itself.
        if (!ok && r.verdict == Verdict::Ok && r.pe_rank == r.pe_required) ++unexplained;

        PredictOptions one;
        one.window = 10;
        const PredictionResult s = predict(data, qc.query, one);
        single_pass += s.verdict == Verdict::Ok && max_abs(s.y_r.samples() - qc.y_truth.samples()) <= 1e-8;
    }
    report(1, "exact prediction of the worked example (T=40, T_ini=3, T_r=7, 50 seeds)",
           pass >= 49 && unexplained == 0,
           fmt("%d/50 seeds within 1e-8, max error %.3e, max runtime %.4f s, unflagged misses %d", pass,
               worst_err, worst_time, unexplained));
    note(fmt("single window L=10 (31 data columns): %d/50 seeds exact; chained windows used by default",
             single_pass));
}

void criterion2() {
    Rng rng(2002);
    double worst_fwd = 0.0, worst_back = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n_x = pick(rng, 1, 3), n_u = pick(rng, 1, 2), n_y = pick(rng, 1, 2), n_p = pick(rng, 1, 2);
        const LpvSsModel m = random_minimal_ss(rng, n_x, n_u, n_y, n_p);
        const int T = pick(rng, 1, 10);
        const auto u = random_traj(rng, n_u, 1, T);
        const auto p = random_traj(rng, n_p, 1, T);
        const Eigen::VectorXd x = random_traj(rng, n_x, 1, 1).samples().col(0);
        const Eigen::VectorXd y_sim = vec(simulate_ss(m, x, u, p).y);
        worst_fwd = std::max(worst_fwd, max_abs(response_map(m, x, u, p) - y_sim));

        // Back: an initial state solving the affine map reproduces y in simulation.
        const Eigen::MatrixXd O = mat_eval(obsv_matrix(m, T), p, 1);
        const Eigen::VectorXd rhs = y_sim - mat_eval(toeplitz(m, T), p, 1) * vec(u);
        const Eigen::VectorXd xs = linalg::solve_min_norm(O, rhs).x;
        worst_back = std::max(worst_back, max_abs(vec(simulate_ss(m, xs, u, p).y) - y_sim));
    }
    const bool ok = worst_fwd <= 1e-10 && worst_back <= 1e-10;
    report(2, "response map against recursive simulation (100 random minimal models)", ok,
           fmt("map->sim max diff %.3e, sim->map->sim max diff %.3e (tol 1e-10)", worst_fwd, worst_back));
}

void criterion3() {
    Rng rng(3003);
    double worst_x = 0.0, worst_prop = 0.0;
    int deficient_reported = 0, deficient_cases = 0;
    for (int i = 0; i < 100; ++i) {
        const int n_x = pick(rng, 1, 3), n_u = pick(rng, 1, 2), n_y = pick(rng, 1, 2), n_p = pick(rng, 1, 2);
        const LpvSsModel m = random_minimal_ss(rng, n_x, n_u, n_y, n_p);
        const int t_ini = n_x + 1;
        const auto u = random_traj(rng, n_u, 1, t_ini);
        const auto p = random_traj(rng, n_p, 1, t_ini);
        const Eigen::VectorXd x1 = random_traj(rng, n_x, 1, 1).samples().col(0);
        const auto sim = simulate_ss(m, x1, u, p);
        const auto est = estimate_initial_state(m, u, p, sim.y);
        worst_x = std::max(worst_x, max_abs(est.x - x1));
        worst_prop = std::max(worst_prop, max_abs(propagate_state(m, x1, u, p) - sim.x->at(t_ini + 1)));

        if (n_x >= 2) {
            ++deficient_cases;
            const int short_len = n_x - 1;
            try {
                (void)estimate_initial_state(m, u.window(1, short_len), p.window(1, short_len),
                                             sim.y.window(1, short_len));
            } catch (const Error& e) {
                deficient_reported += e.code() == Errc::RankDeficientObservability;
            }
        }
    }
    const bool ok = worst_x <= 1e-8 && worst_prop <= 1e-10 && deficient_reported == deficient_cases;
    report(3, "initial state recovery and propagation (100 random minimal models, T_ini=n_x+1)", ok,
           fmt("state error %.3e (tol 1e-8), propagation error %.3e (tol 1e-10), short windows flagged %d/%d",
               worst_x, worst_prop, deficient_reported, deficient_cases));
}

void criterion4() {
    Rng rng(4004);
    int good = 0, total = 0, short_ok = 0, short_total = 0;
    int map_good = 0, map_short = 0;
    int max_literal = 0;
    for (int i = 0; i < 50; ++i) {
        const int n_x = pick(rng, 2, 3), n_p = pick(rng, 1, 2);
        const LpvSsModel m = random_minimal_ss(rng, n_x, 1, 1, n_p);
        // Rank of [O | T] as stated, and of the full map (x, u) -> (u, y) = [0 I; O T].
        const auto ranks = [&](int L) {
            const auto p = random_traj(rng, n_p, 1, L);
            const Eigen::MatrixXd O = mat_eval(obsv_matrix(m, L), p, 1);
            const Eigen::MatrixXd Tm = mat_eval(toeplitz(m, L), p, 1);
            Eigen::MatrixXd M(O.rows(), O.cols() + Tm.cols());
            M << O, Tm;
            Eigen::MatrixXd W = Eigen::MatrixXd::Zero(L + O.rows(), M.cols());
            W.topRightCorner(L, L).setIdentity();
            W.bottomRows(O.rows()) = M;
            return std::pair{linalg::numeric_rank(M, 1e-9), linalg::numeric_rank(W, 1e-9)};
        };
        for (int L : {n_x, n_x + 2}) {
            ++total;
            const auto [literal, map] = ranks(L);
            max_literal = std::max(max_literal, literal - L);
            good += literal == L + n_x;
            map_good += map == L + n_x;
        }
        for (int L = 1; L < n_x; ++L) {
            ++short_total;
            const auto [literal, map] = ranks(L);
            short_ok += literal < L + n_x;
            map_short += map < L + n_x;
        }
    }
    report(4, "rank[(O_L)(1) | (T_L)(1)] == n_u L + n_x (50 random minimal SISO models)",
           good == total && short_ok == short_total,
           fmt("L in {n_x, n_x+2}: %d/%d equal; L < n_x: %d/%d below", good, total, short_ok, short_total));
    note(fmt("[O | T] has n_y L = L rows; observed rank minus L is at most %d, so L + n_x is out of reach",
             max_literal));
    note(fmt("rank of the trajectory map [0 I; O T]: L + n_x on %d/%d, below for L < n_x on %d/%d", map_good,
             total, map_short, short_total));
}

void criterion5() {
    const LpvIoModel m = example_verhoek();
    int full = 0;
    int min_rank = 1 << 30;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const DataRecord data = cli::simulate_data(m, worked_example(seed, 40)).data;
        const PeReport pe = check_pe(data.u, data.p, 7);
        full += pe.extended_input_rank == 21 && pe.required == 21 && pe.verdict;
        min_rank = std::min(min_rank, pe.extended_input_rank);
    }
    const DataRecord base = cli::simulate_data(m, worked_example(1, 40)).data;
    const PeReport dead = check_pe(Trajectory::zeros(1, 1, 40), base.p, 7);
    report(5, "excitation rank of H_7(col(u, p(x)u)) on the worked-example data",
           full == 50 && !dead.verdict,
           fmt("rank 21 on %d/50 seeds (min %d); u = 0 gives rank %d, verdict %s", full, min_rank,
               dead.extended_input_rank, dead.verdict ? "pass" : "fail"));
}

void criterion6() {
    const LpvIoModel m = example_verhoek();
    const int L = 7;
    const auto annihilation = [&](const LeftNullspace& ns) {
        Rng rng(6006);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const auto u = random_traj(rng, 1, -1, L + 2);
            const auto p = random_traj(rng, 2, -1, L + 2);
            const auto y = simulate_io(m, u, p, random_traj(rng, 1, -1, 2));
            const Trajectory w = stack(u.window(1, L), y.window(1, L));
            worst = std::max(worst, annihilation_residual(ns.basis, w, p.window(1, L), L));
        }
        return worst;
    };
    const int expected = 6 * L - (21 + 2);

    const DataRecord data = cli::simulate_data(m, worked_example(1, 100)).data;
    const LeftNullspace ns = left_nullspace(data, L);
    const double worst = annihilation(ns);
    const bool annihilates = worst <= 1e-8;
    const bool dim_ok = ns.dimension == expected;
    report(6, "left null space of the extended Hankel (L=7, T=100) annihilates fresh trajectories",
           annihilates && dim_ok,
           fmt("max residual on 10 fresh runs %.3e (tol 1e-8) %s; dimension %d vs stated %d = 42 - (21 + 2) %s",
               worst, annihilates ? "ok" : "too large", ns.dimension, expected, dim_ok ? "ok" : "MISMATCH"));
    note(fmt("extended Hankel rank %d = 21 + 14 + 2 (input part, p(x)y part, state); %d true annihilators",
             ns.hankel_rank, ns.dimension));

    const DataRecord short_data = cli::simulate_data(m, worked_example(1, 40)).data;
    const LeftNullspace ns40 = left_nullspace(short_data, L);
    note(fmt("with T=40 (34 columns): dimension %d, fresh-run residual %.3e", ns40.dimension,
             annihilation(ns40)));
}

void criterion7() {
    Rng rng(7007);
    bool commute = true;
    double worst_mul = 0.0, worst_add = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int n_p = pick(rng, 1, 3);
        const PolyCoeff a = random_poly(rng, n_p, -3, 3, 5, 3);
        const PolyCoeff b = random_poly(rng, n_p, -3, 3, 5, 3);
        const auto p = random_traj(rng, n_p, -15, 46, -2.0, 2.0);
        const int k = pick(rng, -6, 15);
        commute = commute && eval_diamond(shift_fwd(a), p, k) == eval_diamond(a, p, k + 1) &&
                  eval_diamond(shift_bwd(a), p, k) == eval_diamond(a, p, k - 1) &&
                  eval_diamond(shift(a, 3), p, k) == eval_diamond(a, p, k + 3);
        const double ea = eval_diamond(a, p, k), eb = eval_diamond(b, p, k);
        const auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); };
        worst_mul = std::max(worst_mul, rel(eval_diamond(a * b, p, k), ea * eb));
        worst_add = std::max(worst_add, rel(eval_diamond(a + b, p, k), ea + eb));
    }
    report(7, "shift calculus on 1000 random coefficient functions", commute && worst_mul <= 1e-12 && worst_add <= 1e-12,
           fmt("shift/eval commutation %s; product identity rel err %.3e, sum identity rel err %.3e (tol 1e-12)",
               commute ? "bitwise exact" : "BROKEN", worst_mul, worst_add));
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void criterion8() {
    const fs::path base = "acceptance_scratch";
    fs::remove_all(base);
    bool same = true;
    int compared = 0;
    int codes = 0;
    for (const char* run : {"run1", "run2"}) {
        cli::ExperimentConfig c = worked_example(42, 40);
        c.out_dir = base / run / "data";
        codes += cli::cmd_simulate(c).exit_code;
        cli::ExperimentConfig q = worked_example(43, 10);
        q.out_dir = base / run / "query";
        codes += cli::cmd_simulate(q).exit_code;
        cli::ExperimentConfig pr = worked_example(42, 40);
        pr.data_dir = base / run / "data";
        pr.query_dir = base / run / "query";
        pr.out_dir = base / run / "pred";
        codes += cli::cmd_predict(pr).exit_code;
    }
    for (const char* dir : {"data", "query", "pred"}) {
        for (const auto& entry : fs::directory_iterator(base / "run1" / dir)) {
            const fs::path other = base / "run2" / dir / entry.path().filename();
            same = same && fs::exists(other) && slurp(entry.path()) == slurp(other);
            ++compared;
        }
    }
    report(8, "byte-identical artifacts from two seeded runs of simulate and predict", same && codes == 0 && compared > 0,
           fmt("%d files compared, %s; exit codes %s", compared, same ? "identical" : "DIFFERENT",
               codes == 0 ? "all 0" : "non-zero"));
}

}  // namespace

int main() {
    const auto guard = [](int id, void (*fn)()) {
        try {
            fn();
        } catch (const std::exception& e) {
            report(id, "aborted", false, e.what());
        }
    };
    guard(1, criterion1);
    guard(2, criterion2);
    guard(3, criterion3);
    guard(4, criterion4);
    guard(5, criterion5);
    guard(6, criterion6);
    guard(7, criterion7);
    guard(8, criterion8);
    std::printf("%s: %d criterion(s) failed\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED", failures);
    return failures ? 1 : 0;
}

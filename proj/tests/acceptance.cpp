// Acceptance gate: one criterion per numbered check, one pass/fail line each.
// Usage: acceptance [criterion] [cli-binary-path]
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "logtm/bridge.hpp"
#include "logtm/cli.hpp"
#include "logtm/euler_lagrange.hpp"
#include "logtm/kernel.hpp"
#include "logtm/maximize.hpp"
#include "logtm/moser.hpp"
#include "logtm/random.hpp"
#include "logtm/rearrange.hpp"

using namespace logtm;
using clock_type = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

GridPtr unit_uniform(std::size_t m) {
    return std::make_shared<const RadialGrid>(make_uniform_grid(m, 1.0));
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// 1. kernel oracle equivalence, N in {2,3,4}, 5 step profiles, 2048 angular
Outcome criterion_1() {
    const auto t0 = clock_type::now();
    double worst_rel[3] = {0.0, 0.0, 0.0};
    bool pass = true;
    for (int nd : {2, 3, 4}) {
        const DimensionParams p = dim_params(nd);
        GridPtr grid = unit_uniform(256);
        Rng rng(0);
        for (int i = 0; i < 5; ++i) {
            const RadialProfile v = random_step_profile(grid, rng);
            const double b0 = b0_radial(v, p);
            const BilinearReport rep = b_split_direct(v, v, p, 2048);
            const double rel = std::abs(b0 - (rep.b_plus - rep.b_minus)) / std::max(1.0, std::abs(b0));
            worst_rel[nd - 2] = std::max(worst_rel[nd - 2], rel);
            if (rel > 5e-3) pass = false;
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= 60.0) pass = false;
    return {pass, fmt("worst gap rel N=2: %.2e, N=3: %.2e, N=4: %.2e; %.1fs",
                      worst_rel[0], worst_rel[1], worst_rel[2], secs)};
}

// 2. closed forms: b0 indicator, star norm, h_ball
Outcome criterion_2() {
    bool pass = true;
    std::ostringstream os;
    for (int nd : {2, 3}) {
        const DimensionParams p = dim_params(nd);
        const double b0 = b0_radial(constant_profile(unit_uniform(4096), 1.0), p);
        const double expect = p.omega * p.omega / (2.0 * nd * nd * nd);
        const double rel = std::abs(b0 - expect) / expect;
        if (rel > 1e-6) pass = false;
        os << fmt("b0 rel N=%d: %.2e; ", nd, rel);
    }
    {
        const DimensionParams p = dim_params(2);
        const double sn = star_norm(constant_profile(unit_uniform(4096), 1.0), p);
        const double err = std::abs(sn - M_PI / 2.0);
        if (err > 1e-8) pass = false;
        os << fmt("star err: %.2e; ", err);

        auto grid = std::make_shared<const RadialGrid>(
            make_geometric_grid_with_node(4096, 1.0, 1e-8, 0.5));
        const RadialProfile h = h_ball(constant_profile(grid, 1.0), p);
        const double herr = std::abs(h(0.5) - 0.1875);
        if (herr > 1e-8) pass = false;
        os << fmt("h(0.5) err: %.2e", herr);
    }
    return {pass, os.str()};
}

// 3. moser normalization
Outcome criterion_3() {
    bool pass = true;
    double worst = 0.0;
    for (int nd : {2, 3}) {
        const DimensionParams p = dim_params(nd);
        for (long n : {10L, 100L, 1000L, 10000L}) {
            const RadialProfile m = moser_profile(n, p, make_moser_grid(n));
            worst = std::max(worst, std::abs(grad_norm(m, p) - 1.0));
        }
    }
    if (worst > 1e-4) pass = false;
    return {pass, fmt("worst |grad norm - 1|: %.2e", worst)};
}

// 4. blow-up above / flatness below the threshold
Outcome criterion_4() {
    bool pass = true;
    std::ostringstream os;
    for (int nd : {2, 3}) {
        const DimensionParams p = dim_params(nd);
        const double bstar = -nd / (2.0 * (nd - 1.0));
        for (double db : {0.25, -0.25}) {
            const double beta = bstar + db;
            const GrowthSpec spec = make_ball_critical(beta, 1.0, p);
            bool mono = true, above = true;
            double prev = -1.0;
            for (double n : {1e2, 1e3, 1e4, 1e5}) {
                const MoserRow row = phi_on_moser(static_cast<long>(n), spec, p);
                if (row.phi <= prev) mono = false;
                if (row.phi < row.lower_bound) above = false;
                prev = row.phi;
            }
            // slope over larger n, past the small-n transient
            std::vector<double> x, y;
            for (double n : {1e3, 1e4, 1e5, 1e6}) {
                const MoserRow row = phi_on_moser(static_cast<long>(n), spec, p);
                x.push_back(std::log(std::log(n)));
                y.push_back(std::log(row.phi));
            }
            const double slope = fit_slope(x, y);
            const double target = threshold_exponent(nd, beta);
            bool ok;
            if (db > 0.0)
                ok = mono && above && std::abs(slope - target) <= 0.3;
            else
                ok = slope <= 0.05;
            if (!ok) pass = false;
            os << fmt("N=%d beta=%+.2f slope %+.3f (target %+.3f)%s; ", nd, beta, slope, target,
                      ok ? "" : " FAIL");
        }
    }
    return {pass, os.str()};
}

// 5. threshold identity, exact
Outcome criterion_5() {
    bool pass = true;
    for (int nd = 2; nd <= 10; ++nd)
        if (threshold_exponent(nd, -nd / (2.0 * (nd - 1.0))) != 0.0) pass = false;
    if (threshold_exponent(2, -1.0) != 0.0) pass = false;
    return {pass, "threshold_exponent(N, -N/(2(N-1))) == 0 for N = 2..10"};
}

// 6. rearrangement suite
Outcome criterion_6() {
    bool pass = true;
    double worst_gap = 0.0, worst_equi = 0.0;
    for (int nd : {2, 3}) {
        const DimensionParams p = dim_params(nd);
        GridPtr fine = unit_uniform(4096);
        GridPtr coarse = unit_uniform(256);
        for (unsigned long i = 0; i < 20; ++i) {
            Rng ra(i), rb(i); // identical draws on both grids
            const RadialProfile vf = random_bump_profile(fine, ra);
            const RadialProfile vc = random_bump_profile(coarse, rb);
            const RadialProfile vfs = schwarz_symmetrize(vf, p);
            const RieszReport rep = riesz_check(vc, p, 512);
            worst_gap = std::min({worst_gap, rep.bplus_gap, rep.bminus_gap, rep.polya_gap});
            if (rep.bplus_gap < -1e-4 || rep.bminus_gap < -1e-4 || rep.polya_gap < -1e-4)
                pass = false;
            for (double pe : {1.0, 2.0, 4.0}) {
                const double a = lp_norm(vf, pe, p);
                const double rel = std::abs(a - lp_norm(vfs, pe, p)) / a;
                worst_equi = std::max(worst_equi, rel);
                if (rel > 1e-6) pass = false;
            }
        }
    }
    return {pass, fmt("worst gap: %.2e (>= -1e-4), worst equimeasurability: %.2e", worst_gap,
                      worst_equi)};
}

// 7. ball maximizer run
Outcome criterion_7() {
    const auto t0 = clock_type::now();
    const DimensionParams p = dim_params(2);
    const GrowthSpec spec = make_ball_critical(-1.5, 1.0, p);
    MaximizeOptions opts;
    opts.grid_size = 512;
    const MaximizeResult r = maximize(spec, Domain::ball, p, opts);
    const double secs = seconds_since(t0);

    // brute-force oracle over the truncated-log family on the same grid
    auto grid = std::make_shared<const RadialGrid>(make_geometric_grid(512, 1.0));
    double brute = 0.0;
    for (int ia = 0; ia < 32; ++ia) {
        for (int ip = 0; ip < 32; ++ip) {
            const double a = 0.1 + 3.0 * ia / 31.0;
            const double rho = std::pow(10.0, -5.0 + 4.9 * ip / 31.0);
            RadialProfile w = sample_profile(grid, [&](double rr) {
                if (rr <= rho) return a;
                if (rr >= 1.0) return 0.0;
                return a * std::log(1.0 / rr) / std::log(1.0 / rho);
            });
            w = rescale_to_ball(w, NormKind::gradient, p);
            try {
                brute = std::max(brute, objective(w, spec, Domain::ball, p));
            } catch (const GrowthSaturationError&) {
            }
        }
    }

    double min_interior = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < r.profile.size(); ++j)
        min_interior = std::min(min_interior, r.profile[j]);
    const double phi0 = M_PI * M_PI / 4.0;
    const bool pass = r.converged && r.profile.nonincreasing(1e-9) && min_interior > 0.0 &&
                      r.constraint_residual <= 1e-6 && r.phi_value > phi0 &&
                      r.phi_value >= brute - 1e-6 && r.theta > 0.0 && r.el_residual <= 1e-3 &&
                      secs < 120.0;
    return {pass, fmt("phi %.4f (Phi(0) %.4f, brute %.4f), cres %.1e, el %.1e, theta %.2e, "
                      "min interior %.1e, converged %d, %.0fs",
                      r.phi_value, phi0, brute, r.constraint_residual, r.el_residual, r.theta,
                      min_interior, static_cast<int>(r.converged), secs)};
}

// 8. space maximizer run
Outcome criterion_8() {
    const DimensionParams p = dim_params(2);
    const GrowthSpec spec = make_space_critical(-1.5, 1.0, p);
    MaximizeOptions opts;
    opts.grid_size = 512;
    opts.radius = 32.0;
    const MaximizeResult r = maximize(spec, Domain::space, p, opts);
    const bool pass = r.converged && r.tail <= 1e-6 * r.phi_value &&
                      r.constraint_residual <= 1e-6 && r.theta > 0.0 && r.el_residual <= 1e-3;
    return {pass, fmt("phi %.4f, tail %.2e, cres %.1e, el %.1e, theta %.2e, converged %d",
                      r.phi_value, r.tail, r.constraint_residual, r.el_residual, r.theta,
                      static_cast<int>(r.converged))};
}

// 9. gradient check against central differences
Outcome criterion_9() {
    bool pass = true;
    double worst = 0.0;
    for (int nd : {2, 3}) {
        const DimensionParams p = dim_params(nd);
        for (Domain dom : {Domain::ball, Domain::space}) {
            const double radius = (dom == Domain::ball) ? 1.0 : 32.0;
            const NormKind kind = (dom == Domain::ball) ? NormKind::gradient : NormKind::full;
            const GrowthSpec spec = (dom == Domain::ball) ? make_ball_critical(-1.5, 1.0, p)
                                                          : make_space_critical(-1.5, 1.0, p);
            auto grid = std::make_shared<const RadialGrid>(make_geometric_grid(64, radius));
            Rng rng(nd * 10 + (dom == Domain::space));
            for (int i = 0; i < 3; ++i) {
                const RadialProfile u = random_feasible_profile(grid, rng, kind, p, 0.8);
                const RadialProfile g = objective_gradient(u, spec, dom, p);
                double gmax = 0.0;
                for (double x : g.values()) gmax = std::max(gmax, std::abs(x));
                const double h = 1e-6;
                for (std::size_t j = 0; j < u.size(); j += 5) {
                    std::vector<double> up(u.values()), dn(u.values());
                    up[j] += h;
                    dn[j] -= h;
                    const double fd = (objective(u.with_values(std::move(up)), spec, dom, p) -
                                       objective(u.with_values(std::move(dn)), spec, dom, p)) /
                                      (2.0 * h);
                    const double rel = std::abs(fd - g[j]) / gmax;
                    worst = std::max(worst, rel);
                    if (rel > 1e-5) pass = false;
                }
            }
        }
    }
    return {pass, fmt("worst relative gradient error: %.2e", worst)};
}

// 10. potential monotonicity
Outcome criterion_10() {
    bool pass = true;
    for (int nd : {2, 3}) {
        const DimensionParams p = dim_params(nd);
        GridPtr grid = unit_uniform(512);
        Rng rng(nd);
        for (int i = 0; i < 10; ++i) {
            const RadialProfile f = potential_f(random_bump_profile(grid, rng), p);
            for (std::size_t j = 1; j < f.size(); ++j)
                if (f[j] > f[j - 1] + 1e-9) pass = false;
        }
    }
    return {pass, "potential_f nonincreasing at all nodes, 10 profiles per N in {2,3}"};
}

// 11. lift feasibility
Outcome criterion_11() {
    bool pass = true;
    double worst_norm = 0.0, worst_pw = 0.0;
    for (int nd : {2, 3}) {
        const DimensionParams p = dim_params(nd);
        auto grid = std::make_shared<const RadialGrid>(make_geometric_grid(256, 32.0));
        Rng rng(nd * 100);
        for (int i = 0; i < 20; ++i) {
            const RadialProfile u = random_feasible_profile(grid, rng, NormKind::full, p, 0.9);
            const RadialProfile U = lift_to_ball(u, p);
            const double gn = grad_norm(U, p);
            worst_norm = std::max(worst_norm, gn);
            if (gn > 1.0 + 1e-6) pass = false;
            const double q = p.q();
            const double u1q = std::pow(u(1.0), q);
            const double cnq = std::pow(p.c_n, q);
            for (double rr : U.grid().nodes()) {
                const double defect = std::pow(u(rr), q) - (std::pow(U(rr), q) + u1q + cnq);
                worst_pw = std::max(worst_pw, defect);
                if (defect > 1e-9) pass = false;
            }
        }
    }
    return {pass, fmt("worst grad norm of lift: %.9f, worst pointwise defect: %.2e", worst_norm,
                      worst_pw)};
}

// 12. CLI determinism (needs the CLI binary path)
Outcome criterion_12(const std::string& cli) {
    if (cli.empty()) return {false, "cli binary path not provided"};
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    auto invoke = [&](const std::string& args, const std::string& out) {
        const std::string cmd = cli + " " + args + " --out " + out;
        return std::system(cmd.c_str());
    };
    const std::vector<std::string> cases = {
        "dims --n 2,3,4",
        "verify-kernel --n-dim 2 --seed 0 --profiles 2 --angular 256",
        "rearrange-check --n-dim 2 --seed 0 --profiles 1 --angular 256",
        "moser --n-dim 2 --beta -0.75 --c 1 --n 100,1000",
        "maximize --n-dim 2 --beta -1.5 --c 1 --grid 128 --domain ball",
        "el-check --n-dim 2 --beta -1.5 --c 1 --grid 128 --domain ball",
    };
    bool pass = true;
    std::ostringstream os;
    for (const std::string& c : cases) {
        const std::string a = "/tmp/logtm_acc_a.csv", b = "/tmp/logtm_acc_b.csv";
        const int ra = invoke(c, a), rb = invoke(c, b);
        const bool same = ra == 0 && rb == 0 && slurp(a) == slurp(b) && !slurp(a).empty();
        if (!same) {
            pass = false;
            os << "mismatch: " << c << "; ";
        }
        std::remove(a.c_str());
        std::remove(b.c_str());
    }
    {
        std::string first;
        for (int threads : {1, 2, 4}) {
            const std::string out = "/tmp/logtm_acc_sweep.csv";
            const int rc = invoke("sweep --n 1000,10000 --threads " + std::to_string(threads), out);
            const std::string text = slurp(out);
            std::remove(out.c_str());
            if (rc != 0 || text.empty() || (!first.empty() && text != first)) {
                pass = false;
                os << "sweep mismatch at --threads " << threads << "; ";
            }
            if (first.empty()) first = text;
        }
    }
    if (pass) os << "all subcommands byte-identical across runs and thread counts";
    return {pass, os.str()};
}

} // namespace

int main(int argc, char** argv) {
    const int which = (argc > 1) ? std::atoi(argv[1]) : 0;
    const std::string cli = (argc > 2) ? argv[2] : "";
    const std::map<int, std::function<Outcome()>> criteria = {
        {1, criterion_1},
        {2, criterion_2},
        {3, criterion_3},
        {4, criterion_4},
        {5, criterion_5},
        {6, criterion_6},
        {7, criterion_7},
        {8, criterion_8},
        {9, criterion_9},
        {10, criterion_10},
        {11, criterion_11},
        {12, [&] { return criterion_12(cli); }},
    };
    bool all = true;
    for (const auto& [num, fn] : criteria) {
        if (which != 0 && num != which) continue;
        const Outcome o = fn();
        std::printf("criterion %2d: %s - %s\n", num, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}

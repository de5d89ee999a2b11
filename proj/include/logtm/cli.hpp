#ifndef LOGTM_CLI_HPP
#define LOGTM_CLI_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "logtm/csv.hpp"
#include "logtm/dimension.hpp"
#include "logtm/euler_lagrange.hpp"
#include "logtm/kernel.hpp"
#include "logtm/maximize.hpp"
#include "logtm/moser.hpp"
#include "logtm/norms.hpp"
#include "logtm/random.hpp"
#include "logtm/rearrange.hpp"

namespace logtm {
namespace cli {

/// Parsed invocation: one subcommand plus the shared flag set. Defaults match
/// the documented flag defaults; profiles = 0 means the subcommand default.
struct RunConfig {
    std::string subcommand;
    int n_dim = 2;
    double beta = -1.5;
    double c = 1.0;
    std::size_t grid = 512;
    std::vector<long> n_list;
    double radius = 32.0;
    std::size_t angular = 2048;
    unsigned long seed = 0;
    std::string out;
    Domain domain = Domain::ball;
    std::size_t profiles = 0;
    std::size_t threads = 1;
};

namespace detail {

inline GridPtr unit_uniform_grid(std::size_t m) {
    return std::make_shared<const RadialGrid>(make_uniform_grid(m, 1.0));
}

inline std::string bool_cell(bool b) { return b ? "1" : "0"; }

} // namespace detail

inline int run_dims(const RunConfig& cfg) {
    CsvTable t("n,omega,alpha_n,c_n");
    std::vector<long> ns = cfg.n_list.empty() ? std::vector<long>{2} : cfg.n_list;
    for (long n : ns) {
        const DimensionParams p = dim_params(static_cast<int>(n));
        t.add_row({csv_number(n), csv_number(p.omega), csv_number(p.alpha_n), csv_number(p.c_n)});
    }
    write_csv(cfg.out, t);
    return 0;
}

inline int run_verify_kernel(const RunConfig& cfg) {
    const DimensionParams p = dim_params(cfg.n_dim);
    const std::size_t profiles = cfg.profiles ? cfg.profiles : 5;
    GridPtr grid = detail::unit_uniform_grid(256);
    Rng rng(cfg.seed);
    CsvTable t("profile,b0_radial,b_plus,b_minus,gap,tol,ok");
    bool all_ok = true;
    for (std::size_t i = 0; i < profiles; ++i) {
        const RadialProfile v = random_step_profile(grid, rng);
        const double b0 = b0_radial(v, p);
        const BilinearReport rep = b_split_direct(v, v, p, cfg.angular);
        const double gap = std::abs(b0 - (rep.b_plus - rep.b_minus));
        const double tol = 5e-3 * std::max(1.0, std::abs(b0));
        const bool ok = gap <= tol;
        all_ok = all_ok && ok;
        t.add_row({csv_number(static_cast<long>(i)), csv_number(b0), csv_number(rep.b_plus),
                   csv_number(rep.b_minus), csv_number(gap), csv_number(tol),
                   detail::bool_cell(ok)});
    }
    write_csv(cfg.out, t);
    return all_ok ? 0 : 1;
}

inline int run_rearrange_check(const RunConfig& cfg) {
    const DimensionParams p = dim_params(cfg.n_dim);
    const std::size_t profiles = cfg.profiles ? cfg.profiles : 20;
    GridPtr fine = detail::unit_uniform_grid(4096);  // equimeasurability
    GridPtr coarse = detail::unit_uniform_grid(256); // direct kernel oracle
    CsvTable t("profile,bplus_gap,bminus_gap,polya_gap,equi_p1,equi_p2,equi_p4,ok");
    bool all_ok = true;
    for (std::size_t i = 0; i < profiles; ++i) {
        // same bump parameters on both grids: identical seeds, identical draws
        Rng ra(cfg.seed + i), rb(cfg.seed + i);
        const RadialProfile vf = random_bump_profile(fine, ra);
        const RadialProfile vc = random_bump_profile(coarse, rb);
        const RadialProfile vfs = schwarz_symmetrize(vf, p);
        const RieszReport rep = riesz_check(vc, p, cfg.angular);
        double equi[3];
        const double ps[3] = {1.0, 2.0, 4.0};
        bool ok = rep.bplus_gap >= -1e-4 && rep.bminus_gap >= -1e-4 && rep.polya_gap >= -1e-4;
        for (int k = 0; k < 3; ++k) {
            const double a = lp_norm(vf, ps[k], p), b = lp_norm(vfs, ps[k], p);
            equi[k] = std::abs(a - b) / a;
            ok = ok && equi[k] <= 1e-6;
        }
        all_ok = all_ok && ok;
        t.add_row({csv_number(static_cast<long>(i)), csv_number(rep.bplus_gap),
                   csv_number(rep.bminus_gap), csv_number(rep.polya_gap), csv_number(equi[0]),
                   csv_number(equi[1]), csv_number(equi[2]), detail::bool_cell(ok)});
    }
    write_csv(cfg.out, t);
    return all_ok ? 0 : 1;
}

inline int run_moser(const RunConfig& cfg) {
    const DimensionParams p = dim_params(cfg.n_dim);
    const GrowthSpec spec = make_ball_critical(cfg.beta, cfg.c, p);
    std::vector<long> ns = cfg.n_list.empty() ? std::vector<long>{100, 1000, 10000} : cfg.n_list;
    CsvTable t("n,phi,lower_bound,grad_norm");
    bool ok = true;
    double prev = -1.0;
    for (long n : ns) {
        const MoserRow row = phi_on_moser(n, spec, p, std::max<std::size_t>(cfg.grid, 2048));
        ok = ok && row.phi > prev && row.phi >= row.lower_bound;
        prev = row.phi;
        t.add_row({csv_number(row.n), csv_number(row.phi), csv_number(row.lower_bound),
                   csv_number(row.grad_norm)});
    }
    write_csv(cfg.out, t);
    return ok ? 0 : 1;
}

inline int run_sweep(const RunConfig& cfg) {
    std::vector<long> ns =
        cfg.n_list.empty() ? std::vector<long>{1000, 10000, 100000, 1000000} : cfg.n_list;
    struct Point {
        int n_dim;
        double beta;
        double slope = 0.0;
        double target = 0.0;
    };
    std::vector<Point> pts;
    for (int nd : {2, 3}) {
        const double bstar = -nd / (2.0 * (nd - 1.0));
        pts.push_back({nd, bstar - 0.25});
        pts.push_back({nd, bstar + 0.25});
    }
    auto work = [&](Point& pt) {
        const DimensionParams p = dim_params(pt.n_dim);
        const GrowthSpec spec = make_ball_critical(pt.beta, cfg.c, p);
        std::vector<double> x, y;
        for (long n : ns) {
            const MoserRow row = phi_on_moser(n, spec, p, std::max<std::size_t>(cfg.grid, 2048));
            x.push_back(std::log(std::log(static_cast<double>(n))));
            y.push_back(std::log(row.phi));
        }
        pt.slope = fit_slope(x, y);
        pt.target = threshold_exponent(pt.n_dim, pt.beta);
    };
    const std::size_t nthreads = std::max<std::size_t>(1, cfg.threads);
    if (nthreads == 1) {
        for (Point& pt : pts) work(pt);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < nthreads; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < pts.size(); i += nthreads) work(pts[i]);
            });
        for (std::thread& th : pool) th.join();
    }
    // rows already ordered by (n_dim, beta); emission order is fixed
    // regardless of which thread computed which point
    CsvTable t("n_dim,beta,slope,target");
    for (const Point& pt : pts)
        t.add_row({csv_number(pt.n_dim), csv_number(pt.beta), csv_number(pt.slope),
                   csv_number(pt.target)});
    write_csv(cfg.out, t);
    return 0;
}

namespace detail {

inline GrowthSpec spec_for(const RunConfig& cfg, const DimensionParams& p) {
    return (cfg.domain == Domain::ball) ? make_ball_critical(cfg.beta, cfg.c, p)
                                        : make_space_critical(cfg.beta, cfg.c, p);
}

inline MaximizeResult run_maximize_result(const RunConfig& cfg, const DimensionParams& p) {
    MaximizeOptions opts;
    opts.grid_size = cfg.grid;
    opts.radius = cfg.radius;
    opts.seed = cfg.seed;
    return maximize(spec_for(cfg, p), cfg.domain, p, opts);
}

} // namespace detail

inline int run_maximize(const RunConfig& cfg) {
    const DimensionParams p = dim_params(cfg.n_dim);
    const MaximizeResult r = detail::run_maximize_result(cfg, p);
    CsvTable t("domain,n,beta,c,phi,theta,constraint_residual,el_residual,iterations,converged,tail");
    t.add_row({cfg.domain == Domain::ball ? "ball" : "space", csv_number(cfg.n_dim),
               csv_number(cfg.beta), csv_number(cfg.c), csv_number(r.phi_value),
               csv_number(r.theta), csv_number(r.constraint_residual), csv_number(r.el_residual),
               csv_number(static_cast<long>(r.iterations)), detail::bool_cell(r.converged),
               csv_number(r.tail)});
    write_csv(cfg.out, t);
    return r.converged ? 0 : 1;
}

inline int run_el_check(const RunConfig& cfg) {
    const DimensionParams p = dim_params(cfg.n_dim);
    const MaximizeResult r = detail::run_maximize_result(cfg, p);
    const GrowthSpec spec = detail::spec_for(cfg, p);
    CsvTable t("node,lhs,rhs,residual");
    for (const ElRow& row : el_rows(r.profile, r.theta, spec, cfg.domain, p))
        t.add_row({csv_number(static_cast<long>(row.node)), csv_number(row.lhs),
                   csv_number(row.rhs), csv_number(row.residual)});
    t.add_row({"-1", csv_number(r.theta), csv_number(r.phi_value), csv_number(r.el_residual)});
    write_csv(cfg.out, t);
    return (r.converged && r.el_residual <= 1e-3) ? 0 : 1;
}

/// Dispatch; 0 on success, 1 on numerical failure. Usage validation happens
/// in the flag parser, which exits with 2 before reaching this point.
inline int run(const RunConfig& cfg) {
    try {
        if (cfg.subcommand == "dims") return run_dims(cfg);
        if (cfg.subcommand == "verify-kernel") return run_verify_kernel(cfg);
        if (cfg.subcommand == "rearrange-check") return run_rearrange_check(cfg);
        if (cfg.subcommand == "moser") return run_moser(cfg);
        if (cfg.subcommand == "sweep") return run_sweep(cfg);
        if (cfg.subcommand == "maximize") return run_maximize(cfg);
        if (cfg.subcommand == "el-check") return run_el_check(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    std::fprintf(stderr, "error: unknown subcommand '%s'\n", cfg.subcommand.c_str());
    return 2;
}

} // namespace cli
} // namespace logtm

#endif

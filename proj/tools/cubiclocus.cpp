// Command-line front end: every subcommand writes deterministic JSON (default)
// or CSV to stdout. Exit codes: 0 success, 1 usage/guard error, 2 when
// --strict is set and any verdict is Unknown.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <thread>

#include "cubiclocus/decimal.hpp"
#include "cubiclocus/density.hpp"
#include "cubiclocus/dhcount.hpp"
#include "cubiclocus/factor.hpp"
#include "cubiclocus/padic.hpp"
#include "cubiclocus/points.hpp"
#include "cubiclocus/primes.hpp"

using nlohmann::ordered_json;
using namespace cubiclocus;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    int depth = 24;
    int threads = 0;
    bool csv = false;
    bool strict = false;
    std::string fixtures = "fixtures/surfaces.txt";
};

int effective_threads(const GlobalOpts& g) {
    if (g.threads > 0) return g.threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

bool g_saw_unknown = false;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Primary output plus a run manifest; the digest covers the primary payload
// so identical runs are byte-comparable, wall time goes to stderr only.
void emit(const GlobalOpts& g, const std::string& command, ordered_json result,
          double wall_ms, const std::string& csv_text = "") {
    if (g.csv && !csv_text.empty()) {
        std::cout << csv_text;
        std::cerr << "# wall_ms=" << wall_ms << "\n";
        return;
    }
    ordered_json out;
    out["result"] = std::move(result);
    ordered_json manifest;
    manifest["command"] = command;
    manifest["seed"] = g.seed;
    manifest["depth"] = g.depth;
    manifest["threads"] = effective_threads(g);
    manifest["version"] = "cubiclocus 1.0.0";
    manifest["guards"] = {{"max_enum", max_enum_guard(1ULL << 36)}};
    manifest["digest"] = fnv1a(out["result"].dump());
    out["manifest"] = std::move(manifest);
    std::cout << out.dump(2) << "\n";
    std::cerr << "# wall_ms=" << wall_ms << "\n";
}

std::string sol_str(Solubility s) {
    switch (s) {
        case Solubility::Soluble: return "Soluble";
        case Solubility::Insoluble: return "Insoluble";
        default: return "Unknown";
    }
}

ordered_json verdict_json(const PadicVerdict& v, int depth) {
    ordered_json j;
    j["verdict"] = sol_str(v.kind);
    j["level"] = v.level;
    j["depth"] = depth;
    j["frontier_overflow"] = v.frontier_overflow;
    if (v.witness) {
        ordered_json w = ordered_json::array();
        for (const Int& c : *v.witness) w.push_back(c.get_str());
        j["witness"] = std::move(w);
    }
    if (v.kind == Solubility::Unknown) g_saw_unknown = true;
    return j;
}

ordered_json rat_json(const Rat& r) {
    ordered_json j;
    j["num"] = r.get_num().get_str();
    j["den"] = r.get_den().get_str();
    j["decimal"] = to_decimal(r, 12);
    return j;
}

std::string lv_str(LocalVerdict v) {
    switch (v) {
        case LocalVerdict::EverywhereLocallySoluble: return "EverywhereLocallySoluble";
        case LocalVerdict::LocalObstructionAt: return "LocalObstructionAt";
        default: return "Unknown";
    }
}

ordered_json report_json(const LocalSolubilityReport& rep, int depth) {
    ordered_json j;
    j["real_soluble"] = rep.real_soluble;
    j["verdict"] = lv_str(rep.verdict);
    if (rep.verdict == LocalVerdict::LocalObstructionAt)
        j["obstruction_prime"] = rep.obstruction_prime.get_str();
    if (rep.verdict == LocalVerdict::Unknown) g_saw_unknown = true;
    ordered_json primes = ordered_json::array();
    for (auto& [p, v] : rep.checked_primes) {
        ordered_json e;
        e["p"] = p.get_str();
        e.update(verdict_json(v, depth));
        primes.push_back(std::move(e));
    }
    j["checked_primes"] = std::move(primes);
    j["note"] = rep.note;
    return j;
}

ResidueClassFilter parse_class(const std::string& s) {
    if (s == "1mod3") return ResidueClassFilter::OneMod3;
    if (s == "2mod3") return ResidueClassFilter::TwoMod3;
    if (s == "all") return ResidueClassFilter::All;
    throw CLI::ValidationError("--class must be 1mod3|2mod3|all");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubiclocus: local solubility densities of cubic surfaces "
                 "f(x0,x1)=g(x2,x3) and rational point search"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
    app.add_option("--depth", g.depth, "decide() depth")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (0 = auto)");
    app.add_flag("--csv", g.csv, "CSV output where applicable");
    bool json_flag = false;
    app.add_flag("--json", json_flag, "JSON output (default)");
    app.add_flag("--strict", g.strict, "exit 2 when any verdict is Unknown");
    app.add_option("--fixtures", g.fixtures, "surfaces fixtures file");

    std::string cmdline;
    for (int i = 0; i < argc; ++i) cmdline += std::string(i ? " " : "") + argv[i];

    // ---- density ----
    auto* density = app.add_subcommand("density", "exact local densities");
    auto* d_theta = density->add_subcommand("theta", "theta_p per prime");
    long dt_p = 0, dt_bound = 0;
    d_theta->add_option("--p", dt_p, "single prime");
    d_theta->add_option("--bound", dt_bound, "sweep all primes <= bound");
    auto* d_prod = density->add_subcommand("product", "Euler product of theta_p");
    long dp_bound = 10000;
    std::string dp_class = "all";
    int dp_digits = 7;
    std::string dp_method = "auto";
    d_prod->add_option("--bound", dp_bound)->capture_default_str();
    d_prod->add_option("--class", dp_class, "1mod3|2mod3|all")->capture_default_str();
    d_prod->add_option("--digits", dp_digits)->capture_default_str();
    d_prod->add_option("--method", dp_method, "auto|exact|fixed")->capture_default_str();
    auto* d_verify = density->add_subcommand("verify", "recursion vs closed forms");
    long dv_pmax = 1000;
    d_verify->add_option("--pmax", dv_pmax)->capture_default_str();

    // ---- padic ----
    auto* padic = app.add_subcommand("padic", "Q_p-solubility deciders and oracles");
    auto* p_dec = padic->add_subcommand("decide", "decide one surface pair");
    std::string pd_f, pd_g;
    long pd_p = 2;
    std::string pd_method = "bfs";
    p_dec->add_option("--p", pd_p)->required();
    p_dec->add_option("--f", pd_f, "c0,c1,c2,c3")->required();
    p_dec->add_option("--g", pd_g, "d0,d1,d2,d3")->required();
    p_dec->add_option("--method", pd_method, "bfs|reduction")->capture_default_str();
    auto* p_ex = padic->add_subcommand("exhaust", "exhaustive bracket for theta_p");
    long pe_p = 2;
    int pe_level = 2;
    p_ex->add_option("--p", pe_p)->required();
    p_ex->add_option("--level", pe_level)->required();
    auto* p_mc = padic->add_subcommand("estimate", "Monte-Carlo estimate of theta_p");
    long pm_p = 2, pm_samples = 10000;
    int pm_level = 6;
    p_mc->add_option("--p", pm_p)->required();
    p_mc->add_option("--samples", pm_samples)->capture_default_str();
    p_mc->add_option("--level", pm_level)->capture_default_str();

    // ---- points ----
    auto* points = app.add_subcommand("points", "curves, surfaces, local checks");
    auto* pt_curve = points->add_subcommand("search-curve", "points on z^3 = f(u,v)");
    std::string pc_f;
    long pc_height = 100;
    pt_curve->add_option("--f", pc_f, "im:a,b,c,d or c0,c1,c2,c3 with 3|c1,c2")->required();
    pt_curve->add_option("--height", pc_height)->capture_default_str();
    auto* pt_surf = points->add_subcommand("search-surface", "point on f(x0,x1)=g(x2,x3)");
    std::string ps_f, ps_g;
    long ps_height = 100, ps_cap = 300;
    pt_surf->add_option("--f", ps_f)->required();
    pt_surf->add_option("--g", ps_g)->required();
    pt_surf->add_option("--height", ps_height)->capture_default_str();
    pt_surf->add_option("--fallback-cap", ps_cap)->capture_default_str();
    auto* pt_local = points->add_subcommand("local", "everywhere-local solubility");
    std::string pl_f, pl_g;
    bool pl_all_fixtures = false;
    pt_local->add_option("--f", pl_f);
    pt_local->add_option("--g", pl_g);
    pt_local->add_flag("--all-fixtures", pl_all_fixtures, "run every fixture line");
    auto* pt_stats = points->add_subcommand("stats", "Theorem-1 sampling experiment");
    long st_height = 100, st_samples = 10000;
    pt_stats->add_option("--height", st_height)->capture_default_str();
    pt_stats->add_option("--samples", st_samples)->capture_default_str();

    // ---- forms ----
    auto* forms = app.add_subcommand("forms", "binary cubic form utilities");
    auto* f_disc = forms->add_subcommand("disc", "discriminants");
    std::string fd_f;
    f_disc->add_option("--f", fd_f)->required();
    auto* f_cls = forms->add_subcommand("classify", "root class mod p");
    std::string fc_f;
    long fc_p = 2;
    f_cls->add_option("--f", fc_f)->required();
    f_cls->add_option("--p", fc_p)->required();
    auto* f_cnt = forms->add_subcommand("count-roots", "exhaustive Lemma-1 counts");
    long fr_p = 5;
    std::string fr_pop = "monic";
    f_cnt->add_option("--p", fr_p)->required();
    f_cnt->add_option("--population", fr_pop, "monic|primitive")->capture_default_str();
    auto* f_fund = forms->add_subcommand("fundamental", "fundamental discriminants");
    std::string ff_d;
    long ff_bound = 0;
    f_fund->add_option("--d", ff_d, "single integer");
    f_fund->add_option("--bound", ff_bound, "count 0 < d <= bound");

    // ---- dh ----
    auto* dh = app.add_subcommand("dh", "Davenport-Heilbronn class counting");
    auto* dh_cnt = dh->add_subcommand("count", "SL2(Z)-classes with 0<|disc|<=X");
    long dx = 1000;
    std::string dh_method = "reduced";
    dh_cnt->add_option("--X", dx)->required();
    dh_cnt->add_option("--method", dh_method, "reduced|box")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    auto t0 = std::chrono::steady_clock::now();
    auto wall = [&]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };
    int nthreads = effective_threads(g);

    try {
        if (d_theta->parsed()) {
            ordered_json rows = ordered_json::array();
            std::string csv = "p,theta\n";
            std::vector<long> ps;
            if (dt_p > 0) ps.push_back(dt_p);
            else if (dt_bound > 0) ps = primes_up_to(dt_bound);
            else throw CLI::ValidationError("density theta: need --p or --bound");
            for (long p : ps) {
                Rat th = theta(p);
                ordered_json row;
                row["p"] = p;
                row["branch"] = std::string(1, chi_branch(p));
                row["theta_num"] = th.get_num().get_str();
                row["theta_den"] = th.get_den().get_str();
                row["theta_decimal"] = to_decimal(th, 15);
                rows.push_back(std::move(row));
                csv += std::to_string(p) + "," + to_decimal(th, 15) + "\n";
            }
            emit(g, cmdline, rows, wall(), csv);
        } else if (d_prod->parsed()) {
            if (dp_bound < 0) throw CLI::ValidationError("density product: negative bound");
            ResidueClassFilter fil = parse_class(dp_class);
            ProductResult pr = dp_method == "fixed"
                                   ? density_product_fixed(dp_bound, fil, dp_digits)
                                   : density_product(dp_bound, fil, dp_digits, nthreads);
            ordered_json j;
            j["bound"] = dp_bound;
            j["class"] = dp_class;
            j["digits"] = dp_digits;
            j["exact"] = pr.exact;
            j["primes_used"] = pr.primes_used;
            j["decimal"] = pr.decimal;
            if (pr.exact) {
                j["num"] = pr.value.get_num().get_str();
                j["den"] = pr.value.get_den().get_str();
            }
            emit(g, cmdline, j, wall(),
                 "bound,class,decimal\n" + std::to_string(dp_bound) + "," + dp_class +
                     "," + pr.decimal + "\n");
        } else if (d_verify->parsed()) {
            ordered_json j;
            long checked = 0;
            for (long p : primes_up_to(dv_pmax)) {
                if (chi_via_recursion(p) != chi_closed_form(p))
                    throw std::logic_error("branch identity failed at p = " + std::to_string(p));
                ++checked;
            }
            j["primes_checked"] = checked;
            j["identity"] = "chi_via_recursion(p) == chi_closed_form(p)";
            j["branch_rule"] =
                "simple branch (1+x^4)(1+x^2)x^4/Q iff p = 2 (mod 3) [sigma2 = 1]; "
                "P(x) branch otherwise [sigma2 = 1/3]; see docs/branch-resolution.md";
            j["theta3"] = decimal_prefix(theta(3), 7);
            emit(g, cmdline, j, wall());
        } else if (p_dec->parsed()) {
            SurfacePair sp{parse_form(pd_f), parse_form(pd_g)};
            PadicVerdict v = pd_method == "reduction"
                                 ? decide_by_reduction(sp, Int(pd_p))
                                 : decide(sp, Int(pd_p), g.depth);
            ordered_json j = verdict_json(v, g.depth);
            j["p"] = pd_p;
            j["method"] = pd_method;
            emit(g, cmdline, j, wall());
        } else if (p_ex->parsed()) {
            Bracket br = exhaustive_bracket(pe_p, pe_level, nthreads);
            ordered_json j;
            j["p"] = pe_p;
            j["level"] = pe_level;
            j["lower"] = rat_json(br.lower);
            j["upper"] = rat_json(br.upper);
            j["soluble"] = br.soluble;
            j["insoluble"] = br.insoluble;
            j["unknown"] = br.unknown;
            j["total"] = br.total.get_str();
            if (br.unknown > 0) g_saw_unknown = true;
            emit(g, cmdline, j, wall());
        } else if (p_mc->parsed()) {
            McEstimate e = mc_estimate(pm_p, pm_samples, pm_level, g.seed, nthreads);
            ordered_json j;
            j["p"] = pm_p;
            j["samples"] = pm_samples;
            j["level"] = pm_level;
            j["seed"] = g.seed;
            j["estimate"] = e.estimate;
            j["stderr"] = e.stderr_;
            j["unknown_fraction"] = e.unknown_fraction;
            j["soluble"] = e.soluble;
            j["insoluble"] = e.insoluble;
            j["unknown"] = e.unknown;
            if (e.unknown > 0) g_saw_unknown = true;
            emit(g, cmdline, j, wall());
        } else if (pt_curve->parsed()) {
            auto im = parse_integer_matrix(pc_f);
            if (!im) throw CLI::ValidationError("search-curve: form must be integer-matrix");
            auto pts = search_curve_points({*im}, pc_height, nthreads);
            ordered_json j;
            j["curve"] = to_string(*im);
            j["height"] = pc_height;
            ordered_json arr = ordered_json::array();
            for (auto& pt : pts) arr.push_back(to_string(pt));
            j["points"] = std::move(arr);
            j["count"] = pts.size();
            emit(g, cmdline, j, wall());
        } else if (pt_surf->parsed()) {
            auto fim = parse_integer_matrix(ps_f), gim = parse_integer_matrix(ps_g);
            if (!fim || !gim)
                throw CLI::ValidationError("search-surface: forms must be integer-matrix");
            auto pt = search_surface_point(*fim, *gim, ps_height, ps_cap, nthreads);
            ordered_json j;
            j["f"] = to_string(*fim);
            j["g"] = to_string(*gim);
            j["height"] = ps_height;
            j["found"] = pt.has_value();
            if (pt) j["point"] = to_string(*pt);
            emit(g, cmdline, j, wall());
        } else if (pt_local->parsed()) {
            ordered_json j;
            if (pl_all_fixtures) {
                ordered_json arr = ordered_json::array();
                for (auto& fx : load_fixtures(g.fixtures)) {
                    ordered_json e;
                    e["label"] = fx.label;
                    e["f"] = to_string(fx.sp.f);
                    e["g"] = to_string(fx.sp.g);
                    e.update(report_json(is_everywhere_locally_soluble(fx.sp, g.depth), g.depth));
                    arr.push_back(std::move(e));
                }
                j["fixtures"] = std::move(arr);
            } else {
                if (pl_f.empty() || pl_g.empty())
                    throw CLI::ValidationError("points local: need --f and --g (or --all-fixtures)");
                SurfacePair sp{parse_form(pl_f), parse_form(pl_g)};
                j = report_json(is_everywhere_locally_soluble(sp, g.depth), g.depth);
            }
            emit(g, cmdline, j, wall());
        } else if (pt_stats->parsed()) {
            Theorem1Stats st = theorem1_statistic(st_height, st_samples, g.seed, g.depth, nthreads);
            ordered_json j;
            j["H"] = st_height;
            j["samples"] = st_samples;
            j["seed"] = g.seed;
            j["fraction"] = st.fraction;
            j["stderr"] = st.stderr_;
            j["unknown_fraction"] = st.unknown_fraction;
            j["els"] = st.els;
            j["obstructed"] = st.obstructed;
            j["unknown"] = st.unknown;
            j["degenerate_discarded"] = st.degenerate_discarded;
            if (st.unknown > 0) g_saw_unknown = true;
            emit(g, cmdline, j, wall());
        } else if (f_disc->parsed()) {
            ordered_json j;
            BinaryCubicForm F = parse_form(fd_f);
            j["form"] = to_string(F);
            j["disc_classical"] = disc_classical(F).get_str();
            if (auto im = parse_integer_matrix(fd_f))
                j["disc_reduced"] = disc_reduced(*im).get_str();
            emit(g, cmdline, j, wall());
        } else if (f_cls->parsed()) {
            BinaryCubicForm F = parse_form(fc_f);
            RootClass rc = classify_roots_mod_p(F, Int(fc_p));
            ordered_json j;
            j["form"] = to_string(F);
            j["p"] = fc_p;
            j["class"] = rc.kind == RootKind::NoRoot
                             ? "NoRoot"
                             : (rc.kind == RootKind::SimpleRoot ? "SimpleRoot" : "TripleRoot");
            if (rc.kind != RootKind::NoRoot)
                j["witness"] = "(" + rc.witness[0].get_str() + ":" + rc.witness[1].get_str() + ")";
            ordered_json roots = ordered_json::array();
            for (auto& [pt, mult] : rc.roots) {
                ordered_json r;
                r["point"] = "(" + pt[0].get_str() + ":" + pt[1].get_str() + ")";
                r["multiplicity"] = mult;
                roots.push_back(std::move(r));
            }
            j["roots"] = std::move(roots);
            emit(g, cmdline, j, wall());
        } else if (f_cnt->parsed()) {
            Population pop = fr_pop == "monic" ? Population::MonicCubicPoly
                                               : Population::PrimitiveBinaryCubic;
            RootClassCounts rc = count_root_classes(fr_p, pop);
            ordered_json j;
            j["p"] = fr_p;
            j["population"] = fr_pop;
            j["simple_count"] = rc.simple_count;
            j["triple_count"] = rc.triple_count;
            j["none_count"] = rc.none_count;
            j["total"] = rc.total;
            Rat simple_frac(rc.simple_count, rc.total), triple_frac(rc.triple_count, rc.total);
            simple_frac.canonicalize();
            triple_frac.canonicalize();
            j["simple_fraction"] = rat_json(simple_frac);
            j["triple_fraction"] = rat_json(triple_frac);
            emit(g, cmdline, j, wall());
        } else if (f_fund->parsed()) {
            ordered_json j;
            if (!ff_d.empty()) {
                Int d(ff_d);
                j["d"] = d.get_str();
                j["fundamental"] = is_fundamental_discriminant(d);
            } else if (ff_bound > 0) {
                long cnt = count_fundamental_up_to(ff_bound);
                j["bound"] = ff_bound;
                j["count"] = cnt;
                Rat dens(cnt, ff_bound);
                dens.canonicalize();
                j["density"] = rat_json(dens);
                j["three_over_pi_squared"] = 0.3039635509270133;
            } else {
                throw CLI::ValidationError("forms fundamental: need --d or --bound");
            }
            emit(g, cmdline, j, wall());
        } else if (dh_cnt->parsed()) {
            CountMethod m = dh_method == "box" ? CountMethod::BoxOrbitDedup
                                               : CountMethod::ReducedEnumeration;
            ClassCountReport rep = count_classes(dx, m, nthreads);
            ordered_json j;
            j["X"] = rep.X;
            j["method"] = dh_method;
            j["class_count"] = rep.class_count;
            j["slope"] = rat_json(rep.slope);
            j["pi2_over_3"] = 3.2898681336964524;
            emit(g, cmdline, j, wall(),
                 "X,count,slope\n" + std::to_string(rep.X) + "," +
                     std::to_string(rep.class_count) + "," + to_decimal(rep.slope, 10) + "\n");
        }
    } catch (const GuardViolation& e) {
        std::cerr << "guard violation: " << e.what() << "\n";
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (g.strict && g_saw_unknown) return 2;
    return 0;
}

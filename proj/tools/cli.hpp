#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "isolame/elliptic.hpp"
#include "isolame/fuchs.hpp"
#include "isolame/lamecurve.hpp"
#include "isolame/monodromy.hpp"
#include "isolame/okamoto.hpp"
#include "isolame/pvi.hpp"

namespace isolame::cli {

using json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kUsage = 2, kNumerical = 3, kDomain = 4 };

inline int exit_code_for(const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) return kUsage;
    return is_numerical(e.kind()) ? kNumerical : kDomain;
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<ScalarLiteral> parse_list(const std::string& s, size_t expected, const char* what) {
    std::vector<ScalarLiteral> v;
    for (const auto& p : split_list(s)) v.push_back(parse_scalar(p));
    if (expected && v.size() != expected)
        fail(ErrorKind::InvalidArgument, std::string(what) + " needs " + std::to_string(expected) + " values");
    return v;
}

inline bool all_real(const std::vector<ScalarLiteral>& v) {
    for (const auto& x : v)
        if (!x.is_real()) return false;
    return true;
}

template <class T>
T as(const ScalarLiteral& s) {
    if constexpr (is_exact_v<T>) {
        if (!s.is_real()) fail(ErrorKind::InvalidArgument, "complex literal in exact mode");
        return s.re;
    } else {
        return s.to_complex();
    }
}

inline std::string str(const Rational& x) { return format_scalar(x); }
inline std::string str(const Complex& x) { return format_scalar(x); }

template <class T>
std::string proj_str(const PLine<T>& l) {
    if (l.is_infinite()) return "inf";
    return str(T(l.u1 / l.u0));
}

template <class T>
json mat_json(const Mat2<T>& M) {
    return json::array({json::array({str(M.a), str(M.b)}), json::array({str(M.c), str(M.d)})});
}

template <class T>
json kappa_json(const PviParams<T>& P) {
    return json{{"k0", str(P.k0)}, {"k1", str(P.k1)}, {"kt", str(P.kt)}, {"kinf", str(P.kinf)}, {"rho", str(P.rho)}};
}

template <class T>
json point_json(const PhasePoint<T>& pt) {
    return json{{"t", str(pt.t)}, {"q", str(pt.q)}, {"p", str(pt.p)}};
}

inline json conventions() {
    return json{{"loop_ordering", kLoopConvention},
                {"two_torsion",
                 "omega0 -> x=0, omega1 -> x=1, omega0+omega1 -> x=t; P1=4*omega1, P2=4*omega0, Im(P2/P1)>0"},
                {"gamma_branch", "plus: gamma=(c+sqrt(c^2-4))/2 with the principal square root"},
                {"theta", "theta=(k0,k1,kt,kinf+1), rho=(1-k0-k1-kt-kinf)/2"},
                {"number_format", "rationals as a/b, floats with 17 significant digits, complex as re+imi"}};
}

// Inputs shared by most subcommands.
struct Inputs {
    std::string kappa, point, start, path, base, word, c0, c1, tgrid, a, b, c, gamma = "plus", out;
    double tol = 1e-10;
    bool exact = false, detour = false;
    int jobs = 1;
};

template <class T>
PviParams<T> params_from(const std::vector<ScalarLiteral>& k) {
    return make_params<T>(as<T>(k[0]), as<T>(k[1]), as<T>(k[2]), as<T>(k[3]));
}

template <class T>
PhasePoint<T> point_from(const std::vector<ScalarLiteral>& v) {
    return {as<T>(v[0]), as<T>(v[1]), as<T>(v[2])};
}

inline bool use_exact(const Inputs& in, const std::vector<ScalarLiteral>& a, const std::vector<ScalarLiteral>& b) {
    return in.exact || (all_real(a) && all_real(b));
}

// --- integrate

inline int cmd_integrate(const Inputs& in, std::ostream& out, std::ostream& err) {
    auto k = parse_list(in.kappa, 4, "--kappa");
    auto s = parse_list(in.start, 3, "--start");
    auto P = params_from<Complex>(k);
    auto start = point_from<Complex>(s);
    std::vector<Complex> w{start.t};
    if (!in.path.empty())
        for (const auto& x : parse_list(in.path, 0, "--path")) {
            Complex z = x.to_complex();
            if (z != w.back()) w.push_back(z);
        }
    OdeConfig cfg;
    cfg.rel_tol = in.tol;
    cfg.abs_tol = in.tol * 1e-2;
    Trajectory tr;
    if (w.size() == 1) {
        check_boundary(start.t, start.q);
        tr.params = P;
        tr.samples = {start};
        tr.path = PlanePath({start.t});
    } else if (in.detour) {
        tr = flow_with_detours(P, start, PlanePath(w), cfg);
    } else {
        tr = flow(P, start, PlanePath(w), cfg);
    }
    std::ostringstream csv;
    csv << "t_re,t_im,q_re,q_im,p_re,p_im,H_re,H_im\n";
    for (const auto& pt : tr.samples) {
        Complex H = hamiltonian(P, pt);
        csv << format_double(pt.t.real()) << ',' << format_double(pt.t.imag()) << ',' << format_double(pt.q.real())
            << ',' << format_double(pt.q.imag()) << ',' << format_double(pt.p.real()) << ','
            << format_double(pt.p.imag()) << ',' << format_double(H.real()) << ',' << format_double(H.imag()) << '\n';
    }
    json summary{{"command", "integrate"},
                 {"kappa", kappa_json(P)},
                 {"samples", tr.samples.size()},
                 {"detours", tr.detours},
                 {"pvi_residual", format_double(pvi_residual(P, tr))},
                 {"end", point_json(tr.end())},
                 {"conventions", conventions()}};
    if (in.out.empty()) {
        out << csv.str();
        err << summary.dump(2) << '\n';
    } else {
        std::ofstream f(in.out, std::ios::binary);
        if (!f) fail(ErrorKind::InvalidArgument, "cannot open " + in.out);
        f << csv.str();
        out << summary.dump(2) << '\n';
    }
    return kOk;
}

// --- symmetry

template <class T>
json symmetry_json(const Inputs& in, const std::vector<ScalarLiteral>& k, const std::vector<ScalarLiteral>& p) {
    auto P = params_from<T>(k);
    auto pt = point_from<T>(p);
    SymmetryWord w = parse_word(in.word);
    auto r = apply_word(w, P, pt);
    json letters = json::array();
    for (const auto& l : w) letters.push_back(letter_name(l));
    return json{{"command", "symmetry"},
                {"mode", is_exact_v<T> ? "exact" : "float"},
                {"word", letters},
                {"input", {{"kappa", kappa_json(P)}, {"point", point_json(pt)}}},
                {"output", {{"kappa", kappa_json(r.params)}, {"point", point_json(r.point)}}},
                {"conventions", conventions()}};
}

inline int cmd_symmetry(const Inputs& in, std::ostream& out) {
    auto k = parse_list(in.kappa, 4, "--kappa");
    auto p = parse_list(in.point, 3, "--point");
    json j = use_exact(in, k, p) ? symmetry_json<Rational>(in, k, p) : symmetry_json<Complex>(in, k, p);
    out << j.dump(2) << '\n';
    return kOk;
}

// --- monodromy

inline int cmd_monodromy(const Inputs& in, std::ostream& out) {
    auto k = parse_list(in.kappa, 4, "--kappa");
    auto p = parse_list(in.point, 3, "--point");
    auto P = params_from<Complex>(k);
    auto pt = point_from<Complex>(p);
    auto S = system_from_pq(P, pt);
    OdeConfig cfg;
    cfg.rel_tol = in.tol;
    cfg.abs_tol = in.tol * 1e-2;
    Complex base = in.base.empty() ? default_base_point(pt.t) : parse_scalar(in.base).to_complex();
    auto Q = monodromy_quadruple(S, base, cfg);
    auto tr = six_traces(Q);
    auto R = pullback_rep(Q);
    auto F = fricke(R.A, R.B);
    auto cls = classify_representation(F);
    json j{{"command", "monodromy"},
           {"kappa", kappa_json(P)},
           {"point", point_json(pt)},
           {"base_point", str(base)},
           {"matrices", {{"M0", mat_json(Q.M0)}, {"M1", mat_json(Q.M1)}, {"Mt", mat_json(Q.Mt)}, {"Minf", mat_json(Q.Minf)}}},
           {"traces",
            {{"M0", str(tr[0])},
             {"M1", str(tr[1])},
             {"Mt", str(tr[2])},
             {"Minf", str(Q.Minf.trace())},
             {"M0M1", str(tr[3])},
             {"M1Mt", str(tr[4])},
             {"M0Mt", str(tr[5])}}},
           {"relation_defect", format_double(Q.relation_defect())},
           {"fricke", {{"a", str(F.a)}, {"b", str(F.b)}, {"c", str(F.c)}, {"d", str(F.d)}}},
           {"commutator_trace", str(commutator(R.A, R.B).trace())},
           {"reducible", cls.reducible},
           {"conventions", conventions()}};
    out << j.dump(2) << '\n';
    return kOk;
}

// --- tu and pullback

template <class T>
json tu_json(const PviParams<T>& P, const PhasePoint<T>& pt) {
    ParabolicData<T> L = parabolic_lines(P, pt);
    json j;
    std::optional<PLine<T>> lam_pq;
    if (is_zero(pt.p)) {
        lam_pq = PLine<T>::infinity();
    } else {
        lam_pq = PLine<T>::affine(tu_from_pq(P, pt));
    }
    j["lambda_pq"] = proj_str(*lam_pq);
    auto pairs = coincident_pairs(L);
    if (pairs.empty()) {
        PLine<T> c = cross_ratio(L);
        j["cross_ratio"] = proj_str(c);
        PLine<T> lam_c = tu_from_cross_ratio(c, pt.t);
        j["lambda_cross_ratio"] = proj_str(lam_c);
        j["agree"] = same_point(lam_c, *lam_pq);
    } else {
        json a = json::array();
        for (auto& s : pairs) a.push_back(s);
        j["coincident_lines"] = a;
    }
    TuClass<T> cls = classify_bundle(L, pt.t, BundleCase::Trivial);
    j["classification"] = {{"kind", tu_kind_name(cls.kind)}, {"lambda", cls.lambda ? proj_str(*cls.lambda) : "none"}};
    return j;
}

inline int cmd_tu(const Inputs& in, std::ostream& out) {
    auto k = parse_list(in.kappa, 4, "--kappa");
    auto p = parse_list(in.point, 3, "--point");
    json j{{"command", "tu"}};
    if (use_exact(in, k, p)) {
        auto P = params_from<Rational>(k);
        auto pt = point_from<Rational>(p);
        j["mode"] = "exact";
        j["kappa"] = kappa_json(P);
        j["point"] = point_json(pt);
        j.update(tu_json(P, pt));
    } else {
        auto P = params_from<Complex>(k);
        auto pt = point_from<Complex>(p);
        j["mode"] = "float";
        j["kappa"] = kappa_json(P);
        j["point"] = point_json(pt);
        j.update(tu_json(P, pt));
    }
    j["conventions"] = conventions();
    out << j.dump(2) << '\n';
    return kOk;
}

inline int cmd_pullback(const Inputs& in, std::ostream& out) {
    if (!in.exact) fail(ErrorKind::InvalidArgument, "pullback requires --exact");
    auto k = parse_list(in.kappa, 4, "--kappa");
    auto p = parse_list(in.point, 3, "--point");
    auto P = params_from<Rational>(k);
    auto pt = point_from<Rational>(p);
    LamePullback L = lame_pullback(P, pt);
    json local = json::array();
    for (const auto& d : L.local) {
        json e{{"point", point_name(d.point)}, {"pole_order", d.pole_order}};
        if (d.residue_eigenvalues)
            e["residue_eigenvalues"] = json::array({str(d.residue_eigenvalues->first), str(d.residue_eigenvalues->second)});
        local.push_back(e);
    }
    bool trace_free = true;
    for (int i = 0; i < 4; ++i) trace_free = trace_free && L.connection.chart_matrix(i).trace().is_zero();
    json j{{"command", "pullback"},
           {"mode", "exact"},
           {"kappa", kappa_json(P)},
           {"point", point_json(pt)},
           {"vartheta", str(Rational(2 * P.kinf + 1))},
           {"local", local},
           {"trace_free", trace_free},
           {"chart_label", L.connection.chart_label},
           {"tu", tu_json(P, pt)},
           {"conventions", conventions()}};
    out << j.dump(2) << '\n';
    return kOk;
}

// --- picard

inline int cmd_picard(const Inputs& in, std::ostream& out) {
    PicardSeed seed{parse_scalar(in.c0).to_complex(), parse_scalar(in.c1).to_complex()};
    auto g = split_list(in.tgrid);
    if (g.size() != 3) fail(ErrorKind::InvalidArgument, "--tgrid needs a,b,n");
    Complex a = parse_scalar(g[0]).to_complex(), b = parse_scalar(g[1]).to_complex();
    int n = 0;
    try {
        n = std::stoi(g[2]);
    } catch (...) {
        fail(ErrorKind::InvalidArgument, "--tgrid n must be an integer");
    }
    if (n < 1) fail(ErrorKind::InvalidArgument, "--tgrid n must be positive");
    const auto P = make_params<Complex>(0.0, 0.0, 0.0, 0.0);
    struct Row {
        Complex t, lam;
        double residual = 0;
        std::string error;
    };
    std::vector<Row> rows(n);
    auto work = [&](int i) {
        Row& r = rows[i];
        r.t = n == 1 ? a : a + (b - a) * (double(i) / (n - 1));
        try {
            r.lam = picard_solution(seed, r.t);
            if (coincides(r.lam, Complex(0)) || coincides(r.lam, Complex(1)) || coincides(r.lam, r.t)) {
                r.residual = -1;  // constant solution on the boundary set
                return;
            }
            // Central differences with one Richardson step.
            double h = 1e-3 * std::max(1.0, std::abs(r.t));
            auto d12 = [&](double hh) {
                Complex fp = picard_solution(seed, r.t + hh), fm = picard_solution(seed, r.t - hh);
                return std::pair{(fp - fm) / (2 * hh), (fp - 2.0 * r.lam + fm) / (hh * hh)};
            };
            auto [d1a, d2a] = d12(h);
            auto [d1b, d2b] = d12(h / 2);
            Complex d1 = (4.0 * d1b - d1a) / 3.0, d2 = (4.0 * d2b - d2a) / 3.0;
            Complex rhs = pvi_rhs(P, r.t, r.lam, d1);
            r.residual = std::abs(d2 - rhs) / (1.0 + std::abs(d2));
        } catch (const Error& e) {
            r.error = e.what();
        }
    };
    int jobs = std::max(1, std::min(in.jobs, n));
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&, j] {
            for (int i = j; i < n; i += jobs) work(i);
        });
    for (auto& th : pool) th.join();
    json samples = json::array();
    double worst = 0;
    for (const auto& r : rows) {
        json e{{"t", str(r.t)}};
        if (r.error.empty()) {
            e["lambda"] = str(r.lam);
            if (r.residual < 0) {
                e["residual"] = "boundary";
            } else {
                e["residual"] = format_double(r.residual);
                worst = std::max(worst, r.residual);
            }
        } else {
            e["error"] = r.error;
        }
        samples.push_back(e);
    }
    json j{{"command", "picard"},
           {"seed", {{"c0", str(seed.c0)}, {"c1", str(seed.c1)}}},
           {"kappa", kappa_json(P)},
           {"samples", samples},
           {"max_residual", format_double(worst)},
           {"conventions", conventions()}};
    out << j.dump(2) << '\n';
    return kOk;
}

// --- fricke

template <class T>
json fricke_json(const T& a, const T& b, const T& c, GammaChoice choice) {
    auto F = fricke_from_traces(a, b, c);
    auto cls = classify_representation(F);
    json j{{"a", str(F.a)},
           {"b", str(F.b)},
           {"c", str(F.c)},
           {"d", str(F.d)},
           {"reducible", cls.reducible},
           {"irreducible", !cls.reducible},
           {"surface", cls.surface_label},
           {"singular", cls.singular_point}};
    Complex ca = to_complex(a), cb = to_complex(b), cc = to_complex(c);
    Complex gamma = gamma_from_c(cc, choice);
    auto N = normal_form_with_gamma(ca, cb, gamma);
    j["gamma"] = str(gamma);
    j["normal_form"] = {{"A", mat_json(N.A)}, {"B", mat_json(N.B)}};
    try {
        j["involution"] = mat_json(involution_matrix(ca, cb, gamma));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidInvolution) throw;
        j["involution"] = nullptr;
    }
    return j;
}

inline int cmd_fricke(const Inputs& in, std::ostream& out) {
    std::vector<ScalarLiteral> abc{parse_scalar(in.a), parse_scalar(in.b), parse_scalar(in.c)};
    GammaChoice choice = in.gamma == "minus" ? GammaChoice::Minus : GammaChoice::Plus;
    if (in.gamma != "plus" && in.gamma != "minus") fail(ErrorKind::InvalidArgument, "--gamma is plus or minus");
    json j{{"command", "fricke"}};
    if (all_real(abc)) {
        j["mode"] = "exact";
        j.update(fricke_json<Rational>(abc[0].re, abc[1].re, abc[2].re, choice));
    } else {
        j["mode"] = "float";
        j.update(fricke_json<Complex>(abc[0].to_complex(), abc[1].to_complex(), abc[2].to_complex(), choice));
    }
    j["conventions"] = conventions();
    out << j.dump(2) << '\n';
    return kOk;
}

// Flat JSON object {"flag": value}; entries become "--flag value" unless the flag is already on the command line.
inline std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::InvalidArgument, "cannot read config " + path);
    json cfg;
    try {
        cfg = json::parse(f);
    } catch (const std::exception& e) {
        fail(ErrorKind::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) fail(ErrorKind::InvalidArgument, "config must be a flat JSON object");
    auto present = [&](const std::string& flag) {
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        std::string flag = "--" + it.key();
        if (it.key() == "command" || present(flag)) continue;
        const json& v = it.value();
        if (v.is_boolean()) {
            if (v.get<bool>()) args.push_back(flag);
            continue;
        }
        std::string text;
        if (v.is_string()) {
            text = v.get<std::string>();
        } else if (v.is_array()) {
            for (size_t k = 0; k < v.size(); ++k) {
                if (k) text += ",";
                text += v[k].is_string() ? v[k].get<std::string>() : v[k].dump();
            }
        } else if (v.is_number()) {
            text = v.dump();
        } else {
            fail(ErrorKind::InvalidArgument, "unsupported config value for " + it.key());
        }
        args.push_back(flag);
        args.push_back(text);
    }
    return args;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = merge_config(args);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kUsage;
    }
    Inputs in;
    CLI::App app{"Painleve VI, isomonodromy and elliptic pull-back toolkit", "isolame"};
    app.require_subcommand(1);

    auto kappa = [&](CLI::App* s) { s->add_option("--kappa", in.kappa, "k0,k1,kt,kinf")->required(); };
    auto point = [&](CLI::App* s) { s->add_option("--point", in.point, "t,q,p")->required(); };

    auto* integ = app.add_subcommand("integrate", "flow the Hamiltonian system along a path");
    kappa(integ);
    integ->add_option("--start", in.start, "t,q,p")->required();
    integ->add_option("--path", in.path, "t1[,t2,...]")->required();
    integ->add_option("--tol", in.tol, "relative tolerance");
    integ->add_option("--out", in.out, "CSV output path");
    integ->add_flag("--detour", in.detour, "reroute around poles of the transcendent");

    auto* sym = app.add_subcommand("symmetry", "apply a word in the affine Weyl group");
    sym->add_option("--word", in.word, "letters, e.g. \"sgn0 p01 elm(1,0,0,1)\"")->required();
    kappa(sym);
    point(sym);
    sym->add_flag("--exact", in.exact, "rational arithmetic");

    auto* mono = app.add_subcommand("monodromy", "monodromy traces and Fricke data");
    kappa(mono);
    point(mono);
    mono->add_option("--base", in.base, "base point re+imi");
    mono->add_option("--tol", in.tol, "relative tolerance");

    auto* pull = app.add_subcommand("pullback", "exact elliptic pull-back local data");
    kappa(pull);
    point(pull);
    pull->add_flag("--exact", in.exact, "required: exact rational mode");

    auto* tu = app.add_subcommand("tu", "Tu invariant by both formulas");
    kappa(tu);
    point(tu);
    tu->add_flag("--exact", in.exact, "rational arithmetic");

    auto* pic = app.add_subcommand("picard", "Picard solutions of PVI(0,0,0,0)");
    pic->add_option("--c0", in.c0, "seed coefficient of omega0")->required();
    pic->add_option("--c1", in.c1, "seed coefficient of omega1")->required();
    pic->add_option("--tgrid", in.tgrid, "a,b,n")->required();
    pic->add_option("--jobs", in.jobs, "worker threads");

    auto* fr = app.add_subcommand("fricke", "Fricke coordinates and normal form");
    fr->add_option("--a", in.a, "tr A")->required();
    fr->add_option("--b", in.b, "tr B")->required();
    fr->add_option("--c", in.c, "tr AB")->required();
    fr->add_option("--gamma", in.gamma, "plus or minus");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kUsage;
    }
    try {
        if (*integ) return cmd_integrate(in, out, err);
        if (*sym) return cmd_symmetry(in, out);
        if (*mono) return cmd_monodromy(in, out);
        if (*pull) return cmd_pullback(in, out);
        if (*tu) return cmd_tu(in, out);
        if (*pic) return cmd_picard(in, out);
        if (*fr) return cmd_fricke(in, out);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    }
    return kUsage;
}

}  // namespace isolame::cli

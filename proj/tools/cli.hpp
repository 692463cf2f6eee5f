#pragma once

// Command-line front end. `run` never exits the process: it returns
//   0  success, identity holds
//   1  identity violated (both sides are printed)
//   2  usage error or malformed input

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "taulab/json_io.hpp"
#include "taulab/taulab.hpp"

namespace taulab::cli {

using ojson = nlohmann::ordered_json;

enum class Format { Human, Json, Tsv };

/// One command's result, rendered in the requested format.
struct Report {
    ojson data = ojson::object();
    std::vector<std::string> human;
    std::string tsv;  // overrides the key/value rendering when non-empty
    int status = 0;
};

namespace detail {

inline std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt_complex(std::complex<double> z) {
    if (z.imag() == 0.0) return fmt_double(z.real());
    return fmt_double(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt_double(std::abs(z.imag())) + "i";
}

inline ojson complex_json(std::complex<double> z) { return ojson::array({z.real(), z.imag()}); }

inline ojson exact_json(const ComplexRational& z) { return ojson(scalar_to_json(z)); }

/// Inline JSON when the argument looks like JSON, a file path otherwise.
inline json load_json(const std::string& arg, const std::string& what) {
    std::string text = arg;
    std::string origin = what;
    const auto first = arg.find_first_not_of(" \t\r\n");
    const bool inline_json = first != std::string::npos && std::string("[{\"-0123456789").find(arg[first]) != std::string::npos;
    if (!inline_json) {
        std::ifstream in(arg);
        if (!in) throw InputError(what, "cannot open file '" + arg + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
        origin = arg;
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(origin, e.what());
    }
}

inline std::vector<Partition> partitions_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where, "expected an array of partitions");
    std::vector<Partition> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(partition_from_json(j[k], where + "/" + std::to_string(k)));
    return out;
}

inline std::vector<Partition> broadcast(const std::string& one, const std::string& many, int count,
                                        const std::string& one_name, const std::string& many_name) {
    if (one.empty() == many.empty()) throw InputError("", "give exactly one of " + one_name + " and " + many_name);
    if (!one.empty()) {
        const auto p = partition_from_json(load_json(one, one_name), one_name);
        return std::vector<Partition>(static_cast<std::size_t>(count), p);
    }
    auto ps = partitions_from_json(load_json(many, many_name), many_name);
    if (static_cast<int>(ps.size()) != count)
        throw InputError(many_name, "expected " + std::to_string(count) + " partitions, got " + std::to_string(ps.size()));
    return ps;
}

inline SourceAssignment<ComplexRational> load_sources(const std::string& arg, int size, int edges) {
    if (arg.empty()) {
        if (size < 1) throw InputError("--size", "give --size or --sources");
        return SourceAssignment<ComplexRational>::identity(edges, size);
    }
    auto src = sources_from_json(load_json(arg, "--sources"), "--sources");
    if (size >= 1 && size != src.size)
        throw InputError("--size", "disagrees with N=" + std::to_string(src.size) + " in the sources file");
    return src;
}

inline std::vector<PowerSumValues<ComplexRational>> padded(std::vector<PowerSumValues<ComplexRational>> v, int degree,
                                                           const std::string& where) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        auto& t = v[k].values;
        if (static_cast<int>(t.size()) > degree) t.resize(static_cast<std::size_t>(degree));
        if (static_cast<int>(t.size()) < degree) {
            if (!t.empty())
                throw InputError(where + "/" + std::to_string(k),
                                 "time vector has " + std::to_string(t.size()) + " entries, need " + std::to_string(degree));
            t.resize(static_cast<std::size_t>(degree));  // [] is the zero vector
        }
    }
    return v;
}

inline std::string verdict(bool ok) { return ok ? "OK" : "FAIL"; }

inline void add_sides(Report& r, const ComplexRational& lhs, const ComplexRational& rhs, bool stable) {
    const bool ok = lhs == rhs;
    r.data["lhs"] = exact_json(lhs);
    r.data["rhs"] = exact_json(rhs);
    r.data["holds"] = ok;
    r.data["within_stability"] = stable;
    r.human.push_back("LHS=" + to_string(lhs) + " RHS=" + to_string(rhs) + " " + verdict(ok));
    if (!stable) r.human.push_back("note: weight exceeds N, outside the range where the identity is asserted");
    r.status = ok ? 0 : 1;
}

}  // namespace detail

struct Options {
    std::string format = "human";
    // shared
    std::string lambda, lambdas, mu, mus, graph, sources, times, profiles, factors, levels, observable;
    int weight = 0, degree = -1, euler = 2, size = 0, depth = 3, components = 1, kappa = -1, edges = 0, matrices = 0;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
    std::string sign = "alternating", method = "frobenius";
    bool reduce = false, exact = false;
};

inline Report cmd_schur(const Options& o) {
    const auto lambda = partition_from_json(detail::load_json(o.lambda, "--lambda"), "--lambda");
    const int degree = o.degree < 0 ? lambda.weight() : o.degree;
    const auto poly = schur_in_powersums(lambda, degree);
    Report r;
    r.data["lambda"] = ojson(lambda.parts());
    r.data["terms"] = ojson::parse(to_json(poly).dump());
    r.human.push_back("s" + to_string(lambda) + " = " + to_string(poly));
    for (const auto& [m, c] : poly.terms()) r.tsv += to_string(m) + "\t" + to_string(c) + "\n";
    return r;
}

inline Report cmd_chartable(const Options& o) {
    if (o.weight < 1 || o.weight > 12) throw InputError("--weight", "must be in 1..12");
    const auto table = character_table(o.weight);
    const auto& parts = table->partitions();
    Report r;
    r.data["weight"] = o.weight;
    r.data["partitions"] = ojson::array();
    for (const auto& p : parts) r.data["partitions"].push_back(p.parts());
    ojson rows = ojson::array();
    std::string tsv = "lambda\\mu";
    for (const auto& mu : parts) tsv += "\t" + to_string(mu);
    tsv += "\n";
    for (const auto& lam : parts) {
        ojson row = ojson::array();
        tsv += to_string(lam);
        for (const auto& mu : parts) {
            const auto v = to_string((*table)(lam, mu));
            row.push_back(v);
            tsv += "\t" + v;
        }
        tsv += "\n";
        rows.push_back(row);
    }
    r.data["phi"] = rows;
    r.tsv = tsv;
    std::istringstream lines(tsv);
    for (std::string line; std::getline(lines, line);) r.human.push_back(line);
    return r;
}

inline Report cmd_hurwitz(const Options& o) {
    HurwitzInstance inst{o.euler, detail::partitions_from_json(detail::load_json(o.profiles, "--profiles"), "--profiles")};
    try {
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw InputError("--profiles", e.what());
    }
    Rational h;
    if (o.method == "frobenius") h = hurwitz_frobenius(inst);
    else if (o.method == "bruteforce") h = hurwitz_bruteforce(inst);
    else throw InputError("--method", "expected frobenius or bruteforce");
    Report r;
    r.data["euler"] = o.euler;
    r.data["degree"] = inst.degree();
    r.data["method"] = o.method;
    r.data["value"] = to_string(h);
    r.human.push_back(to_string(h));
    r.tsv = to_string(h) + "\n";
    return r;
}

inline Report cmd_graph(const Options& o) {
    const auto g = ribbon_graph_from_json(detail::load_json(o.graph, "--graph"), "--graph");
    const auto d = dual(g);
    Report r;
    r.data["edges"] = g.edges();
    r.data["vertices"] = g.vertices();
    r.data["faces"] = g.faces();
    r.data["euler"] = g.euler();
    r.data["connected"] = g.connected();
    if (g.connected()) r.data["genus"] = (2 - g.euler()) / 2;
    r.data["dual"] = ojson::parse(to_json(d).dump());
    auto cycles = [](const std::vector<HalfEdgeCycle>& cs) {
        std::string s;
        for (const auto& c : cs) {
            s += "(";
            for (std::size_t k = 0; k < c.size(); ++k) s += (k ? " " : "") + std::to_string(c[k]);
            s += ")";
        }
        return s;
    };
    r.human.push_back("edges: " + std::to_string(g.edges()));
    r.human.push_back("vertices: " + cycles(g.vertices()));
    r.human.push_back("faces: " + cycles(g.faces()));
    r.human.push_back("euler: " + std::to_string(g.euler()) + (g.connected() ? "" : " (disconnected)"));
    if (g.connected()) r.human.push_back("genus: " + std::to_string((2 - g.euler()) / 2));
    return r;
}

inline Report cmd_verify(const std::string& which, const Options& o) {
    const auto g = ribbon_graph_from_json(detail::load_json(o.graph, "--graph"), "--graph");
    const auto src = detail::load_sources(o.sources, o.size, g.edges());
    Report r;
    r.data["identity"] = which;
    if (which == "evv" || which == "evf") {
        const bool vertex = which == "evv";
        const int count = vertex ? g.num_vertices() : g.num_faces();
        const auto lambdas = detail::broadcast(o.lambda, o.lambdas, count, "--lambda", "--lambdas");
        const auto s = vertex ? schur_integral_vertex(g, src, lambdas) : schur_integral_face(g, src, lambdas);
        r.human.push_back(vertex ? "identity: Schur integral over vertex monodromies"
                                 : "identity: Schur integral over face monodromies");
        detail::add_sides(r, s.lhs, s.rhs, s.within_stability);
    } else {
        const auto mus = detail::broadcast(o.mu, o.mus, g.num_faces(), "--mu", "--mus");
        const auto s = polygon_gluing_identity(g, src, mus);
        r.human.push_back("identity: polygon gluing (Hurwitz and character-expansion sides)");
        r.data["lhs"] = detail::exact_json(s.lhs);
        r.data["rhs"] = detail::exact_json(s.rhs_hurwitz);
        r.data["rhs_characters"] = detail::exact_json(s.rhs_characters);
        r.data["holds"] = s.holds();
        r.data["within_stability"] = s.within_stability;
        r.human.push_back("LHS=" + to_string(s.lhs) + " RHS=" + to_string(s.rhs_hurwitz) +
                          " RHS(characters)=" + to_string(s.rhs_characters) + " " + detail::verdict(s.holds()));
        if (!s.within_stability) r.human.push_back("note: weight exceeds N, outside the range where the identity is asserted");
        r.status = s.holds() ? 0 : 1;
    }
    return r;
}

inline Report cmd_mc(const Options& o, bool seed_given) {
    if (!seed_given) throw InputError("--seed", "stochastic subcommands require an explicit seed");
    if (o.observable.empty()) throw InputError("--observable", "missing observable");
    const auto src = detail::load_sources(o.sources, o.size, 16);
    const auto obs = parse_observable(o.observable, src);
    const int matrices = o.matrices > 0 ? o.matrices : std::max(1, obs.ensemble_size());
    const auto est = mc_expect(obs, EnsembleSpec{matrices, src.size}, o.samples, o.seed);
    Report r;
    r.data["observable"] = o.observable;
    r.data["size"] = src.size;
    r.data["matrices"] = matrices;
    r.data["samples"] = est.samples;
    r.data["seed"] = o.seed;
    r.data["mean"] = detail::complex_json(est.mean);
    r.data["standard_error"] = est.standard_error;
    r.human.push_back("mean = " + detail::fmt_complex(est.mean) + " ± " + detail::fmt_double(est.standard_error) +
                      " (" + std::to_string(est.samples) + " samples, seed " + std::to_string(o.seed) + ")");
    if (o.exact) {
        const auto exact = wick_exact(obs, src.size).value;
        const bool ok = est.agrees_with(exact.to_complex(), 5.0);
        r.data["exact"] = detail::exact_json(exact);
        r.data["agrees"] = ok;
        r.human.push_back("exact = " + to_string(exact) + " " + detail::verdict(ok) + " (5 stderr)");
        r.status = ok ? 0 : 1;
    }
    return r;
}

inline std::pair<std::vector<PowerSumValues<ComplexRational>>, std::vector<PowerSumValues<ComplexRational>>> load_pair(
    const std::string& arg, int degree) {
    const json j = detail::load_json(arg, "--times");
    if (j.is_object()) {
        if (!j.contains("p") || !j.contains("ptilde")) throw InputError("--times", "object form needs \"p\" and \"ptilde\"");
        return {detail::padded(times_from_json(j["p"], "--times/p"), degree, "--times/p"),
                detail::padded(times_from_json(j["ptilde"], "--times/ptilde"), degree, "--times/ptilde")};
    }
    auto all = detail::padded(times_from_json(j, "--times"), degree, "--times");
    if (all.size() % 2 != 0) throw InputError("--times", "array form needs p^1..p^k followed by p~^1..p~^k");
    const auto half = static_cast<std::ptrdiff_t>(all.size() / 2);
    return {{all.begin(), all.begin() + half}, {all.begin() + half, all.end()}};
}

inline Report cmd_tau(const std::string& which, const Options& o) {
    if (o.depth < 0) throw InputError("--depth", "must be non-negative");
    Report r;
    r.data["series"] = which;
    r.data["depth"] = o.depth;
    if (which == "cl") {
        CauchySign sign;
        if (o.sign == "alternating") sign = CauchySign::Alternating;
        else if (o.sign == "parity") sign = CauchySign::ParityWeighted;
        else if (o.sign == "printed") sign = CauchySign::Unreconciled;
        else throw InputError("--sign", "expected alternating, parity or printed");
        if (o.depth > 8) throw InputError("--depth", "must be at most 8");
        const auto s = cauchy_littlewood(o.depth, sign);
        r.data["sign"] = o.sign;
        r.data["lhs"] = ojson::parse(json(to_string(s.lhs)).dump());
        r.data["rhs"] = ojson::parse(json(to_string(s.rhs)).dump());
        r.data["holds"] = s.holds();
        r.human.push_back("identity: Cauchy-Littlewood (" + o.sign + " sign)");
        r.human.push_back("LHS=" + to_string(s.lhs));
        r.human.push_back("RHS=" + to_string(s.rhs));
        r.human.push_back(detail::verdict(s.holds()));
        r.status = s.holds() ? 0 : 1;
        return r;
    }
    if (which == "round-dance") {
        if (o.depth > 4) throw InputError("--depth", "must be at most 4");
        auto [p, pt] = load_pair(o.times, o.depth);
        if (static_cast<int>(p.size()) != o.components)
            throw InputError("--times", "expected " + std::to_string(o.components) + " components, got " + std::to_string(p.size()));
        const auto v = round_dance(p, pt, o.depth, o.kappa < 0 ? default_kappa_max(o.depth) : o.kappa);
        r.data["components"] = o.components;
        r.data["value"] = detail::exact_json(v);
        r.human.push_back(to_string(v));
        return r;
    }
    if (which == "hyp") {
        ContentFactorList<ComplexRational> f;
        if (!o.factors.empty()) {
            const json j = detail::load_json(o.factors, "--factors");
            if (!j.is_array()) throw InputError("--factors", "expected an array of shifts");
            for (std::size_t k = 0; k < j.size(); ++k) f.shifts.push_back(scalar_from_json(j[k], "--factors/" + std::to_string(k)));
        }
        if (!o.levels.empty()) {
            const json j = detail::load_json(o.levels, "--levels");
            if (!j.is_array()) throw InputError("--levels", "expected an array of integers");
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (!j[k].is_number_integer()) throw InputError("--levels/" + std::to_string(k), "not an integer");
                f.levels.push_back(j[k].get<int>());
            }
        }
        f.edges = o.edges;
        f.size = o.size < 1 ? 1 : o.size;
        auto [p, pt] = load_pair(o.times, o.depth);
        if (p.size() != 1) throw InputError("--times", "hyp takes exactly two time vectors");
        const auto v = hyp_tau(p[0], pt[0], f, o.depth);
        r.data["value"] = detail::exact_json(v);
        r.human.push_back(to_string(v));
        return r;
    }
    // generating
    const auto g = ribbon_graph_from_json(detail::load_json(o.graph, "--graph"), "--graph");
    const auto src = detail::load_sources(o.sources, o.size, g.edges());
    const auto p = detail::padded(times_from_json(detail::load_json(o.times, "--times"), "--times"), o.depth, "--times");
    if (static_cast<int>(p.size()) != g.num_vertices())
        throw InputError("--times", "expected one time vector per vertex (" + std::to_string(g.num_vertices()) + ")");
    const auto s = generating_expectation(g, src, p, o.depth);
    r.human.push_back("identity: Schur expansion of the averaged round dance");
    r.data["schur_sum"] = detail::exact_json(s.schur_sum);
    r.data["wick_average"] = detail::exact_json(s.wick_average);
    r.data["holds"] = s.holds();
    r.data["within_stability"] = s.within_stability;
    r.human.push_back("SCHUR=" + to_string(s.schur_sum) + " WICK=" + to_string(s.wick_average) + " " +
                      detail::verdict(s.holds()));
    if (!s.within_stability) r.human.push_back("note: depth exceeds N, outside the range where the identity is asserted");
    bool ok = s.holds();
    if (o.reduce) {
        const auto red = specialization_reducer(g, src, p);
        const auto h = evaluate_reduction(red, g, src, p, o.depth);
        r.data["case"] = red.case_id;
        r.data["hyp_tau"] = detail::exact_json(h);
        r.human.push_back("hypergeometric case " + std::to_string(red.case_id) + ": HYP=" + to_string(h) + " " +
                          detail::verdict(h == s.schur_sum));
        ok = ok && h == s.schur_sum;
    }
    r.status = ok ? 0 : 1;
    return r;
}

inline void render(const Report& r, Format f, std::ostream& out) {
    if (f == Format::Json) {
        ojson d = r.data;
        d["status"] = r.status;
        out << d.dump(2) << "\n";
    } else if (f == Format::Tsv) {
        if (!r.tsv.empty()) {
            out << r.tsv;
            return;
        }
        for (const auto& [k, v] : r.data.items()) out << k << "\t" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else {
        for (const auto& line : r.human) out << line << "\n";
    }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and Monte Carlo checks for Schur-function identities of Ginibre ensembles", "taulab"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "human | json | tsv")->check(CLI::IsMember({"human", "json", "tsv"}));

    auto* schur = app.add_subcommand("schur", "Schur function in power sums");
    schur->add_option("--lambda", o.lambda, "partition, e.g. [2,1]")->required();
    schur->add_option("--degree", o.degree, "truncation degree (default |lambda|)");

    auto* chart = app.add_subcommand("chartable", "normalized character table of S_d");
    chart->add_option("--weight", o.weight, "d")->required();

    auto* hur = app.add_subcommand("hurwitz", "Hurwitz number of a closed surface");
    hur->add_option("--euler", o.euler, "Euler characteristic of the base");
    hur->add_option("--profiles", o.profiles, "ramification profiles, e.g. [[2],[2]]")->required();
    hur->add_option("--method", o.method, "frobenius | bruteforce");

    auto* graph = app.add_subcommand("graph", "faces, Euler characteristic and dual of a ribbon graph");
    graph->add_option("--graph", o.graph, "graph JSON file or inline JSON")->required();

    auto* verify = app.add_subcommand("verify", "check an exact identity");
    verify->require_subcommand(1);
    for (const char* name : {"evv", "evf", "polygons"}) {
        auto* s = verify->add_subcommand(name);
        s->add_option("--graph", o.graph, "graph JSON")->required();
        s->add_option("--sources", o.sources, "sources JSON (identity when omitted)");
        s->add_option("--size", o.size, "matrix size N");
        if (std::string(name) == "polygons") {
            s->add_option("--mu", o.mu, "one partition for every face");
            s->add_option("--mus", o.mus, "one partition per face");
        } else {
            s->add_option("--lambda", o.lambda, "one partition for every vertex/face");
            s->add_option("--lambdas", o.lambdas, "one partition per vertex/face");
        }
    }

    auto* mc = app.add_subcommand("mc", "Monte Carlo expectation over the Ginibre ensemble");
    mc->add_option("--observable", o.observable, "e.g. \"tr(Z1 C1 Zd1 C-1)\"")->required();
    auto* seed_opt = mc->add_option("--seed", o.seed, "RNG seed (required)");
    mc->add_option("--samples", o.samples, "number of samples")->check(CLI::Range(std::size_t{100}, std::size_t{100000000}));
    mc->add_option("--size", o.size, "matrix size N");
    mc->add_option("--sources", o.sources, "sources JSON");
    mc->add_option("--matrices", o.matrices, "number of independent matrices");
    mc->add_flag("--exact", o.exact, "also compute the exact Wick value and compare");

    auto* tau = app.add_subcommand("tau", "truncated tau-function series");
    tau->require_subcommand(1);
    auto* cl = tau->add_subcommand("cl", "Cauchy-Littlewood identity");
    cl->add_option("--depth", o.depth, "truncation degree");
    cl->add_option("--sign", o.sign, "alternating | parity | printed");
    auto* rd = tau->add_subcommand("round-dance", "multi-component round-dance series");
    rd->add_option("--components", o.components, "number of components");
    rd->add_option("--times", o.times, "times JSON: {\"p\":[...],\"ptilde\":[...]}")->required();
    rd->add_option("--depth", o.depth, "truncation degree");
    rd->add_option("--kappa", o.kappa, "rank cutoff");
    auto* hyp = tau->add_subcommand("hyp", "hypergeometric series");
    hyp->add_option("--factors", o.factors, "shifts a_c, e.g. [1.5]");
    hyp->add_option("--levels", o.levels, "levels N_b, e.g. [3,3]");
    hyp->add_option("--edges", o.edges, "n in the weight N^{-n|lambda|}");
    hyp->add_option("--size", o.size, "N");
    hyp->add_option("--times", o.times, "two time vectors")->required();
    hyp->add_option("--depth", o.depth, "truncation degree");
    auto* gen = tau->add_subcommand("generating", "averaged round dance over a ribbon graph");
    gen->add_option("--graph", o.graph, "graph JSON")->required();
    gen->add_option("--sources", o.sources, "sources JSON");
    gen->add_option("--size", o.size, "matrix size N");
    gen->add_option("--times", o.times, "one time vector per vertex")->required();
    gen->add_option("--depth", o.depth, "truncation degree");
    gen->add_flag("--reduce", o.reduce, "also evaluate the hypergeometric reduction");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "taulab: " << e.what() << "\n";
        return 2;
    }

    const Format format = o.format == "json" ? Format::Json : o.format == "tsv" ? Format::Tsv : Format::Human;
    try {
        Report r;
        if (schur->parsed()) r = cmd_schur(o);
        else if (chart->parsed()) r = cmd_chartable(o);
        else if (hur->parsed()) r = cmd_hurwitz(o);
        else if (graph->parsed()) r = cmd_graph(o);
        else if (verify->parsed()) r = cmd_verify(verify->get_subcommands().front()->get_name(), o);
        else if (mc->parsed()) r = cmd_mc(o, seed_opt->count() > 0);
        else r = cmd_tau(tau->get_subcommands().front()->get_name(), o);
        render(r, format, out);
        return r.status;
    } catch (const InputError& e) {
        err << "taulab: input error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "taulab: " << e.what() << "\n";
    } catch (const std::out_of_range& e) {
        err << "taulab: " << e.what() << "\n";
    }
    return 2;
}

}  // namespace taulab::cli

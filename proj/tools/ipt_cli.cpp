// Command-line front end for the invariant-tensor library: exact coupling
// scalars, invariant bases, state-file persistence, the four-party no-go
// search, Monte-Carlo concentration runs, AME constructions, and the n=5,6
// exploratory scan.
//
// Exit codes: 0 success / verdict pass, 1 verdict fail (e.g. `verify` on a
// non-perfect state), 2 usage or input error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ipt/ame.hpp"
#include "ipt/basis.hpp"
#include "ipt/coupling.hpp"
#include "ipt/errors.hpp"
#include "ipt/gf.hpp"
#include "ipt/half_int.hpp"
#include "ipt/latin.hpp"
#include "ipt/nogo.hpp"
#include "ipt/random_invariant.hpp"
#include "ipt/scan.hpp"
#include "ipt/ssr.hpp"
#include "ipt/statefile.hpp"
#include "ipt/tensor.hpp"
#include "ipt/version.hpp"

namespace {

using nlohmann::json;

std::string iso_utc_now() {
    using namespace std::chrono;
    const auto now = system_clock::now();
    const auto ms = duration_cast<milliseconds>(now.time_since_epoch()) % 1000;
    const std::time_t t = system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char base[32];
    std::strftime(base, sizeof base, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[48];
    std::snprintf(out, sizeof out, "%s.%03dZ", base, static_cast<int>(ms.count()));
    return out;
}

std::string join_command_line(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        const std::string a = argv[i];
        if (a.empty() || a.find_first_of(" \t\"'\\") != std::string::npos) {
            s += '"';
            for (char c : a) {
                if (c == '"' || c == '\\') s += '\\';
                s += c;
            }
            s += '"';
        } else {
            s += a;
        }
    }
    return s;
}

std::string fmt_double(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", x);
    return b;
}

std::string trimmed(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<ipt::HalfInt> parse_spin_list(const std::string& text) {
    std::vector<ipt::HalfInt> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(ipt::HalfInt::parse(trimmed(tok)));
    if (out.empty()) throw ipt::ArgumentError("empty spin list");
    return out;
}

double parse_one_double(const std::string& tok) {
    const std::string t = trimmed(tok);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ipt::ArgumentError("not a number: '" + t + "'");
    }
    if (used != t.size()) throw ipt::ArgumentError("not a number: '" + t + "'");
    return v;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_one_double(tok));
    if (out.empty()) throw ipt::ArgumentError("empty number list");
    return out;
}

// Coefficient list: entries separated by ';', each "re,im" (or bare "re").
std::vector<ipt::Complex> parse_complex_list(const std::string& text) {
    std::vector<ipt::Complex> out;
    std::stringstream ss(text);
    std::string entry;
    while (std::getline(ss, entry, ';')) {
        const auto parts = [&] {
            std::vector<std::string> p;
            std::stringstream es(entry);
            std::string tok;
            while (std::getline(es, tok, ',')) p.push_back(tok);
            return p;
        }();
        if (parts.empty() || parts.size() > 2)
            throw ipt::ArgumentError("coefficient entries must be 're' or 're,im': '" + entry + "'");
        const double re = parse_one_double(parts[0]);
        const double im = parts.size() == 2 ? parse_one_double(parts[1]) : 0.0;
        out.emplace_back(re, im);
    }
    if (out.empty()) throw ipt::ArgumentError("empty coefficient list");
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ipt::ArgumentError("cannot open file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& bytes) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ipt::ArgumentError("cannot open for writing: " + path);
    f << bytes;
    f.flush();
    if (!f) throw ipt::ArgumentError("write failed: " + path);
}

json spins_json(const std::vector<ipt::HalfInt>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(s.str());
    return a;
}

json ssr_json(const ipt::SSR& s) {
    return json{{"exact", s.str()}, {"value", s.to_double()}};
}

json complex_list_json(const std::vector<ipt::Complex>& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(json::array({c.real(), c.imag()}));
    return a;
}

// Matches the documented report schema: per-subset records carry the subset,
// its size k, the Frobenius deviation from the maximally mixed marginal, the
// two entropies, and the flat-spectrum entropy ceiling ln(dim).
json report_json(const ipt::PerfectnessReport& rep) {
    json recs = json::array();
    for (const auto& r : rep.records) {
        recs.push_back(json{{"subset", r.parties},
                            {"k", static_cast<int>(r.parties.size())},
                            {"deviation_frobenius", r.deviation},
                            {"S2", r.renyi2},
                            {"SvN", r.von_neumann},
                            {"max_entropy", std::log(static_cast<double>(r.dim))}});
    }
    return json{{"tol", rep.tol},
                {"max_deviation", rep.max_deviation},
                {"perfect", rep.perfect},
                {"verdict", rep.perfect ? "pass" : "fail"},
                {"records", recs}};
}

std::size_t count_nonzero(const ipt::DenseTensor& t) {
    std::size_t n = 0;
    for (const auto& a : t.amps)
        if (a != ipt::Complex(0, 0)) ++n;
    return n;
}

void append_run_record(const std::string& cmdline, const std::string& started,
                       const json& config, const json& outputs, int exit_code) {
    try {
        std::filesystem::create_directories("runs");
        const json rec{{"command", cmdline},
                       {"config", config},
                       {"started", started},
                       {"finished", iso_utc_now()},
                       {"outputs", outputs},
                       {"exit_code", exit_code},
                       {"tool_version", ipt::kVersion}};
        std::ofstream f("runs/records.jsonl", std::ios::app | std::ios::binary);
        if (f) f << rec.dump() << '\n';
    } catch (...) {
        // Recording must never change the command's own outcome.
    }
}

// Per-subcommand option storage. Spins arrive as strings so that the
// "3/2" / "1.5" / "2j=3" forms all work.
struct CommandOptions {
    // shared
    std::vector<std::string> json_arg;  // --json [FILE]
    bool json_requested = false;
    std::string out;
    std::uint64_t seed = 0;
    int threads = 1;

    // spins and angular momentum labels
    std::string j1, j2, j3, m1, m2, m3, J, M, j;
    std::string spins;

    // command-specific
    std::string method;  // invdim: exact|integral|both; ame: mds|mols
    std::string alpha;   // assemble4 coefficient list
    int ame_d = 0;
    int ame_alpha = 2;
    std::string l1, l2;
    int restarts = 0;
    int iterations = 0;
    int n_samples = 0;
    std::string deltas = "0.5,1.0";
    std::string csv;
    std::string state_path;
    double tol = 1e-10;
};

struct Emitter {
    bool as_json = false;
    std::string json_file;
    std::string human;

    void line(const std::string& s) { human += s + "\n"; }

    void finish(const json& outputs) const {
        if (as_json)
            std::cout << outputs.dump(2) << '\n';
        else
            std::cout << human;
        if (!json_file.empty()) write_text_file(json_file, outputs.dump(2) + "\n");
    }
};

ipt::StateFileMeta make_meta(const std::string& cmdline) {
    ipt::StateFileMeta meta;
    meta.creator = cmdline;
    return meta;
}

ipt::StateFileMeta make_meta(const std::string& cmdline, std::uint64_t seed) {
    ipt::StateFileMeta meta;
    meta.creator = cmdline;
    meta.has_seed = true;
    meta.seed = seed;
    return meta;
}

int run_cgc(const CommandOptions& o, Emitter& em, json& config, json& outputs) {
    const auto j1 = ipt::HalfInt::parse(o.j1), m1 = ipt::HalfInt::parse(o.m1);
    const auto j2 = ipt::HalfInt::parse(o.j2), m2 = ipt::HalfInt::parse(o.m2);
    const auto J = ipt::HalfInt::parse(o.J), M = ipt::HalfInt::parse(o.M);
    config = json{{"j1", j1.str()}, {"m1", m1.str()}, {"j2", j2.str()},
                  {"m2", m2.str()}, {"J", J.str()},   {"M", M.str()}};
    const ipt::SSR c = ipt::cgc(j1, m1, j2, m2, J, M);
    outputs = config;
    outputs["exact"] = c.str();
    outputs["value"] = c.to_double();
    em.line("<" + j1.str() + " " + m1.str() + "; " + j2.str() + " " + m2.str() + " | " + J.str() +
            " " + M.str() + "> = " + c.str() + " = " + fmt_double(c.to_double()));
    return 0;
}

int run_threej(const CommandOptions& o, Emitter& em, json& config, json& outputs) {
    const auto j1 = ipt::HalfInt::parse(o.j1), j2 = ipt::HalfInt::parse(o.j2),
               j3 = ipt::HalfInt::parse(o.j3);
    const auto m1 = ipt::HalfInt::parse(o.m1), m2 = ipt::HalfInt::parse(o.m2),
               m3 = ipt::HalfInt::parse(o.m3);
    config = json{{"j1", j1.str()}, {"j2", j2.str()}, {"j3", j3.str()},
                  {"m1", m1.str()}, {"m2", m2.str()}, {"m3", m3.str()}};
    const ipt::SSR w = ipt::wigner3j(j1, j2, j3, m1, m2, m3);
    outputs = config;
    outputs["exact"] = w.str();
    outputs["value"] = w.to_double();
    em.line("(" + j1.str() + " " + j2.str() + " " + j3.str() + "; " + m1.str() + " " + m2.str() +
            " " + m3.str() + ") = " + w.str() + " = " + fmt_double(w.to_double()));
    return 0;
}

int run_invdim(const CommandOptions& o, Emitter& em, json& config, json& outputs) {
    const auto spins = parse_spin_list(o.spins);
    if (o.method != "exact" && o.method != "integral" && o.method != "both")
        throw ipt::ArgumentError("--method must be exact, integral, or both");
    config = json{{"spins", spins_json(spins)}, {"method", o.method}};
    outputs = json{{"spins", spins_json(spins)}};
    std::int64_t exact = -1, integral = -1;
    if (o.method == "exact" || o.method == "both") {
        exact = ipt::inv_dim_exact(spins);
        outputs["exact"] = exact;
        em.line("exact    = " + std::to_string(exact));
    }
    if (o.method == "integral" || o.method == "both") {
        integral = ipt::inv_dim_integral(spins);
        outputs["integral"] = integral;
        em.line("integral = " + std::to_string(integral));
    }
    if (o.method == "both") {
        if (exact != integral)
            throw ipt::NumericalError("invariant dimension mismatch: exact " +
                                      std::to_string(exact) + " vs integral " +
                                      std::to_string(integral));
        outputs["agree"] = true;
    }
    return 0;
}

int run_ipt3(const CommandOptions& o, Emitter& em, const std::string& cmdline, json& config,
             json& outputs) {
    const auto j1 = ipt::HalfInt::parse(o.j1), j2 = ipt::HalfInt::parse(o.j2),
               j3 = ipt::HalfInt::parse(o.j3);
    config = json{{"j1", j1.str()}, {"j2", j2.str()}, {"j3", j3.str()}, {"out", o.out}};
    const ipt::DenseTensor psi = ipt::trivalent_ipt(j1, j2, j3);
    write_text_file(o.out, ipt::encode_state(psi, make_meta(cmdline)));
    outputs = json{{"file", o.out},
                   {"dims", psi.dims},
                   {"n", psi.parties()},
                   {"records", count_nonzero(psi)},
                   {"norm", psi.norm()}};
    em.line("wrote " + o.out + " (" + std::to_string(count_nonzero(psi)) + " amplitude records)");
    return 0;
}

int run_basis4(const CommandOptions& o, Emitter& em, const std::string& cmdline, json& config,
               json& outputs) {
    const auto j = ipt::HalfInt::parse(o.j);
    config = json{{"j", j.str()}, {"out", o.out}};
    const ipt::CoupledBasis basis = ipt::coupled_basis4(j, j, j, j);
    std::filesystem::create_directories(o.out);
    json labels = json::array(), files = json::array();
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const std::string label = basis.labels[k][0].str();
        const std::string file = (std::filesystem::path(o.out) / ("I" + label + ".json")).string();
        write_text_file(file, ipt::encode_state(basis.vectors[k], make_meta(cmdline)));
        labels.push_back(label);
        files.push_back(file);
    }
    outputs = json{{"j", j.str()},
                   {"path", basis.path},
                   {"dim", basis.size()},
                   {"labels", labels},
                   {"files", files}};
    em.line("wrote " + std::to_string(basis.size()) + " basis state files to " + o.out);
    return 0;
}

int run_assemble4(const CommandOptions& o, Emitter& em, const std::string& cmdline, json& config,
                  json& outputs) {
    const auto j = ipt::HalfInt::parse(o.j);
    const auto alpha = parse_complex_list(o.alpha);
    config = json{{"j", j.str()}, {"alpha", complex_list_json(alpha)}, {"out", o.out}};
    const ipt::DenseTensor psi = ipt::assemble_psi4(j, alpha);
    write_text_file(o.out, ipt::encode_state(psi, make_meta(cmdline)));
    const double residual = ipt::invariance_residual(psi);
    outputs = json{{"file", o.out},
                   {"j", j.str()},
                   {"dims", psi.dims},
                   {"records", count_nonzero(psi)},
                   {"invariance_residual", residual}};
    em.line("wrote " + o.out + " (invariance residual " + fmt_double(residual) + ")");
    return 0;
}

json certificate_json(const ipt::GapCertificate& c) {
    return json{{"j", c.j.str()},
                {"restarts", c.restarts},
                {"iterations", c.iterations},
                {"seed", c.seed},
                {"gap", c.gap},
                {"best_phases", c.best_phases},
                {"best_dev34", c.best_dev34},
                {"best_dev24", c.best_dev24},
                {"best_dev23", c.best_dev23},
                {"best_r_even", c.best_r_even},
                {"best_r_plain", c.best_r_plain},
                {"max_dev34", c.max_dev34},
                {"min_pinned", c.min_pinned},
                {"full_evaluations", c.full_evaluations},
                {"pinned_evaluations", c.pinned_evaluations}};
}

int run_nogo(const CommandOptions& o, Emitter& em, json& config, json& outputs) {
    const auto j = ipt::HalfInt::parse(o.j);
    config = json{{"j", j.str()},       {"restarts", o.restarts}, {"iterations", o.iterations},
                  {"seed", o.seed},     {"threads", o.threads},   {"out", o.out}};
    const ipt::GapCertificate cert = ipt::nogo_gap(j, o.restarts, o.iterations, o.seed, o.threads);
    outputs = certificate_json(cert);
    if (!o.out.empty()) write_text_file(o.out, outputs.dump(2) + "\n");
    em.line("gap = " + fmt_double(cert.gap) + " over " + std::to_string(cert.restarts) +
            " restarts x " + std::to_string(cert.iterations) + " iterations (seed " +
            std::to_string(cert.seed) + ")");
    em.line("max dev34 seen = " + fmt_double(cert.max_dev34) +
            ", min pinned residual = " + fmt_double(cert.min_pinned));
    if (!o.out.empty()) em.line("wrote certificate to " + o.out);
    return 0;
}

int run_sample(const CommandOptions& o, Emitter& em, json& config, json& outputs) {
    const auto j = ipt::HalfInt::parse(o.j);
    const auto deltas = parse_double_list(o.deltas);
    config = json{{"j", j.str()},   {"n", o.n_samples}, {"seed", o.seed},
                  {"deltas", deltas}, {"threads", o.threads}, {"csv", o.csv}};
    const ipt::SampleStats st =
        ipt::concentration_experiment(j, o.n_samples, o.seed, deltas, o.threads);

    if (!o.csv.empty()) {
        std::string csv = "index,Z1,S2\n";
        for (std::size_t i = 0; i < st.z1_samples.size(); ++i)
            csv += std::to_string(i) + "," + fmt_double(st.z1_samples[i]) + "," +
                   fmt_double(st.s2_samples[i]) + "\n";
        write_text_file(o.csv, csv);
    }

    const auto& an = st.analytic;
    json tails = json::array();
    bool all_ok = true;
    for (const auto& t : st.tails) {
        tails.push_back(json{{"delta", t.delta},
                             {"z1_tail_freq", t.z1_tail_freq},
                             {"z1_bound", t.z1_bound},
                             {"z1_bound_ok", t.z1_bound_ok},
                             {"s2_close_freq", t.s2_close_freq},
                             {"p_delta", t.p_delta},
                             {"s2_rate_ok", t.s2_rate_ok}});
        all_ok = all_ok && t.z1_bound_ok && t.s2_rate_ok;
    }
    outputs = json{
        {"j", st.j.str()},
        {"n", st.n_samples},
        {"seed", st.seed},
        {"z1_mean", st.z1_mean},
        {"z1_var", st.z1_var},
        {"z1_se", st.z1_se},
        {"z1sq_mean", st.z1sq_mean},
        {"z1sq_var", st.z1sq_var},
        {"z1sq_se", st.z1sq_se},
        {"s2_mean", st.s2_mean},
        {"s2_var", st.s2_var},
        {"z1_quartiles", st.z1_quartiles},
        {"s2_quartiles", st.s2_quartiles},
        {"variance_defined", st.variance_defined},
        {"analytic",
         json{{"dim_inv", an.dim_inv},
              {"labels", spins_json(an.labels)},
              {"lambda", json{{"exact", an.lambda.str()}, {"value", an.lambda_d}}},
              {"z1bar", json{{"exact", an.z1bar.str()}, {"value", an.z1bar_d}}},
              {"z1sqbar", json{{"exact", an.z1sqbar.str()}, {"value", an.z1sqbar_d}}},
              {"var_z1", json{{"exact", an.var_z1.str()}, {"value", an.var_z1_d}}},
              {"z0bar", an.z0bar.str()},
              {"s2bar", an.s2bar},
              {"max_s2", an.max_s2}}},
        {"tails", tails},
        {"verdict", all_ok ? "pass" : "fail"},
    };
    em.line("Z1:  mean " + fmt_double(st.z1_mean) + "  (analytic " + fmt_double(an.z1bar_d) +
            " = " + an.z1bar.str() + ", SE " + fmt_double(st.z1_se) + ")");
    em.line("Z1^2: mean " + fmt_double(st.z1sq_mean) + " (analytic " + fmt_double(an.z1sqbar_d) +
            " = " + an.z1sqbar.str() + ", SE " + fmt_double(st.z1sq_se) + ")");
    em.line("S2:  mean " + fmt_double(st.s2_mean) + "  (analytic " + fmt_double(an.s2bar) +
            ", ceiling " + fmt_double(an.max_s2) + ")");
    for (const auto& t : st.tails) {
        em.line("delta " + fmt_double(t.delta) + ": tail freq " + fmt_double(t.z1_tail_freq) +
                " vs bound " + fmt_double(t.z1_bound) + (t.z1_bound_ok ? " [ok]" : " [FAIL]") +
                "; close rate " + fmt_double(t.s2_close_freq) + " vs " + fmt_double(t.p_delta) +
                (t.s2_rate_ok ? " [ok]" : " [FAIL]"));
    }
    if (!o.csv.empty()) em.line("wrote samples to " + o.csv);
    em.line(all_ok ? "verdict: pass" : "verdict: fail");
    return all_ok ? 0 : 1;
}

int run_ame(const CommandOptions& o, Emitter& em, const std::string& cmdline, bool alpha_given,
            json& config, json& outputs) {
    if (o.method != "mds" && o.method != "mols")
        throw ipt::ArgumentError("--method must be mds or mols");
    ipt::DenseTensor psi;
    if (o.method == "mols") {
        if (o.l1.empty() || o.l2.empty())
            throw ipt::ArgumentError("--method mols requires --l1 and --l2 square files");
        config = json{{"method", "mols"}, {"l1", o.l1}, {"l2", o.l2}, {"out", o.out}};
        // Defective user-supplied squares are an input problem, not a library
        // invariant failure, so they map to the usage-error exit code.
        try {
            const ipt::LatinSquare a = ipt::parse_latin(read_text_file(o.l1));
            const ipt::LatinSquare b = ipt::parse_latin(read_text_file(o.l2));
            psi = ipt::mols_state(a, b);
        } catch (const ipt::InvariantError& e) {
            throw ipt::ArgumentError(e.what());
        }
        outputs = json{{"method", "mols"}, {"l1", o.l1}, {"l2", o.l2}};
    } else {
        if (o.ame_d < 2) throw ipt::ArgumentError("--d is required (local dimension >= 2)");
        config = json{{"method", "mds"}, {"d", o.ame_d}, {"out", o.out}};
        if (alpha_given) {
            config["alpha"] = o.ame_alpha;
            psi = ipt::mds_state(ipt::gf_field(o.ame_d), o.ame_alpha);
        } else {
            psi = ipt::ame_state(o.ame_d);
        }
        outputs = json{{"method", "mds"}, {"d", o.ame_d}};
        if (alpha_given) outputs["alpha"] = o.ame_alpha;
    }
    write_text_file(o.out, ipt::encode_state(psi, make_meta(cmdline)));
    outputs["file"] = o.out;
    outputs["dims"] = psi.dims;
    outputs["records"] = count_nonzero(psi);
    em.line("wrote " + o.out + " (dims " + std::to_string(psi.dims[0]) + "^4, " +
            std::to_string(count_nonzero(psi)) + " amplitude records)");
    return 0;
}

int run_verify(const CommandOptions& o, Emitter& em, json& config, json& outputs) {
    config = json{{"state", o.state_path}, {"tol", o.tol}};
    const ipt::DecodedState dec = ipt::decode_state_full(read_text_file(o.state_path));
    const ipt::PerfectnessReport rep = ipt::perfectness_report(dec.state, o.tol);
    outputs = report_json(rep);
    outputs["file"] = o.state_path;
    outputs["n"] = dec.state.parties();
    outputs["dims"] = dec.state.dims;
    if (!dec.meta.creator.empty()) outputs["creator"] = dec.meta.creator;
    em.line(std::string(rep.perfect ? "PERFECT" : "not perfect") + ": max deviation " +
            fmt_double(rep.max_deviation) + " vs tol " + fmt_double(rep.tol) + " over " +
            std::to_string(rep.records.size()) + " subsets");
    for (const auto& r : rep.records) {
        std::string subset;
        for (std::size_t i = 0; i < r.parties.size(); ++i)
            subset += (i ? "," : "") + std::to_string(r.parties[i]);
        em.line("  {" + subset + "}: deviation " + fmt_double(r.deviation) + ", S2 " +
                fmt_double(r.renyi2) + ", SvN " + fmt_double(r.von_neumann));
    }
    return rep.perfect ? 0 : 1;
}

int run_scan56(const CommandOptions& o, Emitter& em, json& config, json& outputs) {
    const auto spins = parse_spin_list(o.spins);
    config = json{{"spins", spins_json(spins)}, {"restarts", o.restarts},
                  {"iterations", o.iterations}, {"seed", o.seed},
                  {"threads", o.threads}};
    const ipt::ScanReport rep = ipt::scan56(spins, o.restarts, o.iterations, o.seed, o.threads);
    outputs = json{{"spins", spins_json(rep.spins)},
                   {"subspace_dim", rep.subspace_dim},
                   {"restarts", rep.restarts},
                   {"iterations", rep.iterations},
                   {"seed", rep.seed},
                   {"best_deviation", rep.best_deviation},
                   {"best_coefficients", complex_list_json(rep.best_coefficients)},
                   {"restart_minima", rep.restart_minima},
                   {"evaluations", rep.evaluations},
                   {"report", report_json(rep.best_report)}};
    em.line("invariant subspace dimension " + std::to_string(rep.subspace_dim));
    em.line("best max subset deviation = " + fmt_double(rep.best_deviation) + " after " +
            std::to_string(rep.restarts) + " restarts x " + std::to_string(rep.iterations) +
            " iterations");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariant perfect tensor toolkit: exact SU(2) coupling scalars, invariant "
                 "bases, state files, the four-party no-go search, Monte-Carlo concentration "
                 "runs, and AME constructions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ipt::kVersion);

    CommandOptions o;
    CLI::Option* ame_alpha_opt = nullptr;

    const auto add_shared = [&](CLI::App* sub) {
        sub->add_option("--json", o.json_arg,
                        "emit machine-readable JSON to stdout (optionally also to FILE)")
            ->expected(0, 1);
    };
    const auto add_threads = [&](CLI::App* sub) {
        sub->add_option("--threads", o.threads, "worker threads (affects wall time only)")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* cgc = app.add_subcommand("cgc", "exact Clebsch-Gordan coefficient");
    cgc->add_option("--j1", o.j1)->required();
    cgc->add_option("--m1", o.m1)->required();
    cgc->add_option("--j2", o.j2)->required();
    cgc->add_option("--m2", o.m2)->required();
    cgc->add_option("--J", o.J)->required();
    cgc->add_option("--M", o.M)->required();
    add_shared(cgc);

    CLI::App* threej = app.add_subcommand("threej", "exact Wigner 3j symbol");
    threej->add_option("--j1", o.j1)->required();
    threej->add_option("--j2", o.j2)->required();
    threej->add_option("--j3", o.j3)->required();
    threej->add_option("--m1", o.m1)->required();
    threej->add_option("--m2", o.m2)->required();
    threej->add_option("--m3", o.m3)->required();
    add_shared(threej);

    CLI::App* invdim = app.add_subcommand("invdim", "invariant-subspace dimension");
    invdim->add_option("--spins", o.spins, "comma-separated spins, e.g. 1,1,1,1")->required();
    invdim->add_option("--method", o.method, "exact | integral | both")->default_val("both");
    add_shared(invdim);

    CLI::App* ipt3 = app.add_subcommand("ipt3", "trivalent invariant perfect tensor state file");
    ipt3->add_option("--j1", o.j1)->required();
    ipt3->add_option("--j2", o.j2)->required();
    ipt3->add_option("--j3", o.j3)->required();
    ipt3->add_option("--out", o.out, "state file to write")->required();
    add_shared(ipt3);

    CLI::App* basis4 = app.add_subcommand(
        "basis4", "orthonormal invariant basis for four equal spins, one state file per label");
    basis4->add_option("--j", o.j)->required();
    basis4->add_option("--out", o.out, "directory for the basis state files")->required();
    add_shared(basis4);

    CLI::App* assemble4 = app.add_subcommand(
        "assemble4", "assemble a four-party invariant state from pair-basis coefficients");
    assemble4->add_option("--j", o.j)->required();
    assemble4
        ->add_option("--alpha", o.alpha,
                     "unit-norm coefficients: 're,im' entries separated by ';'")
        ->required();
    assemble4->add_option("--out", o.out, "state file to write")->required();
    add_shared(assemble4);

    CLI::App* nogo = app.add_subcommand(
        "nogo", "minimize the four-party perfectness deviation over the free phases");
    nogo->add_option("--j", o.j)->required();
    nogo->add_option("--restarts", o.restarts)->required()->check(CLI::PositiveNumber);
    nogo->add_option("--iters", o.iterations)->required()->check(CLI::PositiveNumber);
    nogo->add_option("--seed", o.seed, "RNG seed (required: runs must be reproducible)")
        ->required();
    nogo->add_option("--out", o.out, "certificate JSON file");
    add_threads(nogo);
    add_shared(nogo);

    CLI::App* sample = app.add_subcommand(
        "sample", "Monte-Carlo concentration experiment for random four-party invariants");
    sample->add_option("--j", o.j)->required();
    sample->add_option("--n", o.n_samples, "number of samples")->required()
        ->check(CLI::PositiveNumber);
    sample->add_option("--seed", o.seed, "RNG seed (required: runs must be reproducible)")
        ->required();
    sample->add_option("--deltas", o.deltas, "comma-separated deltas for the tail checks")
        ->capture_default_str();
    sample->add_option("--csv", o.csv, "write per-sample CSV (index,Z1,S2)");
    add_threads(sample);
    add_shared(sample);

    CLI::App* ame = app.add_subcommand(
        "ame", "absolutely maximally entangled four-party state of local dimension d");
    ame->add_option("--d", o.ame_d, "local dimension");
    ame->add_option("--method", o.method, "mds | mols")->default_val("mds");
    ame_alpha_opt = ame->add_option(
        "--alpha", o.ame_alpha, "generator element for prime-power d (default canonical 2)");
    ame->add_option("--l1", o.l1, "first Latin square file (d lines of d integers)");
    ame->add_option("--l2", o.l2, "second Latin square file");
    ame->add_option("--out", o.out, "state file to write")->required();
    add_shared(ame);

    CLI::App* verify = app.add_subcommand("verify", "check a state file for perfectness");
    verify->add_option("--state", o.state_path, "state file to verify")->required();
    verify->add_option("--tol", o.tol, "deviation tolerance")->capture_default_str();
    add_shared(verify);

    CLI::App* scan56 = app.add_subcommand(
        "scan56", "exploratory minimization of the perfectness deviation for n=5,6 spins");
    scan56->add_option("--spins", o.spins, "comma-separated spins (5 or 6 of them)")->required();
    scan56->add_option("--restarts", o.restarts)->required()->check(CLI::PositiveNumber);
    scan56->add_option("--iters", o.iterations)->required()->check(CLI::PositiveNumber);
    scan56->add_option("--seed", o.seed, "RNG seed (required: runs must be reproducible)")
        ->required();
    add_threads(scan56);
    add_shared(scan56);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const std::string cmdline = join_command_line(argc, argv);
    const std::string started = iso_utc_now();

    Emitter em;
    em.as_json = !o.json_arg.empty();
    if (!o.json_arg.empty()) em.json_file = o.json_arg.front();
    // --json with no value: CLI11 leaves the vector empty but counts the flag.
    for (CLI::App* sub : app.get_subcommands())
        if (sub->count("--json") > 0) em.as_json = true;

    json config, outputs;
    int code = 0;
    std::string error_text;
    try {
        if (app.got_subcommand(cgc)) code = run_cgc(o, em, config, outputs);
        else if (app.got_subcommand(threej)) code = run_threej(o, em, config, outputs);
        else if (app.got_subcommand(invdim)) code = run_invdim(o, em, config, outputs);
        else if (app.got_subcommand(ipt3)) code = run_ipt3(o, em, cmdline, config, outputs);
        else if (app.got_subcommand(basis4)) code = run_basis4(o, em, cmdline, config, outputs);
        else if (app.got_subcommand(assemble4))
            code = run_assemble4(o, em, cmdline, config, outputs);
        else if (app.got_subcommand(nogo)) code = run_nogo(o, em, config, outputs);
        else if (app.got_subcommand(sample)) code = run_sample(o, em, config, outputs);
        else if (app.got_subcommand(ame))
            code = run_ame(o, em, cmdline, ame_alpha_opt->count() > 0, config, outputs);
        else if (app.got_subcommand(verify)) code = run_verify(o, em, config, outputs);
        else if (app.got_subcommand(scan56)) code = run_scan56(o, em, config, outputs);
        em.finish(outputs);
    } catch (const ipt::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = 2;
        error_text = e.what();
    } catch (const ipt::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = 2;
        error_text = e.what();
    } catch (const ipt::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        code = 3;
        error_text = e.what();
    } catch (const ipt::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        code = 3;
        error_text = e.what();
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        code = 3;
        error_text = e.what();
    }

    if (code >= 2) outputs = json{{"error", error_text}};
    append_run_record(cmdline, started, config, outputs, code);
    return code;
}

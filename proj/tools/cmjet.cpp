#include <chrono>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmjet/io.hpp"
#include "cmjet/jets.hpp"
#include "cmjet/newton.hpp"
#include "cmjet/normalform.hpp"
#include "cmjet/selftest.hpp"
#include "cmjet/trace.hpp"

namespace {

using namespace cmjet;

constexpr int kExitHolds = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitUsage = 3;

int exit_code(Status s) {
    switch (s) {
        case Status::Holds: return kExitHolds;
        case Status::Violated: return kExitViolated;
        case Status::Undetermined: return kExitUndetermined;
    }
    return kExitUndetermined;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

// Loads a hypersurface file and brings the Levi part to the unit form if the
// input is a general strongly pseudoconvex graph.
HypersurfaceModel load_model(const std::string& path, int K, VerdictReport& report) {
    report.input_hashes[path] = fnv1a_file(path);
    HypersurfaceFile f = read_hypersurface_file(path);
    int cap = std::min(K, f.max_weight);
    if (f.h.weight_part(2) == WPoly::norm_sq(f.n)) return model_from_graph(f.h.truncate(cap), cap);
    LeviResult lr = levi_normalize(f.h.truncate(cap), cap);
    report.certificates[path] =
        lr.exact ? "levi part normalized exactly" : "levi part normalized with approximate scaling";
    return lr.model;
}

void emit(const VerdictReport& report) { std::cout << report.to_json(); }

std::vector<Rat> parse_alpha_list(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw std::runtime_error("empty alpha list");
    return out;
}

int cmd_normalize(const std::string& input, std::string output, std::string change_path, int K) {
    Timer timer;
    VerdictReport report;
    report.command = "normalize";
    report.input_hashes[input] = fnv1a_file(input);

    HypersurfaceFile f = read_hypersurface_file(input);
    int cap = std::min(K, f.max_weight);
    WPoly h = f.h.truncate(cap);
    LeviResult lr{};
    bool pre_levi = !(h.weight_part(2) == WPoly::norm_sq(f.n));
    HypersurfaceModel start;
    if (pre_levi) {
        lr = levi_normalize(h, cap);
        start = lr.model;
        report.certificates["levi"] =
            lr.exact ? "exact congruence" : "approximate diagonal scaling";
    } else {
        start = model_from_graph(h, cap);
    }
    auto [nf, change] = cm_normalize(start, cap);
    Verdict check = normal_space_check(nf.phi, cap);
    report.verdict = check;
    report.certificates["round_trip"] = "regraph(input, change) == output verified";
    auto [fz, fw] = change.map();
    if (!(regraph(start, fz, fw, cap) == nf))
        report.verdict = Verdict::violated("round trip through the recorded change failed");

    if (output.empty()) output = input + ".normal.json";
    if (change_path.empty()) change_path = input + ".change.json";
    write_hypersurface_file(output, nf);
    write_coord_change_file(change_path, change);
    report.certificates["output"] = output;
    report.certificates["change"] = change_path;
    report.elapsed_ms = timer.ms();
    emit(report);
    return exit_code(report.verdict.status);
}

int cmd_equiv(const std::string& a, const std::string& b, int K, uint64_t seed, double tol,
              int starts) {
    Timer timer;
    VerdictReport report;
    report.command = "equiv";
    HypersurfaceModel h1 = load_model(a, std::max(K, 2), report);
    HypersurfaceModel h2 = load_model(b, std::max(K, 2), report);
    EquivOptions opt;
    opt.seed = seed;
    opt.tol = tol;
    opt.starts = starts;
    report.verdict = weighted_equivalence(h1, h2, K, opt);
    report.elapsed_ms = timer.ms();
    emit(report);
    return exit_code(report.verdict.status);
}

int cmd_check_order1(const std::string& matrix_path, const std::string& backend, double tol) {
    Timer timer;
    VerdictReport report;
    report.command = "check --order 1";
    report.input_hashes[matrix_path] = fnv1a_file(matrix_path);
    RCMat l = read_matrix_file(matrix_path);
    auto [verdict, data] = check_first_order(l);
    if (backend == "float" && verdict.status != Status::Undetermined) {
        // re-decide the singular value bound numerically with the tolerance
        double sl = std::sqrt(to_double(data.lambda));
        bool ok = data.lambda > 0;
        for (double m : data.mu) ok = ok && m <= sl + tol;
        if (ok && verdict.status == Status::Violated && !data.mu.empty())
            verdict = Verdict::holds("singular value bound holds within tolerance");
        else if (!ok && verdict.status == Status::Holds)
            verdict = Verdict::violated("singular value bound fails numerically");
    }
    report.verdict = verdict;
    {
        std::ostringstream alphas;
        for (size_t i = 0; i < data.alpha.size(); ++i)
            alphas << (i ? "," : "") << data.alpha[i];
        report.certificates["alpha"] = alphas.str();
    }
    if (backend == "rational") {
        std::ostringstream cp;
        auto poly = first_order_charpoly(l);
        for (size_t i = 0; i < poly.size(); ++i) cp << (i ? "," : "") << format_rc(poly[i]);
        report.certificates["charpoly"] = cp.str();
    }
    report.elapsed_ms = timer.ms();
    emit(report);
    return exit_code(report.verdict.status);
}

int cmd_check_order2(const std::string& jet_path, const std::string& a, const std::string& b,
                     uint64_t seed) {
    Timer timer;
    VerdictReport report;
    report.command = "check --order 2";
    report.input_hashes[jet_path] = fnv1a_file(jet_path);
    JetMap f = read_jet_file(jet_path);
    HypersurfaceModel h = load_model(a, 6, report);
    HypersurfaceModel hp = load_model(b, 6, report);
    SecondOrderResult r = check_second_order(f, h.phi_at(4), hp.phi_at(4), seed);
    report.verdict = r.verdict;
    report.certificates["strict"] = r.strict ? "true" : "false";
    report.elapsed_ms = timer.ms();
    emit(report);
    return exit_code(report.verdict.status);
}

int cmd_check_flat2(const std::string& jet_path, const std::string& a, const std::string& b) {
    Timer timer;
    VerdictReport report;
    report.command = "check --order flat2";
    report.input_hashes[jet_path] = fnv1a_file(jet_path);
    JetMap f = read_jet_file(jet_path);
    HypersurfaceModel h = load_model(a, 6, report);
    HypersurfaceModel hp = load_model(b, 6, report);
    Flat2Report r = check_flat2_conditions(f, h, hp);
    report.certificates["flat_after_normalization"] = r.flat_after_normalization ? "true" : "false";
    report.certificates["tangent_weight4"] = r.tangent_weight4 ? "true" : "false";
    report.certificates["real_pairing"] = r.real_pairing ? "true" : "false";
    report.certificates["agree"] = r.agree ? "true" : "false";
    if (!r.agree)
        report.verdict = Verdict::undetermined("the three conditions disagree");
    else if (r.flat_after_normalization)
        report.verdict = Verdict::holds("all second-order flatness conditions hold");
    else
        report.verdict = Verdict::violated("the jet is not flat to second order");
    report.elapsed_ms = timer.ms();
    emit(report);
    return exit_code(report.verdict.status);
}

int cmd_construct(int order, const std::string& alpha_list, const std::string& a,
                  const std::string& b, std::string output, uint64_t seed) {
    Timer timer;
    VerdictReport report;
    report.command = "construct";
    HypersurfaceModel h = load_model(a, 6, report);
    HypersurfaceModel hp = load_model(b, 6, report);
    auto [h_nf, ch] = cm_normalize(h, 6);
    auto [hp_nf, chp] = cm_normalize(hp, 6);
    JetMap f;
    if (order == 1) {
        f = construct_first_order_germ(parse_alpha_list(alpha_list), h_nf, hp_nf, seed);
    } else {
        f = construct_2flat_germ(h_nf, hp_nf, seed);
    }
    if (output.empty()) output = "germ.json";
    write_jet_file(output, f);
    report.verdict = Verdict::holds("germ constructed and verified by scaled sampling");
    report.certificates["output"] = output;
    report.elapsed_ms = timer.ms();
    emit(report);
    return kExitHolds;
}

int cmd_contact(const std::string& a, const std::string& b, const std::string& jet_path, int K,
                uint64_t seed, double tol) {
    Timer timer;
    VerdictReport report;
    report.command = "contact";
    report.input_hashes[jet_path] = fnv1a_file(jet_path);
    JetMap f = read_jet_file(jet_path);
    HypersurfaceModel h = load_model(a, K, report);
    HypersurfaceModel hp = load_model(b, K, report);
    ContactReport rep = expand_basic(h, hp, f, K);
    ContactClassification cls = classify_contact(rep, seed, tol);
    report.verdict = cls.sign;
    report.certificates["tangency_order"] = std::to_string(cls.tangency_order);
    report.certificates["first_weight"] = std::to_string(cls.first_weight);
    for (const auto& [mu, e] : rep.components)
        report.certificates["e" + std::to_string(mu)] = e.str();
    report.elapsed_ms = timer.ms();
    emit(report);
    return exit_code(report.verdict.status);
}

int cmd_selftest(const std::string& suite, uint64_t seed) {
    bool all_ok = true;
    for (const SuiteResult& r : run_selftests(suite, seed)) {
        std::cout << r.name << ": " << r.passed << " passed, " << r.failed << " failed\n";
        for (const auto& f : r.failures) std::cout << "  FAIL " << f << "\n";
        all_ok = all_ok && r.ok();
    }
    return all_ok ? kExitHolds : kExitViolated;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary jets of strongly pseudoconvex hypersurface models"};
    app.require_subcommand(1);

    int max_weight = 6;
    uint64_t seed = 1;
    double tolerance = 1e-9;
    std::string backend = "rational";

    std::string in_path, out_path, change_path;
    auto* normalize = app.add_subcommand("normalize", "bring a graph to partial normal form");
    normalize->add_option("--input", in_path, "hypersurface file")->required();
    normalize->add_option("--output", out_path, "normal form output file");
    normalize->add_option("--change", change_path, "coordinate change output file");
    normalize->add_option("--max-weight", max_weight, "truncation weight");

    std::string eq_a, eq_b;
    int eq_k = 5, starts = 64;
    auto* equiv = app.add_subcommand("equiv", "weighted equivalence of two models");
    equiv->add_option("first", eq_a, "hypersurface file")->required();
    equiv->add_option("second", eq_b, "hypersurface file")->required();
    equiv->add_option("--max-weight", eq_k, "equivalence order");
    equiv->add_option("--seed", seed, "search seed");
    equiv->add_option("--tolerance", tolerance, "numeric tolerance");
    equiv->add_option("--starts", starts, "search restarts");

    std::string order = "1", matrix_path, jet_path, ck_a, ck_b;
    auto* chk = app.add_subcommand("check", "first/second order and flatness checks");
    chk->add_option("--order", order, "1, 2 or flat2")->required();
    chk->add_option("--matrix", matrix_path, "linear block file (order 1)");
    chk->add_option("--jet", jet_path, "jet file (order 2 / flat2)");
    chk->add_option("source", ck_a, "source hypersurface file");
    chk->add_option("target", ck_b, "target hypersurface file");
    chk->add_option("--backend", backend, "rational or float")
        ->check(CLI::IsMember({"rational", "float"}));
    chk->add_option("--tolerance", tolerance, "numeric tolerance");
    chk->add_option("--seed", seed, "sampling seed");

    std::string co_order = "2", alpha_list, co_a, co_b, co_out;
    auto* con = app.add_subcommand("construct", "build a germ between two models");
    con->add_option("--order", co_order, "1 or 2")->check(CLI::IsMember({"1", "2"}));
    con->add_option("--alpha", alpha_list, "comma separated rationals (order 1)");
    con->add_option("source", co_a, "source hypersurface file")->required();
    con->add_option("target", co_b, "target hypersurface file")->required();
    con->add_option("--output", co_out, "jet output file");
    con->add_option("--seed", seed, "sampling seed");

    std::string ct_a, ct_b, ct_jet;
    auto* contact = app.add_subcommand("contact", "weighted contact expansion of a jet");
    contact->add_option("source", ct_a, "source hypersurface file")->required();
    contact->add_option("target", ct_b, "target hypersurface file")->required();
    contact->add_option("--jet", ct_jet, "jet file")->required();
    contact->add_option("--max-weight", max_weight, "truncation weight");
    contact->add_option("--seed", seed, "sampling seed");
    contact->add_option("--tolerance", tolerance, "numeric tolerance");

    std::string suite = "all";
    auto* self = app.add_subcommand("selftest", "run the built-in suites");
    self->add_option("--suite", suite, "appendix, normalform, jets or all");
    self->add_option("--seed", seed, "suite seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (normalize->parsed()) return cmd_normalize(in_path, out_path, change_path, max_weight);
        if (equiv->parsed()) return cmd_equiv(eq_a, eq_b, eq_k, seed, tolerance, starts);
        if (chk->parsed()) {
            if (order == "1") {
                if (matrix_path.empty()) throw std::runtime_error("--order 1 needs --matrix");
                return cmd_check_order1(matrix_path, backend, tolerance);
            }
            if (jet_path.empty() || ck_a.empty() || ck_b.empty())
                throw std::runtime_error("--order " + order +
                                         " needs --jet and two hypersurface files");
            if (order == "2") return cmd_check_order2(jet_path, ck_a, ck_b, seed);
            if (order == "flat2") return cmd_check_flat2(jet_path, ck_a, ck_b);
            throw std::runtime_error("unknown order: " + order);
        }
        if (con->parsed()) {
            if (co_order == "1" && alpha_list.empty())
                throw std::runtime_error("--order 1 needs --alpha");
            return cmd_construct(co_order == "1" ? 1 : 2, alpha_list, co_a, co_b, co_out, seed);
        }
        if (contact->parsed()) return cmd_contact(ct_a, ct_b, ct_jet, max_weight, seed, tolerance);
        if (self->parsed()) return cmd_selftest(suite, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        if (msg.find("parse error") != std::string::npos ||
            msg.find("cannot open") != std::string::npos)
            return kExitUsage;
        return kExitViolated;
    }
    return kExitUsage;
}

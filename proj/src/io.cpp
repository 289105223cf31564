#include "cmjet/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cmjet {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("parse error in " + path + ": " + e.what());
    }
    return j;
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

std::vector<int> int_vector(const json& j, size_t n) {
    std::vector<int> v = j.get<std::vector<int>>();
    if (v.size() != n) throw std::runtime_error("exponent vector length mismatch");
    for (int e : v)
        if (e < 0) throw std::runtime_error("negative exponent");
    return v;
}

RC parse_coeff(const json& t) {
    Rat re = t.contains("re") ? parse_rational(t.at("re").get<std::string>()) : Rat(0);
    Rat im = t.contains("im") ? parse_rational(t.at("im").get<std::string>()) : Rat(0);
    return RC(std::move(re), std::move(im));
}

json coeff_json(const RC& c) {
    json t;
    t["re"] = format_rational(c.re);
    t["im"] = format_rational(c.im);
    return t;
}

json wpoly_terms(const WPoly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json t;
        t["z"] = m.kz;
        t["zbar"] = m.kzb;
        t["u"] = m.ku;
        t["re"] = format_rational(c.re);
        t["im"] = format_rational(c.im);
        terms.push_back(std::move(t));
    }
    return terms;
}

json holo_terms(const HoloPoly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json t;
        t["z"] = m.kz;
        t["w"] = m.kw;
        t["re"] = format_rational(c.re);
        t["im"] = format_rational(c.im);
        terms.push_back(std::move(t));
    }
    return terms;
}

HoloPoly holo_from_terms(const json& terms, int n) {
    HoloPoly p(n);
    for (const auto& t : terms) {
        int kw = t.value("w", 0);
        if (kw < 0) throw std::runtime_error("negative w power");
        p.add_term(int_vector(t.at("z"), n), kw, parse_coeff(t));
    }
    return p;
}

}  // namespace

HypersurfaceFile read_hypersurface_file(const std::string& path) {
    json j = load_json(path);
    HypersurfaceFile f;
    f.n = j.at("n").get<int>();
    f.max_weight = j.value("max_weight", 6);
    if (f.n < 1 || f.max_weight < 2) throw std::runtime_error("bad dimensions in " + path);
    f.h = WPoly::zero(f.n);
    for (const auto& t : j.at("terms")) {
        int ku = t.value("u", 0);
        if (ku < 0) throw std::runtime_error("negative u power");
        Monomial m(int_vector(t.at("z"), f.n), int_vector(t.at("zbar"), f.n), ku);
        f.h.add_term(m, parse_coeff(t));
    }
    return f;
}

std::string hypersurface_to_json(const HypersurfaceModel& model) {
    json j;
    j["n"] = model.n;
    j["max_weight"] = model.K;
    j["terms"] = wpoly_terms(model.graph());
    return j.dump(2) + "\n";
}

void write_hypersurface_file(const std::string& path, const HypersurfaceModel& model) {
    save_text(path, hypersurface_to_json(model));
}

HypersurfaceModel model_from_graph(const WPoly& h, int K) {
    if (!(h.weight_part(2) == WPoly::norm_sq(h.dim())))
        throw std::runtime_error("graph weight-2 part is not the unit Levi form");
    if (!h.is_real()) throw std::runtime_error("graph must be real-valued");
    if (!h.is_zero() && h.min_weight() < 2)
        throw std::runtime_error("graph must vanish to second order");
    HypersurfaceModel m = HypersurfaceModel::quadric(h.dim(), K);
    for (int mu = 3; mu <= K; ++mu) m.set_phi(mu, h.weight_part(mu));
    validate_model(m);
    return m;
}

JetMap read_jet_file(const std::string& path) {
    json j = load_json(path);
    int n = j.at("n").get<int>();
    int K = j.value("max_weight", 6);
    if (n < 1 || K < 1) throw std::runtime_error("bad dimensions in " + path);
    JetMap jet;
    jet.n = n;
    jet.K = K;
    const auto& comps = j.at("z_components");
    if (static_cast<int>(comps.size()) != n)
        throw std::runtime_error("expected " + std::to_string(n) + " z components");
    for (const auto& comp : comps) jet.fz.push_back(holo_from_terms(comp, n));
    jet.fw = holo_from_terms(j.at("w_component"), n);
    return jet;
}

std::string jet_to_json(const JetMap& jet) {
    json j;
    j["n"] = jet.n;
    j["max_weight"] = jet.K;
    j["z_components"] = json::array();
    for (const auto& comp : jet.fz) j["z_components"].push_back(holo_terms(comp));
    j["w_component"] = holo_terms(jet.fw);
    return j.dump(2) + "\n";
}

void write_jet_file(const std::string& path, const JetMap& jet) {
    save_text(path, jet_to_json(jet));
}

RCMat read_matrix_file(const std::string& path) {
    json j = load_json(path);
    RCMat m;
    for (const auto& row : j.at("rows")) {
        std::vector<RC> r;
        for (const auto& e : row) r.push_back(parse_coeff(e));
        m.push_back(std::move(r));
    }
    if (m.empty()) throw std::runtime_error("empty matrix in " + path);
    for (const auto& r : m)
        if (r.size() != m[0].size()) throw std::runtime_error("ragged matrix in " + path);
    return m;
}

void write_coord_change_file(const std::string& path, const CoordChange& change) {
    json j;
    j["n"] = change.n;
    j["max_weight"] = change.K;
    j["f"] = json::array();
    for (const auto& comp : change.f) j["f"].push_back(holo_terms(comp));
    j["g"] = holo_terms(change.g);
    json lin;
    lin["delta"] = format_rational(change.lin.delta);
    lin["r"] = format_rational(change.lin.r);
    lin["a"] = json::array();
    for (const auto& a : change.lin.a) lin["a"].push_back(coeff_json(a));
    lin["U"] = json::array();
    for (const auto& row : change.lin.U) {
        json r = json::array();
        for (const auto& e : row) r.push_back(coeff_json(e));
        lin["U"].push_back(std::move(r));
    }
    j["linear"] = std::move(lin);
    save_text(path, j.dump(2) + "\n");
}

uint64_t fnv1a(const std::string& data) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a(ss.str());
}

std::string VerdictReport::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["input_hashes"] = nlohmann::json::object();
    for (const auto& [file, hash] : input_hashes) {
        std::ostringstream hex;
        hex << std::hex << hash;
        j["input_hashes"][file] = hex.str();
    }
    j["verdict"] = status_name(verdict.status);
    j["detail"] = verdict.detail;
    if (verdict.witness) {
        nlohmann::json w;
        w["z_re"] = nlohmann::json::array();
        w["z_im"] = nlohmann::json::array();
        for (const auto& zv : verdict.witness->z) {
            w["z_re"].push_back(zv.real());
            w["z_im"].push_back(zv.imag());
        }
        w["u"] = verdict.witness->u;
        w["value"] = verdict.witness->value;
        w["note"] = verdict.witness->note;
        j["witness"] = std::move(w);
    }
    j["certificates"] = certificates;
    j["elapsed_ms"] = elapsed_ms;
    return j.dump(2) + "\n";
}

}  // namespace cmjet

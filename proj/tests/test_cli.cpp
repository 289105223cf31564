#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "cmjet/io.hpp"
#include "cmjet/trace.hpp"

using namespace cmjet;

namespace {

std::string bin() {
    const char* b = std::getenv("CMJET_BIN");
    REQUIRE_MESSAGE(b != nullptr, "CMJET_BIN must point at the command line tool");
    return b;
}

int run(const std::string& args) {
    std::string cmd = bin() + " " + args + " > cli_out.json 2> cli_err.txt";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

HypersurfaceModel quartic_obstructed() {
    // nonzero traceless weight-4 data
    HypersurfaceModel h = HypersurfaceModel::quadric(2, 6);
    WPoly phi4 = RC(Rat(1, 2)) * (WPoly::term(Monomial({2, 0}, {0, 2}, 0), RC(1)) +
                                  WPoly::term(Monomial({0, 2}, {2, 0}, 0), RC(1)));
    h.set_phi(4, phi4);
    return h;
}

}  // namespace

TEST_CASE("hypersurface and jet files round trip") {
    HypersurfaceModel h = quartic_obstructed();
    write_hypersurface_file("cli_h.json", h);
    HypersurfaceFile f = read_hypersurface_file("cli_h.json");
    CHECK(f.n == 2);
    CHECK(model_from_graph(f.h, f.max_weight) == h);

    JetMap jet = JetMap::identity(2, 6);
    jet.fw += HoloPoly::term(2, {0, 0}, 2, RC(Rat(1, 3), Rat(2)));
    write_jet_file("cli_jet.json", jet);
    JetMap back = read_jet_file("cli_jet.json");
    CHECK(back.n == jet.n);
    CHECK(back.fw == jet.fw);
    CHECK(back.fz == jet.fz);
}

TEST_CASE("normalize command") {
    // removable weight-3 term
    HypersurfaceModel h = HypersurfaceModel::quadric(1, 6);
    h.set_phi(3, WPoly::term(Monomial({2}, {1}, 0), RC(Rat(1, 2))) +
                     WPoly::term(Monomial({1}, {2}, 0), RC(Rat(1, 2))));
    write_hypersurface_file("cli_n.json", h);
    CHECK(run("normalize --input cli_n.json") == 0);

    HypersurfaceFile nf = read_hypersurface_file("cli_n.json.normal.json");
    HypersurfaceModel m = model_from_graph(nf.h, nf.max_weight);
    CHECK(m.phi_at(3).is_zero());
    CHECK(normal_space_check(m.phi, m.K).ok());
    // the change file must at least be valid JSON with the right shape
    std::ifstream change("cli_n.json.change.json");
    CHECK(change.good());
}

TEST_CASE("equiv exit codes") {
    write_hypersurface_file("cli_a.json", quartic_obstructed());
    write_hypersurface_file("cli_q.json", HypersurfaceModel::quadric(2, 6));
    CHECK(run("equiv cli_a.json cli_a.json") == 0);
    CHECK(run("equiv cli_a.json cli_q.json") == 1);

    // related only by an irrational dilation: the exact verifier cannot snap
    // it and a zero tolerance forbids the numeric fallback
    HypersurfaceModel s1 = HypersurfaceModel::quadric(1, 6);
    s1.set_phi(6, WPoly::term(Monomial({3}, {3}, 0), RC(1)));
    HypersurfaceModel s2 = HypersurfaceModel::quadric(1, 6);
    s2.set_phi(6, WPoly::term(Monomial({3}, {3}, 0), RC(2)));
    write_hypersurface_file("cli_s1.json", s1);
    write_hypersurface_file("cli_s2.json", s2);
    CHECK(run("equiv cli_s1.json cli_s2.json --max-weight 6 --tolerance 0 --starts 4") == 2);
}

TEST_CASE("check command exit codes") {
    write_text("cli_m_ok.json",
               R"({"rows": [[{"re": "1"}, {"re": "0"}], [{"re": "0"}, {"re": "4"}]]})");
    write_text("cli_m_bad.json",
               R"({"rows": [[{"re": "3"}, {"re": "0"}], [{"re": "0"}, {"re": "4"}]]})");
    CHECK(run("check --order 1 --matrix cli_m_ok.json") == 0);
    CHECK(run("check --order 1 --matrix cli_m_ok.json --backend float") == 0);
    CHECK(run("check --order 1 --matrix cli_m_bad.json") == 1);
}

TEST_CASE("contact command") {
    write_hypersurface_file("cli_q1.json", HypersurfaceModel::quadric(1, 6));
    JetMap f = JetMap::identity(1, 6);
    f.fw += HoloPoly::term(1, {0}, 2, RC(0, 1));
    write_jet_file("cli_f.json", f);
    CHECK(run("contact cli_q1.json cli_q1.json --jet cli_f.json") == 1);

    write_jet_file("cli_id.json", JetMap::identity(1, 6));
    CHECK(run("contact cli_q1.json cli_q1.json --jet cli_id.json") == 0);
}

TEST_CASE("construct command") {
    write_hypersurface_file("cli_q1.json", HypersurfaceModel::quadric(1, 6));
    CHECK(run("construct cli_q1.json cli_q1.json --order 1 --alpha 1/2 --output cli_g.json") == 0);
    JetMap g = read_jet_file("cli_g.json");
    CHECK(g.fz[0].coeff({1}, 0) == RC(Rat(1, 2)));
}

TEST_CASE("usage and parse failures exit with code 3") {
    CHECK(run("normalize") == 3);
    CHECK(run("frobnicate") == 3);
    write_text("cli_garbage.json", "not json at all {");
    CHECK(run("normalize --input cli_garbage.json") == 3);
    CHECK(run("normalize --input cli_missing.json") == 3);
    CHECK(run("selftest --suite bogus") == 3);
}

#include <gtest/gtest.h>

#include <sstream>

#include "common.hpp"

using namespace pacf;
using namespace pacf::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string inst(const std::string& name) { return std::string(PACF_INSTANCE_DIR) + "/" + name; }

Json run_json(const std::string& group, const std::string& sub, const std::string& file, int expected_code) {
    std::vector<std::string> args{"--json", group};
    if (!sub.empty()) args.push_back(sub);
    args.push_back(inst(file));
    auto r = run_cli(args);
    EXPECT_EQ(r.code, expected_code) << group << " " << sub << "\n" << r.out << r.err;
    return Json::parse(r.out);
}

}  // namespace

TEST(Instance, BlocksListsAndMaps) {
    auto n = parse_instance(R"inst(
        # comment
        field: "Fp(3; t)"
        variety V { vars: [x, y]; gens: ["x^2 + y", y - 1] }
        derivation { images: {t: "1", s: 2} }
        action { group: cyclic(4); field: "GF(2,4)" }
        nested: [[a, "b"], []]
        bound: 3
    )inst");
    EXPECT_EQ(n.str("field"), "Fp(3; t)");
    const Node* v = n.block_of("variety", "V");
    ASSERT_NE(v, nullptr);
    EXPECT_EQ(v->strings("vars"), (std::vector<std::string>{"x", "y"}));
    EXPECT_EQ(v->strings("gens"), (std::vector<std::string>{"x^2 + y", "y - 1"}));
    EXPECT_EQ(n.block_of("variety", "W"), nullptr);
    const Node& im = n.block_of("derivation")->at("images");
    ASSERT_TRUE(im.is_map());
    EXPECT_EQ(im.entries.size(), 2u);
    EXPECT_EQ(im.str("s"), "2");
    EXPECT_EQ(n.block_of("action")->str("group"), "cyclic(4)");
    EXPECT_EQ(n.at("nested").items.size(), 2u);
    EXPECT_EQ(n.at("nested").items[0].as_strings(), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(n.integer_or("bound", 1), 3);
    EXPECT_EQ(n.integer_or("missing", 7), 7);
}

TEST(Instance, Errors) {
    EXPECT_THROW(parse_instance("field: \"Fp(3"), Error);
    EXPECT_THROW(parse_instance("variety { vars: [x"), Error);
    EXPECT_THROW(parse_instance("variety V W { }"), Error);
    EXPECT_THROW(parse_instance("a:"), Error);
    auto n = parse_instance("bound: two");
    EXPECT_THROW(n.integer_or("bound", 1), Error);
    EXPECT_THROW(n.str("absent"), Error);
}

TEST(Cli, DPacValidationAndSearch) {
    auto v = run_json("axiom", "validate-dpac", "dpac_line.pac", 0);
    EXPECT_EQ(v["status"], "valid-instance");
    EXPECT_EQ(v["bullets"].size(), 5u);
    auto s = run_json("axiom", "search-dpac", "dpac_line.pac", 0);
    EXPECT_EQ(s["status"], "witness-found");
    EXPECT_EQ(s["point"]["x"], "t");
    EXPECT_EQ(s["reverified"], true);
    auto k = run_json("axiom", "validate-dpac", "dpac_kerprol.pac", 1);
    EXPECT_EQ(k["failed_bullet"], kBulletEqualizer);
    auto g = run_json("axiom", "search-dpac", "dpac_gf9.pac", 1);
    EXPECT_EQ(g["status"], "exhausted");
    auto c = run_json("axiom", "validate-dpac", "cube_root.pac", 1);
    EXPECT_EQ(c["failed_bullet"], kBulletContained);
}

TEST(Cli, PacOpenAndPoints) {
    auto r = run_json("axiom", "pac-open", "circle.pac", 0);
    EXPECT_EQ(r["point"]["x"], "0");
    EXPECT_EQ(r["point"]["y"], "1");
    auto e = run_json("axiom", "pac-open", "split.pac", 2);
    EXPECT_EQ(e["status"], "error");
    auto p = run_json("variety", "points", "circle.pac", 0);
    EXPECT_EQ(p["count"], 6);
}

TEST(Cli, AlgebraAndGeometry) {
    EXPECT_EQ(run_json("poly", "gb", "ideal.pac", 0)["basis"].size(), 2u);
    EXPECT_EQ(run_json("poly", "elim", "ideal.pac", 0)["generators"][0], "y^2+2");
    EXPECT_EQ(run_json("poly", "dim", "ideal.pac", 0)["dimension"], 0);
    EXPECT_EQ(run_json("poly", "member", "ideal.pac", 0)["in_ideal"], true);
    EXPECT_EQ(run_json("variety", "irr", "cusp.pac", 0)["verdict"], true);
    EXPECT_EQ(run_json("variety", "absirr", "split.pac", 1)["verdict"], false);
    EXPECT_EQ(run_json("variety", "dominant", "dominant.pac", 0)["verdict"], true);
    EXPECT_EQ(run_json("variety", "locus", "locus.pac", 0)["generators"][0], "x^3+y^2");
    EXPECT_EQ(run_json("variety", "ppower", "cusp.pac", 1)["pth_power"], "no");
    EXPECT_EQ(run_json("variety", "pindep", "cusp.pac", 0)["independent"], "yes");
    EXPECT_EQ(run_json("diff", "nabla", "nabla.pac", 0)["in_prolongation"], true);
    EXPECT_EQ(run_json("diff", "prolong", "prolong.pac", 0)["generators"].size(), 2u);
    EXPECT_EQ(run_json("diff", "extends", "cube_root.pac", 1)["verdict"], false);
    EXPECT_EQ(run_json("diff", "equalizer", "dpac_line.pac", 0)["vars"].size(), 4u);
    auto k = run_json("diff", "kerprol", "dpac_kerprol.pac", 1);
    EXPECT_EQ(k["oracle"]["verdict"], false);
}

TEST(Cli, FieldAndActions) {
    auto f = run_json("field", "", "field.pac", 0);
    EXPECT_EQ(f["elements"][0]["pth_root"], nullptr);
    EXPECT_EQ(f["elements"][1]["pth_root"], "t+1");
    EXPECT_EQ(f["lambda"]["values"], Json::parse(R"(["t", "t"])"));
    EXPECT_EQ(f["lambda"]["round_trip"], true);
    EXPECT_EQ(run_json("action", "galois", "galois.pac", 0)["order"], 4);
    EXPECT_EQ(run_json("action", "invariants", "galois.pac", 0)["invariants"]["degree"], 1);
    EXPECT_EQ(run_json("action", "check210", "galois.pac", 0)["isomorphic"], true);
    EXPECT_EQ(run_json("action", "faithful", "trivial_action.pac", 1)["faithful"], false);
    EXPECT_EQ(run_json("action", "kirred", "kirred.pac", 0)["irreducible"], true);
    auto p = run_json("action", "probe", "probe.pac", 1);
    EXPECT_EQ(p["entries"][0]["verdict"], "FAIL");
}

TEST(Cli, FormulaCommands) {
    auto c = run_json("formula", "correct", "correct.pac", 0);
    EXPECT_EQ(c["formula"], "y1^3 = D(x) & D(y1) + x = 0");
    EXPECT_EQ(run_json("formula", "eval", "eval.pac", 1)["value"], false);
    EXPECT_EQ(run_json("formula", "parse", "eval.pac", 0)["languages"].size(), 1u);
    auto u = run_json("formula", "unravel", "nested.pac", 0);
    EXPECT_EQ(u["coordinates"][1]["definition"], "lam(2,1; t; x)");
    auto s = run_json("axiom", "scf-reduce", "nested.pac", 0);
    EXPECT_EQ(s["rows"].size(), 2u);
    EXPECT_EQ(s["audit"]["confirmed"], s["audit"]["independent"]);
}

TEST(Cli, OperatorsAndGbDcf) {
    EXPECT_EQ(run_json("axiom", "bop-check", "bop.pac", 0)["is_operator"], true);
    auto g = run_json("axiom", "validate-gbdcf", "gbdcf.pac", 0);
    EXPECT_EQ(g["status"], "witness-found");
    EXPECT_EQ(g["invariant_field"], "Fp(3; t)");
    EXPECT_EQ(g["point"]["x"], "t");
}

TEST(Cli, ExitCodesForErrors) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"axiom"}).code, 2);
    EXPECT_EQ(run_cli({"axiom", "nope", inst("circle.pac")}).code, 2);
    auto missing = run_cli({"axiom", "pac-open", inst("absent.pac")});
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.out.find("status: error"), std::string::npos);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, ReportsAreDeterministic) {
    for (const char* file : {"dpac_line.pac", "gbdcf.pac"}) {
        const std::string cmd = std::string(file) == "gbdcf.pac" ? "validate-gbdcf" : "search-dpac";
        auto a = run_cli({"--json", "axiom", cmd, inst(file)});
        auto b = run_cli({"--json", "axiom", cmd, inst(file)});
        EXPECT_EQ(a.out, b.out);
        auto t1 = run_cli({"axiom", cmd, inst(file)});
        auto t2 = run_cli({"axiom", cmd, inst(file)});
        EXPECT_EQ(t1.out, t2.out);
    }
}

#include "doctest.h"

#include "jetcr/central.hpp"
#include "jetcr/cli.hpp"
#include "jetcr/errors.hpp"
#include "jetcr/segre.hpp"
#include "support.hpp"

#include <sstream>

using namespace jetcr;
using namespace jetcr::cli;
using namespace testing_support;

namespace {

const std::string kData = JETCR_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "jetcr");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

} // namespace

TEST_CASE("jets survive a JSON round trip") {
  std::mt19937 rng(7);
  std::vector<AlphabetPtr> alphabets = {GermLayout::standard(2, 1).alphabet(), Alphabet::holomorphic({"z1", "w", "p1"}),
                                        Alphabet::holomorphic({"xi"})};
  for (const auto& a : alphabets)
    for (int trial = 0; trial < 20; ++trial) {
      Jet j = random_jet(a, 2 + trial % 5, rng, 0, 12, trial % 2 == 0);
      Json encoded = jet_to_json(j);
      CHECK(jet_from_json(encoded, a) == j);
      // text form too
      CHECK(jet_from_json(Json::parse(encoded.dump()), a) == j);
    }
  CHECK(coefficient_to_json(cq(1, 3, -2, 5)) == Json::parse(R"({"re":"1/3","im":"-2/5"})"));
  CHECK(coefficient_to_json(q(-7, 2)) == Json("-7/2"));
  CHECK(coefficient_from_json(Json::parse(R"({"im":"3"})")) == cq(0, 1, 3, 1));
  CHECK_THROWS(coefficient_from_json(Json(0.5)));
}

TEST_CASE("parse errors carry line and term index") {
  auto doc = Document::parse("{\n  \"nu\": 1,\n  \"nprime\": 0,\n  \"order\": 4,\n  \"phi\": [\n"
                             "    {\"exponents\": {\"z1\": 1, \"zb1\": 1}, \"coefficient\": \"1\"},\n"
                             "    {\"exponents\": {\"z1\": 2}, \"coefficient\": \"1/0\"}\n  ]\n}\n");
  try {
    parse_germ(doc, std::nullopt);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    REQUIRE(e.term().has_value());
    CHECK(*e.term() == 1);
  }

  auto linear = Document::parse(R"({"nu": 1, "nprime": 0, "order": 4,
    "phi": [{"exponents": {"z1": 1}, "coefficient": "1"}]})");
  try {
    parse_germ(linear, std::nullopt);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.term() == std::optional<int>(0));
  }

  // not real: the conjugate term is missing
  auto complex = Document::parse(R"({"nu": 1, "nprime": 0, "order": 4,
    "phi": [{"exponents": {"z1": 2}, "coefficient": "1"}]})");
  CHECK_THROWS_AS(parse_germ(complex, std::nullopt), ParseError);

  try {
    Document::parse("{\n\"nu\": 1,\n\"phi\": [1,,]\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_germ(Document::parse(R"({"nu": 1, "nprime": 0, "phi": []})"), std::nullopt), ParseError);
  CHECK_THROWS_AS(parse_germ(Document::parse(R"({"nu": 1, "nprime": 0, "order": 3, "phi": [], "x": 1})"), std::nullopt),
                  ParseError);
}

TEST_CASE("order override and dropped terms") {
  auto doc = Document::parse(R"({"nu": 1, "nprime": 0, "order": 6, "phi": [
    {"exponents": {"z1": 1, "zb1": 1}, "coefficient": "1"},
    {"exponents": {"z1": 2, "zb1": 2}, "coefficient": "1"}]})");
  auto full = parse_germ(doc, std::nullopt);
  CHECK(full.germ.order() == 6);
  CHECK(full.warnings.empty());
  auto cut = parse_germ(doc, 3);
  CHECK(cut.germ.order() == 3);
  CHECK(cut.germ.phi().size() == 1);
  CHECK(cut.warnings.size() == 1);
}

TEST_CASE("command results") {
  auto levi = run_cli({"levi", data("quadric.json")});
  REQUIRE(levi.code == 0);
  Json r = Json::parse(levi.out);
  CHECK(r["signature"]["positive"] == 1);
  CHECK(r["signature"]["negative"] == 0);
  CHECK(r["definite"] == true);

  auto phi = run_cli({"phi", data("quadric.json"), "--order", "8", "--check"});
  REQUIRE(phi.code == 0);
  r = Json::parse(phi.out);
  CHECK(r["all_zero"] == true);
  CHECK(r["routes_agree"] == true);
  for (const auto& e : r["Phi"])
    CHECK(e["jet"]["terms"].empty());

  auto ode = run_cli({"ode", data("h_half.json"), "--check"});
  REQUIRE(ode.code == 0);
  r = Json::parse(ode.out);
  CHECK(jet_from_json(r["psi"], Alphabet::holomorphic({"u"})) ==
        Jet::variable(Alphabet::holomorphic({"u"}), 4, "u"));

  auto lift = run_cli({"lift", data("quadric_t.json"), data("quadric_t.json"), data("scaling_map.json"), "--check"});
  REQUIRE(lift.code == 0);
  r = Json::parse(lift.out);
  AlphabetPtr a = GermLayout::standard(1, 1).alphabet();
  Jet T = jet_from_json(r["T"][0], a);
  CHECK(T == jet(a, T.order(), {{"t1", q(2)}}));
  CHECK(r["pullbacks_are_solutions"] == true);
}

TEST_CASE("report jets re-parse to the computed jets") {
  auto out = run_cli({"phi", data("generic.json")});
  REQUIRE(out.code == 0);
  Json r = Json::parse(out.out);

  auto g = parse_germ(Document::load(data("generic.json")), std::nullopt).germ;
  CentralHypersurface hyp = central_cr_hypersurface(central_manifold(g));
  PhiJet det = phi_determinant(complexify_defining(hyp.layout, hyp.sigma_phi));
  std::size_t k = 0;
  for (std::size_t i = 0; i < det.entries.size(); ++i)
    for (std::size_t j = i; j < det.entries.size(); ++j, ++k)
      CHECK(jet_from_json(r["Phi"][k]["jet"], det.alphabet) == det.entries[i][j]);
  CHECK(jet_from_json(r["central_hypersurface"], hyp.layout.alphabet()) == hyp.sigma_phi);
}

TEST_CASE("reports are byte-identical across runs") {
  for (std::string cmd : {"levi", "central", "normalize", "phi", "external"}) {
    for (std::string fmt : {"json", "text"}) {
      auto a = run_cli({cmd, data("generic.json"), "--format", fmt, "--check"});
      auto b = run_cli({cmd, data("generic.json"), "--format", fmt, "--check"});
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
    }
  }
}

TEST_CASE("exit statuses") {
  CHECK(run_cli({"levi", data("bad_term.json")}).code == 1);
  CHECK(run_cli({"levi", data("missing.json")}).code == 1);
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"levi", data("quadric.json"), "--format", "yaml"}).code == 1);
  CHECK(run_cli({"rigid-check", data("generic.json")}).code == 2);
  CHECK(run_cli({"ode", data("h_cubic.json")}).code == 2);
  auto bad_map = run_cli({"lift", data("quadric_t.json"), data("quadric_t.json"), data("not_a_map.json")});
  CHECK(bad_map.code == 2);
  CHECK(bad_map.err.find("z1^2") != std::string::npos);
  // indefinite t-part
  CHECK(run_cli({"lift", data("generic.json"), data("generic.json"), data("identity_map.json")}).code == 2);
  CHECK(run_cli({"levi", "--help"}).code == 0);
}

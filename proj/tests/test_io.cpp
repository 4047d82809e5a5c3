#include <doctest.h>

#include <filesystem>

#include "dialg/errors.hpp"
#include "dialg/io.hpp"
#include "support.hpp"

using namespace dialg;

TEST_SUITE("io") {
  TEST_CASE("rationals and polynomials") {
    CHECK(to_json(Rational(-3, 6)) == Json("-1/2"));
    CHECK(to_json(Rational(4)) == Json("4"));
    CHECK(rational_from_json(Json("10/4")) == Rational(5, 2));
    CHECK(rational_from_json(Json(7)) == Rational(7));
    CHECK_THROWS_AS(rational_from_json(Json(1.5)), FormatError);
    CHECK_THROWS_AS(rational_from_json(Json("1/0")), FormatError);

    const Poly p({{2, Rational(1, 3)}, {0, 1}}, 4);
    CHECK(dump(to_json(p)) == dump(Json::parse(R"([[0,"1"],[2,"1/3"]])")));
    CHECK(poly_from_json(to_json(p), 4) == p);
    CHECK_THROWS_AS(poly_from_json(Json::parse(R"([[5,"1"]])"), 4), FormatError);
    CHECK_THROWS_AS(poly_from_json(Json::parse(R"([[1,"1"],[1,"2"]])")), FormatError);
  }

  TEST_CASE("algebra documents roundtrip bit-exactly") {
    for (const auto& a : {matrix_algebra(2), truncated_poly(3), group_algebra_c2(), field_algebra(), perm_quotient(3),
                          perm_window(2, 2), tensor_algebra(matrix_algebra(2), truncated_poly(2))}) {
      const std::string text = dump(to_json(a));
      const auto back = algebra_from_json(Json::parse(text));
      CHECK(back == a);
      CHECK(dump(to_json(back)) == text);
    }
  }

  TEST_CASE("algebra document layout") {
    const auto j = to_json(group_algebra_c2());
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"name", "flavor", "dim", "basis", "unit", "structure"});
    CHECK(j["structure"] == Json::parse(R"([[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[1,1,0,"1"]])"));
    CHECK(to_json(perm_quotient(1))["unit"].is_null());
  }

  TEST_CASE("malformed algebra documents are rejected") {
    const Json good = to_json(truncated_poly(2));
    auto broken = [&](auto mutate) {
      Json j = good;
      mutate(j);
      return j;
    };
    CHECK_THROWS_AS(algebra_from_json(Json::parse("[]")), FormatError);
    CHECK_THROWS_AS(algebra_from_json(broken([](Json& j) { j.erase("structure"); })), FormatError);
    CHECK_THROWS_AS(algebra_from_json(broken([](Json& j) { j["dim"] = 3; })), FormatError);
    CHECK_THROWS_AS(algebra_from_json(broken([](Json& j) { j["dim"] = -1; })), FormatError);
    CHECK_THROWS_AS(algebra_from_json(broken([](Json& j) { j["flavor"] = "jordan"; })), FormatError);
    CHECK_THROWS_AS(algebra_from_json(broken([](Json& j) { j["structure"].push_back({0, 0, 9, "1"}); })), FormatError);
    CHECK_THROWS_AS(algebra_from_json(broken([](Json& j) { j["structure"].push_back({0, 0, 0, "2"}); })), FormatError);
    CHECK_THROWS_AS(algebra_from_json(broken([](Json& j) { j["structure"][0][3] = "x"; })), FormatError);
    CHECK_THROWS_AS(algebra_from_json(broken([](Json& j) { j["unit"] = Json::array({"1"}); })), FormatError);
    CHECK_THROWS_AS(algebra_from_json(broken([](Json& j) { j["basis"] = Json::array({"1", 2}); })), FormatError);
  }

  TEST_CASE("omitted structure entries are zero") {
    const auto j = Json::parse(R"({"name":"z","flavor":"associative","dim":2,"basis":["a","b"],"unit":null,
                                   "structure":[[0,0,1,"3/6"]]})");
    const auto a = algebra_from_json(j);
    CHECK(a.structure().coeff(0, 0, 1) == Rational(1, 2));
    CHECK(a.structure().nonzeros() == 1);
  }

  TEST_CASE("dialgebra documents roundtrip") {
    for (const auto& d : {kp_window(1, 1, matrix_algebra(2)), kp_single(2, truncated_poly(3)),
                          Dialgebra::from_associative(group_algebra_c2())}) {
      const std::string text = dump(to_json(d));
      const auto back = dialgebra_from_json(Json::parse(text));
      CHECK(back == d);
      CHECK(dump(to_json(back)) == text);
    }
    const auto j = to_json(kp_window(2, 1, field_algebra()));
    CHECK(j["provenance"]["perm_bounds"] == Json::parse("[2,1]"));
    CHECK(j["provenance"]["algebra_name"] == "Q");
    CHECK(to_json(kp_single(2, field_algebra()))["provenance"]["perm_bounds"] == Json::parse("[2,null]"));
  }

  TEST_CASE("inconsistent provenance is rejected") {
    Json j = to_json(kp_window(1, 1, field_algebra()));
    j["provenance"]["perm_bounds"] = Json::parse("[2,2]");
    CHECK_THROWS_AS(dialgebra_from_json(j), FormatError);
    j = to_json(kp_window(1, 1, field_algebra()));
    j["provenance"]["algebra_name"] = "M2";
    CHECK_THROWS_AS(dialgebra_from_json(j), FormatError);
  }

  TEST_CASE("operators, subspaces and families roundtrip") {
    const auto d = kp_window(1, 1, truncated_poly(3));
    const auto der = derivation_space(d);
    for (const auto& op : der.basis_ops()) CHECK(linop_from_json(to_json(op)) == op);
    CHECK(subspace_from_json(to_json(der)) == der);
    CHECK(dump(to_json(subspace_from_json(to_json(der)))) == dump(to_json(der)));

    const auto& a = d.provenance()->algebra;
    const auto& p = d.provenance()->perm;
    const auto da = algebra_derivation_space(a, DerivationKind::two_sided).basis_op(0);
    const auto dp = algebra_derivation_space(p, DerivationKind::left).basis_op(0);
    DerComponentFamily f{{{2, dp}}, {{0, da}, {1, da}}};
    CHECK(der_family_from_json(to_json(f)) == f);
    DiderComponentFamily g{{{SlotIndex{1, 0}, da}}, {{0, dp}}};
    const auto gj = to_json(g);
    CHECK(gj["alg_parts"].contains("1,0"));
    CHECK(dider_family_from_json(gj) == g);
    CHECK_THROWS_AS(der_family_from_json(gj), FormatError);
    Json bad = gj;
    bad["alg_parts"]["1;0"] = bad["alg_parts"]["1,0"];
    CHECK_THROWS_AS(dider_family_from_json(bad), FormatError);
  }

  TEST_CASE("operator documents are validated") {
    Json j = to_json(LinOp::identity("V", 2));
    CHECK(j["entries"] == Json::parse(R"(["1","0","0","1"])"));
    j["entries"].erase(0);
    CHECK_THROWS_AS(linop_from_json(j), FormatError);
  }

  TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "dialg_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "m2.json";
    write_text_file(path, dump(to_json(matrix_algebra(2))));
    CHECK(algebra_from_json(read_json_file(path)) == matrix_algebra(2));
    write_text_file(dir / "junk.json", "{ not json");
    CHECK_THROWS_AS(read_json_file(dir / "junk.json"), FormatError);
    CHECK_THROWS_AS(read_json_file(dir / "missing.json"), FormatError);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("reports") {
    const auto r = validate_perm(matrix_algebra(2), Side::left);
    const auto j = to_json(r);
    CHECK(j["ok"] == false);
    CHECK(j["violation_count"] == r.violation_count);
    CHECK(j["witnesses"].size() == r.witnesses.size());
  }
}

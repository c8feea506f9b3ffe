#include "doctest.h"

#include <string>

#include "json.hpp"
#include "sigvol/sigvol.h"

using Json = nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out(s);
  sigvol_string_free(s);
  return out;
}

std::string text_of(const sigvol_element* x) {
  char* s = nullptr;
  REQUIRE(sigvol_element_to_string(x, &s) == SIGVOL_OK);
  return take(s);
}

sigvol_element* parse(const char* text, int d) {
  sigvol_element* x = nullptr;
  REQUIRE(sigvol_element_parse(text, d, &x) == SIGVOL_OK);
  return x;
}

}  // namespace

TEST_CASE("errors carry a status and a message") {
  sigvol_element* x = nullptr;
  CHECK(sigvol_element_parse("12 +", 2, &x) == SIGVOL_PARSE_ERROR);
  CHECK(x == nullptr);
  CHECK(std::string(sigvol_last_error()).size() > 0);
  CHECK(sigvol_element_parse(nullptr, 2, &x) == SIGVOL_INVALID_ARGUMENT);
  CHECK(sigvol_element_fixture("no_such_fixture", &x) == SIGVOL_OUT_OF_RANGE);
  sigvol_group* g = nullptr;
  CHECK(sigvol_group_create("bogus", 2, 5, &g) == SIGVOL_INVALID_ARGUMENT);
  CHECK(sigvol_stabilizer(2, 10, 1, &g) == SIGVOL_UNSUPPORTED);
  char* s = nullptr;
  CHECK(sigvol_signature_json("[[0,0],[1", 2, &s) == SIGVOL_PARSE_ERROR);
  CHECK(sigvol_signature_json("[[0,0],[1.5,0]]", 2, &s) == SIGVOL_PARSE_ERROR);
  // A success clears the previous message.
  sigvol_element* y = parse("1", 1);
  CHECK(std::string(sigvol_last_error()).empty());
  sigvol_element_free(y);
  sigvol_string_free(nullptr);
  sigvol_element_free(nullptr);
}

TEST_CASE("element operations") {
  auto* a = parse("12", 2);
  auto* b = parse("2", 2);
  sigvol_element* r = nullptr;
  REQUIRE(sigvol_shuffle(a, b, &r) == SIGVOL_OK);
  CHECK(text_of(r) == "2*122 + 212");
  sigvol_element_free(r);
  REQUIRE(sigvol_concat(a, b, &r) == SIGVOL_OK);
  CHECK(text_of(r) == "122");
  sigvol_element_free(r);
  REQUIRE(sigvol_antipode(a, &r) == SIGVOL_OK);
  CHECK(text_of(r) == "21");
  int eq = -1;
  CHECK(sigvol_element_equal(r, a, &eq) == SIGVOL_OK);
  CHECK(eq == 0);
  sigvol_element_free(r);
  const int letters[] = {2, 1};
  REQUIRE(sigvol_vol(2, letters, 2, &r) == SIGVOL_OK);
  CHECK(text_of(r) == "-12 + 21");
  sigvol_element_free(r);
  REQUIRE(sigvol_shuffle_power(b, 2, &r) == SIGVOL_OK);
  CHECK(text_of(r) == "2*22");
  sigvol_element_free(r);
  sigvol_element_free(a);
  sigvol_element_free(b);
}

TEST_CASE("signature polynomials") {
  auto* w = parse("123", 3);
  sigvol_polynomial* p = nullptr;
  REQUIRE(sigvol_hmap(w, 3, &p) == SIGVOL_OK);
  sigvol_polynomial* q = nullptr;
  REQUIRE(sigvol_polynomial_parse("1/6*a[1][1]*a[1][2]*a[1][3] + 1/2*a[1][1]*a[1][2]*a[2][3] + "
                                  "1/2*a[1][1]*a[2][2]*a[2][3] + 1/6*a[2][1]*a[2][2]*a[2][3]",
                                  3, 3, &q) == SIGVOL_OK);
  int eq = 0;
  CHECK(sigvol_polynomial_equal(p, q, &eq) == SIGVOL_OK);
  CHECK(eq == 1);
  const int sigma[] = {1, 2, 3};
  sigvol_polynomial* same = nullptr;
  REQUIRE(sigvol_permute_control_points(p, sigma, 3, &same) == SIGVOL_OK);
  CHECK(sigvol_polynomial_equal(p, same, &eq) == SIGVOL_OK);
  CHECK(eq == 1);
  sigvol_polynomial* line = nullptr;
  REQUIRE(sigvol_substitute_collinear(p, 2, "1/2", &line) == SIGVOL_OK);
  char* s = nullptr;
  REQUIRE(sigvol_polynomial_to_string(line, &s) == SIGVOL_OK);
  CHECK(take(s) == "1/6*a[1][1]*a[1][2]*a[1][3]");
  sigvol_polynomial_free(p);
  sigvol_polynomial_free(q);
  sigvol_polynomial_free(same);
  sigvol_polynomial_free(line);
  sigvol_element_free(w);
}

TEST_CASE("paths") {
  auto* area = parse("1/2*12 - 1/2*21", 2);
  char* v = nullptr;
  REQUIRE(sigvol_pair("[[0,0],[1,0],[1,1],[0,1]]", area, &v) == SIGVOL_OK);
  CHECK(take(v) == "1");
  REQUIRE(sigvol_pair("[[0,0,0],[1,0,0]]", area, &v) == SIGVOL_DIMENSION_MISMATCH);
  sigvol_element_free(area);
  char* s = nullptr;
  REQUIRE(sigvol_signature_json("[[\"0\",\"0\"],[\"1/2\",0]]", 2, &s) == SIGVOL_OK);
  const auto j = Json::parse(take(s));
  CHECK(j["levels"][2]["11"] == "1/8");
  REQUIRE(sigvol_signed_volume("[[0,0],[1,1],[2,4],[3,9],[4,16]]", &v) == SIGVOL_OK);
  CHECK(take(v) == "10");
}

TEST_CASE("groups") {
  sigvol_group* g = nullptr;
  REQUIRE(sigvol_stabilizer(3, 4, 0, &g) == SIGVOL_OK);
  size_t order = 0;
  CHECK(sigvol_group_order(g, &order) == SIGVOL_OK);
  CHECK(order == 12);
  char* s = nullptr;
  REQUIRE(sigvol_group_json(g, 1, &s) == SIGVOL_OK);
  const auto j = Json::parse(take(s));
  CHECK(j["structure_tag"] == "A_n");
  CHECK(j["order"] == 12);
  CHECK(j["elements"].size() == 12);
  sigvol_group_free(g);
  REQUIRE(sigvol_group_create("dihedral", 0, 6, &g) == SIGVOL_OK);
  CHECK(sigvol_group_order(g, &order) == SIGVOL_OK);
  CHECK(order == 12);
  sigvol_group_free(g);
}

TEST_CASE("geometry") {
  char* s = nullptr;
  REQUIRE(sigvol_volume_json(2, "0,1,2,3,4", &s) == SIGVOL_OK);
  auto j = Json::parse(take(s));
  CHECK(j["signed"] == "10");
  CHECK(j["triangulation"] == "10");
  REQUIRE(sigvol_gale_json(2, 5, &s) == SIGVOL_OK);
  j = Json::parse(take(s));
  CHECK(j["count"] == 5);
  CHECK(sigvol_volume_json(2, "0,2,1", &s) == SIGVOL_INVALID_ARGUMENT);
}

TEST_CASE("spaces") {
  const sigvol_options opt{2, 0, 0};
  char* s = nullptr;
  REQUIRE(sigvol_inv_space_json(3, 4, 3, nullptr, &opt, &s) == SIGVOL_OK);
  auto j = Json::parse(take(s));
  CHECK(j["dim_raw"] == 1);
  CHECK(j["dim_image"] == 1);
  CHECK(j["group"] == "A_n");
  CHECK(j["basis"][0] == "123 - 132 - 213 + 231 + 312 - 321");
  REQUIRE(sigvol_timerev_space_json(2, 2, &s) == SIGVOL_OK);
  CHECK(Json::parse(take(s))["dim_raw"] == 3);
  REQUIRE(sigvol_loopclosure_space_json(2, 2, &opt, &s) == SIGVOL_OK);
  CHECK(Json::parse(take(s))["basis"][0] == "12 - 21");
  REQUIRE(sigvol_kernel_space_json(2, 2, 2, &opt, &s) == SIGVOL_OK);
  CHECK(Json::parse(take(s))["dim_raw"] == 1);
  REQUIRE(sigvol_inv_d_json(3, 3, &opt, &s) == SIGVOL_OK);
  CHECK(Json::parse(take(s))["dim_raw"] == 1);
}

TEST_CASE("membership and fixture checks") {
  sigvol_element* v = nullptr;
  REQUIRE(sigvol_vol(3, nullptr, 0, &v) == SIGVOL_OK);
  int yes = 0;
  CHECK(sigvol_is_invariant(v, 4, nullptr, &yes) == SIGVOL_OK);
  CHECK(yes == 1);
  sigvol_element_free(v);
  sigvol_element* x = nullptr;
  REQUIRE(sigvol_element_fixture("loop_closure_d2_deg6", &x) == SIGVOL_OK);
  CHECK(sigvol_loopclosure_member(x, 0, &yes) == SIGVOL_OK);
  CHECK(yes == 1);
  CHECK(sigvol_in_kernel(x, 3, &yes) == SIGVOL_OK);
  CHECK(yes == 0);
  sigvol_element_free(x);

  const sigvol_options opt{1, 0, 0};
  char* s = nullptr;
  int pass = -1;
  REQUIRE(sigvol_check_fixture_json("vol3_concat_square", &opt, &s, &pass) == SIGVOL_OK);
  auto j = Json::parse(take(s));
  CHECK(pass == 1);
  CHECK(j["fixtures"][0]["checks"].size() == 3);
  REQUIRE(sigvol_check_fixture_text_json("[t]\nd = 2\nchecks = loop closure; kernel n=3\n12 - 21\n", &opt, &s,
                                         &pass) == SIGVOL_OK);
  j = Json::parse(take(s));
  CHECK(pass == 0);
  CHECK(j["fixtures"][0]["checks"][0]["pass"] == true);
  CHECK(j["fixtures"][0]["checks"][1]["pass"] == false);
  CHECK(sigvol_check_fixture_text_json("[t]\nd = 2\nchecks = nonsense\n12\n", &opt, &s, &pass) ==
        SIGVOL_PARSE_ERROR);
}

TEST_CASE("reproduction entry point") {
  CHECK(sigvol_criterion_count() == 12);
  const int ids[] = {3, 11};
  char* s = nullptr;
  int pass = 0;
  REQUIRE(sigvol_reproduce_json(ids, 2, nullptr, &s, &pass) == SIGVOL_OK);
  const auto j = Json::parse(take(s));
  CHECK(pass == 1);
  CHECK(j["criteria"].size() == 2);
  CHECK(j["criteria"][1]["id"] == 11);
  const int bad[] = {13};
  CHECK(sigvol_reproduce_json(bad, 1, nullptr, &s, &pass) == SIGVOL_OUT_OF_RANGE);
}

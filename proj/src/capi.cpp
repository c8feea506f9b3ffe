#include "sigvol/sigvol.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sigvol/error.hpp"
#include "sigvol/exactq.hpp"
#include "sigvol/fixtures.hpp"
#include "sigvol/freealg.hpp"
#include "sigvol/invariants.hpp"
#include "sigvol/posgeom.hpp"
#include "sigvol/reproduce.hpp"
#include "sigvol/sigpoly.hpp"

struct sigvol_element {
  sigvol::freealg::TensorElement x;
};
struct sigvol_polynomial {
  sigvol::sigpoly::IncrementPolynomial p;
};
struct sigvol_group {
  sigvol::posgeom::PermGroup g;
};

namespace {

using namespace sigvol;
using freealg::TensorElement;
using sigpoly::IncrementPolynomial;
using posgeom::PermGroup;
using Json = nlohmann::ordered_json;

thread_local std::string last_error;

template <class F>
sigvol_status guard(F&& body) {
  last_error.clear();
  try {
    body();
    return SIGVOL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<sigvol_status>(static_cast<int>(e.code()));
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("json: ") + e.what();
    return SIGVOL_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SIGVOL_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SIGVOL_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown failure";
    return SIGVOL_INTERNAL_ERROR;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const Json& j, char** out) { *out = dup(j.dump(2)); }

invariants::Options options(const sigvol_options* o) {
  invariants::Options opt;
  if (o) {
    opt.threads = o->threads == 0 ? 1 : o->threads;
    opt.segments = o->segments;
    opt.progress = o->progress != 0;
  }
  return opt;
}

exactq::Rational json_rational(const Json& v) {
  if (v.is_string()) return exactq::parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return exactq::Rational(exactq::Integer(std::to_string(v.get<long long>())));
  fail(ErrorCode::Parse, "coordinates must be integers or rational strings");
}

sigpoly::PLPath parse_points(const char* text) {
  need(text, "points");
  Json j = Json::parse(text);
  if (!j.is_array() || j.empty()) fail(ErrorCode::Parse, "points must be a non-empty array");
  std::vector<exactq::Vector> pts;
  for (const auto& p : j) {
    if (!p.is_array() || p.empty()) fail(ErrorCode::Parse, "each point must be a non-empty array");
    exactq::Vector v;
    for (const auto& c : p) v.push_back(json_rational(c));
    pts.push_back(std::move(v));
  }
  const int d = static_cast<int>(pts.front().size());
  return sigpoly::PLPath(d, std::move(pts));
}

std::vector<exactq::Rational> parse_csv(const char* text) {
  need(text, "parameters");
  std::vector<exactq::Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(exactq::parse_rational(item));
  return out;
}

Json perm_list(const std::vector<posgeom::Permutation>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.images());
  return a;
}

Json basis_json(const invariants::GradedBasis& b) {
  Json a = Json::array();
  for (const auto& x : b.elements()) a.push_back(x.to_string());
  return a;
}

PermGroup make_group(const std::string& kind, int d, int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be positive");
  if (kind == "auto") return posgeom::stabilizer_structural(d, n);
  if (kind == "trivial") return PermGroup::trivial(n);
  if (kind == "cyclic") return PermGroup::cyclic(n);
  if (kind == "dihedral") return PermGroup::dihedral(n);
  if (kind == "full") return PermGroup::symmetric(n);
  fail(ErrorCode::InvalidArgument, "unknown group kind '" + kind + "'");
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

int parse_n(const std::string& check, const std::string& key) {
  const auto pos = check.find("n=");
  if (pos == std::string::npos) fail(ErrorCode::Parse, "check '" + key + "' needs n=<points>");
  return std::stoi(check.substr(pos + 2));
}

bool run_element_check(const std::string& check, const TensorElement& x, const invariants::Options& opt) {
  if (check.starts_with("invariant")) return invariants::is_invariant(x, x.alphabet(), parse_n(check, "invariant"));
  if (check.starts_with("kernel"))
    return sigpoly::signature_polynomial(x, parse_n(check, "kernel")).is_zero();
  if (check == "antipode-fixed") return freealg::antipode(x) == x;
  if (check == "volume invariant") {
    if (!x.is_homogeneous()) fail(ErrorCode::InvalidArgument, "volume invariant check needs a homogeneous element");
    return invariants::inv_d_space(x.alphabet(), x.degree_range().second, opt).contains(x);
  }
  if (check == "loop closure") return invariants::loopclosure_membership(x, opt.segments);
  fail(ErrorCode::Parse, "unknown check '" + check + "'");
}

Json check_blocks(const std::vector<freealg::FixtureBlock>& blocks, const invariants::Options& opt, bool& all) {
  auto element_named = [&](const std::string& name) {
    for (const auto& b : blocks)
      if (b.name == name) return fixtures::element(b);
    return fixtures::element(name);
  };
  Json out = Json::array();
  for (const auto& b : blocks) {
    Json checks = Json::array();
    if (b.get("kind", "element") == "polynomial") {
      const auto source = b.get("element");
      if (source.empty()) fail(ErrorCode::Parse, "polynomial fixture '" + b.name + "' names no element");
      const auto printed = fixtures::polynomial(b);
      const bool ok = sigpoly::signature_polynomial(element_named(source), printed.points()) == printed;
      checks.push_back({{"check", "image of " + source}, {"pass", ok}});
      all = all && ok;
    } else {
      const auto x = fixtures::element(b);
      std::stringstream ss(b.get("checks"));
      std::string item;
      while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        if (opt.progress) std::fprintf(stderr, "checking %s: %s\n", b.name.c_str(), item.c_str());
        const bool ok = run_element_check(item, x, opt);
        checks.push_back({{"check", item}, {"pass", ok}});
        all = all && ok;
      }
    }
    out.push_back({{"name", b.name}, {"checks", checks}});
  }
  return out;
}

std::vector<freealg::FixtureBlock> resolve_fixture(const std::string& what) {
  if (std::filesystem::is_regular_file(what)) return fixtures::load_file(what);
  for (const auto& [file, text] : fixtures::embedded())
    if (file == what) return freealg::parse_fixture_text(text);
  return {fixtures::find(what)};
}

}  // namespace

extern "C" {

const char* sigvol_last_error(void) { return last_error.c_str(); }
void sigvol_string_free(char* s) { std::free(s); }
const char* sigvol_version(void) { return "1.0.0"; }

sigvol_status sigvol_element_parse(const char* text, int d, sigvol_element** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new sigvol_element{TensorElement::parse(text, d)};
  });
}

sigvol_status sigvol_element_fixture(const char* name, sigvol_element** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = new sigvol_element{fixtures::element(std::string(name))};
  });
}

void sigvol_element_free(sigvol_element* x) { delete x; }

sigvol_status sigvol_element_to_string(const sigvol_element* x, char** out) {
  return guard([&] {
    need(x, "element");
    need(out, "out");
    *out = dup(x->x.to_string());
  });
}

sigvol_status sigvol_element_alphabet(const sigvol_element* x, int* out) {
  return guard([&] {
    need(x, "element");
    need(out, "out");
    *out = x->x.alphabet();
  });
}

sigvol_status sigvol_element_equal(const sigvol_element* a, const sigvol_element* b, int* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = a->x == b->x ? 1 : 0;
  });
}

sigvol_status sigvol_shuffle(const sigvol_element* a, const sigvol_element* b, sigvol_element** out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = new sigvol_element{freealg::shuffle(a->x, b->x)};
  });
}

sigvol_status sigvol_concat(const sigvol_element* a, const sigvol_element* b, sigvol_element** out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = new sigvol_element{freealg::concat(a->x, b->x)};
  });
}

sigvol_status sigvol_antipode(const sigvol_element* x, sigvol_element** out) {
  return guard([&] {
    need(x, "element");
    need(out, "out");
    *out = new sigvol_element{freealg::antipode(x->x)};
  });
}

sigvol_status sigvol_timerev_project(const sigvol_element* x, sigvol_element** out) {
  return guard([&] {
    need(x, "element");
    need(out, "out");
    *out = new sigvol_element{freealg::timerev_project(x->x)};
  });
}

sigvol_status sigvol_shuffle_power(const sigvol_element* x, unsigned k, sigvol_element** out) {
  return guard([&] {
    need(x, "element");
    need(out, "out");
    *out = new sigvol_element{freealg::shuffle_power(x->x, k)};
  });
}

sigvol_status sigvol_vol(int d, const int* letters, size_t count, sigvol_element** out) {
  return guard([&] {
    need(out, "out");
    if (d < 1 || d > 9) fail(ErrorCode::OutOfRange, "d must lie in 1..9");
    if (!letters) {
      *out = new sigvol_element{freealg::vol(d)};
      return;
    }
    std::vector<freealg::Letter> ls;
    for (size_t i = 0; i < count; ++i) {
      if (letters[i] < 1 || letters[i] > d) fail(ErrorCode::OutOfRange, "letter outside 1..d");
      ls.push_back(static_cast<freealg::Letter>(letters[i]));
    }
    *out = new sigvol_element{freealg::vol(d, ls)};
  });
}

sigvol_status sigvol_lyndon_json(int d, unsigned k, char** out) {
  return guard([&] {
    need(out, "out");
    Json words = Json::array();
    for (const auto& w : freealg::lyndon_words(d, k)) words.push_back(w.to_string());
    emit(Json{{"d", d}, {"k", k}, {"count", words.size()}, {"words", words}}, out);
  });
}

sigvol_status sigvol_signature_json(const char* points_json, unsigned maxdeg, char** out) {
  return guard([&] {
    need(out, "out");
    const auto path = parse_points(points_json);
    const auto s = sigpoly::pl_signature(path, maxdeg);
    Json levels = Json::array();
    for (size_t k = 0; k <= maxdeg; ++k) {
      Json level = Json::object();
      const auto words = freealg::words_of_degree(path.dim(), k);
      for (size_t i = 0; i < words.size(); ++i) level[words[i].to_string()] = exactq::to_string(s.level(k)[i]);
      levels.push_back(level);
    }
    emit(Json{{"d", path.dim()}, {"points", path.size()}, {"maxdeg", maxdeg}, {"levels", levels}}, out);
  });
}

sigvol_status sigvol_pair(const char* points_json, const sigvol_element* x, char** value) {
  return guard([&] {
    need(x, "element");
    need(value, "value");
    const auto path = parse_points(points_json);
    if (path.dim() != x->x.alphabet()) fail(ErrorCode::DimensionMismatch, "path dimension differs from alphabet");
    const auto s = sigpoly::pl_signature(path, x->x.degree_range().second);
    *value = dup(exactq::to_string(sigpoly::pair(s, x->x)));
  });
}

sigvol_status sigvol_hmap(const sigvol_element* x, int n, sigvol_polynomial** out) {
  return guard([&] {
    need(x, "element");
    need(out, "out");
    *out = new sigvol_polynomial{sigpoly::signature_polynomial(x->x, n)};
  });
}

sigvol_status sigvol_polynomial_parse(const char* text, int d, int n, sigvol_polynomial** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new sigvol_polynomial{IncrementPolynomial::parse(text, d, n)};
  });
}

sigvol_status sigvol_polynomial_fixture(const char* name, sigvol_polynomial** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = new sigvol_polynomial{fixtures::polynomial(std::string(name))};
  });
}

void sigvol_polynomial_free(sigvol_polynomial* p) { delete p; }

sigvol_status sigvol_polynomial_to_string(const sigvol_polynomial* p, char** out) {
  return guard([&] {
    need(p, "polynomial");
    need(out, "out");
    *out = dup(p->p.to_string());
  });
}

sigvol_status sigvol_polynomial_equal(const sigvol_polynomial* a, const sigvol_polynomial* b, int* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = a->p == b->p ? 1 : 0;
  });
}

sigvol_status sigvol_permute_control_points(const sigvol_polynomial* p, const int* sigma, size_t n,
                                            sigvol_polynomial** out) {
  return guard([&] {
    need(p, "polynomial");
    need(sigma, "sigma");
    need(out, "out");
    std::vector<int> s(sigma, sigma + n);
    *out = new sigvol_polynomial{sigpoly::permute_control_points(p->p, s)};
  });
}

sigvol_status sigvol_substitute_collinear(const sigvol_polynomial* p, int i, const char* lambda,
                                         sigvol_polynomial** out) {
  return guard([&] {
    need(p, "polynomial");
    need(lambda, "lambda");
    need(out, "out");
    *out = new sigvol_polynomial{sigpoly::substitute_collinear(p->p, i, exactq::parse_rational(lambda))};
  });
}

sigvol_status sigvol_group_create(const char* kind, int d, int n, sigvol_group** out) {
  return guard([&] {
    need(kind, "kind");
    need(out, "out");
    *out = new sigvol_group{make_group(kind, d, n)};
  });
}

sigvol_status sigvol_stabilizer(int d, int n, int bruteforce, sigvol_group** out) {
  return guard([&] {
    need(out, "out");
    *out = new sigvol_group{bruteforce ? posgeom::stabilizer_bruteforce(d, n) : posgeom::stabilizer_structural(d, n)};
  });
}

void sigvol_group_free(sigvol_group* g) { delete g; }

sigvol_status sigvol_group_order(const sigvol_group* g, size_t* out) {
  return guard([&] {
    need(g, "group");
    need(out, "out");
    *out = g->g.order();
  });
}

sigvol_status sigvol_group_json(const sigvol_group* g, int with_elements, char** out) {
  return guard([&] {
    need(g, "group");
    need(out, "out");
    Json j{{"n", g->g.degree()},
           {"order", g->g.order()},
           {"structure_tag", g->g.tag()},
           {"generators", perm_list(g->g.generators())}};
    if (with_elements && g->g.order() <= 100) j["elements"] = perm_list(g->g.elements());
    emit(j, out);
  });
}

sigvol_status sigvol_gale_json(int d, int n, char** out) {
  return guard([&] {
    need(out, "out");
    const auto facets = posgeom::gale_facets(d, n);
    emit(Json{{"d", d}, {"n", n}, {"count", facets.size()}, {"facets", facets}}, out);
  });
}

sigvol_status sigvol_volume_json(int d, const char* params_csv, char** out) {
  return guard([&] {
    need(out, "out");
    const auto params = parse_csv(params_csv);
    const auto inst = posgeom::moment_curve_instance(d, params);
    const auto sv = posgeom::signed_volume(inst.path);
    const auto tv = posgeom::polytope_volume(inst);
    Json ps = Json::array();
    for (const auto& t : params) ps.push_back(exactq::to_string(t));
    emit(Json{{"d", d},
              {"n", inst.n},
              {"params", ps},
              {"signed", exactq::to_string(sv)},
              {"triangulation", exactq::to_string(tv)},
              {"agree", sv == tv}},
         out);
  });
}

sigvol_status sigvol_signed_volume(const char* points_json, char** value) {
  return guard([&] {
    need(value, "value");
    *value = dup(exactq::to_string(posgeom::signed_volume(parse_points(points_json))));
  });
}

sigvol_status sigvol_inv_space_json(int d, int n, unsigned k, const sigvol_group* g, const sigvol_options* o,
                                    char** out) {
  return guard([&] {
    need(out, "out");
    const auto opt = options(o);
    const PermGroup group = g ? g->g : posgeom::stabilizer_structural(d, n);
    const auto b = invariants::invariant_space(d, n, k, group, opt);
    emit(Json{{"d", d},
              {"n", n},
              {"k", k},
              {"group", group.tag()},
              {"dim_raw", b.dim()},
              {"dim_image", invariants::dim_image(b, n, opt)},
              {"basis", basis_json(b)}},
         out);
  });
}

sigvol_status sigvol_kernel_space_json(int d, int n, unsigned k, const sigvol_options* o, char** out) {
  return guard([&] {
    need(out, "out");
    const auto b = invariants::kernel_space(d, n, k, options(o));
    emit(Json{{"d", d}, {"n", n}, {"k", k}, {"dim_raw", b.dim()}, {"dim_image", 0}, {"basis", basis_json(b)}}, out);
  });
}

sigvol_status sigvol_timerev_space_json(int d, unsigned k, char** out) {
  return guard([&] {
    need(out, "out");
    const auto b = invariants::timerev_space(d, k);
    emit(Json{{"d", d}, {"k", k}, {"dim_raw", b.dim()}, {"basis", basis_json(b)}}, out);
  });
}

sigvol_status sigvol_loopclosure_space_json(int d, unsigned k, const sigvol_options* o, char** out) {
  return guard([&] {
    need(out, "out");
    const auto b = invariants::loopclosure_space(d, k, options(o));
    emit(Json{{"d", d}, {"k", k}, {"dim_raw", b.dim()}, {"basis", basis_json(b)}}, out);
  });
}

sigvol_status sigvol_inv_d_json(int d, unsigned k, const sigvol_options* o, char** out) {
  return guard([&] {
    need(out, "out");
    const auto b = invariants::inv_d_space(d, k, options(o));
    emit(Json{{"d", d},
              {"k", k},
              {"constraints", invariants::inv_d_plan(d).description},
              {"dim_raw", b.dim()},
              {"basis", basis_json(b)}},
         out);
  });
}

sigvol_status sigvol_conjecture_json(int d, unsigned k, const sigvol_options* o, char** out) {
  return guard([&] {
    need(out, "out");
    const auto r = invariants::conjecture_evidence(d, k, options(o));
    emit(Json{{"d", r.d},
              {"n", r.n},
              {"k", r.k},
              {"dim_raw", r.dim_raw},
              {"dim_image", r.dim_image},
              {"span_dim", r.span_dim},
              {"verdict", r.verdict()}},
         out);
  });
}

sigvol_status sigvol_is_invariant(const sigvol_element* x, int n, const sigvol_group* g, int* out) {
  return guard([&] {
    need(x, "element");
    need(out, "out");
    *out = (g ? invariants::is_invariant(x->x, n, g->g) : invariants::is_invariant(x->x, x->x.alphabet(), n)) ? 1 : 0;
  });
}

sigvol_status sigvol_in_kernel(const sigvol_element* x, int n, int* out) {
  return guard([&] {
    need(x, "element");
    need(out, "out");
    *out = sigpoly::signature_polynomial(x->x, n).is_zero() ? 1 : 0;
  });
}

sigvol_status sigvol_loopclosure_member(const sigvol_element* x, int segments, int* out) {
  return guard([&] {
    need(x, "element");
    need(out, "out");
    *out = invariants::loopclosure_membership(x->x, segments) ? 1 : 0;
  });
}

sigvol_status sigvol_check_fixture_json(const char* name_or_path, const sigvol_options* o, char** out,
                                        int* all_pass) {
  return guard([&] {
    need(name_or_path, "fixture");
    need(out, "out");
    bool all = true;
    Json results = check_blocks(resolve_fixture(name_or_path), options(o), all);
    if (all_pass) *all_pass = all ? 1 : 0;
    emit(Json{{"fixtures", results}, {"pass", all}}, out);
  });
}

sigvol_status sigvol_check_fixture_text_json(const char* text, const sigvol_options* o, char** out, int* all_pass) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    bool all = true;
    Json results = check_blocks(freealg::parse_fixture_text(text), options(o), all);
    if (all_pass) *all_pass = all ? 1 : 0;
    emit(Json{{"fixtures", results}, {"pass", all}}, out);
  });
}

int sigvol_criterion_count(void) { return reproduce::kCriterionCount; }

sigvol_status sigvol_reproduce_json(const int* ids, size_t count, const sigvol_options* o, char** out,
                                    int* all_pass) {
  return guard([&] {
    need(out, "out");
    std::vector<int> which;
    if (ids) {
      which.assign(ids, ids + count);
    } else {
      for (int i = 1; i <= reproduce::kCriterionCount; ++i) which.push_back(i);
    }
    for (int id : which)
      if (id < 1 || id > reproduce::kCriterionCount) fail(ErrorCode::OutOfRange, "no check numbered " + std::to_string(id));
    const auto opt = options(o);
    reproduce::Runner runner(opt);
    Json items = Json::array();
    bool all = true;
    for (int id : which) {
      const auto r = runner.run(id);
      if (opt.progress) std::fprintf(stderr, "%s\n", reproduce::format_line(r).c_str());
      items.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
      all = all && r.pass;
    }
    if (all_pass) *all_pass = all ? 1 : 0;
    emit(Json{{"criteria", items}, {"pass", all}}, out);
  });
}

}  // extern "C"

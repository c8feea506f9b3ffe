// Command-line front end. Talks to the library only through sigvol.h.

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sigvol/sigvol.h"

namespace {

using Json = nlohmann::ordered_json;

// Status from the library; usage-type codes map to exit 2, the rest to 1.
struct Failure {
  sigvol_status status;
  std::string message;
};

void check(sigvol_status s) {
  if (s != SIGVOL_OK) throw Failure{s, sigvol_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  sigvol_string_free(s);
  return out;
}

struct ElementFree {
  void operator()(sigvol_element* x) const { sigvol_element_free(x); }
};
struct PolynomialFree {
  void operator()(sigvol_polynomial* p) const { sigvol_polynomial_free(p); }
};
struct GroupFree {
  void operator()(sigvol_group* g) const { sigvol_group_free(g); }
};
using Element = std::unique_ptr<sigvol_element, ElementFree>;
using Polynomial = std::unique_ptr<sigvol_polynomial, PolynomialFree>;
using Group = std::unique_ptr<sigvol_group, GroupFree>;

struct Flags {
  int d = 0;
  int n = 0;
  int k = -1;
  std::string group = "auto";
  int segments = 0;
  std::string format = "json";
  std::string fixture;
  unsigned threads = 1;
  std::vector<std::string> elements;
  std::string points;
  std::string letters;
  std::string moment_curve;
  std::string only;
  std::string checks;
  bool bruteforce = false;
  bool list_elements = false;
  bool quiet = false;
};

sigvol_options lib_options(const Flags& f) {
  return sigvol_options{f.threads, f.segments, f.quiet ? 0 : 1};
}

[[noreturn]] void usage(const std::string& what) { throw CLI::ValidationError(what); }

int need_d(const Flags& f) {
  if (f.d < 1) usage("--d is required");
  return f.d;
}
int need_n(const Flags& f) {
  if (f.n < 1) usage("--n is required");
  return f.n;
}
unsigned need_k(const Flags& f) {
  if (f.k < 0) usage("--k is required");
  return static_cast<unsigned>(f.k);
}

Element parse_element(const std::string& text, int d) {
  sigvol_element* x = nullptr;
  check(sigvol_element_parse(text.c_str(), d, &x));
  return Element(x);
}

// The element named by --fixture, else positional argument `index`.
Element element_arg(const Flags& f, std::size_t index) {
  sigvol_element* x = nullptr;
  if (index == 0 && !f.fixture.empty()) {
    check(sigvol_element_fixture(f.fixture.c_str(), &x));
    return Element(x);
  }
  if (f.elements.size() <= index) usage("missing element argument");
  return parse_element(f.elements[index], need_d(f));
}

std::string element_text(const sigvol_element* x) {
  char* s = nullptr;
  check(sigvol_element_to_string(x, &s));
  return take(s);
}

std::vector<int> int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      usage("not an integer list: " + csv);
    }
  }
  return out;
}

void print_text(const Json& j, const std::string& indent = "") {
  for (const auto& [key, v] : j.items()) {
    if (v.is_array() && !v.empty() && (v.front().is_string() || v.front().is_object() || v.front().is_array())) {
      std::cout << indent << key << ":\n";
      for (const auto& item : v) {
        if (item.is_object()) {
          print_text(item, indent + "  ");
          std::cout << "\n";
        } else {
          std::cout << indent << "  " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
        }
      }
    } else {
      std::cout << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void output(const Flags& f, const Json& j) {
  if (f.format == "text")
    print_text(j);
  else
    std::cout << j.dump(2) << "\n";
}

void output_raw(const Flags& f, char* s) { output(f, Json::parse(take(s))); }

void element_result(const Flags& f, const sigvol_element* x) {
  int d = 0;
  check(sigvol_element_alphabet(x, &d));
  const auto text = element_text(x);
  if (f.format == "text")
    std::cout << text << "\n";
  else
    std::cout << Json{{"d", d}, {"result", text}}.dump(2) << "\n";
}

using BinaryOp = sigvol_status (*)(const sigvol_element*, const sigvol_element*, sigvol_element**);

int binary(const Flags& f, BinaryOp op) {
  if (f.elements.size() != 2) usage("expects two elements");
  auto a = parse_element(f.elements[0], need_d(f));
  auto b = parse_element(f.elements[1], need_d(f));
  sigvol_element* r = nullptr;
  check(op(a.get(), b.get(), &r));
  Element res(r);
  element_result(f, res.get());
  return 0;
}

int cmd_vol(const Flags& f) {
  sigvol_element* r = nullptr;
  if (f.letters.empty()) {
    check(sigvol_vol(need_d(f), nullptr, 0, &r));
  } else {
    const auto ls = int_list(f.letters);
    check(sigvol_vol(need_d(f), ls.data(), ls.size(), &r));
  }
  Element x(r);
  element_result(f, x.get());
  return 0;
}

int cmd_pair(const Flags& f) {
  if (f.points.empty()) usage("--points is required");
  auto x = element_arg(f, 0);
  char* v = nullptr;
  check(sigvol_pair(f.points.c_str(), x.get(), &v));
  const auto value = take(v);
  if (f.format == "text")
    std::cout << value << "\n";
  else
    std::cout << Json{{"value", value}}.dump(2) << "\n";
  return 0;
}

int cmd_hmap(const Flags& f) {
  auto x = element_arg(f, 0);
  sigvol_polynomial* p = nullptr;
  check(sigvol_hmap(x.get(), need_n(f), &p));
  Polynomial poly(p);
  char* s = nullptr;
  check(sigvol_polynomial_to_string(poly.get(), &s));
  const auto text = take(s);
  int d = 0;
  check(sigvol_element_alphabet(x.get(), &d));
  if (f.format == "text")
    std::cout << text << "\n";
  else
    std::cout << Json{{"d", d}, {"n", f.n}, {"polynomial", text}}.dump(2) << "\n";
  return 0;
}

int cmd_stabilizer(const Flags& f) {
  sigvol_group* g = nullptr;
  check(sigvol_stabilizer(need_d(f), need_n(f), f.bruteforce ? 1 : 0, &g));
  Group group(g);
  char* s = nullptr;
  check(sigvol_group_json(group.get(), f.list_elements ? 1 : 0, &s));
  output_raw(f, s);
  return 0;
}

int cmd_inv_space(const Flags& f) {
  sigvol_group* g = nullptr;
  check(sigvol_group_create(f.group.c_str(), need_d(f), need_n(f), &g));
  Group group(g);
  const auto opt = lib_options(f);
  char* s = nullptr;
  check(sigvol_inv_space_json(f.d, f.n, need_k(f), group.get(), &opt, &s));
  output_raw(f, s);
  return 0;
}

int cmd_check_element(const Flags& f) {
  const auto opt = lib_options(f);
  int pass = 0;
  Json report;
  if (!f.fixture.empty()) {
    char* s = nullptr;
    check(sigvol_check_fixture_json(f.fixture.c_str(), &opt, &s, &pass));
    report = Json::parse(take(s));
  } else {
    // Inline element: --check names the properties, as in a fixture block.
    if (f.checks.empty()) usage("give --fixture, or an element with --check");
    auto x = element_arg(f, 0);
    std::ostringstream block;
    block << "[inline]\nd = " << need_d(f) << "\nchecks = " << f.checks << "\n" << element_text(x.get()) << "\n";
    char* s = nullptr;
    check(sigvol_check_fixture_text_json(block.str().c_str(), &opt, &s, &pass));
    report = Json::parse(take(s));
  }
  if (f.format == "text") {
    for (const auto& fx : report["fixtures"])
      for (const auto& c : fx["checks"])
        std::cout << (c["pass"].get<bool>() ? "PASS  " : "FAIL  ") << fx["name"].get<std::string>() << ": "
                  << c["check"].get<std::string>() << "\n";
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return pass ? 0 : 1;
}

int cmd_reproduce(const Flags& f) {
  const auto opt = lib_options(f);
  std::vector<int> ids;
  if (!f.only.empty()) ids = int_list(f.only);
  int pass = 0;
  char* s = nullptr;
  check(sigvol_reproduce_json(ids.empty() ? nullptr : ids.data(), ids.size(), &opt, &s, &pass));
  const Json report = Json::parse(take(s));
  if (f.format == "text") {
    for (const auto& c : report["criteria"]) {
      std::cout << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << c["id"].get<int>() << "  "
                << c["title"].get<std::string>();
      const auto detail = c["detail"].get<std::string>();
      if (!detail.empty()) std::cout << "  [" << detail << "]";
      std::cout << "\n";
    }
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact path-signature invariants of cyclic polytopes"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(sigvol_version()));

  Flags f;
  app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", f.threads, "Worker threads for matrix assembly")->check(CLI::Range(1u, 256u));
  app.add_flag("--quiet,-q", f.quiet, "No progress lines on standard error");

  std::optional<int (*)(const Flags&)> action;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Flags&)) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&action, fn] { action = fn; });
    return s;
  };
  auto add_d = [&](CLI::App* s) { s->add_option("--d", f.d, "Dimension / alphabet size")->check(CLI::Range(1, 9)); };
  auto add_n = [&](CLI::App* s) { s->add_option("--n", f.n, "Number of control points")->check(CLI::Range(1, 17)); };
  auto add_k = [&](CLI::App* s) { s->add_option("--k", f.k, "Degree")->check(CLI::Range(0, 64)); };
  auto add_elems = [&](CLI::App* s, const char* help) { s->add_option("elements", f.elements, help); };
  auto add_fixture = [&](CLI::App* s) {
    s->add_option("--fixture", f.fixture, "Fixture name or fixture file path");
  };

  auto* shuffle = sub("shuffle", "Shuffle product of two elements", [](const Flags& fl) {
    return binary(fl, sigvol_shuffle);
  });
  add_d(shuffle);
  add_elems(shuffle, "Two elements, e.g. 12 '3 - 1/2*21'");

  auto* concat = sub("concat", "Concatenation product of two elements", [](const Flags& fl) {
    return binary(fl, sigvol_concat);
  });
  add_d(concat);
  add_elems(concat, "Two elements");

  auto* antipode = sub("antipode", "Antipode (signed reversal) of an element", [](const Flags& fl) {
    auto x = element_arg(fl, 0);
    sigvol_element* r = nullptr;
    check(sigvol_antipode(x.get(), &r));
    Element res(r);
    element_result(fl, res.get());
    return 0;
  });
  add_d(antipode);
  add_fixture(antipode);
  add_elems(antipode, "Element");

  auto* vol = sub("vol", "Signed-volume element", cmd_vol);
  add_d(vol);
  vol->add_option("--letters", f.letters, "Comma-separated distinct letters (default 1..d)");

  auto* lyndon = sub("lyndon", "Lyndon words of one length", [](const Flags& fl) {
    char* s = nullptr;
    check(sigvol_lyndon_json(need_d(fl), need_k(fl), &s));
    output_raw(fl, s);
    return 0;
  });
  add_d(lyndon);
  add_k(lyndon);

  auto* signature = sub("signature", "Truncated signature of a piecewise linear path", [](const Flags& fl) {
    if (fl.points.empty()) usage("--points is required");
    char* s = nullptr;
    check(sigvol_signature_json(fl.points.c_str(), need_k(fl), &s));
    output_raw(fl, s);
    return 0;
  });
  signature->add_option("--points", f.points, "JSON array of points, e.g. [[0,0],[1,0],[\"1/2\",1]]");
  add_k(signature);

  auto* pair = sub("pair", "Pair a path signature with an element", cmd_pair);
  pair->add_option("--points", f.points, "JSON array of points");
  add_d(pair);
  add_fixture(pair);
  add_elems(pair, "Element");

  auto* hmap = sub("hmap", "Signature polynomial of an element for n control points", cmd_hmap);
  add_d(hmap);
  add_n(hmap);
  add_fixture(hmap);
  add_elems(hmap, "Element");

  auto* stabilizer = sub("stabilizer", "Column permutations preserving positivity", cmd_stabilizer);
  add_d(stabilizer);
  add_n(stabilizer);
  stabilizer->add_flag("--bruteforce", f.bruteforce, "Enumerate S_n instead of using generators");
  stabilizer->add_flag("--elements", f.list_elements, "List elements (orders up to 100)");

  auto* gale = sub("gale", "Facets of the cyclic polytope", [](const Flags& fl) {
    char* s = nullptr;
    check(sigvol_gale_json(need_d(fl), need_n(fl), &s));
    output_raw(fl, s);
    return 0;
  });
  add_d(gale);
  add_n(gale);

  auto* volume = sub("volume", "Signed and triangulated volume of a moment-curve polytope", [](const Flags& fl) {
    if (fl.moment_curve.empty()) usage("--moment-curve is required");
    char* s = nullptr;
    check(sigvol_volume_json(need_d(fl), fl.moment_curve.c_str(), &s));
    output_raw(fl, s);
    return 0;
  });
  add_d(volume);
  volume->add_option("--moment-curve", f.moment_curve, "Increasing parameters, e.g. 0,1,2,3,4");

  auto* inv_space = sub("inv-space", "Group-invariant elements of one degree", cmd_inv_space);
  add_d(inv_space);
  add_n(inv_space);
  add_k(inv_space);
  inv_space->add_option("--group", f.group, "Group acting on control points")
      ->check(CLI::IsMember({"auto", "trivial", "cyclic", "dihedral", "full"}));

  auto* kernel_space = sub("kernel-space", "Elements with zero signature polynomial", [](const Flags& fl) {
    const auto opt = lib_options(fl);
    char* s = nullptr;
    check(sigvol_kernel_space_json(need_d(fl), need_n(fl), need_k(fl), &opt, &s));
    output_raw(fl, s);
    return 0;
  });
  add_d(kernel_space);
  add_n(kernel_space);
  add_k(kernel_space);

  auto* timerev_space = sub("timerev-space", "Antipode-fixed elements of one degree", [](const Flags& fl) {
    char* s = nullptr;
    check(sigvol_timerev_space_json(need_d(fl), need_k(fl), &s));
    output_raw(fl, s);
    return 0;
  });
  add_d(timerev_space);
  add_k(timerev_space);

  auto* loop_space = sub("loopclosure-space", "Loop-closure invariants of one degree", [](const Flags& fl) {
    const auto opt = lib_options(fl);
    char* s = nullptr;
    check(sigvol_loopclosure_space_json(need_d(fl), need_k(fl), &opt, &s));
    output_raw(fl, s);
    return 0;
  });
  add_d(loop_space);
  add_k(loop_space);
  loop_space->add_option("--segments", f.segments, "Segments used to certify closure (0: degree)")
      ->check(CLI::Range(0, 16));

  auto* inv_d = sub("inv-d", "Volume invariants of one degree", [](const Flags& fl) {
    const auto opt = lib_options(fl);
    char* s = nullptr;
    check(sigvol_inv_d_json(need_d(fl), need_k(fl), &opt, &s));
    output_raw(fl, s);
    return 0;
  });
  add_d(inv_d);
  add_k(inv_d);
  inv_d->add_option("--segments", f.segments, "Segments used to certify closure (0: degree)")
      ->check(CLI::Range(0, 16));

  auto* check_element = sub("check-element", "Run the membership checks of fixtures", cmd_check_element);
  add_fixture(check_element);
  add_d(check_element);
  add_elems(check_element, "Element (instead of --fixture)");
  check_element->add_option("--check", f.checks,
                            "Checks for an inline element: 'invariant n=4; kernel n=5; antipode-fixed; "
                            "volume invariant; loop closure'");
  check_element->add_option("--segments", f.segments, "Segments used to certify closure (0: degree)")
      ->check(CLI::Range(0, 16));

  auto* conjecture = sub("conjecture", "Compare volume invariants with the image dimension", [](const Flags& fl) {
    const auto opt = lib_options(fl);
    char* s = nullptr;
    check(sigvol_conjecture_json(need_d(fl), need_k(fl), &opt, &s));
    output_raw(fl, s);
    return 0;
  });
  add_d(conjecture);
  add_k(conjecture);

  auto* reproduce = sub("reproduce-paper", "Run the numbered reproduction checks", cmd_reproduce);
  reproduce->add_option("--only", f.only, "Comma-separated check numbers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return (*action)(f);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Failure& e) {
    std::cerr << "error: " << e.message << "\n";
    switch (e.status) {
      case SIGVOL_INVALID_ARGUMENT:
      case SIGVOL_PARSE_ERROR:
      case SIGVOL_OUT_OF_RANGE:
      case SIGVOL_DIMENSION_MISMATCH:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include <random>
#include <sstream>

#include "doctest.h"
#include "fqdyn/frontend/cli.hpp"
#include "fqdyn/frontend/report.hpp"
#include "helpers.hpp"
#include "json.hpp"

using namespace fqdyn;
using namespace fqdyn::frontend;
using testutil::P;

namespace {

FieldPtr random_field(std::mt19937_64& rng, bool char_at_least_5) {
  static const std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13, 101, 65537};
  std::uniform_int_distribution<std::size_t> pick(char_at_least_5 ? 2 : 0, primes.size() - 1);
  const std::uint64_t p = primes[pick(rng)];
  if (p > 13 || rng() % 2) return Field::prime(p);
  // Random monic modulus of degree 2 or 3, retried until irreducible.
  const unsigned k = 2 + rng() % 2;
  std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
  while (true) {
    FieldSpec s;
    s.p = p;
    s.k = k;
    s.modulus.resize(k + 1);
    for (auto& c : s.modulus) c = coef(rng);
    s.modulus[k] = 1;
    s.generator = rng() % 2 ? "u" : "w";
    try {
      return Field::make(s);
    } catch (const std::exception&) {
    }
  }
}

RationalMap random_map(std::mt19937_64& rng, const FieldPtr& f) {
  const int d = 1 + static_cast<int>(rng() % 4);
  while (true) {
    try {
      return RationalMap::create(testutil::rand_xpoly(rng, f, d, 3), testutil::rand_xpoly(rng, f, d, 3));
    } catch (const DomainError&) {
    }
  }
}

Expr random_expr(std::mt19937_64& rng, int depth) {
  Expr e;
  const int pick = depth == 0 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % 8);
  switch (pick) {
    case 0:
      e.kind = Expr::Kind::Int;
      e.value = rng() % 1000;
      return e;
    case 1:
      e.kind = Expr::Kind::Var;
      e.name = std::string(1, "txyu"[rng() % 4]);
      return e;
    case 2:
      e.kind = Expr::Kind::Neg;
      e.args = {random_expr(rng, depth - 1)};
      return e;
    case 3:
      e.kind = Expr::Kind::Pow;
      e.value = rng() % 5;
      e.args = {random_expr(rng, depth - 1)};
      return e;
    default:
      e.kind = std::array{Expr::Kind::Add, Expr::Kind::Sub, Expr::Kind::Mul, Expr::Kind::Div}[pick - 4];
      e.args = {random_expr(rng, depth - 1), random_expr(rng, depth - 1)};
      return e;
  }
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

}  // namespace

TEST_CASE("expression precedence") {
  const auto e = parse_expression("-t^2*3 - x/y/2 + 1");
  CHECK(to_source(e) == "-t^2*3-x/y/2+1");
  // ^ binds tighter than unary minus.
  const auto neg = parse_expression("-t^2");
  REQUIRE(neg.kind == Expr::Kind::Neg);
  CHECK(neg.args[0].kind == Expr::Kind::Pow);
  // Left associativity.
  const auto sub = parse_expression("a-b-c");
  REQUIRE(sub.kind == Expr::Kind::Sub);
  CHECK(sub.args[0].kind == Expr::Kind::Sub);
  CHECK(to_source(parse_expression("a-(b-c)")) == "a-(b-c)");
  CHECK(to_source(parse_expression("(a*b)^2")) == "(a*b)^2");
  CHECK(to_source(parse_expression("(-a)^2")) == "(-a)^2");
  CHECK(to_source(parse_expression("((t))")) == "t");
}

TEST_CASE("ast round trip on random trees") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Expr e = random_expr(rng, 4);
    const std::string s = to_source(e);
    const Expr back = parse_expression(s);
    INFO(s);
    CHECK(same_tree(e, back));
  }
}

TEST_CASE("spans") {
  const auto e = parse_expression("t + (x*y)");
  CHECK(e.span.offset == 0);
  CHECK(e.span.length == 9);
  CHECK(e.args[1].span.offset == 4);
  CHECK(e.args[1].span.length == 5);
}

TEST_CASE("normalization examples") {
  auto f7 = Field::prime(7);
  CHECK(render_ratfunc(parse_ratfunc("t*1 + t", f7)) == "2*t");
  CHECK(render_poly(parse_poly("8*t^2 - 1", f7)) == "t^2+6");
  CHECK(render_ratfunc(parse_ratfunc("(t^2-1)/(2*t-2)", f7)) == "4*t+4");
  CHECK(render_point(parse_point("oo", f7)) == "oo");
  CHECK(render_point(ProjPointK::infinity(f7)) == "oo");
  const auto phi = parse_map("x^6/(x^6+t^2*x^5+t*x^4+t*x+t)", f7);
  CHECK(phi.degree() == 6);
  CHECK(phi == family_map(f7, 6, XPoly(PolyT(f7), {P(f7, {0, 1})})));
}

TEST_CASE("extension field spec") {
  const auto f = parse_field("GF(49)=GF(7)[u]/(u^2+6*u+3)");
  CHECK(f->p() == 7);
  CHECK(f->k() == 2);
  CHECK(f->q() == 49);
  CHECK(render_field(f) == "GF(49)=GF(7)[u]/(u^2+6*u+3)");
  const auto z = parse_ratfunc("u*t + u^2", f);
  // u^2 = u + 4 after reduction by the modulus.
  CHECK(z == parse_ratfunc("u*t + u + 4", f));
  CHECK_NOTHROW(parse_field("GF(49)=GF(7)[u]/(u^2+1)"));
  CHECK_THROWS_AS(parse_field("GF(49)=GF(7)[u]/(u^2+6)"), ParseError);  // (u-1)(u+1)
}

TEST_CASE("round trip of random values") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const auto f = random_field(rng, false);
    CHECK(parse_field(render_field(f))->spec() == f->spec());

    const auto p = testutil::rand_poly(rng, f, 6);
    CHECK(parse_poly(render_poly(p), f) == p);

    const auto z = testutil::rand_ratk(rng, f, 4);
    CHECK(parse_ratfunc(render_ratfunc(z), f) == z);

    const auto phi = random_map(rng, f);
    CHECK(parse_map(render_map(phi), f) == phi);

    const auto pt = rng() % 10 == 0 ? ProjPointK::infinity(f) : ProjPointK::from_ratk(testutil::rand_ratk(rng, f, 3));
    CHECK(parse_point(render_point(pt), f) == pt);

    const auto g = testutil::rand_xpoly(rng, f, 4, 3);
    CHECK(parse_xpoly(render_xpoly(g), f) == g);
  }
  for (int i = 0; i < 200; ++i) {
    const auto f = random_field(rng, true);
    while (true) {
      try {
        const auto E = EllipticCurveK::make(testutil::rand_ratk(rng, f, 2), testutil::rand_ratk(rng, f, 2));
        const auto back = parse_curve(render_curve(E), f);
        CHECK(back.A() == E.A());
        CHECK(back.B() == E.B());
        break;
      } catch (const DomainError&) {
      }
    }
  }
}

TEST_CASE("curve points") {
  auto f7 = Field::prime(7);
  const auto E = parse_curve("y^2 = x^3 + x + t^2 - t^3 - t", f7);
  const auto P0 = parse_curve_point("(t, t)", E);
  CHECK(!P0.at_infinity);
  CHECK(render_curve_point(P0) == "(t, t)");
  CHECK(parse_curve_point("O", E).at_infinity);
  CHECK(render_curve_point(PointE::infinity()) == "O");
  const auto Q = double_point(E, P0);
  CHECK(parse_curve_point(render_curve_point(Q), E) == Q);
  CHECK_THROWS_AS(parse_curve_point("(t, 1)", E), ParseError);
}

TEST_CASE("malformed inputs carry spans") {
  auto f7 = Field::prime(7);
  struct Case {
    std::string kind, text;
    std::size_t line, column;
  };
  const std::vector<Case> cases = {
      {"map", "x^2/(x^2", 1, 5},
      {"map", "x^2 +* 3", 1, 6},
      {"map", "x/x", 1, 1},
      {"map", "x^", 1, 3},
      {"map", "x^-1", 1, 3},
      {"map", "t", 1, 1},
      {"ratfunc", "1/(t-t)", 1, 3},
      {"ratfunc", "t $ 1", 1, 3},
      {"ratfunc", "", 1, 1},
      {"ratfunc", "t\n+ +", 2, 3},
      {"ratfunc", "x", 1, 1},
      {"ratfunc", "t^99999999", 1, 1},
      {"poly", "1/t", 1, 1},
      {"field", "GF(6)", 1, 4},
      {"field", "GF(7", 1, 5},
      {"field", "GF(8)=GF(2)[u]/(u^3+u+1", 1, 24},
      {"field", "GF(9)=GF(3)[u]/(u^2+1)x", 1, 23},
      {"curve", "y^2 = x^3", 1, 7},
      {"curve", "y^3 = x^3 + 1", 1, 3},
      {"point", "(t", 1, 1},
      {"point", "o", 1, 1},
  };
  for (const auto& c : cases) {
    INFO(c.kind, " '", c.text, "'");
    bool threw = false;
    try {
      if (c.kind == "map") parse_map(c.text, f7);
      if (c.kind == "ratfunc") parse_ratfunc(c.text, f7);
      if (c.kind == "poly") parse_poly(c.text, f7);
      if (c.kind == "field") parse_field(c.text);
      if (c.kind == "curve") parse_curve(c.text, f7);
      if (c.kind == "point") parse_point(c.text, f7);
    } catch (const ParseError& e) {
      threw = true;
      CHECK(e.span().line == c.line);
      CHECK(e.span().column == c.column);
      CHECK(e.span().offset <= c.text.size());
      CHECK(std::string(e.what()).rfind(std::to_string(c.line) + ":" + std::to_string(c.column) + ":", 0) == 0);
    }
    CHECK(threw);
  }
}

TEST_CASE("unmatched parenthesis") {
  auto f7 = Field::prime(7);
  try {
    parse_map("x^2/(x^2", f7);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.message() == "unmatched '('");
    CHECK(e.span().offset == 4);
    CHECK(e.expected().count("')'") == 1);
    CHECK(e.excerpt("x^2/(x^2") == "x^2/(x^2\n    ^");
  }
}

TEST_CASE("cli exit codes") {
  std::string out;
  CHECK(cli({"check", "--map", "x^6/(x^6+t^2*x^5+t*x^4+t*x+t)"}, &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["result"]["condition1"]["pass"] == true);
  CHECK(j["result"]["condition2"]["status"] == "pass");
  CHECK(j["inputs"]["map"] == "x^6/(x^6+t^2*x^5+t*x^4+t*x+t)");

  CHECK(cli({"orbit", "--map", "x^2/(x^2"}, &out) == 2);
  j = nlohmann::json::parse(out);
  CHECK(j["error"]["column"] == 5);
  CHECK(j["error"]["option"] == "--map");
  CHECK(!j["error"]["expected"].empty());

  CHECK(cli({"check"}) == 2);
  CHECK(cli({"nonsense"}) == 2);
  CHECK(cli({"scan", "--map", "x^2", "--eps", "1/2"}) == 2);
  CHECK(cli({"scan", "--map", "x^2", "--eps", "abc"}) == 2);
  CHECK(cli({"family", "--d", "4"}) == 2);
  CHECK(cli({"check", "--field", "GF(5)", "--map", "x^2", "--format", "csv"}) == 2);
  CHECK(cli({"mahler", "--field", "GF(5)", "--j", "3", "--precision-cap", "100"}) == 2);
  CHECK(cli({"lattes", "--field", "GF(5)", "--A", "0", "--B", "0"}) == 2);
}

TEST_CASE("cli determinism and config echo") {
  std::string a, b;
  const std::vector<std::string> args = {"scan", "--map", "x^2/(x^2-t)", "--alpha", "t+1", "--n", "4"};
  CHECK(cli(args, &a) == 0);
  CHECK(cli(args, &b) == 0);
  auto ja = nlohmann::json::parse(a), jb = nlohmann::json::parse(b);
  ja.erase("timing_ms");
  jb.erase("timing_ms");
  CHECK(ja.dump() == jb.dump());
  CHECK(ja["config"]["n"]["source"] == "flag");
  CHECK(ja["config"]["degree_cap"]["source"] == "default");
  CHECK(ja["config"]["degree_cap"]["value"] == kDefaultDegreeCap);
}

TEST_CASE("csv tables") {
  std::string out;
  CHECK(cli({"mahler", "--field", "GF(5)", "--j", "2", "--format", "csv"}, &out) == 0);
  CHECK(out == "j,deg_Q,neg_log_err,estimate\n0,1,5,5\n1,5,25,5\n2,25,125,5\n");
  CHECK(cli({"orbit", "--map", "x^2", "--alpha", "t", "--n", "2", "--format", "csv"}, &out) == 0);
  CHECK(out == "n,deg_a,deg_b,ratio,in_N\n0,1,0,inf,1\n1,2,0,inf,1\n2,4,0,inf,1\n");
}

TEST_CASE("batch line splitting") {
  CHECK(split_command_line("check --map 'x^2 + t'") == std::vector<std::string>{"check", "--map", "x^2 + t"});
  CHECK(split_command_line("a \"b \\\" c\" d\\ e") == std::vector<std::string>{"a", "b \" c", "d e"});
  CHECK(split_command_line("  ''  ") == std::vector<std::string>{""});
  CHECK_THROWS_AS(split_command_line("a 'b"), std::invalid_argument);
}

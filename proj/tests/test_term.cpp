#include "doctest.h"

#include "glc/graph.hpp"
#include "glc/term.hpp"

using namespace glc;

TEST_CASE("parse basic lambda syntax") {
    TermPtr t = parse_term("\\x.x");
    REQUIRE(t->kind == TermKind::Lam);
    CHECK(t->name == "x");
    CHECK(t->a->kind == TermKind::Var);

    TermPtr omega = parse_term("(\\x.(x x)) (\\x.(x x))");
    REQUIRE(omega->kind == TermKind::App);
    CHECK(omega->a->kind == TermKind::Lam);
    CHECK(alpha_eq(omega->a, omega->b));

    // utf-8 lambda
    CHECK(alpha_eq(parse_term("λx.x"), parse_term("\\y.y")));
}

TEST_CASE("application is left associative and juxtaposed") {
    TermPtr t = parse_term("a b c");
    REQUIRE(t->kind == TermKind::App);
    CHECK(t->b->name == "c");
    CHECK(t->a->kind == TermKind::App);
}

TEST_CASE("scale operations parse and round trip") {
    TermPtr t = parse_term("a @{e} b");
    REQUIRE(t->kind == TermKind::Eps);
    CHECK(t->label == GroupElem::generator("e"));

    TermPtr d = parse_term("b ~{a^2} a");
    REQUIRE(d->kind == TermKind::DilOp);

    // @{1} is plain application
    CHECK(parse_term("a @{1} b")->kind == TermKind::App);

    // infix binder sugar; round trips through the pretty printer
    TermPtr s = parse_term("(x λ B) @{1} A");
    REQUIRE(s->kind == TermKind::App);
    CHECK(s->a->kind == TermKind::Lam);
    TermPtr round = parse_term(pretty(s));
    CHECK(alpha_eq(s, round));
    CHECK(pretty(round) == pretty(s));
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_WITH_AS(parse_term("(\\x.x"), doctest::Contains("position"), GlcError);
    CHECK_THROWS_AS(parse_term(""), GlcError);
    CHECK_THROWS_AS(parse_term("a @{} b"), GlcError);
    CHECK_THROWS_AS(parse_term("a @{2x} b"), GlcError);
}

TEST_CASE("free variables and alpha equivalence") {
    CHECK(free_vars(parse_term("\\x.x y")) == std::set<std::string>{"y"});
    CHECK(free_vars(parse_term("\\x.\\y.x")).empty());
    CHECK(alpha_eq(parse_term("\\x.x"), parse_term("\\y.y")));
    CHECK(!alpha_eq(parse_term("\\x.\\y.x"), parse_term("\\x.\\y.y")));
    CHECK(!alpha_eq(parse_term("x"), parse_term("y")));
}

TEST_CASE("substitution is capture avoiding") {
    // substitute(Var x, x, B) = B
    TermPtr b = parse_term("\\q.q q");
    CHECK(alpha_eq(substitute(parse_term("x"), "x", b), b));

    // substitute(\y.(x y), x, y) renames the binder
    TermPtr t = substitute(parse_term("\\y.x y"), "x", parse_term("y"));
    CHECK(alpha_eq(t, parse_term("\\z.y z")));
    CHECK(free_vars(t) == std::set<std::string>{"y"});

    // no substitution under a shadowing binder
    TermPtr u = substitute(parse_term("\\x.x"), "x", parse_term("z"));
    CHECK(alpha_eq(u, parse_term("\\x.x")));
}

TEST_CASE("term size counts ast nodes") {
    CHECK(term_size(parse_term("x")) == 1);
    CHECK(term_size(parse_term("\\x.x x")) == 4);
}

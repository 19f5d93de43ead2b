#pragma once

#include <memory>
#include <set>
#include <string>

#include "glc/group.hpp"

namespace glc {

// Lambda and lambda-Scale terms.
//   Var(name)
//   Lam(name, body)
//   App(fn, arg)
//   Eps(label, left, right)    surface "left @{label} right"
//   DilOp(label, left, right)  surface "left ~{label} right" (dilation gate)
struct Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermKind { Var, Lam, App, Eps, DilOp };

struct Term {
    TermKind kind;
    std::string name;   // Var, Lam
    GroupElem label;    // Eps, DilOp
    TermPtr a, b;       // Lam: body in a; App/Eps/DilOp: a, b

    static TermPtr var(std::string n);
    static TermPtr lam(std::string n, TermPtr body);
    static TermPtr app(TermPtr f, TermPtr x);
    static TermPtr eps(GroupElem l, TermPtr x, TermPtr y);
    static TermPtr dil(GroupElem l, TermPtr x, TermPtr y);
};

// Accepts `\x.body` and `λx.body`, the infix sugar `(x λ body)`,
// juxtaposition for application (left associative), `A @{e} B`, `A ~{e} B`
// and parentheses. `@{1}` is plain application. Throws GlcError with a
// character position on syntax errors.
TermPtr parse_term(const std::string& text);

std::string pretty(const TermPtr& t);

std::set<std::string> free_vars(const TermPtr& t);
bool alpha_eq(const TermPtr& a, const TermPtr& b);

// Capture-avoiding substitution t[x := s]; bound variables are renamed with
// ~k suffixes when needed.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& s);

// Structural size (number of AST nodes).
int term_size(const TermPtr& t);

bool contains_scale_ops(const TermPtr& t);

} // namespace glc

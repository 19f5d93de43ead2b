#include "glc/term.hpp"

#include <sstream>

#include "glc/graph.hpp"

namespace glc {

TermPtr Term::var(std::string n) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Var;
    t->name = std::move(n);
    return t;
}

TermPtr Term::lam(std::string n, TermPtr body) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Lam;
    t->name = std::move(n);
    t->a = std::move(body);
    return t;
}

TermPtr Term::app(TermPtr f, TermPtr x) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::App;
    t->a = std::move(f);
    t->b = std::move(x);
    return t;
}

TermPtr Term::eps(GroupElem l, TermPtr x, TermPtr y) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Eps;
    t->label = std::move(l);
    t->a = std::move(x);
    t->b = std::move(y);
    return t;
}

TermPtr Term::dil(GroupElem l, TermPtr x, TermPtr y) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::DilOp;
    t->label = std::move(l);
    t->a = std::move(x);
    t->b = std::move(y);
    return t;
}

namespace {

struct Lexer {
    std::string src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool peek_lambda() {
        skip_ws();
        if (pos < src.size() && src[pos] == '\\') return true;
        // UTF-8 lambda
        return pos + 1 < src.size() && static_cast<unsigned char>(src[pos]) == 0xce &&
               static_cast<unsigned char>(src[pos + 1]) == 0xbb;
    }
    void eat_lambda() {
        skip_ws();
        if (src[pos] == '\\') {
            ++pos;
        } else {
            pos += 2;
        }
    }
    [[noreturn]] void fail(const std::string& m) {
        throw GlcError("parse error at position " + std::to_string(pos) + ": " + m);
    }
    void expect(char c) {
        skip_ws();
        if (pos >= src.size() || src[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    bool try_eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' || src[pos] == '~' ||
                src[pos] == '\''))
            ++pos;
        if (pos == start) fail("expected identifier");
        return src.substr(start, pos - start);
    }
    std::string braced() {
        expect('{');
        std::size_t start = pos;
        while (pos < src.size() && src[pos] != '}') ++pos;
        if (pos >= src.size()) fail("unterminated '{'");
        std::string inner = src.substr(start, pos - start);
        ++pos;
        return inner;
    }
};

struct Parser {
    Lexer lx;

    TermPtr parse() {
        TermPtr t = parse_scale();
        if (!lx.eof()) lx.fail("trailing input");
        return t;
    }

    // lowest precedence: A @{e} B and A ~{e} B, non-associative
    TermPtr parse_scale() {
        TermPtr left = parse_app();
        char c = lx.peek();
        if (c == '@' || c == '~') {
            ++lx.pos;
            GroupElem label;
            try {
                label = GroupElem::parse(lx.braced());
            } catch (const GlcError& e) {
                lx.fail(e.what());
            }
            TermPtr right = parse_app();
            if (c == '@') {
                if (label.is_identity()) return Term::app(left, right);
                return Term::eps(label, left, right);
            }
            return Term::dil(label, left, right);
        }
        return left;
    }

    TermPtr parse_app() {
        TermPtr t = parse_atom();
        while (true) {
            char c = lx.peek();
            bool more = c == '(' || c == '\\' || std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                        lx.peek_lambda();
            if (c == '@' || c == '~' || c == ')' || c == '\0' || !more) break;
            t = Term::app(t, parse_atom());
        }
        return t;
    }

    TermPtr parse_atom() {
        if (lx.peek_lambda()) {
            lx.eat_lambda();
            std::string name = lx.ident();
            lx.expect('.');
            return Term::lam(name, parse_scale_body());
        }
        if (lx.try_eat('(')) {
            TermPtr t = parse_scale();
            lx.expect(')');
            return t;
        }
        std::string name = lx.ident();
        // infix sugar: `x λ B` means λx.B
        if (lx.peek_lambda()) {
            lx.eat_lambda();
            return Term::lam(name, parse_scale_body());
        }
        return Term::var(name);
    }

    // A lambda body extends as far right as possible.
    TermPtr parse_scale_body() { return parse_scale(); }
};

void collect_free(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (t->kind) {
        case TermKind::Var:
            if (!bound.count(t->name)) out.insert(t->name);
            break;
        case TermKind::Lam: {
            bool inserted = bound.insert(t->name).second;
            collect_free(t->a, bound, out);
            if (inserted) bound.erase(t->name);
            break;
        }
        default:
            collect_free(t->a, bound, out);
            collect_free(t->b, bound, out);
            break;
    }
}

bool alpha_eq_rec(const TermPtr& a, const TermPtr& b, std::map<std::string, std::string>& ab,
                  std::map<std::string, std::string>& ba) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TermKind::Var: {
            auto it = ab.find(a->name);
            auto jt = ba.find(b->name);
            if (it == ab.end() && jt == ba.end()) return a->name == b->name; // both free
            if (it == ab.end() || jt == ba.end()) return false;
            return it->second == b->name && jt->second == a->name;
        }
        case TermKind::Lam: {
            auto save_ab = ab, save_ba = ba;
            ab[a->name] = b->name;
            ba[b->name] = a->name;
            bool ok = alpha_eq_rec(a->a, b->a, ab, ba);
            ab = std::move(save_ab);
            ba = std::move(save_ba);
            return ok;
        }
        case TermKind::App:
            return alpha_eq_rec(a->a, b->a, ab, ba) && alpha_eq_rec(a->b, b->b, ab, ba);
        case TermKind::Eps:
        case TermKind::DilOp:
            return a->label == b->label && alpha_eq_rec(a->a, b->a, ab, ba) &&
                   alpha_eq_rec(a->b, b->b, ab, ba);
    }
    return false;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string stem = base.substr(0, base.find('~'));
    for (int k = 1;; ++k) {
        std::string cand = stem + "~" + std::to_string(k);
        if (!avoid.count(cand)) return cand;
    }
}

TermPtr subst_rec(const TermPtr& t, const std::string& x, const TermPtr& s,
                  const std::set<std::string>& fv_s) {
    switch (t->kind) {
        case TermKind::Var:
            return t->name == x ? s : t;
        case TermKind::Lam: {
            if (t->name == x) return t;
            if (fv_s.count(t->name)) {
                // capture: rename the binder first
                std::set<std::string> avoid = fv_s;
                auto fv_body = free_vars(t->a);
                avoid.insert(fv_body.begin(), fv_body.end());
                avoid.insert(x);
                std::string fresh = fresh_name(t->name, avoid);
                TermPtr renamed = subst_rec(t->a, t->name, Term::var(fresh), {});
                return Term::lam(fresh, subst_rec(renamed, x, s, fv_s));
            }
            return Term::lam(t->name, subst_rec(t->a, x, s, fv_s));
        }
        case TermKind::App:
            return Term::app(subst_rec(t->a, x, s, fv_s), subst_rec(t->b, x, s, fv_s));
        case TermKind::Eps:
            return Term::eps(t->label, subst_rec(t->a, x, s, fv_s), subst_rec(t->b, x, s, fv_s));
        case TermKind::DilOp:
            return Term::dil(t->label, subst_rec(t->a, x, s, fv_s), subst_rec(t->b, x, s, fv_s));
    }
    return t;
}

void pretty_rec(const TermPtr& t, std::ostringstream& os, bool parens_app, bool parens_lam) {
    switch (t->kind) {
        case TermKind::Var:
            os << t->name;
            break;
        case TermKind::Lam:
            if (parens_lam) os << '(';
            os << '\\' << t->name << '.';
            pretty_rec(t->a, os, false, false);
            if (parens_lam) os << ')';
            break;
        case TermKind::App:
            if (parens_app) os << '(';
            pretty_rec(t->a, os, false, true);
            os << ' ';
            pretty_rec(t->b, os, true, true);
            if (parens_app) os << ')';
            break;
        case TermKind::Eps:
        case TermKind::DilOp:
            os << '(';
            pretty_rec(t->a, os, true, true);
            os << (t->kind == TermKind::Eps ? " @{" : " ~{") << t->label.str() << "} ";
            pretty_rec(t->b, os, true, true);
            os << ')';
            break;
    }
}

} // namespace

TermPtr parse_term(const std::string& text) {
    Parser p;
    p.lx.src = text;
    return p.parse();
}

std::string pretty(const TermPtr& t) {
    std::ostringstream os;
    pretty_rec(t, os, false, false);
    return os.str();
}

std::set<std::string> free_vars(const TermPtr& t) {
    std::set<std::string> bound, out;
    collect_free(t, bound, out);
    return out;
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
    std::map<std::string, std::string> ab, ba;
    return alpha_eq_rec(a, b, ab, ba);
}

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& s) {
    return subst_rec(t, x, s, free_vars(s));
}

int term_size(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var: return 1;
        case TermKind::Lam: return 1 + term_size(t->a);
        default: return 1 + term_size(t->a) + term_size(t->b);
    }
}

bool contains_scale_ops(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var: return false;
        case TermKind::Lam: return contains_scale_ops(t->a);
        case TermKind::Eps:
        case TermKind::DilOp: return true;
        default: return contains_scale_ops(t->a) || contains_scale_ops(t->b);
    }
}

} // namespace glc

#include "stopmove/error.hpp"
#include "stopmove/format.hpp"
#include "stopmove/resm.hpp"

#include <cctype>

namespace stopmove {

Pattern Pattern::atom(std::string dim, std::optional<Condition> cond) {
    Pattern p;
    p.kind = Kind::dim;
    p.dim = std::move(dim);
    p.condition = std::move(cond);
    return p;
}

Pattern Pattern::star(Pattern inner) {
    Pattern p;
    p.kind = Kind::star;
    p.position = inner.position;
    p.children.push_back(std::move(inner));
    return p;
}

Pattern Pattern::concat(std::vector<Pattern> parts) {
    std::vector<Pattern> flat;
    for (Pattern& part : parts) {
        if (part.kind == Kind::concat)
            for (Pattern& c : part.children) flat.push_back(std::move(c));
        else
            flat.push_back(std::move(part));
    }
    if (flat.size() == 1) return std::move(flat.front());
    Pattern p;
    p.kind = Kind::concat;
    if (!flat.empty()) p.position = flat.front().position;
    p.children = std::move(flat);
    return p;
}

namespace {

enum class Tok {
    ident,
    string,
    number,
    dot,
    star,
    question,
    epsilon,
    lparen,
    rparen,
    lbracket,
    rbracket,
    op,
    kw_and,
    kw_or,
    kw_not,
    end
};

struct Token {
    Tok kind;
    std::string text;  // identifier, string contents, number text, or canonical operator
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            const std::size_t at = i_;
            if (i_ >= s_.size()) {
                out.push_back({Tok::end, "", at});
                return out;
            }
            const char c = s_[i_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i_;
                while (j < s_.size() &&
                       (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                    ++j;
                std::string word(s_.substr(i_, j - i_));
                i_ = j;
                Tok kind = Tok::ident;
                if (word == "and") kind = Tok::kw_and;
                if (word == "or") kind = Tok::kw_or;
                if (word == "not") kind = Tok::kw_not;
                out.push_back({kind, word, at});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) ||
                ((c == '-' || c == '+') && i_ + 1 < s_.size() &&
                 (std::isdigit(static_cast<unsigned char>(s_[i_ + 1])) || s_[i_ + 1] == '.'))) {
                std::size_t j = i_ + 1;
                while (j < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[j])) ||
                                         s_[j] == '.' || s_[j] == 'e' || s_[j] == 'E' ||
                                         ((s_[j] == '-' || s_[j] == '+') &&
                                          (s_[j - 1] == 'e' || s_[j - 1] == 'E'))))
                    ++j;
                out.push_back({Tok::number, std::string(s_.substr(i_, j - i_)), at});
                i_ = j;
                continue;
            }
            if (c == '\'') {
                std::string text;
                std::size_t j = i_ + 1;
                while (true) {
                    if (j >= s_.size()) throw QueryError("unterminated string literal", at);
                    if (s_[j] == '\\' && j + 1 < s_.size()) {
                        text += s_[j + 1];
                        j += 2;
                        continue;
                    }
                    if (s_[j] == '\'') break;
                    text += s_[j++];
                }
                i_ = j + 1;
                out.push_back({Tok::string, text, at});
                continue;
            }
            if (match("ε")) { out.push_back({Tok::epsilon, "ε", at}); continue; }
            if (match("∧") || match("&&")) { out.push_back({Tok::kw_and, "and", at}); continue; }
            if (match("∨") || match("||")) { out.push_back({Tok::kw_or, "or", at}); continue; }
            if (match("¬")) { out.push_back({Tok::kw_not, "not", at}); continue; }
            if (match("≠") || match("!=") || match("<>")) { out.push_back({Tok::op, "!=", at}); continue; }
            if (match("≤") || match("<=")) { out.push_back({Tok::op, "<=", at}); continue; }
            if (match("≥") || match(">=")) { out.push_back({Tok::op, ">=", at}); continue; }
            if (match("<")) { out.push_back({Tok::op, "<", at}); continue; }
            if (match(">")) { out.push_back({Tok::op, ">", at}); continue; }
            if (match("=")) { out.push_back({Tok::op, "=", at}); continue; }
            if (match("!")) { out.push_back({Tok::kw_not, "not", at}); continue; }
            Tok single = Tok::end;
            switch (c) {
                case '.': single = Tok::dot; break;
                case '*': single = Tok::star; break;
                case '?': single = Tok::question; break;
                case '(': single = Tok::lparen; break;
                case ')': single = Tok::rparen; break;
                case '[': single = Tok::lbracket; break;
                case ']': single = Tok::rbracket; break;
                default: throw QueryError(std::string("unexpected character '") + c + "'", at);
            }
            out.push_back({single, std::string(1, c), at});
            ++i_;
        }
    }

private:
    void skip_space() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool match(std::string_view lit) {
        if (s_.substr(i_, lit.size()) != lit) return false;
        i_ += lit.size();
        return true;
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

CmpOp op_from(const std::string& t) {
    if (t == "=") return CmpOp::eq;
    if (t == "!=") return CmpOp::ne;
    if (t == "<") return CmpOp::lt;
    if (t == "<=") return CmpOp::le;
    if (t == ">") return CmpOp::gt;
    return CmpOp::ge;
}

std::string op_text(CmpOp op) {
    switch (op) {
        case CmpOp::eq: return "=";
        case CmpOp::ne: return "!=";
        case CmpOp::lt: return "<";
        case CmpOp::le: return "<=";
        case CmpOp::gt: return ">";
        case CmpOp::ge: return ">=";
    }
    return "=";
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Pattern pattern() {
        if (peek().kind == Tok::end) return Pattern::epsilon();
        Pattern p = sequence();
        if (peek().kind != Tok::end) fail("expected '.' or end of pattern");
        return p;
    }

private:
    const Token& peek() const { return toks_[k_]; }
    const Token& take() { return toks_[k_++]; }
    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        throw QueryError(what + (t.kind == Tok::end ? " (found end of input)"
                                                    : " (found '" + t.text + "')"),
                         t.pos);
    }
    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail(std::string("expected ") + what);
        return take();
    }

    Pattern sequence() {
        std::vector<Pattern> parts;
        parts.push_back(postfix());
        while (peek().kind == Tok::dot) {
            take();
            parts.push_back(postfix());
        }
        return Pattern::concat(std::move(parts));
    }

    Pattern postfix() {
        const bool group = peek().kind == Tok::lparen;
        Pattern p = primary();
        while (peek().kind == Tok::star) {
            if (!group) fail("'*' applies to a parenthesized group");
            take();
            p = Pattern::star(std::move(p));
        }
        return p;
    }

    Pattern primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::ident: {
                take();
                Pattern p = Pattern::atom(t.text);
                p.position = t.pos;
                if (peek().kind == Tok::lbracket) {
                    take();
                    p.condition = disjunction();
                    expect(Tok::rbracket, "']'");
                }
                return p;
            }
            case Tok::question: {
                take();
                Pattern p = Pattern::wildcard();
                p.position = t.pos;
                return p;
            }
            case Tok::epsilon: {
                take();
                Pattern p = Pattern::epsilon();
                p.position = t.pos;
                return p;
            }
            case Tok::lparen: {
                take();
                if (peek().kind == Tok::rparen) {
                    take();
                    Pattern p = Pattern::epsilon();
                    p.position = t.pos;
                    return p;
                }
                Pattern p = sequence();
                expect(Tok::rparen, "')'");
                return p;
            }
            default: fail("expected a dimension, '?', 'ε' or '('");
        }
    }

    Condition combine(Condition::Kind kind, std::vector<Condition> parts) {
        if (parts.size() == 1) return std::move(parts.front());
        Condition c;
        c.kind = kind;
        c.position = parts.front().position;
        for (Condition& part : parts) {
            if (part.kind == kind)
                for (Condition& o : part.operands) c.operands.push_back(std::move(o));
            else
                c.operands.push_back(std::move(part));
        }
        return c;
    }

    Condition disjunction() {
        std::vector<Condition> parts{conjunction()};
        while (peek().kind == Tok::kw_or) {
            take();
            parts.push_back(conjunction());
        }
        return combine(Condition::Kind::any_of, std::move(parts));
    }

    Condition conjunction() {
        std::vector<Condition> parts{unary()};
        while (peek().kind == Tok::kw_and) {
            take();
            parts.push_back(unary());
        }
        return combine(Condition::Kind::all_of, std::move(parts));
    }

    Condition unary() {
        const Token& t = peek();
        if (t.kind == Tok::kw_not) {
            take();
            Condition c;
            c.kind = Condition::Kind::negation;
            c.position = t.pos;
            c.operands.push_back(unary());
            return c;
        }
        if (t.kind == Tok::lparen) {
            take();
            Condition c = disjunction();
            expect(Tok::rparen, "')'");
            return c;
        }
        if (t.kind != Tok::ident) fail("expected an attribute, 'time(...)', 'not' or '('");
        take();
        if (t.text == "time" && peek().kind == Tok::lparen) {
            take();
            Condition c;
            c.kind = Condition::Kind::time_label;
            c.position = t.pos;
            c.category = expect(Tok::ident, "a time category").text;
            expect(Tok::rparen, "')'");
            const Token& op = expect(Tok::op, "'='");
            if (op.text != "=") throw QueryError("time conditions only support '='", op.pos);
            const Token& label = peek();
            if (label.kind != Tok::ident && label.kind != Tok::string && label.kind != Tok::number)
                fail("expected a time label");
            c.label = take().text;
            return c;
        }
        Condition c;
        c.kind = Condition::Kind::compare;
        c.position = t.pos;
        c.attribute = t.text;
        c.op = op_from(expect(Tok::op, "a comparison operator").text);
        const Token& lit = peek();
        if (lit.kind == Tok::string) {
            c.literal = lit.text;
        } else if (lit.kind == Tok::number) {
            double v = 0.0;
            if (!parse_number(lit.text, v)) throw QueryError("bad number '" + lit.text + "'", lit.pos);
            c.literal = v;
        } else {
            fail("expected a quoted string or a number");
        }
        take();
        return c;
    }

    std::vector<Token> toks_;
    std::size_t k_ = 0;
};

std::string quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
    }
    return out + "'";
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return s != "and" && s != "or" && s != "not";
}

}  // namespace

Pattern parse_pattern(std::string_view text) { return Parser(Lexer(text).run()).pattern(); }

std::string to_string(const Condition& c) {
    switch (c.kind) {
        case Condition::Kind::compare: {
            std::string lit = std::holds_alternative<double>(c.literal)
                                  ? format_exact(std::get<double>(c.literal))
                                  : quote(std::get<std::string>(c.literal));
            return c.attribute + " " + op_text(c.op) + " " + lit;
        }
        case Condition::Kind::time_label:
            return "time(" + c.category + ") = " + (is_identifier(c.label) ? c.label : quote(c.label));
        case Condition::Kind::negation: {
            const Condition& o = c.operands.front();
            const bool wrap =
                o.kind == Condition::Kind::all_of || o.kind == Condition::Kind::any_of;
            return "not " + (wrap ? "(" + to_string(o) + ")" : to_string(o));
        }
        case Condition::Kind::all_of:
        case Condition::Kind::any_of: {
            const bool conj = c.kind == Condition::Kind::all_of;
            std::string out;
            for (const Condition& o : c.operands) {
                if (!out.empty()) out += conj ? " and " : " or ";
                const bool wrap = conj && o.kind == Condition::Kind::any_of;
                out += wrap ? "(" + to_string(o) + ")" : to_string(o);
            }
            return out;
        }
    }
    return {};
}

std::string to_string(const Pattern& p) {
    switch (p.kind) {
        case Pattern::Kind::dim:
            return p.condition ? p.dim + "[" + to_string(*p.condition) + "]" : p.dim;
        case Pattern::Kind::epsilon: return "ε";
        case Pattern::Kind::wildcard: return "?";
        case Pattern::Kind::star: return "(" + to_string(p.children.front()) + ")*";
        case Pattern::Kind::concat: {
            std::string out;
            for (const Pattern& c : p.children) {
                if (!out.empty()) out += ".";
                out += to_string(c);
            }
            return out;
        }
    }
    return {};
}

namespace {

void bind_condition(const Condition& c, const DimensionInstance& dim, const OlapContext& ctx) {
    switch (c.kind) {
        case Condition::Kind::all_of:
        case Condition::Kind::any_of:
        case Condition::Kind::negation:
            for (const Condition& o : c.operands) bind_condition(o, dim, ctx);
            return;
        case Condition::Kind::time_label:
            if (!ctx.time().has_category(c.category))
                throw QueryError("unknown time category '" + c.category + "'", c.position);
            if (!ctx.time().has_label(c.category, c.label))
                throw QueryError("time category '" + c.category + "' has no label '" + c.label + "'",
                                 c.position);
            return;
        case Condition::Kind::compare: {
            const auto* decl = dim.schema().find_attribute(dim.schema().bottom(), c.attribute);
            if (!decl)
                throw QueryError("dimension " + dim.schema().name + " has no attribute '" +
                                     c.attribute + "'",
                                 c.position);
            if (kind_of(c.literal) != decl->kind)
                throw QueryError("attribute '" + c.attribute + "' is " + to_string(decl->kind) +
                                     " but the literal is " + to_string(kind_of(c.literal)),
                                 c.position);
            if (decl->kind == ValueKind::text && c.op != CmpOp::eq && c.op != CmpOp::ne)
                throw QueryError("text attribute '" + c.attribute + "' only supports = and !=",
                                 c.position);
            return;
        }
    }
}

}  // namespace

void bind(const Pattern& p, const OlapContext& ctx) {
    switch (p.kind) {
        case Pattern::Kind::dim: {
            const DimensionInstance* d = ctx.find_dimension(p.dim);
            if (!d) throw QueryError("unknown dimension '" + p.dim + "'", p.position);
            if (p.condition) bind_condition(*p.condition, *d, ctx);
            return;
        }
        case Pattern::Kind::star:
        case Pattern::Kind::concat:
            for (const Pattern& c : p.children) bind(c, ctx);
            return;
        case Pattern::Kind::epsilon:
        case Pattern::Kind::wildcard: return;
    }
}

}  // namespace stopmove

#include "obc/parse.hpp"

#include <cctype>
#include <stdexcept>

namespace obc {

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        size_t line = 1, col = 1;
        for (size_t i = 0; i < pos && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw std::invalid_argument("parse error at " + std::to_string(line) + ":" +
                                    std::to_string(col) + ": " + msg);
    }

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    char peek() {
        skip();
        return pos < text.size() ? text[pos] : '\0';
    }

    void expect(char ch) {
        if (peek() != ch) fail(std::string("expected '") + ch + "'");
        ++pos;
    }

    std::string ident() {
        skip();
        size_t start = pos;
        while (pos < text.size() && std::islower(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a name");
        return text.substr(start, pos - start);
    }

    Expr parse_sum() {
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos;
        } else if (peek() == '+') {
            ++pos;
        }
        Expr acc = parse_comp();
        if (neg) acc = acc.scaled(GRat(-1));
        while (true) {
            char ch = peek();
            if (ch != '+' && ch != '-') break;
            ++pos;
            Expr next = parse_comp();
            if (acc.src != next.src || acc.dst != next.dst)
                fail("summand type mismatch: \"" + word_str(acc.src) + "\"->\"" +
                     word_str(acc.dst) + "\" vs \"" + word_str(next.src) + "\"->\"" +
                     word_str(next.dst) + "\"");
            acc = (ch == '+') ? acc + next : acc - next;
        }
        return acc;
    }

    Expr parse_comp() {
        Expr acc = parse_tens();
        while (peek() == '.') {
            ++pos;
            Expr next = parse_tens();
            if (acc.src != next.dst)
                fail("compose type mismatch: lower output \"" + word_str(next.dst) +
                     "\" vs upper input \"" + word_str(acc.src) + "\"");
            acc = expr_compose(acc, next);
        }
        return acc;
    }

    Expr parse_tens() {
        Expr acc = parse_atom();
        while (peek() == '*') {
            ++pos;
            acc = expr_tensor(acc, parse_atom());
        }
        return acc;
    }

    Expr parse_atom() {
        char ch = peek();
        if (ch == 'D') {
            ++pos;
            expect('(');
            skip();
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) fail("expected a dot count");
            int k = std::stoi(text.substr(start, pos - start));
            expect(')');
            return expr_bubble(k);
        }
        if (ch == '(') {
            size_t open = pos;
            size_t depth = 0;
            size_t close = pos;
            while (close < text.size()) {
                if (text[close] == '(') ++depth;
                if (text[close] == ')' && --depth == 0) break;
                ++close;
            }
            if (close >= text.size()) fail("unbalanced '('");
            std::string inner = text.substr(open + 1, close - open - 1);
            try {
                GRat c = grat_parse(inner);
                pos = close + 1;
                return expr_scalar(c);
            } catch (const std::invalid_argument&) {
            }
            ++pos;
            Expr e = parse_sum();
            expect(')');
            return e;
        }
        std::string name = ident();
        if (name == "id") {
            expect('(');
            skip();
            size_t start = pos;
            while (pos < text.size() && (text[pos] == 'u' || text[pos] == 'd')) ++pos;
            Word w = word_parse(text.substr(start, pos - start));
            expect(')');
            return expr_identity(w);
        }
        try {
            return expr_gen(gen_from_name(name));
        } catch (const std::invalid_argument&) {
            pos -= name.size();
            fail("unknown generator '" + name + "'");
        }
    }
};

} // namespace

Expr parse_expr(const std::string& text) {
    Parser p{text};
    if (p.peek() == '0') {
        size_t after = p.pos + 1;
        Parser rest{text, after};
        if (rest.peek() == '\0') return expr_zero({}, {});
    }
    Expr e = p.parse_sum();
    if (p.peek() != '\0') p.fail("unexpected trailing input");
    return e;
}

namespace {

std::string stack_str(const Stack& s, const Word& src) {
    if (s.empty()) return "id(" + word_str(src) + ")";
    std::string out;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        if (!out.empty()) out += " . ";
        std::string piece;
        if (!it->left.empty()) piece += "id(" + word_str(it->left) + ")*";
        piece += gen_name(it->gen);
        if (!it->right.empty()) piece += "*id(" + word_str(it->right) + ")";
        out += piece;
    }
    return out;
}

} // namespace

std::string print_expr(const Expr& e) {
    if (e.terms.empty()) return "0";
    std::string out;
    for (const auto& [s, c] : e.terms) {
        std::string body = stack_str(s, e.src);
        bool neg = false;
        std::string coeff;
        if (c.im == 0 && c.re < 0) {
            neg = true;
            GRat a = -c;
            if (a.re != 1) coeff = "(" + grat_to_string(a) + ")*";
        } else if (!(c.im == 0 && c.re == 1)) {
            coeff = "(" + grat_to_string(c) + ")*";
        }
        std::string term = coeff + body;
        if (out.empty()) {
            out = (neg ? "-" : "") + term;
        } else {
            out += (neg ? " - " : " + ") + term;
        }
    }
    return out;
}

nlohmann::json expr_to_json(const Expr& e) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [s, c] : e.terms) {
        nlohmann::json layers = nlohmann::json::array();
        for (const Layer& l : s) {
            layers.push_back({{"left", word_str(l.left)},
                              {"gen", gen_name(l.gen)},
                              {"right", word_str(l.right)}});
        }
        terms.push_back({{"coeff", grat_to_string(c)}, {"stack", layers}});
    }
    return {{"src", word_str(e.src)}, {"dst", word_str(e.dst)}, {"terms", terms}};
}

} // namespace obc
